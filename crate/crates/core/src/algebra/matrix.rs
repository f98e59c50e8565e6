use num::bigint::BigInt;
use num::integer::Integer;
use num::rational::BigRational;
use num::traits::{One, Zero};

use super::scalar::Scalar;
use crate::error::{Error, Result};

/// `Π_{i<j}(x_j − x_i)`, or `Π_{i<j}(x_i − x_j)` when `negated`.
pub fn vandermonde(xs: &[Scalar], negated: bool) -> Scalar {
    let mut acc = Scalar::one();
    for i in 0..xs.len() {
        for j in i + 1..xs.len() {
            let d = if negated { &xs[i] - &xs[j] } else { &xs[j] - &xs[i] };
            acc *= d;
        }
    }
    acc
}

fn check_square(m: &[Vec<Scalar>]) -> Result<usize> {
    let n = m.len();
    for row in m {
        if row.len() != n {
            return Err(Error::NonSquare { rows: n, cols: row.len() });
        }
    }
    Ok(n)
}

/// Exact determinant by fraction-free elimination when every entry is
/// rational, partial-pivot LU otherwise.
pub fn det(m: &[Vec<Scalar>]) -> Result<Scalar> {
    let n = check_square(m)?;
    if n == 0 {
        return Ok(Scalar::one());
    }
    let rows: Option<Vec<Vec<&BigRational>>> = m
        .iter()
        .map(|r| r.iter().map(|x| x.as_rational()).collect())
        .collect();
    match rows {
        Some(rows) => Ok(Scalar::from_rational(bareiss(&rows))),
        None => Ok(lu_det(m)),
    }
}

fn bareiss(rows: &[Vec<&BigRational>]) -> BigRational {
    let n = rows.len();
    // Scale each row to integers; the scale factors are divided out at the end.
    let mut scale = BigInt::one();
    let mut a: Vec<Vec<BigInt>> = Vec::with_capacity(n);
    for row in rows {
        let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        a.push(row.iter().map(|x| x.numer() * (&l / x.denom())).collect());
        scale *= l;
    }
    let mut sign = 1;
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return BigRational::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    let d = if sign < 0 { -prev } else { prev };
    BigRational::new(d, scale)
}

fn lu_det(m: &[Vec<Scalar>]) -> Scalar {
    let n = m.len();
    let mut a: Vec<Vec<Scalar>> = m.to_vec();
    let mut acc = Scalar::one();
    for k in 0..n {
        let p = (k..n)
            .max_by(|&i, &j| a[i][k].abs().partial_cmp(&a[j][k].abs()).unwrap())
            .unwrap();
        if a[p][k].is_zero() {
            return &acc * &Scalar::zero();
        }
        if p != k {
            a.swap(p, k);
            acc = -acc;
        }
        acc *= &a[k][k];
        for i in k + 1..n {
            let f = &a[i][k] / &a[k][k];
            for j in k + 1..n {
                let v = &a[k][j] * &f;
                a[i][j] -= v;
            }
        }
    }
    acc
}

/// Solve `A x = b` by partial-pivot elimination; `None` if singular.
pub fn solve(a: &[Vec<Scalar>], b: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
    let n = check_square(a)?;
    if b.len() != n {
        return Err(Error::Invalid("right-hand side length mismatch".into()));
    }
    let mut m: Vec<Vec<Scalar>> = a
        .iter()
        .zip(b)
        .map(|(r, v)| {
            let mut r = r.clone();
            r.push(v.clone());
            r
        })
        .collect();
    for k in 0..n {
        let p = (k..n)
            .max_by(|&i, &j| m[i][k].abs().partial_cmp(&m[j][k].abs()).unwrap())
            .unwrap();
        if m[p][k].is_zero() {
            return Ok(None);
        }
        m.swap(p, k);
        for i in k + 1..n {
            let f = &m[i][k] / &m[k][k];
            for j in k..=n {
                let v = &m[k][j] * &f;
                m[i][j] -= v;
            }
        }
    }
    let mut x = vec![Scalar::zero(); n];
    for i in (0..n).rev() {
        let mut s = m[i][n].clone();
        for j in i + 1..n {
            s -= &m[i][j] * &x[j];
        }
        x[i] = &s / &m[i][i];
    }
    Ok(Some(x))
}
