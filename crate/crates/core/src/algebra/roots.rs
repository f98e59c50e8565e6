//! Real roots of univariate polynomials with rational coefficients: exact
//! rational roots first, then Sturm isolation and bisection for the rest.

use num::bigint::BigInt;
use num::integer::{Integer, Roots};
use num::rational::BigRational;
use num::traits::{One, Signed, ToPrimitive};

use super::poly::Polynomial;
use super::scalar::Scalar;
use crate::error::{Error, Result};

/// Divisor enumeration is skipped above this magnitude; remaining roots are
/// then found numerically.
const DIVISOR_LIMIT: u64 = 1 << 40;

/// All distinct real roots, ascending. Rational roots are exact; irrational
/// roots are floats of `precision` bits.
pub fn real_roots(p: &Polynomial, precision: usize) -> Result<Vec<Scalar>> {
    if p.coeffs().iter().any(|c| !c.is_exact()) {
        return Err(Error::Inexact);
    }
    if p.is_zero() {
        return Err(Error::Invalid("zero polynomial has every root".into()));
    }
    let sf = square_free(p);
    let (rational, rest) = split_rational_roots(&sf);
    let mut out = rational;
    for (lo, hi) in isolate(&rest) {
        out.push(refine(&rest, lo, hi, precision));
    }
    out.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Ok(out)
}

fn square_free(p: &Polynomial) -> Polynomial {
    let g = p.gcd(&p.derivative());
    if g.degree().unwrap_or(0) == 0 {
        return p.monic();
    }
    p.div_rem(&g).0.monic()
}

fn integer_coefficients(p: &Polynomial) -> Vec<BigInt> {
    let rs: Vec<&BigRational> = p.coeffs().iter().map(|c| c.as_rational().unwrap()).collect();
    let l = rs.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    rs.iter().map(|r| r.numer() * (&l / r.denom())).collect()
}

fn divisors(n: &BigInt) -> Option<Vec<u64>> {
    let n = n.abs().to_u64()?;
    if n > DIVISOR_LIMIT {
        return None;
    }
    let mut out = Vec::new();
    let r = n.sqrt();
    for d in 1..=r {
        if n % d == 0 {
            out.push(d);
            if d != n / d {
                out.push(n / d);
            }
        }
    }
    Some(out)
}

fn split_rational_roots(p: &Polynomial) -> (Vec<Scalar>, Polynomial) {
    let mut roots = Vec::new();
    let mut rest = p.clone();
    if rest.coeff(0).is_zero() && rest.degree().unwrap_or(0) > 0 {
        roots.push(Scalar::zero());
        rest = rest.div_rem(&Polynomial::linear_root(&Scalar::zero())).0;
    }
    if rest.degree().unwrap_or(0) == 0 {
        return (roots, rest);
    }
    let ints = integer_coefficients(&rest);
    let (Some(ps), Some(qs)) = (divisors(&ints[0]), divisors(ints.last().unwrap())) else {
        return (roots, rest);
    };
    for &pn in &ps {
        for &qd in &qs {
            for sign in [1i64, -1] {
                if rest.degree().unwrap_or(0) == 0 {
                    break;
                }
                let c = Scalar::from_rational(BigRational::new(
                    BigInt::from(pn) * BigInt::from(sign),
                    BigInt::from(qd),
                ));
                if rest.eval(&c).is_zero() && !roots.contains(&c) {
                    rest = rest.div_rem(&Polynomial::linear_root(&c)).0;
                    roots.push(c);
                }
            }
        }
    }
    (roots, rest)
}

fn sturm_chain(p: &Polynomial) -> Vec<Polynomial> {
    let mut chain = vec![p.clone(), p.derivative()];
    while !chain.last().unwrap().is_zero() {
        let n = chain.len();
        let (_, r) = chain[n - 2].div_rem(&chain[n - 1]);
        chain.push(r.scale(&Scalar::int(-1)));
    }
    chain.pop();
    chain
}

fn sign_changes(chain: &[Polynomial], x: &Scalar) -> usize {
    let signs: Vec<i32> = chain.iter().map(|q| q.eval(x).signum()).filter(|&s| s != 0).collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

fn cauchy_bound(p: &Polynomial) -> Scalar {
    let lead = p.leading().abs();
    let m = p
        .coeffs()
        .iter()
        .take(p.coeffs().len() - 1)
        .map(|c| (c / &lead).abs())
        .fold(Scalar::zero(), |a, b| if b > a { b } else { a });
    m + Scalar::int(1)
}

/// Disjoint intervals `(lo, hi]` each holding exactly one root.
fn isolate(p: &Polynomial) -> Vec<(Scalar, Scalar)> {
    if p.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let chain = sturm_chain(p);
    let b = cauchy_bound(p);
    let mut out = Vec::new();
    let mut stack = vec![(-&b, b)];
    while let Some((lo, hi)) = stack.pop() {
        let n = sign_changes(&chain, &lo) - sign_changes(&chain, &hi);
        if n == 0 {
            continue;
        }
        if n == 1 {
            out.push((lo, hi));
            continue;
        }
        let mid = (&lo + &hi) * Scalar::ratio(1, 2);
        stack.push((mid.clone(), hi));
        stack.push((lo, mid));
    }
    out
}

fn refine(p: &Polynomial, mut lo: Scalar, mut hi: Scalar, precision: usize) -> Scalar {
    if p.eval(&hi).is_zero() {
        return hi;
    }
    let s_lo = p.eval(&lo).signum();
    let width = Scalar::pow2(-(precision as i64) - 8);
    while &hi - &lo > width {
        let mid = (&lo + &hi) * Scalar::ratio(1, 2);
        let s = p.eval(&mid).signum();
        if s == 0 {
            return mid;
        }
        if s == s_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    ((lo + hi) * Scalar::ratio(1, 2)).to_float(precision)
}
