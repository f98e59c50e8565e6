use super::scalar::Scalar;
use crate::error::{Error, Result};

/// Dense univariate polynomial, coefficients in ascending degree.
#[derive(Clone, Debug, PartialEq)]
pub struct Polynomial {
    coeffs: Vec<Scalar>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: Scalar) -> Self {
        Polynomial::new(vec![c])
    }

    /// `x − r`.
    pub fn linear_root(r: &Scalar) -> Self {
        Polynomial::new(vec![-r, Scalar::one()])
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> Scalar {
        self.coeffs.get(k).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn leading(&self) -> Scalar {
        self.coeffs.last().cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        let mut acc = Scalar::zero();
        for c in self.coeffs.iter().rev() {
            acc = &acc * x + c;
        }
        acc
    }

    pub fn add(&self, o: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(o.coeffs.len());
        Polynomial::new((0..n).map(|k| self.coeff(k) + o.coeff(k)).collect())
    }

    pub fn sub(&self, o: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(o.coeffs.len());
        Polynomial::new((0..n).map(|k| self.coeff(k) - o.coeff(k)).collect())
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn mul(&self, o: &Polynomial) -> Polynomial {
        if self.is_zero() || o.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![Scalar::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }

    pub fn derivative(&self) -> Polynomial {
        Polynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * &Scalar::int(k as i64))
                .collect(),
        )
    }

    /// Euclidean division; panics if `d` is zero.
    pub fn div_rem(&self, d: &Polynomial) -> (Polynomial, Polynomial) {
        let dd = d.degree().expect("division by zero polynomial");
        let lead = d.leading();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Scalar::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let k = rem.len() - 1 - dd;
            let f = rem.last().unwrap() / &lead;
            for (i, c) in d.coeffs.iter().enumerate() {
                rem[k + i] -= c * &f;
            }
            quot[k] = f;
            rem.pop();
            while rem.last().is_some_and(Scalar::is_zero) {
                rem.pop();
            }
        }
        (Polynomial::new(quot), Polynomial::new(rem))
    }

    pub fn monic(&self) -> Polynomial {
        let l = self.leading();
        self.scale(&Scalar::one().checked_div(&l).expect("monic of zero polynomial"))
    }

    pub fn gcd(&self, o: &Polynomial) -> Polynomial {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic()
        }
    }

    /// `Π (x − r)` over the given roots.
    pub fn from_roots(roots: &[Scalar]) -> Polynomial {
        roots
            .iter()
            .fold(Polynomial::constant(Scalar::one()), |acc, r| acc.mul(&Polynomial::linear_root(r)))
    }
}

/// Unique polynomial of degree below `points.len()` through every point.
/// Exact rational input only.
pub fn interpolate(points: &[(Scalar, Scalar)]) -> Result<Polynomial> {
    if points.iter().any(|(x, y)| !x.is_exact() || !y.is_exact()) {
        return Err(Error::Inexact);
    }
    let n = points.len();
    for i in 0..n {
        for j in i + 1..n {
            if points[i].0 == points[j].0 {
                return Err(Error::DuplicateAbscissa);
            }
        }
    }
    // Newton divided differences, then expand the Newton form.
    let xs: Vec<&Scalar> = points.iter().map(|(x, _)| x).collect();
    let mut dd: Vec<Scalar> = points.iter().map(|(_, y)| y.clone()).collect();
    for level in 1..n {
        for i in (level..n).rev() {
            let num = &dd[i] - &dd[i - 1];
            dd[i] = &num / &(xs[i] - xs[i - level]);
        }
    }
    let mut poly = Polynomial::zero();
    for i in (0..n).rev() {
        poly = poly.mul(&Polynomial::linear_root(xs[i])).add(&Polynomial::constant(dd[i].clone()));
    }
    Ok(poly)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(v: &[(i64, i64)]) -> Vec<(Scalar, Scalar)> {
        v.iter().map(|&(x, y)| (Scalar::int(x), Scalar::int(y))).collect()
    }

    #[test]
    fn interpolation_examples() {
        let p = interpolate(&pts(&[(0, 3), (1, 5)])).unwrap();
        assert_eq!(p.coeffs(), &[Scalar::int(3), Scalar::int(2)]);
        let c = interpolate(&pts(&[(0, 5), (1, 5)])).unwrap();
        assert_eq!(c, Polynomial::constant(Scalar::int(5)));
        let cubic: Vec<(Scalar, Scalar)> = [-2i64, 0, 1, 3]
            .iter()
            .map(|&x| (Scalar::int(x), Scalar::int(x * x * x - x)))
            .collect();
        let p = interpolate(&cubic).unwrap();
        assert_eq!(p.coeffs(), &[Scalar::zero(), Scalar::int(-1), Scalar::zero(), Scalar::one()]);
    }

    #[test]
    fn duplicate_abscissae_rejected() {
        assert_eq!(interpolate(&pts(&[(1, 2), (1, 3)])), Err(Error::DuplicateAbscissa));
    }

    #[test]
    fn division_and_gcd() {
        let a = Polynomial::from_roots(&[Scalar::int(1), Scalar::int(2), Scalar::int(3)]);
        let b = Polynomial::from_roots(&[Scalar::int(2), Scalar::int(5)]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(q.mul(&b).add(&r), a);
        assert_eq!(a.gcd(&b), Polynomial::linear_root(&Scalar::int(2)));
    }
}
