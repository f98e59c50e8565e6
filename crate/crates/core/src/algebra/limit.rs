use super::poly::{interpolate, Polynomial};
use super::scalar::Scalar;
use crate::error::{Error, Result};

const MAX_REJECTED_SAMPLES: usize = 256;

/// `lim_{b→∞} b·f(b)` for a rational function `f` whose denominator divides
/// `Π (b − r)` over `denom_roots`.
pub fn limit_at_infinity<F>(f: F, denom_roots: &[Scalar]) -> Result<Scalar>
where
    F: Fn(&Scalar) -> Result<Scalar>,
{
    limit_at_infinity_from(f, denom_roots, &Scalar::int(1))
}

/// As [`limit_at_infinity`], sampling at `first, first+1, …` (skipping roots
/// and points where `f` reports a pole).
pub fn limit_at_infinity_from<F>(f: F, denom_roots: &[Scalar], first: &Scalar) -> Result<Scalar>
where
    F: Fn(&Scalar) -> Result<Scalar>,
{
    if !first.is_exact() || denom_roots.iter().any(|r| !r.is_exact()) {
        return Err(Error::Inexact);
    }
    let d = denom_roots.len();
    let denom = Polynomial::from_roots(denom_roots);
    // One sample more than deg D + 1 so that a numerator of degree above deg D
    // is seen as divergence rather than aliased.
    let needed = d + 2;
    let mut points = Vec::with_capacity(needed);
    let mut t = first.clone();
    let mut rejected = 0;
    while points.len() < needed {
        let hit_root = denom_roots.iter().any(|r| r == &t);
        let value = if hit_root {
            None
        } else {
            match f(&t) {
                Ok(v) => Some(v),
                Err(Error::Pole(_)) | Err(Error::SampleCollision) => None,
                Err(e) => return Err(e),
            }
        };
        match value {
            Some(v) => {
                if !v.is_exact() {
                    return Err(Error::Inexact);
                }
                points.push((t.clone(), v * denom.eval(&t)));
            }
            None => {
                rejected += 1;
                if rejected > MAX_REJECTED_SAMPLES {
                    return Err(Error::SampleCollision);
                }
            }
        }
        t += Scalar::one();
    }
    let p = interpolate(&points)?;
    match p.degree() {
        None => Ok(Scalar::zero()),
        Some(k) if k >= d => Err(Error::LimitDiverges),
        Some(_) => Ok(if d == 0 { Scalar::zero() } else { p.coeff(d - 1) }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, r: i64) -> Scalar {
        Scalar::ratio(p, r)
    }

    #[test]
    fn simple_pole() {
        let f = |b: &Scalar| Ok(&Scalar::int(5) / &(b - &Scalar::int(2)));
        assert_eq!(limit_at_infinity(f, &[Scalar::int(2)]).unwrap(), Scalar::int(5));
    }

    #[test]
    fn divergent_limit() {
        let f = |b: &Scalar| Ok(&(b * &Scalar::int(2) + Scalar::int(3)) / &(b + &Scalar::one()));
        assert_eq!(limit_at_infinity(f, &[Scalar::int(-1)]), Err(Error::LimitDiverges));
    }

    #[test]
    fn leading_coefficient() {
        let f = |b: &Scalar| {
            let num = b * &Scalar::int(3) + Scalar::one();
            let den = (b + &Scalar::one()) * (b - &Scalar::one());
            Ok(&num / &den)
        };
        let roots = [Scalar::int(-1), Scalar::int(1)];
        assert_eq!(limit_at_infinity(f, &roots).unwrap(), Scalar::int(3));
        assert_eq!(limit_at_infinity_from(f, &roots, &q(-77, 3)).unwrap(), Scalar::int(3));
    }

    #[test]
    fn poles_of_f_are_skipped() {
        // f has an extra removable-looking pole at b = 2 that errors.
        let f = |b: &Scalar| {
            if b == &Scalar::int(2) {
                Err(Error::Pole("b = 2".into()))
            } else {
                Ok(&Scalar::int(7) / &(b - &Scalar::int(9)))
            }
        };
        assert_eq!(limit_at_infinity(f, &[Scalar::int(9)]).unwrap(), Scalar::int(7));
    }

    #[test]
    fn exhausted_sampling_is_reported() {
        let f = |_: &Scalar| Err(Error::Pole("everywhere".into()));
        assert_eq!(limit_at_infinity(f, &[]), Err(Error::SampleCollision));
    }
}
