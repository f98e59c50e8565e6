//! A₁ scalar products `S({x}_N, {b}_m | {y}_L)`.
//!
//! Rows are `x_1..x_N` (colour 1 in on the left) below `b_1..b_m` (colour 1
//! out on the right). For `m < N` the columns are ordered
//! `y_{N−m+1}..y_L, y_1..y_{N−m}` and the last `N − m` columns end in colour 1.

use serde::{Deserialize, Serialize};

use crate::algebra::{det, vandermonde, Scalar};
use crate::dwpf::{check_distinct, dwpf, lines};
use crate::error::{Error, Result};
use crate::lattice::{evaluate, BoundarySpec, EdgeCondition, LatticeSpec, Method, PartitionValue, Provenance};
use crate::model::{Colour, ModelParams, Normalization};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScalarProductSpec {
    pub xs: Vec<Scalar>,
    pub bs: Vec<Scalar>,
    pub ys: Vec<Scalar>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub colours: Option<Vec<Colour>>,
    pub norm: Normalization,
}

impl ScalarProductSpec {
    pub fn new(xs: Vec<Scalar>, bs: Vec<Scalar>, ys: Vec<Scalar>, norm: Normalization) -> Self {
        ScalarProductSpec { xs, bs, ys, colours: None, norm }
    }

    pub fn validate(&self) -> Result<()> {
        let (n, m, l) = (self.xs.len(), self.bs.len(), self.ys.len());
        if m > n || n > l {
            return Err(Error::Invalid(format!("need m <= N <= L, got m = {m}, N = {n}, L = {l}")));
        }
        if let Some(c) = &self.colours {
            if c.len() != n {
                return Err(Error::Invalid("need one colour per x row".into()));
            }
            if c.contains(&0) {
                return Err(Error::Invalid("x row colours must be at least 1".into()));
            }
        }
        Ok(())
    }

    /// The lattice; with colours it is the coloured lattice at `rank`
    /// (summed exits over `1..=rank`).
    pub fn lattice(&self, rank: u8) -> Result<LatticeSpec> {
        self.validate()?;
        let (n, m, l) = (self.xs.len(), self.bs.len(), self.ys.len());
        let exit = match &self.colours {
            Some(_) => EdgeCondition::summed(1..=rank),
            None => EdgeCondition::Fixed(1),
        };
        let left = match &self.colours {
            Some(c) => c.iter().map(|&c| EdgeCondition::Fixed(c)).collect(),
            None => vec![EdgeCondition::Fixed(1); n],
        };
        let ylines = lines("y", &self.ys);
        let cols: Vec<_> = ylines[n - m..].iter().chain(&ylines[..n - m]).cloned().collect();
        let mut rows = lines("x", &self.xs);
        rows.extend(lines("b", &self.bs));
        let mut top = vec![EdgeCondition::Fixed(0); l - n + m];
        top.extend(vec![exit.clone(); n - m]);
        let model = if self.colours.is_some() { ModelParams::rational(rank) } else { ModelParams::rational(1) };
        Ok(LatticeSpec::grid(
            rows,
            cols,
            model,
            self.norm,
            BoundarySpec {
                left: left.into_iter().chain(vec![EdgeCondition::Fixed(0); m]).collect(),
                right: vec![EdgeCondition::Fixed(0); n].into_iter().chain(vec![exit; m]).collect(),
                top,
                bottom: vec![EdgeCondition::Fixed(0); l],
                constraint: None,
            },
        ))
    }
}

pub fn scalar_product(spec: &ScalarProductSpec, method: Method) -> Result<PartitionValue> {
    let plain = ScalarProductSpec { colours: None, ..spec.clone() };
    evaluate(&plain.lattice(1)?, method)
}

pub fn coloured_scalar_product(spec: &ScalarProductSpec, rank: u8, method: Method) -> Result<PartitionValue> {
    if spec.colours.is_none() {
        return Err(Error::Invalid("coloured scalar product needs colours".into()));
    }
    evaluate(&spec.lattice(rank)?, method)
}

/// Slavnov's determinant, unit-a. Valid when `bs` solve the Bethe equations
/// for `ys`; off shell it is just a number.
pub fn slavnov(xs: &[Scalar], bs: &[Scalar], ys: &[Scalar]) -> Result<PartitionValue> {
    if xs.len() != bs.len() {
        return Err(Error::Invalid("need |x| = |b|".into()));
    }
    check_distinct("x", xs)?;
    check_distinct("b", bs)?;
    let one = Scalar::one();
    let n = xs.len();
    let mut m = Vec::with_capacity(n);
    for x in xs {
        let mut ratio = Scalar::one();
        for y in ys {
            let d = x - y;
            ratio *= d.checked_div(&(&d + &one)).ok_or_else(|| Error::Pole(format!("x = {x} at y = {y} - 1")))?;
        }
        let mut row = Vec::with_capacity(n);
        for j in 0..n {
            let mut p = Scalar::one();
            let mut q = Scalar::one();
            for (k, b) in bs.iter().enumerate() {
                if k != j {
                    let d = b - x;
                    p *= &d + &one;
                    q *= &d - &one;
                }
            }
            let den = &bs[j] - x;
            if den.is_zero() {
                return Err(Error::Coincident(format!("b = x = {x}")));
            }
            row.push((p - q * &ratio) / den);
        }
        m.push(row);
    }
    let value = det(&m)? / (vandermonde(xs, false) * vandermonde(bs, true));
    Ok(PartitionValue::new(value, Provenance::Determinant, ModelParams::rational(1), Normalization::UnitA))
}

fn subsets(n: usize) -> impl Iterator<Item = (Vec<usize>, Vec<usize>)> {
    (0u32..1 << n).map(move |mask| (0..n).partition(|&i| mask & (1 << i) != 0))
}

fn pick(v: &[Scalar], idx: &[usize]) -> Vec<Scalar> {
    idx.iter().map(|&i| v[i].clone()).collect()
}

/// The sum over splittings `{x} = {x_I} ∪ {x_II}`, `{b} = {b_I} ∪ {b_II}`
/// with domain wall factors, all in unit-b.
pub fn ik_sum(xs: &[Scalar], bs: &[Scalar], ys: &[Scalar], method: Method) -> Result<PartitionValue> {
    if xs.len() != bs.len() {
        return Err(Error::Invalid("need |x| = |b|".into()));
    }
    let one = Scalar::one();
    let ratio = |u: &Scalar, v: &Scalar| -> Result<Scalar> {
        let d = u - v;
        (&d + &one).checked_div(&d).ok_or_else(|| Error::Pole(format!("{u} meets {v}")))
    };
    let n = xs.len();
    let mut total = Scalar::zero();
    for (x1, x2) in subsets(n) {
        for (b1, b2) in subsets(n) {
            if x1.len() != b1.len() {
                continue;
            }
            let mut term = Scalar::one();
            for &i in &b1 {
                for y in ys {
                    term *= ratio(&bs[i], y)?;
                }
            }
            for &i in &x2 {
                for y in ys {
                    term *= ratio(&xs[i], y)?;
                }
            }
            for &i in &x1 {
                for &j in &x2 {
                    term *= ratio(&xs[i], &xs[j])?;
                }
            }
            for &i in &b1 {
                for &j in &b2 {
                    term *= ratio(&bs[j], &bs[i])?;
                }
            }
            if term.is_zero() {
                continue;
            }
            term *= dwpf(&pick(bs, &b2), &pick(xs, &x2), Normalization::UnitB, method)?.value;
            term *= dwpf(&pick(xs, &x1), &pick(bs, &b1), Normalization::UnitB, method)?.value;
            total += term;
        }
    }
    Ok(PartitionValue::new(total, Provenance::Determinant, ModelParams::rational(1), Normalization::UnitB))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dwpf::{pdwpf, unit_b_factor};
    use crate::lattice::sequential_limit;

    fn s(v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|&i| Scalar::int(i)).collect()
    }

    fn sp(xs: &[i64], bs: &[Scalar], ys: &[i64], norm: Normalization) -> Scalar {
        let spec = ScalarProductSpec::new(s(xs), bs.to_vec(), s(ys), norm);
        let a = scalar_product(&spec, Method::Enumeration).unwrap().value;
        assert_eq!(a, scalar_product(&spec, Method::Dp).unwrap().value);
        a
    }

    #[test]
    fn single_row_examples() {
        assert_eq!(sp(&[3], &s(&[4]), &[0, 2], Normalization::UnitA), Scalar::ratio(19, 120));
        assert_eq!(sp(&[3], &s(&[4]), &[0, 2], Normalization::UnitB), Scalar::ratio(19, 24));
        assert_eq!(sp(&[3], &[], &[0, 2], Normalization::UnitA), Scalar::ratio(1, 8));
        assert_eq!(sp(&[3], &[Scalar::ratio(1, 2)], &[0, 2], Normalization::UnitA), Scalar::ratio(-1, 4));
    }

    #[test]
    fn slavnov_on_and_off_shell() {
        let on = slavnov(&s(&[3]), &[Scalar::ratio(1, 2)], &s(&[0, 2])).unwrap().value;
        assert_eq!(on, Scalar::ratio(-1, 4));
        let off = slavnov(&s(&[3]), &s(&[4]), &s(&[0, 2])).unwrap().value;
        assert_ne!(off, Scalar::ratio(19, 120));
    }

    #[test]
    fn recursion_in_last_b() {
        // b_m = y_{N−m+1} drops one b row.
        let ys = s(&[0, 2, -3]);
        let xs = s(&[5, 9]);
        let full = ScalarProductSpec::new(xs.clone(), vec![Scalar::ratio(7, 3), ys[0].clone()], ys.clone(), Normalization::UnitA);
        let less = ScalarProductSpec::new(xs, vec![Scalar::ratio(7, 3)], ys, Normalization::UnitA);
        assert_eq!(
            scalar_product(&full, Method::Dp).unwrap().value,
            scalar_product(&less, Method::Dp).unwrap().value
        );
    }

    #[test]
    fn coloured_matches_plain() {
        let mut spec = ScalarProductSpec::new(s(&[3]), s(&[4]), s(&[0, 2]), Normalization::UnitA);
        spec.colours = Some(vec![2]);
        assert_eq!(coloured_scalar_product(&spec, 2, Method::Dp).unwrap().value, Scalar::ratio(19, 120));
    }

    #[test]
    fn sum_formula() {
        assert_eq!(ik_sum(&s(&[3]), &s(&[4]), &s(&[0, 2]), Method::Dp).unwrap().value, Scalar::ratio(19, 24));
        assert_eq!(ik_sum(&[], &[], &s(&[0, 2]), Method::Dp).unwrap().value, Scalar::one());
        let xs = vec![Scalar::ratio(7, 2), Scalar::int(-5)];
        let bs = vec![Scalar::ratio(1, 3), Scalar::int(11)];
        let ys = s(&[0, 2, 9]);
        let spec = ScalarProductSpec::new(xs.clone(), bs.clone(), ys.clone(), Normalization::UnitB);
        assert_eq!(ik_sum(&xs, &bs, &ys, Method::Dp).unwrap().value, scalar_product(&spec, Method::Dp).unwrap().value);
        let a = ScalarProductSpec { norm: Normalization::UnitA, ..spec.clone() };
        let mut rows = xs.clone();
        rows.extend(bs);
        assert_eq!(
            scalar_product(&a, Method::Dp).unwrap().value * unit_b_factor(&rows, &ys).unwrap(),
            scalar_product(&spec, Method::Dp).unwrap().value
        );
    }

    #[test]
    fn b_limit_gives_partial_domain_wall() {
        let xs = vec![Scalar::ratio(7, 2), Scalar::int(-5)];
        let ys = s(&[0, 2, 9]);
        let spec = ScalarProductSpec::new(xs.clone(), s(&[100, 200]), ys.clone(), Normalization::UnitB);
        let lim = sequential_limit(&spec.lattice(1).unwrap(), &["b1", "b2"], Method::Dp).unwrap();
        assert_eq!(lim / Scalar::int(2), pdwpf(&xs, &ys, Method::Dp).unwrap().value);
    }
}
