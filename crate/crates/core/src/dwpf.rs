//! Domain-wall partition functions: the lattice, its determinant
//! evaluations, the coloured variant and the partial variant with a summed
//! top boundary.
//!
//! Rows are `x_1` (bottom) to `x_N` (top); columns are `y_1` (left) to `y_N`.
//! Colour 1 enters on the left and leaves through the top.

use serde::{Deserialize, Serialize};

use crate::algebra::{det, vandermonde, Scalar};
use crate::error::{Error, Result};
use crate::lattice::{evaluate, BoundarySpec, EdgeCondition, LatticeSpec, Line, Method, PartitionValue, Provenance};
use crate::model::{Colour, ModelParams, Normalization};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DwpfSpec {
    pub xs: Vec<Scalar>,
    pub ys: Vec<Scalar>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub colours: Option<Vec<Colour>>,
}

pub(crate) fn lines(prefix: &str, vals: &[Scalar]) -> Vec<Line> {
    vals.iter().enumerate().map(|(i, v)| Line::labelled(v.clone(), format!("{prefix}{}", i + 1))).collect()
}

fn fixed(c: Colour, n: usize) -> Vec<EdgeCondition> {
    vec![EdgeCondition::Fixed(c); n]
}

/// The domain-wall lattice with the given left colours and top boundary.
fn lattice(xs: &[Scalar], ys: &[Scalar], left: Vec<EdgeCondition>, top: EdgeCondition, model: ModelParams, norm: Normalization) -> LatticeSpec {
    LatticeSpec::grid(
        lines("x", xs),
        lines("y", ys),
        model,
        norm,
        BoundarySpec {
            left,
            right: fixed(0, xs.len()),
            top: vec![top; ys.len()],
            bottom: fixed(0, ys.len()),
            constraint: None,
        },
    )
}

pub fn dwpf_lattice(xs: &[Scalar], ys: &[Scalar], model: ModelParams, norm: Normalization) -> Result<LatticeSpec> {
    if xs.len() != ys.len() {
        return Err(Error::Invalid(format!("domain wall lattice needs |x| = |y|, got {} and {}", xs.len(), ys.len())));
    }
    Ok(lattice(xs, ys, fixed(1, xs.len()), EdgeCondition::Fixed(1), model, norm))
}

pub fn dwpf(xs: &[Scalar], ys: &[Scalar], norm: Normalization, method: Method) -> Result<PartitionValue> {
    evaluate(&dwpf_lattice(xs, ys, ModelParams::rational(1), norm)?, method)
}

pub fn dwpf_trig(xs: &[Scalar], ys: &[Scalar], gamma: &Scalar, precision: usize, method: Method) -> Result<PartitionValue> {
    let mut spec = dwpf_lattice(xs, ys, ModelParams::trig(gamma.clone(), 1), Normalization::UnitA)?;
    spec.precision_bits = Some(precision);
    evaluate(&spec, method)
}

pub(crate) fn check_distinct(name: &str, vals: &[Scalar]) -> Result<()> {
    for i in 0..vals.len() {
        for j in i + 1..vals.len() {
            if vals[i] == vals[j] {
                return Err(Error::Coincident(format!("{name}[{i}] = {name}[{j}] = {}", vals[i])));
            }
        }
    }
    Ok(())
}

fn determinant_value(value: Scalar, model: ModelParams, norm: Normalization) -> PartitionValue {
    PartitionValue::new(value, Provenance::Determinant, model, norm)
}

/// Izergin–Korepin determinant, rational unit-a weights.
pub fn dwpf_ik(xs: &[Scalar], ys: &[Scalar]) -> Result<PartitionValue> {
    if xs.len() != ys.len() {
        return Err(Error::Invalid("|x| must equal |y|".into()));
    }
    check_distinct("x", xs)?;
    check_distinct("y", ys)?;
    let one = Scalar::one();
    let mut pref = Scalar::one();
    let mut kernel = Vec::with_capacity(xs.len());
    for x in xs {
        let mut row = Vec::with_capacity(ys.len());
        for y in ys {
            let d = x - y;
            let den = &d * &(&d + &one);
            if den.is_zero() {
                return Err(Error::Pole(format!("kernel at x = {x}, y = {y}")));
            }
            pref *= &d;
            row.push(one.checked_div(&den).unwrap());
        }
        kernel.push(row);
    }
    let value = pref * det(&kernel)? / (vandermonde(xs, false) * vandermonde(ys, true));
    Ok(determinant_value(value, ModelParams::rational(1), Normalization::UnitA))
}

fn sinh_vandermonde(xs: &[Scalar], p: usize) -> Scalar {
    let mut acc = Scalar::one();
    for i in 0..xs.len() {
        for j in i + 1..xs.len() {
            acc *= (&xs[j] - &xs[i]).sinh(p);
        }
    }
    acc
}

/// Izergin–Korepin determinant, trigonometric unit-a weights, with
/// `[x] = sinh x` evaluated at `precision` bits.
pub fn dwpf_ik_trig(xs: &[Scalar], ys: &[Scalar], gamma: &Scalar, precision: usize) -> Result<PartitionValue> {
    if xs.len() != ys.len() {
        return Err(Error::Invalid("|x| must equal |y|".into()));
    }
    check_distinct("x", xs)?;
    check_distinct("y", ys)?;
    let sg = gamma.sinh(precision);
    let mut pref = Scalar::one().to_float(precision);
    let mut kernel = Vec::with_capacity(xs.len());
    for x in xs {
        let mut row = Vec::with_capacity(ys.len());
        for y in ys {
            let d = x - y;
            let sd = d.sinh(precision);
            let den = &sd * &(&d + gamma).sinh(precision);
            if den.is_zero() {
                return Err(Error::Pole(format!("kernel at x = {x}, y = {y}")));
            }
            pref *= &sd;
            row.push(&sg / &den);
        }
        kernel.push(row);
    }
    let sx: Scalar = xs.iter().cloned().sum();
    let sy: Scalar = ys.iter().cloned().sum();
    let neg_y: Vec<Scalar> = ys.iter().map(|y| -y).collect();
    let value = (sy - sx).exp(precision) * pref * det(&kernel)?
        / (sinh_vandermonde(xs, precision) * sinh_vandermonde(&neg_y, precision));
    Ok(determinant_value(value, ModelParams::trig(gamma.clone(), 1), Normalization::UnitA))
}

/// Domain wall lattice with colours `colours` entering on the left and the
/// top summed over `1..=rank`.
pub fn coloured_dwpf_lattice(xs: &[Scalar], ys: &[Scalar], colours: &[Colour], rank: u8, norm: Normalization) -> Result<LatticeSpec> {
    if colours.len() != xs.len() || xs.len() != ys.len() {
        return Err(Error::Invalid("need |colours| = |x| = |y|".into()));
    }
    if colours.contains(&0) {
        return Err(Error::Invalid("left colours must be at least 1".into()));
    }
    let left = colours.iter().map(|&c| EdgeCondition::Fixed(c)).collect();
    Ok(lattice(xs, ys, left, EdgeCondition::summed(1..=rank), ModelParams::rational(rank), norm))
}

pub fn coloured_dwpf(xs: &[Scalar], ys: &[Scalar], colours: &[Colour], rank: u8, method: Method) -> Result<PartitionValue> {
    evaluate(&coloured_dwpf_lattice(xs, ys, colours, rank, Normalization::UnitA)?, method)
}

/// Partial domain wall lattice: `N` rows, `L ≥ N` columns, top summed over
/// `{0, 1}`, unit-b weights.
pub fn pdwpf_lattice(xs: &[Scalar], ys: &[Scalar]) -> Result<LatticeSpec> {
    if xs.len() > ys.len() {
        return Err(Error::Invalid("partial domain wall lattice needs |x| <= |y|".into()));
    }
    Ok(lattice(xs, ys, fixed(1, xs.len()), EdgeCondition::summed([0, 1]), ModelParams::rational(1), Normalization::UnitB))
}

pub fn pdwpf(xs: &[Scalar], ys: &[Scalar], method: Method) -> Result<PartitionValue> {
    evaluate(&pdwpf_lattice(xs, ys)?, method)
}

/// `Δ⁻¹{x} det[x_i^{j−1} Π_{u∈plus}(x_i−u+1)/(x_i−u) − (x_i+1)^{j−1} Π_{v∈minus}(x_i−v−1)/(x_i−v)]`.
pub fn partial_det(xs: &[Scalar], plus: &[Scalar], minus: &[Scalar]) -> Result<Scalar> {
    check_distinct("x", xs)?;
    let one = Scalar::one();
    let ratio = |x: &Scalar, others: &[Scalar], shift: &Scalar| -> Result<Scalar> {
        let mut acc = Scalar::one();
        for u in others {
            let d = x - u;
            acc *= (&d + shift).checked_div(&d).ok_or_else(|| Error::Pole(format!("x = {x} meets {u}")))?;
        }
        Ok(acc)
    };
    let n = xs.len();
    let mut m = Vec::with_capacity(n);
    for x in xs {
        let p = ratio(x, plus, &one)?;
        let q = ratio(x, minus, &-&one)?;
        let x1 = x + &one;
        m.push((0..n as u32).map(|j| &x.powi(j) * &p - &x1.powi(j) * &q).collect::<Vec<_>>());
    }
    Ok(det(&m)? / vandermonde(xs, false))
}

/// Determinant form of the partial domain wall partition function.
pub fn pdwpf_det(xs: &[Scalar], ys: &[Scalar]) -> Result<PartitionValue> {
    let v = partial_det(xs, ys, &[])?;
    Ok(determinant_value(v, ModelParams::rational(1), Normalization::UnitB))
}

/// Factor taking a unit-a partition function of a rational lattice with
/// these row and column rapidities to unit-b: `Π (x−y+1)/(x−y)`.
pub fn unit_b_factor(xs: &[Scalar], ys: &[Scalar]) -> Result<Scalar> {
    let one = Scalar::one();
    let mut acc = Scalar::one();
    for x in xs {
        for y in ys {
            let d = x - y;
            acc *= (&d + &one).checked_div(&d).ok_or_else(|| Error::Pole(format!("x = {x} meets y = {y}")))?;
        }
    }
    Ok(acc)
}
