//! A₂ scalar products built from fundamental (`y`) and anti-fundamental
//! (`z`) quantum lines, and their degenerations as one family of Bethe roots
//! goes to infinity. Everything here uses rational unit-b weights at rank 2.
//!
//! Bent lines are compiled to rectangular grids: an `x⁽¹⁾` (or `b⁽¹⁾`) line
//! that turns upward appears both as a row and as a column with the same
//! label, joined by a `Turn` cell; the anti-fundamental columns are `Down`.

use serde::{Deserialize, Serialize};

use crate::algebra::{det, vandermonde, Scalar};
use crate::dwpf::{check_distinct, lines, partial_det as partial_det_raw};
use crate::error::{Error, Result};
use crate::lattice::{
    evaluate, sequential_limit, BoundarySpec, CellKind, CountConstraint, CountTerm, EdgeCondition, LatticeSpec, Line,
    Method, Side,
};
use crate::model::{Colour, ModelParams, Normalization};
use crate::scalar_product::ScalarProductSpec;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct A2Spec {
    pub x2s: Vec<Scalar>,
    pub x1s: Vec<Scalar>,
    #[serde(default)]
    pub b1s: Vec<Scalar>,
    #[serde(default)]
    pub b2s: Vec<Scalar>,
    pub ys: Vec<Scalar>,
    pub zs: Vec<Scalar>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Layout {
    Fig1a,
    Fig1b,
}

impl A2Spec {
    pub fn ell(&self) -> usize {
        self.x1s.len()
    }

    pub fn m(&self) -> usize {
        self.x2s.len()
    }

    pub fn validate(&self, need_b1: bool, need_b2: bool) -> Result<()> {
        let (l, m) = (self.ell(), self.m());
        if need_b1 && self.b1s.len() != l {
            return Err(Error::Invalid(format!("need {l} b1 rapidities, got {}", self.b1s.len())));
        }
        if need_b2 && self.b2s.len() != m {
            return Err(Error::Invalid(format!("need {m} b2 rapidities, got {}", self.b2s.len())));
        }
        if l + m > self.ys.len() + self.zs.len() {
            return Err(Error::Invalid("need l + m <= L + M".into()));
        }
        Ok(())
    }
}

const DUMMY: EdgeCondition = EdgeCondition::Fixed(0);

fn fixed(c: Colour, n: usize) -> Vec<EdgeCondition> {
    vec![EdgeCondition::Fixed(c); n]
}

fn weighted(pairs: &[(Colour, i64)]) -> EdgeCondition {
    EdgeCondition::Weighted(pairs.iter().map(|&(c, v)| (c, Scalar::int(v))).collect())
}

fn reversed(prefix: &str, vals: &[Scalar]) -> Vec<Line> {
    let mut v = lines(prefix, vals);
    v.reverse();
    v
}

fn cat<T: Clone>(parts: &[&[T]]) -> Vec<T> {
    parts.iter().flat_map(|p| p.iter().cloned()).collect()
}

struct Grid {
    rows: Vec<Line>,
    cols: Vec<Line>,
    left: Vec<EdgeCondition>,
    right: Vec<EdgeCondition>,
    bottom: Vec<EdgeCondition>,
    top: Vec<EdgeCondition>,
    constraint: Option<CountConstraint>,
}

impl Grid {
    fn build(self, kind: impl Fn(usize, usize) -> CellKind) -> LatticeSpec {
        let cells =
            (0..self.rows.len()).map(|r| (0..self.cols.len()).map(|c| kind(r, c)).collect()).collect();
        LatticeSpec::grid(
            self.rows,
            self.cols,
            ModelParams::rational(2),
            Normalization::UnitB,
            BoundarySpec {
                left: self.left,
                right: self.right,
                top: self.top,
                bottom: self.bottom,
                constraint: self.constraint,
            },
        )
        .with_cells(cells)
    }
}

/// In a block of `l` rows turning into `l` columns listed in reverse, row
/// `j` (0-based) turns at column `l − 1 − j`.
fn turn_or_cross(row_in_block: usize, col: usize, l: usize) -> CellKind {
    if col == l - 1 - row_in_block {
        CellKind::Turn
    } else {
        CellKind::Cross
    }
}

pub fn layout_lattice(spec: &A2Spec, layout: Layout) -> Result<LatticeSpec> {
    spec.validate(true, true)?;
    let (l, m, ll, mm) = (spec.ell(), spec.m(), spec.ys.len(), spec.zs.len());
    let ys = lines("y", &spec.ys);
    let zs = lines("z", &spec.zs).into_iter().map(Line::down).collect::<Vec<_>>();
    let x2 = lines("x2_", &spec.x2s);
    let x1 = lines("x1_", &spec.x1s);
    let b1 = lines("b1_", &spec.b1s);
    let b2 = lines("b2_", &spec.b2s);
    Ok(match layout {
        Layout::Fig1a => Grid {
            rows: cat(&[&x2, &x1, &b1, &b2]),
            cols: cat(&[&reversed("x1_", &spec.x1s), &ys, &zs, &reversed("b1_", &spec.b1s)]),
            left: cat(&[&fixed(2, m), &fixed(0, l), &fixed(0, l), &fixed(1, m)]),
            right: cat(&[&fixed(1, m), &fixed(0, l), &fixed(0, l), &fixed(2, m)]),
            bottom: cat(&[&fixed(1, l), &fixed(0, ll), &fixed(2, mm), &fixed(0, l)]),
            top: cat(&[&fixed(0, l), &fixed(0, ll), &fixed(2, mm), &fixed(1, l)]),
            constraint: None,
        }
        .build(|r, c| {
            if c < l {
                if r < m {
                    CellKind::Std
                } else if r < m + l {
                    turn_or_cross(r - m, c, l)
                } else {
                    CellKind::Cross
                }
            } else if c < l + ll {
                CellKind::Std
            } else if c < l + ll + mm {
                CellKind::Down
            } else {
                let q = c - l - ll - mm;
                if r < m + l {
                    CellKind::Cross
                } else if r < m + 2 * l {
                    turn_or_cross(r - m - l, q, l)
                } else {
                    CellKind::Std
                }
            }
        }),
        Layout::Fig1b => Grid {
            rows: cat(&[&x1, &x2, &b2, &b1]),
            cols: cat(&[&reversed("b1_", &spec.b1s), &ys, &zs, &reversed("x1_", &spec.x1s)]),
            left: cat(&[&fixed(1, l), &fixed(2, m), &fixed(1, m), &fixed(0, l)]),
            right: cat(&[&fixed(0, l), &fixed(1, m), &fixed(2, m), &fixed(1, l)]),
            bottom: cat(&[&fixed(0, l), &fixed(0, ll), &fixed(2, mm), &fixed(0, l)]),
            top: cat(&[&fixed(0, l), &fixed(0, ll), &fixed(2, mm), &fixed(0, l)]),
            constraint: None,
        }
        .build(|r, c| {
            if c < l {
                if r < l + m {
                    CellKind::Cross
                } else if r < l + 2 * m {
                    CellKind::Std
                } else {
                    turn_or_cross(r - l - 2 * m, c, l)
                }
            } else if c < l + ll {
                CellKind::Std
            } else if c < l + ll + mm {
                CellKind::Down
            } else {
                let q = c - l - ll - mm;
                if r < l {
                    turn_or_cross(r, q, l)
                } else if r < l + m {
                    CellKind::Std
                } else {
                    CellKind::Cross
                }
            }
        }),
    })
}

pub fn a2_scalar_product(spec: &A2Spec, layout: Layout, method: Method) -> Result<Scalar> {
    Ok(evaluate(&layout_lattice(spec, layout)?, method)?.value)
}

/// The `b⁽²⁾ → ∞` lattice: `b⁽¹⁾` rows end in colour 1 or 2, the
/// anti-fundamental columns end in 1 (coefficient −1) or 2, and exactly `m`
/// of these edges carry the "other" colour (2 on rows, 1 on columns).
pub fn fig2a_lattice(spec: &A2Spec) -> Result<LatticeSpec> {
    spec.validate(true, false)?;
    let (l, m, ll, mm) = (spec.ell(), spec.m(), spec.ys.len(), spec.zs.len());
    let ys = lines("y", &spec.ys);
    let zs = lines("z", &spec.zs).into_iter().map(Line::down).collect::<Vec<_>>();
    let mut count: Vec<CountTerm> = (0..l).map(|k| CountTerm { side: Side::Right, index: m + l + k, colour: 2 }).collect();
    count.extend((0..mm).map(|k| CountTerm { side: Side::Top, index: l + ll + k, colour: 1 }));
    Ok(Grid {
        rows: cat(&[&lines("x2_", &spec.x2s), &lines("x1_", &spec.x1s), &lines("b1_", &spec.b1s)]),
        cols: cat(&[&reversed("x1_", &spec.x1s), &ys, &zs]),
        left: cat(&[&fixed(2, m), &fixed(0, l), &fixed(0, l)]),
        right: cat(&[&fixed(1, m), &fixed(0, l), &vec![weighted(&[(1, 1), (2, 1)]); l]]),
        bottom: cat(&[&fixed(1, l), &fixed(0, ll), &fixed(2, mm)]),
        top: cat(&[&vec![DUMMY; l], &fixed(0, ll), &vec![weighted(&[(1, -1), (2, 1)]); mm]]),
        constraint: Some(CountConstraint { count, equals: m }),
    }
    .build(|r, c| {
        if c < l {
            if r < m {
                CellKind::Std
            } else if r < m + l {
                turn_or_cross(r - m, c, l)
            } else {
                CellKind::Cross
            }
        } else if c < l + ll {
            CellKind::Std
        } else if r < m + l {
            CellKind::Down
        } else {
            CellKind::Cross
        }
    }))
}

/// The `b⁽¹⁾ → ∞` lattice: `b⁽²⁾` rows start in colour 0 (coefficient −1)
/// or 1, the fundamental columns end in 0 or 1, and exactly `ℓ` of these
/// edges carry 0 (rows) or 1 (columns).
pub fn fig2b_lattice(spec: &A2Spec) -> Result<LatticeSpec> {
    spec.validate(false, true)?;
    let (l, m, ll, mm) = (spec.ell(), spec.m(), spec.ys.len(), spec.zs.len());
    let ys = lines("y", &spec.ys);
    let zs = lines("z", &spec.zs).into_iter().map(Line::down).collect::<Vec<_>>();
    let mut count: Vec<CountTerm> = (0..m).map(|k| CountTerm { side: Side::Left, index: l + m + k, colour: 0 }).collect();
    count.extend((0..ll).map(|k| CountTerm { side: Side::Top, index: k, colour: 1 }));
    Ok(Grid {
        rows: cat(&[&lines("x1_", &spec.x1s), &lines("x2_", &spec.x2s), &lines("b2_", &spec.b2s)]),
        cols: cat(&[&ys, &zs, &reversed("x1_", &spec.x1s)]),
        left: cat(&[&fixed(1, l), &fixed(2, m), &vec![weighted(&[(0, -1), (1, 1)]); m]]),
        right: cat(&[&vec![DUMMY; l], &fixed(1, m), &fixed(2, m)]),
        bottom: cat(&[&fixed(0, ll), &fixed(2, mm), &vec![DUMMY; l]]),
        top: cat(&[&vec![weighted(&[(0, 1), (1, 1)]); ll], &fixed(2, mm), &fixed(0, l)]),
        constraint: Some(CountConstraint { count, equals: l }),
    }
    .build(|r, c| {
        if c < ll {
            if r < l + m {
                CellKind::Std
            } else {
                CellKind::Cross
            }
        } else if c < ll + mm {
            CellKind::Down
        } else {
            let q = c - ll - mm;
            if r < l {
                turn_or_cross(r, q, l)
            } else if r < l + m {
                CellKind::Std
            } else {
                CellKind::Cross
            }
        }
    }))
}

/// Both evaluations of a degenerated scalar product.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Degeneration {
    pub signed_sum: Scalar,
    pub sequential_limit: Scalar,
    pub difference: Scalar,
}

impl Degeneration {
    fn new(signed_sum: Scalar, sequential_limit: Scalar) -> Self {
        let difference = &signed_sum - &sequential_limit;
        Degeneration { signed_sum, sequential_limit, difference }
    }

    pub fn agree(&self) -> bool {
        self.difference.is_zero()
    }

    /// The common value, or an error if the two methods disagree.
    pub fn value(&self) -> Result<Scalar> {
        if !self.agree() {
            return Err(Error::MethodDisagreement(format!(
                "signed sum {} vs sequential limit {}",
                self.signed_sum, self.sequential_limit
            )));
        }
        Ok(self.signed_sum.clone())
    }
}

fn factorial(n: usize) -> Scalar {
    (1..=n as i64).map(Scalar::int).product()
}

/// Placeholder rapidities for lines about to be sent to infinity.
fn placeholders(n: usize) -> Vec<Scalar> {
    (0..n).map(|k| Scalar::int(1_000 + k as i64)).collect()
}

fn labels(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|k| format!("{prefix}{k}")).collect()
}

/// Limit of `b⁽²⁾_m ⋯ b⁽²⁾_1 S / m!`: signed boundary sum against exact
/// sequential limits of the first layout.
pub fn degenerate_b2(spec: &A2Spec, method: Method) -> Result<Degeneration> {
    let signed = evaluate(&fig2a_lattice(spec)?, method)?.value;
    let m = spec.m();
    let full = A2Spec { b2s: placeholders(m), ..spec.clone() };
    let names = labels("b2_", m);
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let lim = sequential_limit(&layout_lattice(&full, Layout::Fig1a)?, &refs, method)? / factorial(m);
    Ok(Degeneration::new(signed, lim))
}

/// Limit of `b⁽¹⁾_ℓ ⋯ b⁽¹⁾_1 S / ℓ!`, as for [`degenerate_b2`] with the
/// second layout.
pub fn degenerate_b1(spec: &A2Spec, method: Method) -> Result<Degeneration> {
    let signed = evaluate(&fig2b_lattice(spec)?, method)?.value;
    let l = spec.ell();
    let full = A2Spec { b1s: placeholders(l), ..spec.clone() };
    let names = labels("b1_", l);
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let lim = sequential_limit(&layout_lattice(&full, Layout::Fig1b)?, &refs, method)? / factorial(l);
    Ok(Degeneration::new(signed, lim))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PartialForm {
    /// Main variables `x⁽²⁾`, `+1` factors over `x⁽¹⁾`, `−1` factors over `z`.
    Partial1,
    /// Main variables `x⁽¹⁾`, `+1` factors over `y`, `−1` factors over `x⁽²⁾`.
    Partial2,
}

/// `Δ⁻¹{x} det[x_i^{j−1} Π(x_i−u+1)/(x_i−u) − (x_i+1)^{j−1} Π(x_i−v−1)/(x_i−v)]`
/// with `u` over `plus` and `v` over `minus`.
pub fn partial_det(_form: PartialForm, xs: &[Scalar], plus: &[Scalar], minus: &[Scalar]) -> Result<Scalar> {
    partial_det_raw(xs, plus, minus)
}

/// Slavnov-type matrix in unit-b. `plus_ratio` multiplies the first
/// product, `minus_ratio` the second.
fn slavnov_unit_b(xs: &[Scalar], bs: &[Scalar], plus_ratio: &[Scalar], minus_ratio: &[Scalar]) -> Result<Scalar> {
    check_distinct("x", xs)?;
    check_distinct("b", bs)?;
    let one = Scalar::one();
    let n = xs.len();
    let mut mat = Vec::with_capacity(n);
    for (i, x) in xs.iter().enumerate() {
        let mut row = Vec::with_capacity(n);
        for j in 0..n {
            let mut p = Scalar::one();
            let mut q = Scalar::one();
            for (k, b) in bs.iter().enumerate() {
                if k != j {
                    p *= b - x + one.clone();
                    q *= b - x - one.clone();
                }
            }
            let den = &bs[j] - x;
            if den.is_zero() {
                return Err(Error::Coincident(format!("b = x = {x}")));
            }
            row.push((p * &plus_ratio[i] - q * &minus_ratio[i]) / den);
        }
        mat.push(row);
    }
    Ok(det(&mat)? / (vandermonde(xs, false) * vandermonde(bs, true)))
}

fn ratio_product(x: &Scalar, others: &[Scalar], shift: i64) -> Result<Scalar> {
    let mut acc = Scalar::one();
    for u in others {
        let d = x - u;
        acc *= (&d + &Scalar::int(shift)).checked_div(&d).ok_or_else(|| Error::Pole(format!("{x} meets {u}")))?;
    }
    Ok(acc)
}

/// Factorized form of the `b⁽²⁾ → ∞` degeneration; `b1s` must solve the
/// fundamental A₁ Bethe equations for `ys`.
pub fn fact1(spec: &A2Spec) -> Result<Scalar> {
    spec.validate(true, false)?;
    let plus: Vec<Scalar> = spec.x1s.iter().map(|x| ratio_product(x, &spec.ys, 1)).collect::<Result<_>>()?;
    let ones = vec![Scalar::one(); spec.ell()];
    let first = slavnov_unit_b(&spec.x1s, &spec.b1s, &plus, &ones)?;
    Ok(first * partial_det(PartialForm::Partial1, &spec.x2s, &spec.x1s, &spec.zs)?)
}

/// Factorized form of the `b⁽¹⁾ → ∞` degeneration; `b2s` must solve the
/// anti-fundamental A₁ Bethe equations for `zs`.
pub fn fact2(spec: &A2Spec) -> Result<Scalar> {
    spec.validate(false, true)?;
    let minus: Vec<Scalar> = spec.x2s.iter().map(|x| ratio_product(x, &spec.zs, -1)).collect::<Result<_>>()?;
    let ones = vec![Scalar::one(); spec.m()];
    let first = slavnov_unit_b(&spec.x2s, &spec.b2s, &ones, &minus)?;
    Ok(first * partial_det(PartialForm::Partial2, &spec.x1s, &spec.ys, &spec.x2s)?)
}

fn sum(cs: &[(Colour, i64)], n: usize) -> Vec<EdgeCondition> {
    vec![weighted(cs); n]
}

fn colours(cs: &[Colour]) -> Vec<EdgeCondition> {
    cs.iter().map(|&c| EdgeCondition::Fixed(c)).collect()
}

/// Right-hand factor of the `b⁽²⁾ → ∞` lattice with fixed internal
/// colours: `i` enters the `x⁽¹⁾` rows, `j` enters the anti-fundamental
/// columns from below.
pub fn lemma5_lattice(x1s: &[Scalar], b1s: &[Scalar], ys: &[Scalar], zs: &[Scalar], i: &[Colour], j: &[Colour]) -> Result<LatticeSpec> {
    let (l, ll, mm) = (x1s.len(), ys.len(), zs.len());
    if b1s.len() != l || i.len() != l || j.len() != mm {
        return Err(Error::Invalid("colour vectors do not match line counts".into()));
    }
    Ok(Grid {
        rows: cat(&[&lines("x1_", x1s), &lines("b1_", b1s)]),
        cols: cat(&[&lines("y", ys), &lines("z", zs).into_iter().map(Line::down).collect::<Vec<_>>()]),
        left: cat(&[&colours(i), &fixed(0, l)]),
        right: cat(&[&fixed(0, l), &sum(&[(1, 1), (2, 1)], l)]),
        bottom: cat(&[&fixed(0, ll), &colours(j)]),
        top: cat(&[&fixed(0, ll), &sum(&[(1, -1), (2, 1)], mm)]),
        constraint: None,
    }
    .build(|r, c| {
        if c < ll {
            CellKind::Std
        } else if r < l {
            CellKind::Down
        } else {
            CellKind::Cross
        }
    }))
}

/// Fundamental A₁ scalar product `S({x⁽¹⁾}, {b⁽¹⁾} | {y})` in unit-b.
pub fn fundamental_scalar_product(x1s: &[Scalar], b1s: &[Scalar], ys: &[Scalar], method: Method) -> Result<Scalar> {
    let spec = ScalarProductSpec::new(x1s.to_vec(), b1s.to_vec(), ys.to_vec(), Normalization::UnitB);
    Ok(evaluate(&spec.lattice(1)?, method)?.value)
}

/// Left-hand factor of the `b⁽¹⁾ → ∞` lattice with fixed internal colours:
/// `i` leaves the `x⁽²⁾` rows, `j` enters the fundamental columns.
pub fn lemma7_lattice(x2s: &[Scalar], b2s: &[Scalar], ys: &[Scalar], zs: &[Scalar], i: &[Colour], j: &[Colour]) -> Result<LatticeSpec> {
    let (m, ll, mm) = (x2s.len(), ys.len(), zs.len());
    if b2s.len() != m || i.len() != m || j.len() != ll {
        return Err(Error::Invalid("colour vectors do not match line counts".into()));
    }
    Ok(Grid {
        rows: cat(&[&lines("x2_", x2s), &lines("b2_", b2s)]),
        cols: cat(&[&lines("y", ys), &lines("z", zs).into_iter().map(Line::down).collect::<Vec<_>>()]),
        left: cat(&[&fixed(2, m), &sum(&[(0, -1), (1, 1)], m)]),
        right: cat(&[&colours(i), &fixed(2, m)]),
        bottom: cat(&[&colours(j), &fixed(2, mm)]),
        top: cat(&[&sum(&[(0, 1), (1, 1)], ll), &fixed(2, mm)]),
        constraint: None,
    }
    .build(|r, c| {
        if c < ll {
            if r < m {
                CellKind::Std
            } else {
                CellKind::Cross
            }
        } else {
            CellKind::Down
        }
    }))
}

/// Anti-fundamental A₁ scalar product: `x⁽²⁾` rows carry 2 in and 1 out,
/// `b⁽²⁾` rows 1 in and 2 out, across down-flowing `z` columns of colour 2.
pub fn antifundamental_lattice(x2s: &[Scalar], b2s: &[Scalar], zs: &[Scalar]) -> LatticeSpec {
    let (m, mm) = (x2s.len(), zs.len());
    Grid {
        rows: cat(&[&lines("x2_", x2s), &lines("b2_", b2s)]),
        cols: lines("z", zs).into_iter().map(Line::down).collect(),
        left: cat(&[&fixed(2, m), &fixed(1, b2s.len())]),
        right: cat(&[&fixed(1, m), &fixed(2, b2s.len())]),
        bottom: fixed(2, mm),
        top: fixed(2, mm),
        constraint: None,
    }
    .build(|_, _| CellKind::Down)
}

/// Lattice whose `b⁽²⁾ → ∞` limit is the first partial determinant: the
/// anti-fundamental scalar product with `x⁽¹⁾` as extra fundamental columns.
pub fn partial1_lattice(x2s: &[Scalar], b2s: &[Scalar], x1s: &[Scalar], zs: &[Scalar]) -> LatticeSpec {
    let (m, l, mm) = (x2s.len(), x1s.len(), zs.len());
    Grid {
        rows: cat(&[&lines("x2_", x2s), &lines("b2_", b2s)]),
        cols: cat(&[&reversed("x1_", x1s), &lines("z", zs).into_iter().map(Line::down).collect::<Vec<_>>()]),
        left: cat(&[&fixed(2, m), &fixed(1, b2s.len())]),
        right: cat(&[&fixed(1, m), &fixed(2, b2s.len())]),
        bottom: cat(&[&fixed(1, l), &fixed(2, mm)]),
        top: cat(&[&fixed(1, l), &fixed(2, mm)]),
        constraint: None,
    }
    .build(|_, c| if c < l { CellKind::Std } else { CellKind::Down })
}

/// Lattice whose `b⁽¹⁾ → ∞` limit is the second partial determinant: the
/// fundamental scalar product with `x⁽²⁾` as extra down-flowing columns.
pub fn partial2_lattice(x1s: &[Scalar], b1s: &[Scalar], ys: &[Scalar], x2s: &[Scalar]) -> LatticeSpec {
    let (l, ll, m) = (x1s.len(), ys.len(), x2s.len());
    Grid {
        rows: cat(&[&lines("x1_", x1s), &lines("b1_", b1s)]),
        cols: cat(&[&lines("y", ys), &lines("x2_", x2s).into_iter().map(Line::down).collect::<Vec<_>>()]),
        left: cat(&[&fixed(1, l), &fixed(0, b1s.len())]),
        right: cat(&[&fixed(0, l), &fixed(1, b1s.len())]),
        bottom: cat(&[&fixed(0, ll), &fixed(1, m)]),
        top: cat(&[&fixed(0, ll), &fixed(1, m)]),
        constraint: None,
    }
    .build(|_, c| if c < ll { CellKind::Std } else { CellKind::Down })
}

/// `(1/n!) lim b_n ⋯ b_1 Z` over the rows labelled `prefix1..prefixn`.
pub fn rows_to_infinity(spec: &LatticeSpec, prefix: &str, n: usize, method: Method) -> Result<Scalar> {
    let names = labels(prefix, n);
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    Ok(sequential_limit(spec, &refs, method)? / factorial(n))
}

/// The first and second partial determinants as limits of lattices.
pub fn partial_limit(form: PartialForm, xs: &[Scalar], plus: &[Scalar], minus: &[Scalar], method: Method) -> Result<Scalar> {
    let bs = placeholders(xs.len());
    match form {
        PartialForm::Partial1 => rows_to_infinity(&partial1_lattice(xs, &bs, plus, minus), "b2_", xs.len(), method),
        PartialForm::Partial2 => rows_to_infinity(&partial2_lattice(xs, &bs, plus, minus), "b1_", xs.len(), method),
    }
}
