//! Vertex weights, R-matrix entries and the Yang–Baxter check.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::algebra::{Scalar, DEFAULT_PRECISION};
use crate::error::{Error, Result};

pub type Colour = u8;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelKind {
    Rational,
    Trig,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    pub kind: ModelKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma: Option<Scalar>,
    pub rank: u8,
}

impl ModelParams {
    pub fn rational(rank: u8) -> Self {
        ModelParams { kind: ModelKind::Rational, gamma: None, rank }
    }

    pub fn trig(gamma: Scalar, rank: u8) -> Self {
        ModelParams { kind: ModelKind::Trig, gamma: Some(gamma), rank }
    }

    pub fn validate(&self) -> Result<()> {
        if self.rank == 0 {
            return Err(Error::Invalid("rank must be at least 1".into()));
        }
        match (&self.kind, &self.gamma) {
            (ModelKind::Rational, Some(_)) => Err(Error::Invalid("rational model takes no gamma".into())),
            (ModelKind::Trig, None) => Err(Error::Invalid("trigonometric model needs gamma".into())),
            _ => Ok(()),
        }
    }

    pub fn check_colour(&self, c: Colour) -> Result<()> {
        if c > self.rank {
            return Err(Error::ColourOutOfRange { colour: c as u32, rank: self.rank as u32 });
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Normalization {
    UnitA,
    UnitB,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VertexKind {
    A,
    BPlus,
    BMinus,
    CPlus,
    CMinus,
}

impl VertexKind {
    pub const ALL: [VertexKind; 5] =
        [VertexKind::A, VertexKind::BPlus, VertexKind::BMinus, VertexKind::CPlus, VertexKind::CMinus];

    /// Classify a vertex by its edge colours (horizontal line flowing right,
    /// vertical line flowing up). `None` when colour is not conserved.
    pub fn classify(left: Colour, bottom: Colour, right: Colour, top: Colour) -> Option<VertexKind> {
        if left == bottom {
            return (right == left && top == left).then_some(VertexKind::A);
        }
        if left == right && bottom == top {
            Some(if left < bottom { VertexKind::BPlus } else { VertexKind::BMinus })
        } else if left == top && bottom == right {
            Some(if left < bottom { VertexKind::CPlus } else { VertexKind::CMinus })
        } else {
            None
        }
    }
}

/// The weights of one model under one normalization.
#[derive(Clone, Debug)]
pub struct WeightTable {
    pub params: ModelParams,
    pub norm: Normalization,
    pub precision: usize,
}

impl WeightTable {
    pub fn new(params: ModelParams, norm: Normalization) -> Result<Self> {
        params.validate()?;
        if params.kind == ModelKind::Trig && norm == Normalization::UnitB {
            return Err(Error::Invalid("unit-b normalization is defined for the rational model only".into()));
        }
        Ok(WeightTable { params, norm, precision: DEFAULT_PRECISION })
    }

    pub fn with_precision(mut self, precision: usize) -> Self {
        self.precision = precision;
        self
    }

    pub fn weight(&self, kind: VertexKind, x: &Scalar, y: &Scalar) -> Result<Scalar> {
        Ok(self.all(x, y)?.remove(&kind).unwrap())
    }

    /// Every weight at `(x, y)`.
    pub fn all(&self, x: &Scalar, y: &Scalar) -> Result<BTreeMap<VertexKind, Scalar>> {
        let d = x - y;
        let pole = || Error::Pole(format!("weight at x = {x}, y = {y}"));
        let mut m = BTreeMap::new();
        match (&self.params.kind, self.norm) {
            (ModelKind::Rational, Normalization::UnitA) => {
                let den = &d + &Scalar::one();
                let c = Scalar::one().checked_div(&den).ok_or_else(pole)?;
                let b = &d * &c;
                m.insert(VertexKind::A, Scalar::one());
                m.insert(VertexKind::BPlus, b.clone());
                m.insert(VertexKind::BMinus, b);
                m.insert(VertexKind::CPlus, c.clone());
                m.insert(VertexKind::CMinus, c);
            }
            (ModelKind::Rational, Normalization::UnitB) => {
                let c = Scalar::one().checked_div(&d).ok_or_else(pole)?;
                m.insert(VertexKind::A, &(&d + &Scalar::one()) * &c);
                m.insert(VertexKind::BPlus, Scalar::one());
                m.insert(VertexKind::BMinus, Scalar::one());
                m.insert(VertexKind::CPlus, c.clone());
                m.insert(VertexKind::CMinus, c);
            }
            (ModelKind::Trig, _) => {
                let p = self.precision;
                let g = self.params.gamma.as_ref().unwrap();
                let den = (&d + g).sinh(p);
                if den.is_zero() {
                    return Err(pole());
                }
                let b = &d.sinh(p) / &den;
                let c = &g.sinh(p) / &den;
                m.insert(VertexKind::A, Scalar::one().to_float(p));
                m.insert(VertexKind::BPlus, &(-g).exp(p) * &b);
                m.insert(VertexKind::BMinus, &g.exp(p) * &b);
                m.insert(VertexKind::CPlus, &d.exp(p) * &c);
                m.insert(VertexKind::CMinus, &(-&d).exp(p) * &c);
            }
        }
        Ok(m)
    }
}

/// `[R(x,y)]^{iα jα}_{iβ jβ}`: `iα` left, `jα` right, `iβ` bottom, `jβ` top.
#[allow(clippy::too_many_arguments)]
pub fn r_entry(
    table: &WeightTable,
    x: &Scalar,
    y: &Scalar,
    i_alpha: Colour,
    j_alpha: Colour,
    i_beta: Colour,
    j_beta: Colour,
) -> Result<Scalar> {
    for c in [i_alpha, j_alpha, i_beta, j_beta] {
        table.params.check_colour(c)?;
    }
    match VertexKind::classify(i_alpha, i_beta, j_alpha, j_beta) {
        None => Ok(Scalar::zero()),
        Some(k) => table.weight(k, x, y),
    }
}

/// Sparse operator on `V^{⊗3}`, `V = C^{n+1}`; keys are (row, col) indices.
type Operator = BTreeMap<(usize, usize), Scalar>;

fn embed(table: &WeightTable, x: &Scalar, y: &Scalar, slots: (usize, usize)) -> Result<Operator> {
    let d = table.params.rank as usize + 1;
    let weights = table.all(x, y)?;
    let index = |c: [usize; 3]| (c[0] * d + c[1]) * d + c[2];
    let spectator = 3 - slots.0 - slots.1;
    let mut op = Operator::new();
    for ia in 0..d {
        for ib in 0..d {
            for ja in 0..d {
                for jb in 0..d {
                    let Some(k) = VertexKind::classify(ia as u8, ib as u8, ja as u8, jb as u8) else {
                        continue;
                    };
                    let w = &weights[&k];
                    if w.is_zero() {
                        continue;
                    }
                    for s in 0..d {
                        let mut row = [0; 3];
                        let mut col = [0; 3];
                        row[slots.0] = ia;
                        row[slots.1] = ib;
                        row[spectator] = s;
                        col[slots.0] = ja;
                        col[slots.1] = jb;
                        col[spectator] = s;
                        op.insert((index(row), index(col)), w.clone());
                    }
                }
            }
        }
    }
    Ok(op)
}

fn compose(a: &Operator, b: &Operator) -> Operator {
    let mut by_row: BTreeMap<usize, Vec<(usize, &Scalar)>> = BTreeMap::new();
    for ((r, c), v) in b {
        by_row.entry(*r).or_default().push((*c, v));
    }
    let mut out = Operator::new();
    for ((r, k), v) in a {
        if let Some(entries) = by_row.get(k) {
            for (c, w) in entries {
                let e = out.entry((*r, *c)).or_insert_with(Scalar::zero);
                *e += v * *w;
            }
        }
    }
    out
}

/// Maximum entrywise `|LHS − RHS|` of
/// `R12(x,y) R13(x,z) R23(y,z) = R23(y,z) R13(x,z) R12(x,y)`.
pub fn ybe_residual(table: &WeightTable, x: &Scalar, y: &Scalar, z: &Scalar) -> Result<Scalar> {
    let r12 = embed(table, x, y, (0, 1))?;
    let r13 = embed(table, x, z, (0, 2))?;
    let r23 = embed(table, y, z, (1, 2))?;
    let lhs = compose(&compose(&r12, &r13), &r23);
    let rhs = compose(&compose(&r23, &r13), &r12);
    let mut keys: Vec<&(usize, usize)> = lhs.keys().chain(rhs.keys()).collect();
    keys.sort();
    keys.dedup();
    let zero = Scalar::zero();
    let mut worst = Scalar::zero();
    for k in keys {
        let diff = (lhs.get(k).unwrap_or(&zero) - rhs.get(k).unwrap_or(&zero)).abs();
        if diff > worst {
            worst = diff;
        }
    }
    Ok(worst)
}

/// Number of nonzero entries of the `(n+1)^2 × (n+1)^2` R-matrix at `(x, y)`.
pub fn nonzero_entries(table: &WeightTable, x: &Scalar, y: &Scalar) -> Result<usize> {
    let d = table.params.rank + 1;
    let mut count = 0;
    for ia in 0..d {
        for ja in 0..d {
            for ib in 0..d {
                for jb in 0..d {
                    if !r_entry(table, x, y, ia, ja, ib, jb)?.is_zero() {
                        count += 1;
                    }
                }
            }
        }
    }
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(norm: Normalization, n: u8) -> WeightTable {
        WeightTable::new(ModelParams::rational(n), norm).unwrap()
    }

    #[test]
    fn weight_examples() {
        let t = rat(Normalization::UnitA, 1);
        assert_eq!(t.weight(VertexKind::CPlus, &Scalar::int(1), &Scalar::int(0)).unwrap(), Scalar::ratio(1, 2));
        assert_eq!(t.weight(VertexKind::BPlus, &Scalar::int(4), &Scalar::int(4)).unwrap(), Scalar::zero());
        let b = rat(Normalization::UnitB, 1);
        assert_eq!(b.weight(VertexKind::A, &Scalar::int(3), &Scalar::int(2)).unwrap(), Scalar::int(2));
    }

    #[test]
    fn poles_are_errors() {
        let t = rat(Normalization::UnitA, 1);
        assert!(matches!(t.weight(VertexKind::A, &Scalar::int(0), &Scalar::int(1)), Err(Error::Pole(_))));
        let b = rat(Normalization::UnitB, 1);
        assert!(matches!(b.weight(VertexKind::A, &Scalar::int(2), &Scalar::int(2)), Err(Error::Pole(_))));
    }

    #[test]
    fn a1_matrix_layout() {
        // Rows (iα,iβ), columns (jα,jβ) in the basis 00, 01, 10, 11. The
        // trigonometric weights are pairwise distinct, so positions are pinned.
        use VertexKind::*;
        let t = WeightTable::new(ModelParams::trig(Scalar::ratio(1, 3), 1), Normalization::UnitA).unwrap();
        let (x, y) = (Scalar::ratio(5, 4), Scalar::ratio(1, 7));
        let w = t.all(&x, &y).unwrap();
        let z = Scalar::zero();
        let expect = [
            [Some(A), None, None, None],
            [None, Some(BPlus), Some(CPlus), None],
            [None, Some(CMinus), Some(BMinus), None],
            [None, None, None, Some(A)],
        ];
        for (r, row) in expect.iter().enumerate() {
            for (col, want) in row.iter().enumerate() {
                let (ia, ib) = ((r / 2) as u8, (r % 2) as u8);
                let (ja, jb) = ((col / 2) as u8, (col % 2) as u8);
                let want = want.map_or(&z, |k| &w[&k]);
                assert_eq!(&r_entry(&t, &x, &y, ia, ja, ib, jb).unwrap(), want, "entry {r},{col}");
            }
        }
        assert!(w[&CPlus] != w[&CMinus] && w[&BPlus] != w[&BMinus]);
    }

    #[test]
    fn r_entry_examples() {
        let t = rat(Normalization::UnitA, 2);
        let (x, y) = (Scalar::int(1), Scalar::int(0));
        assert_eq!(r_entry(&t, &x, &y, 0, 0, 0, 0).unwrap(), Scalar::one());
        assert_eq!(r_entry(&t, &x, &y, 0, 1, 1, 0).unwrap(), Scalar::ratio(1, 2));
        assert_eq!(r_entry(&t, &x, &y, 0, 0, 1, 2).unwrap(), Scalar::zero());
        assert!(matches!(r_entry(&t, &x, &y, 3, 0, 0, 0), Err(Error::ColourOutOfRange { .. })));
    }

    #[test]
    fn ybe_examples() {
        let t1 = rat(Normalization::UnitA, 1);
        let r = ybe_residual(&t1, &Scalar::int(5), &Scalar::int(3), &Scalar::int(2)).unwrap();
        assert_eq!(r, Scalar::zero());
        let t2 = rat(Normalization::UnitA, 2);
        let r = ybe_residual(&t2, &Scalar::int(7), &Scalar::int(4), &Scalar::int(1)).unwrap();
        assert_eq!(r, Scalar::zero());
        let tt = WeightTable::new(ModelParams::trig(Scalar::ratio(1, 2), 1), Normalization::UnitA).unwrap();
        let r = ybe_residual(&tt, &Scalar::ratio(3, 2), &Scalar::one(), &Scalar::ratio(1, 3)).unwrap();
        assert!(r.abs_below_pow2(200));
    }

    #[test]
    fn nonzero_count() {
        for n in 1..=3u8 {
            let t = rat(Normalization::UnitA, n);
            let k = nonzero_entries(&t, &Scalar::int(5), &Scalar::int(2)).unwrap();
            let n = n as usize;
            assert_eq!(k, (n + 1) * (2 * n + 1));
        }
    }

    #[test]
    fn params_validation() {
        assert!(ModelParams::rational(0).validate().is_err());
        let bad = ModelParams { kind: ModelKind::Trig, gamma: None, rank: 1 };
        assert!(bad.validate().is_err());
        let t = WeightTable::new(ModelParams::trig(Scalar::one(), 1), Normalization::UnitB);
        assert!(t.is_err());
    }
}
