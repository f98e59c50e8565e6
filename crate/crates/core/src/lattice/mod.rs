//! Rectangular lattices of vertices with per-edge boundary data, and two
//! independent evaluators.
//!
//! Rows are listed bottom to top and flow right; columns are listed left to
//! right. A column either flows up (standard vertices) or down. Bent lines
//! are expressed with `Cross` and `Turn` cells, which carry weight 1 and
//! no rapidity dependence.

mod eval;
mod limit;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::algebra::Scalar;
use crate::error::{Error, Result};
use crate::model::{Colour, ModelKind, ModelParams, Normalization, VertexKind, WeightTable};

pub use eval::{evaluate, evaluate_fixed, evaluate_summed};
pub use limit::sequential_limit;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CellKind {
    /// Standard vertex: row rapidity `x`, column rapidity `y`, weight `R(x, y)`.
    Std,
    /// Down-flowing column: incoming edges are left and top. The weight is
    /// the standard vertex read with left' = top, bottom' = left,
    /// right' = bottom, top' = right, at `R(y, x)`.
    Down,
    /// Lines pass without interacting.
    Cross,
    /// The row line turns up and the column line turns right.
    Turn,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    #[default]
    Up,
    Down,
}

fn is_up(o: &Orientation) -> bool {
    *o == Orientation::Up
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Line {
    pub rapidity: Scalar,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    #[serde(default, skip_serializing_if = "is_up")]
    pub orientation: Orientation,
}

impl Line {
    pub fn new(rapidity: Scalar) -> Self {
        Line { rapidity, label: None, orientation: Orientation::Up }
    }

    pub fn labelled(rapidity: Scalar, label: impl Into<String>) -> Self {
        Line { rapidity, label: Some(label.into()), orientation: Orientation::Up }
    }

    pub fn down(mut self) -> Self {
        self.orientation = Orientation::Down;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeCondition {
    Fixed(Colour),
    /// Summed over the listed colours with the given coefficients.
    Weighted(BTreeMap<Colour, Scalar>),
}

impl EdgeCondition {
    /// Colours summed with coefficient 1.
    pub fn summed(colours: impl IntoIterator<Item = Colour>) -> Self {
        EdgeCondition::Weighted(colours.into_iter().map(|c| (c, Scalar::one())).collect())
    }

    pub fn options(&self) -> Vec<(Colour, Scalar)> {
        match self {
            EdgeCondition::Fixed(c) => vec![(*c, Scalar::one())],
            EdgeCondition::Weighted(m) => m.iter().map(|(c, v)| (*c, v.clone())).collect(),
        }
    }

    pub fn coefficient(&self, c: Colour) -> Option<Scalar> {
        match self {
            EdgeCondition::Fixed(f) => (*f == c).then(Scalar::one),
            EdgeCondition::Weighted(m) => m.get(&c).cloned(),
        }
    }

    fn colours(&self) -> Vec<Colour> {
        match self {
            EdgeCondition::Fixed(c) => vec![*c],
            EdgeCondition::Weighted(m) => m.keys().copied().collect(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
    Top,
    Bottom,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EdgeRef {
    pub side: Side,
    pub index: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CountTerm {
    pub side: Side,
    pub index: usize,
    pub colour: Colour,
}

/// Keeps only assignments in which the number of listed edges carrying
/// their listed colour equals `equals`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CountConstraint {
    pub count: Vec<CountTerm>,
    pub equals: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundarySpec {
    pub left: Vec<EdgeCondition>,
    pub right: Vec<EdgeCondition>,
    pub top: Vec<EdgeCondition>,
    pub bottom: Vec<EdgeCondition>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub constraint: Option<CountConstraint>,
}

impl BoundarySpec {
    pub fn edge(&self, e: EdgeRef) -> Option<&EdgeCondition> {
        match e.side {
            Side::Left => self.left.get(e.index),
            Side::Right => self.right.get(e.index),
            Side::Top => self.top.get(e.index),
            Side::Bottom => self.bottom.get(e.index),
        }
    }

    fn edge_mut(&mut self, e: EdgeRef) -> &mut EdgeCondition {
        match e.side {
            Side::Left => &mut self.left[e.index],
            Side::Right => &mut self.right[e.index],
            Side::Top => &mut self.top[e.index],
            Side::Bottom => &mut self.bottom[e.index],
        }
    }

    pub fn all_fixed(&self) -> bool {
        self.constraint.is_none()
            && [&self.left, &self.right, &self.top, &self.bottom]
                .iter()
                .all(|v| v.iter().all(|e| matches!(e, EdgeCondition::Fixed(_))))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LatticeSpec {
    pub rows: Vec<Line>,
    pub cols: Vec<Line>,
    /// Per-cell kinds, bottom row first. Defaults to `Std`, or `Down` in
    /// down-flowing columns.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cells: Option<Vec<Vec<CellKind>>>,
    pub model: ModelParams,
    pub norm: Normalization,
    pub boundary: BoundarySpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub precision_bits: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    Enumeration,
    FrontierDp,
    Determinant,
    Limit,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PartitionValue {
    pub value: Scalar,
    pub provenance: Provenance,
    pub model: ModelParams,
    pub norm: Normalization,
}

impl PartitionValue {
    pub fn new(value: Scalar, provenance: Provenance, model: ModelParams, norm: Normalization) -> Self {
        PartitionValue { value, provenance, model, norm }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Enumeration,
    Dp,
}

impl LatticeSpec {
    /// A lattice of standard cells with the given boundary.
    pub fn grid(rows: Vec<Line>, cols: Vec<Line>, model: ModelParams, norm: Normalization, boundary: BoundarySpec) -> Self {
        LatticeSpec { rows, cols, cells: None, model, norm, boundary, precision_bits: None }
    }

    pub fn with_cells(mut self, cells: Vec<Vec<CellKind>>) -> Self {
        self.cells = Some(cells);
        self
    }

    pub fn cell_kind(&self, r: usize, c: usize) -> CellKind {
        match &self.cells {
            Some(cells) => cells[r][c],
            None => match self.cols[c].orientation {
                Orientation::Up => CellKind::Std,
                Orientation::Down => CellKind::Down,
            },
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.model.validate()?;
        let (nr, nc) = (self.rows.len(), self.cols.len());
        let b = &self.boundary;
        if b.left.len() != nr || b.right.len() != nr || b.bottom.len() != nc || b.top.len() != nc {
            return Err(Error::Invalid(format!(
                "boundary sizes left/right {}/{}, bottom/top {}/{} do not match a {nr}x{nc} lattice",
                b.left.len(),
                b.right.len(),
                b.bottom.len(),
                b.top.len()
            )));
        }
        if let Some(cells) = &self.cells {
            if cells.len() != nr || cells.iter().any(|r| r.len() != nc) {
                return Err(Error::Invalid("cell table does not match lattice size".into()));
            }
        }
        if self.rows.iter().any(|l| l.orientation == Orientation::Down) {
            return Err(Error::Invalid("rows always flow right".into()));
        }
        for e in [&b.left, &b.right, &b.top, &b.bottom].into_iter().flatten() {
            if let EdgeCondition::Weighted(m) = e {
                if m.is_empty() {
                    return Err(Error::Invalid("weighted edge with no colours".into()));
                }
            }
            for c in e.colours() {
                self.model.check_colour(c)?;
            }
        }
        if let Some(k) = &b.constraint {
            for t in &k.count {
                let e = EdgeRef { side: t.side, index: t.index };
                if b.edge(e).is_none() {
                    return Err(Error::Invalid(format!("constraint names missing edge {e:?}")));
                }
                self.model.check_colour(t.colour)?;
            }
        }
        Ok(())
    }

    pub fn weight_table(&self) -> Result<WeightTable> {
        let t = WeightTable::new(self.model.clone(), self.norm)?;
        Ok(match self.precision_bits {
            Some(p) => t.with_precision(p),
            None => t,
        })
    }

    /// Copy with every line labelled `label` moved to rapidity `value`.
    pub fn with_label_value(&self, label: &str, value: &Scalar) -> LatticeSpec {
        let mut s = self.clone();
        for l in s.rows.iter_mut().chain(s.cols.iter_mut()) {
            if l.label.as_deref() == Some(label) {
                l.rapidity = value.clone();
            }
        }
        s
    }

    /// Values of the variable on lines labelled `label` at which some vertex
    /// weight has a pole; the partition function times `Π (v − root)` is a
    /// polynomial in that variable. Rational model only.
    pub fn denominator_roots(&self, label: &str) -> Result<Vec<Scalar>> {
        if self.model.kind != ModelKind::Rational {
            return Err(Error::Invalid("denominator roots are defined for the rational model".into()));
        }
        let shift = match self.norm {
            Normalization::UnitA => Scalar::one(),
            Normalization::UnitB => Scalar::zero(),
        };
        let is = |l: &Line| l.label.as_deref() == Some(label);
        let mut roots = Vec::new();
        for (r, row) in self.rows.iter().enumerate() {
            for (c, col) in self.cols.iter().enumerate() {
                // The weight denominator vanishes at d = -shift, with
                // d = row - col (Std) or col - row (Down).
                match self.cell_kind(r, c) {
                    CellKind::Std => {
                        if is(row) {
                            roots.push(&col.rapidity - &shift);
                        }
                        if is(col) {
                            roots.push(&row.rapidity + &shift);
                        }
                    }
                    CellKind::Down => {
                        if is(row) {
                            roots.push(&col.rapidity + &shift);
                        }
                        if is(col) {
                            roots.push(&row.rapidity - &shift);
                        }
                    }
                    CellKind::Cross | CellKind::Turn => {}
                }
            }
        }
        Ok(roots)
    }

    /// Ratio of unit-b to unit-a values for this lattice: the product over
    /// interacting cells of `(d + 1)/d`.
    pub fn normalization_factor(&self) -> Result<Scalar> {
        let mut acc = Scalar::one();
        for (r, row) in self.rows.iter().enumerate() {
            for (c, col) in self.cols.iter().enumerate() {
                let d = match self.cell_kind(r, c) {
                    CellKind::Std => &row.rapidity - &col.rapidity,
                    CellKind::Down => &col.rapidity - &row.rapidity,
                    _ => continue,
                };
                let f = (&d + &Scalar::one())
                    .checked_div(&d)
                    .ok_or_else(|| Error::Pole(format!("crossing at row {r}, column {c}")))?;
                acc *= f;
            }
        }
        Ok(acc)
    }

    /// The same lattice with the constrained edges fixed, one entry per
    /// admissible assignment, each with its coefficient.
    pub(crate) fn expand_constraint(&self) -> Vec<(Scalar, LatticeSpec)> {
        let Some(k) = &self.boundary.constraint else {
            return vec![(Scalar::one(), self.clone())];
        };
        let mut edges: Vec<EdgeRef> =
            k.count.iter().map(|t| EdgeRef { side: t.side, index: t.index }).collect();
        edges.sort();
        edges.dedup();
        let options: Vec<Vec<(Colour, Scalar)>> =
            edges.iter().map(|e| self.boundary.edge(*e).unwrap().options()).collect();
        let mut out = Vec::new();
        let mut pick = vec![0usize; edges.len()];
        loop {
            let colour_of = |e: EdgeRef| {
                let i = edges.iter().position(|x| *x == e).unwrap();
                options[i][pick[i]].0
            };
            let hits = k
                .count
                .iter()
                .filter(|t| colour_of(EdgeRef { side: t.side, index: t.index }) == t.colour)
                .count();
            if hits == k.equals {
                let mut s = self.clone();
                s.boundary.constraint = None;
                let mut coef = Scalar::one();
                for (i, e) in edges.iter().enumerate() {
                    let (c, v) = &options[i][pick[i]];
                    *s.boundary.edge_mut(*e) = EdgeCondition::Fixed(*c);
                    coef *= v;
                }
                out.push((coef, s));
            }
            // Odometer step.
            let mut i = 0;
            loop {
                if i == edges.len() {
                    return out;
                }
                pick[i] += 1;
                if pick[i] < options[i].len() {
                    break;
                }
                pick[i] = 0;
                i += 1;
            }
        }
    }
}

/// Lattice with fixed left and bottom colours and every top and right edge
/// summed over all colours with coefficient 1. In unit-a normalization its
/// partition function is 1.
pub fn trivial_pf(
    xs: &[Scalar],
    ys: &[Scalar],
    left: &[Colour],
    bottom: &[Colour],
    model: ModelParams,
    norm: Normalization,
    method: Method,
) -> Result<PartitionValue> {
    if left.len() != xs.len() || bottom.len() != ys.len() {
        return Err(Error::Invalid("one colour per row on the left and per column at the bottom".into()));
    }
    let all = EdgeCondition::summed(0..=model.rank);
    let spec = LatticeSpec::grid(
        xs.iter().cloned().map(Line::new).collect(),
        ys.iter().cloned().map(Line::new).collect(),
        model,
        norm,
        BoundarySpec {
            left: left.iter().map(|&c| EdgeCondition::Fixed(c)).collect(),
            right: vec![all.clone(); xs.len()],
            top: vec![all; ys.len()],
            bottom: bottom.iter().map(|&c| EdgeCondition::Fixed(c)).collect(),
            constraint: None,
        },
    );
    evaluate(&spec, method)
}

/// Per-cell weight lookup built once per evaluation.
pub(crate) enum CellTable {
    Vertex { weights: BTreeMap<VertexKind, Scalar>, down: bool },
    Cross,
    Turn,
}

impl CellTable {
    pub(crate) fn weight<'a>(&'a self, one: &'a Scalar, l: Colour, b: Colour, r: Colour, t: Colour) -> Option<&'a Scalar> {
        match self {
            CellTable::Cross => (l == r && b == t).then_some(one),
            CellTable::Turn => (l == t && b == r).then_some(one),
            CellTable::Vertex { weights, down } => {
                let k = if *down {
                    VertexKind::classify(t, l, b, r)
                } else {
                    VertexKind::classify(l, b, r, t)
                }?;
                weights.get(&k).filter(|w| !w.is_zero())
            }
        }
    }
}

pub(crate) fn compile(spec: &LatticeSpec) -> Result<Vec<Vec<CellTable>>> {
    spec.validate()?;
    let table = spec.weight_table()?;
    let mut out = Vec::with_capacity(spec.rows.len());
    for (r, row) in spec.rows.iter().enumerate() {
        let mut cells = Vec::with_capacity(spec.cols.len());
        for (c, col) in spec.cols.iter().enumerate() {
            cells.push(match spec.cell_kind(r, c) {
                CellKind::Std => CellTable::Vertex { weights: table.all(&row.rapidity, &col.rapidity)?, down: false },
                CellKind::Down => CellTable::Vertex { weights: table.all(&col.rapidity, &row.rapidity)?, down: true },
                CellKind::Cross => CellTable::Cross,
                CellKind::Turn => CellTable::Turn,
            });
        }
        out.push(cells);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dwbc(xs: &[i64], ys: &[i64]) -> LatticeSpec {
        let n = xs.len();
        LatticeSpec::grid(
            xs.iter().map(|&x| Line::new(Scalar::int(x))).collect(),
            ys.iter().map(|&y| Line::new(Scalar::int(y))).collect(),
            ModelParams::rational(1),
            Normalization::UnitA,
            BoundarySpec {
                left: vec![EdgeCondition::Fixed(1); n],
                right: vec![EdgeCondition::Fixed(0); n],
                top: vec![EdgeCondition::Fixed(1); n],
                bottom: vec![EdgeCondition::Fixed(0); n],
                constraint: None,
            },
        )
    }

    #[test]
    fn validation_catches_shape_errors() {
        let mut s = dwbc(&[2, 3], &[0, 1]);
        assert!(s.validate().is_ok());
        s.boundary.top.pop();
        assert!(s.validate().is_err());
        let mut s = dwbc(&[2], &[0]);
        s.boundary.left[0] = EdgeCondition::Fixed(2);
        assert!(matches!(s.validate(), Err(Error::ColourOutOfRange { .. })));
        let mut s = dwbc(&[2], &[0]);
        s.boundary.top[0] = EdgeCondition::Weighted(BTreeMap::new());
        assert!(s.validate().is_err());
    }

    #[test]
    fn denominator_roots_follow_crossings() {
        let mut s = dwbc(&[2, 3], &[0, 1]);
        s.rows[1].label = Some("b".into());
        assert_eq!(s.denominator_roots("b").unwrap(), vec![Scalar::int(-1), Scalar::int(0)]);
        s.norm = Normalization::UnitB;
        assert_eq!(s.denominator_roots("b").unwrap(), vec![Scalar::int(0), Scalar::int(1)]);
    }

    #[test]
    fn constraint_expansion_filters_assignments() {
        let mut s = dwbc(&[2, 3], &[0, 1]);
        s.boundary.top = vec![EdgeCondition::summed([0, 1]); 2];
        s.boundary.constraint = Some(CountConstraint {
            count: vec![
                CountTerm { side: Side::Top, index: 0, colour: 1 },
                CountTerm { side: Side::Top, index: 1, colour: 1 },
            ],
            equals: 1,
        });
        let parts = s.expand_constraint();
        assert_eq!(parts.len(), 2);
        assert!(parts.iter().all(|(_, p)| p.boundary.constraint.is_none()));
    }

    #[test]
    fn trivial_lattices_sum_to_one() {
        let r = |v: &[i64]| v.iter().map(|&i| Scalar::int(i)).collect::<Vec<_>>();
        let m2 = ModelParams::rational(2);
        let one = |xs: &[Scalar], ys: &[Scalar], l: &[u8], b: &[u8], m: ModelParams| {
            trivial_pf(xs, ys, l, b, m, Normalization::UnitA, Method::Dp).unwrap().value
        };
        assert_eq!(one(&r(&[3]), &r(&[0]), &[2], &[0], m2.clone()), Scalar::one());
        assert_eq!(one(&r(&[3, 7]), &r(&[0, 1, -4]), &[1, 2], &[0, 2, 1], m2), Scalar::one());
        assert_eq!(one(&r(&[3]), &r(&[0]), &[0], &[0], ModelParams::rational(1)), Scalar::one());
    }

    #[test]
    fn json_round_trip() {
        let mut s = dwbc(&[2, 3], &[0, 1]);
        s.boundary.top[0] = EdgeCondition::Weighted([(0, Scalar::one()), (1, Scalar::int(-1))].into());
        s.cols[1] = s.cols[1].clone().down();
        let text = serde_json::to_string(&s).unwrap();
        assert!(text.contains(r#"{"weighted":{"0":"1/1","1":"-1/1"}}"#));
        assert!(text.contains(r#""norm":"unit_a""#));
        let back: LatticeSpec = serde_json::from_str(&text).unwrap();
        assert_eq!(back, s);
    }
}
