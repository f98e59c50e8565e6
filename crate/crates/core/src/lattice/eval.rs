use std::collections::BTreeMap;

use super::{compile, CellTable, LatticeSpec, Method, PartitionValue, Provenance};
use crate::algebra::Scalar;
use crate::error::{Error, Result};
use crate::model::Colour;

/// Partition function of a lattice whose boundary edges are all fixed.
pub fn evaluate_fixed(spec: &LatticeSpec, method: Method) -> Result<PartitionValue> {
    if !spec.boundary.all_fixed() {
        return Err(Error::Invalid("boundary has summed or constrained edges".into()));
    }
    evaluate(spec, method)
}

/// Partition function with summed boundary edges. Alias of [`evaluate`],
/// kept for symmetry with [`evaluate_fixed`].
pub fn evaluate_summed(spec: &LatticeSpec, method: Method) -> Result<PartitionValue> {
    evaluate(spec, method)
}

/// Weighted sum over all configurations. Summed boundary edges contribute
/// their coefficients; a count constraint is handled by enumerating the
/// admissible assignments of the constrained edges.
pub fn evaluate(spec: &LatticeSpec, method: Method) -> Result<PartitionValue> {
    spec.validate()?;
    let mut total = Scalar::zero();
    for (coef, part) in spec.expand_constraint() {
        if coef.is_zero() {
            continue;
        }
        let cells = compile(&part)?;
        let z = match method {
            Method::Enumeration => enumerate(&part, &cells),
            Method::Dp => frontier_dp(&part, &cells),
        };
        total += coef * z;
    }
    let provenance = match method {
        Method::Enumeration => Provenance::Enumeration,
        Method::Dp => Provenance::FrontierDp,
    };
    Ok(PartitionValue::new(total, provenance, spec.model.clone(), spec.norm))
}

fn colours(spec: &LatticeSpec) -> std::ops::RangeInclusive<Colour> {
    0..=spec.model.rank
}

struct Walker<'a> {
    spec: &'a LatticeSpec,
    cells: &'a [Vec<CellTable>],
    one: Scalar,
    total: Scalar,
}

impl Walker<'_> {
    fn bottom(&mut self, c: usize, vert: &mut Vec<Colour>, acc: Scalar) {
        if c == self.spec.cols.len() {
            self.row(0, vert, acc);
            return;
        }
        for (colour, coef) in self.spec.boundary.bottom[c].options() {
            vert.push(colour);
            self.bottom(c + 1, vert, &acc * &coef);
            vert.pop();
        }
    }

    fn row(&mut self, r: usize, vert: &mut [Colour], acc: Scalar) {
        if r == self.spec.rows.len() {
            let mut w = acc;
            for (c, &v) in vert.iter().enumerate() {
                match self.spec.boundary.top[c].coefficient(v) {
                    Some(k) => w *= k,
                    None => return,
                }
            }
            self.total += w;
            return;
        }
        for (h, coef) in self.spec.boundary.left[r].options() {
            self.cell(r, 0, h, vert, &acc * &coef);
        }
    }

    fn cell(&mut self, r: usize, c: usize, h: Colour, vert: &mut [Colour], acc: Scalar) {
        if c == self.spec.cols.len() {
            if let Some(k) = self.spec.boundary.right[r].coefficient(h) {
                self.row(r + 1, vert, acc * k);
            }
            return;
        }
        let b = vert[c];
        for right in colours(self.spec) {
            for top in colours(self.spec) {
                let Some(w) = self.cells[r][c].weight(&self.one, h, b, right, top) else { continue };
                let w = &acc * w;
                vert[c] = top;
                self.cell(r, c + 1, right, vert, w);
                vert[c] = b;
            }
        }
    }
}

/// Depth-first sum over every configuration.
fn enumerate(spec: &LatticeSpec, cells: &[Vec<CellTable>]) -> Scalar {
    let mut w = Walker { spec, cells, one: Scalar::one(), total: Scalar::zero() };
    w.bottom(0, &mut Vec::new(), Scalar::one());
    w.total
}

fn accumulate(map: &mut BTreeMap<Vec<Colour>, Scalar>, key: Vec<Colour>, value: Scalar) {
    match map.get_mut(&key) {
        Some(v) => *v += value,
        None => {
            map.insert(key, value);
        }
    }
}

/// Transfer-matrix sweep one vertex at a time. The state is the colour of
/// every column edge on the current frontier followed by the horizontal edge
/// entering the next vertex.
fn frontier_dp(spec: &LatticeSpec, cells: &[Vec<CellTable>]) -> Scalar {
    let nc = spec.cols.len();
    let one = Scalar::one();
    let mut states: BTreeMap<Vec<Colour>, Scalar> = BTreeMap::new();
    states.insert(Vec::new(), Scalar::one());
    for c in 0..nc {
        let mut next = BTreeMap::new();
        for (key, v) in &states {
            for (colour, coef) in spec.boundary.bottom[c].options() {
                let mut k = key.clone();
                k.push(colour);
                accumulate(&mut next, k, v * &coef);
            }
        }
        states = next;
    }
    for r in 0..spec.rows.len() {
        let mut next = BTreeMap::new();
        for (key, v) in &states {
            for (h, coef) in spec.boundary.left[r].options() {
                let mut k = key.clone();
                k.push(h);
                accumulate(&mut next, k, v * &coef);
            }
        }
        states = next;
        for c in 0..nc {
            let mut next = BTreeMap::new();
            for (key, v) in &states {
                let (b, h) = (key[c], key[nc]);
                for right in colours(spec) {
                    for top in colours(spec) {
                        let Some(w) = cells[r][c].weight(&one, h, b, right, top) else { continue };
                        let mut k = key.clone();
                        k[c] = top;
                        k[nc] = right;
                        accumulate(&mut next, k, v * w);
                    }
                }
            }
            states = next;
        }
        let mut next = BTreeMap::new();
        for (mut key, v) in states {
            let h = key.pop().unwrap();
            if let Some(k) = spec.boundary.right[r].coefficient(h) {
                accumulate(&mut next, key, v * k);
            }
        }
        states = next;
    }
    let mut total = Scalar::zero();
    for (key, v) in states {
        let mut w = v;
        let mut ok = true;
        for (c, &t) in key.iter().enumerate() {
            match spec.boundary.top[c].coefficient(t) {
                Some(k) => w *= k,
                None => {
                    ok = false;
                    break;
                }
            }
        }
        if ok {
            total += w;
        }
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{BoundarySpec, CellKind, EdgeCondition, Line};
    use crate::model::{ModelParams, Normalization};

    fn lattice(xs: &[Scalar], ys: &[Scalar], model: ModelParams, norm: Normalization) -> LatticeSpec {
        let n = xs.len();
        LatticeSpec::grid(
            xs.iter().cloned().map(Line::new).collect(),
            ys.iter().cloned().map(Line::new).collect(),
            model,
            norm,
            BoundarySpec {
                left: vec![EdgeCondition::Fixed(1); n],
                right: vec![EdgeCondition::Fixed(0); n],
                top: vec![EdgeCondition::Fixed(1); ys.len()],
                bottom: vec![EdgeCondition::Fixed(0); ys.len()],
                constraint: None,
            },
        )
    }

    fn ints(v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|&i| Scalar::int(i)).collect()
    }

    fn both(spec: &LatticeSpec) -> Scalar {
        let a = evaluate(spec, Method::Enumeration).unwrap().value;
        let b = evaluate(spec, Method::Dp).unwrap().value;
        assert_eq!(a, b);
        a
    }

    #[test]
    fn single_vertex_is_c_minus() {
        let s = lattice(&ints(&[2]), &ints(&[0]), ModelParams::rational(1), Normalization::UnitA);
        assert_eq!(both(&s), Scalar::ratio(1, 3));
        let s = lattice(&ints(&[2]), &ints(&[0]), ModelParams::rational(1), Normalization::UnitB);
        assert_eq!(both(&s), Scalar::ratio(1, 2));
    }

    #[test]
    fn two_by_two_domain_wall() {
        // Direct sum of the two configurations: c·c·a·a + c·c·b·b with the
        // outer vertices turning.
        let s = lattice(&ints(&[2, 3]), &ints(&[0, 1]), ModelParams::rational(1), Normalization::UnitA);
        let w = |d: i64| (Scalar::ratio(d, d + 1), Scalar::ratio(1, d + 1));
        let (b00, c00) = w(2);
        let (_, c01) = w(1);
        let (_, c10) = w(3);
        let (b11, c11) = w(2);
        let expected = &c01 * &c10 * &b00 * &b11 + &c00 * &c11;
        assert_eq!(both(&s), expected);
    }

    #[test]
    fn empty_and_degenerate_shapes() {
        let s = lattice(&[], &[], ModelParams::rational(1), Normalization::UnitA);
        assert_eq!(both(&s), Scalar::one());
        let mut s = lattice(&ints(&[1]), &[], ModelParams::rational(1), Normalization::UnitA);
        assert_eq!(both(&s), Scalar::zero());
        s.boundary.right[0] = EdgeCondition::Fixed(1);
        assert_eq!(both(&s), Scalar::one());
    }

    #[test]
    fn all_zero_coefficients_give_zero() {
        let mut s = lattice(&ints(&[2]), &ints(&[0]), ModelParams::rational(1), Normalization::UnitA);
        s.boundary.top[0] = EdgeCondition::Weighted([(0, Scalar::zero()), (1, Scalar::zero())].into());
        assert!(both(&s).is_zero());
    }

    #[test]
    fn pole_is_reported() {
        let s = lattice(&ints(&[-1]), &ints(&[0]), ModelParams::rational(1), Normalization::UnitA);
        assert!(matches!(evaluate(&s, Method::Dp), Err(Error::Pole(_))));
    }

    #[test]
    fn cross_and_turn_cells() {
        let mut s = lattice(&ints(&[5]), &ints(&[0]), ModelParams::rational(1), Normalization::UnitA);
        s.cells = Some(vec![vec![CellKind::Turn]]);
        assert_eq!(both(&s), Scalar::one());
        s.cells = Some(vec![vec![CellKind::Cross]]);
        assert_eq!(both(&s), Scalar::zero());
        s.boundary.top[0] = EdgeCondition::Fixed(0);
        s.boundary.right[0] = EdgeCondition::Fixed(1);
        assert_eq!(both(&s), Scalar::one());
    }

    #[test]
    fn down_column_reads_rotated_vertex() {
        // Down column carrying colour 1 in from the top, row carrying 0:
        // left 0, top 1 in; right, bottom out. Rotated reading gives
        // left'=1, bottom'=0, so b+ or c+ at R(y, x).
        let mut s = lattice(&ints(&[0]), &ints(&[3]), ModelParams::rational(1), Normalization::UnitA);
        s.cols[0] = s.cols[0].clone().down();
        s.boundary.left[0] = EdgeCondition::Fixed(0);
        s.boundary.top[0] = EdgeCondition::Fixed(1);
        s.boundary.bottom[0] = EdgeCondition::Fixed(1);
        s.boundary.right[0] = EdgeCondition::Fixed(0);
        assert_eq!(both(&s), Scalar::ratio(3, 4));
        s.boundary.bottom[0] = EdgeCondition::Fixed(0);
        s.boundary.right[0] = EdgeCondition::Fixed(1);
        assert_eq!(both(&s), Scalar::ratio(1, 4));
    }

    #[test]
    fn unit_b_differs_by_crossing_factor() {
        let xs = ints(&[4, 7, 11]);
        let ys = ints(&[0, 2, -5]);
        let a = lattice(&xs, &ys, ModelParams::rational(2), Normalization::UnitA);
        let b = lattice(&xs, &ys, ModelParams::rational(2), Normalization::UnitB);
        assert_eq!(both(&b), both(&a) * a.normalization_factor().unwrap());
    }

    #[test]
    fn trig_methods_agree() {
        let g = Scalar::ratio(1, 3);
        let xs = vec![Scalar::ratio(7, 5), Scalar::ratio(13, 4)];
        let ys = vec![Scalar::ratio(-1, 2), Scalar::ratio(1, 9)];
        let s = lattice(&xs, &ys, ModelParams::trig(g, 1), Normalization::UnitA);
        let a = evaluate(&s, Method::Enumeration).unwrap().value;
        let b = evaluate(&s, Method::Dp).unwrap().value;
        assert!((a - b).abs_below_pow2(200));
    }
}
