use proptest::prelude::*;

use vertexlab::algebra::{det, interpolate, limit_at_infinity_from, vandermonde, Polynomial};
use vertexlab::bethe::{solve, BetheOutcome, BetheProblem, SearchConfig};
use vertexlab::dwpf::dwpf;
use vertexlab::lattice::{evaluate, BoundarySpec, CellKind, EdgeCondition, LatticeSpec, Line, Method};
use vertexlab::model::{Colour, ModelParams, Normalization};
use vertexlab::scalar_product::{scalar_product, ScalarProductSpec};
use vertexlab::Scalar;

fn rational() -> impl Strategy<Value = Scalar> {
    (-400i64..=400, 1i64..=97).prop_map(|(p, q)| Scalar::ratio(p, q))
}

/// Pairwise differences avoid −1, 0 and 1, so no weight has a pole.
fn generic(v: &[Scalar]) -> bool {
    let one = Scalar::one();
    v.iter().enumerate().all(|(i, a)| {
        v[i + 1..].iter().all(|b| {
            let d = a - b;
            !d.is_zero() && d != one && d != -one.clone()
        })
    })
}

fn rapidities(n: usize) -> impl Strategy<Value = Vec<Scalar>> {
    prop::collection::vec(rational(), n).prop_filter("pole-free window", |v| generic(v))
}

fn cofactor(m: &[Vec<Scalar>]) -> Scalar {
    if m.is_empty() {
        return Scalar::one();
    }
    let mut total = Scalar::zero();
    for (j, a) in m[0].iter().enumerate() {
        let minor: Vec<Vec<Scalar>> =
            m[1..].iter().map(|row| row.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, v)| v.clone()).collect()).collect();
        let term = a * &cofactor(&minor);
        total = if j % 2 == 0 { total + term } else { total - term };
    }
    total
}

fn matrix() -> impl Strategy<Value = Vec<Vec<Scalar>>> {
    (0usize..=6).prop_flat_map(|n| {
        prop::collection::vec(prop::collection::vec((-9i64..=9, 1i64..=5).prop_map(|(p, q)| Scalar::ratio(p, q)), n), n)
    })
}

proptest! {
    #[test]
    fn elimination_matches_cofactor_expansion(m in matrix()) {
        prop_assert_eq!(det(&m).unwrap(), cofactor(&m));
    }

    #[test]
    fn vandermonde_sign_identity(xs in prop::collection::vec(rational(), 0..7)) {
        let n = xs.len() as u32;
        let sign = if (n * n.saturating_sub(1) / 2) % 2 == 1 { -Scalar::one() } else { Scalar::one() };
        let v = vandermonde(&xs, false);
        prop_assert_eq!(&v * &vandermonde(&xs, true), sign * &v * &v);
    }

    #[test]
    fn limit_ignores_sample_points(
        roots in prop::collection::vec(-20i64..=20, 1..5),
        coeffs in prop::collection::vec(rational(), 5),
        start in 30i64..200,
    ) {
        let roots: Vec<Scalar> = roots.into_iter().map(Scalar::int).collect();
        let d = roots.len();
        let num = Polynomial::new(coeffs[..d].to_vec());
        let den = Polynomial::from_roots(&roots);
        let f = |b: &Scalar| Ok(num.eval(b) / den.eval(b));
        let near = limit_at_infinity_from(f, &roots, &Scalar::int(-start)).unwrap();
        let far = limit_at_infinity_from(f, &roots, &Scalar::int(start + 10)).unwrap();
        prop_assert_eq!(&near, &far);
        prop_assert_eq!(near, num.coeff(d - 1));
    }
}

fn edge(rank: Colour) -> impl Strategy<Value = EdgeCondition> {
    prop_oneof![
        (0..=rank).prop_map(EdgeCondition::Fixed),
        prop::collection::btree_map(0..=rank, (-3i64..=3).prop_map(Scalar::int), 1..=(rank as usize + 1))
            .prop_map(EdgeCondition::Weighted),
    ]
}

fn cell() -> impl Strategy<Value = CellKind> {
    prop_oneof![6 => Just(CellKind::Std), 2 => Just(CellKind::Down), 1 => Just(CellKind::Cross), 1 => Just(CellKind::Turn)]
}

fn random_lattice() -> impl Strategy<Value = LatticeSpec> {
    (1usize..=3, 1usize..=4, 1u8..=2, any::<bool>()).prop_flat_map(|(r, c, rank, unit_b)| {
        (
            rapidities(r + c),
            prop::collection::vec(edge(rank), 2 * (r + c)),
            prop::collection::vec(prop::collection::vec(cell(), c), r),
        )
            .prop_map(move |(v, edges, cells)| {
                let norm = if unit_b { Normalization::UnitB } else { Normalization::UnitA };
                LatticeSpec::grid(
                    v[..r].iter().cloned().map(Line::new).collect(),
                    v[r..].iter().cloned().map(Line::new).collect(),
                    ModelParams::rational(rank),
                    norm,
                    BoundarySpec {
                        left: edges[..r].to_vec(),
                        right: edges[r..2 * r].to_vec(),
                        bottom: edges[2 * r..2 * r + c].to_vec(),
                        top: edges[2 * r + c..].to_vec(),
                        constraint: None,
                    },
                )
                .with_cells(cells)
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn enumeration_matches_frontier_dp(spec in random_lattice()) {
        let e = evaluate(&spec, Method::Enumeration).unwrap().value;
        let d = evaluate(&spec, Method::Dp).unwrap().value;
        prop_assert_eq!(e, d);
    }

    #[test]
    fn unit_b_is_unit_a_times_crossing_factors(
        spec in random_lattice().prop_map(|s| LatticeSpec { cells: None, ..s }),
    ) {
        let a = evaluate(&LatticeSpec { norm: Normalization::UnitA, ..spec.clone() }, Method::Dp).unwrap().value;
        let b = evaluate(&LatticeSpec { norm: Normalization::UnitB, ..spec.clone() }, Method::Dp).unwrap().value;
        let mut factor = Scalar::one();
        for x in &spec.rows {
            for y in &spec.cols {
                let d = &x.rapidity - &y.rapidity;
                factor *= (&d + &Scalar::one()) / d;
            }
        }
        prop_assert_eq!(b, a * factor);
    }

    #[test]
    fn dwpf_column_swaps(n in 2usize..=3, v in rapidities(6), j in 0usize..2) {
        prop_assume!(j + 1 < n);
        let (xs, mut ys) = (v[..n].to_vec(), v[3..3 + n].to_vec());
        let z = dwpf(&xs, &ys, Normalization::UnitA, Method::Dp).unwrap().value;
        ys.swap(j, j + 1);
        prop_assert_eq!(dwpf(&xs, &ys, Normalization::UnitA, Method::Dp).unwrap().value, z);
    }

    /// S · Π_{j > N−m}(b_m − y_j + 1) has degree at most L − N + m − 1 in b_m.
    #[test]
    fn scalar_product_degree_in_last_b(
        (n, m, l) in (1usize..=2).prop_flat_map(|n| (Just(n), 1..=n, n..=3)),
        v in rapidities(12),
    ) {
        let (xs, bs, ys, ts) = (&v[..n], &v[2..2 + m], &v[4..4 + l], &v[7..7 + l + 2]);
        let samples: Vec<(Scalar, Scalar)> = ts
            .iter()
            .map(|t| {
                let mut b = bs.to_vec();
                b[m - 1] = t.clone();
                let spec = ScalarProductSpec::new(xs.to_vec(), b, ys.to_vec(), Normalization::UnitA);
                let s = scalar_product(&spec, Method::Dp).unwrap().value;
                let cleared: Scalar = ys[n - m..].iter().map(|y| t - y + Scalar::one()).product();
                (t.clone(), s * cleared)
            })
            .collect();
        let p = interpolate(&samples).unwrap();
        prop_assert!(p.degree().is_none_or(|d| d + n < l + m));
    }

    #[test]
    fn scalar_product_symmetric_in_free_columns(
        (n, m, l) in (1usize..=2).prop_flat_map(|n| (Just(n), 0..=n, n..=4)),
        v in rapidities(8),
        i in 0usize..4,
        j in 0usize..4,
    ) {
        let free = n - m;
        prop_assume!(free + i < l && free + j < l && i != j);
        let (xs, bs, mut ys) = (v[..n].to_vec(), v[2..2 + m].to_vec(), v[4..4 + l].to_vec());
        let s = scalar_product(&ScalarProductSpec::new(xs.clone(), bs.clone(), ys.clone(), Normalization::UnitA), Method::Dp).unwrap().value;
        ys.swap(free + i, free + j);
        let t = scalar_product(&ScalarProductSpec::new(xs, bs, ys, Normalization::UnitA), Method::Dp).unwrap().value;
        prop_assert_eq!(s, t);
    }

    #[test]
    fn scalar_product_recursion(
        (n, m, l) in (1usize..=2).prop_flat_map(|n| (Just(n), 1..=n, n..=3)),
        v in rapidities(8),
    ) {
        let (xs, mut bs, ys) = (v[..n].to_vec(), v[2..2 + m].to_vec(), v[4..4 + l].to_vec());
        let fewer = ScalarProductSpec::new(xs.clone(), bs[..m - 1].to_vec(), ys.clone(), Normalization::UnitA);
        bs[m - 1] = ys[n - m].clone();
        let hit = ScalarProductSpec::new(xs, bs, ys, Normalization::UnitA);
        prop_assert_eq!(scalar_product(&hit, Method::Dp).unwrap().value, scalar_product(&fewer, Method::Dp).unwrap().value);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn single_roots_solve_their_equation(ys in prop::collection::vec(-12i64..=12, 1..=4)) {
        let mut ys = ys;
        ys.sort();
        ys.dedup();
        let ys: Vec<Scalar> = ys.into_iter().map(Scalar::int).collect();
        let p = BetheProblem::a1(ys, 1);
        if let Ok(BetheOutcome::Solved { solutions, complete, .. }) = solve(&p, &SearchConfig::default()) {
            prop_assert!(complete);
            for s in solutions {
                let r = p.residual(&s.roots).unwrap();
                prop_assert!(r.iter().all(|r| r.is_zero() || r.abs_below_pow2(150)));
            }
        }
    }
}
