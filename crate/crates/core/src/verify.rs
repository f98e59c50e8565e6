//! Machine checks of every identity the library implements, grouped into
//! named suites. Each suite draws its random points from a seeded ChaCha
//! stream, so reports are reproducible.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::a2::{
    a2_scalar_product, antifundamental_lattice, degenerate_b1, degenerate_b2, fact1, fact2,
    fundamental_scalar_product, lemma5_lattice, lemma7_lattice, partial_det, partial_limit, A2Spec, Layout,
    PartialForm,
};
use crate::algebra::{interpolate, Scalar};
use crate::bethe::{solve, BetheOutcome, BetheProblem, SearchConfig};
use crate::dwpf::{coloured_dwpf, dwpf, dwpf_ik, dwpf_ik_trig, dwpf_trig, pdwpf, pdwpf_det};
use crate::error::{Error, Result};
use crate::lattice::{evaluate, trivial_pf, Method, PartitionValue};
use crate::model::{ybe_residual, Colour, ModelParams, Normalization, VertexKind, WeightTable};
use crate::scalar_product::{coloured_scalar_product, ik_sum, scalar_product, slavnov, ScalarProductSpec};

/// `(name, criterion, title)` for every suite, in run order.
pub const SUITES: &[(&str, u8, &str)] = &[
    ("ybe", 1, "Yang-Baxter equation"),
    ("weight-identity", 2, "a = b + c in unit-a"),
    ("dwpf-determinant", 3, "domain wall determinant against enumeration"),
    ("dwpf-properties", 4, "domain wall properties A-D"),
    ("lemma1", 5, "trivial partition function is 1"),
    ("lemma2", 6, "coloured domain wall equals uncoloured"),
    ("lemma3", 7, "coloured scalar product equals uncoloured"),
    ("slavnov", 8, "on-shell Slavnov determinant"),
    ("appendix", 9, "partial domain wall determinant and the IK sum"),
    ("a2-degenerations", 10, "A2 layouts and b to infinity degenerations"),
    ("factorizations", 11, "factorized degenerations"),
    ("lemma5-7", 12, "colour invariance with signs"),
];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyConfig {
    pub seed: u64,
    pub precision: usize,
    /// Largest lattice side for `lemma1`.
    pub max_size: usize,
    /// Rank for `lemma1`.
    pub rank: u8,
    pub method: Method,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { seed: 0, precision: 256, max_size: 3, rank: 2, method: Method::Enumeration }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CaseReport {
    pub id: String,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub difference: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub criterion: u8,
    pub title: String,
    pub passed: bool,
    pub cases: Vec<CaseReport>,
}

impl SuiteReport {
    pub fn failures(&self) -> impl Iterator<Item = &CaseReport> {
        self.cases.iter().filter(|c| !c.passed)
    }
}

/// Looks a suite up by name or by criterion number.
pub fn find_suite(key: &str) -> Option<(&'static str, u8, &'static str)> {
    SUITES.iter().copied().find(|(name, n, _)| *name == key || key.parse::<u8>().ok() == Some(*n))
}

pub fn run_suite(key: &str, cfg: &VerifyConfig) -> Result<SuiteReport> {
    let (name, criterion, title) = find_suite(key).ok_or_else(|| Error::Invalid(format!("unknown suite {key:?}")))?;
    let mut cases = Cases::default();
    let mut pts = Points::new(cfg.seed.wrapping_mul(0x9e37_79b9).wrapping_add(criterion as u64));
    match criterion {
        1 => ybe(&mut cases, &mut pts, cfg),
        2 => weight_identity(&mut cases, &mut pts, cfg),
        3 => dwpf_determinant(&mut cases, &mut pts, cfg),
        4 => dwpf_properties(&mut cases, &mut pts, cfg),
        5 => lemma1(&mut cases, &mut pts, cfg),
        6 => lemma2(&mut cases, &mut pts, cfg),
        7 => lemma3(&mut cases, &mut pts, cfg),
        8 => slavnov_on_shell(&mut cases, cfg),
        9 => appendix(&mut cases, &mut pts, cfg),
        10 => a2_degenerations(&mut cases, &mut pts, cfg),
        11 => factorizations(&mut cases, cfg),
        _ => lemmas_5_7(&mut cases, &mut pts, cfg),
    }
    let cases = cases.0;
    Ok(SuiteReport {
        suite: name.into(),
        criterion,
        title: title.into(),
        passed: !cases.is_empty() && cases.iter().all(|c| c.passed),
        cases,
    })
}

pub fn run_all(cfg: &VerifyConfig) -> Result<Vec<SuiteReport>> {
    SUITES.iter().map(|(name, _, _)| run_suite(name, cfg)).collect()
}

/// Random rapidities: numerators in [−400, 400], denominators in [1, 97].
/// Trigonometric points stay in [−2, 2] so the weights are of order one and
/// an absolute tolerance is meaningful.
struct Points(ChaCha8Rng);

impl Points {
    fn new(seed: u64) -> Self {
        Points(ChaCha8Rng::seed_from_u64(seed))
    }

    fn rational(&mut self) -> Scalar {
        Scalar::ratio(self.0.gen_range(-400..=400), self.0.gen_range(1..=97))
    }

    fn small(&mut self) -> Scalar {
        let q = self.0.gen_range(1..=97);
        Scalar::ratio(self.0.gen_range(-2 * q..=2 * q), q)
    }

    /// A trigonometric crossing parameter in (0, 2].
    fn gamma(&mut self) -> Scalar {
        let q = self.0.gen_range(1..=97);
        Scalar::ratio(self.0.gen_range(1..=2 * q), q)
    }

    /// `n` values whose pairwise differences avoid −1, 0, 1 and `±forbid`.
    fn generic(&mut self, n: usize, forbid: &[Scalar]) -> Vec<Scalar> {
        self.generic_from(n, forbid, Points::rational)
    }

    fn generic_small(&mut self, n: usize, forbid: &[Scalar]) -> Vec<Scalar> {
        self.generic_from(n, forbid, Points::small)
    }

    fn generic_from(&mut self, n: usize, forbid: &[Scalar], draw: fn(&mut Points) -> Scalar) -> Vec<Scalar> {
        let one = Scalar::one();
        let mut bad = vec![Scalar::zero(), one.clone(), -one];
        bad.extend(forbid.iter().flat_map(|f| [f.clone(), -f.clone()]));
        let mut out: Vec<Scalar> = Vec::with_capacity(n);
        while out.len() < n {
            let v = draw(self);
            if out.iter().all(|u| !bad.contains(&(&v - u))) {
                out.push(v);
            }
        }
        out
    }

    /// Consecutive slices of one generic pool.
    fn split(&mut self, sizes: &[usize], forbid: &[Scalar]) -> Vec<Vec<Scalar>> {
        let mut pool = self.generic(sizes.iter().sum(), forbid).into_iter();
        sizes.iter().map(|&k| pool.by_ref().take(k).collect()).collect()
    }
}

#[derive(Default)]
struct Cases(Vec<CaseReport>);

impl Cases {
    fn push(&mut self, id: String, passed: bool, value: Option<String>, difference: Option<String>, detail: Option<String>) {
        self.0.push(CaseReport { id, passed, value, difference, detail });
    }

    fn error(&mut self, id: String, e: Error) {
        self.push(id, false, None, None, Some(e.to_string()));
    }

    /// Passes when both sides are equal as exact values.
    fn exact(&mut self, id: String, lhs: Result<Scalar>, rhs: Result<Scalar>) {
        match (lhs, rhs) {
            (Ok(a), Ok(b)) => {
                let ok = a.is_exact() && a == b;
                let diff = &a - &b;
                self.push(id, ok, Some(a.to_string()), (!ok).then(|| diff.to_string()), None);
            }
            (Err(e), _) | (_, Err(e)) => self.error(id, e),
        }
    }

    /// Passes when `|lhs − rhs| < 2^-bits`.
    fn close(&mut self, id: String, lhs: Result<Scalar>, rhs: Result<Scalar>, bits: u32) {
        match (lhs, rhs) {
            (Ok(a), Ok(b)) => {
                let diff = (&a - &b).abs();
                let ok = diff.abs_below_pow2(bits);
                self.push(id, ok, Some(a.to_string()), Some(diff.to_string()), None);
            }
            (Err(e), _) | (_, Err(e)) => self.error(id, e),
        }
    }

    fn check(&mut self, id: String, ok: bool, detail: String) {
        self.push(id, ok, None, None, Some(detail));
    }
}

fn ints(v: &[i64]) -> Vec<Scalar> {
    v.iter().map(|&i| Scalar::int(i)).collect()
}

fn fmt_list(v: &[Scalar]) -> String {
    let parts: Vec<String> = v.iter().map(|s| s.to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

fn fmt_colours(v: &[Colour]) -> String {
    v.iter().map(|c| c.to_string()).collect()
}

/// Every vector in `{lo..=hi}^n`, in lexicographic order.
fn colour_vectors(n: usize, lo: Colour, hi: Colour) -> Vec<Vec<Colour>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out.into_iter().flat_map(|v| (lo..=hi).map(move |c| [v.clone(), vec![c]].concat())).collect();
    }
    out
}

fn value(r: Result<PartitionValue>) -> Result<Scalar> {
    r.map(|p| p.value)
}

fn ybe(cases: &mut Cases, pts: &mut Points, cfg: &VerifyConfig) {
    for n in 1..=3u8 {
        let table = WeightTable::new(ModelParams::rational(n), Normalization::UnitA).unwrap();
        for k in 0..100 {
            let v = pts.generic(3, &[]);
            let id = format!("rational/n={n}/{k}");
            cases.exact(id, ybe_residual(&table, &v[0], &v[1], &v[2]), Ok(Scalar::zero()));
        }
    }
    for n in 1..=2u8 {
        for k in 0..20 {
            let gamma = pts.gamma();
            let table = match WeightTable::new(ModelParams::trig(gamma.clone(), n), Normalization::UnitA) {
                Ok(t) => t.with_precision(cfg.precision),
                Err(e) => return cases.error(format!("trig/n={n}/{k}"), e),
            };
            let v = pts.generic_small(3, &[gamma]);
            let id = format!("trig/n={n}/{k}");
            cases.close(id, ybe_residual(&table, &v[0], &v[1], &v[2]), Ok(Scalar::zero()), 200);
        }
    }
}

fn weight_identity(cases: &mut Cases, pts: &mut Points, cfg: &VerifyConfig) {
    let sides = |t: &WeightTable, x: &Scalar, y: &Scalar| -> Result<(Scalar, Scalar)> {
        let w = t.all(x, y)?;
        let a = &w[&VertexKind::A];
        Ok((a - &w[&VertexKind::BPlus] - w[&VertexKind::CPlus].clone(), a - &w[&VertexKind::BMinus] - w[&VertexKind::CMinus].clone()))
    };
    let rational = WeightTable::new(ModelParams::rational(1), Normalization::UnitA).unwrap();
    for k in 0..100 {
        let v = pts.generic(2, &[]);
        match sides(&rational, &v[0], &v[1]) {
            Ok((p, m)) => {
                cases.exact(format!("rational/{k}/plus"), Ok(p), Ok(Scalar::zero()));
                cases.exact(format!("rational/{k}/minus"), Ok(m), Ok(Scalar::zero()));
            }
            Err(e) => cases.error(format!("rational/{k}"), e),
        }
    }
    for k in 0..100 {
        let gamma = pts.gamma();
        let table = WeightTable::new(ModelParams::trig(gamma.clone(), 1), Normalization::UnitA).unwrap().with_precision(cfg.precision);
        let v = pts.generic_small(2, &[gamma]);
        match sides(&table, &v[0], &v[1]) {
            Ok((p, m)) => {
                cases.close(format!("trig/{k}/plus"), Ok(p), Ok(Scalar::zero()), 200);
                cases.close(format!("trig/{k}/minus"), Ok(m), Ok(Scalar::zero()), 200);
            }
            Err(e) => cases.error(format!("trig/{k}"), e),
        }
    }
}

fn dwpf_determinant(cases: &mut Cases, pts: &mut Points, cfg: &VerifyConfig) {
    let (two, three) = (ints(&[2, 3]), ints(&[0, 1]));
    cases.exact("instance/enumeration".into(), value(dwpf(&two, &three, Normalization::UnitA, Method::Enumeration)), Ok(Scalar::ratio(1, 6)));
    cases.exact("instance/determinant".into(), value(dwpf_ik(&two, &three)), Ok(Scalar::ratio(1, 6)));
    for n in 1..=4 {
        for k in 0..10 {
            let v = pts.split(&[n, n], &[]);
            let id = format!("rational/N={n}/{k}");
            cases.exact(id, value(dwpf_ik(&v[0], &v[1])), value(dwpf(&v[0], &v[1], Normalization::UnitA, Method::Enumeration)));
        }
    }
    for n in 1..=3 {
        for k in 0..10 {
            let gamma = pts.gamma();
            let mut pool = pts.generic_small(2 * n, std::slice::from_ref(&gamma));
            let v = [pool.split_off(n), pool];
            let id = format!("trig/N={n}/{k}");
            let det = value(dwpf_ik_trig(&v[0], &v[1], &gamma, cfg.precision));
            let lattice = value(dwpf_trig(&v[0], &v[1], &gamma, cfg.precision, Method::Enumeration));
            cases.close(id, det, lattice, 200);
        }
    }
}

fn dwpf_properties(cases: &mut Cases, pts: &mut Points, cfg: &VerifyConfig) {
    let z = |xs: &[Scalar], ys: &[Scalar]| value(dwpf(xs, ys, Normalization::UnitA, cfg.method));
    let table = WeightTable::new(ModelParams::rational(1), Normalization::UnitA).unwrap();
    for n in 1..=4usize {
        for k in 0..3 {
            let v = pts.split(&[n, n, n + 2], &[]);
            let (xs, ys, ts) = (&v[0], &v[1], &v[2]);
            let tag = format!("N={n}/{k}");

            // A: Z · Π_j (x_N − y_j + 1) is a polynomial in x_N of degree ≤ N − 1.
            let samples: Result<Vec<(Scalar, Scalar)>> = ts
                .iter()
                .map(|t| {
                    let mut x = xs.clone();
                    x[n - 1] = t.clone();
                    let cleared: Scalar = ys.iter().map(|y| t - y + Scalar::one()).product();
                    Ok((t.clone(), z(&x, ys)? * cleared))
                })
                .collect();
            match samples.and_then(|s| interpolate(&s)) {
                Ok(p) => {
                    let deg = p.degree();
                    cases.check(format!("A/{tag}"), deg.is_none_or(|d| d < n), format!("degree {deg:?}"));
                }
                Err(e) => cases.error(format!("A/{tag}"), e),
            }

            // B: symmetric in the y.
            for i in 0..n {
                for j in i + 1..n {
                    let mut swapped = ys.clone();
                    swapped.swap(i, j);
                    cases.exact(format!("B/{tag}/swap{i}{j}"), z(xs, &swapped), z(xs, ys));
                }
            }

            // C: x_N = y_N peels off the last row and column.
            if n >= 2 {
                let mut x = xs.clone();
                x[n - 1] = ys[n - 1].clone();
                cases.exact(format!("C/{tag}"), z(&x, ys), z(&xs[..n - 1], &ys[..n - 1]));
            }

            // D: the 1×1 lattice is a single c− vertex.
            if n == 1 {
                cases.exact(format!("D/{tag}"), z(xs, ys), table.weight(VertexKind::CMinus, &xs[0], &ys[0]));
            }
        }
    }
}

fn lemma1(cases: &mut Cases, pts: &mut Points, cfg: &VerifyConfig) {
    let model = ModelParams::rational(cfg.rank);
    for set in 0..3 {
        let v = pts.split(&[cfg.max_size, cfg.max_size], &[]);
        for rows in 1..=cfg.max_size {
            for cols in 1..=cfg.max_size {
                for left in colour_vectors(rows, 0, cfg.rank) {
                    for bottom in colour_vectors(cols, 0, cfg.rank) {
                        let id = format!("{rows}x{cols}/set{set}/left={}/bottom={}", fmt_colours(&left), fmt_colours(&bottom));
                        let got = trivial_pf(&v[0][..rows], &v[1][..cols], &left, &bottom, model.clone(), Normalization::UnitA, cfg.method);
                        cases.exact(id, value(got), Ok(Scalar::one()));
                    }
                }
            }
        }
    }
}

fn lemma2(cases: &mut Cases, pts: &mut Points, cfg: &VerifyConfig) {
    for set in 0..5 {
        for n in 1..=3 {
            let v = pts.split(&[n, n], &[]);
            let plain = value(dwpf(&v[0], &v[1], Normalization::UnitA, cfg.method));
            for colours in colour_vectors(n, 1, 2) {
                let id = format!("N={n}/set{set}/colours={}", fmt_colours(&colours));
                cases.exact(id, value(coloured_dwpf(&v[0], &v[1], &colours, 2, cfg.method)), plain.clone());
            }
        }
    }
}

fn lemma3(cases: &mut Cases, pts: &mut Points, cfg: &VerifyConfig) {
    for set in 0..5 {
        for n in 1..=2 {
            for l in n..=4 {
                for m in 0..=n {
                    let v = pts.split(&[n, m, l], &[]);
                    let spec = ScalarProductSpec::new(v[0].clone(), v[1].clone(), v[2].clone(), Normalization::UnitA);
                    let plain = value(scalar_product(&spec, cfg.method));
                    for colours in colour_vectors(n, 1, 2) {
                        let id = format!("N={n}/L={l}/m={m}/set{set}/colours={}", fmt_colours(&colours));
                        let coloured = ScalarProductSpec { colours: Some(colours), ..spec.clone() };
                        cases.exact(id, value(coloured_scalar_product(&coloured, 2, cfg.method)), plain.clone());
                    }
                }
            }
        }
    }
}

/// Roots of the first solution returned for `problem`.
fn first_roots(problem: &BetheProblem, config: &SearchConfig, want_inexact: bool) -> Result<Vec<Scalar>> {
    match solve(problem, config)? {
        BetheOutcome::Solved { solutions, .. } => solutions
            .into_iter()
            .find(|s| !want_inexact || !s.exact)
            .map(|s| s.roots[0].clone())
            .ok_or(Error::NoFiniteSolution),
        BetheOutcome::NoFiniteSolution => Err(Error::NoFiniteSolution),
    }
}

fn slavnov_on_shell(cases: &mut Cases, cfg: &VerifyConfig) {
    let search = SearchConfig { precision: cfg.precision, ..SearchConfig::default() };
    let ys = ints(&[0, 2]);
    let xs = ints(&[3]);
    match first_roots(&BetheProblem::a1(ys.clone(), 1), &search, false) {
        Ok(bs) => {
            cases.exact("N=1/root".into(), Ok(bs[0].clone()), Ok(Scalar::ratio(1, 2)));
            let spec = ScalarProductSpec::new(xs.clone(), bs.clone(), ys.clone(), Normalization::UnitA);
            let lattice = value(scalar_product(&spec, Method::Enumeration));
            cases.exact("N=1/slavnov".into(), value(slavnov(&xs, &bs, &ys)), Ok(Scalar::ratio(-1, 4)));
            cases.exact("N=1/enumeration".into(), lattice, Ok(Scalar::ratio(-1, 4)));
        }
        Err(e) => cases.error("N=1/root".into(), e),
    }

    // Two roots over four sites: the solver finds irrational pairs.
    let ys = ints(&[0, 2, 5, 9]);
    let xs = vec![Scalar::ratio(5, 2), Scalar::ratio(-7, 3)];
    let search = SearchConfig { seed: 7, ..search };
    match first_roots(&BetheProblem::a1(ys.clone(), 2), &search, true) {
        Ok(bs) => {
            let id = format!("N=2/b={}", fmt_list(&bs));
            let spec = ScalarProductSpec::new(xs.clone(), bs.clone(), ys.clone(), Normalization::UnitA);
            let lattice = value(scalar_product(&spec, Method::Enumeration));
            cases.close(id, value(slavnov(&xs, &bs, &ys)), lattice, 150);
        }
        Err(e) => cases.error("N=2".into(), e),
    }
}

fn appendix(cases: &mut Cases, pts: &mut Points, cfg: &VerifyConfig) {
    let (x, y) = (ints(&[3]), ints(&[0, 1]));
    cases.exact("pdwpf/instance/enumeration".into(), value(pdwpf(&x, &y, Method::Enumeration)), Ok(Scalar::one()));
    cases.exact("pdwpf/instance/determinant".into(), value(pdwpf_det(&x, &y)), Ok(Scalar::one()));
    for n in 1..=3 {
        for l in n..=5 {
            for k in 0..10 {
                let v = pts.split(&[n, l], &[]);
                let id = format!("pdwpf/N={n}/L={l}/{k}");
                cases.exact(id, value(pdwpf_det(&v[0], &v[1])), value(pdwpf(&v[0], &v[1], cfg.method)));
            }
        }
    }
    let (x, b, y) = (ints(&[3]), ints(&[4]), ints(&[0, 2]));
    let spec = ScalarProductSpec::new(x.clone(), b.clone(), y.clone(), Normalization::UnitB);
    cases.exact("ik-sum/instance/enumeration".into(), value(scalar_product(&spec, Method::Enumeration)), Ok(Scalar::ratio(19, 24)));
    cases.exact("ik-sum/instance/sum".into(), value(ik_sum(&x, &b, &y, cfg.method)), Ok(Scalar::ratio(19, 24)));
    for n in 1..=2 {
        for l in n..=3 {
            for k in 0..10 {
                let v = pts.split(&[n, n, l], &[]);
                let spec = ScalarProductSpec::new(v[0].clone(), v[1].clone(), v[2].clone(), Normalization::UnitB);
                let id = format!("ik-sum/N={n}/L={l}/{k}");
                cases.exact(id, value(ik_sum(&v[0], &v[1], &v[2], cfg.method)), value(scalar_product(&spec, cfg.method)));
            }
        }
    }
}

fn a2_degenerations(cases: &mut Cases, pts: &mut Points, cfg: &VerifyConfig) {
    for l in 0..=1 {
        for m in 0..=1 {
            for big_l in 0..=2 {
                for big_m in 0..=1 {
                    if l + m > big_l + big_m {
                        continue;
                    }
                    for k in 0..5 {
                        let v = pts.split(&[m, l, l, m, big_l, big_m], &[]);
                        let spec = A2Spec {
                            x2s: v[0].clone(),
                            x1s: v[1].clone(),
                            b1s: v[2].clone(),
                            b2s: v[3].clone(),
                            ys: v[4].clone(),
                            zs: v[5].clone(),
                        };
                        let tag = format!("l={l}/m={m}/L={big_l}/M={big_m}/{k}");
                        let a = a2_scalar_product(&spec, Layout::Fig1a, cfg.method);
                        let b = a2_scalar_product(&spec, Layout::Fig1b, cfg.method);
                        cases.exact(format!("layouts/{tag}"), a, b);
                        for (name, d, count) in [
                            ("b2", degenerate_b2(&spec, cfg.method), m),
                            ("b1", degenerate_b1(&spec, cfg.method), l),
                        ] {
                            match d {
                                Ok(d) => {
                                    cases.exact(format!("{name}/{tag}"), Ok(d.signed_sum.clone()), Ok(d.sequential_limit.clone()));
                                    if count == 0 {
                                        let unchanged = a2_scalar_product(&spec, Layout::Fig1a, cfg.method);
                                        cases.exact(format!("{name}/{tag}/empty"), Ok(d.signed_sum), unchanged);
                                    }
                                }
                                Err(e) => cases.error(format!("{name}/{tag}"), e),
                            }
                        }
                    }
                }
            }
        }
    }
}

fn factorizations(cases: &mut Cases, cfg: &VerifyConfig) {
    let first = A2Spec {
        x2s: ints(&[4]),
        x1s: ints(&[3]),
        b1s: vec![Scalar::ratio(1, 2)],
        b2s: vec![],
        ys: ints(&[0, 2]),
        zs: ints(&[7]),
    };
    let on_shell = BetheProblem::a1(first.ys.clone(), 1).residual(std::slice::from_ref(&first.b1s)).map(|r| r[0].clone());
    cases.exact("fact1/on-shell".into(), on_shell, Ok(Scalar::zero()));
    match degenerate_b2(&first, Method::Enumeration) {
        Ok(d) => {
            cases.exact("fact1/signed-sum".into(), Ok(d.signed_sum.clone()), Ok(Scalar::ratio(-4, 9)));
            cases.exact("fact1/limit".into(), Ok(d.sequential_limit), Ok(Scalar::ratio(-4, 9)));
            cases.exact("fact1/formula".into(), fact1(&first), Ok(d.signed_sum));
        }
        Err(e) => cases.error("fact1".into(), e),
    }
    let p1 = partial_limit(PartialForm::Partial1, &first.x2s, &first.x1s, &first.zs, cfg.method);
    cases.exact("partial1".into(), p1, partial_det(PartialForm::Partial1, &first.x2s, &first.x1s, &first.zs));

    let second = A2Spec {
        x2s: ints(&[5]),
        x1s: ints(&[3]),
        b1s: vec![],
        b2s: ints(&[4]),
        ys: ints(&[0, 1]),
        zs: ints(&[0, 7]),
    };
    let on_shell = BetheProblem::a1_anti(second.zs.clone(), 1).residual(std::slice::from_ref(&second.b2s)).map(|r| r[0].clone());
    cases.exact("fact2/on-shell".into(), on_shell, Ok(Scalar::zero()));
    match degenerate_b1(&second, Method::Enumeration) {
        Ok(d) => {
            cases.exact("fact2/limit".into(), Ok(d.sequential_limit), Ok(d.signed_sum.clone()));
            cases.exact("fact2/formula".into(), fact2(&second), Ok(d.signed_sum));
        }
        Err(e) => cases.error("fact2".into(), e),
    }
    let p2 = partial_limit(PartialForm::Partial2, &second.x1s, &second.ys, &second.x2s, cfg.method);
    cases.exact("partial2".into(), p2, partial_det(PartialForm::Partial2, &second.x1s, &second.ys, &second.x2s));
}

fn lemmas_5_7(cases: &mut Cases, pts: &mut Points, cfg: &VerifyConfig) {
    let fixed = vec![ints(&[3]), vec![Scalar::ratio(1, 2)], ints(&[4]), vec![Scalar::ratio(11, 3)], ints(&[0, 2]), ints(&[7])];
    let mut sets = vec![fixed];
    for _ in 0..5 {
        sets.push(pts.split(&[1, 1, 1, 1, 2, 1], &[]));
    }
    let method = cfg.method;
    let sign = |neg: usize| Scalar::int(if neg % 2 == 1 { -1 } else { 1 });
    for (s, v) in sets.iter().enumerate() {
        let (x1, b1, x2, b2, ys, zs) = (&v[0], &v[1], &v[2], &v[3], &v[4], &v[5]);
        let (l, m) = (x1.len(), x2.len());

        let a1 = fundamental_scalar_product(x1, b1, ys, Method::Enumeration);
        for i in colour_vectors(l, 1, 2) {
            for j in colour_vectors(zs.len(), 1, 2) {
                let flips = j.iter().filter(|&&c| c == 1).count();
                if i.iter().filter(|&&c| c == 2).count() + flips != m {
                    continue;
                }
                let id = format!("lemma5/set{s}/i={}/j={}", fmt_colours(&i), fmt_colours(&j));
                let lhs = lemma5_lattice(x1, b1, ys, zs, &i, &j).and_then(|lat| evaluate(&lat, method)).map(|p| p.value);
                cases.exact(id, lhs, a1.clone().map(|a| a * sign(flips)));
            }
        }

        let anti = evaluate(&antifundamental_lattice(x2, b2, zs), Method::Enumeration).map(|p| p.value);
        for i in colour_vectors(m, 0, 1) {
            for j in colour_vectors(ys.len(), 0, 1) {
                let flips = i.iter().filter(|&&c| c == 0).count();
                if flips + j.iter().filter(|&&c| c == 1).count() != l {
                    continue;
                }
                let id = format!("lemma7/set{s}/i={}/j={}", fmt_colours(&i), fmt_colours(&j));
                let lhs = lemma7_lattice(x2, b2, ys, zs, &i, &j).and_then(|lat| evaluate(&lat, method)).map(|p| p.value);
                cases.exact(id, lhs, anti.clone().map(|a| a * sign(flips)));
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suites_resolve_by_name_and_number() {
        assert_eq!(find_suite("lemma1").unwrap().1, 5);
        assert_eq!(find_suite("12").unwrap().0, "lemma5-7");
        assert!(find_suite("nope").is_none());
        assert!(run_suite("nope", &VerifyConfig::default()).is_err());
    }

    #[test]
    fn generic_points_avoid_unit_differences() {
        let mut p = Points::new(3);
        let v = p.generic(12, &[]);
        for a in &v {
            for b in &v {
                let d = a - b;
                assert!(d.is_zero() && std::ptr::eq(a, b) || (d != Scalar::one() && d != -Scalar::one() && !d.is_zero()));
            }
        }
    }

    #[test]
    fn colour_vectors_enumerate_the_cube() {
        let v = colour_vectors(2, 0, 2);
        assert_eq!(v.len(), 9);
        assert_eq!(v[0], vec![0, 0]);
        assert_eq!(v[8], vec![2, 2]);
        assert_eq!(colour_vectors(0, 1, 2), vec![Vec::<Colour>::new()]);
    }

    #[test]
    fn small_lemma1_run() {
        let cfg = VerifyConfig { max_size: 2, rank: 1, method: Method::Dp, ..VerifyConfig::default() };
        let r = run_suite("lemma1", &cfg).unwrap();
        assert!(r.passed);
        assert_eq!(r.cases.len(), 3 * (2 + 4) * (2 + 4));
        assert!(r.cases.iter().all(|c| c.value.as_deref() == Some("1/1")));
    }

    #[test]
    fn reports_are_deterministic() {
        let cfg = VerifyConfig { seed: 11, ..VerifyConfig::default() };
        assert_eq!(run_suite("lemma2", &cfg).unwrap(), run_suite("lemma2", &cfg).unwrap());
    }
}
