//! Bethe equations in cleared-denominator form and a root finder.
//!
//! Each equation is written as `P − Q` with `P`, `Q` products of linear
//! forms, so residuals are finite everywhere and vanish exactly at rational
//! roots. Single-root problems are solved exactly as univariate polynomials;
//! coupled systems use damped Newton with random restarts and deflation.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{real_roots, solve as linsolve, Polynomial, Scalar, DEFAULT_PRECISION};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Variant {
    A1Fundamental,
    A1Antifundamental,
    A2Nested,
}

/// One Bethe system. `counts` is `[N]` for the A₁ variants (roots attached
/// to `ys` or `zs`) and `[ℓ, m]` for the nested system.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BetheProblem {
    pub variant: Variant,
    #[serde(default)]
    pub ys: Vec<Scalar>,
    #[serde(default)]
    pub zs: Vec<Scalar>,
    pub counts: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub seed: u64,
    pub restarts: usize,
    pub max_iterations: usize,
    pub precision: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { seed: 0, restarts: 64, max_iterations: 200, precision: DEFAULT_PRECISION }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BetheSolution {
    /// Roots per family: `[b]` for A₁, `[b⁽¹⁾, b⁽²⁾]` for the nested system.
    pub roots: Vec<Vec<Scalar>>,
    pub residuals: Vec<Scalar>,
    pub exact: bool,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    pub attempts: usize,
    pub converged: usize,
    pub rejected: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum BetheOutcome {
    /// `complete` is true when every admissible real root is listed.
    Solved { solutions: Vec<BetheSolution>, complete: bool, stats: SearchStats },
    NoFiniteSolution,
}

/// `v_i − v_j + c`, or `v_i + c` without `j`.
#[derive(Clone, Debug)]
struct Linear {
    i: usize,
    j: Option<usize>,
    c: Scalar,
}

impl Linear {
    fn eval(&self, v: &[Scalar]) -> Scalar {
        let mut out = &v[self.i] + &self.c;
        if let Some(j) = self.j {
            out -= &v[j];
        }
        out
    }

    fn grad(&self, k: usize) -> i32 {
        (self.i == k) as i32 - (self.j == Some(k)) as i32
    }
}

struct Equation {
    p: Vec<Linear>,
    q: Vec<Linear>,
}

fn product(fs: &[Linear], v: &[Scalar]) -> Scalar {
    fs.iter().fold(Scalar::one(), |acc, f| acc * f.eval(v))
}

fn product_grad(fs: &[Linear], v: &[Scalar], k: usize) -> Scalar {
    let vals: Vec<Scalar> = fs.iter().map(|f| f.eval(v)).collect();
    let mut total = Scalar::zero();
    for (a, f) in fs.iter().enumerate() {
        let g = f.grad(k);
        if g == 0 {
            continue;
        }
        let rest = vals.iter().enumerate().filter(|(b, _)| *b != a).fold(Scalar::int(g as i64), |acc, (_, x)| acc * x);
        total += rest;
    }
    total
}

impl Equation {
    fn eval(&self, v: &[Scalar]) -> Scalar {
        product(&self.p, v) - product(&self.q, v)
    }

    fn grad(&self, v: &[Scalar], k: usize) -> Scalar {
        product_grad(&self.p, v, k) - product_grad(&self.q, v, k)
    }
}

fn lin(i: usize, j: Option<usize>, c: i64) -> Linear {
    Linear { i, j, c: Scalar::int(c) }
}

fn shifted(i: usize, w: &Scalar, c: i64) -> Linear {
    Linear { i, j: None, c: Scalar::int(c) - w }
}

impl BetheProblem {
    pub fn a1(ys: Vec<Scalar>, n: usize) -> Self {
        BetheProblem { variant: Variant::A1Fundamental, ys, zs: vec![], counts: vec![n] }
    }

    pub fn a1_anti(zs: Vec<Scalar>, m: usize) -> Self {
        BetheProblem { variant: Variant::A1Antifundamental, ys: vec![], zs, counts: vec![m] }
    }

    pub fn nested(ys: Vec<Scalar>, zs: Vec<Scalar>, l: usize, m: usize) -> Self {
        BetheProblem { variant: Variant::A2Nested, ys, zs, counts: vec![l, m] }
    }

    pub fn validate(&self) -> Result<()> {
        match (self.variant, self.counts.len()) {
            (Variant::A1Fundamental | Variant::A1Antifundamental, 1) => Ok(()),
            (Variant::A2Nested, 2) => {
                if self.counts[0] + self.counts[1] > self.ys.len() + self.zs.len() {
                    return Err(Error::Invalid("need l + m <= L + M".into()));
                }
                Ok(())
            }
            _ => Err(Error::Invalid("A1 variants take one count, the nested system two".into())),
        }
    }

    /// Sizes of the fundamental and anti-fundamental families.
    fn families(&self) -> (usize, usize) {
        match self.variant {
            Variant::A1Fundamental => (self.counts[0], 0),
            Variant::A1Antifundamental => (0, self.counts[0]),
            Variant::A2Nested => (self.counts[0], self.counts[1]),
        }
    }

    fn split(&self, v: &[Scalar]) -> Vec<Vec<Scalar>> {
        let (l, _) = self.families();
        match self.variant {
            Variant::A1Fundamental | Variant::A1Antifundamental => vec![v.to_vec()],
            Variant::A2Nested => vec![v[..l].to_vec(), v[l..].to_vec()],
        }
    }

    fn flatten(&self, roots: &[Vec<Scalar>]) -> Result<Vec<Scalar>> {
        let (l, m) = self.families();
        let flat: Vec<Scalar> = roots.iter().flatten().cloned().collect();
        let expected = match self.variant {
            Variant::A2Nested => roots.len() == 2 && roots[0].len() == l && roots[1].len() == m,
            _ => roots.len() == 1 && flat.len() == l + m,
        };
        if !expected {
            return Err(Error::Invalid(format!("roots do not match counts {:?}", self.counts)));
        }
        Ok(flat)
    }

    /// Equations over the variables `[b⁽¹⁾..., b⁽²⁾...]`.
    fn equations(&self) -> Vec<Equation> {
        let (l, m) = self.families();
        let mut eqs = Vec::with_capacity(l + m);
        for i in 0..l {
            let mut p: Vec<Linear> = (0..l).filter(|&j| j != i).map(|j| lin(i, Some(j), -1)).collect();
            let mut q: Vec<Linear> = (0..l).filter(|&j| j != i).map(|j| lin(i, Some(j), 1)).collect();
            p.extend(self.ys.iter().map(|y| shifted(i, y, 1)));
            q.extend(self.ys.iter().map(|y| shifted(i, y, 0)));
            p.extend((0..m).map(|k| lin(i, Some(l + k), 0)));
            q.extend((0..m).map(|k| lin(i, Some(l + k), -1)));
            eqs.push(Equation { p, q });
        }
        for i in l..l + m {
            let mut p: Vec<Linear> = (l..l + m).filter(|&j| j != i).map(|j| lin(i, Some(j), -1)).collect();
            let mut q: Vec<Linear> = (l..l + m).filter(|&j| j != i).map(|j| lin(i, Some(j), 1)).collect();
            p.extend(self.zs.iter().map(|z| shifted(i, z, 0)));
            q.extend(self.zs.iter().map(|z| shifted(i, z, -1)));
            p.extend((0..l).map(|k| lin(i, Some(k), 1)));
            q.extend((0..l).map(|k| lin(i, Some(k), 0)));
            eqs.push(Equation { p, q });
        }
        eqs
    }

    /// Why `v` is not an admissible solution, if it is not: a pole of the
    /// uncleared equations or a collision with an inhomogeneity or another
    /// root.
    fn inadmissible(&self, v: &[Scalar]) -> Option<String> {
        let (l, m) = self.families();
        let one = Scalar::one();
        for a in 0..l + m {
            for b in a + 1..l + m {
                let d = &v[a] - &v[b];
                let same_family = (a < l) == (b < l);
                if vanishes(&d) {
                    return Some(format!("roots {a} and {b} coincide"));
                }
                if same_family && (vanishes(&(&d - &one)) || vanishes(&(&d + &one))) {
                    return Some(format!("roots {a} and {b} differ by 1"));
                }
            }
        }
        for (k, b) in v.iter().enumerate() {
            if k < l {
                if self.ys.iter().any(|y| vanishes(&(b - y))) {
                    return Some(format!("root {b} meets a y rapidity"));
                }
                if v[l..].iter().any(|b2| vanishes(&(b - b2 - one.clone()))) {
                    return Some(format!("root {b} is a pole of its equation"));
                }
            } else if self.zs.iter().any(|z| vanishes(&(b - z)) || vanishes(&(b - z - one.clone()))) {
                return Some(format!("root {b} meets a z rapidity"));
            }
        }
        None
    }

    pub fn residual(&self, roots: &[Vec<Scalar>]) -> Result<Vec<Scalar>> {
        self.validate()?;
        let v = self.flatten(roots)?;
        for family in roots {
            for i in 0..family.len() {
                for j in i + 1..family.len() {
                    if family[i] == family[j] {
                        return Err(Error::Coincident(format!("repeated root {}", family[i])));
                    }
                }
            }
        }
        Ok(self.equations().iter().map(|e| e.eval(&v)).collect())
    }

    fn solution(&self, v: Vec<Scalar>) -> BetheSolution {
        let residuals = self.equations().iter().map(|e| e.eval(&v)).collect();
        let exact = v.iter().all(Scalar::is_exact);
        let mut roots = self.split(&v);
        for r in &mut roots {
            r.sort_by(|a, b| a.partial_cmp(b).unwrap());
        }
        BetheSolution { roots, residuals, exact }
    }
}

/// The cleared equation of a single-root problem as an exact polynomial.
fn univariate(eq: &Equation) -> Polynomial {
    let side = |fs: &[Linear]| {
        fs.iter().fold(Polynomial::constant(Scalar::one()), |acc, f| acc.mul(&Polynomial::linear_root(&-&f.c)))
    };
    side(&eq.p).sub(&side(&eq.q))
}

pub fn solve(problem: &BetheProblem, config: &SearchConfig) -> Result<BetheOutcome> {
    problem.validate()?;
    let (l, m) = problem.families();
    if l + m == 0 {
        let stats = SearchStats::default();
        let sol = problem.solution(vec![]);
        return Ok(BetheOutcome::Solved { solutions: vec![sol], complete: true, stats });
    }
    if problem.ys.iter().chain(&problem.zs).any(|w| !w.is_exact()) {
        return Err(Error::Inexact);
    }
    if l + m == 1 {
        return solve_single(problem, config);
    }
    solve_newton(problem, config)
}

fn solve_single(problem: &BetheProblem, config: &SearchConfig) -> Result<BetheOutcome> {
    let eqs = problem.equations();
    let poly = univariate(&eqs[0]);
    if poly.is_zero() {
        return Err(Error::Invalid("cleared equation vanishes identically".into()));
    }
    let mut stats = SearchStats::default();
    let mut solutions = Vec::new();
    for r in real_roots(&poly, config.precision)? {
        stats.attempts += 1;
        stats.converged += 1;
        let v = vec![r];
        if problem.inadmissible(&v).is_some() {
            stats.rejected += 1;
            continue;
        }
        solutions.push(problem.solution(v));
    }
    if solutions.is_empty() {
        return Ok(BetheOutcome::NoFiniteSolution);
    }
    Ok(BetheOutcome::Solved { solutions, complete: true, stats })
}

/// Best rational approximation with denominator below `2^20`, if `x` is
/// that rational to double precision.
fn rational_guess(x: &Scalar) -> Option<Scalar> {
    let f = x.to_f64();
    if !f.is_finite() || f.abs() > 1e12 {
        return None;
    }
    let (mut h0, mut h1, mut k0, mut k1) = (0i64, 1i64, 1i64, 0i64);
    let mut r = f;
    for _ in 0..40 {
        let a = r.floor();
        let (h2, k2) = ((a as i64).checked_mul(h1)?.checked_add(h0)?, (a as i64).checked_mul(k1)?.checked_add(k0)?);
        if k2 > 1 << 20 {
            return None;
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        if ((h1 as f64) / (k1 as f64) - f).abs() < 1e-12 * f.abs().max(1.0) {
            return Some(Scalar::ratio(h1, k1));
        }
        let frac = r - a;
        if frac.abs() < 1e-15 {
            return None;
        }
        r = 1.0 / frac;
    }
    None
}

/// Exact zero, or a float zero to half its precision.
fn vanishes(d: &Scalar) -> bool {
    d.is_zero() || d.precision().is_some_and(|p| d.abs_below_pow2((p / 2) as u32))
}

fn sq_norm(v: &[Scalar]) -> Scalar {
    v.iter().map(|x| x * x).sum()
}

/// Deflation factor `Π_r (1/|v − r|² + 1)` and its gradient.
fn deflation(v: &[Scalar], found: &[Vec<Scalar>]) -> (Scalar, Vec<Scalar>) {
    let n = v.len();
    let mut m = Scalar::one();
    let mut log_grad = vec![Scalar::zero(); n];
    for r in found {
        let diff: Vec<Scalar> = v.iter().zip(r).map(|(a, b)| a - b).collect();
        let d = sq_norm(&diff);
        let Some(inv) = d.recip() else { continue };
        let factor = &inv + &Scalar::one();
        for k in 0..n {
            // d/dv_k log(1/d + 1) = −2 (v_k − r_k) / (d² (1/d + 1)).
            log_grad[k] -= &diff[k] * &Scalar::int(2) * &inv * &inv / &factor;
        }
        m *= factor;
    }
    let grad = log_grad.into_iter().map(|g| g * &m).collect();
    (m, grad)
}

fn newton(problem: &BetheProblem, eqs: &[Equation], start: Vec<Scalar>, found: &[Vec<Scalar>], config: &SearchConfig) -> Option<Vec<Scalar>> {
    let n = start.len();
    let tol = Scalar::pow2(-(config.precision as i64 - 48));
    let mut v = start;
    let g_at = |v: &[Scalar]| -> Vec<Scalar> {
        let (m, _) = deflation(v, found);
        eqs.iter().map(|e| e.eval(v) * &m).collect()
    };
    let mut g = g_at(&v);
    for _ in 0..config.max_iterations {
        let f: Vec<Scalar> = eqs.iter().map(|e| e.eval(&v)).collect();
        let (m, mg) = deflation(&v, found);
        let jac: Vec<Vec<Scalar>> = (0..n)
            .map(|i| (0..n).map(|k| &eqs[i].grad(&v, k) * &m + &f[i] * &mg[k]).collect())
            .collect();
        let rhs: Vec<Scalar> = g.iter().map(|x| -x).collect();
        let step = linsolve(&jac, &rhs).ok()??;
        let norm0 = sq_norm(&g);
        let mut lambda = Scalar::one();
        let mut accepted = None;
        for _ in 0..40 {
            let cand: Vec<Scalar> = v.iter().zip(&step).map(|(a, s)| a + &(s * &lambda)).collect();
            let gc = g_at(&cand);
            if sq_norm(&gc) < norm0 {
                accepted = Some((cand, gc));
                break;
            }
            lambda *= Scalar::ratio(1, 2);
        }
        let (cand, gc) = accepted?;
        let moved = sq_norm(&step) * &lambda * &lambda;
        let scale = sq_norm(&cand) + Scalar::one();
        v = cand;
        g = gc;
        if moved < &tol * &tol * scale {
            break;
        }
    }
    let residual_ok = eqs.iter().all(|e| e.eval(&v).abs_below_pow2(config.precision as u32 - 80));
    (residual_ok && problem.inadmissible(&v).is_none()).then_some(v)
}

fn same_root(a: &[Scalar], b: &[Scalar]) -> bool {
    a.iter().zip(b).all(|(x, y)| (x - y).abs_below_pow2(64))
}

fn solve_newton(problem: &BetheProblem, config: &SearchConfig) -> Result<BetheOutcome> {
    let (l, m) = problem.families();
    let n = l + m;
    let eqs = problem.equations();
    let spread = problem.ys.iter().chain(&problem.zs).map(|w| w.to_f64().abs()).fold(1.0f64, f64::max);
    let radius = 2.0 * spread + n as f64 + 2.0;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut stats = SearchStats::default();
    let mut found: Vec<Vec<Scalar>> = Vec::new();
    let canonical = |v: &[Scalar]| -> Vec<Scalar> {
        let mut a = v[..l].to_vec();
        let mut b = v[l..].to_vec();
        a.sort_by(|x, y| x.partial_cmp(y).unwrap());
        b.sort_by(|x, y| x.partial_cmp(y).unwrap());
        a.extend(b);
        a
    };
    for _ in 0..config.restarts {
        stats.attempts += 1;
        let start: Vec<Scalar> =
            (0..n).map(|_| Scalar::from_f64(rng.gen_range(-radius..radius), config.precision)).collect();
        // Deflate every ordering of the roots already found.
        let deflate: Vec<Vec<Scalar>> = found.iter().flat_map(|r| orderings(r, l)).collect();
        let Some(v) = newton(problem, &eqs, start, &deflate, config) else { continue };
        stats.converged += 1;
        let v = canonical(&v);
        if found.iter().any(|r| same_root(r, &v)) {
            stats.rejected += 1;
            continue;
        }
        found.push(v);
    }
    if found.is_empty() {
        return Err(Error::SearchExhausted { attempts: stats.attempts, converged: stats.converged, rejected: stats.rejected });
    }
    let solutions = found
        .into_iter()
        .map(|v| {
            let exact: Option<Vec<Scalar>> = v.iter().map(rational_guess).collect();
            match exact {
                Some(e) if problem.inadmissible(&e).is_none() && eqs.iter().all(|q| q.eval(&e).is_zero()) => {
                    problem.solution(e)
                }
                _ => problem.solution(v),
            }
        })
        .collect();
    Ok(BetheOutcome::Solved { solutions, complete: false, stats })
}

/// Every permutation of each family separately.
fn orderings(v: &[Scalar], l: usize) -> Vec<Vec<Scalar>> {
    let a = permutations(&v[..l]);
    let b = permutations(&v[l..]);
    let mut out = Vec::with_capacity(a.len() * b.len());
    for x in &a {
        for y in &b {
            let mut w = x.clone();
            w.extend(y.iter().cloned());
            out.push(w);
        }
    }
    out
}

fn permutations(v: &[Scalar]) -> Vec<Vec<Scalar>> {
    if v.len() <= 1 {
        return vec![v.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..v.len() {
        let mut rest = v.to_vec();
        let head = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, head.clone());
            out.push(p);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|&i| Scalar::int(i)).collect()
    }

    fn roots(o: &BetheOutcome) -> Vec<Vec<Vec<Scalar>>> {
        match o {
            BetheOutcome::Solved { solutions, .. } => solutions.iter().map(|s| s.roots.clone()).collect(),
            BetheOutcome::NoFiniteSolution => vec![],
        }
    }

    #[test]
    fn residual_examples() {
        let p = BetheProblem::a1(s(&[0, 2]), 1);
        assert_eq!(p.residual(&[vec![Scalar::ratio(1, 2)]]).unwrap(), vec![Scalar::zero()]);
        assert_eq!(p.residual(&[s(&[0])]).unwrap(), vec![Scalar::int(-1)]);
        assert!(p.residual(&[s(&[0, 1])]).is_err());
    }

    #[test]
    fn single_root_cases() {
        let cfg = SearchConfig::default();
        let o = solve(&BetheProblem::a1(s(&[0, 2]), 1), &cfg).unwrap();
        assert_eq!(roots(&o), vec![vec![vec![Scalar::ratio(1, 2)]]]);
        assert_eq!(solve(&BetheProblem::a1(s(&[0, 1]), 1), &cfg).unwrap(), BetheOutcome::NoFiniteSolution);
        assert_eq!(solve(&BetheProblem::a1_anti(s(&[3]), 1), &cfg).unwrap(), BetheOutcome::NoFiniteSolution);
    }

    #[test]
    fn cubic_single_root_case() {
        let p = BetheProblem::a1(s(&[0, 1, 2, 5]), 1);
        let o = solve(&p, &SearchConfig::default()).unwrap();
        let BetheOutcome::Solved { solutions, complete, .. } = o else { panic!("no roots") };
        assert!(complete);
        assert!(!solutions.is_empty());
        for sol in solutions {
            assert!(sol.residuals[0].abs_below_pow2(150));
        }
    }

    #[test]
    fn coupled_a1_roots_have_small_residuals() {
        let p = BetheProblem::a1(s(&[0, 2, 5, 9]), 2);
        let o = solve(&p, &SearchConfig { seed: 7, ..SearchConfig::default() }).unwrap();
        let BetheOutcome::Solved { solutions, complete, .. } = o else { panic!("no roots") };
        assert!(!complete);
        assert!(!solutions.is_empty());
        for sol in &solutions {
            assert!(!sol.exact);
            assert!(sol.residuals.iter().all(|r| r.abs_below_pow2(150)));
        }
    }

    #[test]
    fn roots_at_poles_are_rejected() {
        // {0, 9/2} clears the denominators but b = 0 sits on y = 0.
        let p = BetheProblem::a1(s(&[0, 1, 3, 7]), 2);
        let o = solve(&p, &SearchConfig { seed: 7, restarts: 16, ..SearchConfig::default() });
        assert!(matches!(o, Err(Error::SearchExhausted { .. })));
    }

    #[test]
    fn nested_degenerates_to_fundamental() {
        let ys = s(&[0, 2]);
        let b1 = Scalar::ratio(1, 3);
        let a1 = BetheProblem::a1(ys.clone(), 1).residual(&[vec![b1.clone()]]).unwrap()[0].clone();
        let nested = BetheProblem::nested(ys, s(&[7]), 1, 1);
        let mut last = None;
        for t in [1_000i64, 1_000_000] {
            let r = nested.residual(&[vec![b1.clone()], s(&[t])]).unwrap()[0].clone();
            let gap = (r / Scalar::int(-t) - &a1).abs();
            if let Some(prev) = &last {
                assert!(&gap < prev);
            }
            last = Some(gap);
        }
    }
}
