use std::fs;
use std::io::{self, Read, Write};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::{json, Value};

use vertexlab::a2::{
    a2_scalar_product, degenerate_b1, degenerate_b2, fact1, fact2, partial_det, partial_limit, A2Spec, Layout,
    PartialForm,
};
use vertexlab::bethe::{solve, BetheProblem, SearchConfig};
use vertexlab::dwpf::{
    coloured_dwpf, dwpf, dwpf_ik, dwpf_ik_trig, dwpf_trig, pdwpf, pdwpf_det, unit_b_factor,
};
use vertexlab::lattice::{evaluate, sequential_limit, LatticeSpec, Method, PartitionValue, Provenance};
use vertexlab::model::{ybe_residual, Colour, ModelKind, ModelParams, Normalization, WeightTable};
use vertexlab::scalar_product::{coloured_scalar_product, ik_sum, scalar_product, slavnov, ScalarProductSpec};
use vertexlab::verify::{find_suite, run_suite, VerifyConfig, SUITES};
use vertexlab::{Error, Scalar};

/// Exact vertex-model computations with JSON input and output.
#[derive(Parser)]
#[command(name = "vertexlab", version)]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
    /// JSON input file, or `-` for stdin.
    #[arg(long, global = true, default_value = "-")]
    input: String,
    /// Report destination, or `-` for stdout.
    #[arg(long, global = true, default_value = "-")]
    output: String,
    #[arg(long, global = true, default_value_t = 256)]
    precision_bits: usize,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum)]
    method: Option<CliMethod>,
    /// Leave wall-clock timing out of the report.
    #[arg(long, global = true)]
    no_timing: bool,
}

#[derive(Subcommand)]
enum Verb {
    /// Largest entry of R12 R13 R23 − R23 R13 R12 at one triple.
    YbeCheck,
    /// Domain wall partition function.
    Dwpf,
    /// Partial domain wall partition function (unit-b).
    Pdwpf,
    /// A₁ scalar product, full or restricted.
    ScalarProduct,
    /// Slavnov determinant.
    Slavnov,
    /// Izergin–Korepin sum for the unit-b scalar product.
    IkSum,
    /// Coloured domain wall or scalar product against its uncoloured value.
    Coloured,
    /// Bethe roots.
    BetheSolve,
    /// A₂ scalar products, degenerations and factorizations.
    A2,
    /// Sequential limit of a lattice as labelled lines go to infinity.
    Limit,
    /// Run verification suites.
    Verify {
        /// Suite name or criterion number, or `all`.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 3)]
        max_size: usize,
        #[arg(long, default_value_t = 2)]
        rank: u8,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum CliMethod {
    Enumeration,
    Dp,
    Determinant,
    Limit,
    All,
}

impl CliMethod {
    fn name(self) -> &'static str {
        match self {
            CliMethod::Enumeration => "enumeration",
            CliMethod::Dp => "dp",
            CliMethod::Determinant => "determinant",
            CliMethod::Limit => "limit",
            CliMethod::All => "all",
        }
    }
}

/// Input problems exit 2, failed checks exit 1.
enum Failure {
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type Run = Result<(Value, bool), Failure>;

struct Ctx {
    precision: usize,
    seed: u64,
    method: Option<CliMethod>,
}

impl Ctx {
    /// The lattice evaluation method; `determinant`, `limit` and `all` are
    /// handled by the verbs that support them.
    fn lattice_method(&self, default: Method) -> Result<Method, Failure> {
        match self.method {
            None | Some(CliMethod::All) | Some(CliMethod::Determinant) | Some(CliMethod::Limit) => Ok(default),
            Some(CliMethod::Enumeration) => Ok(Method::Enumeration),
            Some(CliMethod::Dp) => Ok(Method::Dp),
        }
    }

    fn only(&self, allowed: &[CliMethod], verb: &str) -> Result<(), Failure> {
        match self.method {
            Some(m) if !allowed.contains(&m) => {
                let names: Vec<_> = allowed.iter().map(|m| m.name()).collect();
                Err(Failure::Input(format!("{verb} supports --method {}", names.join("|"))))
            }
            _ => Ok(()),
        }
    }

    /// Two values agree when equal, or for floats within `2^-(p − 106)`.
    fn agree(&self, a: &Scalar, b: &Scalar) -> bool {
        if a.is_exact() && b.is_exact() {
            return a == b;
        }
        (a - b).abs_below_pow2(self.precision.saturating_sub(106) as u32)
    }
}

fn parse<T: DeserializeOwned>(input: &Value) -> Result<T, Failure> {
    serde_json::from_value(input.clone()).map_err(|e| Failure::Input(format!("input: {e}")))
}

fn pv(p: &PartitionValue) -> Value {
    serde_json::to_value(p).unwrap()
}

fn unit_a() -> Normalization {
    Normalization::UnitA
}

/// All values pairwise compared against the first.
fn compare(ctx: &Ctx, values: Vec<(&str, Scalar)>) -> (Value, bool) {
    let base = values[0].1.clone();
    let ok = values.iter().all(|(_, v)| ctx.agree(v, &base));
    let worst = values.iter().map(|(_, v)| (v - &base).abs()).fold(Scalar::zero(), |a, b| if b > a { b } else { a });
    let map: serde_json::Map<String, Value> = values.into_iter().map(|(k, v)| (k.to_string(), json!(v))).collect();
    (json!({ "values": map, "agree": ok, "max_difference": worst }), ok)
}

#[derive(Deserialize)]
struct YbeInput {
    model: ModelParams,
    #[serde(default = "unit_a")]
    norm: Normalization,
    x: Scalar,
    y: Scalar,
    z: Scalar,
}

fn ybe_check(ctx: &Ctx, input: &Value) -> Run {
    let inp: YbeInput = parse(input)?;
    let table = WeightTable::new(inp.model.clone(), inp.norm)?.with_precision(ctx.precision);
    let r = ybe_residual(&table, &inp.x, &inp.y, &inp.z)?;
    let ok = match inp.model.kind {
        ModelKind::Rational => r.is_zero(),
        ModelKind::Trig => r.abs_below_pow2(ctx.precision.saturating_sub(56) as u32),
    };
    Ok((json!({ "residual": r }), ok))
}

#[derive(Deserialize)]
struct DwpfInput {
    xs: Vec<Scalar>,
    ys: Vec<Scalar>,
    #[serde(default = "unit_a")]
    norm: Normalization,
    #[serde(default)]
    model: Option<ModelParams>,
}

fn dwpf_verb(ctx: &Ctx, input: &Value) -> Run {
    ctx.only(&[CliMethod::Enumeration, CliMethod::Dp, CliMethod::Determinant, CliMethod::All], "dwpf")?;
    let inp: DwpfInput = parse(input)?;
    if let Some(m) = &inp.model {
        m.validate()?;
        if m.rank != 1 {
            return Err(Failure::Input("the domain wall lattice has rank 1".into()));
        }
        if m.kind == ModelKind::Trig && inp.norm == Normalization::UnitB {
            return Err(Failure::Input("unit-b normalization is defined for the rational model only".into()));
        }
    }
    let gamma = inp.model.as_ref().and_then(|m| m.gamma.clone());
    let lattice = |method: Method| match &gamma {
        Some(g) => dwpf_trig(&inp.xs, &inp.ys, g, ctx.precision, method),
        None => dwpf(&inp.xs, &inp.ys, inp.norm, method),
    };
    let determinant = || -> Result<PartitionValue, Error> {
        match &gamma {
            Some(g) => dwpf_ik_trig(&inp.xs, &inp.ys, g, ctx.precision),
            None => {
                let mut p = dwpf_ik(&inp.xs, &inp.ys)?;
                if inp.norm == Normalization::UnitB {
                    p.value *= unit_b_factor(&inp.xs, &inp.ys)?;
                    p.norm = Normalization::UnitB;
                }
                Ok(p)
            }
        }
    };
    match ctx.method {
        Some(CliMethod::Determinant) => Ok((pv(&determinant()?), true)),
        Some(CliMethod::All) => Ok(compare(
            ctx,
            vec![
                ("enumeration", lattice(Method::Enumeration)?.value),
                ("dp", lattice(Method::Dp)?.value),
                ("determinant", determinant()?.value),
            ],
        )),
        _ => Ok((pv(&lattice(ctx.lattice_method(Method::Enumeration)?)?), true)),
    }
}

#[derive(Deserialize)]
struct PdwpfInput {
    xs: Vec<Scalar>,
    ys: Vec<Scalar>,
}

fn pdwpf_verb(ctx: &Ctx, input: &Value) -> Run {
    ctx.only(&[CliMethod::Enumeration, CliMethod::Dp, CliMethod::Determinant, CliMethod::All], "pdwpf")?;
    let inp: PdwpfInput = parse(input)?;
    match ctx.method {
        Some(CliMethod::Determinant) => Ok((pv(&pdwpf_det(&inp.xs, &inp.ys)?), true)),
        Some(CliMethod::All) => Ok(compare(
            ctx,
            vec![
                ("enumeration", pdwpf(&inp.xs, &inp.ys, Method::Enumeration)?.value),
                ("dp", pdwpf(&inp.xs, &inp.ys, Method::Dp)?.value),
                ("determinant", pdwpf_det(&inp.xs, &inp.ys)?.value),
            ],
        )),
        _ => Ok((pv(&pdwpf(&inp.xs, &inp.ys, ctx.lattice_method(Method::Enumeration)?)?), true)),
    }
}

fn scalar_product_verb(ctx: &Ctx, input: &Value) -> Run {
    ctx.only(&[CliMethod::Enumeration, CliMethod::Dp, CliMethod::All], "scalar-product")?;
    let spec: ScalarProductSpec = parse(input)?;
    if spec.colours.is_some() {
        return Err(Failure::Input("coloured scalar products go through the coloured verb".into()));
    }
    if ctx.method == Some(CliMethod::All) {
        let e = scalar_product(&spec, Method::Enumeration)?.value;
        let d = scalar_product(&spec, Method::Dp)?.value;
        return Ok(compare(ctx, vec![("enumeration", e), ("dp", d)]));
    }
    Ok((pv(&scalar_product(&spec, ctx.lattice_method(Method::Enumeration)?)?), true))
}

#[derive(Deserialize)]
struct SlavnovInput {
    xs: Vec<Scalar>,
    bs: Vec<Scalar>,
    ys: Vec<Scalar>,
}

fn slavnov_verb(ctx: &Ctx, input: &Value) -> Run {
    ctx.only(&[CliMethod::Determinant, CliMethod::All], "slavnov")?;
    let inp: SlavnovInput = parse(input)?;
    let det = slavnov(&inp.xs, &inp.bs, &inp.ys)?;
    let residuals = BetheProblem::a1(inp.ys.clone(), inp.bs.len()).residual(std::slice::from_ref(&inp.bs))?;
    if ctx.method != Some(CliMethod::All) {
        return Ok((json!({ "value": det.value, "provenance": det.provenance, "bethe_residuals": residuals }), true));
    }
    let spec = ScalarProductSpec::new(inp.xs, inp.bs, inp.ys, Normalization::UnitA);
    let lattice = scalar_product(&spec, Method::Enumeration)?.value;
    let (mut v, ok) = compare(ctx, vec![("determinant", det.value), ("enumeration", lattice)]);
    v["bethe_residuals"] = json!(residuals);
    Ok((v, ok))
}

fn ik_sum_verb(ctx: &Ctx, input: &Value) -> Run {
    ctx.only(&[CliMethod::Enumeration, CliMethod::Dp, CliMethod::All], "ik-sum")?;
    let inp: SlavnovInput = parse(input)?;
    let sum = ik_sum(&inp.xs, &inp.bs, &inp.ys, ctx.lattice_method(Method::Dp)?)?;
    if ctx.method != Some(CliMethod::All) {
        return Ok((pv(&sum), true));
    }
    let spec = ScalarProductSpec::new(inp.xs, inp.bs, inp.ys, Normalization::UnitB);
    let lattice = scalar_product(&spec, Method::Enumeration)?.value;
    Ok(compare(ctx, vec![("ik_sum", sum.value), ("enumeration", lattice)]))
}

#[derive(Deserialize)]
#[serde(rename_all = "kebab-case")]
enum ColouredKind {
    Dwpf,
    ScalarProduct,
}

#[derive(Deserialize)]
struct ColouredInput {
    of: ColouredKind,
    xs: Vec<Scalar>,
    #[serde(default)]
    bs: Vec<Scalar>,
    ys: Vec<Scalar>,
    colours: Vec<Colour>,
    rank: u8,
}

fn coloured_verb(ctx: &Ctx, input: &Value) -> Run {
    ctx.only(&[CliMethod::Enumeration, CliMethod::Dp], "coloured")?;
    let inp: ColouredInput = parse(input)?;
    let method = ctx.lattice_method(Method::Enumeration)?;
    let (coloured, plain) = match inp.of {
        ColouredKind::Dwpf => (
            coloured_dwpf(&inp.xs, &inp.ys, &inp.colours, inp.rank, method)?,
            dwpf(&inp.xs, &inp.ys, Normalization::UnitA, method)?,
        ),
        ColouredKind::ScalarProduct => {
            let spec = ScalarProductSpec {
                colours: Some(inp.colours.clone()),
                ..ScalarProductSpec::new(inp.xs.clone(), inp.bs.clone(), inp.ys.clone(), Normalization::UnitA)
            };
            (coloured_scalar_product(&spec, inp.rank, method)?, scalar_product(&spec, method)?)
        }
    };
    let (mut v, ok) = compare(ctx, vec![("coloured", coloured.value.clone()), ("uncoloured", plain.value)]);
    v["value"] = json!(coloured.value);
    v["provenance"] = json!(coloured.provenance);
    Ok((v, ok))
}

#[derive(Deserialize)]
struct BetheInput {
    #[serde(flatten)]
    problem: BetheProblem,
    #[serde(default)]
    restarts: Option<usize>,
    #[serde(default)]
    max_iterations: Option<usize>,
}

fn bethe_verb(ctx: &Ctx, input: &Value) -> Run {
    ctx.only(&[], "bethe-solve")?;
    let inp: BetheInput = parse(input)?;
    let d = SearchConfig::default();
    let config = SearchConfig {
        seed: ctx.seed,
        precision: ctx.precision,
        restarts: inp.restarts.unwrap_or(d.restarts),
        max_iterations: inp.max_iterations.unwrap_or(d.max_iterations),
    };
    Ok((serde_json::to_value(solve(&inp.problem, &config)?).unwrap(), true))
}

#[derive(Deserialize)]
#[serde(rename_all = "kebab-case")]
enum A2Operation {
    ScalarProduct,
    DegenerateB2,
    DegenerateB1,
    Fact1,
    Fact2,
    Partial1,
    Partial2,
}

#[derive(Deserialize)]
struct A2Input {
    operation: A2Operation,
    #[serde(default)]
    layout: Option<Layout>,
    #[serde(flatten)]
    spec: A2Spec,
}

fn a2_verb(ctx: &Ctx, input: &Value) -> Run {
    ctx.only(&[CliMethod::Enumeration, CliMethod::Dp, CliMethod::Determinant, CliMethod::Limit, CliMethod::All], "a2")?;
    let inp: A2Input = parse(input)?;
    let method = ctx.lattice_method(Method::Dp)?;
    let spec = &inp.spec;
    let degeneration = |d: vertexlab::a2::Degeneration| {
        let ok = d.agree();
        (json!({ "value": d.signed_sum, "signed_sum": d.signed_sum, "sequential_limit": d.sequential_limit, "difference": d.difference, "agree": ok }), ok)
    };
    Ok(match inp.operation {
        A2Operation::ScalarProduct => match inp.layout {
            Some(layout) if ctx.method != Some(CliMethod::All) => {
                (json!({ "value": a2_scalar_product(spec, layout, method)?, "layout": layout }), true)
            }
            _ => compare(
                ctx,
                vec![
                    ("fig1a", a2_scalar_product(spec, Layout::Fig1a, method)?),
                    ("fig1b", a2_scalar_product(spec, Layout::Fig1b, method)?),
                ],
            ),
        },
        A2Operation::DegenerateB2 => degeneration(degenerate_b2(spec, method)?),
        A2Operation::DegenerateB1 => degeneration(degenerate_b1(spec, method)?),
        A2Operation::Fact1 | A2Operation::Fact2 => {
            let (formula, d) = match inp.operation {
                A2Operation::Fact1 => (fact1(spec)?, degenerate_b2(spec, method)?),
                _ => (fact2(spec)?, degenerate_b1(spec, method)?),
            };
            if ctx.method == Some(CliMethod::All) {
                compare(ctx, vec![("formula", formula), ("signed_sum", d.signed_sum), ("sequential_limit", d.sequential_limit)])
            } else {
                (json!({ "value": formula }), true)
            }
        }
        A2Operation::Partial1 | A2Operation::Partial2 => {
            let (form, xs, plus, minus) = match inp.operation {
                A2Operation::Partial1 => (PartialForm::Partial1, &spec.x2s, &spec.x1s, &spec.zs),
                _ => (PartialForm::Partial2, &spec.x1s, &spec.ys, &spec.x2s),
            };
            match ctx.method {
                Some(CliMethod::Limit) => (json!({ "value": partial_limit(form, xs, plus, minus, method)?, "provenance": Provenance::Limit }), true),
                Some(CliMethod::All) => compare(
                    ctx,
                    vec![
                        ("determinant", partial_det(form, xs, plus, minus)?),
                        ("limit", partial_limit(form, xs, plus, minus, method)?),
                    ],
                ),
                _ => (json!({ "value": partial_det(form, xs, plus, minus)?, "provenance": Provenance::Determinant }), true),
            }
        }
    })
}

#[derive(Deserialize)]
struct LimitInput {
    lattice: LatticeSpec,
    #[serde(default)]
    labels: Vec<String>,
}

fn limit_verb(ctx: &Ctx, input: &Value) -> Run {
    ctx.only(&[CliMethod::Enumeration, CliMethod::Dp], "limit")?;
    let inp: LimitInput = parse(input)?;
    let method = ctx.lattice_method(Method::Dp)?;
    if inp.labels.is_empty() {
        return Ok((pv(&evaluate(&inp.lattice, method)?), true));
    }
    let refs: Vec<&str> = inp.labels.iter().map(String::as_str).collect();
    let v = sequential_limit(&inp.lattice, &refs, method)?;
    Ok((json!({ "value": v, "provenance": Provenance::Limit, "labels": inp.labels }), true))
}

fn verify_verb(ctx: &Ctx, suite: &str, max_size: usize, rank: u8) -> Run {
    ctx.only(&[CliMethod::Enumeration, CliMethod::Dp], "verify")?;
    let cfg = VerifyConfig {
        seed: ctx.seed,
        precision: ctx.precision,
        max_size,
        rank,
        method: ctx.lattice_method(Method::Enumeration)?,
    };
    if rank == 0 {
        return Err(Failure::Input("rank must be at least 1".into()));
    }
    let names: Vec<&str> = if suite == "all" {
        SUITES.iter().map(|s| s.0).collect()
    } else {
        vec![find_suite(suite).ok_or_else(|| Failure::Input(format!("unknown suite {suite:?}")))?.0]
    };
    let reports = names.iter().map(|n| run_suite(n, &cfg)).collect::<Result<Vec<_>, _>>()?;
    let ok = reports.iter().all(|r| r.passed);
    Ok((json!({ "passed": ok, "suites": reports }), ok))
}

fn read_input(path: &str) -> Result<Value, Failure> {
    let text = if path == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(|e| Failure::Input(format!("stdin: {e}")))?;
        s
    } else {
        fs::read_to_string(path).map_err(|e| Failure::Input(format!("{path}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| Failure::Input(format!("malformed JSON: {e}")))
}

fn verb_name(v: &Verb) -> &'static str {
    match v {
        Verb::YbeCheck => "ybe-check",
        Verb::Dwpf => "dwpf",
        Verb::Pdwpf => "pdwpf",
        Verb::ScalarProduct => "scalar-product",
        Verb::Slavnov => "slavnov",
        Verb::IkSum => "ik-sum",
        Verb::Coloured => "coloured",
        Verb::BetheSolve => "bethe-solve",
        Verb::A2 => "a2",
        Verb::Limit => "limit",
        Verb::Verify { .. } => "verify",
    }
}

fn dispatch(cli: &Cli, ctx: &Ctx) -> Result<(Value, Value, bool), Failure> {
    if let Verb::Verify { suite, max_size, rank } = &cli.verb {
        let (result, ok) = verify_verb(ctx, suite, *max_size, *rank)?;
        return Ok((json!({ "suite": suite, "max_size": max_size, "rank": rank }), result, ok));
    }
    let input = read_input(&cli.input)?;
    let (result, ok) = match cli.verb {
        Verb::YbeCheck => ybe_check(ctx, &input)?,
        Verb::Dwpf => dwpf_verb(ctx, &input)?,
        Verb::Pdwpf => pdwpf_verb(ctx, &input)?,
        Verb::ScalarProduct => scalar_product_verb(ctx, &input)?,
        Verb::Slavnov => slavnov_verb(ctx, &input)?,
        Verb::IkSum => ik_sum_verb(ctx, &input)?,
        Verb::Coloured => coloured_verb(ctx, &input)?,
        Verb::BetheSolve => bethe_verb(ctx, &input)?,
        Verb::A2 => a2_verb(ctx, &input)?,
        Verb::Limit => limit_verb(ctx, &input)?,
        Verb::Verify { .. } => unreachable!(),
    };
    Ok((input, result, ok))
}

fn emit(path: &str, report: &Value) -> io::Result<()> {
    let text = serde_json::to_string_pretty(report).unwrap() + "\n";
    if path == "-" {
        io::stdout().write_all(text.as_bytes())
    } else {
        fs::write(path, text)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let ctx = Ctx { precision: cli.precision_bits, seed: cli.seed, method: cli.method };
    if ctx.precision < 128 {
        eprintln!("error: --precision-bits must be at least 128");
        return ExitCode::from(2);
    }
    let start = Instant::now();
    let (input, result, ok) = match dispatch(&cli, &ctx) {
        Ok(r) => r,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            let _ = emit(&cli.output, &json!({ "verb": verb_name(&cli.verb), "error": msg }));
            return ExitCode::from(2);
        }
    };
    let mut report = json!({
        "verb": verb_name(&cli.verb),
        "options": {
            "seed": ctx.seed,
            "precision_bits": ctx.precision,
            "method": ctx.method.map(CliMethod::name),
        },
        "input": input,
        "result": result,
        "ok": ok,
    });
    if !cli.no_timing {
        report["timing"] = json!({ "elapsed_ms": start.elapsed().as_secs_f64() * 1e3 });
    }
    if let Err(e) = emit(&cli.output, &report) {
        eprintln!("error: writing report: {e}");
        return ExitCode::from(2);
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
