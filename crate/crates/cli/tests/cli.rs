use std::io::Write;
use std::process::{Command, Stdio};

use serde_json::Value;

fn run(args: &[&str], stdin: &str) -> (i32, Value, String) {
    let mut child = Command::new(env!("CARGO_BIN_EXE_vertexlab"))
        .args(args)
        .arg("--no-timing")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    let stdout = String::from_utf8(out.stdout).unwrap();
    let json = serde_json::from_str(&stdout).unwrap_or(Value::Null);
    (out.status.code().unwrap(), json, stdout)
}

#[test]
fn dwpf_example() {
    let (code, v, _) = run(&["dwpf"], r#"{"xs":[2,3],"ys":[0,1]}"#);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["value"], "1/6");
    assert_eq!(v["result"]["provenance"], "enumeration");
    assert_eq!(v["input"]["xs"][0], 2);
}

#[test]
fn dwpf_methods_agree() {
    let (code, v, _) = run(&["dwpf", "--method", "all"], r#"{"xs":["5/2",3,"-1/3"],"ys":[0,"7/4",9]}"#);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["agree"], true);
    let (_, unit_b, _) = run(&["dwpf", "--method", "all"], r#"{"xs":[2,3],"ys":[0,1],"norm":"unit_b"}"#);
    assert_eq!(unit_b["result"]["agree"], true);
}

#[test]
fn trig_dwpf_methods_agree() {
    let input = r#"{"xs":["1/3","-1/2"],"ys":["3/4","1/5"],"model":{"kind":"trig","gamma":"1/2","rank":1}}"#;
    let (code, v, _) = run(&["dwpf", "--method", "all"], input);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["result"]["agree"], true);
}

#[test]
fn ybe_check_rank_three() {
    let input = r#"{"model":{"kind":"rational","rank":3},"x":"1/2","y":3,"z":"-7/5"}"#;
    let (code, v, _) = run(&["ybe-check"], input);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["residual"], "0/1");
}

#[test]
fn lemma1_suite() {
    let (code, v, _) = run(&["verify", "--suite", "lemma1", "--max-size", "3", "--rank", "2"], "");
    assert_eq!(code, 0);
    let cases = v["result"]["suites"][0]["cases"].as_array().unwrap();
    assert_eq!(cases.len(), 4563);
    assert!(cases.iter().all(|c| c["value"] == "1/1"));
}

#[test]
fn verify_by_criterion_number() {
    let (code, v, _) = run(&["verify", "--suite", "11"], "");
    assert_eq!(code, 0);
    assert_eq!(v["result"]["suites"][0]["suite"], "factorizations");
}

#[test]
fn reports_are_byte_identical() {
    let args = ["verify", "--suite", "lemma2", "--seed", "5"];
    assert_eq!(run(&args, "").2, run(&args, "").2);
}

#[test]
fn input_errors_exit_two() {
    assert_eq!(run(&["dwpf"], "{bad").0, 2);
    assert_eq!(run(&["dwpf", "--method", "determinant"], r#"{"xs":[2,3],"ys":[2,1]}"#).0, 2);
    assert_eq!(run(&["dwpf"], r#"{"xs":[2,3],"ys":[0]}"#).0, 2);
    assert_eq!(run(&["scalar-product", "--method", "determinant"], r#"{"xs":[3],"bs":[4],"ys":[0,2],"norm":"unit_a"}"#).0, 2);
    assert_eq!(run(&["verify", "--suite", "nope"], "").0, 2);
    let trig_b = r#"{"xs":[1],"ys":[0],"norm":"unit_b","model":{"kind":"trig","gamma":"1/2","rank":1}}"#;
    assert_eq!(run(&["dwpf"], trig_b).0, 2);
}

#[test]
fn off_shell_slavnov_fails_verification() {
    let (code, v, _) = run(&["slavnov", "--method", "all"], r#"{"xs":[3],"bs":[4],"ys":[0,2]}"#);
    assert_eq!(code, 1);
    assert_eq!(v["result"]["values"]["enumeration"], "19/120");
    let (code, v, _) = run(&["slavnov", "--method", "all"], r#"{"xs":[3],"bs":["1/2"],"ys":[0,2]}"#);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["values"]["determinant"], "-1/4");
    assert_eq!(v["result"]["bethe_residuals"][0], "0/1");
}

#[test]
fn scalar_products() {
    let (code, v, _) = run(&["scalar-product"], r#"{"xs":[3],"bs":[4],"ys":[0,2],"norm":"unit_b"}"#);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["value"], "19/24");
    let (code, v, _) = run(&["ik-sum", "--method", "all"], r#"{"xs":[3],"bs":[4],"ys":[0,2]}"#);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["values"]["ik_sum"], "19/24");
    let (code, v, _) = run(&["pdwpf", "--method", "all"], r#"{"xs":[3],"ys":[0,1]}"#);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["values"]["determinant"], "1/1");
}

#[test]
fn coloured_matches_uncoloured() {
    let input = r#"{"of":"scalar-product","xs":[3],"bs":[4],"ys":[0,2],"colours":[2],"rank":2}"#;
    let (code, v, _) = run(&["coloured"], input);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["value"], "19/120");
    let input = r#"{"of":"dwpf","xs":[2,3],"ys":[0,1],"colours":[2,1],"rank":2}"#;
    assert_eq!(run(&["coloured"], input).1["result"]["agree"], true);
}

#[test]
fn bethe_solve() {
    let (code, v, _) = run(&["bethe-solve"], r#"{"variant":"a1-fundamental","ys":[0,2],"counts":[1]}"#);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["outcome"], "solved");
    assert_eq!(v["result"]["solutions"][0]["roots"][0][0], "1/2");
    let (_, v, _) = run(&["bethe-solve"], r#"{"variant":"a1-antifundamental","zs":[3],"counts":[1]}"#);
    assert_eq!(v["result"]["outcome"], "no_finite_solution");
}

#[test]
fn a2_factorizations() {
    let spec = r#""x2s":[4],"x1s":[3],"b1s":["1/2"],"ys":[0,2],"zs":[7]"#;
    let (code, v, _) = run(&["a2", "--method", "all"], &format!(r#"{{"operation":"fact1",{spec}}}"#));
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["result"]["values"]["formula"], "-4/9");
    let (code, v, _) = run(&["a2"], &format!(r#"{{"operation":"degenerate-b2",{spec}}}"#));
    assert_eq!(code, 0);
    assert_eq!(v["result"]["sequential_limit"], "-4/9");
    let (code, v, _) = run(&["a2", "--method", "all"], r#"{"operation":"fact2","x2s":[5],"x1s":[3],"b2s":[4],"ys":[0,1],"zs":[0,7]}"#);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["values"]["signed_sum"], "1/10");
    let (code, v, _) = run(&["a2", "--method", "all"], r#"{"operation":"scalar-product","x2s":[4],"x1s":[3],"b1s":["1/2"],"b2s":["11/3"],"ys":[0,2],"zs":[7]}"#);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["agree"], true);
}

#[test]
fn limit_of_a_lattice() {
    // One row turning up at the first column: Z = (b − 1) / (b (b − 2)).
    let lattice = r#"{
        "rows":[{"rapidity":"1000","label":"b"}],
        "cols":[{"rapidity":0},{"rapidity":2}],
        "model":{"kind":"rational","rank":1},
        "norm":"unit_b",
        "boundary":{"left":[{"fixed":1}],"right":[{"fixed":0}],"top":[{"fixed":1},{"fixed":0}],"bottom":[{"fixed":0},{"fixed":0}]}
    }"#;
    let (code, v, _) = run(&["limit"], &format!(r#"{{"lattice":{lattice},"labels":["b"]}}"#));
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["result"]["provenance"], "limit");
    assert_eq!(v["result"]["value"], "1/1");
    let (code, v, _) = run(&["limit"], &format!(r#"{{"lattice":{lattice}}}"#));
    assert_eq!(code, 0);
    assert_eq!(v["result"]["provenance"], "frontier_dp");
    assert_eq!(v["result"]["value"], "999/998000");
}
