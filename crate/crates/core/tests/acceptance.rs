use std::process::ExitCode;
use std::time::Instant;

use vertexlab::verify::{run_suite, VerifyConfig, SUITES};

fn main() -> ExitCode {
    let cfg = VerifyConfig::default();
    let mut failed = 0;
    for (name, criterion, title) in SUITES {
        let start = Instant::now();
        let report = match run_suite(name, &cfg) {
            Ok(r) => r,
            Err(e) => {
                println!("FAIL {criterion:>2} {name}: {e}");
                failed += 1;
                continue;
            }
        };
        let secs = start.elapsed().as_secs_f64();
        let bad: Vec<_> = report.failures().collect();
        let status = if report.passed { "PASS" } else { "FAIL" };
        println!("{status} {criterion:>2} {name} ({title}): {} cases, {} failed, {secs:.1}s", report.cases.len(), bad.len());
        for case in bad.iter().take(5) {
            let why = case.detail.as_deref().or(case.difference.as_deref()).unwrap_or("");
            println!("     {} {}", case.id, why);
        }
        if !report.passed {
            failed += 1;
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} of {} criteria failed", SUITES.len());
        ExitCode::FAILURE
    }
}
