//! Runs the twelve acceptance criteria and prints one PASS/FAIL line each.

use std::process::{Command, ExitCode};
use std::time::Instant;

use mzl_cli::report::Verdict;
use mzl_cli::suites::{run_suite, Settings, SUITES};

const LABELS: [&str; 12] = [
    "elliptic law on 50 random polynomials",
    "sphere integral vs Monte Carlo volume",
    "constant for x1^2 + x2^2 by three routes",
    "Mellin identity residuals",
    "pole fits of Z(1;x1x2) and Y(x1+x2)",
    "unit count on x1^2 + x2^2",
    "squarefree count on x1^2 + x2^2",
    "product-of-squarefree count",
    "divisor count drift",
    "Mangoldt count on x1 + x2",
    "Euler products against 1/zeta(k)",
    "thread-independent verify all",
];

// seconds; absent means no runtime bound
const BUDGET: [Option<f64>; 12] =
    [Some(10.0), Some(60.0), None, Some(30.0), None, Some(10.0), None, None, None, None, None, None];

fn suite(i: usize) -> (bool, String) {
    let start = Instant::now();
    let entries = run_suite(SUITES[i], &Settings::default()).expect("known suite");
    let secs = start.elapsed().as_secs_f64();
    let failed: Vec<_> =
        entries.iter().filter(|e| e.verdict != Some(Verdict::Pass)).map(|e| e.name.clone()).collect();
    let mut ok = !entries.is_empty() && failed.is_empty();
    let mut note = format!("{} checks, {secs:.1}s", entries.len());
    if !failed.is_empty() {
        note += &format!(", failing: {}", failed.join(", "));
    }
    if let Some(limit) = BUDGET[i] {
        if secs >= limit {
            ok = false;
            note += &format!(", over the {limit}s budget");
        }
    }
    (ok, note)
}

fn determinism() -> (bool, String) {
    let run = |threads: &str| {
        let out = Command::new(env!("CARGO_BIN_EXE_mzl"))
            .args(["--threads", threads, "--format", "json", "verify", "all"])
            .env_remove("MZL_CACHE_DIR")
            .output()
            .expect("spawn mzl");
        (out.status.code(), out.stdout)
    };
    let (c1, a) = run("1");
    let (c8, b) = run("8");
    let ok = c1 == Some(0) && c8 == Some(0) && !a.is_empty() && a == b;
    (ok, format!("exit {c1:?}/{c8:?}, {} vs {} bytes, identical: {}", a.len(), b.len(), a == b))
}

fn main() -> ExitCode {
    let mut all = true;
    for i in 0..12 {
        let (ok, note) = if i == 11 { determinism() } else { suite(i) };
        all &= ok;
        println!("criterion {} ({}): {} [{note}]", i + 1, LABELS[i], if ok { "PASS" } else { "FAIL" });
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
