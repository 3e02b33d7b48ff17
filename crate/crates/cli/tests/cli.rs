use std::process::{Command, Output};

fn mzl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mzl")).args(args).env_remove("MZL_CACHE_DIR").output().expect("binary runs")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("json report")
}

#[test]
fn analyze_examples() {
    let out = mzl(&["analyze", "x1^2+x2^2"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    let d = &r["results"][0]["detail"];
    assert_eq!(d["elliptic"], true);
    assert_eq!(d["sigma0"], "1");
    assert_eq!(d["rho0"], 1);

    let r = json(&mzl(&["analyze", "x1 x2"]));
    let d = &r["results"][0]["detail"];
    assert_eq!((d["elliptic"].as_bool(), d["sigma0"].as_str(), d["rho0"].as_u64()), (Some(false), Some("1"), Some(2)));
}

#[test]
fn usage_errors_exit_2() {
    let out = mzl(&["analyze", "x1 + + x2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("syntax error"));
    assert_eq!(mzl(&["verify", "nonexistent"]).status.code(), Some(2));
    assert_eq!(mzl(&["count", "--P", "x1^2+x2^2"]).status.code(), Some(2));
    assert_eq!(mzl(&["--tol", "-1", "analyze", "x1"]).status.code(), Some(2));
    assert_eq!(mzl(&["bogus"]).status.code(), Some(2));
}

#[test]
fn budget_exceeded_exits_3() {
    let out = mzl(&["count", "--P", "x1 + x2", "--t", "100000", "--max-points", "1000"]);
    assert_eq!(out.status.code(), Some(3), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn wrappers() {
    let r = json(&mzl(&["constant", "--sargos-elliptic", "x1^2+x2^2"]));
    let v = r["results"][0]["value"].as_f64().unwrap();
    assert!((v - std::f64::consts::FRAC_PI_4).abs() < 1e-10);

    let r = json(&mzl(&["count", "--f", "B2", "--P", "x1^2+x2^2", "--t", "100"]));
    // oracle: direct scan of the quarter disc
    let sqf = |m: u64| (2..=m).take_while(|p| p * p <= m).all(|p| m % (p * p) != 0);
    let mut n = 0u64;
    for a in 1..=100u64 {
        for b in 1..=100u64 {
            if a * a + b * b <= 10_000 && sqf(a) && sqf(b) {
                n += 1;
            }
        }
    }
    assert_eq!(r["results"][0]["exact"], n.to_string());

    let r = json(&mzl(&["euler", "--Dk", "2", "--n", "1"]));
    let v = r["results"][0]["value"].as_f64().unwrap();
    assert!((v - 6.0 / std::f64::consts::PI.powi(2)).abs() < 1e-9);

    let r = json(&mzl(&["zeta", "--P", "x1 x2", "--s", "4"]));
    let v = r["results"][0]["value"].as_f64().unwrap();
    assert!((v - std::f64::consts::PI.powi(4) / 36.0).abs() < 1e-6);

    let out = mzl(&["verify-mellin", "--w", "1,3", "--rho", "0.5", "--s", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["results"][0]["verdict"], "PASS");
}

#[test]
fn prediction_with_check_sets_verdict() {
    let out = mzl(&["count", "--P", "x1^2+x2^2", "--grid", "100,200,400", "--predict", "--check", "0.01"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["summary"]["pass"], 1);
    let out = mzl(&["count", "--P", "x1^2+x2^2", "--grid", "10,20", "--predict", "--check", "1e-6"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn formats() {
    let out = mzl(&["--format", "csv", "analyze", "x1 + x2"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("name,value,exact,"));
    assert_eq!(text.lines().count(), 3);
    let out = mzl(&["--format", "text", "analyze", "x1 + x2"]);
    assert!(String::from_utf8(out.stdout).unwrap().contains("sigma0"));
}

#[test]
fn reports_ignore_threads_but_not_seed() {
    let a = mzl(&["--threads", "1", "verify", "determinism"]);
    let b = mzl(&["--threads", "4", "verify", "determinism"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let c = mzl(&["--seed", "5", "verify", "determinism"]);
    assert_ne!(json(&a)["config_hash"], json(&c)["config_hash"]);
}

#[test]
fn cache_directory_layout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().to_str().unwrap();
    let out = mzl(&["--cache-dir", path, "euler", "--Dk", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let hash = json(&out)["config_hash"].as_str().unwrap().to_string();
    assert!(dir.path().join("primes.bin").exists());
    assert!(dir.path().join("results").join(format!("{hash}.json")).exists());
    // a stale stamp clears the cache
    std::fs::write(dir.path().join("VERSION"), "mzl 0.0.0\n").unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_mzl"))
        .args(["analyze", "x1"])
        .env("MZL_CACHE_DIR", path)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(!dir.path().join("primes.bin").exists());
    assert!(!dir.path().join("results").join(format!("{hash}.json")).exists());
    assert!(std::fs::read_to_string(dir.path().join("VERSION")).unwrap().contains(env!("CARGO_PKG_VERSION")));
}
