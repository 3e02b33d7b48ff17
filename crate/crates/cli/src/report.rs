//! Report entries, rendering and the configuration hash.

use std::fmt::Write as _;

use serde::Serialize;
use sha2::{Digest, Sha256};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
        }
    }
}

/// One computed quantity. `expected`, `tolerance` and `verdict` appear together.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Entry {
    pub name: String,
    pub value: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact: Option<String>,
    pub error_estimate: Option<f64>,
    pub method: String,
    /// the mathematical statement the number is checked against
    pub anchor: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<Verdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<serde_json::Value>,
    #[serde(skip)]
    pub seconds: f64,
}

impl Entry {
    pub fn new(name: impl Into<String>, anchor: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            value: None,
            exact: None,
            error_estimate: None,
            method: String::new(),
            anchor: anchor.into(),
            expected: None,
            tolerance: None,
            verdict: None,
            detail: None,
            seconds: 0.0,
        }
    }

    pub fn value(mut self, v: f64, err: Option<f64>) -> Self {
        self.value = Some(v);
        self.error_estimate = err;
        self
    }

    pub fn exact(mut self, e: impl Into<String>) -> Self {
        self.exact = Some(e.into());
        self
    }

    pub fn method(mut self, m: impl Into<String>) -> Self {
        self.method = m.into();
        self
    }

    pub fn detail(mut self, d: serde_json::Value) -> Self {
        self.detail = Some(d);
        self
    }

    /// Attaches a verdict decided by the caller.
    pub fn verdict(mut self, expected: Option<f64>, tolerance: impl Into<String>, ok: bool) -> Self {
        self.expected = expected;
        self.tolerance = Some(tolerance.into());
        self.verdict = Some(Verdict::from_bool(ok));
        self
    }

    /// `|value − expected| ≤ rel·|expected|`.
    pub fn within_rel(self, expected: f64, rel: f64) -> Self {
        let ok = self.value.is_some_and(|v| (v - expected).abs() <= rel * expected.abs());
        self.verdict(Some(expected), format!("relative {rel:e}"), ok)
    }

    /// `|value − expected| ≤ abs`.
    pub fn within_abs(self, expected: f64, abs: f64) -> Self {
        let ok = self.value.is_some_and(|v| (v - expected).abs() <= abs);
        self.verdict(Some(expected), format!("absolute {abs:e}"), ok)
    }

    /// A FAIL entry for an operation that returned an error.
    pub fn failed(name: impl Into<String>, anchor: impl Into<String>, err: impl std::fmt::Display) -> Self {
        Entry::new(name, anchor)
            .method("error")
            .detail(serde_json::json!({ "error": err.to_string() }))
            .verdict(None, "operation must succeed", false)
    }

    pub fn passed(&self) -> bool {
        self.verdict != Some(Verdict::Fail)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub tool: &'static str,
    pub version: &'static str,
    /// the parsed command with tolerance and seed; thread count, cache and format are left out
    pub config: serde_json::Value,
    pub config_hash: String,
    pub results: Vec<Entry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub summary: Option<Summary>,
}

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// SHA-256 of the canonical JSON of the configuration and the tool version.
pub fn config_hash(config: &serde_json::Value) -> String {
    let canon = serde_json::json!({ "version": VERSION, "config": config });
    hex::encode(Sha256::digest(canon.to_string().as_bytes()))
}

impl Report {
    pub fn new(config: serde_json::Value, results: Vec<Entry>) -> Self {
        let any = results.iter().any(|e| e.verdict.is_some());
        let summary = any.then(|| Summary {
            pass: results.iter().filter(|e| e.verdict == Some(Verdict::Pass)).count(),
            fail: results.iter().filter(|e| e.verdict == Some(Verdict::Fail)).count(),
        });
        Self { tool: "mzl", version: VERSION, config_hash: config_hash(&config), config, results, summary }
    }

    pub fn failed(&self) -> bool {
        self.summary.as_ref().is_some_and(|s| s.fail > 0)
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(self).expect("report serializes") + "\n",
            Format::Csv => self.csv(),
            Format::Text => self.text(),
        }
    }

    fn csv(&self) -> String {
        let mut out = String::from("name,value,exact,error_estimate,method,anchor,expected,tolerance,verdict\n");
        let num = |v: Option<f64>| v.map(|x| format!("{x:e}")).unwrap_or_default();
        for e in &self.results {
            let cells = [
                e.name.clone(),
                num(e.value),
                e.exact.clone().unwrap_or_default(),
                num(e.error_estimate),
                e.method.clone(),
                e.anchor.clone(),
                num(e.expected),
                e.tolerance.clone().unwrap_or_default(),
                e.verdict.map(|v| v.as_str().to_string()).unwrap_or_default(),
            ];
            let line: Vec<String> = cells.iter().map(|c| csv_cell(c)).collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        out
    }

    fn text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "mzl {}  config {}", self.version, &self.config_hash[..16]);
        for e in &self.results {
            let mut line = format!("{:<40}", e.name);
            if let Some(x) = &e.exact {
                let _ = write!(line, " {x}");
            } else if let Some(v) = e.value {
                let _ = write!(line, " {v:.12}");
            }
            if let Some(err) = e.error_estimate {
                let _ = write!(line, " ± {err:.2e}");
            }
            if let Some(x) = e.expected {
                let _ = write!(line, "  (expected {x:.12})");
            }
            if let Some(v) = e.verdict {
                let _ = write!(line, "  {}", v.as_str());
            }
            let _ = write!(line, "  [{:.2}s]", e.seconds);
            let _ = writeln!(out, "{line}");
            if !e.method.is_empty() {
                let _ = writeln!(out, "    method: {}", e.method);
            }
            let _ = writeln!(out, "    anchor: {}", e.anchor);
            if let Some(d) = &e.detail {
                let _ = writeln!(out, "    detail: {d}");
            }
        }
        if let Some(s) = &self.summary {
            let _ = writeln!(out, "{} passed, {} failed", s.pass, s.fail);
        }
        out
    }
}

fn csv_cell(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdicts_and_summary() {
        let a = Entry::new("a", "x").value(1.0, None).within_rel(1.001, 1e-2);
        let b = Entry::new("b", "x").value(2.0, None).within_abs(1.0, 0.5);
        let c = Entry::new("c", "x").value(3.0, None);
        assert_eq!(a.verdict, Some(Verdict::Pass));
        assert_eq!(b.verdict, Some(Verdict::Fail));
        let r = Report::new(serde_json::json!({"cmd": "t"}), vec![a, b, c]);
        let s = r.summary.as_ref().unwrap();
        assert_eq!((s.pass, s.fail), (1, 1));
        assert!(r.failed());
        let none = Report::new(serde_json::json!({}), vec![Entry::new("c", "x").value(1.0, None)]);
        assert!(none.summary.is_none() && !none.failed());
    }

    #[test]
    fn hash_ignores_nothing_but_is_stable() {
        let a = config_hash(&serde_json::json!({"tol": 1e-9, "seed": 1}));
        assert_eq!(a, config_hash(&serde_json::json!({"seed": 1, "tol": 1e-9})));
        assert_ne!(a, config_hash(&serde_json::json!({"tol": 1e-9, "seed": 2})));
        assert_eq!(a.len(), 64);
    }

    #[test]
    fn csv_quoting() {
        let e = Entry::new("x,y", "say \"hi\"").value(0.5, Some(1e-3));
        let r = Report::new(serde_json::json!({}), vec![e]);
        let csv = r.render(Format::Csv);
        assert!(csv.lines().nth(1).unwrap().starts_with("\"x,y\",5e-1,,1e-3,,\"say \"\"hi\"\"\""));
    }

    #[test]
    fn seconds_stay_out_of_json() {
        let mut e = Entry::new("t", "x").value(1.0, None);
        e.seconds = 12.5;
        let json = Report::new(serde_json::json!({}), vec![e]).render(Format::Json);
        assert!(!json.contains("12.5"));
    }
}
