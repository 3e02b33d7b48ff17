//! Command-line front end: argument surface, command execution, result cache
//! and the verification suites.

pub mod commands;
pub mod report;
pub mod suites;

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

pub use report::{Entry, Format, Report, Verdict};
pub use suites::Settings;

#[derive(Debug, Parser)]
#[command(name = "mzl", version, about = "Newton polyhedra, Sargos constants and lattice counts for mixed zeta functions")]
pub struct Cli {
    /// relative tolerance for quadratures and Euler products
    #[arg(long, global = true, default_value_t = 1e-10)]
    pub tol: f64,
    /// worker threads (default: all cores)
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// prime table and result cache
    #[arg(long, global = true, env = "MZL_CACHE_DIR")]
    pub cache_dir: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Auto,
    Elliptic,
    Limit,
    Direct,
    Sublevel,
    All,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Newton polyhedron at infinity, sigma0, rho0 and ellipticity of P
    Analyze {
        poly: String,
    },
    /// Sargos constant A0(P) or the volume constant A0(I;u;b)
    Constant {
        poly: Option<String>,
        #[arg(long, value_enum, default_value_t = Method::Auto)]
        method: Method,
        /// shorthand for --method elliptic
        #[arg(long, conflicts_with_all = ["direct", "limit"])]
        sargos_elliptic: bool,
        /// shorthand for --method direct
        #[arg(long, conflicts_with = "limit")]
        direct: bool,
        /// shorthand for --method limit
        #[arg(long)]
        limit: bool,
        /// Monte Carlo samples for --method sublevel
        #[arg(long, default_value_t = 1_000_000)]
        samples: u64,
        /// exponent rows of I as "1,0;0,1" (builds P from I, u, b)
        #[arg(long, conflicts_with = "poly", requires_all = ["mult", "coef"])]
        volume: Option<String>,
        /// multiplicities u, comma separated
        #[arg(long)]
        mult: Option<String>,
        /// coefficients b, comma separated
        #[arg(long)]
        coef: Option<String>,
        /// expected value; adds a verdict with --expect-rel
        #[arg(long)]
        expect: Option<f64>,
        #[arg(long, default_value_t = 0.01)]
        expect_rel: f64,
    },
    /// N(f;P;t), optionally along a grid and against the predicted main term
    Count {
        /// arithmetic function: unit, B<k>, D<k>, mangoldt, logprime
        #[arg(long = "f", default_value = "unit")]
        f: String,
        #[arg(long = "P", alias = "poly")]
        p: String,
        #[arg(long)]
        t: Option<f64>,
        /// comma-separated increasing t values
        #[arg(long, value_delimiter = ',')]
        grid: Vec<f64>,
        /// compare with C0 t^iota (log t)^(rho-1)
        #[arg(long)]
        predict: bool,
        /// PASS when |N/main term - 1| is at most this at the last t
        #[arg(long, requires = "predict")]
        check: Option<f64>,
        #[arg(long, default_value_t = 2_000_000_000)]
        max_points: u128,
    },
    /// Euler-product constant H_c(f;0)
    Euler {
        /// squarefree-product family D_k
        #[arg(long = "Dk", conflicts_with_all = ["bk", "f"])]
        dk: Option<u32>,
        /// componentwise family B_k
        #[arg(long = "Bk", conflicts_with = "f")]
        bk: Option<u32>,
        #[arg(long = "f")]
        f: Option<String>,
        #[arg(long, default_value_t = 1)]
        n: usize,
    },
    /// Z(f;P;s) or Y(P;s) on the real axis, or a pole fit at the abscissa
    Zeta {
        #[arg(long = "f", default_value = "unit")]
        f: String,
        #[arg(long = "P", alias = "poly")]
        p: String,
        /// comma-separated real s values
        #[arg(long, value_delimiter = ',')]
        s: Vec<f64>,
        /// evaluate the integral Y(P;s) instead of the series
        #[arg(long)]
        y: bool,
        /// fit order and leading coefficient of the first pole
        #[arg(long)]
        fit: bool,
        #[arg(long, default_value_t = 4)]
        q_max: u32,
        #[arg(long, default_value_t = 4_000_000)]
        max_points: u128,
        /// height T of the exactly summed region P(m) <= T^d
        #[arg(long)]
        cutoff: Option<f64>,
    },
    /// Check Gamma(s)/(sum w)^s against its Mellin-Barnes integral
    VerifyMellin {
        /// r+1 positive weights; without them both standard grids run
        #[arg(long, value_delimiter = ',', requires_all = ["rho", "s"])]
        w: Vec<f64>,
        #[arg(long, value_delimiter = ',')]
        rho: Vec<f64>,
        #[arg(long)]
        s: Option<f64>,
    },
    /// Run a named acceptance suite (or "all")
    Verify {
        suite: String,
    },
}

impl Cli {
    pub fn settings(&self) -> Settings {
        Settings { tol: self.tol, seed: self.seed, cache_dir: self.cache_dir.clone() }
    }

    /// The hashed configuration: the command with tolerance and seed.
    pub fn config(&self) -> serde_json::Value {
        serde_json::json!({ "command": self.command, "tol": self.tol, "seed": self.seed })
    }
}

/// Exit codes.
pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

pub fn exit_code_for(err: &mzl_core::Error) -> i32 {
    match err {
        mzl_core::Error::BudgetExceeded(_) | mzl_core::Error::DimensionBudget { .. } => EXIT_BUDGET,
        _ => EXIT_USAGE,
    }
}

const STAMP: &str = "VERSION";

/// Prepares `dir`: a stale version stamp clears the prime table and stored results.
pub fn prepare_cache(dir: &Path) -> std::io::Result<()> {
    fs::create_dir_all(dir)?;
    let stamp = dir.join(STAMP);
    let current = format!("mzl {}\n", report::VERSION);
    if fs::read_to_string(&stamp).ok().as_deref() != Some(current.as_str()) {
        let _ = fs::remove_dir_all(dir.join("results"));
        let _ = fs::remove_file(dir.join("primes.bin"));
        fs::write(&stamp, current)?;
    }
    fs::create_dir_all(dir.join("results"))
}

/// Stores the JSON report under `results/<config hash>.json`.
pub fn store_result(dir: &Path, report: &Report) -> std::io::Result<PathBuf> {
    let path = dir.join("results").join(format!("{}.json", report.config_hash));
    fs::write(&path, report.render(Format::Json))?;
    Ok(path)
}

/// Parses, executes and renders; returns the output and the exit code.
pub fn run(cli: &Cli) -> (String, i32) {
    if !(cli.tol > 0.0 && cli.tol.is_finite()) {
        return (format!("error: --tol must be positive, got {}\n", cli.tol), EXIT_USAGE);
    }
    if let Some(dir) = &cli.cache_dir {
        if let Err(e) = prepare_cache(dir) {
            return (format!("error: cache directory {}: {e}\n", dir.display()), EXIT_USAGE);
        }
    }
    let settings = cli.settings();
    match commands::execute(&cli.command, &settings) {
        Ok(entries) => {
            let report = Report::new(cli.config(), entries);
            if let Some(dir) = &cli.cache_dir {
                if let Err(e) = store_result(dir, &report) {
                    return (format!("error: writing cached result: {e}\n"), EXIT_USAGE);
                }
            }
            let code = if report.failed() { EXIT_FAIL } else { EXIT_OK };
            (report.render(cli.format), code)
        }
        Err(commands::CommandError::Usage(msg)) => (format!("error: {msg}\n"), EXIT_USAGE),
        Err(commands::CommandError::Core(e)) => (format!("error: {e}\n"), exit_code_for(&e)),
    }
}
