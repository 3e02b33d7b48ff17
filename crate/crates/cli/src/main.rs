use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use mzl_cli::{run, Cli, EXIT_USAGE};

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if n == 0 {
            eprintln!("error: --threads must be at least 1");
            return ExitCode::from(EXIT_USAGE as u8);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: thread pool: {e}");
            return ExitCode::from(EXIT_USAGE as u8);
        }
    }
    let (text, code) = run(&cli);
    if code == 0 || code == 1 {
        let mut out = std::io::stdout().lock();
        let _ = out.write_all(text.as_bytes());
    } else {
        eprint!("{text}");
    }
    ExitCode::from(code as u8)
}
