//! Command-line front end: `validate FILE` and `verify --suite NAME`.
//!
//! Exit codes: 0 when every check passes, 1 when some check fails, 2 on
//! usage, schema or validation errors.

pub mod input;
pub mod suites;

use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde::Serialize;

use crate::algebra::Algebra;
use crate::error::Error;
use crate::report::{Check, Status};

pub use input::{load_file, AlgebraFile, Loaded};
pub use suites::{run_suite, SuiteOptions, SUITES};

#[derive(Debug, Parser)]
#[command(name = "diffrad", version, about = "Exact checks for derivations, differential operators and radicals")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse an algebra file and print a summary.
    Validate { file: PathBuf },
    /// Run a verification suite and emit a JSON report.
    Verify {
        #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(SUITES))]
        suite: String,
        #[arg(long)]
        algebra: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        /// Orbit and power budget for undecidable-in-general questions.
        #[arg(long, default_value_t = 64)]
        budget: u32,
        #[arg(long, default_value_t = 8)]
        m_max: usize,
        #[arg(long, default_value_t = 8)]
        n_max: usize,
        /// Assert that the homogeneous parts of P of positive degree have no
        /// common nonzero zero.
        #[arg(long)]
        assert_no_common_zero: bool,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        quiet: bool,
        /// Write `elapsed_ms: 0` so reports compare byte for byte.
        #[arg(long)]
        omit_timing: bool,
    },
}

#[derive(Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub version: String,
    pub seed: u64,
    pub checks: Vec<Check>,
    pub elapsed_ms: u64,
}

impl SuiteReport {
    pub fn failed(&self) -> bool {
        self.checks.iter().any(Check::is_fail)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize") + "\n"
    }
}

fn describe(alg: &Algebra) -> String {
    let mut s = format!("algebra: {alg}\nfield: {}\n", alg.field());
    match alg.dim() {
        Some(d) => {
            s.push_str(&format!("dimension: {d}\n"));
            if let Ok(basis) = alg.basis_elements() {
                let shown: Vec<String> = basis.iter().take(64).map(|e| e.to_string()).collect();
                let more = if d > 64 { format!(", ... ({} more)", d - 64) } else { String::new() };
                s.push_str(&format!("basis: {}{more}\n", shown.join(", ")));
            }
        }
        None => s.push_str("dimension: infinite\n"),
    }
    for w in alg.warnings() {
        s.push_str(&format!("warning: {w}\n"));
    }
    s
}

pub fn validate(file: &std::path::Path, out: &mut dyn Write) -> Result<(), Error> {
    let l = load_file(file)?;
    let mut text = format!("valid: {}\n{}", l.name, describe(&l.algebra));
    for d in l.derivations.iter() {
        text.push_str(&format!("derivation: {}\n", d.name()));
    }
    if let Some(p) = &l.operator {
        text.push_str(&format!("operator: {p}\n"));
    }
    out.write_all(text.as_bytes()).map_err(|e| Error::Internal(e.to_string()))
}

/// Runs the parsed command, writing reports to `out` and diagnostics to
/// `err`, and returns the exit code.
pub fn execute(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match cli.command {
        Command::Validate { file } => match validate(&file, out) {
            Ok(()) => 0,
            Err(e) => {
                let _ = writeln!(err, "error: {e}");
                2
            }
        },
        Command::Verify {
            suite,
            algebra,
            seed,
            trials,
            budget,
            m_max,
            n_max,
            assert_no_common_zero,
            out: out_file,
            quiet,
            omit_timing,
        } => {
            let opts = SuiteOptions {
                seed,
                trials,
                budget,
                m_max,
                n_max,
                assert_no_common_zero,
            };
            let start = Instant::now();
            let loaded = match algebra.as_deref().map(load_file).transpose() {
                Ok(l) => l,
                Err(e) => {
                    let _ = writeln!(err, "error: {e}");
                    return 2;
                }
            };
            let checks = match run_suite(&suite, loaded.as_ref(), &opts) {
                Ok(r) => r.checks,
                Err(e) => {
                    let _ = writeln!(err, "error: {e}");
                    return 2;
                }
            };
            let report = SuiteReport {
                suite,
                version: env!("CARGO_PKG_VERSION").into(),
                seed,
                checks,
                elapsed_ms: if omit_timing { 0 } else { start.elapsed().as_millis() as u64 },
            };
            let json = report.to_json();
            if let Some(path) = &out_file {
                if let Err(e) = std::fs::write(path, &json) {
                    let _ = writeln!(err, "error: {}: {e}", path.display());
                    return 2;
                }
            }
            if !quiet {
                if out_file.is_none() {
                    let _ = out.write_all(json.as_bytes());
                }
                let count = |s: Status| report.checks.iter().filter(|c| c.status == s).count();
                let _ = writeln!(
                    err,
                    "{}: {} checks, {} pass, {} fail, {} skipped",
                    report.suite,
                    report.checks.len(),
                    count(Status::Pass),
                    count(Status::Fail),
                    report.checks.len() - count(Status::Pass) - count(Status::Fail)
                );
                for c in report.checks.iter().filter(|c| c.is_fail()) {
                    let _ = writeln!(err, "FAIL {}: {}", c.name, c.details);
                }
            }
            i32::from(report.failed())
        }
    }
}

/// Entry point shared by the binary: parses `args` and executes.
pub fn main_with_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(cli, out, err),
        Err(e) => {
            let _ = write!(err, "{e}");
            match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => 2,
            }
        }
    }
}
