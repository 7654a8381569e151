//! Command-line parsing and dispatch.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::json;
use valfrob_core::{classify, SplitBudget};

use crate::descriptor::{load_center, load_file, LoadOptions};
use crate::error::{CliError, EXIT_USAGE, EXIT_VERIFY};
use crate::gallery;
use crate::ops::{evaluate, split_expression};
use crate::report::{report_json, report_text, to_json_text};
use crate::verify::{verify_loaded, VerifyBudget, DEFAULT_HAHN_BOUND};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "valfrob", version, about = "Valuations and Frobenius splittings over F_q(x_1..x_n)")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Seed for every sampled check.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Initial series precision cap, also the exponent bound for Hahn series.
    #[arg(long, global = true)]
    pub precision: Option<usize>,
    /// Samples per sampled check.
    #[arg(long, global = true, default_value_t = 200)]
    pub samples: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Value of an expression.
    Eval {
        #[arg(long)]
        valuation: PathBuf,
        #[arg(long)]
        expr: String,
    },
    /// Apply the monomial Frobenius splitting to an expression.
    Split {
        #[arg(long)]
        valuation: PathBuf,
        #[arg(long)]
        expr: String,
        /// Number of Frobenius iterations.
        #[arg(long, default_value_t = 1)]
        iteration: u32,
    },
    /// Classification report: defect, Abhyankar center, F-finiteness, splitting.
    Classify {
        #[arg(long)]
        valuation: PathBuf,
        #[arg(long)]
        center: Option<PathBuf>,
    },
    /// Sampled property checks for the descriptor's kind.
    Verify {
        #[arg(long)]
        valuation: PathBuf,
    },
    /// Run the built-in example gallery against its expectations.
    Gallery {
        #[arg(long)]
        entry: Option<String>,
    },
}

impl Cli {
    fn load_options(&self) -> LoadOptions {
        LoadOptions {
            series_cap: self.precision,
        }
    }

    fn budget(&self) -> VerifyBudget {
        let bound = self.precision.map_or(DEFAULT_HAHN_BOUND, |p| p as i64);
        VerifyBudget {
            seed: self.seed,
            samples: self.samples,
            hahn_bound: BigRational::from_integer(BigInt::from(bound)),
        }
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 { out.write_all(rendered.as_bytes()) } else { err.write_all(rendered.as_bytes()) };
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn emit(out: &mut dyn Write, s: &str) -> Result<(), CliError> {
    out.write_all(s.as_bytes()).map_err(|e| CliError::Io {
        path: "<stdout>".to_string(),
        message: e.to_string(),
    })
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32, CliError> {
    let budget = cli.budget();
    match &cli.command {
        Command::Eval { valuation, expr } => {
            let loaded = load_file(valuation, cli.load_options())?;
            let value = evaluate(&loaded, expr, &budget.hahn_bound)?;
            match cli.format {
                Format::Text => emit(out, &format!("{value}\n"))?,
                Format::Json => emit(out, &to_json_text(&json!({"expr": expr, "value": value})))?,
            }
            Ok(0)
        }
        Command::Split {
            valuation,
            expr,
            iteration,
        } => {
            let loaded = load_file(valuation, cli.load_options())?;
            let outcome = split_expression(&loaded, expr, *iteration)?;
            let machine = serde_json::to_string(&outcome.to_json()).expect("JSON values serialize");
            match cli.format {
                Format::Text => emit(out, &format!("{}\n{machine}\n", outcome.image))?,
                Format::Json => emit(out, &format!("{machine}\n"))?,
            }
            Ok(if outcome.claim_holds { 0 } else { EXIT_VERIFY })
        }
        Command::Classify { valuation, center } => {
            let loaded = load_file(valuation, cli.load_options())?;
            let center = match center {
                Some(path) => Some(load_center(path, &loaded)?),
                None => loaded.default_center(),
            };
            let split_budget = SplitBudget {
                seed: cli.seed,
                samples: cli.samples,
            };
            let report = classify(&loaded.descriptor, center.as_ref(), split_budget)?;
            match cli.format {
                Format::Text => emit(out, &report_text(&report))?,
                Format::Json => emit(out, &to_json_text(&report_json(&report)))?,
            }
            Ok(0)
        }
        Command::Verify { valuation } => {
            let loaded = load_file(valuation, cli.load_options())?;
            let report = verify_loaded(&loaded, &budget)?;
            match cli.format {
                Format::Text => emit(out, &report.render_text())?,
                Format::Json => emit(out, &to_json_text(&report.to_json()))?,
            }
            Ok(if report.all_passed() { 0 } else { EXIT_VERIFY })
        }
        Command::Gallery { entry } => {
            let selected = match entry {
                Some(name) => vec![gallery::find(name)
                    .ok_or_else(|| CliError::Usage(format!("no gallery entry named `{name}`")))?],
                None => gallery::entries(),
            };
            let mut all_passed = true;
            let mut rows = Vec::new();
            for e in &selected {
                let result = gallery::run_entry(e, &budget, cli.load_options())?;
                all_passed &= result.passed();
                match cli.format {
                    Format::Text => {
                        let status = if result.passed() { "PASS" } else { "FAIL" };
                        emit(out, &format!("{status} {} ({} checks)\n", result.name, result.checked))?;
                        for f in &result.failures {
                            emit(out, &format!("  {f}\n"))?;
                        }
                    }
                    Format::Json => rows.push(json!({
                        "name": result.name,
                        "citation": e.citation,
                        "checked": result.checked,
                        "passed": result.passed(),
                        "failures": result.failures,
                    })),
                }
            }
            if cli.format == Format::Json {
                emit(out, &to_json_text(&json!({"entries": rows, "passed": all_passed})))?;
            }
            Ok(if all_passed { 0 } else { EXIT_VERIFY })
        }
    }
}
