//! Command-line front end: `verify`, `maximize`, `roots` and `report`.

pub mod format;
pub mod report;
pub mod verify;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use num_rational::BigRational;
use serde_json::json;

use crate::functions::TestFunction;
use crate::objective::ObjectiveId;
use crate::optimize::roots::{isolate_roots, Polynomial};
use crate::optimize::{maximize, BnbConfig, BnbError};
use crate::scalar::{parse_rational, ExactComplex};

use format::{render, Format, Row, Section};
use report::{build_report, ReportConfig, ReportSection};
use verify::{OmegaOverrides, DEFAULT_ORDER};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED_CHECK: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "hankel-cert", version, about = "Grunsky identities and certified Hankel determinant bounds")]
pub struct Cli {
    /// Write output here instead of stdout
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Exact,
    Floating,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the coefficient/Grunsky identities, quadratic form and cascade
    Verify {
        /// koebe, koebe-rot:THETA, identity, z-over-1-minus-z, z-over-1-minus-z2
        #[arg(long, conflicts_with = "coeffs")]
        function: Option<String>,
        /// Taylor coefficients a2,a3,... as fractions or decimals
        #[arg(long, allow_hyphen_values = true)]
        coeffs: Option<String>,
        #[arg(long, default_value_t = DEFAULT_ORDER)]
        order: usize,
        #[arg(long, value_enum, default_value = "exact")]
        mode: Mode,
        #[arg(long, allow_hyphen_values = true)]
        omega11: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        omega13: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        omega15: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        omega17: Option<String>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Certified global maximum of F1 or F2 over D1
    Maximize {
        #[arg(long, value_parser = parse_objective)]
        objective: ObjectiveId,
        #[arg(long, default_value_t = 1e-6, value_parser = parse_tol, allow_hyphen_values = true)]
        tol: f64,
        /// Maximum number of boxes
        #[arg(long, default_value_t = 10_000_000)]
        budget: u64,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Isolate the real roots of a rational polynomial
    Roots {
        /// Coefficients in ascending degree; defaults to 5x^8-5x^6+4x^4-4x^2+1
        #[arg(long, allow_hyphen_values = true)]
        coeffs: Option<String>,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        lo: String,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        hi: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Full reproduction report
    Report {
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Restrict objective-specific sections to one objective
        #[arg(long, value_parser = parse_objective)]
        objective: Option<ObjectiveId>,
        #[arg(long, value_enum, default_value = "all")]
        section: ReportSection,
        #[arg(long, default_value_t = 1e-6, value_parser = parse_tol, allow_hyphen_values = true)]
        tol: f64,
    },
}

fn parse_objective(s: &str) -> Result<ObjectiveId, String> {
    s.parse().map_err(|e: crate::objective::ObjectiveError| e.to_string())
}

fn parse_tol(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(t) if t > 0.0 && t.is_finite() => Ok(t),
        Ok(t) => Err(format!("tolerance must be positive and finite, got {t}")),
        Err(e) => Err(e.to_string()),
    }
}

fn parse_rational_arg(name: &str, s: &Option<String>) -> Result<Option<BigRational>> {
    s.as_deref()
        .map(|v| parse_rational(v).with_context(|| format!("--{name}")))
        .transpose()
}

/// Text produced by a command and its exit status.
pub struct Outcome {
    pub text: String,
    pub code: i32,
}

pub fn execute(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Verify {
            function,
            coeffs,
            order,
            mode,
            omega11,
            omega13,
            omega15,
            omega17,
            format,
        } => {
            let f = match (function, coeffs) {
                (_, Some(list)) => TestFunction::from_coefficient_list(list)?,
                (Some(name), None) => name.parse()?,
                (None, None) => bail!("one of --function or --coeffs is required"),
            };
            let overrides = OmegaOverrides {
                w11: parse_rational_arg("omega11", omega11)?,
                w13: parse_rational_arg("omega13", omega13)?,
                w15: parse_rational_arg("omega15", omega15)?,
                w17: parse_rational_arg("omega17", omega17)?,
            };
            let report = match mode {
                Mode::Exact => verify::verify::<ExactComplex>(&f, *order, &overrides)?,
                Mode::Floating => verify::verify::<Complex64>(&f, *order, &overrides)?,
            };
            let text = match format {
                Format::Json => pretty(&report.json()),
                other => render(&[report.section()], *other),
            };
            let code = if report.passed() { EXIT_OK } else { EXIT_FAILED_CHECK };
            Ok(Outcome { text, code })
        }
        Command::Maximize {
            objective,
            tol,
            budget,
            format,
        } => {
            let cfg = BnbConfig {
                tol: *tol,
                budget: *budget,
                ..BnbConfig::default()
            }
            .workers_from_env();
            let (bound, code) = match maximize(objective, &cfg) {
                Ok(b) => {
                    let code = if b.meets_tolerance() { EXIT_OK } else { EXIT_FAILED_CHECK };
                    (b, code)
                }
                Err(BnbError::BudgetExceeded(b)) => (b, EXIT_BUDGET),
                Err(e) => return Err(e.into()),
            };
            let text = match format {
                Format::Json => pretty(&bound.certificate()),
                other => {
                    let rows = vec![
                        Row::new("upper", bound.upper, "certified").bounds(Some(bound.lower), Some(bound.upper)),
                        Row::new("lower", bound.lower, "feasible value at witness"),
                        Row::new("witness x", bound.witness.x, ""),
                        Row::new("witness y", bound.witness.y, ""),
                        Row::new("tol", bound.tolerance, ""),
                        Row::new("boxes", bound.boxes_processed, ""),
                        Row::new("old bound", bound.old_bound.unwrap_or(f64::NAN), ""),
                    ];
                    let section = Section {
                        key: "maximize".into(),
                        title: format!("certified maximum of {objective}"),
                        rows,
                        json: bound.certificate(),
                    };
                    render(&[section], *other)
                }
            };
            Ok(Outcome { text, code })
        }
        Command::Roots { coeffs, lo, hi, format } => {
            let p = match coeffs {
                Some(list) => Polynomial::new(
                    list.split(',')
                        .filter(|s| !s.trim().is_empty())
                        .map(parse_rational)
                        .collect::<Result<_, _>>()?,
                ),
                None => Polynomial::f1_bottom_stationarity(),
            };
            let (a, b) = (parse_rational(lo)?, parse_rational(hi)?);
            let roots = isolate_roots(&p, &a, &b)?;
            let rows: Vec<Row> = roots
                .iter()
                .enumerate()
                .map(|(k, r)| {
                    let s = r.summary();
                    let kind = if s.exact { "exact rational root" } else { "sign change" };
                    Row::new(format!("root {}", k + 1), s.midpoint, kind).bounds(Some(s.lo), Some(s.hi))
                })
                .collect();
            let section = Section {
                key: "roots".into(),
                title: format!("real roots of {p} in ({lo}, {hi})"),
                rows,
                json: json!({
                    "polynomial": p.to_string(),
                    "lo": lo,
                    "hi": hi,
                    "count": roots.len(),
                    "roots": roots.iter().map(|r| r.summary()).collect::<Vec<_>>(),
                }),
            };
            let text = match format {
                Format::Json => pretty(&section.json),
                other => render(&[section], *other),
            };
            Ok(Outcome { text, code: EXIT_OK })
        }
        Command::Report {
            format,
            objective,
            section,
            tol,
        } => {
            let cfg = ReportConfig {
                section: *section,
                objectives: objective.map_or(ObjectiveId::ALL.to_vec(), |o| vec![o]),
                bnb: BnbConfig::with_tol(*tol).workers_from_env(),
            };
            match build_report(&cfg) {
                Ok(r) => Ok(Outcome {
                    text: render(&r.sections, *format),
                    code: if r.passed { EXIT_OK } else { EXIT_FAILED_CHECK },
                }),
                Err(BnbError::BudgetExceeded(b)) => Ok(Outcome {
                    text: pretty(&b.certificate()),
                    code: EXIT_BUDGET,
                }),
                Err(e) => Err(e.into()),
            }
        }
    }
}

fn pretty(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json");
    s.push('\n');
    s
}

/// Parses `args`, runs the command and writes its output. Returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let outcome = match execute(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e:#}");
            return EXIT_USAGE;
        }
    };
    let written = match &cli.output {
        Some(path) => std::fs::write(path, &outcome.text).with_context(|| format!("writing {}", path.display())),
        None => std::io::stdout()
            .write_all(outcome.text.as_bytes())
            .context("writing stdout"),
    };
    if let Err(e) = written {
        eprintln!("error: {e:#}");
        return EXIT_USAGE;
    }
    outcome.code
}
