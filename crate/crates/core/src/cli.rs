//! Command-line front end.
//!
//! Exit codes: 0 success, 1 parse or validation error, 2 comparison mismatch.

use std::fmt::Display;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::charring::CharExponent;
use crate::engine::{curve_poincare, divisorial_poincare, extract_from_factors, restrict_to_character, stratum_factors};
use crate::job::{Job, JobError, OracleMode, Target};
use crate::oracle::oracle_poincare;
use crate::powerseries::{series_eq_upto, CoeffRing, Comparison, MachineSeries, Series};
use crate::strata::validate_strata;

#[derive(Debug, Parser)]
#[command(name = "eqpoincare", version, about = "Equivariant Poincaré series of plane germ filtrations")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Expand the product formula for a divisorial or curve filtration.
    Compute {
        mode: Mode,
        job: PathBuf,
        #[command(flatten)]
        common: Common,
        /// Render only the coefficient of one character, e.g. `1,0`.
        #[arg(long, allow_hyphen_values = true)]
        character: Option<String>,
    },
    /// Trivial part of the divisorial series under the job's substitution.
    Extract {
        job: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Compare against the oracle and the expected series in the job.
    Check {
        job: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Run the determinant, positivity and Euler characteristic checks.
    Validate {
        job: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Divisorial,
    Curve,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Machine,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Total degree up to which the series is known.
    #[arg(long)]
    pub degree: u32,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write the rendering here instead of standard output.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Invalid,
    Mismatch,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub series: Option<MachineSeries>,
    #[serde(skip)]
    pub text: String,
    pub messages: Vec<String>,
    pub findings: Vec<String>,
    pub warnings: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub difference: Option<String>,
}

impl Report {
    fn new() -> Self {
        Self {
            status: Status::Ok,
            series: None,
            text: String::new(),
            messages: Vec::new(),
            findings: Vec::new(),
            warnings: Vec::new(),
            difference: None,
        }
    }

    fn invalid(e: impl Display) -> Self {
        let mut r = Self::new();
        r.status = Status::Invalid;
        r.findings.push(e.to_string());
        r
    }

    fn with_series<R: CoeffRing>(s: &Series<R>) -> Self {
        let mut r = Self::new();
        r.text = s.render_text();
        r.series = Some(s.to_machine());
        r
    }

    pub fn exit_code(&self) -> i32 {
        match self.status {
            Status::Ok => 0,
            Status::Invalid => 1,
            Status::Mismatch => 2,
        }
    }

    /// Text: the series (or status lines) followed by diagnostics. Machine: the report as JSON.
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Machine => serde_json::to_string_pretty(self).expect("report serializes") + "\n",
            Format::Text => {
                let mut lines: Vec<String> = Vec::new();
                if !self.text.is_empty() {
                    lines.push(self.text.clone());
                }
                lines.extend(self.messages.iter().cloned());
                lines.extend(self.warnings.iter().map(|w| format!("warning: {w}")));
                lines.extend(self.findings.iter().map(|f| format!("error: {f}")));
                if let Some(d) = &self.difference {
                    lines.push(format!("mismatch: {d}"));
                }
                let mut out = lines.join("\n");
                out.push('\n');
                out
            }
        }
    }
}

fn load(path: &PathBuf) -> Result<Job, JobError> {
    let text = std::fs::read_to_string(path).map_err(|e| JobError {
        location: path.display().to_string(),
        message: e.to_string(),
    })?;
    Job::from_json(&text)
}

pub fn cmd_compute(job: &Job, mode: Mode, degree: u32, character: Option<&str>) -> Report {
    let series = match mode {
        Mode::Divisorial => divisorial_poincare(&job.model, degree).map_err(|e| e.to_string()),
        Mode::Curve => job
            .curve_strata()
            .map_err(|e| e.to_string())
            .and_then(|cs| curve_poincare(&job.model, &cs, degree).map_err(|e| e.to_string())),
    };
    let series = match series {
        Ok(s) => s,
        Err(e) => return Report::invalid(e),
    };
    match character {
        None => Report::with_series(&series),
        Some(raw) => match parse_character(job, raw) {
            Ok(alpha) => Report::with_series(&restrict_to_character(&series, &alpha)),
            Err(e) => Report::invalid(e),
        },
    }
}

fn parse_character(job: &Job, raw: &str) -> Result<CharExponent, String> {
    let parts: Result<Vec<i64>, _> = if raw.trim().is_empty() {
        Ok(Vec::new())
    } else {
        raw.split(',').map(|p| p.trim().parse::<i64>()).collect()
    };
    let parts = parts.map_err(|e| format!("--character: {e}"))?;
    job.model.ring().exponent(&parts).map_err(|e| format!("--character: {e}"))
}

pub fn cmd_extract(job: &Job, degree: u32) -> Report {
    let run = || -> Result<Report, String> {
        let plan = job.extraction_plan().map_err(|e| e.to_string())?;
        let factors = stratum_factors(&job.model, job.model.strata(), job.model.chosen()).map_err(|e| e.to_string())?;
        let s = extract_from_factors(job.model.ring(), job.model.chosen().len(), &factors, &plan, degree)
            .map_err(|e| e.to_string())?;
        Ok(Report::with_series(&s))
    };
    run().unwrap_or_else(Report::invalid)
}

fn compare<R: CoeffRing>(
    report: &mut Report,
    what: &str,
    left: &Series<R>,
    right: &Series<R>,
    degree: u32,
) -> Result<(), String>
where
    R::Elem: Display,
{
    match series_eq_upto(left, right, degree).map_err(|e| format!("{what}: {e}"))? {
        Comparison::Equal => report.messages.push(format!("{what}: agree up to degree {degree}")),
        Comparison::Differs { exponent, left, right } => {
            report.status = Status::Mismatch;
            report.messages.push(format!("{what}: differ"));
            if report.difference.is_none() {
                report.difference = Some(format!("{what}: first difference at t^{exponent}: {left} vs {right}"));
            }
        }
    }
    Ok(())
}

pub fn cmd_check(job: &Job, degree: u32) -> Report {
    let mut report = cmd_validate(job);
    if report.status != Status::Ok {
        return report;
    }
    report.messages.clear();
    if job.spec.oracle.is_none() && job.spec.expected.is_empty() {
        return Report::invalid("nothing to check: no oracle section and no expected series");
    }
    let run = |report: &mut Report| -> Result<(), String> {
        if job.spec.oracle.is_some() {
            let mm = job.oracle_model().map_err(|e| e.to_string())?;
            report.warnings.extend(mm.warnings());
            let n = job.oracle_max_degree().map_or(degree, |cap| degree.min(cap));
            let engine = match job.oracle_mode().map_err(|e| e.to_string())? {
                OracleMode::Divisorial => divisorial_poincare(&job.model, n).map_err(|e| e.to_string())?,
                OracleMode::Curve => {
                    let cs = job.curve_strata().map_err(|e| e.to_string())?;
                    curve_poincare(&job.model, &cs, n).map_err(|e| e.to_string())?
                }
            };
            let oracle = oracle_poincare(&mm, n).map_err(|e| e.to_string())?;
            compare(report, "oracle", &engine, &oracle, n)?;
        }
        for (i, e) in job.spec.expected.iter().enumerate() {
            let what = format!("expected[{i}] ({})", e.target);
            match e.target {
                Target::Divisorial | Target::Curve => {
                    let computed = match e.target {
                        Target::Divisorial => divisorial_poincare(&job.model, degree).map_err(|x| x.to_string())?,
                        _ => {
                            let cs = job.curve_strata().map_err(|x| x.to_string())?;
                            curve_poincare(&job.model, &cs, degree).map_err(|x| x.to_string())?
                        }
                    };
                    let expected = job.expected_char_series(i, degree).map_err(|x| x.to_string())?;
                    compare(report, &what, &computed, &expected, degree)?;
                }
                Target::Extract => {
                    let plan = job.extraction_plan().map_err(|x| x.to_string())?;
                    let factors = stratum_factors(&job.model, job.model.strata(), job.model.chosen())
                        .map_err(|x| x.to_string())?;
                    let computed =
                        extract_from_factors(job.model.ring(), job.model.chosen().len(), &factors, &plan, degree)
                            .map_err(|x| x.to_string())?;
                    let expected = job.expected_int_series(i, degree).map_err(|x| x.to_string())?;
                    compare(report, &what, &computed, &expected, degree)?;
                }
            }
        }
        Ok(())
    };
    if let Err(e) = run(&mut report) {
        report.status = Status::Invalid;
        report.findings.push(e);
    }
    report
}

/// Loading the job already checks the determinant, positivity of `M` and the
/// characters; this adds the Euler characteristic bookkeeping.
pub fn cmd_validate(job: &Job) -> Report {
    let mut report = Report::new();
    let strata = job.model.strata();
    let r = validate_strata(&job.model, strata, &job.orbits(strata));
    report
        .findings
        .extend(r.findings.iter().map(|f| format!("strata: {}: {}", f.subject, f.message)));
    if job.spec.curve.is_some() {
        match job.curve_strata() {
            Ok(cs) => {
                let r = validate_strata(&job.model, &cs.strata, &job.orbits(&cs.strata));
                report
                    .findings
                    .extend(r.findings.iter().map(|f| format!("curve strata: {}: {}", f.subject, f.message)));
            }
            Err(e) => report.findings.push(e.to_string()),
        }
    }
    if report.findings.is_empty() {
        report.messages.push(format!(
            "valid: {} components, {} strata",
            job.model.graph().len(),
            strata.len()
        ));
    } else {
        report.status = Status::Invalid;
    }
    report
}

/// Runs one command line; returns the rendering, where it goes, and the exit code.
pub fn run(cli: &Cli) -> (String, Option<PathBuf>, i32) {
    let (job_path, format, output) = match &cli.command {
        Command::Compute { job, common, .. } | Command::Extract { job, common } | Command::Check { job, common } => {
            (job, common.format, common.output.clone())
        }
        Command::Validate { job, format, output } => (job, *format, output.clone()),
    };
    let report = match load(job_path) {
        Err(e) => Report::invalid(e),
        Ok(job) => match &cli.command {
            Command::Compute {
                mode, common, character, ..
            } => cmd_compute(&job, *mode, common.degree, character.as_deref()),
            Command::Extract { common, .. } => cmd_extract(&job, common.degree),
            Command::Check { common, .. } => cmd_check(&job, common.degree),
            Command::Validate { .. } => cmd_validate(&job),
        },
    };
    (report.render(format), output, report.exit_code())
}
