//! Batch front-end: load a JSON fixture, run one pipeline over the chosen
//! field and write a JSON report.
//!
//! Exit codes: `0` all verdicts pass, `1` internal error, `2` invalid input
//! or configuration, `3` a verdict failed (the report is still written),
//! `4` an exhaustive enumeration exceeded its budget.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use eql_core::field::Fp;
use eql_core::io::to_pretty;
use eql_core::{GaussianRational, Rational};
use serde_json::Value;

mod pipeline;

pub use pipeline::execute_with;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Command {
    /// Homotopy transfer to the minimal A∞-model, with Stasheff and morphism checks.
    Transfer,
    /// Cyclic potential and its cyclic derivatives, compared with the A∞-relations.
    Potential,
    /// Critical locus sampling, S-equivalence classes and wall-crossing.
    Moduli,
    /// Deformation tower, hull comparison and the equivalence check.
    Ncdef,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Transfer => "transfer",
            Command::Potential => "potential",
            Command::Moduli => "moduli",
            Command::Ncdef => "ncdef",
        }
    }
}

/// Base field of a run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldSpec {
    Rationals,
    GaussianRationals,
    Prime(u64),
}

/// Prime fields compiled into the binary.
pub const SUPPORTED_PRIMES: [u64; 11] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31];

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

impl FromStr for FieldSpec {
    type Err = String;

    /// `rationals`, `gaussian-rationals`, `f<p>` or `fp:<p>`.
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "rationals" | "q" => return Ok(FieldSpec::Rationals),
            "gaussian-rationals" | "q(i)" => return Ok(FieldSpec::GaussianRationals),
            _ => {}
        }
        let digits = s.strip_prefix("fp:").or_else(|| s.strip_prefix('f')).ok_or_else(|| format!("unknown field `{s}`"))?;
        let p: u64 = digits.parse().map_err(|_| format!("unknown field `{s}`"))?;
        if !is_prime(p) {
            return Err(format!("{p} is not prime"));
        }
        if !SUPPORTED_PRIMES.contains(&p) {
            return Err(format!("prime {p} is not supported; available: {SUPPORTED_PRIMES:?}"));
        }
        Ok(FieldSpec::Prime(p))
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "rationals"),
            FieldSpec::GaussianRationals => write!(f, "gaussian-rationals"),
            FieldSpec::Prime(p) => write!(f, "f{p}"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct PipelineConfig {
    pub command: Command,
    pub input: PathBuf,
    /// Arity cap for `transfer`, relation order for `potential`, truncation
    /// order of relations for `moduli` and top level for `ncdef`.
    pub order: usize,
    /// Overrides the arity cap of `transfer`.
    pub arity: Option<usize>,
    pub field: FieldSpec,
    pub out: PathBuf,
    pub seed: u64,
}

#[derive(Debug)]
pub enum CliError {
    Validation(String),
    /// Enumeration budget exceeded; the partial report is still written.
    Infeasible { estimate: u128, limit: u128, report: Value },
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 2,
            CliError::Infeasible { .. } => 4,
            CliError::Internal(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Validation(m) => write!(f, "invalid input: {m}"),
            CliError::Infeasible { estimate, limit, .. } => {
                write!(f, "infeasible: enumeration needs {estimate} candidates, limit is {limit}")
            }
            CliError::Internal(m) => write!(f, "error: {m}"),
        }
    }
}

impl From<eql_core::Error> for CliError {
    fn from(e: eql_core::Error) -> Self {
        use eql_core::Error as E;
        match e {
            E::Infeasible { estimate, limit } => CliError::Infeasible { estimate, limit, report: Value::Null },
            E::PositiveCharacteristic(_) | E::Unsupported(_) | E::Scalar(_) => CliError::Validation(e.to_string()),
            other => CliError::Internal(other.to_string()),
        }
    }
}

/// A finished report and whether every verdict in it passed.
#[derive(Clone, Debug)]
pub struct Report {
    pub json: Value,
    pub passed: bool,
}

/// Read the input and run the pipeline; nothing is written.
pub fn execute(config: &PipelineConfig) -> Result<Report, CliError> {
    let text = std::fs::read_to_string(&config.input)
        .map_err(|e| CliError::Validation(format!("cannot read {}: {e}", config.input.display())))?;
    let name = config.input.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
    execute_text(config, &name, &text)
}

/// Run the pipeline on fixture text; `name` is recorded in the report.
pub fn execute_text(config: &PipelineConfig, name: &str, text: &str) -> Result<Report, CliError> {
    macro_rules! primes {
        ($($p:literal),*) => {
            match config.field {
                FieldSpec::Rationals => execute_with::<Rational>(config, name, text),
                FieldSpec::GaussianRationals => execute_with::<GaussianRational>(config, name, text),
                $(FieldSpec::Prime($p) => execute_with::<Fp<$p>>(config, name, text),)*
                FieldSpec::Prime(p) => Err(CliError::Validation(format!("prime {p} is not supported"))),
            }
        };
    }
    primes!(2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31)
}

fn write_report(path: &Path, json: &Value) -> Result<(), CliError> {
    std::fs::write(path, to_pretty(json)).map_err(|e| CliError::Internal(format!("cannot write {}: {e}", path.display())))
}

/// Execute, write the report and return the process exit code. Messages go
/// to standard error.
pub fn run(config: &PipelineConfig) -> i32 {
    match execute(config) {
        Ok(report) => {
            if let Err(e) = write_report(&config.out, &report.json) {
                eprintln!("{e}");
                return e.exit_code();
            }
            if report.passed {
                0
            } else {
                eprintln!("{}: a verdict failed; see {}", config.command.name(), config.out.display());
                3
            }
        }
        Err(e) => {
            eprintln!("{e}");
            if let CliError::Infeasible { report, .. } = &e {
                if !report.is_null() {
                    if let Err(w) = write_report(&config.out, report) {
                        eprintln!("{w}");
                    }
                }
            }
            e.exit_code()
        }
    }
}
