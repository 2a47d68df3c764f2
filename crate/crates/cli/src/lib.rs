//! Batch front end: runs registered checks over structure-definition files
//! and writes the example gallery.

pub mod checks;
pub mod gallery;
pub mod report;

use rayon::prelude::*;
use std::path::PathBuf;
use std::time::{Duration, Instant};

pub use checks::{lookup, CheckInfo, CHECKS};
pub use gallery::{emit_examples, gallery};
pub use report::{Line, Outcome, Report};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Debug)]
pub struct CheckRequest {
    pub check: String,
    pub inputs: Vec<PathBuf>,
    pub format: OutputFormat,
    pub seed: u64,
}

/// Errors that stop a run before any verdict (exit status 2).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CliError {
    Usage(String),
    /// Unreadable or malformed structure file.
    Parse(String),
    /// Files parse but do not provide what the check needs.
    Input(String),
    Io(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Parse(m) => write!(f, "parse error: {m}"),
            CliError::Input(m) => write!(f, "input error: {m}"),
            CliError::Io(m) => write!(f, "i/o error: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

/// Runs a check; outcomes follow request order. Also returns wall time per
/// outcome, which is kept out of the report so output stays byte-stable.
pub fn run_check_timed(req: &CheckRequest) -> Result<(Report, Vec<Duration>), CliError> {
    let info = lookup(&req.check).ok_or_else(|| CliError::Usage(format!("unknown check `{}` (see list-checks)", req.check)))?;
    let jobs = if checks::is_suite(info.name) {
        if !req.inputs.is_empty() {
            return Err(CliError::Usage(format!("`{}` takes no input files", info.name)));
        }
        checks::suite_jobs(info.name, req.seed)
    } else {
        if req.inputs.is_empty() {
            return Err(CliError::Usage(format!("`{}` needs at least one input file", info.name)));
        }
        let mut jobs = Vec::new();
        for path in &req.inputs {
            let shown = path.display().to_string();
            let text = std::fs::read_to_string(path).map_err(|e| CliError::Parse(format!("{shown}: {e}")))?;
            let doc = holojac::format::Document::parse(&text).map_err(|e| CliError::Parse(format!("{shown}: {e}")))?;
            jobs.extend(checks::select(info.name, &doc, &shown)?);
        }
        jobs
    };
    let timed: Vec<(Outcome, Duration)> = jobs
        .into_par_iter()
        .map(|(subject, job)| {
            let t = Instant::now();
            let o = checks::outcome(subject, job);
            (o, t.elapsed())
        })
        .collect();
    let (outcomes, times) = timed.into_iter().unzip();
    let seed = checks::is_suite(info.name).then_some(req.seed);
    Ok((Report { check: info.name.to_string(), seed, outcomes }, times))
}

pub fn run_check(req: &CheckRequest) -> Result<Report, CliError> {
    run_check_timed(req).map(|(r, _)| r)
}

/// Text of `list-checks`.
pub fn list_checks() -> String {
    let w = CHECKS.iter().map(|c| c.name.len()).max().unwrap_or(0);
    CHECKS.iter().map(|c| format!("{:w$}  {}  [{}]\n", c.name, c.summary, c.input, w = w)).collect()
}
