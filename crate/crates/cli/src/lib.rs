//! Batch front end: one JSON job in, one JSON report out.

mod commands;
pub mod error;
pub mod job;
pub mod source;

use serde_json::{json, Value};

use embedkit_core::cyclotomic::DEFAULT_SEED;

pub use error::CliError;
pub use job::{JobSpec, Subcommand};

/// Runs a job and assembles the report: the echoed job, the result and,
/// for `solvable` and `count`, the criterion that produced it.
pub fn run(job: &JobSpec) -> Result<Value, CliError> {
    let seed = job.seed.unwrap_or(DEFAULT_SEED);
    let params = &job.params;
    log::debug!("running {} with seed {seed}", job.subcommand.name());
    let outcome = match job.subcommand {
        Subcommand::Factor => commands::factor(params, seed)?,
        Subcommand::BuildPm => commands::build_pm(params)?,
        Subcommand::Decompose => commands::decompose_cmd(params, seed)?,
        Subcommand::Solvable => commands::solvable(params, seed)?,
        Subcommand::Count => commands::count(params, seed)?,
        Subcommand::OracleCount => commands::oracle_count(params, seed, job.size_bound)?,
        Subcommand::T1Check => commands::t1_check(params, job.size_bound)?,
    };
    let mut report = json!({
        "input": serde_json::to_value(job).expect("job serializes"),
        "result": outcome.result,
    });
    if let Some(p) = outcome.provenance {
        report["provenance"] = p;
    }
    Ok(report)
}

/// The document printed when a job fails.
pub fn error_report(job: Option<&JobSpec>, err: &CliError) -> Value {
    let mut report = json!({ "error": err.to_json() });
    if let Some(job) = job {
        report["input"] = serde_json::to_value(job).expect("job serializes");
    }
    report
}
