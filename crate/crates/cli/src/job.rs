use std::fmt::Write;

use clap::ValueEnum;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Subcommand {
    Factor,
    BuildPm,
    Decompose,
    Solvable,
    Count,
    OracleCount,
    #[value(name = "t1-check")]
    #[serde(rename = "t1-check")]
    T1Check,
}

impl Subcommand {
    pub fn name(self) -> &'static str {
        match self {
            Subcommand::Factor => "factor",
            Subcommand::BuildPm => "build-pm",
            Subcommand::Decompose => "decompose",
            Subcommand::Solvable => "solvable",
            Subcommand::Count => "count",
            Subcommand::OracleCount => "oracle-count",
            Subcommand::T1Check => "t1-check",
        }
    }
}

/// One unit of work: a subcommand and its parameters.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct JobSpec {
    pub subcommand: Subcommand,
    pub params: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub size_bound: Option<u64>,
}

impl JobSpec {
    /// Reads either a full job document or a bare params object.
    ///
    /// Flags given on the command line fill in `seed` and `sizeBound` when
    /// the document does not set them.
    pub fn from_input(
        text: &str,
        subcommand: Subcommand,
        seed: Option<u64>,
        size_bound: Option<u64>,
    ) -> Result<JobSpec, CliError> {
        let value: Value = serde_json::from_str(text)
            .map_err(|e| CliError::validation("", format!("input is not valid JSON: {e}")))?;
        let mut job = if value.get("subcommand").is_some() {
            let job: JobSpec = parse_at(&value, "")?;
            if job.subcommand != subcommand {
                return Err(CliError::validation(
                    "/subcommand",
                    format!(
                        "document is for `{}` but `{}` was invoked",
                        job.subcommand.name(),
                        subcommand.name()
                    ),
                ));
            }
            job
        } else {
            JobSpec {
                subcommand,
                params: value,
                seed: None,
                size_bound: None,
            }
        };
        job.seed = job.seed.or(seed);
        job.size_bound = job.size_bound.or(size_bound);
        Ok(job)
    }
}

/// Deserializes `value`, reporting failures with a JSON pointer under `base`.
pub(crate) fn parse_at<T: DeserializeOwned>(value: &Value, base: &str) -> Result<T, CliError> {
    serde_path_to_error::deserialize(value).map_err(|e| {
        let mut pointer = base.to_string();
        for seg in e.path().iter() {
            use serde_path_to_error::Segment;
            match seg {
                Segment::Seq { index } => {
                    let _ = write!(pointer, "/{index}");
                }
                Segment::Map { key } => {
                    let _ = write!(pointer, "/{}", key.replace('~', "~0").replace('/', "~1"));
                }
                Segment::Enum { variant } => {
                    let _ = write!(pointer, "/{variant}");
                }
                Segment::Unknown => {}
            }
        }
        CliError::validation(pointer, e.into_inner().to_string())
    })
}
