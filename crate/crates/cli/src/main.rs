use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use embedkit_cli::{error_report, run, CliError, JobSpec, Subcommand};

/// Exact module computations for prime-to-p embedding problems.
///
/// Reads a JSON params object (or a full job document) and prints one JSON
/// report on stdout. Exit status: 0 ok, 2 invalid input, 3 size bound
/// exceeded, 1 other failure.
#[derive(Parser, Debug)]
#[command(name = "embedkit", version)]
struct Args {
    #[arg(value_enum)]
    subcommand: Subcommand,
    /// Input file; stdin when omitted.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Seed for randomized polynomial splitting.
    #[arg(long)]
    seed: Option<u64>,
    /// Largest module (in elements) the enumerators will touch.
    #[arg(long)]
    size_bound: Option<u64>,
}

fn read_input(path: Option<&PathBuf>) -> Result<String, CliError> {
    match path {
        Some(p) => std::fs::read_to_string(p).map_err(|e| CliError::Io(format!("reading {}: {e}", p.display()))),
        None => {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| CliError::Io(format!("reading stdin: {e}")))?;
            Ok(s)
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn"))
        .target(env_logger::Target::Stderr)
        .init();
    let args = Args::parse();

    let job = read_input(args.input.as_ref())
        .and_then(|text| JobSpec::from_input(&text, args.subcommand, args.seed, args.size_bound));
    let (report, code) = match &job {
        Ok(job) => match run(job) {
            Ok(report) => (report, 0),
            Err(e) => {
                log::error!("{e}");
                (error_report(Some(job), &e), e.exit_code())
            }
        },
        Err(e) => {
            log::error!("{e}");
            (error_report(None, e), e.exit_code())
        }
    };
    let mut out = std::io::stdout().lock();
    // A closed stdout is the reader's choice; the exit status still reports the job.
    let _ = writeln!(out, "{}", serde_json::to_string_pretty(&report).expect("report serializes"));
    ExitCode::from(code as u8)
}
