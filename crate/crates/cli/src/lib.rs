//! Command-line front end for the `apportion` engine.

pub mod args;
pub mod config;
pub mod error;
pub mod input;
pub mod render;
pub mod run;

use std::fs::File;
use std::io::{self, Read};
use std::path::Path;

use apportion_oracle::{
    bias_montecarlo, equivalence_suite, paradox_suite, Execution, InstanceSpace, SuiteReport,
};

pub use args::Args;
pub use config::{resolve, Format, RunConfig, SeedConfig};
pub use error::{CliError, Result};
pub use input::{parse_votes, ParsedVotes};
pub use run::{run, Difference, LabeledTie, Report, Trace, TraceEntry};

fn open(path: Option<&Path>) -> Result<Box<dyn Read>> {
    match path {
        None => Ok(Box::new(io::stdin())),
        Some(p) if p == Path::new("-") => Ok(Box::new(io::stdin())),
        Some(p) => File::open(p)
            .map(|f| Box::new(f) as Box<dyn Read>)
            .map_err(|e| CliError::input(format!("{}: {e}", p.display()))),
    }
}

pub fn run_suite(args: &Args) -> Result<SuiteReport> {
    use args::SuiteArg;
    let suite = args.suite.expect("suite requested");
    let space = match suite {
        SuiteArg::Paradox => InstanceSpace::small_search(args.trials),
        _ => InstanceSpace::equivalence_default(args.trials, args.master_seed),
    };
    Ok(match suite {
        SuiteArg::Equivalence => equivalence_suite(&space, Execution::Parallel)?,
        SuiteArg::Bias => bias_montecarlo(&space, Execution::Parallel)?,
        SuiteArg::Paradox => paradox_suite(&space)?,
    })
}

fn json<T: serde::Serialize>(v: &T) -> Result<String> {
    serde_json::to_string_pretty(v)
        .map(|s| s + "\n")
        .map_err(|e| CliError::Execution(e.to_string()))
}

/// Runs the command described by `args` and returns what to print.
pub fn execute(args: &Args) -> Result<String> {
    let as_json = args.format == args::FormatArg::Json;
    if args.suite.is_some() {
        let report = run_suite(args)?;
        return if as_json {
            json(&report)
        } else {
            Ok(render::render_suite(&report))
        };
    }
    let parsed = parse_votes(open(args.input.as_deref())?, &args.districts_col)?;
    let config = resolve(args, parsed.district_seats)?;
    let report = run(parsed.tally, config)?;
    if as_json {
        json(&report)
    } else {
        Ok(render::render_report(&report))
    }
}
