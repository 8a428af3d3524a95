//! Command-line front end for `negbound-core`: job files, task execution and
//! report emission.

pub mod config;
pub mod error;
pub mod report;
pub mod run;
pub mod schema;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::config::{Format, JobConfig, Task};
use crate::error::{CliError, EXIT_CONFIG, EXIT_OK};

#[derive(Debug, Parser)]
#[command(
    name = "negbound",
    version,
    about = "Exact bounds on negative curves of blown-up surfaces"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate the blow-up bound for given degrees C.H or curve classes.
    Bound(JobArgs),
    /// Zariski decomposition relative to a candidate set of negative curves.
    Zariski(JobArgs),
    /// Enumerate classes with prescribed C.C and K.C on a del Pezzo surface.
    Enumerate(JobArgs),
    /// Check the blow-up bound on a batch of curves.
    Verify(JobArgs),
    /// Bounds for vertical curves in a family of surfaces.
    Family(JobArgs),
    /// Print the JSON Schema of job files.
    Schema {
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
pub struct JobArgs {
    /// Job file (TOML).
    #[arg(long)]
    pub config: PathBuf,
    /// Output format; overrides `format` in the job file.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn write_output(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::Write(format!("{}: {e}", path.display()))),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Write(e.to_string())),
    }
}

fn run_job(task: Task, args: &JobArgs) -> Result<i32, CliError> {
    let text = std::fs::read_to_string(&args.config).map_err(|source| CliError::Read {
        path: args.config.display().to_string(),
        source,
    })?;
    let cfg = JobConfig::parse(&text)?;
    let format = match args.format {
        Some(f) => f,
        None => cfg.format()?.unwrap_or_default(),
    };
    let outcome = run::run(&cfg, task)?;
    write_output(args.out.as_deref(), &outcome.report.render(format))?;
    Ok(outcome.exit_code)
}

/// Parses `args` (including the program name) and runs; returns the exit status.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
        }
    };
    let result = match &cli.command {
        Command::Bound(a) => run_job(Task::Bound, a),
        Command::Zariski(a) => run_job(Task::Zariski, a),
        Command::Enumerate(a) => run_job(Task::Enumerate, a),
        Command::Verify(a) => run_job(Task::Verify, a),
        Command::Family(a) => run_job(Task::Family, a),
        Command::Schema { out } => {
            let mut text =
                serde_json::to_string_pretty(&schema::json_schema()).expect("schema serializes");
            text.push('\n');
            write_output(out.as_deref(), &text).map(|()| EXIT_OK)
        }
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("negbound: {e}");
            e.exit_code()
        }
    }
}
