//! The `genchase` command line.
//!
//! ```text
//! genchase check <file> [--criteria rich,weak,...]
//! genchase run <file> [--criteria ...] [--max-steps N] [--force] [-o OUT] [--log LOG]
//! ```
//!
//! Exit codes: 0 fixpoint (or all checks passed), 2 failed or empty result,
//! 3 step limit, 4 a termination check failed, 5 unreadable or invalid input.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::chase::{run, ChaseStatus};
use crate::io::{parse_problem, render_result, write_log, ChaseProblem};
use crate::termination::{
    check_termination, validate_constraints, Criterion, Verdict, CONSTRAINTS_OK,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 2;
pub const EXIT_STEP_LIMIT: i32 = 3;
pub const EXIT_CHECKS_FAILED: i32 = 4;
pub const EXIT_INVALID: i32 = 5;

#[derive(Debug, Parser)]
#[command(
    name = "genchase",
    version,
    about = "Chase instances and queries with tgds and egds"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Validate the dependencies and run termination checks.
    Check(CheckArgs),
    /// Validate, check, then chase.
    Run(RunArgs),
}

#[derive(Debug, Args)]
struct CheckArgs {
    /// Problem file.
    input: PathBuf,
    /// Termination criteria to evaluate.
    #[arg(
        long,
        value_delimiter = ',',
        default_value = "rich,weak,safe,rewriting,rewriting-egd"
    )]
    criteria: Vec<Criterion>,
}

#[derive(Debug, Args)]
struct RunArgs {
    #[command(flatten)]
    check: CheckArgs,
    /// Stop after this many chase steps.
    #[arg(long, default_value_t = crate::chase::DEFAULT_MAX_STEPS as u64, value_parser = clap::value_parser!(u64).range(1..))]
    max_steps: u64,
    /// Chase even if a termination check fails.
    #[arg(long)]
    force: bool,
    /// Write the result here instead of standard output.
    #[arg(short = 'o')]
    out: Option<PathBuf>,
    /// Write the step log here.
    #[arg(long)]
    log: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CliCommand {
    Check,
    Run,
}

/// Parsed command line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliConfig {
    pub command: CliCommand,
    pub input_path: PathBuf,
    pub criteria: Vec<Criterion>,
    pub max_steps: usize,
    pub force: bool,
    pub out_path: Option<PathBuf>,
    pub log_path: Option<PathBuf>,
}

impl CliConfig {
    /// Parses `argv` (including the program name).
    pub fn parse_from<I, T>(argv: I) -> Result<Self, clap::Error>
    where
        I: IntoIterator<Item = T>,
        T: Into<std::ffi::OsString> + Clone,
    {
        let cli = Cli::try_parse_from(argv)?;
        let (command, check, run) = match cli.command {
            Command::Check(c) => (CliCommand::Check, c, None),
            Command::Run(r) => (
                CliCommand::Run,
                r.check,
                Some((r.max_steps, r.force, r.out, r.log)),
            ),
        };
        let mut criteria = Vec::new();
        for c in check.criteria {
            if !criteria.contains(&c) {
                criteria.push(c);
            }
        }
        let (max_steps, force, out_path, log_path) =
            run.unwrap_or((crate::chase::DEFAULT_MAX_STEPS as u64, false, None, None));
        Ok(CliConfig {
            command,
            input_path: check.input,
            criteria,
            max_steps: usize::try_from(max_steps).unwrap_or(usize::MAX),
            force,
            out_path,
            log_path,
        })
    }
}

/// Runs the command line and returns the process exit code.
pub fn run_cli<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let config = match CliConfig::parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let informational = !e.use_stderr();
            let sink: &mut dyn Write = if informational { stdout } else { stderr };
            let _ = write!(sink, "{}", e.render());
            return if informational { EXIT_OK } else { EXIT_INVALID };
        }
    };
    match execute(&config, stdout, stderr) {
        Ok(code) => code,
        Err(msg) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_INVALID
        }
    }
}

fn load(path: &Path) -> Result<ChaseProblem, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse_problem(&text).map_err(|e| format!("{}:{e}", path.display()))
}

fn write_file(path: &Path, text: &str) -> Result<(), String> {
    std::fs::write(path, text).map_err(|e| format!("{}: {e}", path.display()))
}

fn execute(
    config: &CliConfig,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<i32, String> {
    let problem = load(&config.input_path)?;
    let diagnostics = validate_constraints(&problem.dependencies, &problem.schema);
    if !diagnostics.is_empty() {
        for d in &diagnostics {
            let _ = writeln!(stderr, "{d}");
        }
        return Ok(EXIT_INVALID);
    }
    let verdicts: Vec<Verdict> = config
        .criteria
        .iter()
        .map(|c| check_termination(&problem.dependencies, *c))
        .collect();
    let passed = verdicts.iter().all(|v| v.terminates);
    let mut check_lines: Vec<String> = verdicts.iter().map(|v| v.explanation.clone()).collect();
    check_lines.push(CONSTRAINTS_OK.to_string());

    if config.command == CliCommand::Check {
        for line in &check_lines {
            let _ = writeln!(stdout, "{line}");
        }
        return Ok(if passed { EXIT_OK } else { EXIT_CHECKS_FAILED });
    }

    if !passed {
        for v in verdicts.iter().filter(|v| !v.terminates) {
            let _ = writeln!(stderr, "{}", v.explanation);
        }
        if !config.force {
            let _ = writeln!(
                stderr,
                "termination checks failed; not chasing (use --force to run anyway)"
            );
            return Ok(EXIT_CHECKS_FAILED);
        }
        let _ = writeln!(
            stderr,
            "warning: termination checks failed; chasing with at most {} steps",
            config.max_steps
        );
    }

    let outcome = run(
        &problem.dependencies,
        &problem.object,
        problem.query_head.as_ref(),
        config.max_steps,
    )
    .map_err(|e| e.to_string())?;

    let result = render_result(&outcome);
    match &config.out_path {
        Some(path) => write_file(path, &result)?,
        None => {
            let _ = write!(stdout, "{result}");
        }
    }
    if let Some(path) = &config.log_path {
        write_file(path, &write_log(&outcome.log, &check_lines))?;
    }
    Ok(match outcome.status {
        ChaseStatus::Fixpoint => EXIT_OK,
        ChaseStatus::FailedBottom | ChaseStatus::EmptyQuery => EXIT_FAILED,
        ChaseStatus::StepLimit => EXIT_STEP_LIMIT,
    })
}
