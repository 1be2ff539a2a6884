//! Command-line frontend for the identity suites, experiments and sweeps.
//!
//! Exit codes: 0 on success, 1 when a check fails or a computation errors
//! (budget, integrity), 2 on usage errors.

mod args;
mod commands;
pub mod parse;

use std::fs::File;
use std::io::{BufWriter, Write};

use clap::{CommandFactory, FromArgMatches};

pub use args::{Cli, Command, Format};
pub use parse::{config_to_args, parse_complex, parse_int_list, parse_run_config, ConfigEntry};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Core(#[from] ffcovar::Error),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Core(ffcovar::Error::Domain(_) | ffcovar::Error::Parse(_)) => 2,
            CliError::Core(_) | CliError::Io(_) => 1,
        }
    }
}

/// Splices `key = value` entries from `--config` files in front of the
/// subcommand's own flags, so explicit flags override them.
pub fn expand_config(argv: &[String]) -> Result<Vec<String>, CliError> {
    let mut path = None;
    for (i, a) in argv.iter().enumerate() {
        if let Some(p) = a.strip_prefix("--config=") {
            path = Some(p.to_string());
        } else if a == "--config" {
            path = argv.get(i + 1).cloned();
        }
    }
    let Some(path) = path else {
        return Ok(argv.to_vec());
    };
    let text = std::fs::read_to_string(&path).map_err(|e| CliError::Usage(format!("cannot read config {path}: {e}")))?;
    let extra = config_to_args(&parse_run_config(&text)?);
    let mut out = argv.to_vec();
    if out.len() >= 2 && !out[1].starts_with('-') {
        out.splice(2..2, extra);
    }
    Ok(out)
}

fn parse_cli(argv: &[String]) -> Result<Cli, clap::Error> {
    let cmd = Cli::command()
        .args_override_self(true)
        .mut_subcommands(|s| s.args_override_self(true));
    let matches = cmd.try_get_matches_from(argv)?;
    Cli::from_arg_matches(&matches)
}

fn dispatch(cli: &Cli) -> Result<commands::Outcome, CliError> {
    match &cli.command {
        Command::Factor(a) => commands::factor(a),
        Command::Lambda(a) => commands::lambda(a),
        Command::Lfun(a) => commands::lfun(a),
        Command::Frobenius(a) => commands::frobenius(a),
        Command::Identities(a) => commands::identities(a),
        Command::Covar(a) => commands::covar(a),
        Command::Ratio(a) => commands::ratio(a),
        Command::RmtMc(a) => commands::rmt_mc(a),
        Command::Sweep(a) => commands::sweep(a),
    }
}

fn execute(cli: &Cli, stdout: &mut dyn Write) -> Result<Vec<String>, CliError> {
    let common = cli.command.common();
    commands::tolerances(common)?;
    let pool = match common.threads {
        Some(0) => return Err(CliError::Usage("--threads must be at least 1".into())),
        Some(n) => rayon::ThreadPoolBuilder::new().num_threads(n).build(),
        None => rayon::ThreadPoolBuilder::new().build(),
    }
    .map_err(|e| CliError::Usage(e.to_string()))?;
    let outcome = pool.install(|| dispatch(cli))?;
    let write = outcome.rows;
    match &common.out {
        Some(path) => {
            let mut f = BufWriter::new(File::create(path)?);
            write(common.format, &mut f)?;
            f.flush()?;
        }
        None => write(common.format, stdout)?,
    }
    Ok(outcome.failures)
}

/// Runs the tool on `argv` (including the program name) and returns the
/// process exit code.
pub fn run(argv: &[String], stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let argv = match expand_config(argv) {
        Ok(a) => a,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return e.exit_code();
        }
    };
    let cli = match parse_cli(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 { write!(stdout, "{rendered}") } else { write!(stderr, "{rendered}") };
            return code;
        }
    };
    match execute(&cli, stdout) {
        Ok(failures) if failures.is_empty() => 0,
        Ok(failures) => {
            for f in &failures {
                let _ = writeln!(stderr, "check failed: {f}");
            }
            1
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}
