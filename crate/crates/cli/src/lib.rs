//! Command-line front end: workspace documents in, reports out.

pub mod commands;
pub mod json;
pub mod text;
pub mod workspace;

use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

pub use workspace::Workspace;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    /// Unreadable or invalid input; exit code 1.
    Input(String),
    /// Two independent computations disagree; exit code 2.
    Consistency(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 1,
            CliError::Consistency(_) => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(e) => write!(f, "input error: {e}"),
            CliError::Consistency(e) => write!(f, "consistency violation: {e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<coalg::Error> for CliError {
    fn from(e: coalg::Error) -> Self {
        match e {
            coalg::Error::Consistency(msg) => CliError::Consistency(msg),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<coalg::linear::LinearError> for CliError {
    fn from(e: coalg::linear::LinearError) -> Self {
        CliError::from(coalg::Error::from(e))
    }
}

#[derive(Debug, Parser)]
#[command(name = "coalg", version, about = "Pointed coalgebras inside path coalgebras of quivers")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Truncation N for every length-bounded computation.
    #[arg(long, global = true, env = "COALG_TRUNCATE")]
    pub truncate: Option<usize>,
    /// Write machine-readable JSON to this file (`-` for standard output).
    #[arg(long, global = true, value_name = "FILE")]
    pub json: Option<PathBuf>,
    /// Write a Graphviz DOT graph to this file (`-` for standard output).
    #[arg(long, global = true, value_name = "FILE")]
    pub dot: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classification, dimensions, Gabriel quiver and invariant checks.
    Analyze {
        /// Workspace JSON document.
        workspace: PathBuf,
    },
    /// Wedge of two named subcoalgebras inside C.
    Wedge {
        /// Workspace JSON document.
        workspace: PathBuf,
        /// Name of the left factor; `C` is the coalgebra itself.
        #[arg(long)]
        left: String,
        /// Name of the right factor.
        #[arg(long)]
        right: String,
    },
    /// Valued Gabriel quiver by wedges.
    Gabriel {
        /// Workspace JSON document.
        workspace: PathBuf,
    },
    /// Localization eCe at a vertex set.
    Localize {
        /// Workspace JSON document.
        workspace: PathBuf,
        /// Comma-separated vertex names.
        #[arg(long, value_delimiter = ',', required = true)]
        keep: Vec<String>,
    },
    /// Coradical filtration and predecessor counts up to depth `max`.
    Filtration {
        /// Workspace JSON document.
        workspace: PathBuf,
        /// Deepest layer to report.
        #[arg(long)]
        max: usize,
    },
    /// Semiprime, prime, hereditary, serial and string verdicts.
    Classify {
        /// Workspace JSON document.
        workspace: PathBuf,
    },
    /// Runs every cross-check on the instance.
    Check {
        /// Workspace JSON document.
        workspace: PathBuf,
    },
}

impl Command {
    fn workspace(&self) -> &Path {
        match self {
            Command::Analyze { workspace }
            | Command::Wedge { workspace, .. }
            | Command::Gabriel { workspace }
            | Command::Localize { workspace, .. }
            | Command::Filtration { workspace, .. }
            | Command::Classify { workspace }
            | Command::Check { workspace } => workspace,
        }
    }

    fn name(&self) -> &'static str {
        match self {
            Command::Analyze { .. } => "analyze",
            Command::Wedge { .. } => "wedge",
            Command::Gabriel { .. } => "gabriel",
            Command::Localize { .. } => "localize",
            Command::Filtration { .. } => "filtration",
            Command::Classify { .. } => "classify",
            Command::Check { .. } => "check",
        }
    }
}

pub fn load(path: &Path, truncate: Option<usize>) -> Result<Workspace, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let mut ws = Workspace::parse(&text).map_err(|e| match e {
        CliError::Input(msg) => CliError::Input(format!("{}: {msg}", path.display())),
        other => other,
    })?;
    if let Some(n) = truncate {
        ws.truncation = n;
        ws.validate()?;
    }
    Ok(ws)
}

fn emit(target: &Path, content: &str, stdout: &mut dyn Write) -> Result<(), CliError> {
    let res = if target == Path::new("-") {
        stdout.write_all(content.as_bytes())
    } else {
        std::fs::write(target, content)
    };
    res.map_err(|e| CliError::Input(format!("cannot write {}: {e}", target.display())))
}

/// Runs one command, writing the report to `stdout`.
pub fn run(cli: &Cli, stdout: &mut dyn Write) -> Result<(), CliError> {
    let ws = load(cli.command.workspace(), cli.truncate)?;
    let outcome = match &cli.command {
        Command::Analyze { .. } => commands::analyze(&ws)?,
        Command::Wedge { left, right, .. } => commands::wedge(&ws, left, right)?,
        Command::Gabriel { .. } => commands::gabriel(&ws)?,
        Command::Localize { keep, .. } => commands::localize(&ws, keep)?,
        Command::Filtration { max, .. } => commands::filtration(&ws, *max)?,
        Command::Classify { .. } => commands::classify(&ws)?,
        Command::Check { .. } => commands::check(&ws)?,
    };
    stdout
        .write_all(outcome.text.as_bytes())
        .map_err(|e| CliError::Input(format!("cannot write output: {e}")))?;
    if let (Some(target), Some(j)) = (&cli.json, &outcome.json) {
        emit(target, j, stdout)?;
    }
    if let Some(target) = &cli.dot {
        let dot = outcome
            .dot
            .as_ref()
            .ok_or_else(|| CliError::Input(format!("{} has no graph to draw", cli.command.name())))?;
        emit(target, dot, stdout)?;
    }
    if !outcome.violations.is_empty() {
        return Err(CliError::Consistency(outcome.violations.join("; ")));
    }
    Ok(())
}
