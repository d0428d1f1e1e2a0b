//! The `glens` command line: argument definitions and command dispatch.
//!
//! [`execute`] is pure apart from reading inputs and writing an optional
//! output file, and returns the canonical report body with its exit code.

mod commands;
pub mod doc;
pub mod report;

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

pub use doc::{BuiltinSmc, SmcDoc, SmcSpec};
pub use report::{CheckEntry, ErrorKind, RunReport, Status};

use crate::limit::Limit;

#[derive(Debug, Clone, Parser)]
#[command(name = "glens", version, about = "Law checking and simulation for finite lens categories")]
pub struct Cli {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Resource bound on enumerations.
    #[arg(long, global = true, env = "GLENS_LIMIT")]
    pub limit: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Check the laws of a category, indexed category, or monoidal category file.
    Laws {
        #[arg(long, value_enum)]
        kind: LawKind,
        input: PathBuf,
    },
    /// Build several presentations of a lens category and check they are isomorphic.
    Iso {
        #[arg(long, value_enum)]
        construction: Construction,
        input: PathBuf,
    },
    /// Compose two lens files.
    Compose {
        #[arg(long, value_enum)]
        kind: LensKind,
        first: PathBuf,
        second: PathBuf,
        /// Write the composite here and print a report instead.
        #[arg(long, short)]
        output: Option<PathBuf>,
        /// Emit a classic composite with source ⟨S|S⟩ as a machine.
        #[arg(long, value_enum, default_value_t = Emit::Lens)]
        emit: Emit,
    },
    /// Run a Moore machine on a word of inputs.
    Simulate {
        /// A machine file or a classic lens file with source ⟨S|S⟩.
        machine: PathBuf,
        /// Comma-separated input indices.
        #[arg(long, default_value = "", allow_hyphen_values = true)]
        inputs: String,
        #[arg(long, default_value_t = 0)]
        initial: usize,
        /// Re-run through lens composition and require agreement.
        #[arg(long)]
        oracle: bool,
    },
    /// Enumerate every comonoid structure on an object of a built-in category.
    EnumerateComonoids {
        #[arg(long, value_enum)]
        smc: BuiltinSmc,
        #[arg(long)]
        size: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LawKind {
    Category,
    Indexed,
    Smc,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Construction {
    Tfae,
    RecoverUsual,
    TwistedArrow,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LensKind {
    /// `glens/v1/classic-lens`
    Classic,
    /// `glens/v1/prism`
    Prism,
    /// `glens/v1/dep-lens`: lenses over families of finite sets.
    Generic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Emit {
    Lens,
    Machine,
}

/// What a command prints on stdout and the process exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub code: u8,
    /// Human-readable failure summary for stderr.
    pub diagnostic: Option<String>,
}

pub fn execute(cli: &Cli) -> Outcome {
    let limit = cli.limit.map(Limit).unwrap_or_default();
    let result = commands::run(&cli.command, limit);
    let report = match result {
        commands::Output::Report(r) => *r,
        commands::Output::Document(text) => {
            return Outcome {
                stdout: text,
                code: 0,
                diagnostic: None,
            }
        }
    };
    let stdout = match cli.format {
        Format::Text => report.to_text(),
        Format::Json => report.to_json(),
    };
    let diagnostic = report.error.as_ref().map(|e| e.message.clone()).or_else(|| {
        report
            .checks
            .iter()
            .find(|c| c.status != Status::Pass)
            .map(|c| format!("check {} failed with {} violations", c.name, c.violations))
    });
    Outcome {
        stdout,
        code: report.exit_code(),
        diagnostic,
    }
}
