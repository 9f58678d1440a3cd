//! Command-line front end for `ybe-core`.

pub mod commands;
pub mod format;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ybe_core::ValidationMode;

#[derive(Parser, Debug)]
#[command(name = "ybe", version, about = "Cycle sets, braces and Yang-Baxter solutions")]
pub struct Cli {
    /// Prose output with a timestamp instead of stable key: value lines.
    #[arg(long, global = true)]
    pub human: bool,
    /// Worker threads for enumerations.
    #[arg(long, global = true, default_value_t = 1)]
    pub threads: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Validate a document and report its properties.
    Check {
        file: PathBuf,
        /// Condition used for cons documents.
        #[arg(long, default_value = "direct")]
        mode: Mode,
    },
    /// Convert between cycle-set, quantum, braid and brace forms.
    Convert {
        #[arg(long)]
        to: String,
        file: PathBuf,
    },
    /// Print the retraction tower and multipermutation level.
    Retract { file: PathBuf },
    /// Emit the dual cycle set or dual solution.
    Dual { file: PathBuf },
    /// Structure-group checks and the retracted extension A(X).
    Sgp {
        file: PathBuf,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        bound: i64,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        /// Write A(X) as a brace document.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Validate construction parameters, build and verify the cycle set.
    Construct {
        file: PathBuf,
        #[arg(long, default_value = "direct")]
        mode: Mode,
        /// Write the built table as a bop document.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Enumerate cycle sets or construction outputs.
    #[command(subcommand)]
    Enumerate(EnumerateCommand),
}

#[derive(Subcommand, Debug)]
pub enum EnumerateCommand {
    /// All cycle sets of a given size.
    CycleSets(CycleSetArgs),
    /// The construction search over chains and function families.
    Construct(ConstructArgs),
}

#[derive(Args, Debug)]
pub struct CycleSetArgs {
    #[arg(short = 'n')]
    pub n: usize,
    #[arg(long, default_value = "all")]
    pub filter: Filter,
    /// Keep only lexicographically least relabelings.
    #[arg(long)]
    pub canonical: bool,
}

#[derive(Args, Debug)]
pub struct ConstructArgs {
    #[arg(short = 'p')]
    pub p: u64,
    #[arg(short = 'k')]
    pub k: u32,
    /// Multipermutation level.
    #[arg(short = 'n')]
    pub level: usize,
    #[arg(long, default_value = "direct")]
    pub mode: Mode,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Mode {
    Paper,
    Direct,
}

impl From<Mode> for ValidationMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Paper => ValidationMode::Paper,
            Mode::Direct => ValidationMode::Direct,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Filter {
    All,
    Nondegenerate,
    Indecomposable,
    Irretractable,
}

pub use commands::{run, Outcome};
