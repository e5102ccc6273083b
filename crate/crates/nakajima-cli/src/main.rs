//! `nakajima`: build Nakajima categories and run the library's checks from JSON files.
//!
//! Every JSON report has the shape
//! `{ "tool", "version", "seed", "mesh_sign_convention", "field", "command", "result" }`.
//! Exit codes: 0 success, 1 check failure, 2 input error, 3 resource guard.

mod check;
mod commands;
mod error;
mod input;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use crate::error::CliError;
use crate::input::InstanceArgs;

#[derive(Parser, Debug)]
#[command(name = "nakajima", version, about = "Generalized Nakajima categories of Dynkin quivers")]
pub struct Cli {
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Field: Q, F2, F3, F5 or F7. Defaults to F2 for commands that count points, Q otherwise.
    #[arg(long, global = true)]
    pub field: Option<String>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build R, S and P; write their presentations and DOT files into a directory.
    Build {
        #[command(flatten)]
        instance: InstanceArgs,
        #[arg(long, default_value = ".")]
        dir: PathBuf,
        /// Level window for the admissibility check, as `lo,hi`.
        #[arg(long, value_parser = parse_window)]
        window: Option<(i32, i32)>,
    },
    /// Presentation of R, S or P by arrows and relations.
    Present {
        #[command(flatten)]
        instance: InstanceArgs,
        #[arg(long, default_value = "S")]
        target: String,
        /// Highest degree in the Hilbert table (default: top degree or bound).
        #[arg(long)]
        degrees: Option<u32>,
    },
    /// K_L, K_R, K_LR, KK and CK of an S-module.
    Kan {
        #[command(flatten)]
        instance: InstanceArgs,
        #[arg(long)]
        module: PathBuf,
    },
    /// Stratum of an S-module, or of an R-module's closed orbit, and the degeneration order.
    Strata {
        #[command(flatten)]
        instance: InstanceArgs,
        /// S-module.
        #[arg(long)]
        module: Option<PathBuf>,
        /// Second S-module to compare with `--module`.
        #[arg(long)]
        other: Option<PathBuf>,
        /// Stable R-module whose closed-orbit normal form is wanted.
        #[arg(long)]
        r_module: Option<PathBuf>,
    },
    /// Quiver Grassmannians over a finite field.
    Grass {
        #[command(subcommand)]
        action: GrassCommand,
    },
    /// Fiber of the stratification over an S-module in stratum `v`.
    Fiber {
        #[command(flatten)]
        instance: InstanceArgs,
        #[arg(long)]
        module: PathBuf,
        #[arg(long)]
        v: PathBuf,
    },
    /// Desingularization data for `Gr_e(M)`.
    Desing {
        #[command(flatten)]
        instance: InstanceArgs,
        #[arg(long)]
        module: PathBuf,
        #[arg(long)]
        e: PathBuf,
    },
    /// Run a built-in suite; without a name, list the suites.
    Check { suite: Option<String> },
    /// Graphviz output: a window of the framed repetition quiver, or a Gabriel quiver.
    Dot {
        #[command(flatten)]
        instance: InstanceArgs,
        /// `window`, `R`, `S` or `P`.
        #[arg(long, default_value = "window")]
        target: String,
        #[arg(long, value_parser = parse_window)]
        window: Option<(i32, i32)>,
    },
}

#[derive(Subcommand, Debug)]
pub enum GrassCommand {
    /// Number of submodules with a given dimension vector.
    Count {
        #[command(flatten)]
        instance: InstanceArgs,
        #[arg(long)]
        ambient: PathBuf,
        #[arg(long)]
        dim: PathBuf,
        /// Category the ambient module lives over.
        #[arg(long, default_value = "S")]
        target: String,
    },
    /// Same as the top-level `fiber` command.
    Fiber {
        #[command(flatten)]
        instance: InstanceArgs,
        #[arg(long)]
        module: PathBuf,
        #[arg(long)]
        v: PathBuf,
    },
    /// Points of the ℒ-variety `ℒ(v, w)`.
    Lvar {
        #[command(flatten)]
        instance: InstanceArgs,
        #[arg(long)]
        v: PathBuf,
        #[arg(long)]
        w: PathBuf,
    },
}

fn parse_window(s: &str) -> Result<(i32, i32), String> {
    let (a, b) = s.split_once(',').ok_or("expected lo,hi")?;
    let lo: i32 = a.trim().parse().map_err(|e| format!("{e}"))?;
    let hi: i32 = b.trim().parse().map_err(|e| format!("{e}"))?;
    if lo > hi {
        return Err("lo must not exceed hi".into());
    }
    Ok((lo, hi))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

impl Cli {
    pub fn counts_points(&self) -> bool {
        matches!(self.command, Command::Grass { .. } | Command::Fiber { .. } | Command::Desing { .. })
    }

    pub fn field_name(&self) -> String {
        self.field.clone().unwrap_or_else(|| if self.counts_points() { "F2" } else { "Q" }.to_string())
    }
}

pub(crate) type CliResult<T> = Result<T, CliError>;
