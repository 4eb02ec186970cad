//! `zassenhaus` command-line tool.
//!
//! Exit status: 0 success, 1 verification failure, 2 usage error,
//! 3 internal error.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use zassenhaus_core::Orientation;

#[derive(Debug, Parser)]
#[command(
    name = "zassenhaus",
    version,
    about = "Exact Zassenhaus exponents, oracles and convergence bounds"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Latex,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OrientationArg {
    Right,
    Left,
}

impl From<OrientationArg> for Orientation {
    fn from(o: OrientationArg) -> Self {
        match o {
            OrientationArg::Right => Orientation::Right,
            OrientationArg::Left => Orientation::Left,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Associative,
    Matrix,
    Independence,
    All,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compute C_2 .. C_N.
    Compute {
        #[arg(long)]
        max_degree: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long, value_enum, default_value = "right")]
        orientation: OrientationArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the verification oracles and print a JSON report.
    Verify {
        #[arg(long)]
        max_degree: usize,
        #[arg(long, value_enum, default_value = "associative")]
        mode: ModeArg,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Scan the upper boundary of the convergence domain, or test one point.
    Domain {
        #[arg(long, default_value_t = 1000)]
        n_max: usize,
        /// `lo:hi:count`, geometric spacing in x.
        #[arg(long, default_value = "0.001:3:200")]
        grid: String,
        /// Single `x,y` query instead of a scan.
        #[arg(long)]
        point: Option<String>,
        /// Bisection tolerance in y.
        #[arg(long, default_value_t = 1e-3)]
        tolerance: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the earlier convergence radii for comparison.
    Radii,
    /// Time the computation of C_2 .. C_N and report term counts as JSON.
    Bench {
        #[arg(long)]
        max_degree: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Compute {
            max_degree,
            format,
            orientation,
            out,
        } => commands::compute(max_degree, format, orientation.into(), out.as_deref()),
        Command::Verify {
            max_degree,
            mode,
            seed,
            out,
        } => commands::verify(max_degree, mode, seed, out.as_deref()),
        Command::Domain {
            n_max,
            grid,
            point,
            tolerance,
            out,
        } => commands::domain(n_max, &grid, point.as_deref(), tolerance, out.as_deref()),
        Command::Radii => commands::radii(),
        Command::Bench { max_degree, out } => commands::bench(max_degree, out.as_deref()),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
