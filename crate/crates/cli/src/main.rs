mod commands;
mod file;
mod report;
mod syntax;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use nlie::cohomology::Coefficients;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("i/o error: {0}")]
    Io(String),
    #[error(transparent)]
    Compute(#[from] nlie::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Compute(_) => 1,
            _ => 2,
        }
    }
}

/// Exact computations with n-Lie algebras stored as JSON bracket tables.
#[derive(Parser)]
#[command(name = "nlie", version)]
struct Cli {
    /// Print the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum CoeffArg {
    Adjoint,
    Scalar,
}

#[derive(Subcommand)]
enum Command {
    /// Check the fundamental identity and the argument order of a file.
    Check {
        file: PathBuf,
        /// Also save the file in canonical form.
        #[arg(long)]
        write_canonical: Option<PathBuf>,
    },
    /// Basis of the space of traces.
    Traces { file: PathBuf },
    /// Build the (n+1)-ary algebra induced by a trace.
    Induce {
        file: PathBuf,
        /// `1,0,1,0`, `x1+x3` or a preset such as `M5:x1`.
        #[arg(long)]
        trace: String,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Derived and central series, center and invariants.
    Structure { file: PathBuf },
    /// Cocycles, coboundaries and cohomology in degree 1 or 2.
    Cohomology {
        file: PathBuf,
        #[arg(long, default_value_t = 1)]
        degree: usize,
        #[arg(long, value_enum, default_value = "adjoint")]
        coefficients: CoeffArg,
        /// Include bases in coordinates.
        #[arg(long)]
        basis: bool,
    },
    /// Central extension by a scalar 2-cocycle such as `[1,2]=1; [2,4]=-1`.
    Extend {
        file: PathBuf,
        #[arg(long)]
        cocycle: String,
        /// Extend the induced algebra by the induced cocycle instead.
        #[arg(long)]
        trace: Option<String>,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Test whether the algebra is induced, in the given basis.
    Recognize { file: PathBuf },
    /// Export catalog entries, e.g. `lie4/M8`, `filippov/n=3/3b`, `bai/n=3/4e?beta=2`.
    Catalog {
        selector: String,
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Run the acceptance criteria and compare with the reference values.
    Reproduce {
        /// Run only these criteria (1-11).
        #[arg(long, value_delimiter = ',')]
        only: Vec<usize>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Check {
            file,
            write_canonical,
        } => commands::check(file, write_canonical.as_ref()),
        Command::Traces { file } => commands::traces(file),
        Command::Induce { file, trace, out } => commands::induce_cmd(file, trace, out.as_ref()),
        Command::Structure { file } => commands::structure(file),
        Command::Cohomology {
            file,
            degree,
            coefficients,
            basis,
        } => {
            let coeff = match coefficients {
                CoeffArg::Adjoint => Coefficients::Adjoint,
                CoeffArg::Scalar => Coefficients::Scalar,
            };
            commands::cohomology(file, *degree, coeff, *basis)
        }
        Command::Extend {
            file,
            cocycle,
            trace,
            out,
        } => commands::extend(file, cocycle, trace.as_deref(), out.as_ref()),
        Command::Recognize { file } => commands::recognize(file),
        Command::Catalog { selector, out_dir } => commands::catalog_cmd(selector, out_dir.as_ref()),
        Command::Reproduce { only } => commands::reproduce_cmd(only),
    };
    match outcome {
        Ok(report) => {
            let text = if cli.json {
                report.to_json() + "\n"
            } else {
                report.to_text()
            };
            // a closed pipe (e.g. `| head`) is not an error
            let _ = std::io::stdout().lock().write_all(text.as_bytes());
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
