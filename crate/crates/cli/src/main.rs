//! `convgoppa`: build, analyze, dualize and sweep convolutional Goppa codes.

mod commands;
mod error;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "convgoppa",
    version,
    about = "Convolutional Goppa codes over the projective line"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Field as `p`, `p^m` (tabulated modulus) or `p^m:c0,c1,...,cm`.
    #[arg(long, global = true)]
    pub field: Option<String>,

    /// Output path; for `sweep` a file stem receiving `.csv` and `.json`.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Largest message degree searched; defaults to `n + delta`.
    #[arg(long, global = true)]
    pub jmax: Option<usize>,

    /// Node budget of the free-distance search.
    #[arg(long, global = true)]
    pub budget: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Field parameters, or one arithmetic operation.
    Field {
        #[arg(long, value_enum)]
        op: Option<FieldCmd>,
        /// Operands; `pow` takes an element and an integer exponent.
        #[arg(long, value_delimiter = ',', num_args = 1..)]
        args: Vec<String>,
    },
    /// Construct a code and write it as a code file.
    Build {
        #[command(subcommand)]
        kind: BuildKind,
    },
    /// Degrees, basic/canonical flags, free distance and MDS verdict of a code file.
    Analyze { code: PathBuf },
    /// Parity-check matrix of a Goppa spec and the degree of the dual code.
    Dual { spec: PathBuf },
    /// Analyze every one-dimensional subcode of a Goppa spec.
    Sweep { spec: PathBuf },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FieldCmd {
    Add,
    Sub,
    Neg,
    Mul,
    Inv,
    Pow,
    Order,
    Primitive,
}

#[derive(Debug, Subcommand)]
pub enum BuildKind {
    /// Row `a_i^r (z + c^{i-1})^r`, i = 1..n.
    #[command(name = "thm-sr", visible_alias = "power")]
    PowerFamily {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        r: usize,
        /// Scalars a_1..a_n; a single value is repeated n times.
        #[arg(long, value_delimiter = ',', num_args = 1.., required = true)]
        a: Vec<String>,
        /// Primitive element; the least one by default.
        #[arg(long)]
        c: Option<String>,
    },
    /// Row `sum_{m<=r} (a^{i-1} z + b)^m`, i = 1..n.
    #[command(name = "thm-s0", visible_alias = "geometric")]
    GeometricFamily {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// The `b = 0` case of `thm-s0`.
    #[command(name = "gl", visible_alias = "unshifted")]
    Unshifted {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        a: String,
    },
    /// The code spanned by `sum lambda_i t^i` for a Goppa spec file.
    Custom {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, value_delimiter = ',', num_args = 1.., required = true)]
        lambda: Vec<String>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
