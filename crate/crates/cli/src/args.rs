use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use cbv_core::ym::{CubicReading, CubicSign, CubicVariant};

#[derive(Debug, Parser)]
#[command(
    name = "cbv",
    version,
    about = "Exact checks for homotopy coexact BV algebras"
)]
pub struct Cli {
    /// Seed for every random sample.
    #[arg(long, global = true, env = "CBV_SEED")]
    pub seed: Option<u64>,

    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    /// One JSON record per check.
    Structured,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Verify a structure file.
    Verify {
        file: PathBuf,
        /// Order at which the set is classified; defaults to the file's truncation.
        #[arg(long)]
        truncation: Option<u32>,
        #[arg(long, default_value_t = 5)]
        max_arity: usize,
        /// Polynomial degree of the words used by pointwise checks.
        #[arg(long, default_value_t = 2)]
        poly_degree: u32,
        /// Also check the relations between obstruction maps.
        #[arg(long)]
        relations: bool,
    },
    /// Print the specialized obstruction formulas of one weight.
    Table {
        #[arg(long)]
        weight: u32,
        /// Compare with the reference rows on random admissible generators.
        #[arg(long)]
        check: bool,
        /// Compare with the corrected rows instead of the verbatim ones.
        #[arg(long, requires = "check")]
        corrected: bool,
        #[arg(long, default_value_t = 25)]
        trials: usize,
    },
    /// List the decorated straight shuffles for block sizes q <= p.
    Shuffles {
        #[arg(long, value_delimiter = ',', required = true)]
        q: Vec<usize>,
        #[arg(long, value_delimiter = ',', required = true)]
        p: Vec<usize>,
    },
    /// Build and verify the Yang-Mills kinematic algebra.
    Ym {
        #[arg(long, default_value_t = cbv_core::ym::DEFAULT_DIM)]
        dim: usize,
        #[arg(long, default_value_t = 2)]
        poly_degree: u32,
        #[arg(long, default_value_t = 5)]
        max_arity: usize,
        /// `zero`, `random`, or a structure file with one map named `theta3`.
        #[arg(long, default_value = "zero")]
        theta3: String,
        #[arg(long, value_enum, default_value_t = Cubic::Shipped)]
        cubic: Cubic,
        /// Write the generating set as a structure file.
        #[arg(long)]
        export: Option<PathBuf>,
    },
}

/// Readings of the cubic product.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Cubic {
    /// `η_{μν}`, sign opposite to the printed table.
    Shipped,
    /// The table as printed.
    Literal,
    /// `η_{μν}` with the printed sign.
    MuNuPrintedSign,
    /// `η_{νν}` with the opposite sign.
    PrintedOppositeSign,
}

impl From<Cubic> for CubicReading {
    fn from(c: Cubic) -> Self {
        let (variant, sign) = match c {
            Cubic::Shipped => (CubicVariant::MuNu, CubicSign::Opposite),
            Cubic::Literal => (CubicVariant::Printed, CubicSign::AsPrinted),
            Cubic::MuNuPrintedSign => (CubicVariant::MuNu, CubicSign::AsPrinted),
            Cubic::PrintedOppositeSign => (CubicVariant::Printed, CubicSign::Opposite),
        };
        CubicReading { variant, sign }
    }
}
