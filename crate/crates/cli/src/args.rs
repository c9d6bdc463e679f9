use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use sphdesign::embed::DEFAULT_MATRIX_CAP;

#[derive(Debug, Parser)]
#[command(
    name = "sphdesign",
    version,
    about = "Exact certificates for spherical designs from lattice shells and their degree-2 embeddings"
)]
pub struct Cli {
    /// Worker threads for enumeration and pair passes.
    #[arg(long, global = true, env = "SPHDESIGN_THREADS")]
    pub threads: Option<usize>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Write the report (or data product) here instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,

    /// Render rationals as decimals with K digits.
    #[arg(long, global = true, value_name = "K")]
    pub decimal: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the built-in lattice catalog.
    Lattices,
    /// Enumerate minimal vectors; --output writes them as a vector-set file.
    Minvec {
        #[command(flatten)]
        input: Input,
    },
    /// Exact inner-product distribution over all ordered pairs.
    Spectrum {
        #[command(flatten)]
        input: Input,
    },
    /// Design strength, moment criteria and the embedded 3-design check.
    Verify {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        analysis: AnalysisArgs,
    },
    /// Spectrum and code parameters of the embedded set.
    Embed {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        analysis: AnalysisArgs,
    },
    /// Recompute a published table and compare row by row.
    Reproduce {
        /// Table number (1, 2 or 3).
        #[arg(long)]
        example: u8,
        #[command(flatten)]
        analysis: AnalysisArgs,
    },
    /// Float coordinates of the embedded points in R^D.
    ExportCoords {
        #[command(flatten)]
        input: Input,
        /// Digits after the decimal point; every inner product is checked to this accuracy.
        #[arg(long, default_value_t = 12)]
        precision: usize,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = DEFAULT_MATRIX_CAP)]
        cap: usize,
    },
}

#[derive(Debug, Args)]
pub struct Input {
    #[command(flatten)]
    pub source: Source,
    /// Gram matrix of the basis used by --vectors-file (default: identity).
    #[arg(long, requires = "vectors_file")]
    pub vectors_gram: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[group(id = "source", required = true, multiple = false)]
pub struct Source {
    /// Catalog lattice name (see `lattices`).
    #[arg(long)]
    pub lattice: Option<String>,
    /// Gram matrix file; its minimal vectors are enumerated.
    #[arg(long)]
    pub gram_file: Option<PathBuf>,
    /// Vector-set file (`rank N min_norm` header, then integer rows).
    #[arg(long)]
    pub vectors_file: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct AnalysisArgs {
    /// Highest Gegenbauer degree tested for design strength.
    #[arg(long, default_value_t = 11)]
    pub t_max: usize,
    /// Halve antipodal sets with this seed instead of the canonical rule.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Also certify the exact embedded Gram matrix (PSD, rank = dim Harm_2).
    #[arg(long)]
    pub rank_certificate: bool,
    /// Largest halved set for which the embedded Gram matrix is built.
    #[arg(long, default_value_t = DEFAULT_MATRIX_CAP)]
    pub cap: usize,
}
