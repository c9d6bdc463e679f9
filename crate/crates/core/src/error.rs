use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not symmetric: entry ({row}, {col}) differs from its transpose")]
    NotSymmetric { row: usize, col: usize },

    #[error("matrix is not square or has inconsistent dimensions: {0}")]
    Shape(String),

    /// Plain LDLᵀ hit a zero pivot with a nonzero entry below it.
    #[error("zero pivot at index {0} with nonzero remainder: requires pivoted variant (use psd_rank)")]
    RequiresPivoting(usize),

    #[error("matrix is singular")]
    Singular,

    #[error("gram matrix is not positive definite")]
    NotPositiveDefinite,

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("unknown lattice {name:?}; available: {available}")]
    UnknownLattice { name: String, available: String },

    #[error("catalog data required for {0}: add a Gram file for this lattice (see `sphdesign lattices`)")]
    DataRequired(String),

    #[error("{lattice}: enumerated {found} minimal vectors, catalog expects {expected}")]
    KissingMismatch {
        lattice: String,
        found: usize,
        expected: usize,
    },

    #[error("set is not antipodal: no negation for vector {0:?}")]
    NotAntipodal(Vec<i64>),

    #[error("spectrum is not antipodal; this criterion is defined for antipodal sets")]
    SpectrumNotAntipodal,

    #[error("input contains antipodal pairs; halve the set before embedding")]
    AntipodalInput,

    #[error("set has {size} source points, over the matrix cap of {cap}; use spectrum-only mode")]
    OverCap { size: usize, cap: usize },

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("invalid argument: {0}")]
    Invalid(String),

    #[error("coordinate realization off by {err:e}, above tolerance {tol:e}")]
    Realization { err: f64, tol: f64 },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
