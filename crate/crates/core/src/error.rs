use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("matrix dimension must be at least 1")]
    EmptyMatrix,

    #[error("expected {expected} entries for a {dim}x{dim} matrix, got {got}")]
    EntryCount {
        dim: usize,
        expected: usize,
        got: usize,
    },

    #[error("matrix entry ({row}, {col}) is not finite")]
    NonFiniteEntry { row: usize, col: usize },

    #[error("matrix is singular at pivot {pivot}")]
    Singular { pivot: usize },

    #[error("eta must be positive and finite, got {0}")]
    InvalidEta(f64),

    #[error("antenna count n must be at least 1")]
    InvalidAntennaCount,

    #[error("SNR must be finite, got {0}")]
    InvalidSnr(f64),

    #[error("derivative order must be 1, 2 or 3, got {0}")]
    InvalidOrder(u8),

    #[error("E1 argument must be positive, got {0}")]
    InvalidE1Argument(f64),

    #[error("degenerate bracket [{lo}, {hi}]")]
    DegenerateBracket { lo: f64, hi: f64 },

    #[error("invalid grid: rho_min={min}, rho_max={max}, step={step}")]
    InvalidGrid { min: f64, max: f64, step: f64 },

    #[error("at least 2 samples are required, got {0}")]
    TooFewSamples(usize),

    #[error("standard error is zero; z-score undefined")]
    ZeroStdErr,
}
