//! Error type shared by the whole crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A generator entry is exactly zero, so the matrix admits no
    /// triangular factorization and no diagonal inverse oracle.
    #[error("generator has a zero entry at index {index}; no triangular factorization exists")]
    ZeroGenerator { index: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("length {len} is not a power of two")]
    NotPowerOfTwo { len: usize },

    #[error("length {len} is not a power of four")]
    NotPowerOfFour { len: usize },

    #[error("circuit width {width} exceeds the dense-unitary cap of {max} qubits")]
    WidthTooLarge { width: usize, max: usize },

    #[error("simulation needs {qubits} qubits, above the cap of {max}")]
    ResourceLimit { qubits: usize, max: usize },

    #[error("diagonal oracle needs a nonzero entry, all entries are zero")]
    AllZeroDiagonal,

    #[error("diagonal entry {index} is zero, cannot build an inverse oracle")]
    ZeroDiagonalEntry { index: usize },

    #[error("LCU branches must share a scale: {left} vs {right}")]
    ScaleMismatch { left: f64, right: f64 },

    #[error("system-size mismatch: {left} vs {right} qubits")]
    SystemSizeMismatch { left: usize, right: usize },

    #[error("ancilla-count mismatch: {left} vs {right}")]
    AncillaMismatch { left: usize, right: usize },

    #[error("matrix too ill-conditioned to invert (cond = {cond:.3e})")]
    IllConditioned { cond: f64 },

    #[error("measured error {measured:.6e} exceeds the analytic bound {bound:.6e}")]
    BoundViolation { measured: f64, bound: f64 },

    #[error("fixed-point register of {digits} fractional digits exceeds f64 precision")]
    PrecisionOverflow { digits: u32 },

    #[error("block extraction hit an imaginary amplitude of {imag:.3e}; circuit is not real")]
    ComplexLeak { imag: f64 },

    #[error("invalid gate: {0}")]
    InvalidGate(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("invalid generator file: {0}")]
    InvalidInput(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Stable machine-readable code, used by the CLI on stderr.
    pub fn code(&self) -> &'static str {
        match self {
            Error::ZeroGenerator { .. } => "E_ZERO_GENERATOR",
            Error::DimensionMismatch { .. } => "E_DIMENSION",
            Error::NotPowerOfTwo { .. } => "E_NOT_POWER_OF_TWO",
            Error::NotPowerOfFour { .. } => "E_NOT_POWER_OF_FOUR",
            Error::WidthTooLarge { .. } => "E_WIDTH",
            Error::ResourceLimit { .. } => "E_RESOURCE",
            Error::AllZeroDiagonal => "E_ZERO_DIAGONAL",
            Error::ZeroDiagonalEntry { .. } => "E_ZERO_DIAGONAL",
            Error::ScaleMismatch { .. } => "E_SCALE_MISMATCH",
            Error::SystemSizeMismatch { .. } => "E_SYSTEM_SIZE",
            Error::AncillaMismatch { .. } => "E_ANCILLA_COUNT",
            Error::IllConditioned { .. } => "E_ILL_CONDITIONED",
            Error::BoundViolation { .. } => "E_BOUND_VIOLATION",
            Error::PrecisionOverflow { .. } => "E_PRECISION",
            Error::ComplexLeak { .. } => "E_COMPLEX_LEAK",
            Error::InvalidGate(_) => "E_GATE",
            Error::InvalidConfig(_) => "E_CONFIG",
            Error::InvalidInput(_) => "E_INPUT",
            Error::Io(_) => "E_IO",
            Error::Json(_) => "E_INPUT",
        }
    }

    /// Process exit code for the CLI.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::ZeroGenerator { .. } => 2,
            Error::ResourceLimit { .. } | Error::WidthTooLarge { .. } => 3,
            Error::InvalidInput(_)
            | Error::Json(_)
            | Error::InvalidConfig(_)
            | Error::NotPowerOfTwo { .. }
            | Error::NotPowerOfFour { .. }
            | Error::DimensionMismatch { .. } => 4,
            Error::IllConditioned { .. } | Error::BoundViolation { .. } => 5,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
