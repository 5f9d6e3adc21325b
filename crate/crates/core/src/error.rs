use thiserror::Error;

use crate::channel::ChannelPhase;
use crate::qubit::QubitId;

#[derive(Debug, Error)]
pub enum Error {
    #[error("duplicate qubit label {0}")]
    DuplicateQubit(QubitId),

    #[error("qubit {0} is not part of the state")]
    UnknownQubit(QubitId),

    #[error("control and target are both {0}")]
    SameControlTarget(QubitId),

    #[error("dense representation supports at most {max} qubits, got {got}")]
    TooManyQubits { max: usize, got: usize },

    #[error("amplitude vector has length {got}, expected {expected}")]
    BadLength { expected: usize, got: usize },

    #[error("state is not normalized: squared norm {0}")]
    NotNormalized(f64),

    #[error("amplitude at index {0} is not finite")]
    NonFinite(usize),

    #[error("basis vectors {i} and {j} are not orthonormal (overlap {overlap})")]
    NonOrthonormalBasis { i: usize, j: usize, overlap: f64 },

    #[error("basis vector {0} does not share the state's qubit order")]
    BasisOrderMismatch(usize),

    #[error("invalid subsystem selection: {0}")]
    InvalidSubsystem(String),

    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("states are not orthogonal (overlap {0})")]
    NotOrthogonal(f64),

    #[error("symbol {symbol} out of range for an alphabet of {size}")]
    SymbolOutOfRange { symbol: u8, size: usize },

    #[error("parameter domain violation: {0}")]
    Domain(String),

    #[error("phase violation during {phase}: qubit {qubit} is not accessible")]
    PhaseViolation { phase: ChannelPhase, qubit: QubitId },

    #[error("efficiency undefined: qubits + classical bits is zero")]
    ZeroDenominator,

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code used by the command-line driver.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Io(_) => 3,
            Error::Invariant(_) | Error::NotNormalized(_) | Error::NonFinite(_) => 4,
            _ => 2,
        }
    }
}
