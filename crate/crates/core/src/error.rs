use thiserror::Error;

/// Errors raised by the numerical routines, constructors and the harness.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not Hermitian (max asymmetry {asymmetry:.3e})")]
    NotHermitian { asymmetry: f64 },

    #[error("eigen-solver did not converge after {sweeps} sweeps")]
    NoConvergence { sweeps: usize },

    #[error("matrix is not positive semidefinite (min eigenvalue {min_eigenvalue:.3e})")]
    NotPsd { min_eigenvalue: f64 },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("argument {value} outside [{min}, {max}]")]
    OutOfRange { value: f64, min: f64, max: f64 },

    #[error("lambda {0} is too close to 1")]
    LambdaNearOne(f64),

    #[error("lambda {0} outside the admissible range {1}")]
    LambdaOutOfRange(f64, &'static str),

    #[error("argument must be positive, got {0}")]
    NonpositiveArgument(f64),

    #[error("qubit index {index} out of range for {qubits} qubits")]
    IndexOutOfRange { index: usize, qubits: usize },

    #[error("control and target qubit coincide ({0})")]
    SameQubit(usize),

    #[error("matrix is not unitary (residual {residual:.3e})")]
    NotUnitary { residual: f64 },

    #[error("state is not normalized (norm {norm})")]
    NotNormalized { norm: f64 },

    #[error("invalid POVM: {0}")]
    InvalidPovm(String),

    #[error("invalid density matrix: {0}")]
    InvalidDensity(String),

    #[error("superposition has vanishing norm ({norm:.3e})")]
    NullSuperposition { norm: f64 },

    #[error("states have vanishing overlap; the cross term diverges")]
    ZeroOverlap,

    #[error("configuration error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
