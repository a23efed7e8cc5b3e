use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected} qubits, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("basis index {index} out of range for {n} qubits")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("unsupported qubit count {0}")]
    UnsupportedQubits(usize),

    #[error("Dicke degree m={m} out of range for n={n}")]
    DegreeOutOfRange { n: usize, m: usize },

    #[error("expected {expected} coefficients, got {actual}")]
    CoefficientCount { expected: usize, actual: usize },

    #[error("coefficient {0} is zero")]
    ZeroCoefficient(usize),

    #[error("state is not symmetric under the e1<->e2 exchange")]
    NotExchangeSymmetric,

    #[error("eigenvalue {re}+{im}i is not real")]
    NonRealEigenvalue { re: f64, im: f64 },

    #[error("zero state vector")]
    ZeroVector,

    #[error("unsupported expression: {0}")]
    UnsupportedExpression(String),

    #[error("{n} qubits exceeds the enumeration bound of {max}")]
    TooManyQubits { n: usize, max: usize },

    #[error("vector {0:?} is not a unit vector")]
    NotUnit([f64; 3]),

    #[error("argument {name}={value} outside [-1, 1]")]
    OutOfRange { name: &'static str, value: f64 },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unknown identifier {0:?}")]
    UnknownId(String),
}

pub type Result<T> = std::result::Result<T, Error>;
