use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a supported prime (expected a prime between 2 and 13)")]
    InvalidPrime(u32),

    #[error("degree {degree} exceeds the configured cap {cap}")]
    CapExceeded { degree: u32, cap: u32 },

    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: u32, right: u32 },

    #[error("element is not homogeneous")]
    NotHomogeneous,

    #[error("word {0} is not admissible")]
    NotAdmissible(String),

    #[error("basis theorem violated in degree {degree}: change-of-basis rank {rank} < {dim}")]
    BasisTheoremViolated { degree: u32, rank: usize, dim: usize },

    #[error("map is not an isomorphism: {0}")]
    NotInvertible(String),

    #[error("degree {degree} is not of the form {expected}")]
    BadDegree { degree: u32, expected: String },

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("the zero element has no excess")]
    ZeroElement,

    #[error("module is not unstable: {0}")]
    NotUnstable(String),

    #[error("power series is not strict (leading coefficient must be 1)")]
    NonStrict,

    #[error("degree constraint violated: {0}")]
    DegreeConstraint(String),

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Invalid(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
