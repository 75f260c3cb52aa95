use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("matrix is not Hermitian (max |H - H^dagger| = {0:e})")]
    NonHermitianInput(f64),
    #[error("matrix is not positive semidefinite (eigenvalue {0:e})")]
    NotPsd(f64),
    #[error("bad dimension: expected {expected}, got {got}")]
    BadDim { expected: usize, got: usize },
    #[error("dimension mismatch: {0} vs {1}")]
    DimMismatch(usize, usize),
    #[error("matrix has {got} entries, expected {expected}")]
    BadShape { expected: usize, got: usize },
    #[error("non-finite matrix entry at ({0}, {1})")]
    NonFinite(usize, usize),
    #[error("Pauli index must be 1, 2 or 3, got {0}")]
    BadIndex(usize),
    #[error("invalid X-state parameters: {0}")]
    InvalidParams(String),
    #[error("invalid density matrix: {0}")]
    InvalidState(String),
    #[error("state is unphysical (minimum eigenvalue {0:e})")]
    Unphysical(f64),
    #[error("parameter {name} = {value} is outside [0, 1]")]
    OutOfRange { name: &'static str, value: f64 },
    #[error("state has rank above 2 (third eigenvalue {0:e})")]
    RankTooHigh(f64),
    #[error("not a probability distribution: {0}")]
    NotADistribution(String),
    #[error("observable has a degenerate spectrum (gap {0:e})")]
    DegenerateObservable(f64),
    #[error("unknown builtin state `{0}`")]
    UnknownBuiltin(String),
    #[error("json: {0}")]
    Json(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
