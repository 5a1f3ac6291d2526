use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },
    #[error("matrix is not Hermitian (max |M - M^H| = {deviation:e})")]
    NotHermitian { deviation: f64 },
    #[error("matrix contains non-finite entries")]
    NonFinite,
    #[error("trace is {trace}, expected 1")]
    NotUnitTrace { trace: f64 },
    #[error("matrix is not positive semidefinite (minimum eigenvalue {min_eigenvalue:e})")]
    NotPsd { min_eigenvalue: f64 },
    #[error("matrix size {size} does not match subsystem dimensions {dims:?}")]
    DimensionMismatch { size: usize, dims: Vec<usize> },
    #[error("invalid dimension {0}, expected at least 2")]
    InvalidDimension(usize),
    #[error("operation requires a bipartite state, got {parties} parties")]
    NotBipartite { parties: usize },
    #[error("operation requires at least two parties, got {0}")]
    TooFewParties(usize),
    #[error("subsystem {index} out of range for {parties} parties")]
    SubsystemOutOfRange { index: usize, parties: usize },
    #[error("mode {mode} out of range for a {order}-way tensor")]
    ModeOutOfRange { mode: usize, order: usize },
    #[error("negative singular value {0}")]
    NegativeSingularValue(f64),
    #[error("need moments up to order {needed}, have {have}")]
    InsufficientMoments { needed: usize, have: usize },
    #[error("parameter {name} = {value} out of range")]
    ParamOutOfRange { name: &'static str, value: f64 },
    #[error("vector has norm {norm}, expected 1")]
    UnnormalizedVector { norm: f64 },
    #[error("unknown criterion `{0}`")]
    UnknownCriterion(String),
    #[error("family `{0}` has no scalar mixing parameter")]
    NonScalarFamily(String),
}
