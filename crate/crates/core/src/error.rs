use thiserror::Error;

/// Errors raised by frame construction, analysis, search and verification.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("no columns supplied")]
    EmptyInput,
    #[error(
        "columns have inconsistent lengths (expected {expected}, column {column} has {found})"
    )]
    RaggedColumns {
        expected: usize,
        column: usize,
        found: usize,
    },
    #[error("column {column} contains a non-finite entry")]
    NonFinite { column: usize },
    #[error("column {column} has a nonzero imaginary part but the field is real")]
    ComplexEntryInRealFrame { column: usize },
    #[error("column {column} has norm {norm}, not 1")]
    NonUnitColumn { column: usize, norm: f64 },
    #[error("column {column} is zero and cannot be normalized")]
    ZeroColumn { column: usize },
    #[error("operation needs at least 2 vectors, frame has {n}")]
    TooFewVectors { n: usize },
    #[error("angle clustering is ambiguous at tolerance {cluster_tol}: angles {first} and {second} cannot be separated")]
    AmbiguousClustering {
        cluster_tol: f64,
        first: f64,
        second: f64,
    },
    #[error("operation is only defined for complex frames")]
    FieldUnsupported,
    #[error("embedding needs M >= 2, got M = {m}")]
    DimensionTooSmall { m: usize },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("bound not applicable: {0}")]
    NotApplicable(String),
    #[error("search diverged: non-finite iterate in restart {restart}")]
    Diverged { restart: usize },
    #[error("invalid search configuration: {0}")]
    ConfigInvalid(String),
    #[error("frame is not biangular (found {k} angles)")]
    NotBiangular { k: usize },
    #[error("frame is not tight (defect {defect})")]
    NotTight { defect: f64 },
    #[error("biangular tight frame is not equidistributed; this falsifies a known result and indicates a tolerance problem")]
    NotEquidistributed,
    #[error("parity check needs an odd number of vectors, got N = {n}")]
    NNotOdd { n: usize },
    #[error("search size exceeded: {0}")]
    SizeExceeded(String),
    #[error("invalid frame JSON: {0}")]
    InvalidJson(String),
}

pub type Result<T> = std::result::Result<T, Error>;
