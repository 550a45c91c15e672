use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("edge ({0}, {0}) is a loop; only simple graphs are supported")]
    LoopEdge(usize),

    #[error("node index {index} out of range for graph with {n} nodes")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("graph must have at least one node")]
    EmptyGraph,

    #[error("source set is empty")]
    EmptySourceSet,

    #[error("node set is empty")]
    EmptyNodeSet,

    #[error("graph has no edges")]
    EmptyEdgeSet,

    #[error("graph has no node coordinates")]
    MissingCoordinates,

    #[error("{path}:{line}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("coordinate file has {found} rows, graph has {expected} nodes")]
    CoordCountMismatch { expected: usize, found: usize },

    #[error("node {0} missing from partition file")]
    MissingNode(usize),

    #[error("node {0} listed more than once")]
    DuplicateNode(usize),

    #[error("matrix is not symmetric: |a[{row}][{col}] - a[{col}][{row}]| = {gap:e}")]
    NotSymmetric { row: usize, col: usize, gap: f64 },

    #[error("Jacobi eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:e})")]
    NoConvergence { sweeps: usize, off_norm: f64 },

    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("count {count} outside [1, {n}]")]
    CountOutOfRange { count: usize, n: usize },

    #[error("requested {clusters} clusters for {points} points")]
    TooManyClusters { clusters: usize, points: usize },

    #[error("empty community-count range")]
    EmptyRange,

    #[error("epsilon + lambda = {shift:e} is not positive (lambda index {index})")]
    NonPositiveShift { index: usize, shift: f64 },

    #[error("kernel Fourier coefficient {index} is {value:e}, must be positive")]
    NonPositiveFhat { index: usize, value: f64 },

    #[error("Cholesky factorization failed after {retries} jitter retries")]
    SolveFailure { retries: usize },

    #[error("subdomain {subdomain}: {source}")]
    Subdomain {
        subdomain: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("sample count {requested} exceeds node count {n}")]
    SampleTooLarge { requested: usize, n: usize },

    #[error("signal has zero norm")]
    ZeroSignal,

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("{stage} stage failed: {source}")]
    Stage {
        stage: &'static str,
        #[source]
        source: Box<Error>,
    },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

/// Coarse classification used for process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    Usage,
    Data,
    Numerical,
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::Config(_) => ErrorClass::Usage,
            Error::NotSymmetric { .. }
            | Error::NoConvergence { .. }
            | Error::NonPositiveShift { .. }
            | Error::NonPositiveFhat { .. }
            | Error::SolveFailure { .. } => ErrorClass::Numerical,
            Error::Subdomain { source, .. } | Error::Stage { source, .. } => source.class(),
            _ => ErrorClass::Data,
        }
    }

    pub(crate) fn in_stage(self, stage: &'static str) -> Error {
        Error::Stage {
            stage,
            source: Box::new(self),
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Error {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
