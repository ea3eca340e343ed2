use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("matrix is singular")]
    Singular,

    #[error("matrix has rank {rank}, expected {expected}")]
    RankDeficient { rank: usize, expected: usize },

    #[error("rank is undefined for the all-zero matrix")]
    UndefinedRank,

    #[error("{what}: {count} exceeds the cap of {cap}")]
    CapExceeded { what: &'static str, count: u128, cap: u128 },

    #[error("empty input: {0}")]
    EmptyInput(&'static str),

    #[error("malformed matrix shape: {0}")]
    Shape(String),

    #[error("invalid cover: {0}")]
    InvalidCover(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("polyhedron is unbounded; supply a bounded system")]
    Unbounded,

    #[error("certification failed: {0}")]
    Certify(#[from] CertifyError),

    /// Raised when a construction that is guaranteed to succeed does not. This
    /// always indicates a bug.
    #[error("internal consistency check failed: {0}")]
    Consistency(String),
}

/// The distinct ways a certificate check can fail.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertifyError {
    #[error("row {row} is outside the designated rows but is not a signed unit row")]
    StackedForm { row: usize },

    #[error("integrality matrix is not totally unimodular ({0})")]
    NotTotallyUnimodular(String),

    #[error("row {row} is not in the row span of the integrality matrix")]
    NotInSpan { row: usize },
}

impl Error {
    pub(crate) fn cap(what: &'static str, count: u128, cap: u128) -> Self {
        Error::CapExceeded { what, count, cap }
    }
}
