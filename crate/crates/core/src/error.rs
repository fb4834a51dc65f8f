use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("type {family} does not exist in rank {rank} (valid ranks: {valid})")]
    InvalidRank {
        family: String,
        rank: usize,
        valid: &'static str,
    },
    #[error("unknown root system family `{0}`")]
    UnknownFamily(String),
    #[error("simple root index {index} out of range 1..={rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("weight has {got} coordinates, expected {expected}")]
    WeightLength { got: usize, expected: usize },
    #[error("grading set is empty")]
    EmptySigma,
    #[error("weight {0} is not dominant integral")]
    NotDominant(String),
    #[error("weight {0} is not anti-dominant integral")]
    NotAntiDominant(String),
    #[error("module check failed: {0}")]
    InconsistentModule(String),
    #[error("subspace is not closed under brackets: {0}")]
    NotSubalgebra(String),
    #[error("trace form is degenerate on the subspace")]
    DegenerateTrace,
    #[error("action is not degree additive: {0}")]
    NotGraded(String),
    #[error("non-integral degree {0}; grading convention mismatch")]
    NonIntegralDegree(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("unknown frame field `{0}`")]
    UnknownField(String),
    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),
    #[error("parameter `{0}` has no numeric value")]
    UnboundParameter(String),
    #[error("line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("system is incompatible: {0}")]
    Incompatible(String),
    #[error("matrix is singular: {0}")]
    Singular(String),
    #[error("invalid filtration: {0}")]
    InvalidFiltration(String),
}

pub type Result<T> = std::result::Result<T, Error>;
