use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("loop at vertex {0}: edge endpoints must be distinct")]
    Loop(u32),
    #[error("not a matching: {0}")]
    NotAMatching(String),
    #[error("not an augmenting alternating path: {0}")]
    NotAnAap(String),
    #[error("duplicate vertex {0} in origamistrip labels")]
    DuplicateLabel(u32),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("vertex {0} is not an interior vertex of the strip")]
    NotInterior(u32),
    #[error("edge {0} lies in the badge skeleton")]
    EdgeInSkeleton(String),
    #[error("malformed family: {0}")]
    MalformedFamily(String),
    #[error("family has {got} colors, fewer than the {need} required for a conclusion")]
    TooFewColors { got: usize, need: usize },
    #[error("union condition fails for color indices {indices:?}")]
    UnionConditionViolated { indices: Vec<usize> },
    #[error("search budget of {0} nodes exhausted")]
    BudgetExceeded(u64),
    #[error("recursion depth limit {0} exceeded")]
    DepthExceeded(usize),
    #[error("construction stalled: {0}")]
    Stalled(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
