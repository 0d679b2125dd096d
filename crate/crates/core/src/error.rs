use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidSpec(String),
    #[error("degree sequence is not graphical")]
    NotGraphical,
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    OutOfRange { vertex: usize, n: usize },
    #[error("vertex {0} appears more than once in the tuple")]
    DuplicateVertex(usize),
    #[error("invalid pattern: {0}")]
    InvalidPattern(String),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("kernel inputs must be strictly positive")]
    NonPositiveInput,
    #[error("alpha value {value} at slot {slot} outside [0, {max}]")]
    AlphaOutOfRange { slot: usize, value: f64, max: f64 },
    #[error("pattern has {k} vertices but the graph only {n}")]
    PatternLargerThanGraph { k: usize, n: usize },
    #[error("graph with {n} vertices exceeds the limit of {max}")]
    GraphTooLarge { n: usize, max: usize },
    #[error("graph with {n} vertices is too small (need at least {min})")]
    GraphTooSmall { n: usize, min: usize },
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("pattern is outside the all-sqrt(n) regime: {0}")]
    PreconditionB(String),
    #[error("compressed expected count needs {terms} terms")]
    TooManyDistinctValues { terms: f64 },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
