use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("graph is disconnected")]
    Disconnected,

    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("vertices must be distinct (got {0} twice)")]
    SameVertex(usize),

    #[error("edge ({x},{y}) would get negative multiplicity {result}")]
    NegativeMultiplicity { x: usize, y: usize, result: i64 },

    #[error("no edge between {0} and {1}")]
    NoEdge(usize, usize),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("matrix is singular")]
    Singular,

    #[error("modulus must be positive")]
    ZeroModulus,

    #[error("divisor has degree {0}, expected 0")]
    NonzeroDegree(String),

    #[error("enumeration guard exceeded: n = {n} > {limit}")]
    TooLarge { n: usize, limit: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("resample cap of {cap} exceeded in trial {trial}")]
    ResampleCap { trial: u64, cap: u64 },

    #[error("generator checks disagree on {0}")]
    Inconsistent(String),

    #[error("unknown format {0:?}")]
    UnknownFormat(String),
}
