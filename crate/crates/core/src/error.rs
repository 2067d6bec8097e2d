use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("signature must have at least one coordinate")]
    EmptySignature,
    #[error("vector length {n} exceeds the supported maximum {max}")]
    TooLong { n: usize, max: usize },
    #[error("invalid entry {0}; entries must be -1, 0 or +1")]
    InvalidEntry(i64),
    #[error("invalid trit character {0:?}; expected '-', '0' or '+'")]
    InvalidTrit(char),
    #[error("coordinate masks overlap or exceed the vector length")]
    InvalidMasks,
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("at least two points are required, got {0}")]
    TooFewPoints(usize),
    #[error("enumerating {count} points exceeds the limit {limit}")]
    Capacity { count: u128, limit: u128 },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("graph needs at least one vertex")]
    NoVertices,
    #[error("threshold must be positive")]
    ZeroThreshold,
    #[error("vertex {index} out of range for a graph with {len} vertices")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("vertex {0} is on both sides of the bipartition")]
    Overlap(usize),
    #[error("edge ({0}, {1}) lies inside one side of the bipartition")]
    InternalEdge(usize, usize),
    #[error("malformed graph export: {0}")]
    Format(String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolverError {
    #[error("graph has {len} vertices, above the configured limit {limit}")]
    TooManyVertices { len: usize, limit: usize },
    #[error("time limit reached; best bounds {lower} <= alpha <= {upper}")]
    Timeout { lower: usize, upper: usize },
    #[error("more than {limit} sets to enumerate")]
    EnumerationLimit { limit: usize },
    #[error("bipartite view covers {covered} of {len} vertices")]
    ViewDoesNotCover { covered: usize, len: usize },
    #[error("set is not independent: ({0}, {1}) is an edge")]
    NotIndependent(usize, usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FamilyError {
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("vector {vector} does not belong to {signature}")]
    NotInLattice { vector: String, signature: String },
    #[error("duplicate member {0}")]
    Duplicate(String),
    #[error("construction check failed: {0}")]
    Construction(String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CanonError {
    #[error("length {n} is above the limit {max} for exact canonicalization")]
    TooLong { n: usize, max: usize },
    #[error("signature mismatch: {left} vs {right}")]
    SignatureMismatch { left: String, right: String },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum JohnsonError {
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("vector {0} is not in pool ({1})")]
    NotInPool(String, &'static str),
}

/// Any library error.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    Canon(#[from] CanonError),
    #[error(transparent)]
    Johnson(#[from] JohnsonError),
}
