use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("loop arc at vertex {0}")]
    LoopArc(usize),
    #[error("duplicate arc ({0}, {1})")]
    DuplicateArc(usize, usize),
    #[error("vertex {vertex} out of range for n = {n}")]
    IndexOutOfRange { vertex: usize, n: usize },
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("colouring is partial or has the wrong length: {0}")]
    PartialColouring(String),
    #[error("search budget exceeded (lower bound {lower}, upper bound {upper})")]
    BudgetExceeded { lower: usize, upper: usize },
    #[error("set is not dipolar: vertex {0} has neighbours outside on both sides")]
    NotDipolar(usize),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("bad k: {0}")]
    BadK(String),
    #[error("missing arc ({0}, {1})")]
    MissingArc(usize, usize),
    #[error("missing digon [{0}, {1}]")]
    MissingDigon(usize, usize),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("leaf order does not follow the tree embedding: {0}")]
    BadEmbeddingOrder(String),
    #[error("k = {0} is not supported")]
    UnsupportedK(usize),
    #[error("root-to-leaf paths have mixed parity")]
    ParityViolated,
    #[error("circular composition needs at least 3 parts, got {0}")]
    TooFewParts(usize),
    #[error("vertex {0} is not in the graph")]
    BadVertex(usize),
    #[error("output would have {size} vertices, cap is {cap}")]
    SizeCapExceeded { size: usize, cap: usize },
    #[error("digraph is not strongly connected")]
    NotStrong,
    #[error("digraph has a digon [{0}, {1}]")]
    NotOriented(usize, usize),
    #[error("defect d = {0} must be odd")]
    EvenD(usize),
    #[error("multigraph is not regular")]
    NotRegular,
    #[error("factor degree k = {0} must be even")]
    OddK(usize),
    #[error("constructive route failed ({0}); exact search required")]
    FallbackToExact(String),
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("syntax error at line {line}, column {column}: {message}")]
    SyntaxError {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("semantic error at line {line}, column {column}: {message}")]
    SemanticError {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("usage: {0}")]
    UsageError(String),
}

pub type Result<T> = std::result::Result<T, Error>;
