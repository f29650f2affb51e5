use thiserror::Error;

/// Every fallible operation in the crate reports one of these.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("index {index} out of range ({context})")]
    Index { index: i64, context: String },

    #[error("strand counts differ: {left} vs {right}")]
    MismatchedStrands { left: usize, right: usize },

    #[error("elements live in different algebras: Y({d1},{n1}) vs Y({d2},{n2})")]
    MismatchedAlgebra { d1: u32, n1: usize, d2: u32, n2: usize },

    #[error("bound exceeded: {0}")]
    BoundExceeded(String),

    #[error("division by zero: {0}")]
    DivisionByZero(String),

    #[error("cyclic functions of different orders: {0} vs {1}")]
    MismatchedOrder(usize, usize),

    #[error("degenerate order {0}")]
    DegenerateOrder(usize),

    #[error("order {from} does not divide {to}")]
    IncompatibleOrders { from: usize, to: usize },

    #[error("parameter out of domain: {0}")]
    ParamDomain(String),

    #[error("oracle handles at most {limit} crossings, got {got}")]
    OracleBoundExceeded { limit: usize, got: usize },

    #[error("level error: {0}")]
    Level(String),

    #[error("sequence is not coherent: {0}")]
    NotCoherent(String),

    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
