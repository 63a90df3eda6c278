use thiserror::Error;

/// Errors from group construction and subgroup embedding.
#[derive(Debug, Error)]
pub enum GroupError {
    #[error("element cap exceeded: closure passed {cap} elements")]
    CapExceeded { cap: usize },
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("not a subgroup: {0}")]
    NotASubgroup(String),
    #[error("invalid family descriptor `{descriptor}`: {reason}")]
    InvalidFamily { descriptor: String, reason: String },
}

/// Errors from table/class-data files and value syntax.
#[derive(Debug, Error)]
pub enum ParseError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("value `{value}` at line {line}: {msg}")]
    Value {
        line: usize,
        value: String,
        msg: String,
    },
    #[error("{0}")]
    Io(String),
}

/// A parsed file whose numbers do not satisfy the defining identities.
#[derive(Debug, Error)]
#[error("inconsistent data: {0}")]
pub struct ConsistencyError(pub String);

/// Errors raised when exact multiplicity arithmetic does not close.
#[derive(Debug, Error)]
pub enum MultError {
    /// An inner product that must be a non-negative integer came out otherwise.
    #[error("integrality defect: {context} evaluated to {value}")]
    IntegralityDefect { context: String, value: String },
    /// A summation identity that must hold exactly did not.
    #[error("identity violation: {context}: {lhs} != {rhs}")]
    IdentityViolation {
        context: String,
        lhs: String,
        rhs: String,
    },
    /// Degrees do not square-sum to the group order.
    #[error("degree square sum {sum} does not equal group order {order}")]
    BurnsideViolation { sum: String, order: String },
    /// Restriction/induction asked across tables that do not belong to the same pair.
    #[error("fusion mismatch: {0}")]
    FusionMismatch(String),
}

/// Errors from the check suite driver.
#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("unknown check `{0}`")]
    UnknownCheck(String),
    #[error("missing input: {0}")]
    MissingInput(String),
}

/// Umbrella error for CLI-level plumbing.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Consistency(#[from] ConsistencyError),
    #[error(transparent)]
    Mult(#[from] MultError),
    #[error(transparent)]
    Verify(#[from] VerifyError),
}
