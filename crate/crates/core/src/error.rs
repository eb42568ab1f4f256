use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed setting: {0}")]
    Malformed(String),
    #[error("duplicate vertex identifier `{0}`")]
    DuplicateVertex(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("negative dimension {value} at vertex `{vertex}`")]
    NegativeDimension { vertex: String, value: i64 },
    #[error("dimension vector is missing vertex `{0}`")]
    MissingDimension(String),
    #[error("vector length {got} does not match vertex count {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("quiver has a loop at vertex `{0}`")]
    Loop(String),
    #[error("quiver has an oriented cycle")]
    OrientedCycle,
    #[error("setting is not connected")]
    Disconnected,
    #[error("the zero vector is not a root")]
    ZeroVector,
    #[error("vector has a negative entry at vertex `{0}`")]
    NegativeEntry(String),
    #[error("vertex `{0}` has dimension 0; restrict to the support first")]
    ZeroDimension(String),
    #[error("vector lies outside the box 0 <= e <= d-hat")]
    OutOfBox,
    #[error("dimension vectors are not comparable entrywise")]
    NotComparable,
    #[error("settings have different quivers")]
    QuiverMismatch,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("cost guard exceeded: {0}")]
    CostGuard(String),
}
