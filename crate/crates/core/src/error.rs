use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("malformed table: {0}")]
    MalformedTable(String),
    #[error("size cap exceeded: {size} > {cap}")]
    SizeCapExceeded { size: u128, cap: u128 },
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("arity mismatch: word has arity {expected}, tuple has length {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("arity cap exceeded: {arity} > {cap}")]
    ArityCapExceeded { arity: usize, cap: usize },
    #[error("enumeration budget exceeded ({0}); use the specialized series routine")]
    BudgetExceeded(String),
    #[error("engine mismatch: {0}")]
    EngineMismatch(String),
    #[error("unresolved: enumeration cap {cap} reached ({detail})")]
    Unresolved { cap: usize, detail: String },
    #[error("check failed: {0}")]
    CheckFailed(String),
    #[error("size mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("matrix is not unitary (deviation {0:e})")]
    NotUnitary(f64),
    #[error("inner metric diameter exceeds 1")]
    DiameterViolation,
    #[error("window not closed: {0}")]
    WindowNotClosed(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
