use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("tensor arity mismatch: {0} vs {1}")]
    ArityMismatch(usize, usize),
    #[error("size mismatch: S_{0} vs S_{1}")]
    SizeMismatch(usize, usize),
    #[error("index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("graph defect {0} on a joint orbit is not a non-negative integer")]
    BadDefect(String),
    #[error("zero deformation parameter")]
    ZeroParameter,
    #[error("partition on odd class {0} is not strict")]
    NotStrict(String),
    #[error("coordinate reconstruction failed at level {0}")]
    Reconstruction(usize),
    #[error("stable constants differ across the window for {0}")]
    Unstable(String),
    #[error("shape constraint violated: {0}")]
    ShapeViolation(String),
    #[error("{0}")]
    Unsupported(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
