#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("parameter file: {0}")]
    Params(String),
    #[error("N = {n} exceeds the exact-arithmetic cap {cap}; pass --max-n {n} to raise it, or use --method contour where available")]
    SizeCap { n: usize, cap: usize },
    #[error("invalid arguments: {0}")]
    Usage(String),
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    Compute(String),
}

impl CliError {
    pub fn compute(e: impl std::fmt::Display) -> Self {
        Self::Compute(e.to_string())
    }

    /// Process exit code: 2 for bad input, 3 for computation failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Compute(_) => 3,
            _ => 2,
        }
    }
}
