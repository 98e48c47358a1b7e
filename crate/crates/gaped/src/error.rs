use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed input or violated operation precondition.
    #[error("input error: {0}")]
    Input(String),

    /// The requested (k, K) gap is too narrow for the configured machinery.
    /// Reported as a distinct exit code by the CLI, never as a verdict.
    #[error("refusal: {0}")]
    Refusal(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

/// A computation ran out of its operation budget. This is control flow, not
/// failure: boosted trials convert an interrupt into a stored Far answer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Interrupted;

impl std::fmt::Display for Interrupted {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "budget exhausted")
    }
}
