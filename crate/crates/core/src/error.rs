use thiserror::Error;

/// Error type shared by every operation in the crate.
///
/// `Precondition` means the inputs violate an operation's contract;
/// `ResourceGuard` means the inputs are legal but the estimated cost exceeds
/// a configured cap (see [`crate::caps::Caps`]). Callers that map errors to
/// process exit codes should use 2 for the former and 3 for the latter.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("resource guard: {op} needs an estimated {estimate} {unit}, cap is {cap}")]
    ResourceGuard {
        op: String,
        estimate: u128,
        cap: u128,
        unit: &'static str,
    },
}

impl Error {
    pub fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub fn guard(op: impl Into<String>, estimate: u128, cap: u128, unit: &'static str) -> Self {
        Error::ResourceGuard {
            op: op.into(),
            estimate,
            cap,
            unit,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
