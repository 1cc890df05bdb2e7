use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed one-line, cycle, or ladder text.
    #[error("parse error at `{token}`: {reason}")]
    Parse { token: String, reason: String },

    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("rank {rank} out of range for degree {n} (must be < {n}!)")]
    RankOutOfRange { rank: u64, n: usize },

    #[error("degree {n} is too large for rank encoding (max {max})")]
    DegreeTooLarge { n: usize, max: usize },

    #[error("invalid width bound m={m} for degree n={n} (need 1 <= m <= n-1)")]
    InvalidWidth { n: usize, m: usize },

    #[error("unsupported regime n={n}, m={m}: {reason}")]
    UnsupportedRegime { n: usize, m: usize, reason: String },

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// The search would need more memory than the configured cap allows.
    #[error("memory cap exceeded: need {required} bytes, cap is {cap} bytes")]
    MemoryCap { required: u64, cap: u64 },

    #[error("invalid ladder: {0}")]
    InvalidLadder(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn parse(token: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Parse {
            token: token.into(),
            reason: reason.into(),
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
