use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("invalid vertex {0}")]
    InvalidVertex(String),

    #[error("element has nonzero counit {0}; the reduced coproduct is defined on the augmentation ideal")]
    NotAugmented(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("size guard exceeded: {requested} > {limit}")]
    Guard { requested: usize, limit: usize },

    #[error("linear system is rank deficient (rank {rank} < {unknowns} unknowns)")]
    RankDeficient { rank: usize, unknowns: usize },

    #[error("linear system is inconsistent")]
    Inconsistent,

    #[error("non-integral value {value} for {context}")]
    NonIntegral { context: String, value: String },
}

impl Error {
    pub(crate) fn parse(position: usize, message: impl Into<String>) -> Error {
        Error::Parse {
            position,
            message: message.into(),
        }
    }
}
