use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KefError {
    /// Malformed or out-of-range input: bad vertex ids, parse failures, overlapping sets.
    #[error("input error: {0}")]
    Input(String),

    /// A configured enumeration or solver cap was exceeded.
    #[error("capacity exceeded: {what} (limit {limit}, needed {actual})")]
    Capacity {
        what: &'static str,
        limit: usize,
        actual: usize,
    },

    /// The operation's hypothesis does not hold for this graph.
    #[error("domain error: {0}")]
    Domain(String),
}

impl KefError {
    pub fn input(msg: impl Into<String>) -> Self {
        KefError::Input(msg.into())
    }

    pub fn is_capacity(&self) -> bool {
        matches!(self, KefError::Capacity { .. })
    }
}

pub type Result<T> = std::result::Result<T, KefError>;
