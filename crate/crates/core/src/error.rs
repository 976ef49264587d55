use thiserror::Error;

/// Errors raised by the toolkit.
///
/// `Domain` covers malformed or inconsistent inputs; `Capacity` is raised
/// whenever a request exceeds one of the explicit size limits instead of
/// silently truncating the computation.
#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("capacity exceeded: {what} is limited to {limit}, requested {requested}")]
    Capacity {
        what: &'static str,
        limit: u128,
        requested: u128,
    },
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }

    pub fn is_capacity(&self) -> bool {
        matches!(self, Error::Capacity { .. })
    }
}

/// Fails with a capacity error when `requested > limit`.
pub(crate) fn ensure_capacity(what: &'static str, limit: u128, requested: u128) -> Result<()> {
    if requested > limit {
        Err(Error::Capacity {
            what,
            limit,
            requested,
        })
    } else {
        Ok(())
    }
}
