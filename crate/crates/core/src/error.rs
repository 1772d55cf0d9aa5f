use thiserror::Error;

/// Failure modes shared by every module of the crate.
///
/// The variants map one-to-one onto the CLI exit codes: `Domain` is a usage
/// error (1), `Resource` and `Numeric` are numeric failures (2).
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// A configured capacity, guard or term limit was exceeded.
    #[error("resource limit exceeded: {0}")]
    Resource(String),
    /// A numerical procedure failed its own convergence check.
    #[error("numeric failure: {0}")]
    Numeric(String),
    /// An evaluation failed for one specific discriminant.
    #[error("evaluation failed at d = {d}: {source}")]
    AtDiscriminant { d: i64, source: Box<Error> },
    /// A parallel scan stopped early; the completed chunks are kept.
    #[error("scan aborted after {completed_chunks} of {total_chunks} chunks: {source}")]
    PartialScan {
        completed_chunks: usize,
        total_chunks: usize,
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn resource(msg: impl Into<String>) -> Self {
        Error::Resource(msg.into())
    }

    pub(crate) fn numeric(msg: impl Into<String>) -> Self {
        Error::Numeric(msg.into())
    }

    /// The innermost error, with discriminant and scan wrappers removed.
    pub fn root(&self) -> &Error {
        match self {
            Error::AtDiscriminant { source, .. } => source.root(),
            Error::PartialScan { source, .. } => source.root(),
            other => other,
        }
    }

    pub fn is_domain(&self) -> bool {
        matches!(self.root(), Error::Domain(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
