use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("result overflows f64: {0}")]
    Overflow(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// The query point is (numerically) on the medial axis, so the nearest
    /// point of the manifold is not unique.
    #[error("ambiguous projection: {0}")]
    Ambiguous(String),

    #[error("resource limit: {what} needs {needed}, cap is {cap}")]
    Resource {
        what: &'static str,
        needed: u64,
        cap: u64,
    },

    #[error("inconsistent filtration: {0}")]
    Inconsistent(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// Failure inside one stage of a multi-stage run.
    #[error("{stage} stage failed: {source}")]
    Stage {
        stage: &'static str,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}

pub(crate) trait StageContext<T> {
    fn stage(self, stage: &'static str) -> Result<T>;
}

impl<T> StageContext<T> for Result<T> {
    fn stage(self, stage: &'static str) -> Result<T> {
        self.map_err(|e| Error::Stage {
            stage,
            source: Box::new(e),
        })
    }
}
