use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid descriptor: {0}")]
    Descriptor(String),
    #[error("element is not in the span of the basis: {0}")]
    NotInSpan(String),
    #[error("not a grading element: {0}")]
    NotGradingElement(String),
    #[error("grading element is not in the standard Cartan subalgebra of k_C; build orbits from catalog descriptors so that x is diagonal in the Cartan basis")]
    NotInStandardCartan,
    #[error("weight {0:?} is not dominant")]
    NotDominant(Vec<i64>),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("found {found} of {expected} generators up to degree {max_degree}; increase degree bound")]
    IncreaseDegreeBound { found: usize, expected: usize, max_degree: usize },
    #[error("degenerate lattice: {0}")]
    DegenerateLattice(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("internal consistency failure: {0}")]
    Consistency(String),
    #[error("{stage}: {source}")]
    Stage {
        stage: &'static str,
        #[source]
        source: Box<Error>,
    },
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("parse error: {0}")]
    Parse(String),
}

/// Broad error classes, used for process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Input,
    Consistency,
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Stage { source, .. } => source.kind(),
            Error::Consistency(_) | Error::NotInSpan(_) => ErrorKind::Consistency,
            _ => ErrorKind::Input,
        }
    }

    /// Innermost error, skipping stage wrappers.
    pub fn root(&self) -> &Error {
        match self {
            Error::Stage { source, .. } => source.root(),
            e => e,
        }
    }

    pub fn stage(self, stage: &'static str) -> Error {
        Error::Stage { stage, source: Box::new(self) }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
