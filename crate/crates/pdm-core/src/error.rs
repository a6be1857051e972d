use thiserror::Error;

pub type Point = [f64; 2];

/// Failure modes shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("singular point at ({}, {}): {detail}", at[0], at[1])]
    Singularity { at: Point, detail: String },

    #[error("outside the valid domain at ({}, {}): {detail}", at[0], at[1])]
    Domain { at: Point, detail: String },

    #[error("invalid parameter {name}: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("{what} exceeds the supported cap of {limit}")]
    Capacity { what: &'static str, limit: usize },

    #[error("requested {requested} bound states but only {found} lie below the continuum threshold")]
    BoundStateCount { requested: usize, found: usize },

    #[error("grid: {0}")]
    Grid(String),

    #[error("grid extent too small: boundary tail fraction {tail:.3e} exceeds {tolerance:.3e}")]
    Extent { tail: f64, tolerance: f64 },

    #[error("non-finite value produced at ({}, {})", at[0], at[1])]
    NonFinite { at: Point },

    #[error("i/o: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn singular(at: Point, detail: impl Into<String>) -> Self {
        Error::Singularity { at, detail: detail.into() }
    }

    pub(crate) fn domain(at: Point, detail: impl Into<String>) -> Self {
        Error::Domain { at, detail: detail.into() }
    }

    pub(crate) fn param(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter { name, reason: reason.into() }
    }

    /// True for errors caused by evaluating at a singular or out-of-domain point.
    pub fn is_pointwise(&self) -> bool {
        matches!(self, Error::Singularity { .. } | Error::Domain { .. } | Error::NonFinite { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
