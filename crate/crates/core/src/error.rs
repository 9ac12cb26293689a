use std::io;

use thiserror::Error;

use crate::fields::Space;

/// Errors raised by field construction, evolution, measurement and I/O.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("invalid parameter `{field}`: {reason}")]
    InvalidParameter { field: String, reason: String },

    #[error("expected a {expected} space field, got {found}")]
    WrongSpace { expected: Space, found: Space },

    #[error("grids do not match")]
    GridMismatch,

    #[error("state has zero norm")]
    ZeroNorm,

    #[error("nonzero amplitude on the k = 0 mode (E = 0 is not on the photon shell)")]
    ZeroModeAmplitude,

    #[error("amplitude is not transverse (max |k.psi| = {0:e})")]
    NotTransverse(f64),

    #[error("lattice {dims:?} exceeds the two-photon cap of {cap} points per axis")]
    CapExceeded { dims: Vec<usize>, cap: usize },

    #[error("invariant breached: {0}")]
    InvariantBreach(String),

    #[error("malformed container: {0}")]
    Format(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] io::Error),
}

impl Error {
    pub(crate) fn param(field: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            field: field.into(),
            reason: reason.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
