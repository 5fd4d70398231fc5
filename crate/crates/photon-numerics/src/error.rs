//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// An amplitude function produced a non-finite sample.
    #[error("invalid state: non-finite amplitude at node {node} ({detail})")]
    InvalidState { node: usize, detail: String },

    /// The polarization triad is genuinely discontinuous along ±ẑ; a
    /// different gauge angle (e.g. χ = -φ near the +z axis) moves the
    /// singular direction but cannot remove it.
    #[error(
        "pole singularity: transverse unit vectors are undefined at theta = {theta}; \
         choose a chi convention that moves the singularity away from the sampled directions"
    )]
    PoleSingularity { theta: f64 },

    #[error("incompatible grids: {0}")]
    IncompatibleGrids(String),

    #[error("wrong grid kind: {0}")]
    WrongGrid(String),

    #[error("form pairing: {0}")]
    FormPairing(String),

    #[error("unsupported chi spec: {0}")]
    UnsupportedChi(String),

    #[error("needs analytic state: {0}")]
    NeedsAnalyticState(String),

    #[error("ill-conditioned comparison: {0}")]
    IllConditioned(String),

    #[error("zero-norm state")]
    ZeroNorm,

    #[error("config error: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn invalid_argument(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
