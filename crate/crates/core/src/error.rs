use thiserror::Error;

use crate::controllers::Gains;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{what} must be finite")]
    NonFinite { what: &'static str },

    #[error("invalid `{field}`: {reason}")]
    InvalidParameter { field: String, reason: String },

    #[error("t = {t} s lies outside the path time domain [0, {duration}] s")]
    OutsideTimeDomain { t: f64, duration: f64 },

    #[error("simulation aborted at step {step} (t = {t} s): {what} became non-finite")]
    SimulationAbort { step: usize, t: f64, what: &'static str },

    #[error("trace is empty")]
    EmptyTrace,

    #[error("configurations differ in {0}; comparison requires the same path and dt")]
    Mismatch(&'static str),

    #[error("sweep grid has {size} points, above the cap of {cap}")]
    GridTooLarge { size: usize, cap: usize },

    #[error("grid point {index} ({gains:?}): {source}")]
    GridPoint {
        index: usize,
        gains: Gains,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn invalid(field: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::InvalidParameter { field: field.into(), reason: reason.into() }
    }
}
