use thiserror::Error;

/// Errors raised by the time-scale, measure, solver and certificate routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("time {t} is not a point of the time scale")]
    Domain { t: f64 },

    #[error("invalid time scale specification: {0}")]
    InvalidSpec(String),

    #[error("matrix must be square, got {rows}x{cols}")]
    NonSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("weight matrix is singular or badly conditioned")]
    SingularWeight,

    #[error("matrix is not symmetric (max deviation {deviation:e})")]
    Asymmetric { deviation: f64 },

    #[error("non-finite entry in {0}")]
    NotFinite(&'static str),

    #[error("state blew up at t = {t}")]
    BlowUp { t: f64 },

    #[error("probe t0 + h = {end} leaves the dense interval starting at t0 = {t0}")]
    ProbeLeavesDense { t0: f64, end: f64 },

    #[error("certificate does not provide constant `{0}`")]
    CertificateMissing(&'static str),

    #[error("state box is empty")]
    EmptyBox,

    #[error("standing assumption violated: {0}")]
    AssumptionViolation(String),

    #[error("denominator vanishes in {0}")]
    ZeroDenominator(&'static str),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
