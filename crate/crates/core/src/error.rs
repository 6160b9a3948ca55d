use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LabError {
    #[error("non-hyperbolic holonomy (|trace| = {trace})")]
    NonHyperbolic { trace: f64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("projection undefined: ideal point coincides with an axis endpoint")]
    ProjectionUndefined,
    #[error("inconsistent gluing data at curve {curve}: {reason}")]
    Gluing { curve: String, reason: String },
    #[error("invalid topology: {0}")]
    Topology(String),
    #[error("invalid itinerary: {0}")]
    Itinerary(String),
    #[error("twisting undefined: curve does not cross {0}")]
    TwistingUndefined(String),
    #[error("thin-regime precondition violated: length {length} of {curve} is not below M = {bound}")]
    ThinRegime { curve: String, length: f64, bound: f64 },
    #[error("dual curves are only defined for pants curves")]
    DualOfNonPantsCurve,
    #[error("segment decomposition invalid: t0 = {t0} must be below c_j * t = {limit}")]
    SegmentDecomposition { t0: f64, limit: f64 },
    #[error("incomparable thin regimes")]
    IncomparableThinRegimes,
    #[error("thin-regime precondition fails at t = {t}: {reason}")]
    NotThin { t: f64, reason: String },
    #[error("unknown curve id {0}")]
    UnknownCurve(String),
    #[error("{0}")]
    Schema(String),
}

pub type Result<T> = std::result::Result<T, LabError>;
