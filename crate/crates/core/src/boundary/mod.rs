//! Thurston-boundary detection, product-region distances, and the
//! bounded-distance certificate between the two rays.

mod certificate;
mod family;
mod limit;
mod region;

pub use certificate::{
    assemble, certificate_point, predicted_log_ratio, quasi_geodesic_certificate, Certificate, CertificatePoint,
    CurveComparison, DEFAULT_BOUND,
};
pub use family::{FnFamily, SurfaceFamily};
pub use limit::{ratio, thurston_limit, thurston_limit_from, LimitVerdict, ProjectiveLimit, ZERO_FRACTION};
pub use region::{
    box_distance, component_distances, minsky_distance, pi0_compactness_check, slack_for_twist_bound,
    CompactnessReport, HalfPlaneBox, ProductRegionImage, DEFAULT_COMPACT_M, DEFAULT_COMPACT_T, DEFAULT_EPS0,
    DEFAULT_SLACK,
};
