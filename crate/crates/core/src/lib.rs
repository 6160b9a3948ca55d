//! Numerical laboratory for grafting rays and Teichmüller geodesic rays on
//! hyperbolic surfaces.
//!
//! Geometry in [`kernel`], [`surface`] and [`curves`] is generic over the
//! scalar; the ray models and boundary analysis work in `f64`.

// `!(x > 0.0)` also rejects NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod boundary;
pub mod curves;
pub mod error;
pub mod graft;
mod json;
pub mod kernel;
pub mod scalar;
pub mod surface;
pub mod teich;

pub use error::{LabError, Result};
pub use scalar::Real;

pub type Mat = kernel::Mat2<f64>;
pub type CertifiedInterval = kernel::Interval<f64>;
pub type Surface = surface::PantsSurface<f64>;
pub type Coords = surface::FnCoords<f64>;
