//! Hyperbolic-plane and annulus primitives.

mod annulus;
mod interval;
mod mat2;
mod trig;

pub use annulus::{superadditive_modulus, AnnulusModel};
pub use interval::Interval;
pub use mat2::{chain_product, Mat2};
pub(crate) use trig::seam_length;
pub use trig::{
    boundary_projection, collar_half_width, half_plane_distance, hexagon_side, length_from_trace,
    length_with_collar_width, trace_length, IdealPoint,
};
