//! Marked hyperbolic surfaces from pants decompositions.

mod json;
mod marked;
mod topology;
mod walk;

pub use marked::{FnCoords, Holonomy, PantsSurface};
pub use topology::{CurveEdge, PantsDecomposition, Side, SlotContent};
pub use walk::{Foot, Move};
