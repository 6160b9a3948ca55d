//! Frame walking along broken arcs.
//!
//! A frame is a unit tangent vector in the universal cover, stored as the
//! matrix sending the standard frame (at `i`, pointing up) to it. Walking a
//! path multiplies on the right by translations along the current geodesic
//! and by rotations; a closed broken arc returns the deck transformation of
//! its curve.
//!
//! On every boundary slot the pant-left orientation is used (pant interior on
//! the left). Seam feet sit at positions `0` (seam to the previous slot) and
//! `l/2` (seam to the next slot). Across a curve of twist `t` the positions
//! `x` and `y` seen from the two sides satisfy `x + y = t l`.

use crate::error::{LabError, Result};
use crate::kernel::Mat2;
use crate::scalar::Real;
use crate::surface::{PantsSurface, Side, SlotContent};

/// Seam foot position on a boundary slot.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Foot {
    Zero,
    Half,
}

impl Foot {
    pub fn position<T: Real>(self, len: T) -> T {
        match self {
            Foot::Zero => T::zero(),
            Foot::Half => len / T::lit(2.0),
        }
    }
}

/// One resolved step of a broken arc.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Move {
    /// Seam arc inside `from.pant`; `from == to` is the arc from a boundary
    /// back to itself separating the other two slots.
    Seam { from: Side, to: Side },
    /// Cross the curve glued at `from`, winding `turns` extra full turns.
    Cross { from: Side, turns: i64 },
    /// Run along the curve at `at` without crossing it.
    Loop { at: Side, turns: i64 },
}

pub(crate) struct SeamGeometry<T> {
    pub depart: Foot,
    pub arrive: Foot,
    pub frame: Mat2<T>,
}

impl<T: Real> PantsSurface<T> {
    /// Half-length of the boundary at a slot (zero for a cusp).
    pub(crate) fn slot_half(&self, side: Side) -> T {
        match self.topology().content(side) {
            SlotContent::Curve(j) => self.coords().length(j) / T::lit(2.0),
            SlotContent::Cusp => T::zero(),
        }
    }

    pub(crate) fn slot_length(&self, side: Side) -> T {
        self.slot_half(side) * T::lit(2.0)
    }

    /// Length of the common perpendicular between slots `a` and `b` of a pant.
    pub(crate) fn seam_between(&self, a: Side, b: Side) -> T {
        let c = Side::new(a.pant, 3 - a.slot - b.slot);
        crate::kernel::seam_length(self.slot_half(a), self.slot_half(b), self.slot_half(c))
    }

    fn perpendicular(&self, a: Side, b: Side) -> Mat2<T> {
        Mat2::left_turn() * Mat2::translation(self.seam_between(a, b)) * Mat2::left_turn()
    }

    pub(crate) fn seam_geometry(&self, from: Side, to: Side) -> Result<SeamGeometry<T>> {
        let topo = self.topology();
        for s in [from, to] {
            if from.pant != to.pant || topo.content(s) == SlotContent::Cusp {
                return Err(LabError::Itinerary(format!(
                    "no seam from ({}, {}) to ({}, {})",
                    from.pant, from.slot, to.pant, to.slot
                )));
            }
        }
        if to == from.next() {
            return Ok(SeamGeometry { depart: Foot::Half, arrive: Foot::Zero, frame: self.perpendicular(from, to) });
        }
        if to == from.prev() {
            return Ok(SeamGeometry { depart: Foot::Zero, arrive: Foot::Half, frame: self.perpendicular(from, to) });
        }
        // from == to: go out to a neighbouring boundary, once around it, back
        let next = from.next();
        if topo.content(next) != SlotContent::Cusp {
            let frame = self.perpendicular(from, next)
                * Mat2::translation(self.slot_length(next))
                * self.perpendicular(next, from);
            return Ok(SeamGeometry { depart: Foot::Half, arrive: Foot::Half, frame });
        }
        let prev = from.prev();
        if topo.content(prev) != SlotContent::Cusp {
            // around `prev` the simple arc runs against its orientation
            let frame = self.perpendicular(from, prev)
                * Mat2::translation(-self.slot_length(prev))
                * self.perpendicular(prev, from);
            return Ok(SeamGeometry { depart: Foot::Zero, arrive: Foot::Zero, frame });
        }
        Err(LabError::Itinerary(format!("pant {} has two cusps; no arc from slot {} to itself", from.pant, from.slot)))
    }

    /// Signed distance run along the curve when crossing it.
    pub(crate) fn crossing_shift(&self, from: Side, arrive: Foot, depart: Foot, turns: i64) -> T {
        let j = self.topology().curve_at(from).expect("crossing a curve slot");
        let len = self.coords().length(j);
        let wrapped = match (arrive, depart) {
            (Foot::Zero, Foot::Zero) | (Foot::Half, Foot::Half) => T::zero(),
            _ => -len / T::lit(2.0),
        };
        self.coords().twist(j) * len - wrapped + T::from_i64(turns).unwrap() * len
    }

    /// Cumulative frames along a closed broken arc. Entry `k` is the frame
    /// before move `k`; the last entry is the holonomy of the whole loop.
    pub fn walk(&self, moves: &[Move]) -> Result<Vec<Mat2<T>>> {
        let mut acc = Mat2::identity();
        let mut frames = vec![acc];
        for step in self.step_matrices(moves)? {
            acc = (acc * step).tidy();
            frames.push(acc);
        }
        Ok(frames)
    }

    /// The matrix of each move in its own frame.
    pub fn step_matrices(&self, moves: &[Move]) -> Result<Vec<Mat2<T>>> {
        let n = moves.len();
        if n == 0 || !n.is_multiple_of(2) {
            return Err(LabError::Itinerary("broken arc must alternate seams and curve runs".into()));
        }
        let seams: Vec<Option<SeamGeometry<T>>> = moves
            .iter()
            .map(|m| match *m {
                Move::Seam { from, to } => self.seam_geometry(from, to).map(Some),
                _ => Ok(None),
            })
            .collect::<Result<_>>()?;
        let topo = self.topology();
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            let step = match moves[k] {
                Move::Seam { .. } => {
                    if k % 2 != 0 {
                        return Err(LabError::Itinerary(format!("step {k}: seam out of place")));
                    }
                    seams[k].as_ref().unwrap().frame
                }
                Move::Cross { from, turns } | Move::Loop { at: from, turns } => {
                    let (Some(prev), Some(next)) = (&seams[(k + n - 1) % n], &seams[(k + 1) % n]) else {
                        return Err(LabError::Itinerary(format!("step {k}: run not between seams")));
                    };
                    let (Move::Seam { to: arrived, .. }, Move::Seam { from: leaving, .. }) =
                        (moves[(k + n - 1) % n], moves[(k + 1) % n])
                    else {
                        unreachable!()
                    };
                    if arrived != from {
                        return Err(LabError::Itinerary(format!("step {k}: run starts away from the seam's endpoint")));
                    }
                    match moves[k] {
                        Move::Cross { .. } => {
                            if topo.across(from) != Some(leaving) {
                                return Err(LabError::Itinerary(format!(
                                    "step {k}: crossing does not land where the next seam starts"
                                )));
                            }
                            let s = self.crossing_shift(from, prev.arrive, next.depart, turns);
                            Mat2::translation(s) * Mat2::half_turn()
                        }
                        _ => {
                            if leaving != from {
                                return Err(LabError::Itinerary(format!(
                                    "step {k}: loop does not return to its own boundary"
                                )));
                            }
                            let len = self.slot_length(from);
                            let travel = next.depart.position(len) - prev.arrive.position(len)
                                + T::from_i64(turns).unwrap() * len;
                            Mat2::translation(travel)
                        }
                    }
                }
            };
            out.push(step);
        }
        Ok(out)
    }

    pub fn closed_holonomy(&self, moves: &[Move]) -> Result<Mat2<T>> {
        Ok(*self.walk(moves)?.last().unwrap())
    }
}
