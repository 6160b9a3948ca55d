use std::collections::VecDeque;
use std::sync::OnceLock;

use crate::error::{LabError, Result};
use crate::kernel::{boundary_projection, chain_product, half_plane_distance, trace_length, IdealPoint, Mat2};
use crate::scalar::Real;
use crate::surface::walk::{Foot, Move};
use crate::surface::{PantsDecomposition, Side, SlotContent};

/// Fenchel-Nielsen coordinates: lengths and twist parameters, the latter in
/// fractional turns (a full Dehn twist adds 1).
#[derive(Debug, Clone, PartialEq)]
pub struct FnCoords<T> {
    lengths: Vec<T>,
    twists: Vec<T>,
}

impl<T: Real> FnCoords<T> {
    pub fn new(lengths: Vec<T>, twists: Vec<T>) -> Result<Self> {
        if lengths.len() != twists.len() {
            return Err(LabError::InvalidArgument(format!("{} lengths but {} twists", lengths.len(), twists.len())));
        }
        if let Some((j, l)) = lengths.iter().enumerate().find(|(_, l)| !(**l > T::zero() && l.is_finite())) {
            return Err(LabError::InvalidArgument(format!("length {j} must be positive, got {l}")));
        }
        if twists.iter().any(|t| !t.is_finite()) {
            return Err(LabError::InvalidArgument("twists must be finite".into()));
        }
        Ok(Self { lengths, twists })
    }

    pub fn len(&self) -> usize {
        self.lengths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lengths.is_empty()
    }

    pub fn length(&self, j: usize) -> T {
        self.lengths[j]
    }

    pub fn twist(&self, j: usize) -> T {
        self.twists[j]
    }

    pub fn lengths(&self) -> &[T] {
        &self.lengths
    }

    pub fn twists(&self) -> &[T] {
        &self.twists
    }

    pub fn with_length(mut self, j: usize, len: T) -> Result<Self> {
        self.lengths[j] = len;
        Self::new(self.lengths, self.twists)
    }

    pub fn with_twist(mut self, j: usize, twist: T) -> Self {
        self.twists[j] = twist;
        self
    }
}

/// Holonomy representation realized from Fenchel-Nielsen data.
///
/// The base frame sits on the first pants curve at the seam foot of its
/// first end, so that curve's axis is `(0, inf)` and the foot is at height 1.
#[derive(Debug, Clone)]
pub struct Holonomy<T> {
    /// Frame at foot `0` of every curve slot, reached through a spanning
    /// tree of the gluing graph.
    pub slot_frames: Vec<[Option<Mat2<T>>; 3]>,
    /// Generator for each pants curve, in the orientation of its first end.
    pub pants_curves: Vec<Mat2<T>>,
    /// One loop per curve not used by the spanning tree.
    pub marking_loops: Vec<(usize, Mat2<T>)>,
}

/// A marked hyperbolic surface: pants gluing plus Fenchel-Nielsen coordinates.
#[derive(Debug, Clone)]
pub struct PantsSurface<T> {
    topology: PantsDecomposition,
    coords: FnCoords<T>,
    holonomy: OnceLock<Holonomy<T>>,
}

impl<T: Real> PantsSurface<T> {
    pub fn new(topology: PantsDecomposition, coords: FnCoords<T>) -> Result<Self> {
        if coords.len() != topology.curve_count() {
            return Err(LabError::InvalidArgument(format!(
                "{} coordinates for {} curves",
                coords.len(),
                topology.curve_count()
            )));
        }
        Ok(Self { topology, coords, holonomy: OnceLock::new() })
    }

    pub fn topology(&self) -> &PantsDecomposition {
        &self.topology
    }

    pub fn coords(&self) -> &FnCoords<T> {
        &self.coords
    }

    pub fn with_coords(&self, coords: FnCoords<T>) -> Result<Self> {
        Self::new(self.topology.clone(), coords)
    }

    pub fn base_side(&self) -> Side {
        self.topology.curve(0).ends[0]
    }

    /// Lazily built holonomy.
    pub fn holonomy(&self) -> &Holonomy<T> {
        self.holonomy.get_or_init(|| self.build_holonomy())
    }

    /// Frame path inside one pant from foot `0` of `from` to foot `0` of `to`.
    fn intra_pant(&self, from: Side, to: Side) -> Mat2<T> {
        let two = T::lit(2.0);
        if to == from.next() {
            Mat2::translation(self.slot_length(from) / two)
                * self.seam_geometry(from, to).expect("adjacent slots").frame
        } else {
            self.seam_geometry(from, to).expect("adjacent slots").frame * Mat2::translation(self.slot_length(to) / two)
        }
    }

    fn build_holonomy(&self) -> Holonomy<T> {
        let topo = &self.topology;
        let mut frames: Vec<[Option<Mat2<T>>; 3]> = vec![[None; 3]; topo.pant_count()];
        let mut tree_edge = vec![false; topo.curve_count()];
        let base = self.base_side();
        let mut queue = VecDeque::new();
        frames[base.pant][base.slot] = Some(Mat2::identity());
        queue.push_back(base);
        while let Some(entry) = queue.pop_front() {
            let f = frames[entry.pant][entry.slot].unwrap();
            // fill the rest of the pant
            for other in [entry.next(), entry.prev()] {
                if topo.content(other) == SlotContent::Cusp || frames[other.pant][other.slot].is_some() {
                    continue;
                }
                // cusp neighbours block the direct seam, route around
                let step = if topo.content(entry) != SlotContent::Cusp {
                    self.intra_pant(entry, other)
                } else {
                    continue;
                };
                frames[other.pant][other.slot] = Some((f * step).tidy());
            }
            for k in 0..3 {
                let side = Side::new(entry.pant, k);
                let Some(sf) = frames[side.pant][side.slot] else { continue };
                let Some(j) = topo.curve_at(side) else { continue };
                let far = topo.across(side).unwrap();
                if frames[far.pant][far.slot].is_none() {
                    let s = self.crossing_shift(side, Foot::Zero, Foot::Zero, 0);
                    frames[far.pant][far.slot] = Some((sf * Mat2::translation(s) * Mat2::half_turn()).tidy());
                    tree_edge[j] = true;
                    queue.push_back(far);
                }
            }
        }
        let pants_curves = (0..topo.curve_count())
            .map(|j| {
                let e = topo.curve(j).ends[0];
                let f = frames[e.pant][e.slot].expect("connected gluing graph");
                Mat2::translation(self.coords.length(j)).conjugate_by(&f)
            })
            .collect();
        let marking_loops = (0..topo.curve_count())
            .filter(|&j| !tree_edge[j])
            .map(|j| {
                let [a, b] = topo.curve(j).ends;
                let fa = frames[a.pant][a.slot].unwrap();
                let fb = frames[b.pant][b.slot].unwrap();
                let s = self.crossing_shift(a, Foot::Zero, Foot::Zero, 0);
                (j, (fa * Mat2::translation(s) * Mat2::half_turn() * fb.inverse()).tidy())
            })
            .collect();
        Holonomy { slot_frames: frames, pants_curves, marking_loops }
    }

    /// Length of pants curve `j` read back from its holonomy generator as
    /// the displacement of a point on its axis. Better conditioned than the
    /// trace for short curves.
    pub fn length_readback(&self, j: usize) -> Result<T> {
        let e = self.topology.curve(j).ends[0];
        let hol = self.holonomy();
        let g = hol.pants_curves[j];
        let f = hol.slot_frames[e.pant][e.slot].unwrap();
        let p = f.apply_to_i();
        let q = (g * f).apply_to_i();
        let d = half_plane_distance(p, q);
        // the generator must still be hyperbolic
        trace_length(&g)?;
        Ok(d)
    }

    /// Twist parameter of curve `j` recomputed from the realized marking: the
    /// signed distance along the curve between the seam feet on its two
    /// sides, divided by its length.
    pub fn twist_parameter_readback(&self, j: usize) -> T {
        let [a, b] = self.topology.curve(j).ends;
        let hol = self.holonomy();
        let fa = hol.slot_frames[a.pant][a.slot].unwrap();
        let mut fb = hol.slot_frames[b.pant][b.slot].unwrap();
        // off-tree curves: bring the far frame onto the lift adjacent to `fa`
        if let Some((_, m)) = hol.marking_loops.iter().find(|(k, _)| *k == j) {
            fb = *m * fb;
        }
        let (_, height) = (fa.inverse() * fb).tidy().apply_to_i();
        height.ln() / self.coords.length(j)
    }

    /// Length of the closed geodesic in the class of a broken arc.
    pub fn broken_arc_length(&self, moves: &[Move]) -> Result<T> {
        trace_length(&self.closed_holonomy(moves)?)
    }

    /// Signed twisting number of a broken arc around pants curve `j`: the
    /// minimum over its crossings with `j` of the normalized difference of
    /// the projections of its axis endpoints onto the lifted curve.
    pub fn twisting_number(&self, moves: &[Move], j: usize) -> Result<T> {
        let steps = self.step_matrices(moves)?;
        let len = self.coords.length(j);
        let mut best: Option<T> = None;
        for (k, m) in moves.iter().enumerate() {
            let Move::Cross { from, .. } = *m else { continue };
            if self.topology.curve_at(from) != Some(j) {
                continue;
            }
            // the loop read from the crossing, so the lifted curve is (0, inf)
            let mut local = chain_product(steps[k..].iter().chain(&steps[..k]).copied());
            if self.topology.end_index(from) == Some(1) {
                local = local.conjugate_by(&Mat2::half_turn());
            }
            let (p, q) = local.axis_endpoints().ok_or(LabError::NonHyperbolic { trace: local.trace().as_f64() })?;
            let (Some(p), Some(q)) = (p, q) else {
                return Err(LabError::TwistingUndefined(self.topology.curve(j).name.clone()));
            };
            let (right, left) = match (p > T::zero(), q > T::zero()) {
                (true, false) => (p, q),
                (false, true) => (q, p),
                _ => return Err(LabError::TwistingUndefined(self.topology.curve(j).name.clone())),
            };
            let axis = (IdealPoint::Finite(T::zero()), IdealPoint::Infinity);
            let pr = boundary_projection(axis.0, axis.1, IdealPoint::Finite(right))?;
            let pl = boundary_projection(axis.0, axis.1, IdealPoint::Finite(left))?;
            let tw = (pr - pl) / len;
            best = Some(best.map_or(tw, |b: T| b.min(tw)));
        }
        best.ok_or_else(|| LabError::TwistingUndefined(self.topology.curve(j).name.clone()))
    }
}
