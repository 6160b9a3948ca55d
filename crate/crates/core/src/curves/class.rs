use crate::error::{LabError, Result};
use crate::scalar::Real;
use crate::surface::{Move, PantsDecomposition, PantsSurface, Side};

/// One step of a broken arc, in terms of pants-curve indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Step {
    /// Seam arc `H_ij` from curve `from` to curve `to`. `slot` picks the
    /// target slot when the pant has `to` on two of its boundaries.
    Seam { from: usize, to: usize, slot: Option<usize> },
    /// Cross curve `curve`, winding `turns` extra times around it.
    Wind { curve: usize, turns: i64 },
    /// Run `turns` times around `curve` (plus the offset between the seam
    /// feet) without crossing it.
    Loop { curve: usize, turns: i64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CurveShape {
    PantsCurve(usize),
    /// Cyclic itinerary starting with a seam. `start` is the boundary slot
    /// the first seam leaves from; by default the first end of its curve
    /// that closes up.
    Broken {
        steps: Vec<Step>,
        start: Option<Side>,
    },
}

/// A simple closed curve relative to a pants decomposition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveClass {
    pub id: String,
    pub shape: CurveShape,
}

impl CurveClass {
    pub fn pants_curve(id: impl Into<String>, j: usize) -> Self {
        Self { id: id.into(), shape: CurveShape::PantsCurve(j) }
    }

    pub fn broken(id: impl Into<String>, steps: Vec<Step>) -> Self {
        Self { id: id.into(), shape: CurveShape::Broken { steps, start: None } }
    }

    pub fn with_start(mut self, side: Side) -> Self {
        if let CurveShape::Broken { start, .. } = &mut self.shape {
            *start = Some(side);
        }
        self
    }

    pub fn is_pants_curve(&self) -> Option<usize> {
        match self.shape {
            CurveShape::PantsCurve(j) => Some(j),
            CurveShape::Broken { .. } => None,
        }
    }

    pub fn steps(&self) -> &[Step] {
        match &self.shape {
            CurveShape::PantsCurve(_) => &[],
            CurveShape::Broken { steps, .. } => steps,
        }
    }

    /// Geometric intersection number with pants curve `j`: the number of
    /// crossings in the (normalized) itinerary.
    pub fn intersection_number(&self, j: usize) -> usize {
        self.steps().iter().filter(|s| matches!(s, Step::Wind { curve, .. } if *curve == j)).count()
    }

    pub fn intersections(&self, n_curves: usize) -> Vec<usize> {
        (0..n_curves).map(|j| self.intersection_number(j)).collect()
    }

    /// Resolves the itinerary to boundary slots.
    pub fn resolve(&self, topo: &PantsDecomposition) -> Result<Vec<Move>> {
        let CurveShape::Broken { steps, start } = &self.shape else {
            return Err(LabError::Itinerary(format!("{} is a pants curve", self.id)));
        };
        let Some(Step::Seam { from, .. }) = steps.first() else {
            return Err(LabError::Itinerary(format!("{}: itinerary must start with a seam", self.id)));
        };
        if *from >= topo.curve_count() {
            return Err(LabError::Itinerary(format!("{}: no curve {from}", self.id)));
        }
        let candidates = match start {
            Some(s) => vec![*s],
            None => topo.curve(*from).ends.to_vec(),
        };
        let mut last = None;
        for s in candidates {
            match resolve_from(topo, steps, s) {
                Ok(m) => return Ok(m),
                Err(e) => last = Some(e),
            }
        }
        Err(match last.unwrap() {
            LabError::Itinerary(m) => LabError::Itinerary(format!("{}: {m}", self.id)),
            e => e,
        })
    }
}

fn resolve_from(topo: &PantsDecomposition, steps: &[Step], start: Side) -> Result<Vec<Move>> {
    let mut at = start;
    let mut moves = Vec::with_capacity(steps.len());
    let here = |at: Side, curve: usize, k: usize| -> Result<()> {
        if topo.curve_at(at) != Some(curve) {
            return Err(LabError::Itinerary(format!(
                "step {k} expects curve {curve} but the arc is on slot ({}, {})",
                at.pant, at.slot
            )));
        }
        Ok(())
    };
    for (k, step) in steps.iter().enumerate() {
        match *step {
            Step::Seam { from, to, slot } => {
                here(at, from, k)?;
                let target = match slot {
                    Some(s) if s < 3 => Side::new(at.pant, s),
                    Some(s) => return Err(LabError::Itinerary(format!("step {k}: slot {s}"))),
                    None if from == to => at,
                    None => {
                        let hits: Vec<Side> = (0..3)
                            .map(|s| Side::new(at.pant, s))
                            .filter(|s| *s != at && topo.curve_at(*s) == Some(to))
                            .collect();
                        match hits.as_slice() {
                            [one] => *one,
                            [] => {
                                return Err(LabError::Itinerary(format!(
                                    "step {k}: pant {} has no boundary on curve {to}",
                                    at.pant
                                )))
                            }
                            _ => {
                                return Err(LabError::Itinerary(format!(
                                    "step {k}: ambiguous target slot for curve {to}"
                                )))
                            }
                        }
                    }
                };
                here(target, to, k)?;
                moves.push(Move::Seam { from: at, to: target });
                at = target;
            }
            Step::Wind { curve, turns } => {
                here(at, curve, k)?;
                moves.push(Move::Cross { from: at, turns });
                at = topo.across(at).unwrap();
            }
            Step::Loop { curve, turns } => {
                here(at, curve, k)?;
                moves.push(Move::Loop { at, turns });
            }
        }
    }
    if at != start {
        return Err(LabError::Itinerary("itinerary does not close up".into()));
    }
    Ok(moves)
}

/// Rebuilds steps from resolved moves, keeping slots explicit only where
/// they are ambiguous.
pub(crate) fn steps_from_moves(topo: &PantsDecomposition, moves: &[Move]) -> Vec<Step> {
    moves
        .iter()
        .map(|m| match *m {
            Move::Seam { from, to } => {
                let (i, j) = (topo.curve_at(from).unwrap(), topo.curve_at(to).unwrap());
                let twins =
                    (0..3).filter(|s| *s != from.slot && topo.curve_at(Side::new(to.pant, *s)) == Some(j)).count();
                let implicit = if from == to { true } else { i != j && twins == 1 };
                Step::Seam { from: i, to: j, slot: (!implicit).then_some(to.slot) }
            }
            Move::Cross { from, turns } => Step::Wind { curve: topo.curve_at(from).unwrap(), turns },
            Move::Loop { at, turns } => Step::Loop { curve: topo.curve_at(at).unwrap(), turns },
        })
        .collect()
}

impl<T: Real> PantsSurface<T> {
    /// Length of the closed geodesic in the class of `c`.
    pub fn geodesic_length(&self, c: &CurveClass) -> Result<T> {
        match c.shape {
            CurveShape::PantsCurve(j) => {
                if j >= self.topology().curve_count() {
                    return Err(LabError::UnknownCurve(c.id.clone()));
                }
                Ok(self.coords().length(j))
            }
            CurveShape::Broken { .. } => self.broken_arc_length(&c.resolve(self.topology())?),
        }
    }

    /// Signed twisting number of `c` around pants curve `j`.
    pub fn curve_twisting_number(&self, c: &CurveClass, j: usize) -> Result<T> {
        if c.intersection_number(j) == 0 {
            return Err(LabError::TwistingUndefined(self.topology().curve(j).name.clone()));
        }
        self.twisting_number(&c.resolve(self.topology())?, j)
    }
}
