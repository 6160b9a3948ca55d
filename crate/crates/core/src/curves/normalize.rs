//! Removal of backtracking from broken arcs.
//!
//! Two local rewrites are applied until neither fires:
//! a seam `H_ab` followed by a full turn around `b` and `H_ba` becomes
//! `H_aa`; a seam `H_ab` followed directly by `H_ba` cancels and the runs on
//! either side merge. The integer winding of the runs next to a rewrite
//! depends on foot bookkeeping, so it is fixed by matching the holonomy on
//! a generic reference metric (the rewrites are homotopies, hence exact
//! identities on every metric).

use crate::curves::class::{steps_from_moves, CurveClass, CurveShape};
use crate::error::{LabError, Result};
use crate::surface::{FnCoords, Move, PantsDecomposition, PantsSurface};

fn reference_surface(topo: &PantsDecomposition) -> PantsSurface<f64> {
    let n = topo.curve_count();
    let lengths = (0..n).map(|j| 0.9 + 0.37 * ((j as f64 + 2.0).sqrt().fract())).collect();
    let twists = (0..n).map(|j| 0.11 + 0.173 * j as f64).collect();
    PantsSurface::new(topo.clone(), FnCoords::new(lengths, twists).expect("positive lengths"))
        .expect("matching coordinates")
}

fn turns_of(m: &Move) -> i64 {
    match *m {
        Move::Cross { turns, .. } | Move::Loop { turns, .. } => turns,
        Move::Seam { .. } => 0,
    }
}

fn with_turns(m: Move, turns: i64) -> Move {
    match m {
        Move::Cross { from, .. } => Move::Cross { from, turns },
        Move::Loop { at, .. } => Move::Loop { at, turns },
        seam => seam,
    }
}

struct Matcher {
    surface: PantsSurface<f64>,
    target: f64,
}

impl Matcher {
    fn new(surface: PantsSurface<f64>, moves: &[Move]) -> Result<Self> {
        let target = surface.broken_arc_length(moves)?;
        Ok(Self { surface, target })
    }

    fn matches(&self, moves: &[Move]) -> bool {
        self.surface.broken_arc_length(moves).is_ok_and(|l| (l - self.target).abs() <= 1e-9 * self.target.max(1.0))
    }

    /// Tries integer offsets on the runs at `slots` and returns the first
    /// candidate realizing the same curve.
    fn fix(&self, candidate: Vec<Move>, slots: &[usize], spread: i64) -> Option<Vec<Move>> {
        let mut offsets = vec![-spread; slots.len()];
        let mut best: Option<(i64, Vec<Move>)> = None;
        loop {
            let mut trial = candidate.clone();
            for (&k, &d) in slots.iter().zip(&offsets) {
                trial[k] = with_turns(trial[k], turns_of(&trial[k]) + d);
            }
            let cost: i64 = offsets.iter().map(|d| d.abs()).sum();
            if best.as_ref().is_none_or(|(c, _)| cost < *c) && self.matches(&trial) {
                best = Some((cost, trial));
            }
            let mut k = 0;
            while k < offsets.len() && offsets[k] == spread {
                offsets[k] = -spread;
                k += 1;
            }
            if k == offsets.len() {
                break;
            }
            offsets[k] += 1;
        }
        best.map(|(_, m)| m)
    }
}

fn rotate_to(moves: &mut [Move], start: usize) {
    let n = moves.len();
    moves.rotate_left(start % n);
}

/// One rewrite, or `None` when the arc is already normal.
fn rewrite_once(matcher: &Matcher, moves: &[Move]) -> Result<Option<Vec<Move>>> {
    let n = moves.len();
    for i in (0..n).step_by(2) {
        let (Move::Seam { from: a, to: b }, Move::Seam { from: b2, to: a2 }) = (moves[i], moves[(i + 2) % n]) else {
            continue;
        };
        let Move::Loop { turns, .. } = moves[(i + 1) % n] else { continue };
        if a == b || b != b2 || a != a2 {
            continue;
        }
        let mut m = moves.to_vec();
        rotate_to(&mut m, i);
        // m = [H_ab, loop at b, H_ba, run, ..., run]
        if turns == 0 {
            if n == 4 {
                return Err(LabError::Itinerary("curve is peripheral or trivial".into()));
            }
            let before = m[n - 1];
            let after = m[3];
            let merged = match (before, after) {
                (Move::Cross { from, turns: k1 }, Move::Cross { turns: k2, .. }) => {
                    Move::Loop { at: from, turns: k1 - k2 }
                }
                (Move::Loop { turns: k1, .. }, Move::Cross { from, turns: k2 }) => Move::Cross { from, turns: k1 + k2 },
                (Move::Cross { from, turns: k1 }, Move::Loop { turns: k2, .. }) => Move::Cross { from, turns: k1 + k2 },
                (Move::Loop { at, turns: k1 }, Move::Loop { turns: k2, .. }) => Move::Loop { at, turns: k1 + k2 },
                _ => unreachable!("runs alternate with seams"),
            };
            let mut candidate: Vec<Move> = m[4..n - 1].to_vec();
            candidate.push(merged);
            let last = candidate.len() - 1;
            let spread = 3;
            return match matcher.fix(candidate, &[last], spread) {
                Some(c) => Ok(Some(c)),
                None => Err(LabError::Itinerary("could not cancel a backtracking seam".into())),
            };
        }
        let simple = (b == a.next() && turns == 1) || (b == a.prev() && turns == -1);
        if !simple {
            continue;
        }
        let mut candidate = vec![Move::Seam { from: a, to: a }];
        candidate.extend_from_slice(&m[3..]);
        let runs: Vec<usize> = if candidate.len() == 2 { vec![1] } else { vec![1, candidate.len() - 1] };
        let spread = if runs.len() == 1 { 2 } else { 1 };
        // the replaced arc may be unavailable (e.g. the route around a cusp)
        if let Some(c) = matcher.fix(candidate, &runs, spread) {
            return Ok(Some(c));
        }
    }
    Ok(None)
}

impl CurveClass {
    /// Canonical backtracking-free form of the itinerary.
    pub fn normalize(&self, topo: &PantsDecomposition) -> Result<CurveClass> {
        if self.is_pants_curve().is_some() {
            return Ok(self.clone());
        }
        let mut moves = self.resolve(topo)?;
        let matcher = Matcher::new(reference_surface(topo), &moves)?;
        while let Some(next) = rewrite_once(&matcher, &moves)? {
            moves = next;
        }
        let start = match moves[0] {
            Move::Seam { from, .. } => from,
            _ => unreachable!(),
        };
        let steps = steps_from_moves(topo, &moves);
        Ok(CurveClass { id: self.id.clone(), shape: CurveShape::Broken { steps, start: Some(start) } })
    }
}
