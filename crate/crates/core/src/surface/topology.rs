use std::collections::VecDeque;

use crate::error::{LabError, Result};

/// A boundary slot of a pair of pants: `(pant index, slot 0..3)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Side {
    pub pant: usize,
    pub slot: usize,
}

impl Side {
    pub const fn new(pant: usize, slot: usize) -> Self {
        Self { pant, slot }
    }

    /// Next slot in the cyclic order of the pant's boundary.
    pub fn next(self) -> Self {
        Self::new(self.pant, (self.slot + 1) % 3)
    }

    pub fn prev(self) -> Self {
        Self::new(self.pant, (self.slot + 2) % 3)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SlotContent {
    Curve(usize),
    Cusp,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveEdge {
    pub name: String,
    pub ends: [Side; 2],
}

/// Trivalent gluing graph of a pants decomposition.
///
/// Each pants curve is an edge joining two boundary slots; the marking is
/// the standard one in which seams on the two sides of every curve meet
/// at twist zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PantsDecomposition {
    pant_names: Vec<String>,
    slots: Vec<[SlotContent; 3]>,
    curves: Vec<CurveEdge>,
    genus: usize,
    punctures: usize,
}

impl PantsDecomposition {
    pub fn new(pant_names: Vec<String>, curves: Vec<CurveEdge>, cusps: Vec<Side>) -> Result<Self> {
        let n_pants = pant_names.len();
        if n_pants == 0 {
            return Err(LabError::Topology("no pants".into()));
        }
        let mut slots: Vec<[Option<SlotContent>; 3]> = vec![[None; 3]; n_pants];
        let mut place = |side: Side, content: SlotContent, who: &str| -> Result<()> {
            if side.pant >= n_pants || side.slot >= 3 {
                return Err(LabError::Gluing {
                    curve: who.to_string(),
                    reason: format!("slot ({}, {}) does not exist", side.pant, side.slot),
                });
            }
            let cell = &mut slots[side.pant][side.slot];
            if cell.is_some() {
                return Err(LabError::Gluing {
                    curve: who.to_string(),
                    reason: format!("slot ({}, {}) is already filled", side.pant, side.slot),
                });
            }
            *cell = Some(content);
            Ok(())
        };
        for (j, c) in curves.iter().enumerate() {
            if c.ends[0] == c.ends[1] {
                return Err(LabError::Gluing { curve: c.name.clone(), reason: "both ends on the same slot".into() });
            }
            for e in c.ends {
                place(e, SlotContent::Curve(j), &c.name)?;
            }
        }
        for s in &cusps {
            place(*s, SlotContent::Cusp, "cusp")?;
        }
        let slots: Vec<[SlotContent; 3]> = slots
            .into_iter()
            .enumerate()
            .map(|(p, row)| {
                let mut out = [SlotContent::Cusp; 3];
                for (k, cell) in row.into_iter().enumerate() {
                    out[k] = cell
                        .ok_or_else(|| LabError::Topology(format!("pant {} slot {k} is not filled", pant_names[p])))?;
                }
                Ok(out)
            })
            .collect::<Result<_>>()?;

        // Euler characteristic: -n_pants = 2 - 2g - p
        let p = cusps.len();
        let twice_g = n_pants as isize + 2 - p as isize;
        if twice_g < 0 || twice_g % 2 != 0 {
            return Err(LabError::Topology(format!(
                "{n_pants} pants with {p} cusps do not close up to an orientable surface"
            )));
        }
        let genus = (twice_g / 2) as usize;
        if 3 * genus + p < 3 || curves.len() + 3 != 3 * genus + p {
            return Err(LabError::Topology(format!(
                "{} curves, expected 3g - 3 + p = {}",
                curves.len(),
                (3 * genus + p) as isize - 3
            )));
        }

        let topo = Self { pant_names, slots, curves, genus, punctures: p };
        topo.check_connected()?;
        Ok(topo)
    }

    fn check_connected(&self) -> Result<()> {
        let mut seen = vec![false; self.pant_count()];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        while let Some(p) = queue.pop_front() {
            for content in self.slots[p] {
                if let SlotContent::Curve(j) = content {
                    for e in self.curves[j].ends {
                        if !seen[e.pant] {
                            seen[e.pant] = true;
                            queue.push_back(e.pant);
                        }
                    }
                }
            }
        }
        if seen.iter().all(|&s| s) {
            Ok(())
        } else {
            Err(LabError::Topology("gluing graph is disconnected".into()))
        }
    }

    pub fn pant_count(&self) -> usize {
        self.pant_names.len()
    }

    pub fn pant_names(&self) -> &[String] {
        &self.pant_names
    }

    pub fn curve_count(&self) -> usize {
        self.curves.len()
    }

    pub fn curves(&self) -> &[CurveEdge] {
        &self.curves
    }

    pub fn curve(&self, j: usize) -> &CurveEdge {
        &self.curves[j]
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn punctures(&self) -> usize {
        self.punctures
    }

    pub fn content(&self, side: Side) -> SlotContent {
        self.slots[side.pant][side.slot]
    }

    pub fn curve_at(&self, side: Side) -> Option<usize> {
        match self.content(side) {
            SlotContent::Curve(j) => Some(j),
            SlotContent::Cusp => None,
        }
    }

    pub fn curve_index(&self, name: &str) -> Result<usize> {
        self.curves.iter().position(|c| c.name == name).ok_or_else(|| LabError::UnknownCurve(name.to_string()))
    }

    /// Which end (0 or 1) of its curve a slot is.
    pub fn end_index(&self, side: Side) -> Option<usize> {
        let j = self.curve_at(side)?;
        self.curves[j].ends.iter().position(|&e| e == side)
    }

    /// The slot on the other side of the curve glued at `side`.
    pub fn across(&self, side: Side) -> Option<Side> {
        let j = self.curve_at(side)?;
        let e = self.end_index(side)?;
        Some(self.curves[j].ends[1 - e])
    }

    /// Standard genus-2 decomposition: two pants glued along three curves.
    pub fn genus_two() -> Self {
        let curves = (0..3)
            .map(|j| CurveEdge { name: format!("g{}", j + 1), ends: [Side::new(0, j), Side::new(1, j)] })
            .collect();
        Self::new(vec!["P0".into(), "P1".into()], curves, Vec::new()).expect("genus-two gluing is valid")
    }

    /// One-holed torus pant glued to itself along one curve, with the third
    /// slot a cusp.
    pub fn punctured_torus() -> Self {
        let curves = vec![CurveEdge { name: "g1".into(), ends: [Side::new(0, 0), Side::new(0, 1)] }];
        Self::new(vec!["P0".into()], curves, vec![Side::new(0, 2)]).expect("punctured torus gluing is valid")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn genus_two_counts() {
        let t = PantsDecomposition::genus_two();
        assert_eq!(t.genus(), 2);
        assert_eq!(t.punctures(), 0);
        assert_eq!(t.curve_count(), 3);
        assert_eq!(t.across(Side::new(0, 1)), Some(Side::new(1, 1)));
    }

    #[test]
    fn punctured_torus_counts() {
        let t = PantsDecomposition::punctured_torus();
        assert_eq!((t.genus(), t.punctures(), t.curve_count()), (1, 1, 1));
        assert_eq!(t.across(Side::new(0, 0)), Some(Side::new(0, 1)));
    }

    #[test]
    fn double_filled_slot_names_the_curve() {
        let curves = vec![
            CurveEdge { name: "a".into(), ends: [Side::new(0, 0), Side::new(1, 0)] },
            CurveEdge { name: "b".into(), ends: [Side::new(0, 0), Side::new(1, 1)] },
            CurveEdge { name: "c".into(), ends: [Side::new(0, 2), Side::new(1, 2)] },
        ];
        let err = PantsDecomposition::new(vec!["P".into(), "Q".into()], curves, vec![]).unwrap_err();
        assert!(matches!(err, LabError::Gluing { ref curve, .. } if curve == "b"));
    }

    #[test]
    fn unfilled_slot_is_rejected() {
        let curves = vec![CurveEdge { name: "a".into(), ends: [Side::new(0, 0), Side::new(0, 1)] }];
        assert!(PantsDecomposition::new(vec!["P".into()], curves, vec![]).is_err());
    }

    #[test]
    fn disconnected_graph_is_rejected() {
        let mut curves = Vec::new();
        for p in 0..2 {
            curves.push(CurveEdge { name: format!("a{p}"), ends: [Side::new(2 * p, 0), Side::new(2 * p + 1, 0)] });
            curves.push(CurveEdge { name: format!("b{p}"), ends: [Side::new(2 * p, 1), Side::new(2 * p + 1, 1)] });
            curves.push(CurveEdge { name: format!("c{p}"), ends: [Side::new(2 * p, 2), Side::new(2 * p + 1, 2)] });
        }
        let names = (0..4).map(|p| format!("P{p}")).collect();
        // 4 pants, 6 curves: Euler count says genus 3, but two components
        let err = PantsDecomposition::new(names, curves, vec![]).unwrap_err();
        assert!(matches!(err, LabError::Topology(_)));
    }
}
