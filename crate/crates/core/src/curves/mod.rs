//! Curves as broken arcs over a pants decomposition.

mod catalog;
mod class;
mod estimate;
mod normalize;

pub use catalog::Catalog;
pub use class::{CurveClass, CurveShape, Step};
pub use estimate::{
    broken_arc_estimate, calibrate, central_value, sample_surfaces, ArcEstimate, Calibration, CALIBRATION_POINTS,
    DEFAULT_M, SAFETY_FACTOR,
};

use crate::error::{LabError, Result};
use crate::surface::{PantsDecomposition, SlotContent};

/// Dual curve of pants curve `j`: meets `j` once or twice (as its two sides
/// lie on one pant or two) and no other pants curve.
pub fn dual_curve(topo: &PantsDecomposition, j: usize) -> Result<CurveClass> {
    if j >= topo.curve_count() {
        return Err(LabError::UnknownCurve(j.to_string()));
    }
    let [a, b] = topo.curve(j).ends;
    let id = format!("dual({})", topo.curve(j).name);
    if a.pant == b.pant {
        let steps = vec![Step::Seam { from: j, to: j, slot: Some(b.slot) }, Step::Wind { curve: j, turns: 0 }];
        return Ok(CurveClass::broken(id, steps).with_start(a));
    }
    for s in [a, b] {
        let cusps = [s.next(), s.prev()].iter().filter(|o| topo.content(**o) == SlotContent::Cusp).count();
        if cusps == 2 {
            return Err(LabError::Topology(format!(
                "pant {} has two cusps; its seam from {} to itself is not realized",
                s.pant,
                topo.curve(j).name
            )));
        }
    }
    let steps = vec![
        Step::Seam { from: j, to: j, slot: None },
        Step::Wind { curve: j, turns: 0 },
        Step::Seam { from: j, to: j, slot: None },
        Step::Wind { curve: j, turns: 0 },
    ];
    Ok(CurveClass::broken(id, steps).with_start(a))
}

/// Dual of a curve given as a class; only pants curves have duals.
pub fn dual_of(topo: &PantsDecomposition, c: &CurveClass) -> Result<CurveClass> {
    match c.is_pants_curve() {
        Some(j) => dual_curve(topo, j),
        None => Err(LabError::DualOfNonPantsCurve),
    }
}

/// Weighted multicurve supported on pants curves.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedMulticurve {
    components: Vec<(usize, f64)>,
}

impl WeightedMulticurve {
    pub fn new(mut components: Vec<(usize, f64)>) -> Result<Self> {
        if components.is_empty() {
            return Err(LabError::InvalidArgument("empty multicurve".into()));
        }
        components.sort_by_key(|c| c.0);
        for w in components.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(LabError::InvalidArgument(format!("curve {} listed twice", w[0].0)));
            }
        }
        if let Some((j, c)) = components.iter().find(|(_, c)| !(*c > 0.0 && c.is_finite())) {
            return Err(LabError::InvalidArgument(format!("weight {c} of curve {j} must be positive")));
        }
        Ok(Self { components })
    }

    /// Parses `"g1:1.0,g2:0.5"`; a bare name has weight 1.
    pub fn parse(text: &str, topo: &PantsDecomposition) -> Result<Self> {
        let mut out = Vec::new();
        for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (name, w) = match part.split_once(':') {
                Some((n, w)) => {
                    let w: f64 =
                        w.trim().parse().map_err(|_| LabError::InvalidArgument(format!("bad weight in \"{part}\"")))?;
                    (n.trim(), w)
                }
                None => (part, 1.0),
            };
            out.push((topo.curve_index(name)?, w));
        }
        Self::new(out)
    }

    pub fn components(&self) -> &[(usize, f64)] {
        &self.components
    }

    pub fn weight(&self, j: usize) -> Option<f64> {
        self.components.iter().find(|c| c.0 == j).map(|c| c.1)
    }

    pub fn contains(&self, j: usize) -> bool {
        self.weight(j).is_some()
    }

    pub fn c_max(&self) -> f64 {
        self.components.iter().map(|c| c.1).fold(0.0, f64::max)
    }

    /// `i(alpha, lambda) = sum_i c_i i(alpha, g_i)`.
    pub fn intersection(&self, alpha: &CurveClass) -> f64 {
        self.components.iter().map(|&(j, c)| c * alpha.intersection_number(j) as f64).sum()
    }
}
