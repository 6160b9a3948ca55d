use serde::Serialize;

use crate::boundary::SurfaceFamily;
use crate::curves::CurveClass;
use crate::error::{LabError, Result};
use crate::scalar::NextFloat;
use crate::CertifiedInterval;

/// Zero-predicted entries must sit below this fraction of the fitted scale.
pub const ZERO_FRACTION: f64 = 0.5;

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum LimitVerdict {
    /// The limit is the projective class of the sum of these pants curves.
    Detected { curves: Vec<usize> },
    /// Zero or several candidate classes fit the intervals.
    Inconclusive { feasible: Vec<Vec<usize>> },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProjectiveLimit {
    pub t: f64,
    pub curve_ids: Vec<String>,
    /// Catalog lengths divided by `log t`.
    pub scaled: Vec<CertifiedInterval>,
    /// `scaled` divided by its largest midpoint.
    pub normalized: Vec<CertifiedInterval>,
    pub verdict: LimitVerdict,
}

impl ProjectiveLimit {
    pub fn is_detected(&self) -> bool {
        matches!(self.verdict, LimitVerdict::Detected { .. })
    }
}

/// Interval for `l(a) / l(b)`.
pub fn ratio(a: CertifiedInterval, b: CertifiedInterval) -> Result<CertifiedInterval> {
    if b.lo() <= 0.0 {
        return Err(LabError::InvalidArgument("ratio denominator may vanish".into()));
    }
    Ok(CertifiedInterval::new((a.lo().max(0.0) / b.hi()).step_down(), (a.hi() / b.lo()).step_up()))
}

/// Scale interval that fits the prediction, if any.
fn fit(scaled: &[CertifiedInterval], prediction: &[f64]) -> Option<CertifiedInterval> {
    let mut s: Option<CertifiedInterval> = None;
    for (x, &p) in scaled.iter().zip(prediction) {
        if p > 0.0 {
            let here = CertifiedInterval::new(x.lo() / p, x.hi() / p);
            s = match s {
                None => Some(here),
                Some(prev) => Some(prev.intersect(&here)?),
            };
        }
    }
    let s = s?;
    let zeros_ok =
        scaled.iter().zip(prediction).filter(|(_, p)| **p == 0.0).all(|(x, _)| x.hi() <= ZERO_FRACTION * s.lo());
    (s.lo() > 0.0 && zeros_ok).then_some(s)
}

/// Matches normalized catalog lengths at `t` against `i(., sum of g_j)`
/// for every nonempty set of pants curves.
pub fn thurston_limit_from(
    t: f64,
    catalog: &[&CurveClass],
    lengths: &[CertifiedInterval],
    n_curves: usize,
) -> Result<ProjectiveLimit> {
    if !(t > 1.0) {
        return Err(LabError::InvalidArgument(format!("t = {t} must exceed 1")));
    }
    if n_curves > 20 {
        return Err(LabError::InvalidArgument("too many pants curves to enumerate".into()));
    }
    let log_t = t.ln();
    let scaled: Vec<CertifiedInterval> = lengths
        .iter()
        .map(|l| CertifiedInterval::new((l.lo() / log_t).step_down(), (l.hi() / log_t).step_up()))
        .collect();
    let top = scaled.iter().map(|x| x.mid()).fold(0.0, f64::max);
    let normalized = if top > 0.0 { scaled.iter().map(|x| x.scale(1.0 / top)).collect() } else { scaled.clone() };
    let mut feasible = Vec::new();
    for mask in 1u32..(1 << n_curves) {
        let set: Vec<usize> = (0..n_curves).filter(|j| mask & (1 << j) != 0).collect();
        let prediction: Vec<f64> =
            catalog.iter().map(|c| set.iter().map(|&j| c.intersection_number(j) as f64).sum()).collect();
        if fit(&scaled, &prediction).is_some() {
            feasible.push(set);
        }
    }
    let verdict = if feasible.len() == 1 {
        LimitVerdict::Detected { curves: feasible.pop().unwrap() }
    } else {
        LimitVerdict::Inconclusive { feasible }
    };
    Ok(ProjectiveLimit { t, curve_ids: catalog.iter().map(|c| c.id.clone()).collect(), scaled, normalized, verdict })
}

pub fn thurston_limit(family: &dyn SurfaceFamily, t: f64) -> Result<ProjectiveLimit> {
    let lengths = family.catalog_lengths(t)?;
    thurston_limit_from(t, &family.catalog(), &lengths, family.curve_names().len())
}
