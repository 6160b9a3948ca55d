use std::f64::consts::PI;

use serde::Serialize;

use crate::boundary::{component_distances, ProductRegionImage};
use crate::error::{LabError, Result};
use crate::graft::GraftRay;
use crate::scalar::NextFloat;
use crate::teich::TeichRayModel;
use crate::CertifiedInterval;

pub const DEFAULT_BOUND: f64 = 10.0;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CurveComparison {
    pub curve: usize,
    pub distance: CertifiedInterval,
    /// `|log(l_teich / l_graft)|`.
    pub log_ratio: CertifiedInterval,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CertificatePoint {
    pub t: f64,
    pub distance: CertifiedInterval,
    pub components: Vec<CurveComparison>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Certificate {
    pub sup_distance: CertifiedInterval,
    pub bound: f64,
    pub pass: bool,
    pub per_t: Vec<CertificatePoint>,
}

fn abs_log(x: CertifiedInterval) -> CertifiedInterval {
    x.ln().abs()
}

/// Product-region comparison of the two rays at one `t`.
pub fn certificate_point(g: &GraftRay, m: &TeichRayModel, t: f64, eps0: f64, slack: f64) -> Result<CertificatePoint> {
    let gl = g.at(t)?.len_bounds;
    let gp = (0..gl.len())
        .map(|j| g.twist_budget(t, j, g.params().t0))
        .collect::<Result<Vec<_>>>()
        .map_err(|e| LabError::NotThin { t, reason: e.to_string() })?;
    let ml = m.pants_lengths(t)?;
    let mp = m.twist_products();
    let p = ProductRegionImage::new(t, &gl, &gp, eps0);
    let q = ProductRegionImage::new(t, &ml, &mp, eps0);
    let names = g.params().base.topology();
    for &(j, _) in g.params().lam.components() {
        for (img, which) in [(&p, "grafting"), (&q, "Teichmüller")] {
            if !img.is_thin(j) {
                return Err(LabError::NotThin {
                    t,
                    reason: format!("{} is not {eps0}-thin on the {which} ray", names.curve(j).name),
                });
            }
        }
    }
    let parts = component_distances(&p, &q)
        .map_err(|_| LabError::NotThin { t, reason: "the two rays have different thin sets".into() })?;
    let (mut lo, mut hi) = (0.0f64, 0.0f64);
    for (_, d) in &parts {
        lo = lo.max(d.lo());
        hi = hi.max(d.hi());
    }
    let distance = CertifiedInterval::new((lo - slack).max(0.0), (hi + slack).step_up());
    let components = parts
        .into_iter()
        .map(|(j, d)| CurveComparison { curve: j, distance: d, log_ratio: abs_log(ml[j] / gl[j]) })
        .collect();
    Ok(CertificatePoint { t, distance, components })
}

/// Sup of the pointwise distances; passes when its upper end is at most `bound`.
pub fn assemble(per_t: Vec<CertificatePoint>, bound: f64) -> Result<Certificate> {
    if per_t.is_empty() {
        return Err(LabError::InvalidArgument("empty t-grid".into()));
    }
    let lo = per_t.iter().map(|p| p.distance.lo()).fold(0.0, f64::max);
    let hi = per_t.iter().map(|p| p.distance.hi()).fold(0.0, f64::max);
    Ok(Certificate { sup_distance: CertifiedInterval::new(lo, hi), bound, pass: hi <= bound, per_t })
}

/// Bounded distance between the grafting ray and the Teichmüller ray, over `grid`.
pub fn quasi_geodesic_certificate(
    g: &GraftRay,
    m: &TeichRayModel,
    grid: &[f64],
    eps0: f64,
    slack: f64,
    bound: f64,
) -> Result<Certificate> {
    let per_t = grid.iter().map(|&t| certificate_point(g, m, t, eps0, slack)).collect::<Result<Vec<_>>>()?;
    assemble(per_t, bound)
}

/// Large-`t` range of `|log(l_teich / l_graft)|` for a multicurve component
/// from the closed forms: the graft length lies in
/// `[2 theta0 / c_max, pi / c_j] l / t` and the model length in
/// `[1 / kappa, kappa] pi l / (c_j K0 t)`.
pub fn predicted_log_ratio(g: &GraftRay, m: &TeichRayModel, j: usize) -> Result<CertifiedInterval> {
    let c = g.params().lam.weight(j).ok_or(LabError::UnknownCurve(j.to_string()))?;
    let th = g.params().theta0;
    let (k0, kappa) = (m.k0(), m.kappa());
    let lo = -(k0 * kappa).ln();
    let hi = (PI * kappa * g.params().c_max() / (2.0 * th * c * k0)).ln();
    Ok(abs_log(CertifiedInterval::new(lo, hi).exp()))
}
