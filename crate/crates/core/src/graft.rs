//! Certified surrogate for the grafting ray `t -> gr_{t lambda}(X)`.
//!
//! Nothing here uniformizes a grafted surface. Every quantity is an interval
//! built from the base surface `X` and closed-form comparison bounds.

use std::f64::consts::PI;

use crate::curves::{
    broken_arc_estimate, calibrate, dual_curve, Calibration, CurveClass, WeightedMulticurve, DEFAULT_M,
};
use crate::error::{LabError, Result};
use crate::kernel::{collar_half_width, length_with_collar_width, superadditive_modulus, AnnulusModel};
use crate::scalar::NextFloat;
use crate::{CertifiedInterval, Surface};

pub const DEFAULT_T0: f64 = 1.0;

/// Embedded collar half-width `eps0` (half the collar-lemma width of the
/// longest pants curve) and the sector half-angle `theta0 = acos(1/cosh eps0)`.
pub fn collar_angle(base: &Surface) -> (f64, f64) {
    let longest = base.coords().lengths().iter().copied().fold(0.0, f64::max);
    let eps0 = 0.5 * collar_half_width(longest);
    (eps0, (1.0 / eps0.cosh()).acos())
}

/// `[e^{-2C} l, e^{2C} l]`: lengths on a surface at Teichmüller distance `C`.
pub fn wolpert_transfer(len_x: f64, c: f64) -> Result<CertifiedInterval> {
    if !(len_x > 0.0) || !(c >= 0.0) {
        return Err(LabError::InvalidArgument(format!("wolpert_transfer({len_x}, {c})")));
    }
    if c == 0.0 {
        return Ok(CertifiedInterval::point(len_x));
    }
    let e = (2.0 * c).exp();
    Ok(CertifiedInterval::new((len_x / e).step_down(), (len_x * e).step_up()))
}

/// `[2 theta0 / (2 theta0 + c_max t), pi / (pi + c t)] l` for a grafted
/// curve of base length `l` and weight `c`.
pub fn length_bounds(l: f64, c: f64, c_max: f64, theta0: f64, t: f64) -> Result<CertifiedInterval> {
    if !(l > 0.0 && c > 0.0 && c <= c_max && t >= 0.0 && theta0 > 0.0) {
        return Err(LabError::InvalidArgument(format!("length_bounds(l = {l}, c = {c}, c_max = {c_max}, t = {t})")));
    }
    if t == 0.0 {
        return Ok(CertifiedInterval::point(l));
    }
    let th2 = 2.0 * theta0;
    let lo = th2 / (th2 + c_max * t) * l;
    let hi = PI / (PI + c * t) * l;
    Ok(CertifiedInterval::new(lo.step_down(), hi.step_up()))
}

/// Core length of the annular cover of a grafted curve: it holds the
/// hyperbolic annular cover (modulus `pi / l`) and the grafted cylinder
/// (height `c t`, circumference `l`) disjointly.
pub fn annular_cover_bound(l: f64, c: f64, t: f64) -> Result<f64> {
    let mut parts = vec![AnnulusModel::cylinder(PI, l)?];
    if t > 0.0 {
        parts.push(AnnulusModel::cylinder(c * t, l)?);
    }
    Ok(PI / superadditive_modulus(&parts))
}

/// `2 log cot(t0 pi / (2 c t))`, the sector part of a cylinder crossing.
pub fn sector_term(t0: f64, c: f64, t: f64) -> Result<f64> {
    if !(t0 < c * t) {
        return Err(LabError::SegmentDecomposition { t0, limit: c * t });
    }
    let x = t0 * PI / (2.0 * c * t);
    Ok(2.0 * (1.0 / x.tan()).ln())
}

#[derive(Debug, Clone)]
pub struct GraftParams {
    pub base: Surface,
    pub lam: WeightedMulticurve,
    pub eps0: f64,
    pub theta0: f64,
    pub t0: f64,
    pub m: f64,
}

impl GraftParams {
    pub fn new(base: Surface, lam: WeightedMulticurve) -> Result<Self> {
        if let Some(&(j, _)) = lam.components().iter().find(|(j, _)| *j >= base.topology().curve_count()) {
            return Err(LabError::UnknownCurve(j.to_string()));
        }
        let (eps0, theta0) = collar_angle(&base);
        Ok(Self { base, lam, eps0, theta0, t0: DEFAULT_T0, m: DEFAULT_M })
    }

    pub fn with_theta0(mut self, theta0: f64) -> Result<Self> {
        if !(theta0 > 0.0 && theta0 < PI / 2.0) {
            return Err(LabError::InvalidArgument(format!("theta0 = {theta0} not in (0, pi/2)")));
        }
        self.theta0 = theta0;
        Ok(self)
    }

    pub fn with_t0(mut self, t0: f64) -> Result<Self> {
        if !(t0 > 0.0 && t0.is_finite()) {
            return Err(LabError::InvalidArgument(format!("t0 = {t0} must be positive")));
        }
        self.t0 = t0;
        Ok(self)
    }

    pub fn with_m(mut self, m: f64) -> Self {
        self.m = m;
        self
    }

    pub fn c_max(&self) -> f64 {
        self.lam.c_max()
    }
}

/// Base-surface data for one catalog curve.
#[derive(Debug, Clone)]
struct CurveData {
    class: CurveClass,
    len_x: f64,
    /// `|tw_X(curve, g_j) - tw_X(dual_j, g_j)| + 1` for every crossed `g_j`.
    relative_twist: Vec<f64>,
    cal: Calibration,
}

#[derive(Debug, Clone)]
pub struct GraftRay {
    params: GraftParams,
    duals: Vec<CurveClass>,
    dual_len_x: Vec<f64>,
    dual_cal: Vec<Calibration>,
    catalog: Vec<CurveData>,
}

/// Everything the surrogate asserts at one parameter value.
#[derive(Debug, Clone)]
pub struct GraftSnapshot {
    pub t: f64,
    pub len_bounds: Vec<CertifiedInterval>,
    /// Interval for `Tw(dual_j, g_j) l(g_j)`; `None` when the segment
    /// decomposition is not yet valid (`t0 >= c_j t`).
    pub twist_budget: Vec<Option<CertifiedInterval>>,
    pub dist_to_base: CertifiedInterval,
    pub thurston: Vec<f64>,
}

/// `2 t0 + 2 log cot(t0 pi / (2 c t))`: length of a crossing of the grafted
/// cylinder of weight `c`, split into two sector arcs and a middle segment.
fn cylinder_crossing(t0: f64, c: f64, t: f64) -> Result<f64> {
    Ok(2.0 * t0 + sector_term(t0, c, t)?)
}

impl GraftRay {
    pub fn new(params: GraftParams, catalog: &[CurveClass]) -> Result<Self> {
        let s = &params.base;
        let topo = s.topology();
        let n = topo.curve_count();
        let duals = (0..n).map(|j| dual_curve(topo, j)).collect::<Result<Vec<_>>>()?;
        let dual_len_x = duals.iter().map(|d| s.geodesic_length(d)).collect::<Result<Vec<_>>>()?;
        let dual_cal = duals.iter().map(|d| calibrate(topo, d, params.m)).collect::<Result<Vec<_>>>()?;
        let dual_tw = (0..n).map(|j| s.curve_twisting_number(&duals[j], j)).collect::<Result<Vec<_>>>()?;
        let mut data = Vec::new();
        for c in catalog {
            let mut relative_twist = vec![0.0; n];
            for j in 0..n {
                if c.intersection_number(j) > 0 {
                    relative_twist[j] = (s.curve_twisting_number(c, j)? - dual_tw[j]).abs() + 1.0;
                }
            }
            data.push(CurveData {
                class: c.clone(),
                len_x: s.geodesic_length(c)?,
                relative_twist,
                cal: calibrate(topo, c, params.m)?,
            });
        }
        Ok(Self { params, duals, dual_len_x, dual_cal, catalog: data })
    }

    pub fn params(&self) -> &GraftParams {
        &self.params
    }

    pub fn catalog(&self) -> impl Iterator<Item = &CurveClass> {
        self.catalog.iter().map(|d| &d.class)
    }

    fn base_length(&self, j: usize) -> f64 {
        self.params.base.coords().length(j)
    }

    fn weight(&self, j: usize) -> Result<f64> {
        self.params.lam.weight(j).ok_or_else(|| {
            LabError::InvalidArgument(format!(
                "{} is not a component of lambda",
                self.params.base.topology().curve(j).name
            ))
        })
    }

    /// Thurston-metric length `l_X(alpha) + t i(alpha, lambda)`, an upper
    /// bound for the hyperbolic length on the grafted surface.
    pub fn thurston_length(&self, t: f64, alpha: &CurveClass) -> Result<f64> {
        let len_x = self.params.base.geodesic_length(alpha)?;
        Ok(len_x + t * self.params.lam.intersection(alpha))
    }

    /// Grafting length bounds for `g_j` in lambda; see [`length_bounds`].
    pub fn grafted_length_bounds(&self, t: f64, j: usize) -> Result<CertifiedInterval> {
        let c = self.weight(j)?;
        length_bounds(self.base_length(j), c, self.params.c_max(), self.params.theta0, t)
    }

    pub fn annular_cover_upper_bound(&self, t: f64, j: usize) -> Result<f64> {
        annular_cover_bound(self.base_length(j), self.weight(j)?, t)
    }

    /// `1/2 log((2 theta0 + c_max t) / (2 theta0))`.
    pub fn qc_distance_bound(&self, t: f64) -> f64 {
        0.5 * (self.params.c_max() * t / (2.0 * self.params.theta0)).ln_1p()
    }

    /// Interval for the Teichmüller distance from `X`.
    pub fn dist_to_base(&self, t: f64) -> CertifiedInterval {
        let hi = self.qc_distance_bound(t);
        let lo = self.params.lam.components().iter().map(|&(_, c)| 0.5 * (c * t / PI).ln_1p()).fold(0.0, f64::max);
        if t == 0.0 {
            return CertifiedInterval::point(0.0);
        }
        CertifiedInterval::new(lo.step_down().max(0.0), hi.step_up())
    }

    /// Length bounds for any pants curve: the grafting bounds on lambda,
    /// otherwise Wolpert transfer sharpened by the collar lemma applied to
    /// the dual (whose length never grows) and capped by `l_X`.
    pub fn pants_curve_bounds(&self, t: f64, j: usize) -> Result<CertifiedInterval> {
        if self.params.lam.contains(j) {
            return self.grafted_length_bounds(t, j);
        }
        let l = self.base_length(j);
        if t == 0.0 {
            return Ok(CertifiedInterval::point(l));
        }
        let n = self.duals[j].intersection_number(j) as f64;
        let collar = length_with_collar_width(self.dual_len_x[j] / n);
        let wolpert = wolpert_transfer(l, self.qc_distance_bound(t))?.lo();
        Ok(CertifiedInterval::new(collar.max(wolpert).min(l).step_down(), l))
    }

    /// `[0, B]` bounding `Tw(dual_j, g_j) l(g_j)` on the grafted surface.
    ///
    /// For `g_j` in lambda: the dual crosses the grafted cylinder `n` times,
    /// so its length is at most `l_X(dual) + n (2 t0 + 2 log cot(t0 pi / 2 c_j t))`,
    /// and by the broken-arc estimate at least `n (2 log(1/l) + Tw l) - C`.
    pub fn twist_budget(&self, t: f64, j: usize, t0: f64) -> Result<CertifiedInterval> {
        let n = self.duals[j].intersection_number(j) as f64;
        let c_cal = self.dual_cal[j].c;
        let b = if self.params.lam.contains(j) {
            let c = self.weight(j)?;
            let upper = self.grafted_length_bounds(t, j)?.hi();
            (self.dual_len_x[j] + n * cylinder_crossing(t0, c, t)? - 2.0 * n * (1.0 / upper).ln() + c_cal) / n
        } else {
            // the dual's length is constant, the curve no longer than at X
            (self.dual_len_x[j] + c_cal) / n + 2.0 * self.base_length(j).ln()
        };
        Ok(CertifiedInterval::new(0.0, b.max(0.0).step_up()))
    }

    /// Two-sided bounds for a catalog curve on the grafted surface.
    pub fn curve_length_bounds(&self, t: f64, k: usize) -> Result<CertifiedInterval> {
        let d = &self.catalog[k];
        if let Some(j) = d.class.is_pants_curve() {
            return self.pants_curve_bounds(t, j);
        }
        if t == 0.0 {
            return Ok(CertifiedInterval::point(d.len_x));
        }
        let n_curves = self.params.base.topology().curve_count();
        let bounds = (0..n_curves).map(|j| self.pants_curve_bounds(t, j)).collect::<Result<Vec<_>>>()?;
        let mut lo = 0.0f64;
        let mut hi = d.len_x + t * self.params.lam.intersection(&d.class);
        // collar lemma on every crossing
        let collar: f64 = (0..n_curves)
            .map(|j| d.class.intersection_number(j) as f64 * length_with_collar_width(bounds[j].hi()))
            .sum();
        lo = lo.max(collar);
        // crossing each grafted cylinder along the short route
        let mut crossing = d.len_x;
        let mut crossing_ok = true;
        for &(j, c) in self.params.lam.components() {
            let i = d.class.intersection_number(j) as f64;
            if i > 0.0 {
                match cylinder_crossing(self.params.t0, c, t) {
                    Ok(x) => crossing += i * x,
                    Err(_) => crossing_ok = false,
                }
            }
        }
        if crossing_ok {
            hi = hi.min(crossing);
        }
        // broken-arc estimate with interval lengths and twist budgets
        if bounds.iter().all(|b| b.hi() < d.cal.m) {
            let mut c_lo = -d.cal.c;
            let mut c_hi = d.cal.c;
            let mut ok = true;
            for (j, &b) in bounds.iter().enumerate() {
                let i = d.class.intersection_number(j) as f64;
                if i == 0.0 {
                    continue;
                }
                let budget = match self.twist_budget(t, j, self.params.t0) {
                    Ok(x) => x.hi(),
                    Err(_) => {
                        ok = false;
                        break;
                    }
                };
                c_lo += i * 2.0 * (1.0 / b.hi()).ln();
                c_hi += i * (2.0 * (1.0 / b.lo()).ln() + budget + d.relative_twist[j] * b.hi());
            }
            if ok {
                lo = lo.max(c_lo);
                hi = hi.min(c_hi);
            }
        }
        if lo > hi {
            return Err(LabError::InvalidArgument(format!(
                "inconsistent bounds for {} at t = {t}: [{lo}, {hi}]",
                d.class.id
            )));
        }
        Ok(CertifiedInterval::new(lo.step_down(), hi.step_up()))
    }

    pub fn at(&self, t: f64) -> Result<GraftSnapshot> {
        if !(t >= 0.0 && t.is_finite()) {
            return Err(LabError::InvalidArgument(format!("t = {t} must be non-negative")));
        }
        let n = self.params.base.topology().curve_count();
        let len_bounds = (0..n).map(|j| self.pants_curve_bounds(t, j)).collect::<Result<Vec<_>>>()?;
        let twist_budget = (0..n).map(|j| self.twist_budget(t, j, self.params.t0).ok()).collect();
        let thurston = self.catalog.iter().map(|d| d.len_x + t * self.params.lam.intersection(&d.class)).collect();
        Ok(GraftSnapshot { t, len_bounds, twist_budget, dist_to_base: self.dist_to_base(t), thurston })
    }

    /// Broken-arc interval for a catalog curve on the base surface.
    pub fn base_estimate(&self, k: usize) -> Result<CertifiedInterval> {
        Ok(broken_arc_estimate(&self.params.base, &self.catalog[k].class, &self.catalog[k].cal)?.interval)
    }
}
