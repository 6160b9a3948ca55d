//! Model of the Teichmüller geodesic ray for Jenkins-Strebel data along a
//! weighted multicurve: the cylinder moduli grow like `(t + 1) M_i`.

use std::f64::consts::PI;

use num_rational::BigRational;
use num_traits::{Num, One, ToPrimitive};

use crate::curves::{calibrate, dual_curve, Calibration, CurveClass, WeightedMulticurve, DEFAULT_M};
use crate::error::{LabError, Result};
use crate::kernel::length_with_collar_width;
use crate::scalar::NextFloat;
use crate::{CertifiedInterval, Coords, Surface};

pub const DEFAULT_KAPPA: f64 = 4.0;
pub const DEFAULT_K0: f64 = 1.0;
/// Length given to the multicurve components on the limit surface.
pub const PINCH_LENGTH: f64 = 1e-6;

/// `K = (1 + k) / (1 - k)` with `k = t / (t + 2)`, in any exact or
/// floating field.
pub fn dilatation<T: Num + Clone>(t: T) -> T {
    let two = T::one() + T::one();
    let k = t.clone() / (t + two);
    (T::one() + k.clone()) / (T::one() - k)
}

fn exact(t: f64) -> Result<BigRational> {
    if !(t >= 0.0 && t.is_finite()) {
        return Err(LabError::InvalidArgument(format!("t = {t} must be non-negative")));
    }
    BigRational::from_float(t).ok_or_else(|| LabError::InvalidArgument(format!("t = {t}")))
}

/// Dilatation at `t`, evaluated exactly and rounded once.
pub fn dilatation_of_t(t: f64) -> Result<f64> {
    Ok(dilatation(exact(t)?).to_f64().expect("finite rational"))
}

/// Teichmüller distance `1/2 log K(t)` from the base point.
pub fn teich_distance(t: f64) -> Result<f64> {
    let excess = dilatation(exact(t)?) - BigRational::one();
    Ok(0.5 * excess.to_f64().expect("finite rational").ln_1p())
}

/// `K0` making the model's core length sit geometrically in the middle of
/// the grafting bounds as `t -> infinity`.
pub fn matched_k0(lam: &WeightedMulticurve, theta0: f64) -> f64 {
    let c_min = lam.components().iter().map(|c| c.1).fold(f64::INFINITY, f64::min);
    (PI * lam.c_max() / (2.0 * theta0 * c_min)).sqrt()
}

#[derive(Debug, Clone)]
pub struct TeichRayModel {
    base: Surface,
    lam: WeightedMulticurve,
    k0: f64,
    kappa: f64,
    /// `(curve, M_i)` for every component.
    moduli: Vec<(usize, f64)>,
    /// `kappa (|tw_X(dual_j, g_j)| + 1) l_X(g_j)` per pants curve.
    twist_bounds: Vec<f64>,
    limit_lengths: Vec<f64>,
    base_lengths: Vec<f64>,
    catalog: Vec<(CurveClass, Calibration)>,
}

/// Twist products and thick-part lengths at one parameter value.
#[derive(Debug, Clone)]
pub struct TwistAndThick {
    pub twist_products: Vec<(usize, CertifiedInterval)>,
    pub bounded: bool,
    /// Catalog curves disjoint from the multicurve.
    pub thick_lengths: Vec<(usize, CertifiedInterval)>,
}

impl TeichRayModel {
    pub fn new(base: Surface, lam: WeightedMulticurve, catalog: &[CurveClass]) -> Result<Self> {
        Self::with_constants(base, lam, catalog, DEFAULT_K0, DEFAULT_KAPPA)
    }

    pub fn with_constants(
        base: Surface,
        lam: WeightedMulticurve,
        catalog: &[CurveClass],
        k0: f64,
        kappa: f64,
    ) -> Result<Self> {
        if !(k0 > 0.0 && k0.is_finite()) || !(kappa >= 1.0 && kappa.is_finite()) {
            return Err(LabError::InvalidArgument(format!("K0 = {k0}, kappa = {kappa}")));
        }
        let topo = base.topology().clone();
        let n = topo.curve_count();
        if let Some(&(j, _)) = lam.components().iter().find(|(j, _)| *j >= n) {
            return Err(LabError::UnknownCurve(j.to_string()));
        }
        let moduli = lam.components().iter().map(|&(j, c)| (j, c * k0 / base.coords().length(j))).collect();
        let mut twist_bounds = Vec::with_capacity(n);
        for j in 0..n {
            let tw = base.curve_twisting_number(&dual_curve(&topo, j)?, j)?;
            twist_bounds.push(kappa * (tw.abs() + 1.0) * base.coords().length(j));
        }
        let mut pinched = base.coords().clone();
        for &(j, _) in lam.components() {
            pinched = pinched.with_length(j, PINCH_LENGTH)?;
        }
        let limit = base.with_coords(pinched)?;
        let mut limit_lengths = Vec::new();
        let mut base_lengths = Vec::new();
        for c in catalog {
            limit_lengths.push(limit.geodesic_length(c)?);
            base_lengths.push(base.geodesic_length(c)?);
        }
        // thick curves range up to kappa times their base length
        let thick_max =
            (0..n).filter(|j| !lam.contains(*j)).map(|j| kappa * base.coords().length(j)).fold(0.0, f64::max);
        let m = DEFAULT_M.max(1.01 * thick_max);
        let catalog = catalog.iter().map(|c| Ok((c.clone(), calibrate(&topo, c, m)?))).collect::<Result<Vec<_>>>()?;
        Ok(Self { base, lam, k0, kappa, moduli, twist_bounds, limit_lengths, base_lengths, catalog })
    }

    pub fn k0(&self) -> f64 {
        self.k0
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    pub fn lam(&self) -> &WeightedMulticurve {
        &self.lam
    }

    pub fn base(&self) -> &Surface {
        &self.base
    }

    pub fn catalog(&self) -> impl Iterator<Item = &CurveClass> {
        self.catalog.iter().map(|c| &c.0)
    }

    /// `M_i = c_i K0 / l_X(g_i)`.
    pub fn modulus(&self, j: usize) -> Result<f64> {
        self.moduli.iter().find(|m| m.0 == j).map(|m| m.1).ok_or_else(|| {
            LabError::InvalidArgument(format!("{} is not a component of lambda", self.base.topology().curve(j).name))
        })
    }

    /// Modulus of the `j`-th cylinder at `t`: `(t + 1) M_j`.
    pub fn modulus_at(&self, t: f64, j: usize) -> Result<f64> {
        Ok((t + 1.0) * self.modulus(j)?)
    }

    /// `pi / ((t + 1) M_j)`.
    pub fn model_core_length(&self, t: f64, j: usize) -> Result<f64> {
        Ok(PI / self.modulus_at(t, j)?)
    }

    /// The core length up to the order constant: `[m / kappa, m kappa]`.
    pub fn core_length_interval(&self, t: f64, j: usize) -> Result<CertifiedInterval> {
        let m = self.model_core_length(t, j)?;
        Ok(CertifiedInterval::new((m / self.kappa).step_down(), (m * self.kappa).step_up()))
    }

    fn thick_interval(&self, lim: f64, base: f64) -> CertifiedInterval {
        let k = self.kappa;
        CertifiedInterval::new(lim / k, lim * k).hull(&CertifiedInterval::new(base / k, base * k))
    }

    /// Length intervals for all pants curves.
    pub fn pants_lengths(&self, t: f64) -> Result<Vec<CertifiedInterval>> {
        let coords: &Coords = self.base.coords();
        (0..coords.len())
            .map(|j| {
                if self.lam.contains(j) {
                    self.core_length_interval(t, j)
                } else {
                    let l = coords.length(j);
                    Ok(self.thick_interval(l, l))
                }
            })
            .collect()
    }

    /// `[0, B_j]` for `Tw(dual_j, g_j) l(g_j)`.
    pub fn twist_products(&self) -> Vec<CertifiedInterval> {
        self.twist_bounds.iter().map(|b| CertifiedInterval::new(0.0, b.step_up())).collect()
    }

    /// `B_T`: the largest twist-product bound over the multicurve.
    pub fn twist_bound(&self) -> f64 {
        self.lam.components().iter().map(|&(j, _)| self.twist_bounds[j]).fold(0.0, f64::max)
    }

    pub fn model_twist_and_thick(&self, t: f64) -> Result<TwistAndThick> {
        if !(t >= 0.0) {
            return Err(LabError::InvalidArgument(format!("t = {t} must be non-negative")));
        }
        let products = self.twist_products();
        let twist_products: Vec<_> = self.lam.components().iter().map(|&(j, _)| (j, products[j])).collect();
        let bounded = twist_products.iter().all(|(_, p)| p.hi().is_finite());
        let thick_lengths = self
            .catalog
            .iter()
            .enumerate()
            .filter(|(_, (c, _))| self.lam.intersection(c) == 0.0)
            .map(|(k, _)| (k, self.thick_interval(self.limit_lengths[k], self.base_lengths[k])))
            .collect();
        Ok(TwistAndThick { twist_products, bounded, thick_lengths })
    }

    /// Length intervals for the catalog: thick intervals for curves
    /// disjoint from the multicurve, otherwise the broken-arc estimate with
    /// interval pants lengths and twist products.
    pub fn catalog_lengths(&self, t: f64) -> Result<Vec<CertifiedInterval>> {
        let lengths = self.pants_lengths(t)?;
        let products = self.twist_products();
        let thick = self.model_twist_and_thick(t)?.thick_lengths;
        let mut out = Vec::with_capacity(self.catalog.len());
        for (k, (c, cal)) in self.catalog.iter().enumerate() {
            if let Some(j) = c.is_pants_curve() {
                out.push(lengths[j]);
                continue;
            }
            if let Some((_, iv)) = thick.iter().find(|(i, _)| *i == k) {
                out.push(*iv);
                continue;
            }
            if let Some((j, l)) = lengths.iter().enumerate().find(|(_, l)| l.hi() >= cal.m) {
                return Err(LabError::ThinRegime {
                    curve: self.base.topology().curve(j).name.clone(),
                    length: l.hi(),
                    bound: cal.m,
                });
            }
            let (mut lo, mut hi) = (-cal.c, cal.c);
            let mut collar = 0.0;
            for (j, l) in lengths.iter().enumerate() {
                let i = c.intersection_number(j) as f64;
                if i == 0.0 {
                    continue;
                }
                lo += i * 2.0 * (1.0 / l.hi()).ln();
                hi += i * (2.0 * (1.0 / l.lo()).ln() + products[j].hi());
                collar += i * length_with_collar_width(l.hi());
            }
            out.push(CertifiedInterval::new(lo.max(collar).step_down(), hi.step_up()));
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn dilatation_is_t_plus_one_exactly() {
        let t = BigRational::new(BigInt::from(7), BigInt::from(3));
        assert_eq!(dilatation(t.clone()), t + BigRational::one());
        assert_eq!(dilatation_of_t(2.0).unwrap(), 3.0);
        assert_eq!(dilatation_of_t(0.0).unwrap(), 1.0);
        assert_eq!(dilatation(2.0f64), 3.0);
    }

    #[test]
    fn distance_at_two() {
        assert!((teich_distance(2.0).unwrap() - 0.5 * 3f64.ln()).abs() < 1e-15);
        assert_eq!(teich_distance(0.0).unwrap(), 0.0);
        assert!(teich_distance(-1.0).is_err());
    }
}
