use serde::Serialize;

use crate::boundary::SurfaceFamily;
use crate::error::{LabError, Result};
use crate::kernel::half_plane_distance;
use crate::scalar::NextFloat;
use crate::CertifiedInterval;

pub const DEFAULT_EPS0: f64 = 0.1;
pub const DEFAULT_SLACK: f64 = 1.0;
pub const DEFAULT_COMPACT_M: f64 = 4.0;
pub const DEFAULT_COMPACT_T: f64 = 50.0;

/// Uncertainty box for a point `x + i y` of the upper half-plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HalfPlaneBox {
    pub x: CertifiedInterval,
    pub y: CertifiedInterval,
}

impl HalfPlaneBox {
    /// Box for a curve with length in `len` and `Tw l` in `product`: the
    /// twist parameter lies within one of the twisting number, which is at
    /// most `Tw l / l`.
    pub fn from_curve(len: CertifiedInterval, product: CertifiedInterval) -> Self {
        let reach = (product.hi() / len.lo() + 1.0).step_up();
        Self {
            x: CertifiedInterval::new(-reach, reach),
            y: CertifiedInterval::new((1.0 / len.hi()).step_down(), (1.0 / len.lo()).step_up()),
        }
    }

    pub fn point(x: f64, y: f64) -> Self {
        Self { x: CertifiedInterval::point(x), y: CertifiedInterval::point(y) }
    }

    pub fn length(&self) -> CertifiedInterval {
        self.y.recip()
    }
}

/// Range of half the hyperbolic distance between points of two boxes.
pub fn box_distance(a: &HalfPlaneBox, b: &HalfPlaneBox) -> CertifiedInterval {
    let dx = (a.x.hi() - b.x.lo()).abs().max((b.x.hi() - a.x.lo()).abs());
    let mut hi = 0.0f64;
    for ya in [a.y.lo(), a.y.hi()] {
        for yb in [b.y.lo(), b.y.hi()] {
            hi = hi.max(half_plane_distance((0.0, ya), (dx, yb)));
        }
    }
    // distance is at least the separation of the heights in log scale
    let gap = (b.y.lo() / a.y.hi()).ln().max((a.y.lo() / b.y.hi()).ln()).max(0.0);
    CertifiedInterval::new((0.5 * gap).step_down().max(0.0), (0.5 * hi).step_up())
}

/// Image of a surface in the product region: half-plane boxes for the
/// thin curves and for the rest.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProductRegionImage {
    pub t: f64,
    pub thin: Vec<usize>,
    pub boxes: Vec<HalfPlaneBox>,
}

impl ProductRegionImage {
    pub fn new(t: f64, lengths: &[CertifiedInterval], products: &[CertifiedInterval], eps0: f64) -> Self {
        let thin = (0..lengths.len()).filter(|&j| lengths[j].hi() <= eps0).collect();
        let boxes = lengths.iter().zip(products).map(|(l, p)| HalfPlaneBox::from_curve(*l, *p)).collect();
        Self { t, thin, boxes }
    }

    pub fn of_family(f: &dyn SurfaceFamily, t: f64, eps0: f64) -> Result<Self> {
        Ok(Self::new(t, &f.pants_lengths(t)?, &f.twist_products(t)?, eps0))
    }

    pub fn is_thin(&self, j: usize) -> bool {
        self.thin.contains(&j)
    }

    /// Non-thin curves: the coordinates of the projection to the thick part.
    pub fn pi0(&self) -> impl Iterator<Item = (usize, &HalfPlaneBox)> {
        self.boxes.iter().enumerate().filter(|(j, _)| !self.is_thin(*j))
    }
}

/// Product-region estimate of the Teichmüller distance: the largest
/// component distance, widened by `slack` on both sides.
pub fn minsky_distance(p: &ProductRegionImage, q: &ProductRegionImage, slack: f64) -> Result<CertifiedInterval> {
    Ok(widen(component_distances(p, q)?.into_iter().map(|c| c.1), slack))
}

/// Component distances, in curve order.
pub fn component_distances(p: &ProductRegionImage, q: &ProductRegionImage) -> Result<Vec<(usize, CertifiedInterval)>> {
    if p.thin != q.thin || p.boxes.len() != q.boxes.len() {
        return Err(LabError::IncomparableThinRegimes);
    }
    Ok((0..p.boxes.len()).map(|j| (j, box_distance(&p.boxes[j], &q.boxes[j]))).collect())
}

fn widen(parts: impl Iterator<Item = CertifiedInterval>, slack: f64) -> CertifiedInterval {
    let (mut lo, mut hi) = (0.0f64, 0.0f64);
    for c in parts {
        lo = lo.max(c.lo());
        hi = hi.max(c.hi());
    }
    CertifiedInterval::new((lo - slack).max(0.0), (hi + slack).step_up())
}

/// Heuristic slack for the log-ratio form of the half-plane distance when
/// twist products are bounded by `b`.
pub fn slack_for_twist_bound(b: f64) -> f64 {
    b / 2.0 + 1.0
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CompactnessReport {
    pub pass: bool,
    pub min_length: f64,
    pub max_length: f64,
    pub max_abs_twist: f64,
    /// `(t, curve, what)` of the first bound violated, if any.
    pub witness: Option<(f64, usize, String)>,
}

/// Checks that the thick coordinates of a family stay in a compact set:
/// lengths in `[1/M, M]` and twist parameters in `[-T, T]`.
pub fn pi0_compactness_check(family: &[ProductRegionImage], m: f64, t_bound: f64) -> CompactnessReport {
    let mut report =
        CompactnessReport { pass: true, min_length: f64::INFINITY, max_length: 0.0, max_abs_twist: 0.0, witness: None };
    let thin = family.first().map(|f| f.thin.clone());
    for img in family {
        if Some(&img.thin) != thin.as_ref() && report.witness.is_none() {
            report.pass = false;
            report.witness = Some((img.t, usize::MAX, "thin set changes along the family".into()));
        }
        for (j, b) in img.pi0() {
            let len = b.length();
            let tw = b.x.abs().hi();
            report.min_length = report.min_length.min(len.lo());
            report.max_length = report.max_length.max(len.hi());
            report.max_abs_twist = report.max_abs_twist.max(tw);
            let why = if len.lo() < 1.0 / m {
                Some(format!("length {} below 1/M", len.lo()))
            } else if len.hi() > m {
                Some(format!("length {} above M", len.hi()))
            } else if tw > t_bound {
                Some(format!("twist {tw} outside [-T, T]"))
            } else {
                None
            };
            if let Some(w) = why {
                report.pass = false;
                if report.witness.is_none() {
                    report.witness = Some((img.t, j, w));
                }
            }
        }
    }
    report
}
