//! Hyperbolic trigonometry on the upper half-plane.

use crate::error::{LabError, Result};
#[cfg(test)]
use crate::kernel::chain_product;
use crate::kernel::Mat2;
use crate::scalar::Real;

/// Slack on `|tr| = 2` before a trace is declared elliptic.
const PARABOLIC_SLACK: f64 = 1e-12;

/// A point of the ideal boundary `R u {inf}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum IdealPoint<T> {
    Finite(T),
    Infinity,
}

impl<T: Real> IdealPoint<T> {
    pub fn from_option(x: Option<T>) -> Self {
        x.map_or(Self::Infinity, Self::Finite)
    }
}

/// Translation length `2 acosh(|tr|/2)` of a hyperbolic element.
pub fn trace_length<T: Real>(m: &Mat2<T>) -> Result<T> {
    length_from_trace(m.trace())
}

pub fn length_from_trace<T: Real>(tr: T) -> Result<T> {
    let half = tr.abs() / T::lit(2.0);
    if half < T::one() - T::lit(PARABOLIC_SLACK) {
        return Err(LabError::NonHyperbolic { trace: tr.as_f64() });
    }
    Ok(T::lit(2.0) * half.max(T::one()).acosh())
}

/// Seam length between the boundary curves of half-lengths `a` and `b` of a
/// pair of pants whose third boundary has half-length `c`.
///
/// Right-angled hexagon cosine rule:
/// `cosh H = (cosh a cosh b + cosh c) / (sinh a sinh b)`.
pub fn hexagon_side<T: Real>(a: T, b: T, c: T) -> Result<T> {
    if !(a > T::zero() && b > T::zero() && c > T::zero()) {
        return Err(LabError::InvalidArgument(format!("hexagon half-lengths must be positive, got ({a}, {b}, {c})")));
    }
    Ok(seam_length(a, b, c))
}

/// Same rule, but `c = 0` (a cusp) is allowed.
pub(crate) fn seam_length<T: Real>(a: T, b: T, c: T) -> T {
    ((a.cosh() * b.cosh() + c.cosh()) / (a.sinh() * b.sinh())).acosh()
}

/// Signed arclength coordinate of the orthogonal projection of the ideal
/// point `xi` onto the geodesic oriented from `p` to `q`.
///
/// The origin is the summit of the semicircle, or height 1 on a vertical
/// line.
pub fn boundary_projection<T: Real>(p: IdealPoint<T>, q: IdealPoint<T>, xi: IdealPoint<T>) -> Result<T> {
    use IdealPoint::*;
    if p == q {
        return Err(LabError::InvalidArgument("degenerate axis".into()));
    }
    if xi == p || xi == q {
        return Err(LabError::ProjectionUndefined);
    }
    Ok(match (p, q, xi) {
        (Finite(p), Finite(q), Finite(x)) => ((x - p) / (x - q)).abs().ln(),
        (Finite(_), Finite(_), Infinity) => T::zero(),
        (Finite(p), Infinity, Finite(x)) => (x - p).abs().ln(),
        (Infinity, Finite(q), Finite(x)) => -(x - q).abs().ln(),
        _ => unreachable!("infinite xi only pairs with a finite axis"),
    })
}

/// Half-width `asinh(1 / sinh(l/2))` of the standard embedded collar around a
/// simple closed geodesic of length `l`.
pub fn collar_half_width<T: Real>(len: T) -> T {
    (len / T::lit(2.0)).sinh().recip().asinh()
}

/// Inverse of the full collar width: the length `l` whose collar has total
/// width `w`, i.e. `l = 2 asinh(1 / sinh(w/2))`.
pub fn length_with_collar_width<T: Real>(w: T) -> T {
    T::lit(2.0) * (w / T::lit(2.0)).sinh().recip().asinh()
}

/// Hyperbolic distance between `x1 + i y1` and `x2 + i y2`.
pub fn half_plane_distance<T: Real>(z1: (T, T), z2: (T, T)) -> T {
    let (x1, y1) = z1;
    let (x2, y2) = z2;
    let chord = ((x1 - x2).powi(2) + (y1 - y2).powi(2)).sqrt();
    T::lit(2.0) * (chord / (T::lit(2.0) * (y1 * y2).sqrt())).asinh()
}
