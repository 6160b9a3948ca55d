//! Outward-rounded closed intervals.
//!
//! Elementary operations (`+ - * /`, `sqrt`) are correctly rounded by IEEE-754,
//! so one step outward per endpoint suffices. Library transcendentals
//! (`ln`, `exp`, `asinh`, ...) are only faithful to about one ulp, so those
//! endpoints are stepped twice.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use serde::{Serialize, Serializer};

use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval<T> {
    lo: T,
    hi: T,
}

#[inline]
fn down<T: Real>(x: T) -> T {
    x.step_down()
}

#[inline]
fn up<T: Real>(x: T) -> T {
    x.step_up()
}

#[inline]
fn down2<T: Real>(x: T) -> T {
    x.step_down().step_down()
}

#[inline]
fn up2<T: Real>(x: T) -> T {
    x.step_up().step_up()
}

impl<T: Real> Interval<T> {
    /// Interval with the given endpoints; panics if `lo > hi` or either is NaN.
    pub fn new(lo: T, hi: T) -> Self {
        assert!(lo <= hi, "interval endpoints out of order: [{lo}, {hi}]");
        Self { lo, hi }
    }

    /// Fallible constructor.
    pub fn try_new(lo: T, hi: T) -> Option<Self> {
        (lo <= hi).then_some(Self { lo, hi })
    }

    /// Degenerate interval `[x, x]`.
    pub fn point(x: T) -> Self {
        Self { lo: x, hi: x }
    }

    /// `[x - r, x + r]`, rounded outward.
    pub fn around(x: T, radius: T) -> Self {
        let r = radius.abs();
        Self { lo: down(x - r), hi: up(x + r) }
    }

    pub fn lo(&self) -> T {
        self.lo
    }

    pub fn hi(&self) -> T {
        self.hi
    }

    pub fn width(&self) -> T {
        up(self.hi - self.lo)
    }

    pub fn mid(&self) -> T {
        self.lo / T::lit(2.0) + self.hi / T::lit(2.0)
    }

    pub fn contains(&self, x: T) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn contains_interval(&self, other: &Self) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn hull(&self, other: &Self) -> Self {
        Self { lo: self.lo.min(other.lo), hi: self.hi.max(other.hi) }
    }

    pub fn intersect(&self, other: &Self) -> Option<Self> {
        Self::try_new(self.lo.max(other.lo), self.hi.min(other.hi))
    }

    pub fn clamp_lo(&self, floor: T) -> Self {
        Self { lo: self.lo.max(floor), hi: self.hi.max(floor) }
    }

    pub fn scale(&self, k: T) -> Self {
        *self * Self::point(k)
    }

    /// Absolute value hull.
    pub fn abs(&self) -> Self {
        if self.lo >= T::zero() {
            *self
        } else if self.hi <= T::zero() {
            -*self
        } else {
            Self { lo: T::zero(), hi: self.hi.max(-self.lo) }
        }
    }

    /// Natural logarithm; requires `lo > 0`.
    pub fn ln(&self) -> Self {
        assert!(self.lo > T::zero(), "log of non-positive interval");
        Self { lo: down2(self.lo.ln()), hi: up2(self.hi.ln()) }
    }

    pub fn exp(&self) -> Self {
        Self { lo: down2(self.lo.exp()).max(T::zero()), hi: up2(self.hi.exp()) }
    }

    /// Square root; requires `lo >= 0`.
    pub fn sqrt(&self) -> Self {
        assert!(self.lo >= T::zero(), "sqrt of negative interval");
        Self { lo: down(self.lo.sqrt()).max(T::zero()), hi: up(self.hi.sqrt()) }
    }

    /// Inverse hyperbolic sine (monotone increasing).
    pub fn asinh(&self) -> Self {
        Self { lo: down2(self.lo.asinh()), hi: up2(self.hi.asinh()) }
    }

    /// Inverse hyperbolic cosine; requires `lo >= 1`.
    pub fn acosh(&self) -> Self {
        assert!(self.lo >= T::one(), "acosh below 1");
        Self { lo: down2(self.lo.acosh()).max(T::zero()), hi: up2(self.hi.acosh()) }
    }

    pub fn recip(&self) -> Self {
        Self::point(T::one()) / *self
    }

    pub fn max(&self, other: &Self) -> Self {
        Self { lo: self.lo.max(other.lo), hi: self.hi.max(other.hi) }
    }

    pub fn min(&self, other: &Self) -> Self {
        Self { lo: self.lo.min(other.lo), hi: self.hi.min(other.hi) }
    }

    pub fn as_f64(&self) -> Interval<f64> {
        Interval { lo: self.lo.as_f64(), hi: self.hi.as_f64() }
    }
}

impl<T: Real> Add for Interval<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self { lo: down(self.lo + o.lo), hi: up(self.hi + o.hi) }
    }
}

impl<T: Real> Sub for Interval<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self { lo: down(self.lo - o.hi), hi: up(self.hi - o.lo) }
    }
}

impl<T: Real> Neg for Interval<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self { lo: -self.hi, hi: -self.lo }
    }
}

impl<T: Real> Mul for Interval<T> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let p = [self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi];
        let lo = p.iter().copied().fold(T::infinity(), T::min);
        let hi = p.iter().copied().fold(T::neg_infinity(), T::max);
        Self { lo: down(lo), hi: up(hi) }
    }
}

impl<T: Real> Div for Interval<T> {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        assert!(o.lo > T::zero() || o.hi < T::zero(), "division by an interval containing zero");
        let q = [self.lo / o.lo, self.lo / o.hi, self.hi / o.lo, self.hi / o.hi];
        let lo = q.iter().copied().fold(T::infinity(), T::min);
        let hi = q.iter().copied().fold(T::neg_infinity(), T::max);
        Self { lo: down(lo), hi: up(hi) }
    }
}

impl<T: Real> fmt::Display for Interval<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

impl<T: Real> Serialize for Interval<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [self.lo.as_f64(), self.hi.as_f64()].serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn iv(lo: f64, hi: f64) -> Interval<f64> {
        Interval::new(lo, hi)
    }

    #[test]
    fn rounding_is_strictly_outward() {
        let x = iv(0.1, 0.1) + iv(0.2, 0.2);
        assert!(x.lo() < 0.1 + 0.2 && 0.1 + 0.2 < x.hi());
        assert!(x.width() > 0.0);
    }

    #[test]
    fn division_by_zero_straddle_panics() {
        let r = std::panic::catch_unwind(|| iv(1.0, 2.0) / iv(-1.0, 1.0));
        assert!(r.is_err());
    }

    #[test]
    fn abs_of_straddling_interval() {
        assert_eq!(iv(-3.0, 2.0).abs(), iv(0.0, 3.0));
    }

    proptest! {
        #[test]
        fn enclosure_holds_for_every_op(
            a in -50.0f64..50.0, wa in 0.0f64..5.0, fa in 0.0f64..1.0,
            b in 0.1f64..50.0, wb in 0.0f64..5.0, fb in 0.0f64..1.0,
        ) {
            let x = iv(a, a + wa);
            let y = iv(b, b + wb);
            let px = a + fa * wa;
            let py = b + fb * wb;
            prop_assert!((x + y).contains(px + py));
            prop_assert!((x - y).contains(px - py));
            prop_assert!((x * y).contains(px * py));
            prop_assert!((x / y).contains(px / py));
            prop_assert!(y.ln().contains(py.ln()));
            prop_assert!(y.sqrt().contains(py.sqrt()));
            prop_assert!(x.exp().contains(px.exp()));
            prop_assert!(x.asinh().contains(px.asinh()));
            prop_assert!((y + Interval::point(1.0)).acosh().contains((py + 1.0).acosh()));
            prop_assert!(x.abs().contains(px.abs()));
        }

        #[test]
        fn width_never_negative(a in -1e6f64..1e6, w in 0.0f64..1e3) {
            let x = iv(a, a + w);
            prop_assert!(x.width() >= 0.0);
            prop_assert!((x * x).width() >= 0.0);
        }
    }
}
