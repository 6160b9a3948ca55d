use std::ops::Mul;

use crate::scalar::Real;

/// Unit-determinant 2x2 real matrix acting on the upper half-plane by
/// Mobius transformations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2<T> {
    pub a: T,
    pub b: T,
    pub c: T,
    pub d: T,
}

/// Determinant drift tolerated before a product is renormalized.
const DET_DRIFT: f64 = 1e-12;

impl<T: Real> Mat2<T> {
    pub const fn new(a: T, b: T, c: T, d: T) -> Self {
        Self { a, b, c, d }
    }

    pub fn identity() -> Self {
        Self::new(T::one(), T::zero(), T::zero(), T::one())
    }

    /// Hyperbolic translation by signed distance `dist` along the imaginary axis
    /// (`z -> e^dist z`).
    pub fn translation(dist: T) -> Self {
        let h = (dist / T::lit(2.0)).exp();
        Self::new(h, T::zero(), T::zero(), h.recip())
    }

    /// Counter-clockwise rotation by `angle` about `i`.
    pub fn rotation(angle: T) -> Self {
        let (s, c) = (angle / T::lit(2.0)).sin_cos();
        Self::new(c, s, -s, c)
    }

    /// Quarter turn to the left about `i`.
    pub fn left_turn() -> Self {
        let h = T::FRAC_1_SQRT_2();
        Self::new(h, h, -h, h)
    }

    /// Half turn about `i`.
    pub fn half_turn() -> Self {
        Self::new(T::zero(), T::one(), -T::one(), T::zero())
    }

    pub fn det(&self) -> T {
        self.a * self.d - self.b * self.c
    }

    pub fn trace(&self) -> T {
        self.a + self.d
    }

    /// Inverse, assuming unit determinant.
    pub fn inverse(&self) -> Self {
        Self::new(self.d, -self.b, -self.c, self.a)
    }

    /// Divide by the square root of the determinant.
    pub fn renormalized(&self) -> Self {
        let s = self.det().abs().sqrt();
        Self::new(self.a / s, self.b / s, self.c / s, self.d / s)
    }

    /// Renormalizes only when the determinant has drifted.
    /// A drift below the rounding error of the determinant itself is noise
    /// (large entries) and is left alone.
    pub fn tidy(self) -> Self {
        let scale = (self.a * self.d).abs() + (self.b * self.c).abs();
        let noise = T::lit(8.0) * T::epsilon() * scale;
        let det = self.det();
        if det > T::zero() && (det - T::one()).abs() > noise.max(T::lit(DET_DRIFT)) {
            self.renormalized()
        } else {
            self
        }
    }

    pub fn conjugate_by(&self, g: &Self) -> Self {
        (*g * *self * g.inverse()).tidy()
    }

    /// Image of `i`, returned as `(re, im)`.
    pub fn apply_to_i(&self) -> (T, T) {
        let n = self.c * self.c + self.d * self.d;
        ((self.a * self.c + self.b * self.d) / n, self.det() / n)
    }

    /// Image of a point on the real line; `None` stands for infinity.
    pub fn apply_to_real(&self, x: Option<T>) -> Option<T> {
        match x {
            None => {
                if self.c == T::zero() {
                    None
                } else {
                    Some(self.a / self.c)
                }
            }
            Some(x) => {
                let den = self.c * x + self.d;
                if den == T::zero() {
                    None
                } else {
                    Some((self.a * x + self.b) / den)
                }
            }
        }
    }

    /// Attracting and repelling fixed points of a hyperbolic element.
    ///
    /// Infinity is reported as `None`. Returns `None` overall if the element
    /// is not hyperbolic.
    pub fn axis_endpoints(&self) -> Option<(Option<T>, Option<T>)> {
        let m = if self.trace() < T::zero() { -*self } else { *self };
        let tr = m.trace();
        if tr <= T::lit(2.0) {
            return None;
        }
        let disc = (tr * tr - T::lit(4.0)).sqrt();
        // eigenvalue > 1 attracts
        if m.c == T::zero() {
            let fin = m.b / (m.d - m.a);
            return Some(if m.a > m.d { (None, Some(fin)) } else { (Some(fin), None) });
        }
        let two_c = T::lit(2.0) * m.c;
        let attracting = (m.a - m.d + disc) / two_c;
        let repelling = (m.a - m.d - disc) / two_c;
        Some((Some(attracting), Some(repelling)))
    }
}

impl<T: Real> std::ops::Neg for Mat2<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.a, -self.b, -self.c, -self.d)
    }
}

impl<T: Real> Mul for Mat2<T> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Self::new(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )
    }
}

/// Ordered product of a chain of matrices, renormalized as it goes.
pub fn chain_product<T: Real, I: IntoIterator<Item = Mat2<T>>>(chain: I) -> Mat2<T> {
    chain.into_iter().fold(Mat2::identity(), |acc, m| (acc * m).tidy())
}
