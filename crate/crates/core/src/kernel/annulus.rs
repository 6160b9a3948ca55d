use crate::error::{LabError, Result};
use crate::scalar::Real;

/// Conformal annulus: a round annulus `r < |z| < 1` or a flat right cylinder.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AnnulusModel<T> {
    Round { inner_radius: T },
    Cylinder { height: T, circumference: T },
}

impl<T: Real> AnnulusModel<T> {
    pub fn round(inner_radius: T) -> Result<Self> {
        if inner_radius > T::zero() && inner_radius < T::one() {
            Ok(Self::Round { inner_radius })
        } else {
            Err(LabError::InvalidArgument(format!("inner radius {inner_radius} not in (0, 1)")))
        }
    }

    pub fn cylinder(height: T, circumference: T) -> Result<Self> {
        if height > T::zero() && circumference > T::zero() {
            Ok(Self::Cylinder { height, circumference })
        } else {
            Err(LabError::InvalidArgument(format!(
                "cylinder needs positive height and circumference, got ({height}, {circumference})"
            )))
        }
    }

    /// Round annulus with the given modulus.
    pub fn round_with_modulus(modulus: T) -> Result<Self> {
        Self::round((-T::TAU() * modulus).exp())
    }

    pub fn modulus(&self) -> T {
        match *self {
            Self::Round { inner_radius } => inner_radius.recip().ln() / T::TAU(),
            Self::Cylinder { height, circumference } => height / circumference,
        }
    }

    /// Hyperbolic length of the core geodesic, `pi / modulus`.
    pub fn core_length(&self) -> T {
        T::PI() / self.modulus()
    }
}

/// Modulus lower bound for an annulus containing disjoint essential
/// sub-annuli (superadditivity of moduli).
pub fn superadditive_modulus<T: Real>(parts: &[AnnulusModel<T>]) -> T {
    parts.iter().fold(T::zero(), |acc, a| acc + a.modulus())
}
