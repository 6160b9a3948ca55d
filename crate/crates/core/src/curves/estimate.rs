//! Length of a curve from its broken arc: twice the log of the inverse
//! lengths of the pants curves it crosses plus the twisting, up to a
//! constant calibrated per curve.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::curves::CurveClass;
use crate::error::{LabError, Result};
use crate::kernel::Interval;
use crate::scalar::Real;
use crate::surface::{FnCoords, PantsDecomposition, PantsSurface};

pub const DEFAULT_M: f64 = 4.0;
pub const CALIBRATION_POINTS: usize = 1000;
pub const SAFETY_FACTOR: f64 = 1.5;
const CALIBRATION_SEED: u64 = 0x6272_6f6b_656e;
const SHORTEST: f64 = 1e-3;
const TWIST_RANGE: f64 = 3.0;

/// Per-curve error constant, valid while every pants curve is shorter than `m`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Calibration {
    pub m: f64,
    pub c: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ArcEstimate<T> {
    pub central: T,
    pub interval: Interval<T>,
    /// The curve is itself a pants curve and the estimate degenerates.
    pub pants_curve: bool,
}

/// `sum_j i(a, g_j) [2 log(1/l_j) + Tw(a, g_j) l_j]`.
pub fn central_value<T: Real>(s: &PantsSurface<T>, alpha: &CurveClass) -> Result<T> {
    let topo = s.topology();
    let moves = if alpha.is_pants_curve().is_some() { None } else { Some(alpha.resolve(topo)?) };
    let mut total = T::zero();
    for j in 0..topo.curve_count() {
        let i = alpha.intersection_number(j);
        if i == 0 {
            continue;
        }
        let l = s.coords().length(j);
        let tw = s.twisting_number(moves.as_ref().unwrap(), j)?.abs();
        total = total + T::from_usize(i).unwrap() * (T::lit(2.0) * (T::one() / l).ln() + tw * l);
    }
    Ok(total)
}

fn check_thin<T: Real>(s: &PantsSurface<T>, m: f64) -> Result<()> {
    for (j, l) in s.coords().lengths().iter().enumerate() {
        if l.as_f64() >= m {
            return Err(LabError::ThinRegime {
                curve: s.topology().curve(j).name.clone(),
                length: l.as_f64(),
                bound: m,
            });
        }
    }
    Ok(())
}

pub fn broken_arc_estimate<T: Real>(
    s: &PantsSurface<T>,
    alpha: &CurveClass,
    cal: &Calibration,
) -> Result<ArcEstimate<T>> {
    check_thin(s, cal.m)?;
    let c = T::lit(cal.c);
    if alpha.is_pants_curve().is_some() {
        return Ok(ArcEstimate { central: T::zero(), interval: Interval::new(T::zero(), c), pants_curve: true });
    }
    let central = central_value(s, alpha)?;
    Ok(ArcEstimate { central, interval: Interval::around(central, c).clamp_lo(T::zero()), pants_curve: false })
}

/// Random surfaces with log-uniform lengths in `[1e-3, m)` and twists in
/// `[-3, 3]`.
pub fn sample_surfaces(
    topo: &PantsDecomposition,
    m: f64,
    count: usize,
    seed: u64,
) -> impl Iterator<Item = PantsSurface<f64>> + '_ {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (lo, hi) = (SHORTEST.ln(), m.ln());
    let n = topo.curve_count();
    (0..count).map(move |_| {
        let lengths = (0..n).map(|_| rng.gen_range(lo..hi).exp()).collect();
        let twists = (0..n).map(|_| rng.gen_range(-TWIST_RANGE..=TWIST_RANGE)).collect();
        PantsSurface::new(topo.clone(), FnCoords::new(lengths, twists).unwrap()).unwrap()
    })
}

/// Measures the largest deviation of the exact length from the central
/// value over a seeded sample and widens it by the safety factor.
pub fn calibrate(topo: &PantsDecomposition, alpha: &CurveClass, m: f64) -> Result<Calibration> {
    if !(m > SHORTEST) {
        return Err(LabError::InvalidArgument(format!("M = {m} must exceed {SHORTEST}")));
    }
    let mut worst = 0.0f64;
    for s in sample_surfaces(topo, m, CALIBRATION_POINTS, CALIBRATION_SEED) {
        let exact = s.geodesic_length(alpha)?;
        let central = if alpha.is_pants_curve().is_some() { 0.0 } else { central_value(&s, alpha)? };
        worst = worst.max((exact - central).abs());
    }
    Ok(Calibration { m, c: SAFETY_FACTOR * worst })
}
