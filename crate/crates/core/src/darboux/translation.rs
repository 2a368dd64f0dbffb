use serde::Serialize;

use super::{darboux_c, factor_fi, DarbouxParams};
use crate::dual_quaternion::DualQuaternion;
use crate::error::Result;
use crate::linkage::trajectory::{trace_point, TrajectoryReport};
use crate::poly::{MotionPoly, RealPoly};
use crate::quaternion::Quaternion;
use crate::scalar::{to_real, Scalar};

/// Orbits of the FI quotient `Q` (with `C = Q·Q₃`) and of the quotient
/// obtained after perturbing the right factor's `w` by one.
#[derive(Clone, Debug, Serialize)]
pub struct CircularTranslationReport {
    /// Primal part of `Q` is `t² + 1`.
    pub quotient_is_translation: bool,
    pub circle_orbits: Vec<TrajectoryReport<f64>>,
    pub perturbed_orbits: Vec<TrajectoryReport<f64>>,
    /// Largest deviation between the displacement vectors of different
    /// points, zero for a translation.
    pub congruence_residual: f64,
}

impl CircularTranslationReport {
    /// Spread between the largest and smallest fitted semi-axis over all
    /// circle orbits.
    pub fn radius_spread(&self) -> f64 {
        let radii: Vec<f64> = self.circle_orbits.iter().flat_map(|o| [o.semi_axes.0, o.semi_axes.1]).collect();
        let max = radii.iter().cloned().fold(f64::MIN, f64::max);
        let min = radii.iter().cloned().fold(f64::MAX, f64::min);
        max - min
    }
}

pub const PROBE_POINTS: [[f64; 3]; 5] =
    [[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.3, -1.7, 0.9], [-2.0, 0.5, 1.5], [0.7, 2.2, -1.1]];

const SAMPLES: usize = 24;

/// Quotient of `C` by the rotation factor `t - (k + ε(vi + wj))`.
pub fn translation_quotient<S: Scalar>(p: &DarbouxParams<S>, v: &S, w: &S) -> Result<MotionPoly<S>> {
    let h = &DualQuaternion::k() + &DualQuaternion::eps(Quaternion::new(S::zero(), v.clone(), w.clone(), S::zero()));
    darboux_c(p)?.div_exact(&MotionPoly::linear(&h))
}

pub fn circular_translation_check<S: Scalar>(p: &DarbouxParams<S>) -> Result<CircularTranslationReport> {
    let fi = factor_fi(p)?;
    let q3 = fi.factors[2].clone();
    let (quotient, _) = darboux_c(p)?.div_rem(&q3)?;
    let quotient_is_translation = quotient.primal() == RealPoly::<S>::t2_plus_1().to_motion();

    let root = q3.linear_root().expect("FI factors are monic linear");
    let (v, w) = (root.dual.x.clone(), root.dual.y.clone());
    let perturbed = translation_quotient(p, &v, &(w + S::one()))?;

    let ts = sample_parameters(SAMPLES);
    let q_f: MotionPoly<f64> = quotient.map(to_real);
    let pert_f: MotionPoly<f64> = perturbed.map(to_real);
    let circle_orbits = PROBE_POINTS.iter().map(|pt| trace_point(&q_f, pt, &ts)).collect::<Result<Vec<_>>>()?;
    let perturbed_orbits = PROBE_POINTS.iter().map(|pt| trace_point(&pert_f, pt, &ts)).collect::<Result<Vec<_>>>()?;

    let mut congruence_residual = 0.0f64;
    for t in &ts {
        let pose = q_f.eval(t);
        let base = displacement(&pose, &PROBE_POINTS[0])?;
        for pt in &PROBE_POINTS[1..] {
            let d = displacement(&pose, pt)?;
            for k in 0..3 {
                congruence_residual = congruence_residual.max((d[k] - base[k]).abs());
            }
        }
    }
    Ok(CircularTranslationReport { quotient_is_translation, circle_orbits, perturbed_orbits, congruence_residual })
}

fn displacement(pose: &DualQuaternion<f64>, pt: &[f64; 3]) -> Result<[f64; 3]> {
    let y = pose.act_point(pt)?;
    Ok([y[0] - pt[0], y[1] - pt[1], y[2] - pt[2]])
}

/// `t = tan(φ/2)` for `n` angles spread over `(-π, π)`.
pub fn sample_parameters(n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| {
            let phi = -std::f64::consts::PI + (i as f64 + 0.5) * std::f64::consts::TAU / n as f64;
            (phi / 2.0).tan()
        })
        .collect()
}
