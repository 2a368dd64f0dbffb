//! Instantaneous mobility from the rank of the joint screw matrix.

use nalgebra::DMatrix;
use serde::Serialize;

use crate::line::AxisLine;
use crate::scalar::Real;

pub const DEFAULT_RANK_TOL: f64 = 1e-8;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MobilityReport<R> {
    pub t: R,
    pub joint_count: usize,
    pub numeric_rank: usize,
    pub dof: usize,
    /// Descending.
    pub singular_values: Vec<R>,
}

/// Number of singular values of the `6 × n` screw matrix above `tol·σ_max`,
/// and the singular values themselves in descending order.
pub fn screw_rank<R: Real>(axes: &[AxisLine<R>], tol: R) -> (usize, Vec<R>) {
    if axes.is_empty() {
        return (0, Vec::new());
    }
    let m = DMatrix::from_fn(6, axes.len(), |i, j| axes[j].sextuple()[i]);
    let mut sv: Vec<R> = m.singular_values().iter().copied().collect();
    sv.sort_by(|a, b| b.partial_cmp(a).unwrap_or(std::cmp::Ordering::Equal));
    let max = sv[0];
    let rank = if max > R::zero() { sv.iter().filter(|s| **s > tol * max).count() } else { 0 };
    (rank, sv)
}

impl<R: Real> MobilityReport<R> {
    /// Loop closure velocity equation `Σ θ̇ᵢ Sᵢ = 0`: the dof is the nullity.
    pub fn from_axes(t: R, axes: &[AxisLine<R>], tol: R) -> Self {
        let (numeric_rank, singular_values) = screw_rank(axes, tol);
        Self { t, joint_count: axes.len(), numeric_rank, dof: axes.len() - numeric_rank, singular_values }
    }
}
