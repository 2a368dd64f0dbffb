//! Point paths: total least squares plane fit followed by an algebraic conic
//! fit inside that plane.

use nalgebra::{DMatrix, Matrix2, Vector3};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::MotionPoly;
use crate::scalar::Real;

/// Planarity threshold relative to the orbit diameter.
pub const PLANE_TOL: f64 = 1e-9;
/// Circle iff the semi-axis ratio is within this of 1.
pub const CIRCLE_RATIO_TOL: f64 = 1e-6;
/// Orbits shorter than this (absolute) are fixed points.
pub const FIXED_POINT_TOL: f64 = 1e-9;
/// Relative algebraic residual above which the samples are not on a conic.
const CONIC_RESIDUAL_TOL: f64 = 1e-6;
const MIN_SAMPLES: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ConicClass {
    Ellipse,
    Circle,
    Degenerate,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TrajectoryReport<R> {
    pub point: [R; 3],
    /// Largest distance of a sample from the fitted plane.
    pub plane_residual: R,
    /// Largest distance between two samples.
    pub diameter: R,
    pub conic_class: ConicClass,
    /// `(major, minor)`; zero for degenerate paths.
    pub semi_axes: (R, R),
    pub center: [R; 3],
    pub normal: [R; 3],
}

impl<R: Real> TrajectoryReport<R> {
    pub fn is_planar(&self) -> bool {
        self.plane_residual <= R::lit(PLANE_TOL) * self.diameter.max(R::one())
    }

    pub fn axis_ratio(&self) -> R {
        if self.semi_axes.1 > R::zero() {
            self.semi_axes.0 / self.semi_axes.1
        } else {
            R::zero()
        }
    }
}

/// Samples the path of `point` under `motion` at the parameters `ts` and
/// classifies it.
pub fn trace_point<R: Real>(motion: &MotionPoly<R>, point: &[R; 3], ts: &[R]) -> Result<TrajectoryReport<R>> {
    if ts.len() < MIN_SAMPLES {
        return Err(Error::InsufficientSamples { needed: MIN_SAMPLES, got: ts.len() });
    }
    let samples = ts.iter().map(|t| motion.eval(t).act_point(point)).collect::<Result<Vec<_>>>()?;
    Ok(classify_path(*point, &samples))
}

/// Plane and conic fit of an already sampled path.
pub fn classify_path<R: Real>(point: [R; 3], samples: &[[R; 3]]) -> TrajectoryReport<R> {
    let pts: Vec<Vector3<R>> = samples.iter().map(|p| Vector3::new(p[0], p[1], p[2])).collect();
    let n = R::lit(pts.len() as f64);
    let centroid = pts.iter().fold(Vector3::zeros(), |acc, p| acc + p) / n;
    let mut diameter = R::zero();
    for (i, p) in pts.iter().enumerate() {
        for q in &pts[i + 1..] {
            diameter = diameter.max((p - q).norm());
        }
    }
    let degenerate = |plane_residual: R, normal: Vector3<R>| TrajectoryReport {
        point,
        plane_residual,
        diameter,
        conic_class: ConicClass::Degenerate,
        semi_axes: (R::zero(), R::zero()),
        center: [centroid.x, centroid.y, centroid.z],
        normal: [normal.x, normal.y, normal.z],
    };
    if diameter <= R::lit(FIXED_POINT_TOL) {
        return degenerate(R::zero(), Vector3::z());
    }

    let centered = DMatrix::from_fn(pts.len(), 3, |i, j| pts[i][j] - centroid[j]);
    let svd = centered.svd(false, true);
    let v_t = svd.v_t.expect("requested V");
    let order = sorted_desc(svd.singular_values.as_slice());
    let axis = |k: usize| Vector3::new(v_t[(order[k], 0)], v_t[(order[k], 1)], v_t[(order[k], 2)]);
    let (u_dir, v_dir, normal) = (axis(0), axis(1), axis(2));
    let plane_residual = pts.iter().map(|p| (p - centroid).dot(&normal).abs()).fold(R::zero(), |a, b| a.max(b));
    let sv = svd.singular_values.as_slice();
    if sv[order[1]] <= R::lit(PLANE_TOL) * sv[order[0]] {
        // collinear samples
        return degenerate(plane_residual, normal);
    }
    let planar = plane_residual <= R::lit(PLANE_TOL) * diameter.max(R::one());

    // in-plane coordinates, normalized to unit RMS radius
    let coords: Vec<(R, R)> = pts.iter().map(|p| ((p - centroid).dot(&u_dir), (p - centroid).dot(&v_dir))).collect();
    let rms = (coords.iter().fold(R::zero(), |acc, (x, y)| acc + *x * *x + *y * *y) / n).sqrt();
    let design = DMatrix::from_fn(coords.len(), 6, |i, j| {
        let (x, y) = (coords[i].0 / rms, coords[i].1 / rms);
        match j {
            0 => x * x,
            1 => x * y,
            2 => y * y,
            3 => x,
            4 => y,
            _ => R::one(),
        }
    });
    let Some(conic) = smallest_right_singular_vector(&design) else {
        return degenerate(plane_residual, normal);
    };
    let (a, b, c, d, e, f) = (conic[0], conic[1], conic[2], conic[3], conic[4], conic[5]);
    let residual = (&design * &conic).amax();
    let two = R::lit(2.0);
    let four = R::lit(4.0);
    let disc = b * b - four * a * c;
    if !planar || residual > R::lit(CONIC_RESIDUAL_TOL) || disc >= R::zero() {
        return degenerate(plane_residual, normal);
    }
    let m = Matrix2::new(two * a, b, b, two * c);
    let Some(m_inv) = m.try_inverse() else {
        return degenerate(plane_residual, normal);
    };
    let cxy = m_inv * nalgebra::Vector2::new(-d, -e);
    let (x0, y0) = (cxy.x, cxy.y);
    let f0 = a * x0 * x0 + b * x0 * y0 + c * y0 * y0 + d * x0 + e * y0 + f;
    let eig = Matrix2::new(a, b / two, b / two, c).symmetric_eigenvalues();
    let s1 = -f0 / eig[0];
    let s2 = -f0 / eig[1];
    if s1 <= R::zero() || s2 <= R::zero() {
        return degenerate(plane_residual, normal);
    }
    let (r1, r2) = (s1.sqrt() * rms, s2.sqrt() * rms);
    let (major, minor) = if r1 >= r2 { (r1, r2) } else { (r2, r1) };
    let center = centroid + u_dir * (x0 * rms) + v_dir * (y0 * rms);
    let class = if (major / minor - R::one()).abs() < R::lit(CIRCLE_RATIO_TOL) {
        ConicClass::Circle
    } else {
        ConicClass::Ellipse
    };
    TrajectoryReport {
        point,
        plane_residual,
        diameter,
        conic_class: class,
        semi_axes: (major, minor),
        center: [center.x, center.y, center.z],
        normal: [normal.x, normal.y, normal.z],
    }
}

fn sorted_desc<R: Real>(values: &[R]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..values.len()).collect();
    idx.sort_by(|&i, &j| values[j].partial_cmp(&values[i]).unwrap_or(std::cmp::Ordering::Equal));
    idx
}

fn smallest_right_singular_vector<R: Real>(m: &DMatrix<R>) -> Option<nalgebra::DVector<R>> {
    let cols = m.ncols();
    // pad to square so V is complete when there are exactly as many rows as unknowns
    let work = if m.nrows() < cols {
        let mut padded = DMatrix::zeros(cols, cols);
        padded.rows_mut(0, m.nrows()).copy_from(m);
        padded
    } else {
        m.clone()
    };
    let svd = work.svd(false, true);
    let v_t = svd.v_t?;
    let order = sorted_desc(svd.singular_values.as_slice());
    let k = *order.last()?;
    Some(v_t.row(k).transpose())
}
