//! Oriented lines in Plücker coordinates.

use crate::dual_quaternion::DualQuaternion;
use crate::error::{Error, Result};
use crate::quaternion::vec3;
use crate::scalar::Scalar;

/// Line `[d; m]` with direction `d ≠ 0` and moment `m`, `d·m = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct AxisLine<S> {
    pub direction: [S; 3],
    pub moment: [S; 3],
}

impl<S: Scalar> AxisLine<S> {
    pub fn new(direction: [S; 3], moment: [S; 3]) -> Result<Self> {
        if vec3::is_zero(&direction) {
            return Err(Error::Invalid("line direction must be nonzero".into()));
        }
        let line = Self { direction, moment };
        if !line.plucker_residual().is_negligible() {
            return Err(Error::Invalid("Plücker condition d·m = 0 violated".into()));
        }
        Ok(line)
    }

    pub(crate) fn new_unchecked(direction: [S; 3], moment: [S; 3]) -> Self {
        Self { direction, moment }
    }

    /// Line through `point` with direction `direction`.
    pub fn through(point: &[S; 3], direction: [S; 3]) -> Result<Self> {
        let moment = vec3::cross(point, &direction);
        Self::new(direction, moment)
    }

    /// `d·m`, zero for a valid line.
    pub fn plucker_residual(&self) -> S {
        vec3::dot(&self.direction, &self.moment)
    }

    /// Point of the line closest to the origin, `d × m / |d|²`.
    pub fn closest_point_to_origin(&self) -> [S; 3] {
        let dd = vec3::dot(&self.direction, &self.direction);
        vec3::scale(&vec3::cross(&self.direction, &self.moment), &(S::one() / dd))
    }

    /// Directions are linearly dependent.
    pub fn is_parallel(&self, other: &Self) -> bool {
        directions_parallel(&self.direction, &other.direction)
    }

    /// `[d; m]` as a six-vector.
    pub fn sextuple(&self) -> [S; 6] {
        let [d0, d1, d2] = self.direction.clone();
        let [m0, m1, m2] = self.moment.clone();
        [d0, d1, d2, m0, m1, m2]
    }

    /// Image of the line under a displacement: two points of the line are
    /// mapped and the Plücker coordinates rebuilt from them.
    pub fn transform(&self, pose: &DualQuaternion<S>) -> Result<Self> {
        let p0 = self.closest_point_to_origin();
        let p1 = vec3::add(&p0, &self.direction);
        let q0 = pose.act_point(&p0)?;
        let q1 = pose.act_point(&p1)?;
        let direction = vec3::sub(&q1, &q0);
        let moment = vec3::cross(&q0, &direction);
        Ok(Self { direction, moment })
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> AxisLine<T> {
        AxisLine {
            direction: [f(&self.direction[0]), f(&self.direction[1]), f(&self.direction[2])],
            moment: [f(&self.moment[0]), f(&self.moment[1]), f(&self.moment[2])],
        }
    }
}

/// `|a × b|² ≈ 0` relative to `|a|²|b|²`.
pub fn directions_parallel<S: Scalar>(a: &[S; 3], b: &[S; 3]) -> bool {
    let c = vec3::cross(a, b);
    let scale = vec3::dot(a, a) * vec3::dot(b, b);
    if scale.is_negligible() {
        return false;
    }
    (vec3::dot(&c, &c) / scale).is_negligible()
}

/// Applies `transform` to every line.
pub fn transform_axis<S: Scalar>(pose: &DualQuaternion<S>, axis: &AxisLine<S>) -> Result<AxisLine<S>> {
    if pose.primal.is_zero() {
        return Err(Error::ZeroPrimal);
    }
    if !pose.has_real_norm() {
        return Err(Error::NotADisplacement);
    }
    axis.transform(pose)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quaternion::Quaternion;
    use crate::Rational;

    type Dq = DualQuaternion<Rational>;

    fn v(a: i64, b: i64, c: i64) -> [Rational; 3] {
        [a, b, c].map(Rational::from_int)
    }

    // Independent two-point oracle: map two explicit points, rebuild.
    fn oracle(pose: &Dq, p: [Rational; 3], q: [Rational; 3]) -> AxisLine<Rational> {
        let a = pose.act_point(&p).unwrap();
        let b = pose.act_point(&q).unwrap();
        let d = vec3::sub(&b, &a);
        AxisLine::through(&a, d).unwrap()
    }

    #[test]
    fn identity_keeps_line() {
        let l = AxisLine::through(&v(1, 2, 0), v(0, 0, 1)).unwrap();
        assert_eq!(transform_axis(&Dq::one(), &l).unwrap(), l);
    }

    #[test]
    fn translation_of_k_axis() {
        let pose = &Dq::one() + &Dq::eps(Quaternion::i());
        let l = AxisLine::through(&v(0, 0, 0), v(0, 0, 1)).unwrap();
        let got = transform_axis(&pose, &l).unwrap();
        assert_eq!(got.direction, v(0, 0, 1));
        assert_eq!(got, oracle(&pose, v(0, 0, 0), v(0, 0, 1)));
        assert_eq!(got.moment, vec3::cross(&v(-2, 0, 0), &v(0, 0, 1)));
    }

    #[test]
    fn half_turn_reverses_i_axis() {
        let l = AxisLine::through(&v(0, 0, 0), v(1, 0, 0)).unwrap();
        let got = transform_axis(&Dq::k(), &l).unwrap();
        assert_eq!(got.direction, v(-1, 0, 0));
        assert_eq!(got, oracle(&Dq::k(), v(0, 0, 0), v(1, 0, 0)));
    }

    #[test]
    fn rejects_invalid_lines() {
        assert!(AxisLine::new(v(0, 0, 0), v(1, 0, 0)).is_err());
        assert!(AxisLine::new(v(1, 0, 0), v(1, 0, 0)).is_err());
    }

    #[test]
    fn parallel_detection() {
        let a = AxisLine::through(&v(0, 0, 0), v(0, 2, 0)).unwrap();
        let b = AxisLine::through(&v(5, 0, 1), v(0, -3, 0)).unwrap();
        let c = AxisLine::through(&v(5, 0, 1), v(1, -3, 0)).unwrap();
        assert!(a.is_parallel(&b));
        assert!(!a.is_parallel(&c));
    }
}
