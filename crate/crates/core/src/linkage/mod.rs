//! Closed linkages built from two factorizations of the same motion.
//!
//! Chain A runs from the base to the coupler, chain B likewise; the cycle of
//! joints is chain A in order followed by chain B reversed. Identical
//! neighbouring factors of a chain are one joint.

pub mod mobility;
pub mod substructure;
pub mod trajectory;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::darboux::Factorization;
use crate::dual_quaternion::{DisplacementKind, DualQuaternion};
use crate::error::{Error, Result};
use crate::line::AxisLine;
use crate::poly::MotionPoly;
use crate::scalar::{to_real, Real, Scalar};

pub use mobility::{screw_rank, MobilityReport, DEFAULT_RANK_TOL};
pub use substructure::{parallel_partition, SarrusPair, SubstructureReport};
pub use trajectory::{classify_path, trace_point, ConicClass, TrajectoryReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Chain {
    A,
    B,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Joint<S> {
    pub chain: Chain,
    /// Indices of the (identical) chain factors realized by this joint.
    pub factors: Vec<usize>,
    /// Axis at the home configuration `t = 0`.
    pub home: AxisLine<S>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Linkage<S> {
    chain_a: Factorization<S>,
    chain_b: Factorization<S>,
    joints: Vec<Joint<S>>,
    degenerate: bool,
}

/// Poses of the links of an open chain at parameter `t`: entry `j` is the
/// product of the first `j` factors evaluated at `t`, entry 0 the identity.
pub fn chain_poses<S: Scalar>(f: &Factorization<S>, t: &S) -> Vec<DualQuaternion<S>> {
    let mut poses = Vec::with_capacity(f.factors.len() + 1);
    let mut pose = DualQuaternion::one();
    poses.push(pose.clone());
    for q in &f.factors {
        pose = &pose * &q.eval(t);
        poses.push(pose.clone());
    }
    poses
}

/// Rotation angle of the factor `t - h` at parameter `t`:
/// `cot(θ/2) = (t - h₀)/|(h₁, h₂, h₃)|`, `θ ∈ (0, 2π)`, decreasing in `t`.
pub fn joint_angle<R: Real>(factor: &MotionPoly<R>, t: R) -> Result<R> {
    let h = factor.linear_root().ok_or(Error::NotARotation)?;
    if h.classify() != DisplacementKind::Rotation {
        return Err(Error::NotARotation);
    }
    let v = h.primal.vector();
    let len = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
    Ok(R::lit(2.0) * len.atan2(t - h.primal.w))
}

/// Groups of consecutive identical factors.
fn factor_groups<S: Scalar>(f: &Factorization<S>) -> Vec<Vec<usize>> {
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for (i, q) in f.factors.iter().enumerate() {
        match groups.last_mut() {
            Some(g) if f.factors[*g.last().unwrap()] == *q => g.push(i),
            _ => groups.push(vec![i]),
        }
    }
    groups
}

fn check_rotational<S: Scalar>(f: &Factorization<S>, chain: char) -> Result<Vec<AxisLine<S>>> {
    f.factors
        .iter()
        .enumerate()
        .map(|(index, q)| q.linear_root().and_then(|h| h.axis().ok()).ok_or(Error::NotRotational { chain, index }))
        .collect()
}

/// Axes of the chain's joints in the fixed frame at `t`, one per factor.
fn chain_axes<S: Scalar>(f: &Factorization<S>, t: &S) -> Result<Vec<AxisLine<S>>> {
    let poses = chain_poses(f, t);
    f.factors
        .iter()
        .zip(&poses)
        .map(|(q, pose)| {
            let axis = q.linear_root().ok_or(Error::NotARotation)?.axis()?;
            axis.transform(pose)
        })
        .collect()
}

pub fn build_linkage<S: Scalar>(fa: &Factorization<S>, fb: &Factorization<S>) -> Result<Linkage<S>> {
    Linkage::new(fa.clone(), fb.clone())
}

impl<S: Scalar> Linkage<S> {
    pub fn new(chain_a: Factorization<S>, chain_b: Factorization<S>) -> Result<Self> {
        check_rotational(&chain_a, 'A')?;
        check_rotational(&chain_b, 'B')?;
        let lhs = &chain_a.product() * &chain_b.cofactor.to_motion();
        let rhs = &chain_b.product() * &chain_a.cofactor.to_motion();
        if !(&lhs - &rhs).is_zero() {
            return Err(Error::ClosureFailure);
        }
        let degenerate = chain_a.factors == chain_b.factors;
        let zero = S::zero();
        let axes_a = chain_axes(&chain_a, &zero)?;
        let axes_b = chain_axes(&chain_b, &zero)?;
        let mut joints: Vec<Joint<S>> = factor_groups(&chain_a)
            .into_iter()
            .map(|g| Joint { chain: Chain::A, home: axes_a[g[0]].clone(), factors: g })
            .collect();
        joints.extend(factor_groups(&chain_b).into_iter().rev().map(|g| Joint {
            chain: Chain::B,
            home: axes_b[g[0]].clone(),
            factors: g,
        }));
        Ok(Self { chain_a, chain_b, joints, degenerate })
    }

    pub fn joints(&self) -> &[Joint<S>] {
        &self.joints
    }

    pub fn joint_count(&self) -> usize {
        self.joints.len()
    }

    pub fn chain_a(&self) -> &Factorization<S> {
        &self.chain_a
    }

    pub fn chain_b(&self) -> &Factorization<S> {
        &self.chain_b
    }

    /// Both chains are the same factorization, so there is no relative motion.
    pub fn is_degenerate(&self) -> bool {
        self.degenerate
    }

    /// `product(A)·cofactor(B)`, equal to `product(B)·cofactor(A)`.
    pub fn closure_certificate(&self) -> MotionPoly<S> {
        &self.chain_a.product() * &self.chain_b.cofactor.to_motion()
    }

    /// SHA-256 of the canonical JSON of the closure certificate.
    pub fn closure_hash(&self) -> String {
        let json = serde_json::to_string(&self.closure_certificate()).expect("polynomials serialize");
        Sha256::digest(json.as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
    }

    /// Motion of the coupler, `product(A)`.
    pub fn coupler_motion(&self) -> MotionPoly<S> {
        self.chain_a.product()
    }

    /// Joint axes in the fixed frame at parameter `t`, in cycle order.
    pub fn axes_at(&self, t: &S) -> Result<Vec<AxisLine<S>>> {
        let axes_a = chain_axes(&self.chain_a, t)?;
        let axes_b = chain_axes(&self.chain_b, t)?;
        Ok(self
            .joints
            .iter()
            .map(|j| match j.chain {
                Chain::A => axes_a[j.factors[0]].clone(),
                Chain::B => axes_b[j.factors[0]].clone(),
            })
            .collect())
    }

    /// End poses of both chains agree up to a real factor.
    pub fn closes_at(&self, t: &S) -> bool {
        let a = chain_poses(&self.chain_a, t).pop().expect("non-empty");
        let b = chain_poses(&self.chain_b, t).pop().expect("non-empty");
        a.proportionality(&b).is_some_and(|l| !l.is_negligible())
    }

    pub fn home_axes(&self) -> Vec<AxisLine<S>> {
        self.joints.iter().map(|j| j.home.clone()).collect()
    }

    /// Joints grouped by parallel home axes.
    pub fn parallel_groups(&self) -> Vec<Vec<usize>> {
        parallel_partition(&self.home_axes())
    }

    pub fn substructure(&self) -> SubstructureReport {
        SubstructureReport::from_groups(&self.parallel_groups(), self.joint_count())
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Linkage<T> {
        Linkage {
            chain_a: self.chain_a.map(&f),
            chain_b: self.chain_b.map(&f),
            joints: self
                .joints
                .iter()
                .map(|j| Joint { chain: j.chain, factors: j.factors.clone(), home: j.home.map(&f) })
                .collect(),
            degenerate: self.degenerate,
        }
    }

    pub fn to_real<R: Real>(&self) -> Linkage<R> {
        self.map(to_real)
    }
}

/// Configuration of the linkage at one parameter value.
#[derive(Clone, Debug, PartialEq)]
pub struct ConfigSample<R> {
    pub t: R,
    /// Link poses along chain A, base first.
    pub poses_a: Vec<DualQuaternion<R>>,
    /// Link poses along chain B, base first.
    pub poses_b: Vec<DualQuaternion<R>>,
    /// One angle per joint, cycle order. A joint standing for `m` identical
    /// factors turns by the sum of their angles.
    pub joint_angles: Vec<R>,
    pub axes: Vec<AxisLine<R>>,
}

impl<R: Real> ConfigSample<R> {
    pub fn coupler_pose(&self) -> &DualQuaternion<R> {
        self.poses_a.last().expect("non-empty")
    }

    /// Distance between the normalized end poses of the two chains.
    pub fn closure_residual(&self) -> R {
        projective_distance(self.coupler_pose(), self.poses_b.last().expect("non-empty"))
    }
}

/// Distance between two dual quaternions as points of projective space:
/// both are scaled to unit length and the sign ambiguity removed.
pub fn projective_distance<R: Real>(a: &DualQuaternion<R>, b: &DualQuaternion<R>) -> R {
    let unit = |h: &DualQuaternion<R>| {
        let c = h.coeffs();
        let n = c.iter().fold(R::zero(), |acc, x| acc + *x * *x).sqrt();
        c.map(|x| x / n)
    };
    let (ua, ub) = (unit(a), unit(b));
    let dot = ua.iter().zip(&ub).fold(R::zero(), |acc, (x, y)| acc + *x * *y);
    let sign = if dot < R::zero() { -R::one() } else { R::one() };
    ua.iter().zip(&ub).map(|(x, y)| (*x - sign * *y).abs()).fold(R::zero(), |m, d| m.max(d))
}

impl<R: Real> Linkage<R> {
    pub fn sample(&self, t: R) -> Result<ConfigSample<R>> {
        let poses_a = chain_poses(&self.chain_a, &t);
        let poses_b = chain_poses(&self.chain_b, &t);
        let joint_angles = self
            .joints
            .iter()
            .map(|j| {
                let chain = match j.chain {
                    Chain::A => &self.chain_a,
                    Chain::B => &self.chain_b,
                };
                j.factors.iter().try_fold(R::zero(), |acc, &i| Ok(acc + joint_angle(&chain.factors[i], t)?))
            })
            .collect::<Result<Vec<_>>>()?;
        let axes = self.axes_at(&t)?;
        Ok(ConfigSample { t, poses_a, poses_b, joint_angles, axes })
    }

    pub fn mobility_at(&self, t: R, tol: R) -> Result<MobilityReport<R>> {
        let axes = self.axes_at(&t)?;
        Ok(MobilityReport::from_axes(t, &axes, tol))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::darboux::{factor_fi, factor_fii, factor_fiii, fiv_chains, DarbouxParams};
    use crate::Rational;

    type P = DarbouxParams<Rational>;

    fn params() -> P {
        P::from_ratios((3, 2), (-1, 1), (2, 5)).with_offsets(Rational::from_ratio(1, 3), Rational::from_int(0))
    }

    #[test]
    fn seven_joints() {
        let p = params();
        let fi = factor_fi(&p).unwrap();
        let l = build_linkage(&fi, &factor_fiii(&p).unwrap()).unwrap();
        assert_eq!(l.joint_count(), 7);
        let l = build_linkage(&fi, &factor_fii(&p).unwrap()).unwrap();
        assert_eq!(l.joint_count(), 7);
        assert_eq!(l.joints()[5].factors, vec![1, 2]);
        let (a, b) = fiv_chains::<Rational>();
        assert_eq!(build_linkage(&a, &b).unwrap().joint_count(), 7);
    }

    #[test]
    fn self_pairing_is_degenerate() {
        let fi = factor_fi(&params()).unwrap();
        let l = build_linkage(&fi, &fi).unwrap();
        assert!(l.is_degenerate());
        assert_eq!(l.joint_count(), 6);
    }

    #[test]
    fn mismatched_chains_fail_closure() {
        let fi = factor_fi(&params()).unwrap();
        let other = factor_fii(&P::from_ratios((1, 1), (0, 1), (0, 1))).unwrap();
        assert_eq!(build_linkage(&fi, &other).unwrap_err(), Error::ClosureFailure);
    }

    #[test]
    fn translation_factor_is_not_rotational() {
        let mut fi = factor_fi(&params()).unwrap();
        let trans = DualQuaternion::eps(crate::Quaternion::i());
        fi.factors[1] = MotionPoly::linear(&trans);
        assert_eq!(build_linkage(&fi, &fi).unwrap_err(), Error::NotRotational { chain: 'A', index: 1 });
    }

    #[test]
    fn first_pose_is_identity_and_last_is_c() {
        let p = params();
        let fi = factor_fi(&p).unwrap();
        let zero = Rational::from_int(0);
        let poses = chain_poses(&fi, &zero);
        assert_eq!(poses[0], DualQuaternion::one());
        // C(0) = -k + cε
        let c0 = crate::darboux::darboux_c(&p).unwrap().coeff(0);
        assert_eq!(poses[3], c0);
    }

    #[test]
    fn joint_angle_examples() {
        let q = MotionPoly::linear(&DualQuaternion::<f64>::k());
        assert!((joint_angle(&q, 0.0).unwrap() - std::f64::consts::PI).abs() < 1e-15);
        assert!((joint_angle(&q, 1.0).unwrap() - std::f64::consts::FRAC_PI_2).abs() < 1e-15);
        assert!(joint_angle(&q, 1e9).unwrap() < 1e-8);
        assert!(std::f64::consts::TAU - joint_angle(&q, -1e9).unwrap() < 1e-8);
        let t = MotionPoly::linear(&DualQuaternion::<f64>::eps(crate::Quaternion::i()));
        assert_eq!(joint_angle(&t, 0.5), Err(Error::NotARotation));
    }

    #[test]
    fn projective_distance_ignores_scale_and_sign() {
        let h = DualQuaternion::<f64>::from_coeffs([0.1, 0.2, -0.3, 0.4, 0.5, -0.6, 0.7, 0.8]);
        assert!(projective_distance(&h, &h.scale(&-3.5)) < 1e-15);
        assert!(projective_distance(&h, &DualQuaternion::one()) > 0.1);
    }
}
