//! Independent construction of the FI and FIII chains.
//!
//! A cubic motion polynomial whose primal part is `(t² + 1)(t - r)` has a
//! two-parameter family of right factors `t - (r + εm)`, `m ⟂ r`. The
//! quotient is a curvilinear translation `(t² + 1) + εD(t)`; only when its
//! orbits are circles does it split into two rotations. For
//! `D = d₂t² + d₁t + d₀` the orbit is the circle condition on
//! `e = d₀ - d₂`, `f = d₁`: `e·f = 0` and `|e| = |f|`. Both are affine in the
//! family parameters, so the admissible right factor is unique and rational.

use super::{darboux_c, fiii_q4, DarbouxParams, Factorization, FactorizationLabel};
use crate::dual_quaternion::DualQuaternion;
use crate::error::{Error, Result};
use crate::poly::{MotionPoly, RealPoly};
use crate::quaternion::{vec3, Quaternion};
use crate::scalar::Scalar;

type V3<S> = [S; 3];

struct Translation<S> {
    e: V3<S>,
    f: V3<S>,
}

/// Splits a cubic `C` with primal part `(t² + 1)(t - r)` into
/// `[Qa, Qb, Qc]`, `C = Qa·Qb·Qc`, where `Qc` has primal root `r`, `Qa·Qb` is
/// a circular translation and `Qb = t - n` rotates about a line through the
/// origin.
pub fn circular_split<S: Scalar>(c: &MotionPoly<S>) -> Result<[MotionPoly<S>; 3]> {
    let p = RealPoly::<S>::t2_plus_1().to_motion();
    let (primal_quot, primal_rem) = c.primal().div_rem(&p)?;
    if !primal_rem.is_zero() {
        return Err(Error::Invalid("primal part is not divisible by t² + 1".into()));
    }
    let r = primal_quot
        .linear_root()
        .ok_or_else(|| Error::Invalid("primal cofactor of t² + 1 is not monic linear".into()))?
        .primal;
    let rv = r.vector();
    let (u1, u2) = perpendicular_basis(&rv)?;

    let root = |s1: &S, s2: &S| {
        let m = vec3::add(&vec3::scale(&u1, s1), &vec3::scale(&u2, s2));
        DualQuaternion::new(r.clone(), Quaternion::pure(m))
    };
    let zero = S::zero();
    let one = S::one();
    let t0 = translation_part(c, &root(&zero, &zero))?;
    let t1 = translation_part(c, &root(&one, &zero))?;
    let t2 = translation_part(c, &root(&zero, &one))?;

    let e1 = vec3::sub(&t1.e, &t0.e);
    let e2 = vec3::sub(&t2.e, &t0.e);
    let f1 = vec3::sub(&t1.f, &t0.f);
    let f2 = vec3::sub(&t2.f, &t0.f);
    let (e0, f0) = (&t0.e, &t0.f);
    let dot = vec3::dot::<S>;

    let quadratic_terms = [
        dot(&e1, &f1),
        dot(&e1, &f2) + dot(&e2, &f1),
        dot(&e2, &f2),
        dot(&e1, &e1) - dot(&f1, &f1),
        dot(&e1, &e2) - dot(&f1, &f2),
        dot(&e2, &e2) - dot(&f2, &f2),
    ];
    if !quadratic_terms.iter().all(|q| q.is_negligible()) {
        return Err(Error::Invalid("circle condition is not affine in the right factor".into()));
    }

    let two = S::two();
    let a11 = dot(&e1, f0) + dot(e0, &f1);
    let a12 = dot(&e2, f0) + dot(e0, &f2);
    let b1 = -dot(e0, f0);
    let a21 = two.clone() * (dot(e0, &e1) - dot(f0, &f1));
    let a22 = two * (dot(e0, &e2) - dot(f0, &f2));
    let b2 = -(dot(e0, e0) - dot(f0, f0));
    let det = a11.clone() * a22.clone() - a12.clone() * a21.clone();
    if det.is_negligible() {
        return Err(Error::SingularChoice("circle condition does not determine the right factor"));
    }
    let s1 = (b1.clone() * a22 - a12 * b2.clone()) / det.clone();
    let s2 = (a11 * b2 - b1 * a21) / det;

    let h = root(&s1, &s2);
    let qc = MotionPoly::linear(&h);
    let quotient = c.div_exact(&qc)?;
    let t = translation_part(c, &h)?;
    let ff = dot(&t.f, &t.f);
    if ff.is_negligible() {
        return Err(Error::Invalid("quotient is a pure rotation-free constant".into()));
    }
    // n × f = e with n ⟂ e, f
    let n = vec3::scale(&vec3::cross(&t.f, &t.e), &(S::one() / ff));
    let qb = MotionPoly::linear(&DualQuaternion::from_primal(Quaternion::pure(n)));
    let qa = quotient.div_exact(&qb)?;
    if qa.linear_root().is_none() {
        return Err(Error::InexactDivision);
    }
    Ok([qa, qb, qc])
}

fn perpendicular_basis<S: Scalar>(v: &V3<S>) -> Result<(V3<S>, V3<S>)> {
    if vec3::is_zero(v) {
        return Err(Error::Invalid("primal root has zero vector part".into()));
    }
    let z = S::zero;
    let axes = [[S::one(), z(), z()], [z(), S::one(), z()], [z(), z(), S::one()]];
    let u1 = axes
        .iter()
        .map(|a| vec3::cross(v, a))
        .find(|u| !vec3::is_zero(u))
        .expect("a nonzero vector is not parallel to all coordinate axes");
    let u2 = vec3::cross(v, &u1);
    Ok((u1, u2))
}

fn translation_part<S: Scalar>(c: &MotionPoly<S>, h: &DualQuaternion<S>) -> Result<Translation<S>> {
    let q = c.div_exact(&MotionPoly::linear(h))?;
    let expected_primal = RealPoly::<S>::t2_plus_1().to_motion();
    if q.primal() != expected_primal {
        return Err(Error::Invalid("quotient is not a curvilinear translation".into()));
    }
    let d0 = q.coeff(0).dual;
    let d1 = q.coeff(1).dual;
    let d2 = q.coeff(2).dual;
    Ok(Translation { e: (&d0 - &d2).vector(), f: d1.vector() })
}

/// FI rebuilt from `C` by [`circular_split`].
pub fn derive_fi<S: Scalar>(p: &DarbouxParams<S>) -> Result<Factorization<S>> {
    let c = darboux_c(p)?;
    let [qa, qb, qc] = circular_split(&c)?;
    Ok(Factorization {
        label: FactorizationLabel::FI,
        params: p.clone(),
        factors: vec![qa, qb, qc],
        cofactor: RealPoly::one(),
    })
}

/// FIII rebuilt by dividing `(t² + 1)C` by `Q'₄²` and splitting the cubic
/// quotient `C₂` with [`circular_split`].
pub fn derive_fiii<S: Scalar>(p: &DarbouxParams<S>) -> Result<Factorization<S>> {
    let q4 = fiii_q4(p);
    let c2 = fiii_c2(p)?;
    let [q7, q6, q5] = circular_split(&c2)?;
    Ok(Factorization {
        label: FactorizationLabel::FIII,
        params: p.clone(),
        factors: vec![q7, q6, q5, q4.clone(), q4],
        cofactor: RealPoly::t2_plus_1(),
    })
}

/// `C₂` with `(t² + 1)C = C₂·Q'₄²`.
pub fn fiii_c2<S: Scalar>(p: &DarbouxParams<S>) -> Result<MotionPoly<S>> {
    let q4 = fiii_q4(p);
    let pc = &RealPoly::t2_plus_1().to_motion() * &darboux_c(p)?;
    pc.div_exact(&(&q4 * &q4))
}
