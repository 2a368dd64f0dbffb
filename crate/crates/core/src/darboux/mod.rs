//! The general Darboux motion and its factorizations.
//!
//! `darboux_c` is the cubic motion polynomial normalized to a monic leading
//! coefficient. The four factorization families are built from their closed
//! forms here; [`derive`] rebuilds FI and FIII from division and the
//! circular-translation condition alone, so the closed forms can be checked
//! against an independent route.

mod derive;
mod translation;

use std::fmt;
use std::str::FromStr;

pub use derive::{circular_split, derive_fi, derive_fiii, fiii_c2};
pub use translation::{circular_translation_check, sample_parameters, translation_quotient, CircularTranslationReport};

use crate::dual_quaternion::DualQuaternion;
use crate::error::{Error, Result};
use crate::poly::{product, MotionPoly, RealPoly};
use crate::quaternion::Quaternion;
use crate::scalar::{Real, Scalar};

/// Darboux motion constants `a, b, c` and the FIII offsets `x, y`.
#[derive(Clone, Debug, PartialEq)]
pub struct DarbouxParams<S> {
    pub a: S,
    pub b: S,
    pub c: S,
    pub x: S,
    pub y: S,
}

impl<S: Scalar> DarbouxParams<S> {
    pub fn new(a: S, b: S, c: S) -> Self {
        Self { a, b, c, x: S::zero(), y: S::zero() }
    }

    pub fn with_offsets(mut self, x: S, y: S) -> Self {
        self.x = x;
        self.y = y;
        self
    }

    pub fn from_ratios(a: (i64, i64), b: (i64, i64), c: (i64, i64)) -> Self {
        Self::new(S::from_ratio(a.0, a.1), S::from_ratio(b.0, b.1), S::from_ratio(c.0, c.1))
    }

    /// Rejects the vertical case `a = 0`.
    pub fn validate(&self) -> Result<()> {
        if self.a.is_negligible() {
            Err(Error::DegenerateParams)
        } else {
            Ok(())
        }
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> DarbouxParams<T> {
        DarbouxParams { a: f(&self.a), b: f(&self.b), c: f(&self.c), x: f(&self.x), y: f(&self.y) }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FactorizationLabel {
    FI,
    FII,
    FIII,
    FIV,
}

impl fmt::Display for FactorizationLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::FI => "FI",
            Self::FII => "FII",
            Self::FIII => "FIII",
            Self::FIV => "FIV",
        })
    }
}

impl FromStr for FactorizationLabel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "FI" => Ok(Self::FI),
            "FII" => Ok(Self::FII),
            "FIII" => Ok(Self::FIII),
            "FIV" => Ok(Self::FIV),
            other => Err(Error::Invalid(format!("unknown factorization type {other:?}"))),
        }
    }
}

/// Ordered monic linear factors whose product is `cofactor · C`.
#[derive(Clone, Debug, PartialEq)]
pub struct Factorization<S> {
    pub label: FactorizationLabel,
    pub params: DarbouxParams<S>,
    pub factors: Vec<MotionPoly<S>>,
    pub cofactor: RealPoly<S>,
}

impl<S: Scalar> Factorization<S> {
    pub fn product(&self) -> MotionPoly<S> {
        product(&self.factors)
    }

    /// `cofactor · C` for the stored parameters.
    pub fn target(&self) -> Result<MotionPoly<S>> {
        Ok(&self.cofactor.to_motion() * &darboux_c(&self.params)?)
    }

    /// `product - cofactor · C`; the zero polynomial for a valid factorization.
    pub fn residual(&self) -> Result<MotionPoly<S>> {
        Ok(&self.product() - &self.target()?)
    }

    pub fn verify(&self) -> bool {
        self.residual().map(|r| r.is_zero()).unwrap_or(false)
    }

    /// Roots `h` of the factors `t - h`.
    pub fn roots(&self) -> Option<Vec<DualQuaternion<S>>> {
        self.factors.iter().map(|f| f.linear_root()).collect()
    }

    /// Index pairs `(i, i + 1)` of identical neighbouring factors.
    pub fn identical_adjacent(&self) -> Vec<(usize, usize)> {
        self.factors.windows(2).enumerate().filter(|(_, w)| w[0] == w[1]).map(|(i, _)| (i, i + 1)).collect()
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Factorization<T> {
        Factorization {
            label: self.label,
            params: self.params.map(&f),
            factors: self.factors.iter().map(|q| q.map(&f)).collect(),
            cofactor: self.cofactor.map(&f),
        }
    }

    pub fn to_real<R: Real>(&self) -> Factorization<R> {
        self.map(crate::scalar::to_real)
    }
}

pub(crate) fn dq<S: Scalar>(h: [S; 8]) -> DualQuaternion<S> {
    DualQuaternion::from_coeffs(h)
}

fn int<S: Scalar>(n: i64) -> S {
    S::from_int(n)
}

/// `(k + cε)t³ + (1 - ε(ai + ck - b))t² + (k - ε(aj + bk))t + 1`, the
/// parameterization before the fixed frame is normalized; equal to
/// `(k + cε)·C`.
pub fn darboux_c0<S: Scalar>(p: &DarbouxParams<S>) -> Result<MotionPoly<S>> {
    p.validate()?;
    let (a, b, c) = (p.a.clone(), p.b.clone(), p.c.clone());
    let z = S::zero;
    Ok(MotionPoly::new(vec![
        DualQuaternion::one(),
        dq([z(), z(), z(), S::one(), z(), z(), -a.clone(), -b.clone()]),
        dq([S::one(), z(), z(), z(), b, -a, z(), -c.clone()]),
        dq([z(), z(), z(), S::one(), c, z(), z(), z()]),
    ]))
}

/// `t³ - (k - ε(aj - bk))t² + (1 - ε(b + ai - ck))t - k + cε`.
pub fn darboux_c<S: Scalar>(p: &DarbouxParams<S>) -> Result<MotionPoly<S>> {
    p.validate()?;
    let (a, b, c) = (p.a.clone(), p.b.clone(), p.c.clone());
    let z = S::zero;
    Ok(MotionPoly::new(vec![
        dq([z(), z(), z(), -S::one(), c.clone(), z(), z(), z()]),
        dq([S::one(), z(), z(), z(), -b.clone(), -a.clone(), z(), c]),
        dq([z(), z(), z(), -S::one(), z(), z(), a, -b]),
        DualQuaternion::one(),
    ]))
}

/// `k + cε`, the leading coefficient of `C₀`. Acting with it after `C(t)`
/// moves points back into the frame of the parametric equations.
pub fn darboux_frame_change<S: Scalar>(p: &DarbouxParams<S>) -> DualQuaternion<S> {
    let z = S::zero;
    dq([z(), z(), z(), S::one(), p.c.clone(), z(), z(), z()])
}

/// Point of the moving frame at `(x, y, z)` seen in the fixed frame at
/// motion angle `phi`.
pub fn darboux_point_path<R: Real>(p: &DarbouxParams<R>, point: &[R; 3], phi: R) -> [R; 3] {
    let (s, c) = (phi.sin(), phi.cos());
    let [x, y, z] = *point;
    [x * c - y * s, x * s + y * c + p.a * s, z + p.b * s + p.c * (R::one() - c)]
}

/// `C = Q₁Q₂Q₃` with `Q₂ = t - E` and `Q₁ = t + E + ε(...)`, `Q₃` the
/// rotation about an axis parallel to `k`.
pub fn factor_fi<S: Scalar>(p: &DarbouxParams<S>) -> Result<Factorization<S>> {
    p.validate()?;
    let (a, b, c) = (p.a.clone(), p.b.clone(), p.c.clone());
    let z = S::zero;
    let two_a = int::<S>(2) * a.clone();
    let n = a.square() + b.square() + c.square();
    let e = [
        int::<S>(2) * a.clone() * c.clone() / n.clone(),
        int::<S>(2) * a.clone() * b.clone() / n.clone(),
        (a.square() - b.square() - c.square()) / n,
    ];
    let bc_a = b.clone() * c.clone() / a.clone();
    let [e1, e2, e3] = e.clone();
    // Q₁ = t + E - (bc/a)iε + ((a²+c²-b²)/2a)jε - bkε
    let q1 = MotionPoly::new(vec![
        dq([
            z(),
            e1.clone(),
            e2.clone(),
            e3.clone(),
            z(),
            -bc_a.clone(),
            (a.square() + c.square() - b.square()) / two_a.clone(),
            -b.clone(),
        ]),
        DualQuaternion::one(),
    ]);
    let q2 = MotionPoly::linear(&DualQuaternion::from_primal(Quaternion::pure(e)));
    // Q₃ = t - k + (bc/a)iε + ((a²+b²-c²)/2a)jε
    let q3 = MotionPoly::new(vec![
        dq([z(), z(), z(), -S::one(), z(), bc_a, (a.square() + b.square() - c.square()) / two_a, z()]),
        DualQuaternion::one(),
    ]);
    Ok(Factorization {
        label: FactorizationLabel::FI,
        params: p.clone(),
        factors: vec![q1, q2, q3],
        cofactor: RealPoly::one(),
    })
}

/// `(t² + 1)C = Q₇Q₆²Q₅Q₄` with `Q₄ = t - k`, `Q₆ = t - i`.
pub fn factor_fii<S: Scalar>(p: &DarbouxParams<S>) -> Result<Factorization<S>> {
    p.validate()?;
    let (a, b, c) = (p.a.clone(), p.b.clone(), p.c.clone());
    let z = S::zero;
    let half = S::from_ratio(1, 2);
    let q7 = MotionPoly::new(vec![
        dq([z(), S::one(), z(), z(), z(), z(), (a.clone() + c.clone()) * half.clone(), -b.clone() * half.clone()]),
        DualQuaternion::one(),
    ]);
    let q6 = MotionPoly::linear(&DualQuaternion::i());
    let q5 = MotionPoly::new(vec![
        dq([z(), S::one(), z(), z(), z(), z(), (a - c) * half.clone(), -b * half]),
        DualQuaternion::one(),
    ]);
    let q4 = MotionPoly::linear(&DualQuaternion::k());
    Ok(Factorization {
        label: FactorizationLabel::FII,
        params: p.clone(),
        factors: vec![q7, q6.clone(), q6, q5, q4],
        cofactor: RealPoly::t2_plus_1(),
    })
}

/// `Q'₄ = t - k - xεi - yεj`, the doubled right factor of FIII.
pub fn fiii_q4<S: Scalar>(p: &DarbouxParams<S>) -> MotionPoly<S> {
    let z = S::zero;
    MotionPoly::linear(&dq([z(), z(), z(), S::one(), z(), p.x.clone(), p.y.clone(), z()]))
}

/// Closed forms of `Q'₅` and `Q'₆`.
pub fn fiii_q5_q6<S: Scalar>(p: &DarbouxParams<S>) -> Result<(MotionPoly<S>, MotionPoly<S>)> {
    p.validate()?;
    let (a, b, c, x, y) = (p.a.clone(), p.b.clone(), p.c.clone(), p.x.clone(), p.y.clone());
    let z = S::zero;
    let two = int::<S>(2);
    let four = int::<S>(4);
    let t = a.clone() + two.clone() * y.clone();
    let d1 = t.square() + four.clone() * x.square();
    let d2 = b.square() + c.square() + d1.clone();
    if d1.is_negligible() {
        return Err(Error::SingularChoice("T² + 4x² = 0 (y = -a/2 with x = 0)"));
    }
    if d2.is_negligible() {
        return Err(Error::SingularChoice("b² + c² + T² + 4x² = 0"));
    }
    let u5 = (b.square() * x.clone()
        - a.clone() * b.clone() * c.clone()
        - two.clone() * b.clone() * c.clone() * y.clone()
        - c.square() * x.clone())
        / d1.clone()
        + x.clone();
    let v5 = (a.clone() * b.square() - a.clone() * c.square()
        + two.clone() * b.square() * y.clone()
        + four.clone() * b.clone() * c.clone() * x.clone()
        - two.clone() * c.square() * y.clone())
        / (two.clone() * d1)
        + a.clone() / two.clone()
        + y.clone();
    // Q'₅ = t + k + u₅iε + v₅jε
    let q5 = MotionPoly::new(vec![dq([z(), z(), z(), S::one(), z(), u5, v5, z()]), DualQuaternion::one()]);
    // Q'₆ = t - n₁i + n₂j + n₃k
    let n1 = two.clone()
        * (a.clone() * c.clone() - two.clone() * b.clone() * x.clone() + two.clone() * c.clone() * y.clone())
        / d2.clone();
    let n2 = two.clone() * (a * b.clone() + two.clone() * b.clone() * y + two * c.clone() * x.clone()) / d2.clone();
    let n3 = (t.square() - b.square() - c.square() + four * x.square()) / d2;
    let q6 = MotionPoly::new(vec![dq([z(), -n1, n2, n3, z(), z(), z(), z()]), DualQuaternion::one()]);
    Ok((q5, q6))
}

/// `(t² + 1)C = Q'₇Q'₆Q'₅Q'₄²`. `Q'₇` is obtained by exact right division.
pub fn factor_fiii<S: Scalar>(p: &DarbouxParams<S>) -> Result<Factorization<S>> {
    p.validate()?;
    let q4 = fiii_q4(p);
    let (q5, q6) = fiii_q5_q6(p)?;
    let pc = &RealPoly::t2_plus_1().to_motion() * &darboux_c(p)?;
    let right = product(&[q6.clone(), q5.clone(), q4.clone(), q4.clone()]);
    let q7 = pc.div_exact(&right)?;
    if q7.linear_root().is_none() {
        return Err(Error::InexactDivision);
    }
    Ok(Factorization {
        label: FactorizationLabel::FIII,
        params: p.clone(),
        factors: vec![q7, q6, q5, q4.clone(), q4],
        cofactor: RealPoly::t2_plus_1(),
    })
}

/// FIII at `a = 1, b = 2, c = 0, x = 0, y = 0`: the chain `Q''₇Q''₆Q''₅Q''₄²`.
pub fn factor_fiv<S: Scalar>() -> Factorization<S> {
    let p = fiv_params();
    let mut f = factor_fiii(&p).expect("FIV parameters are regular");
    f.label = FactorizationLabel::FIV;
    f
}

pub fn fiv_params<S: Scalar>() -> DarbouxParams<S> {
    DarbouxParams::new(S::one(), int(2), S::zero())
}

/// The two chains of the FIV linkage: FI at `(1, 2, 0)` and the FIV chain.
pub fn fiv_chains<S: Scalar>() -> (Factorization<S>, Factorization<S>) {
    let fi = factor_fi(&fiv_params()).expect("FIV parameters are regular");
    (fi, factor_fiv())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{DisplacementKind, Rational};

    type P = DarbouxParams<Rational>;
    type Dq = DualQuaternion<Rational>;

    fn r(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    fn dqr(h: [(i64, i64); 8]) -> Dq {
        Dq::from_coeffs(h.map(|(n, d)| r(n, d)))
    }

    fn lin(h: [(i64, i64); 8]) -> MotionPoly<Rational> {
        MotionPoly::linear(&dqr(h))
    }

    #[test]
    fn c0_substitution() {
        let c0 = darboux_c0(&P::from_ratios((1, 1), (0, 1), (0, 1))).unwrap();
        // k t³ + (1 - εi)t² + (k - εj)t + 1
        assert_eq!(c0.coeff(3), Dq::k());
        assert_eq!(c0.coeff(2), dqr([(1, 1), (0, 1), (0, 1), (0, 1), (0, 1), (-1, 1), (0, 1), (0, 1)]));
        assert_eq!(c0.coeff(1), dqr([(0, 1), (0, 1), (0, 1), (1, 1), (0, 1), (0, 1), (-1, 1), (0, 1)]));
        assert_eq!(c0.coeff(0), Dq::one());
    }

    #[test]
    fn c0_is_frame_changed_c() {
        let p = P::from_ratios((3, 2), (-1, 1), (2, 5));
        let c0 = darboux_c0(&p).unwrap();
        assert_eq!(c0, darboux_c(&p).unwrap().left_mul(&darboux_frame_change(&p)));
        assert_eq!(c0.leading().unwrap(), &darboux_frame_change(&p));
        assert!(c0.is_motion_poly());
    }

    #[test]
    fn c_substitution() {
        let c = darboux_c(&P::from_ratios((1, 1), (2, 1), (0, 1))).unwrap();
        // t³ - (k - ε(j - 2k))t² + (1 - ε(2 + i))t - k
        assert_eq!(c.coeff(2), dqr([(0, 1), (0, 1), (0, 1), (-1, 1), (0, 1), (0, 1), (1, 1), (-2, 1)]));
        assert_eq!(c.coeff(1), dqr([(1, 1), (0, 1), (0, 1), (0, 1), (-2, 1), (-1, 1), (0, 1), (0, 1)]));
        assert_eq!(c.coeff(0), -Dq::k());
    }

    #[test]
    fn vertical_case_rejected() {
        let p = P::from_ratios((0, 1), (1, 1), (1, 1));
        assert_eq!(darboux_c(&p), Err(Error::DegenerateParams));
        assert_eq!(darboux_c0(&p), Err(Error::DegenerateParams));
        assert_eq!(factor_fi(&p).unwrap_err(), Error::DegenerateParams);
        assert_eq!(factor_fii(&p).unwrap_err(), Error::DegenerateParams);
        assert_eq!(factor_fiii(&p).unwrap_err(), Error::DegenerateParams);
    }

    #[test]
    fn primal_part_has_real_factor() {
        let c = darboux_c(&P::from_ratios((2, 3), (5, 1), (-1, 7))).unwrap();
        let expected = &RealPoly::t2_plus_1().to_motion() * &MotionPoly::linear(&Dq::k());
        assert_eq!(c.primal(), expected);
    }

    #[test]
    fn fi_matches_fiv_reference_values() {
        let f = factor_fi(&P::from_ratios((1, 1), (2, 1), (0, 1))).unwrap();
        let q1 = lin([(0, 1), (0, 1), (-4, 5), (3, 5), (0, 1), (0, 1), (3, 2), (2, 1)]);
        let q2 = lin([(0, 1), (0, 1), (4, 5), (-3, 5), (0, 1), (0, 1), (0, 1), (0, 1)]);
        let q3 = lin([(0, 1), (0, 1), (0, 1), (1, 1), (0, 1), (0, 1), (-5, 2), (0, 1)]);
        assert_eq!(f.factors, vec![q1, q2, q3]);
        assert!(f.verify());
    }

    #[test]
    fn fi_q3_root_is_a_zero_of_c() {
        let p = P::from_ratios((3, 2), (-1, 1), (2, 5));
        let f = factor_fi(&p).unwrap();
        let h = f.factors[2].linear_root().unwrap();
        assert!(darboux_c(&p).unwrap().eval_right(&h).is_zero());
        let v = -(p.b.clone() * p.c.clone()) / p.a.clone();
        let w = -(p.a.square() + p.b.square() - p.c.square()) / (r(2, 1) * p.a.clone());
        assert_eq!(h, &Dq::k() + &Dq::eps(Quaternion::new(r(0, 1), v, w, r(0, 1))));
    }

    #[test]
    fn fii_collapse_when_b_c_vanish() {
        let f = factor_fii(&P::from_ratios((1, 1), (0, 1), (0, 1))).unwrap();
        let expected = lin([(0, 1), (-1, 1), (0, 1), (0, 1), (0, 1), (0, 1), (-1, 2), (0, 1)]);
        assert_eq!(f.factors[0], expected);
        assert_eq!(f.factors[3], expected);
        assert_eq!(f.identical_adjacent(), vec![(1, 2)]);
        assert!(f.verify());
    }

    #[test]
    fn fii_quotient_times_p() {
        let p = P::from_ratios((5, 3), (1, 2), (-2, 1));
        let c = darboux_c(&p).unwrap();
        let (c1, rem) = c.div_rem(&MotionPoly::linear(&Dq::k())).unwrap();
        assert!(rem.is_zero());
        // C₁ = t² + ε(aj - bk)t + 1 + cεk
        let expected = MotionPoly::new(vec![
            Dq::from_coeffs([r(1, 1), r(0, 1), r(0, 1), r(0, 1), r(0, 1), r(0, 1), r(0, 1), p.c.clone()]),
            Dq::eps(Quaternion::new(r(0, 1), r(0, 1), p.a.clone(), -p.b.clone())),
            Dq::one(),
        ]);
        assert_eq!(c1, expected);
        let f = factor_fii(&p).unwrap();
        assert_eq!(product(&f.factors[..4]), &RealPoly::t2_plus_1().to_motion() * &c1);
    }

    #[test]
    fn fiii_singular_choice() {
        let p = P::from_ratios((2, 1), (1, 1), (1, 1)).with_offsets(r(0, 1), r(-1, 1));
        assert!(matches!(factor_fiii(&p), Err(Error::SingularChoice(_))));
    }

    #[test]
    fn fiv_special_case() {
        let f: Factorization<Rational> = factor_fiv();
        assert_eq!(f.label, FactorizationLabel::FIV);
        assert_eq!(f.factors[3], MotionPoly::linear(&Dq::k()));
        assert_eq!(f.identical_adjacent(), vec![(3, 4)]);
        assert!(f.verify());
    }

    #[test]
    fn every_root_is_a_rotation() {
        let p = P::from_ratios((3, 2), (-1, 1), (2, 5)).with_offsets(r(1, 3), r(1, 4));
        for f in [factor_fi(&p), factor_fii(&p), factor_fiii(&p)] {
            for h in f.unwrap().roots().unwrap() {
                assert_eq!(h.classify(), DisplacementKind::Rotation);
                assert!(h.primal.w == r(0, 1));
            }
        }
    }

    #[test]
    fn point_path_examples() {
        let p = DarbouxParams::new(1.5f64, -0.5, 0.75);
        assert_eq!(darboux_point_path(&p, &[0.3, 0.2, -1.0], 0.0), [0.3, 0.2, -1.0]);
        let q = darboux_point_path(&p, &[0.0, 0.0, 0.0], std::f64::consts::FRAC_PI_2);
        assert!(q[0].abs() < 1e-15);
        assert!((q[1] - 1.5).abs() < 1e-15);
        assert!((q[2] - 0.25).abs() < 1e-15);
    }

    #[test]
    fn label_parsing() {
        assert_eq!("fiii".parse::<FactorizationLabel>().unwrap(), FactorizationLabel::FIII);
        assert!("FV".parse::<FactorizationLabel>().is_err());
    }
}
