//! Polynomials over dual quaternions with a central indeterminate `t`.
//!
//! Only right division is provided. Left factors of `C` are right factors of
//! `conj(C)`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::dual_quaternion::DualQuaternion;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// `c_n tⁿ + ... + c_1 t + c_0`, stored low degree first.
#[derive(Clone, Debug, PartialEq)]
pub struct MotionPoly<S> {
    coeffs: Vec<DualQuaternion<S>>,
}

/// Polynomial with real coefficients, stored low degree first.
#[derive(Clone, Debug, PartialEq)]
pub struct RealPoly<S> {
    coeffs: Vec<S>,
}

impl<S: Scalar> RealPoly<S> {
    pub fn new(mut coeffs: Vec<S>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn one() -> Self {
        Self::new(vec![S::one()])
    }

    /// `t² + 1`.
    pub fn t2_plus_1() -> Self {
        Self::new(vec![S::one(), S::zero(), S::one()])
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn eval(&self, t: &S) -> S {
        self.coeffs.iter().rev().fold(S::zero(), |acc, c| acc * t.clone() + c.clone())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::new(vec![]);
        }
        let mut out = vec![S::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(), |acc, _| acc.mul(self))
    }

    /// Remainder of division by `divisor`.
    pub fn rem(&self, divisor: &Self) -> Result<Self> {
        let lead = divisor.coeffs.last().ok_or(Error::NonInvertibleLeader)?.clone();
        let dn = divisor.coeffs.len() - 1;
        let mut r = self.coeffs.clone();
        while r.len() > dn && !r.is_empty() {
            let k = r.len() - 1 - dn;
            let q = r[r.len() - 1].clone() / lead.clone();
            for (i, d) in divisor.coeffs.iter().enumerate() {
                r[k + i] = r[k + i].clone() - q.clone() * d.clone();
            }
            r.pop();
            while r.last().is_some_and(|c| c.is_negligible()) {
                r.pop();
            }
        }
        Ok(Self::new(r))
    }

    /// Central embedding into `DH[t]`.
    pub fn to_motion(&self) -> MotionPoly<S> {
        MotionPoly::new(self.coeffs.iter().map(|c| DualQuaternion::real(c.clone())).collect())
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> RealPoly<T> {
        RealPoly::new(self.coeffs.iter().map(f).collect())
    }
}

impl<S: Scalar> MotionPoly<S> {
    pub fn new(mut coeffs: Vec<DualQuaternion<S>>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Self::constant(DualQuaternion::one())
    }

    pub fn constant(c: DualQuaternion<S>) -> Self {
        Self::new(vec![c])
    }

    /// `t - h`.
    pub fn linear(root: &DualQuaternion<S>) -> Self {
        Self::new(vec![-root, DualQuaternion::one()])
    }

    /// Root `h` of a monic linear polynomial `t - h`.
    pub fn linear_root(&self) -> Option<DualQuaternion<S>> {
        (self.coeffs.len() == 2 && self.coeffs[1] == DualQuaternion::one()).then(|| -&self.coeffs[0])
    }

    pub fn coeffs(&self) -> &[DualQuaternion<S>] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> DualQuaternion<S> {
        self.coeffs.get(k).cloned().unwrap_or_else(DualQuaternion::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&DualQuaternion<S>> {
        self.coeffs.last()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.conj()).collect())
    }

    pub fn scale(&self, s: &S) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.scale(s)).collect())
    }

    /// Multiplies every coefficient by `q` from the left.
    pub fn left_mul(&self, q: &DualQuaternion<S>) -> Self {
        Self::new(self.coeffs.iter().map(|c| q * c).collect())
    }

    /// `C conj(C)`.
    pub fn norm(&self) -> Self {
        self * &self.conj()
    }

    /// The norm polynomial as a real polynomial, if all its coefficients are real.
    pub fn real_norm(&self) -> Option<RealPoly<S>> {
        let n = self.norm();
        n.coeffs
            .iter()
            .all(|c| c.is_real())
            .then(|| RealPoly::new(n.coeffs.iter().map(|c| c.primal.w.clone()).collect()))
    }

    /// Invertible leading coefficient and real norm polynomial.
    pub fn is_motion_poly(&self) -> bool {
        match self.leading() {
            Some(l) if !l.primal.is_zero() => self.real_norm().is_some(),
            _ => false,
        }
    }

    /// Primal part as a quaternion polynomial (dual parts dropped).
    pub fn primal(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| DualQuaternion::from_primal(c.primal.clone())).collect())
    }

    /// `(Q, R)` with `self = Q·divisor + R` and `deg R < deg divisor`.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let lead = divisor.leading().ok_or(Error::NonInvertibleLeader)?;
        let lead_inv = lead.inverse().ok_or(Error::NonInvertibleLeader)?;
        let dn = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![DualQuaternion::zero(); rem.len().saturating_sub(dn)];
        while rem.len() > dn {
            let k = rem.len() - 1 - dn;
            // q·lead = rem_lead, with t central so q tᵏ·D = tᵏ (q·D)
            let q = &rem[rem.len() - 1] * &lead_inv;
            for (i, d) in divisor.coeffs.iter().enumerate() {
                rem[k + i] = &rem[k + i] - &(&q * d);
            }
            quot[k] = q;
            rem.pop();
            while rem.last().is_some_and(|c| c.is_zero()) {
                rem.pop();
            }
        }
        Ok((Self::new(quot), Self::new(rem)))
    }

    /// Right division that must leave no remainder.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self> {
        let (q, r) = self.div_rem(divisor)?;
        if r.coeffs.iter().all(|c| c.is_zero()) {
            Ok(q)
        } else {
            Err(Error::InexactDivision)
        }
    }

    /// Right evaluation `Σ c_i hⁱ`, powers of `h` on the right.
    pub fn eval_right(&self, h: &DualQuaternion<S>) -> DualQuaternion<S> {
        let mut acc = DualQuaternion::zero();
        let mut power = DualQuaternion::one();
        for c in &self.coeffs {
            acc = &acc + &(c * &power);
            power = &power * h;
        }
        acc
    }

    /// Value at a real parameter `t`.
    pub fn eval(&self, t: &S) -> DualQuaternion<S> {
        self.coeffs.iter().rev().fold(DualQuaternion::zero(), |acc, c| &acc.scale(t) + c)
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> MotionPoly<T> {
        MotionPoly::new(self.coeffs.iter().map(|c| c.map(&f)).collect())
    }

    /// Largest coefficient difference, as `f64`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let n = self.coeffs.len().max(other.coeffs.len());
        (0..n)
            .flat_map(|k| {
                let a = self.coeff(k).coeffs();
                let b = other.coeff(k).coeffs();
                a.into_iter().zip(b).map(|(x, y)| (x - y).to_f64().abs()).collect::<Vec<_>>()
            })
            .fold(0.0, f64::max)
    }
}

/// Right factor `t - h` of `C` whose norm is the irreducible quadratic `m`.
///
/// `C` is reduced modulo `m`; the linear remainder `r₁t + r₀` has the unique
/// zero `h = -r₁⁻¹r₀` provided `r₁` is invertible.
pub fn right_factor_from_quadratic<S: Scalar>(c: &MotionPoly<S>, m: &RealPoly<S>) -> Result<DualQuaternion<S>> {
    let mc = m.coeffs();
    if mc.len() != 3 || mc[2] != S::one() {
        return Err(Error::Invalid("divisor must be a monic real quadratic".into()));
    }
    if c.degree().unwrap_or(0) < 1 {
        return Err(Error::Invalid("polynomial must have degree at least 1".into()));
    }
    let disc = mc[1].square() - S::from_int(4) * mc[0].clone();
    if disc >= S::zero() {
        return Err(Error::NotADivisor);
    }
    let norm = c.real_norm().ok_or(Error::NotADivisor)?;
    if !norm.rem(m)?.coeffs().iter().all(|x| x.is_negligible()) {
        return Err(Error::NotADivisor);
    }
    let (_, rem) = c.div_rem(&m.to_motion())?;
    let r1 = rem.coeff(1);
    let r0 = rem.coeff(0);
    if r1.primal.is_zero() {
        return Err(Error::NonGeneric);
    }
    let inv = r1.inverse().ok_or(Error::NonGeneric)?;
    Ok(-&(&inv * &r0))
}

/// Ordered product of `factors` equals `cofactor · target`.
pub fn verify_factorization<S: Scalar>(
    factors: &[MotionPoly<S>],
    target: &MotionPoly<S>,
    cofactor: &RealPoly<S>,
) -> bool {
    product(factors) == &cofactor.to_motion() * target
}

pub fn product<S: Scalar>(factors: &[MotionPoly<S>]) -> MotionPoly<S> {
    factors.iter().fold(MotionPoly::one(), |acc, f| &acc * f)
}

impl<S: Scalar> Add for &MotionPoly<S> {
    type Output = MotionPoly<S>;
    fn add(self, rhs: Self) -> MotionPoly<S> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        MotionPoly::new((0..n).map(|k| &self.coeff(k) + &rhs.coeff(k)).collect())
    }
}

impl<S: Scalar> Sub for &MotionPoly<S> {
    type Output = MotionPoly<S>;
    fn sub(self, rhs: Self) -> MotionPoly<S> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        MotionPoly::new((0..n).map(|k| &self.coeff(k) - &rhs.coeff(k)).collect())
    }
}

impl<S: Scalar> Mul for &MotionPoly<S> {
    type Output = MotionPoly<S>;
    fn mul(self, rhs: Self) -> MotionPoly<S> {
        if self.is_zero() || rhs.is_zero() {
            return MotionPoly::zero();
        }
        let mut out = vec![DualQuaternion::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        MotionPoly::new(out)
    }
}

impl<S: Scalar> Neg for &MotionPoly<S> {
    type Output = MotionPoly<S>;
    fn neg(self) -> MotionPoly<S> {
        MotionPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<S: Scalar> $tr for MotionPoly<S> {
            type Output = MotionPoly<S>;
            fn $m(self, rhs: Self) -> MotionPoly<S> {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<S: Scalar> fmt::Display for MotionPoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut terms = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let tpow = match k {
                0 => String::new(),
                1 => "t".into(),
                _ => format!("t^{k}"),
            };
            let body = if k > 0 && *c == DualQuaternion::one() {
                tpow
            } else if k == 0 {
                format!("({c})")
            } else {
                format!("({c}){tpow}")
            };
            terms.push(body);
        }
        f.write_str(&terms.join(" + "))
    }
}

impl<S: Scalar> fmt::Display for RealPoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_negligible())
            .map(|(k, c)| match (k, *c == S::one()) {
                (0, _) => format!("{c}"),
                (1, true) => "t".into(),
                (1, false) => format!("{c}t"),
                (_, true) => format!("t^{k}"),
                _ => format!("{c}t^{k}"),
            })
            .collect();
        if terms.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&terms.join(" + "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quaternion::Quaternion;
    use crate::Rational;

    type Dq = DualQuaternion<Rational>;
    type Mp = MotionPoly<Rational>;

    fn lin(h: Dq) -> Mp {
        Mp::linear(&h)
    }

    fn eps(q: Quaternion<Rational>) -> Dq {
        Dq::eps(q)
    }

    fn r(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    #[test]
    fn real_poly_display() {
        assert_eq!(RealPoly::<Rational>::t2_plus_1().to_string(), "t^2 + 1");
        assert_eq!(RealPoly::<Rational>::one().to_string(), "1");
    }

    #[test]
    fn product_of_two_linears() {
        let c = &lin(Dq::k()) * &lin(Dq::i());
        // t² - (k + i)t + k i, and k i = j
        let expected = Mp::new(vec![Dq::j(), -(&Dq::k() + &Dq::i()), Dq::one()]);
        assert_eq!(c, expected);
    }

    #[test]
    fn norm_of_linear_rotation() {
        let n = lin(Dq::k()).real_norm().unwrap();
        assert_eq!(n, RealPoly::t2_plus_1());
    }

    #[test]
    fn motion_poly_predicate() {
        let h = &Dq::k() + &eps(Quaternion::j().scale(&r(-5, 2)));
        assert!(lin(h).is_motion_poly());
        let bad = &Dq::i() + &eps(Quaternion::i());
        assert!(!lin(bad).is_motion_poly());
        let trans = eps(Quaternion::i());
        let c = lin(trans.clone());
        assert!(c.is_motion_poly());
        assert_eq!(c.real_norm().unwrap().coeffs(), &[r(0, 1), r(0, 1), r(1, 1)]);
        assert_eq!((&Dq::one() - &trans).classify(), crate::DisplacementKind::Translation);
        assert!(!Mp::zero().is_motion_poly());
    }

    #[test]
    fn division_exact_right_factor() {
        let c = &lin(Dq::k()) * &lin(Dq::i());
        let (q, rem) = c.div_rem(&lin(Dq::i())).unwrap();
        assert_eq!(q, lin(Dq::k()));
        assert!(rem.is_zero());
    }

    #[test]
    fn division_rejects_non_invertible_leader() {
        let d = Mp::new(vec![Dq::one(), Dq::epsilon()]);
        assert_eq!(lin(Dq::k()).div_rem(&d), Err(Error::NonInvertibleLeader));
        assert_eq!(lin(Dq::k()).div_rem(&Mp::zero()), Err(Error::NonInvertibleLeader));
    }

    #[test]
    fn right_evaluation_is_not_substitution() {
        let c = &lin(Dq::i()) * &lin(Dq::k());
        assert!(c.eval_right(&Dq::k()).is_zero());
        assert_eq!(c.eval_right(&Dq::i()), Dq::j().scale(&r(-2, 1)));
        let k = Mp::constant(Dq::j());
        assert_eq!(k.eval_right(&Dq::i()), Dq::j());
    }

    #[test]
    fn generic_right_factor() {
        let c = &lin(Dq::i()) * &lin(Dq::j());
        let h = right_factor_from_quadratic(&c, &RealPoly::t2_plus_1()).unwrap();
        assert_eq!(h, Dq::j());
        assert!(c.eval_right(&h).is_zero());
        let h = right_factor_from_quadratic(&lin(Dq::k()), &RealPoly::t2_plus_1()).unwrap();
        assert_eq!(h, Dq::k());
    }

    #[test]
    fn right_factor_rejects_bad_quadratics() {
        let c = &lin(Dq::i()) * &lin(Dq::j());
        // t² - 1 has real roots
        let reducible = RealPoly::new(vec![r(-1, 1), r(0, 1), r(1, 1)]);
        assert_eq!(right_factor_from_quadratic(&c, &reducible), Err(Error::NotADivisor));
        // t² + 4 does not divide (t²+1)²
        let other = RealPoly::new(vec![r(4, 1), r(0, 1), r(1, 1)]);
        assert_eq!(right_factor_from_quadratic(&c, &other), Err(Error::NotADivisor));
    }

    #[test]
    fn swapped_factors_fail_verification() {
        let a = lin(Dq::i());
        let b = lin(Dq::j());
        let target = &a * &b;
        assert!(verify_factorization(&[a.clone(), b.clone()], &target, &RealPoly::one()));
        assert!(!verify_factorization(&[b, a], &target, &RealPoly::one()));
    }

    #[test]
    fn real_poly_remainder() {
        let p = RealPoly::<Rational>::t2_plus_1();
        assert!(p.pow(3).rem(&p).unwrap().is_zero());
        let t = RealPoly::new(vec![r(0, 1), r(1, 1)]);
        assert_eq!(t.rem(&p).unwrap(), t);
    }
}
