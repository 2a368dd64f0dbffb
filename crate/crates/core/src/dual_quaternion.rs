//! Dual quaternions `h = p + εd` and their action on points.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::line::AxisLine;
use crate::quaternion::{format_terms, Quaternion};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct DualQuaternion<S> {
    pub primal: Quaternion<S>,
    pub dual: Quaternion<S>,
}

/// A dual number `re + ε du`, the value of a dual quaternion norm.
#[derive(Clone, Debug, PartialEq)]
pub struct DualNumber<S> {
    pub re: S,
    pub du: S,
}

impl<S: Scalar> DualNumber<S> {
    pub fn mul(&self, other: &Self) -> Self {
        DualNumber {
            re: self.re.clone() * other.re.clone(),
            du: self.re.clone() * other.du.clone() + self.du.clone() * other.re.clone(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DisplacementKind {
    Rotation,
    Translation,
    Identity,
    General,
    NonDisplacement,
}

impl<S: Scalar> DualQuaternion<S> {
    pub fn new(primal: Quaternion<S>, dual: Quaternion<S>) -> Self {
        Self { primal, dual }
    }

    /// From `[h0, ..., h7]`: primal `(1, i, j, k)` followed by dual `(1, i, j, k)`.
    pub fn from_coeffs(h: [S; 8]) -> Self {
        let [h0, h1, h2, h3, h4, h5, h6, h7] = h;
        Self::new(Quaternion::new(h0, h1, h2, h3), Quaternion::new(h4, h5, h6, h7))
    }

    pub fn coeffs(&self) -> [S; 8] {
        let [h0, h1, h2, h3] = self.primal.coeffs();
        let [h4, h5, h6, h7] = self.dual.coeffs();
        [h0, h1, h2, h3, h4, h5, h6, h7]
    }

    pub fn zero() -> Self {
        Self::new(Quaternion::zero(), Quaternion::zero())
    }

    pub fn one() -> Self {
        Self::real(S::one())
    }

    pub fn real(s: S) -> Self {
        Self::new(Quaternion::real(s), Quaternion::zero())
    }

    pub fn from_primal(p: Quaternion<S>) -> Self {
        Self::new(p, Quaternion::zero())
    }

    /// The dual unit `ε`.
    pub fn epsilon() -> Self {
        Self::new(Quaternion::zero(), Quaternion::one())
    }

    pub fn i() -> Self {
        Self::from_primal(Quaternion::i())
    }

    pub fn j() -> Self {
        Self::from_primal(Quaternion::j())
    }

    pub fn k() -> Self {
        Self::from_primal(Quaternion::k())
    }

    /// `ε·q`.
    pub fn eps(q: Quaternion<S>) -> Self {
        Self::new(Quaternion::zero(), q)
    }

    pub fn is_zero(&self) -> bool {
        self.primal.is_zero() && self.dual.is_zero()
    }

    /// Both primal and dual parts are real numbers.
    pub fn is_real(&self) -> bool {
        self.primal.is_real() && self.dual.is_real() && self.dual.w.is_negligible()
    }

    /// Dual number `a + εb` embedded as a dual quaternion.
    pub fn is_dual_number(&self) -> bool {
        self.primal.is_real() && self.dual.is_real()
    }

    pub fn scale(&self, s: &S) -> Self {
        Self::new(self.primal.scale(s), self.dual.scale(s))
    }

    /// Negates the `i, j, k` coefficients of primal and dual part.
    pub fn conj(&self) -> Self {
        Self::new(self.primal.conj(), self.dual.conj())
    }

    /// `h conj(h) = p conj(p) + ε(p conj(d) + d conj(p))`.
    pub fn norm(&self) -> DualNumber<S> {
        let pp = &self.primal * &self.primal.conj();
        let cross = &(&self.primal * &self.dual.conj()) + &(&self.dual * &self.primal.conj());
        debug_assert!(!S::EXACT || (pp.is_real() && cross.is_real()));
        DualNumber { re: pp.w, du: cross.w }
    }

    pub fn has_real_norm(&self) -> bool {
        self.dual_norm_negligible(&self.norm())
    }

    /// `|du| ≤ |p|² + |d|²` always, so comparing against that keeps the float
    /// test independent of the overall scale.
    fn dual_norm_negligible(&self, n: &DualNumber<S>) -> bool {
        if n.du.is_negligible() {
            return true;
        }
        let scale = n.re.clone() + self.dual.norm_squared();
        !scale.is_negligible() && (n.du.clone() / scale).is_negligible()
    }

    /// Inverse `p⁻¹ - ε p⁻¹ d p⁻¹`; requires an invertible primal part.
    pub fn inverse(&self) -> Option<Self> {
        let pinv = self.primal.inverse()?;
        let dual = -&(&(&pinv * &self.dual) * &pinv);
        Some(Self::new(pinv, dual))
    }

    /// Applies the displacement to a point of projective three-space
    /// `[x0, x1, x2, x3]`. With `x0 = 1` this is
    /// `y = (p x conj(p) + p conj(d) - d conj(p)) / (p conj(p))`; the
    /// translation term is weighted by `x0` so the map stays homogeneous.
    pub fn act(&self, point: &[S; 4]) -> Result<[S; 4]> {
        let n = self.norm();
        if n.re.is_negligible() {
            return Err(Error::ZeroPrimal);
        }
        if !self.dual_norm_negligible(&n) {
            return Err(Error::NotADisplacement);
        }
        let p = &self.primal;
        let d = &self.dual;
        let x = Quaternion::from_coeffs(point.clone());
        let rotated = &(p * &x) * &p.conj();
        let shift = (&(p * &d.conj()) - &(d * &p.conj())).scale(&point[0]);
        let y = (&rotated + &shift).scale(&(S::one() / n.re));
        Ok(y.coeffs())
    }

    /// Action on an affine point.
    pub fn act_point(&self, point: &[S; 3]) -> Result<[S; 3]> {
        let [x, y, z] = point.clone();
        let [y0, y1, y2, y3] = self.act(&[S::one(), x, y, z])?;
        Ok([y1 / y0.clone(), y2 / y0.clone(), y3 / y0])
    }

    pub fn classify(&self) -> DisplacementKind {
        let n = self.norm();
        if n.re.is_negligible() || !self.dual_norm_negligible(&n) {
            return DisplacementKind::NonDisplacement;
        }
        let rot_free = self.primal.is_real();
        if !self.dual.w.is_negligible() {
            return DisplacementKind::General;
        }
        match (rot_free, self.dual.is_real()) {
            (false, _) => DisplacementKind::Rotation,
            (true, false) => DisplacementKind::Translation,
            (true, true) => DisplacementKind::Identity,
        }
    }

    /// Revolute axis `[h1, h2, h3, -h5, -h6, -h7]` of a rotation quaternion.
    pub fn axis(&self) -> Result<AxisLine<S>> {
        if self.classify() != DisplacementKind::Rotation {
            return Err(Error::NotARotation);
        }
        let [_, h1, h2, h3, _, h5, h6, h7] = self.coeffs();
        Ok(AxisLine::new_unchecked([h1, h2, h3], [-h5, -h6, -h7]))
    }

    /// `λ` with `other = λ·self`, if the two are proportional.
    pub fn proportionality(&self, other: &Self) -> Option<S> {
        let a = self.coeffs();
        let b = other.coeffs();
        let pivot = a.iter().position(|c| !c.is_negligible())?;
        let lambda = b[pivot].clone() / a[pivot].clone();
        a.iter().zip(&b).all(|(x, y)| (y.clone() - lambda.clone() * x.clone()).is_negligible()).then_some(lambda)
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> DualQuaternion<T> {
        DualQuaternion::new(self.primal.map(&f), self.dual.map(&f))
    }
}

impl<S: Scalar> Add for &DualQuaternion<S> {
    type Output = DualQuaternion<S>;
    fn add(self, rhs: Self) -> DualQuaternion<S> {
        DualQuaternion::new(&self.primal + &rhs.primal, &self.dual + &rhs.dual)
    }
}

impl<S: Scalar> Sub for &DualQuaternion<S> {
    type Output = DualQuaternion<S>;
    fn sub(self, rhs: Self) -> DualQuaternion<S> {
        DualQuaternion::new(&self.primal - &rhs.primal, &self.dual - &rhs.dual)
    }
}

impl<S: Scalar> Mul for &DualQuaternion<S> {
    type Output = DualQuaternion<S>;
    fn mul(self, rhs: Self) -> DualQuaternion<S> {
        DualQuaternion::new(&self.primal * &rhs.primal, &(&self.primal * &rhs.dual) + &(&self.dual * &rhs.primal))
    }
}

impl<S: Scalar> Neg for &DualQuaternion<S> {
    type Output = DualQuaternion<S>;
    fn neg(self) -> DualQuaternion<S> {
        DualQuaternion::new(-&self.primal, -&self.dual)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<S: Scalar> $tr for DualQuaternion<S> {
            type Output = DualQuaternion<S>;
            fn $m(self, rhs: Self) -> DualQuaternion<S> {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<S: Scalar> Neg for DualQuaternion<S> {
    type Output = DualQuaternion<S>;
    fn neg(self) -> DualQuaternion<S> {
        -&self
    }
}

impl<S: Scalar> fmt::Display for DualQuaternion<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = format_terms(&self.coeffs(), &["", "i", "j", "k", "ε", "εi", "εj", "εk"]);
        f.write_str(&s)
    }
}
