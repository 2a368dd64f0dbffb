use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::scalar::Scalar;

/// Quaternion `w + x i + y j + z k`.
#[derive(Clone, Debug, PartialEq)]
pub struct Quaternion<S> {
    pub w: S,
    pub x: S,
    pub y: S,
    pub z: S,
}

impl<S: Scalar> Quaternion<S> {
    pub fn new(w: S, x: S, y: S, z: S) -> Self {
        Self { w, x, y, z }
    }

    pub fn zero() -> Self {
        Self::new(S::zero(), S::zero(), S::zero(), S::zero())
    }

    pub fn one() -> Self {
        Self::real(S::one())
    }

    pub fn real(w: S) -> Self {
        Self::new(w, S::zero(), S::zero(), S::zero())
    }

    /// Pure quaternion from a 3-vector.
    pub fn pure(v: [S; 3]) -> Self {
        let [x, y, z] = v;
        Self::new(S::zero(), x, y, z)
    }

    pub fn i() -> Self {
        Self::new(S::zero(), S::one(), S::zero(), S::zero())
    }

    pub fn j() -> Self {
        Self::new(S::zero(), S::zero(), S::one(), S::zero())
    }

    pub fn k() -> Self {
        Self::new(S::zero(), S::zero(), S::zero(), S::one())
    }

    pub fn coeffs(&self) -> [S; 4] {
        [self.w.clone(), self.x.clone(), self.y.clone(), self.z.clone()]
    }

    pub fn from_coeffs(c: [S; 4]) -> Self {
        let [w, x, y, z] = c;
        Self::new(w, x, y, z)
    }

    /// Vector part `(x, y, z)`.
    pub fn vector(&self) -> [S; 3] {
        [self.x.clone(), self.y.clone(), self.z.clone()]
    }

    pub fn conj(&self) -> Self {
        Self::new(self.w.clone(), -self.x.clone(), -self.y.clone(), -self.z.clone())
    }

    /// `q conj(q) = w² + x² + y² + z²`.
    pub fn norm_squared(&self) -> S {
        self.w.square() + self.x.square() + self.y.square() + self.z.square()
    }

    pub fn scale(&self, s: &S) -> Self {
        Self::new(
            self.w.clone() * s.clone(),
            self.x.clone() * s.clone(),
            self.y.clone() * s.clone(),
            self.z.clone() * s.clone(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.w.is_negligible() && self.is_real()
    }

    /// Zero vector part.
    pub fn is_real(&self) -> bool {
        self.x.is_negligible() && self.y.is_negligible() && self.z.is_negligible()
    }

    /// Zero scalar part.
    pub fn is_pure(&self) -> bool {
        self.w.is_negligible()
    }

    /// Multiplicative inverse, `None` for the zero quaternion.
    pub fn inverse(&self) -> Option<Self> {
        let n = self.norm_squared();
        if n.is_negligible() {
            return None;
        }
        let inv = S::one() / n;
        Some(self.conj().scale(&inv))
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Quaternion<T> {
        Quaternion::new(f(&self.w), f(&self.x), f(&self.y), f(&self.z))
    }
}

impl<S: Scalar> Add for &Quaternion<S> {
    type Output = Quaternion<S>;
    fn add(self, rhs: Self) -> Quaternion<S> {
        Quaternion::new(
            self.w.clone() + rhs.w.clone(),
            self.x.clone() + rhs.x.clone(),
            self.y.clone() + rhs.y.clone(),
            self.z.clone() + rhs.z.clone(),
        )
    }
}

impl<S: Scalar> Sub for &Quaternion<S> {
    type Output = Quaternion<S>;
    fn sub(self, rhs: Self) -> Quaternion<S> {
        Quaternion::new(
            self.w.clone() - rhs.w.clone(),
            self.x.clone() - rhs.x.clone(),
            self.y.clone() - rhs.y.clone(),
            self.z.clone() - rhs.z.clone(),
        )
    }
}

impl<S: Scalar> Mul for &Quaternion<S> {
    type Output = Quaternion<S>;
    fn mul(self, rhs: Self) -> Quaternion<S> {
        let (a0, a1, a2, a3) = (&self.w, &self.x, &self.y, &self.z);
        let (b0, b1, b2, b3) = (&rhs.w, &rhs.x, &rhs.y, &rhs.z);
        let p = |u: &S, v: &S| u.clone() * v.clone();
        Quaternion::new(
            p(a0, b0) - p(a1, b1) - p(a2, b2) - p(a3, b3),
            p(a0, b1) + p(a1, b0) + p(a2, b3) - p(a3, b2),
            p(a0, b2) - p(a1, b3) + p(a2, b0) + p(a3, b1),
            p(a0, b3) + p(a1, b2) - p(a2, b1) + p(a3, b0),
        )
    }
}

impl<S: Scalar> Neg for &Quaternion<S> {
    type Output = Quaternion<S>;
    fn neg(self) -> Quaternion<S> {
        Quaternion::new(-self.w.clone(), -self.x.clone(), -self.y.clone(), -self.z.clone())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<S: Scalar> $tr for Quaternion<S> {
            type Output = Quaternion<S>;
            fn $m(self, rhs: Self) -> Quaternion<S> {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<S: Scalar> Neg for Quaternion<S> {
    type Output = Quaternion<S>;
    fn neg(self) -> Quaternion<S> {
        -&self
    }
}

impl<S: Scalar> fmt::Display for Quaternion<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_terms(&self.coeffs(), &["", "i", "j", "k"]))
    }
}

/// Formats `c0 + c1 u1 + ...` skipping zero terms.
pub(crate) fn format_terms<S: Scalar>(coeffs: &[S], units: &[&str]) -> String {
    let mut out = String::new();
    for (c, u) in coeffs.iter().zip(units) {
        if c.is_zero() {
            continue;
        }
        let body = if u.is_empty() {
            c.to_string()
        } else if *c == S::one() {
            u.to_string()
        } else if *c == -S::one() {
            format!("-{u}")
        } else {
            format!("{c}{u}")
        };
        if out.is_empty() {
            out = body;
        } else if let Some(rest) = body.strip_prefix('-') {
            out = format!("{out} - {rest}");
        } else {
            out = format!("{out} + {body}");
        }
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

/// 3-vector helpers shared by the geometry code.
pub(crate) mod vec3 {
    use crate::scalar::Scalar;

    pub fn dot<S: Scalar>(a: &[S; 3], b: &[S; 3]) -> S {
        a[0].clone() * b[0].clone() + a[1].clone() * b[1].clone() + a[2].clone() * b[2].clone()
    }

    pub fn cross<S: Scalar>(a: &[S; 3], b: &[S; 3]) -> [S; 3] {
        [
            a[1].clone() * b[2].clone() - a[2].clone() * b[1].clone(),
            a[2].clone() * b[0].clone() - a[0].clone() * b[2].clone(),
            a[0].clone() * b[1].clone() - a[1].clone() * b[0].clone(),
        ]
    }

    pub fn sub<S: Scalar>(a: &[S; 3], b: &[S; 3]) -> [S; 3] {
        [a[0].clone() - b[0].clone(), a[1].clone() - b[1].clone(), a[2].clone() - b[2].clone()]
    }

    pub fn add<S: Scalar>(a: &[S; 3], b: &[S; 3]) -> [S; 3] {
        [a[0].clone() + b[0].clone(), a[1].clone() + b[1].clone(), a[2].clone() + b[2].clone()]
    }

    pub fn scale<S: Scalar>(a: &[S; 3], s: &S) -> [S; 3] {
        [a[0].clone() * s.clone(), a[1].clone() * s.clone(), a[2].clone() * s.clone()]
    }

    pub fn is_zero<S: Scalar>(a: &[S; 3]) -> bool {
        a.iter().all(|c| c.is_negligible())
    }
}
