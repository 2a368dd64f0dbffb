//! Dual quaternion motion polynomials, factorizations of the general
//! (non-vertical) Darboux motion, and analysis of the closed 7R linkages they
//! produce.
//!
//! Every algebraic operation is generic over [`Scalar`]. Exact verification
//! uses [`Rational`]; simulation, fitting and mobility use a [`Real`] backend
//! (`f64` or `f32`).

pub mod darboux;
pub mod dual_quaternion;
pub mod error;
pub mod json;
pub mod line;
pub mod linkage;
pub mod poly;
pub mod quaternion;
pub mod scalar;

pub use darboux::{
    circular_translation_check, darboux_c, darboux_c0, darboux_frame_change, darboux_point_path, derive_fi,
    derive_fiii, factor_fi, factor_fii, factor_fiii, factor_fiv, fiv_chains, DarbouxParams, Factorization,
    FactorizationLabel,
};
pub use dual_quaternion::{DisplacementKind, DualNumber, DualQuaternion};
pub use error::{Error, Result};
pub use line::{transform_axis, AxisLine};
pub use linkage::{
    joint_angle, trace_point, ConfigSample, ConicClass, Linkage, MobilityReport, SubstructureReport, TrajectoryReport,
};
pub use poly::{right_factor_from_quadratic, verify_factorization, MotionPoly, RealPoly};
pub use quaternion::Quaternion;
pub use scalar::{Rational, Real, Scalar};

pub type QuaternionQ = Quaternion<Rational>;
pub type QuaternionF = Quaternion<f64>;
pub type DualQuaternionQ = DualQuaternion<Rational>;
pub type DualQuaternionF = DualQuaternion<f64>;
pub type AxisLineQ = AxisLine<Rational>;
pub type AxisLineF = AxisLine<f64>;
pub type MotionPolyQ = MotionPoly<Rational>;
pub type MotionPolyF = MotionPoly<f64>;
pub type RealPolyQ = RealPoly<Rational>;
pub type RealPolyF = RealPoly<f64>;
pub type DarbouxParamsQ = DarbouxParams<Rational>;
pub type FactorizationQ = Factorization<Rational>;
pub type FactorizationF = Factorization<f64>;
pub type LinkageQ = Linkage<Rational>;
pub type LinkageF = Linkage<f64>;
