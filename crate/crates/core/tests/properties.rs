use darboux7r::linkage::{build_linkage, parallel_partition};
use darboux7r::{
    factor_fi, factor_fiii, joint_angle, transform_axis, DarbouxParams, DualQuaternion, MotionPoly, Quaternion,
    Rational, Scalar,
};
use proptest::prelude::*;

type Q = Rational;
type Dq = DualQuaternion<Q>;

fn rational() -> impl Strategy<Value = Q> {
    (-30i64..=30, 1i64..=12).prop_map(|(n, d)| Q::from_ratio(n, d))
}

fn quaternion() -> impl Strategy<Value = Quaternion<Q>> {
    prop::array::uniform4(rational()).prop_map(Quaternion::from_coeffs)
}

fn dual_quaternion() -> impl Strategy<Value = Dq> {
    prop::array::uniform8(rational()).prop_map(Dq::from_coeffs)
}

/// `p + ε·½·s·p` with `p ≠ 0` and `s` a pure translation vector.
fn displacement() -> impl Strategy<Value = Dq> {
    (quaternion(), prop::array::uniform3(rational())).prop_filter("invertible primal", |(p, _)| !p.is_zero()).prop_map(
        |(p, s)| {
            let d = (&Quaternion::pure(s) * &p).scale(&Q::from_ratio(1, 2));
            Dq::new(p, d)
        },
    )
}

fn point() -> impl Strategy<Value = [Q; 3]> {
    prop::array::uniform3(rational())
}

fn motion_poly(max_degree: usize) -> impl Strategy<Value = MotionPoly<Q>> {
    prop::collection::vec(dual_quaternion(), 1..=max_degree + 1).prop_map(MotionPoly::new)
}

/// Monic polynomial, so right division is defined.
fn monic(degree: usize) -> impl Strategy<Value = MotionPoly<Q>> {
    prop::collection::vec(dual_quaternion(), degree).prop_map(|mut cs| {
        cs.push(Dq::one());
        MotionPoly::new(cs)
    })
}

fn darboux_params() -> impl Strategy<Value = DarbouxParams<Q>> {
    (rational(), rational(), rational(), rational(), rational())
        .prop_filter("a ≠ 0", |(a, ..)| !a.is_negligible())
        .prop_map(|(a, b, c, x, y)| DarbouxParams::new(a, b, c).with_offsets(x, y))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn multiplication_is_associative(a in dual_quaternion(), b in dual_quaternion(), c in dual_quaternion()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn conjugation_reverses_products(a in dual_quaternion(), b in dual_quaternion()) {
        prop_assert_eq!((&a * &b).conj(), &b.conj() * &a.conj());
    }

    #[test]
    fn norm_is_multiplicative(a in dual_quaternion(), b in dual_quaternion()) {
        prop_assert_eq!((&a * &b).norm(), a.norm().mul(&b.norm()));
    }

    #[test]
    fn action_is_a_group_action(g in displacement(), h in displacement(), x in point()) {
        let composed = (&g * &h).act_point(&x).unwrap();
        let stepwise = g.act_point(&h.act_point(&x).unwrap()).unwrap();
        prop_assert_eq!(composed, stepwise);
    }

    #[test]
    fn action_is_projective(g in displacement(), x in point(), s in rational()) {
        prop_assume!(!s.is_negligible());
        prop_assert_eq!(g.scale(&s).act_point(&x).unwrap(), g.act_point(&x).unwrap());
    }

    #[test]
    fn inverse_undoes_action(g in displacement(), x in point()) {
        let inv = g.inverse().unwrap();
        prop_assert_eq!(inv.act_point(&g.act_point(&x).unwrap()).unwrap(), x);
    }

    #[test]
    fn division_identity(c in motion_poly(4), d in monic(2)) {
        let (q, r) = c.div_rem(&d).unwrap();
        prop_assert_eq!(&(&q * &d) + &r, c);
        prop_assert!(r.degree().is_none_or(|k| k < 2));
    }

    #[test]
    fn right_zero_gives_right_factor(a in motion_poly(3), h in dual_quaternion()) {
        // C = A·(t - h) has the right zero h
        let c = &a * &MotionPoly::linear(&h);
        prop_assert!(c.eval_right(&h).is_zero());
        let (_, r) = c.div_rem(&MotionPoly::linear(&h)).unwrap();
        prop_assert!(r.is_zero());
    }

    #[test]
    fn remainder_is_right_value(c in motion_poly(4), h in dual_quaternion()) {
        // the remainder modulo t - h is the constant C(h); zero exactly when h is a right zero
        let (_, r) = c.div_rem(&MotionPoly::linear(&h)).unwrap();
        prop_assert_eq!(r.coeff(0), c.eval_right(&h));
        prop_assert_eq!(r.is_zero(), c.eval_right(&h).is_zero());
    }

    #[test]
    fn polynomial_norm_is_multiplicative(a in motion_poly(2), b in motion_poly(2)) {
        prop_assert_eq!((&a * &b).norm(), &a.norm() * &b.norm());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn parallel_groups_ignore_frame(p in darboux_params(), g in displacement()) {
        let fiii = match factor_fiii(&p) {
            Ok(f) => f,
            Err(_) => return Ok(()),
        };
        let l = build_linkage(&factor_fi(&p).unwrap(), &fiii).unwrap();
        let axes = l.home_axes();
        let moved: Vec<_> = axes.iter().map(|a| transform_axis(&g, a).unwrap()).collect();
        prop_assert_eq!(parallel_partition(&moved), parallel_partition(&axes));
    }

    #[test]
    fn joint_angles_decrease(p in darboux_params()) {
        for q in factor_fi(&p).unwrap().to_real::<f64>().factors {
            let angles: Vec<f64> = (-40..=40).map(|k| joint_angle(&q, k as f64 / 4.0).unwrap()).collect();
            prop_assert!(angles.windows(2).all(|w| w[1] < w[0]));
        }
    }
}
