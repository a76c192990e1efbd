use finric_core::ratfield::{Expr, Poly2, RationalFunction, Var, DEFAULT_POLE_TOL};
use finric_core::ExactRational;
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use proptest::prelude::*;

fn q(v: i64) -> ExactRational {
    ExactRational::from_integer(BigInt::from(v))
}

fn poly() -> impl Strategy<Value = Poly2> {
    prop::collection::vec(((0u32..3, 0u32..3), -5i64..=5), 0..6)
        .prop_map(|terms| Poly2::from_terms(terms.into_iter().map(|(e, c)| (e, q(c)))))
}

/// Denominators `1 + B + p^2`-like: never zero for the evaluation points used below.
fn safe_den() -> impl Strategy<Value = Poly2> {
    poly().prop_map(|p| &(&p * &p) + &Poly2::from_terms([((0, 0), q(1)), ((0, 1), q(1))]))
}

fn rational() -> impl Strategy<Value = RationalFunction> {
    (poly(), safe_den()).prop_map(|(n, d)| RationalFunction::new(n, d).unwrap())
}

proptest! {
    #[test]
    fn polynomial_distributivity(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn polynomial_commutativity(a in poly(), b in poly()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a + &b, &b + &a);
    }

    #[test]
    fn equality_is_an_equivalence(a in rational(), k in poly()) {
        prop_assume!(!k.is_zero());
        prop_assert!(a.equals(&a));
        // same function with a scaled representation
        let kk = RationalFunction::new(k.clone(), k.clone()).unwrap();
        let b = &a * &kk;
        let c = &b * &kk;
        prop_assert!(a.equals(&b) && b.equals(&a));
        prop_assert!(b.equals(&c) && a.equals(&c));
    }

    #[test]
    fn float_eval_tracks_exact(r in rational(), sn in -8i64..=8, bn in 0i64..=8) {
        // dyadic points are exactly representable
        let (s, b) = (sn as f64 / 8.0, bn as f64 / 8.0);
        let exact = r.eval_exact(&ExactRational::new(BigInt::from(sn), BigInt::from(8)),
                                 &ExactRational::new(BigInt::from(bn), BigInt::from(8))).unwrap();
        let exact = exact.to_f64().unwrap();
        let approx = r.eval(s, b, DEFAULT_POLE_TOL).unwrap();
        prop_assert!((approx - exact).abs() <= 1e-12 * exact.abs().max(1.0), "{} vs {}", approx, exact);
    }

    #[test]
    fn quotient_round_trip(a in rational(), b in rational()) {
        prop_assume!(!b.is_zero());
        let back = &a.checked_div(&b).unwrap() * &b;
        prop_assert!(back.equals(&a));
    }
}

proptest! {
    // differentiating products of dense quotients is the slow path
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn leibniz_rule(a in rational(), b in rational()) {
        for v in [Var::S, Var::B] {
            let lhs = (&a * &b).diff(v);
            let rhs = &(&a.diff(v) * &b) + &(&a * &b.diff(v));
            prop_assert!(lhs.equals(&rhs));
        }
    }
}

#[test]
fn spec_examples() {
    let rf = |s: &str| Expr::parse(s).unwrap().eval_closed().unwrap();
    assert_eq!(rf("(1+s)*(1-s)"), rf("1-s^2"));
    assert_eq!(rf("(1+2*s+s^2)*(1+2*B-3*s^2)"), rf("1+2*s-2*s^2+2*B+4*s*B+2*s^2*B-6*s^3-3*s^4"));
    assert_eq!(rf("1/(1-s)").diff(Var::S), rf("1/(1-s)^2"));
    assert_eq!(rf("(3+2*s)/(1-s^2)").diff(Var::S), rf("(2+6*s+2*s^2)/(1-s^2)^2"));
    assert_eq!(rf("(s^2-1)/(s-1)"), rf("s+1"));
    assert_ne!(rf("1/(1-s)"), rf("1/(1+s)"));
    let z14 = rf("2/(1-3*s^2+2*B)");
    assert_eq!(z14.eval(0.0, 0.0, DEFAULT_POLE_TOL).unwrap(), 2.0);
    assert!((z14.eval(0.1, 0.25, DEFAULT_POLE_TOL).unwrap() - 2.0 / 1.47).abs() < 1e-15);
    assert!(rf("1/(1-s)").eval(1.0, 0.0, DEFAULT_POLE_TOL).is_err());
}
