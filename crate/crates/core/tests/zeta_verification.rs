use finric_core::ratfield::Expr;
use finric_core::zeta::parse_table;
use finric_core::{
    compare_zeta, ExactRational, generic_zeta, qtp, table_zeta, PhiFamily, PhiKind, RationalFunction, ZetaSet, ZetaSource, ZETA_COUNT,
};
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rf(src: &str) -> RationalFunction {
    Expr::parse(src).unwrap().eval_closed().unwrap()
}

fn generic(kind: PhiKind) -> ZetaSet {
    generic_zeta(&qtp(&PhiFamily::named(kind)).unwrap()).unwrap()
}

#[test]
fn hand_derived_zeta19() {
    assert_eq!(*generic(PhiKind::Square).get(19), rf("-4*(1-3*s)/(1-s)^3"));
    assert_eq!(*generic(PhiKind::RandersSquare).get(19), rf("2*(-7+27*s^2+24*s^3+6*s^4)/(1-s^2)^3"));
}

#[test]
fn table_transcription_anchors() {
    let sq = table_zeta(PhiKind::Square).unwrap();
    assert_eq!(*sq.get(14), rf("2/(1-3*s^2+2*B)"));
    assert_eq!(*sq.get(24), rf("4/(1-s)"));
    let rs = table_zeta(PhiKind::RandersSquare).unwrap();
    assert_eq!(*rs.get(24), rf("2*(2*s+3)/(1-s^2)"));
}

#[test]
fn consistency_anchors_match() {
    let sq = compare_zeta(&generic(PhiKind::Square), &table_zeta(PhiKind::Square).unwrap());
    for k in [14, 19, 24, 26] {
        assert!(sq.verdicts[k - 1].matches, "square zeta_{k}");
    }
    let rs = compare_zeta(&generic(PhiKind::RandersSquare), &table_zeta(PhiKind::RandersSquare).unwrap());
    for k in [14, 19, 24] {
        assert!(rs.verdicts[k - 1].matches, "randers-square zeta_{k}");
    }
}

/// The exact engine's findings, pinned so that any change to the transcription
/// or the derivation shows up here.
#[test]
fn mismatch_sets() {
    let sq = compare_zeta(&generic(PhiKind::Square), &table_zeta(PhiKind::Square).unwrap());
    assert_eq!(sq.mismatched(), vec![2]);
    let rs = compare_zeta(&generic(PhiKind::RandersSquare), &table_zeta(PhiKind::RandersSquare).unwrap());
    assert_eq!(rs.mismatched(), vec![4, 9, 10, 26]);
    for v in sq.verdicts.iter().chain(&rs.verdicts) {
        match (&v.witness, v.matches) {
            (None, true) => {}
            (Some(w), false) => {
                assert!(w.s.abs() <= 0.3 && w.b == 0.09, "witness outside the fixed sample region");
                assert!((w.left - w.right).abs() > 1e-9, "zeta_{}: values agree at the witness", v.index);
            }
            other => panic!("zeta_{}: inconsistent verdict {other:?}", v.index),
        }
    }
}

#[test]
fn randers_square_zeta26_is_off_by_four() {
    let g = generic(PhiKind::RandersSquare);
    let t = table_zeta(PhiKind::RandersSquare).unwrap();
    assert_eq!(&RationalFunction::from_int(4) * g.get(26), t.get(26).clone());
    // generic side keeps zeta_26 = -(zeta_24 / 2)^2
    let half = g.get(24).checked_div(&RationalFunction::from_int(2)).unwrap();
    assert_eq!(*g.get(26), -(&half * &half));
}

#[test]
fn point_values() {
    let sq = table_zeta(PhiKind::Square).unwrap().eval(0.0, 0.0).unwrap();
    assert_eq!(sq[13], 2.0);
    assert_eq!(sq[18], -4.0);
    let rs = generic(PhiKind::RandersSquare).eval(0.0, 0.0).unwrap();
    assert_eq!(rs[18], -14.0);
    assert_eq!(rs[23], 6.0);
    assert_eq!(rs[25], -9.0);
}

#[test]
fn matching_entries_agree_numerically() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for kind in [PhiKind::Square, PhiKind::RandersSquare] {
        let g = generic(kind);
        let t = table_zeta(kind).unwrap();
        let cmp = compare_zeta(&g, &t);
        let b_max = if kind == PhiKind::Square { 0.95 } else { 0.37 };
        for _ in 0..200 {
            let b: f64 = rng.gen_range(0.0..b_max);
            let s: f64 = rng.gen_range(-b..=b);
            let (gv, tv) = (g.eval(s, b * b).unwrap(), t.eval(s, b * b).unwrap());
            for v in cmp.verdicts.iter().filter(|v| v.matches) {
                let (x, y) = (gv[v.index - 1], tv[v.index - 1]);
                assert!((x - y).abs() <= 1e-12 * x.abs().max(y.abs()).max(1.0), "{kind} zeta_{}: {x} vs {y}", v.index);
            }
        }
    }
}

/// Near `s^2 = B` the expanded numerators cancel by many digits; the compiled
/// evaluation must still agree with exact evaluation at the same binary point.
#[test]
fn float_evaluation_is_accurate_near_the_boundary() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for (kind, b_max) in [(PhiKind::Square, 0.95), (PhiKind::RandersSquare, 0.38)] {
        let g = generic(kind);
        for _ in 0..40 {
            let b: f64 = rng.gen_range(0.5 * b_max..b_max);
            let s = b * rng.gen_range(0.97..1.0) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
            let bb = b * b;
            let (sx, bx) = (ExactRational::from_float(s).unwrap(), ExactRational::from_float(bb).unwrap());
            let fl = g.eval(s, bb).unwrap();
            for (k, f) in g.entries().iter().enumerate() {
                let e = f.eval_exact(&sx, &bx).unwrap().to_f64().unwrap();
                assert!((fl[k] - e).abs() <= 1e-14 * e.abs().max(1e-300), "{kind} zeta_{} at s = {s}: {} vs {e}", k + 1, fl[k]);
            }
        }
    }
}

#[test]
fn square_table_has_no_pole_in_the_domain() {
    let t = table_zeta(PhiKind::Square).unwrap();
    for bi in 0..20 {
        let b = bi as f64 * 0.049;
        for si in -10..=10 {
            let s = b * si as f64 / 10.0;
            t.eval(s, b * b).unwrap();
        }
    }
}

#[test]
fn riemannian_generic_is_identically_zero() {
    let g = generic(PhiKind::Riemannian);
    let cmp = compare_zeta(&g, &ZetaSet::zero(ZetaSource::PaperTable));
    assert!(cmp.all_match());
    assert_eq!(cmp.verdicts.len(), ZETA_COUNT);
}

#[test]
fn malformed_tables_are_rejected() {
    assert!(parse_table("# only a comment\n").is_err());
    assert!(parse_table("1 s\n").is_err());
}

/// Independent floating-point pipeline: Q, Theta, psi evaluated from phi directly,
/// partials by central differences, the coefficients typed in a second time.
mod numeric_oracle {
    use super::*;

    struct Phi(Vec<f64>);

    impl Phi {
        fn d(&self, order: usize, s: f64) -> f64 {
            let mut acc = 0.0;
            for (k, &c) in self.0.iter().enumerate().skip(order) {
                let fall: f64 = (0..order).map(|j| (k - j) as f64).product();
                acc += c * fall * s.powi((k - order) as i32);
            }
            acc
        }
        fn q(&self, s: f64, _b: f64) -> f64 {
            self.d(1, s) / (self.d(0, s) - s * self.d(1, s))
        }
        fn delta(&self, s: f64, b: f64) -> f64 {
            self.d(0, s) - s * self.d(1, s) + (b - s * s) * self.d(2, s)
        }
        fn theta(&self, s: f64, b: f64) -> f64 {
            let (p, p1, p2) = (self.d(0, s), self.d(1, s), self.d(2, s));
            (p * p1 - s * (p * p2 + p1 * p1)) / (2.0 * p * self.delta(s, b))
        }
        fn psi(&self, s: f64, b: f64) -> f64 {
            self.d(2, s) / (2.0 * self.delta(s, b))
        }
    }

    const H: f64 = 1e-4;

    fn ds(f: &dyn Fn(f64, f64) -> f64, s: f64, b: f64) -> f64 {
        (f(s + H, b) - f(s - H, b)) / (2.0 * H)
    }
    fn dss(f: &dyn Fn(f64, f64) -> f64, s: f64, b: f64) -> f64 {
        (f(s + H, b) - 2.0 * f(s, b) + f(s - H, b)) / (H * H)
    }
    fn db(f: &dyn Fn(f64, f64) -> f64, s: f64, b: f64) -> f64 {
        (f(s, b + H) - f(s, b - H)) / (2.0 * H)
    }
    fn dsb(f: &dyn Fn(f64, f64) -> f64, s: f64, b: f64) -> f64 {
        (f(s + H, b + H) - f(s + H, b - H) - f(s - H, b + H) + f(s - H, b - H)) / (4.0 * H * H)
    }

    fn zetas(phi: &Phi, s: f64, b: f64) -> [f64; 26] {
        let qf = |s, b| phi.q(s, b);
        let tf = |s, b| phi.theta(s, b);
        let pf = |s, b| phi.psi(s, b);
        let (q, qs, qss) = (qf(s, b), ds(&qf, s, b), dss(&qf, s, b));
        let (t, ts, tb) = (tf(s, b), ds(&tf, s, b), db(&tf, s, b));
        let (p, ps, pss, pb, psb) = (pf(s, b), ds(&pf, s, b), dss(&pf, s, b), db(&pf, s, b), dsb(&pf, s, b));
        let x = b - s * s;
        [
            2.0 * p * ts * x - 2.0 * s * p * t + t * t - ts,
            2.0 * p * pss * x * x - (6.0 * s * p * ps + pss) * x + 2.0 * s * ps,
            -4.0 * (2.0 * q * ts + qs * t) * p * x + 4.0 * q * ts + 2.0 * qs * t + 4.0 * q * t * (s * p - t) - 2.0 * tb,
            -4.0 * p * (2.0 * q * pss + qs * ps + qss * ps * ps) * x * x
                + (-4.0 * p * p * (q - s * qs) + 4.0 * qss * p + 2.0 * qs * ps + 4.0 * q * pss - 2.0 * psb
                    + 20.0 * s * q * p * ps)
                    * x
                + 2.0 * p * (q - s * qs)
                - 4.0 * ps
                - qss
                - 10.0 * s * q * ps,
            4.0 * p * t - 2.0 * tb,
            2.0 * (2.0 * p * ps - psb) * x - 2.0 * ps,
            -t,
            -ps * x,
            8.0 * q * p * (q * ts + qs * t) * x + 4.0 * q * q * (t * t - ts) + 4.0 * q * (tb - qs),
            (4.0 * p * p * (2.0 * q * qss - qs * qs) + 8.0 * q * p * (q * pss + qs * ps) - 4.0 * q * q * ps * ps) * x * x
                + (-16.0 * s * q * p * (q * ps + qs * p) - 4.0 * p * (2.0 * q * qss - qs * qs)
                    - 4.0 * q * (q * pss + qs * ps)
                    + 4.0 * q * psb
                    + 4.0 * qs * pb)
                    * x
                - 4.0 * s * s * q * q * p * p
                + 4.0 * (2.0 + 3.0 * s * q) * (q * ps + qs * p)
                - 8.0 * q * q * p
                + 2.0 * q * qss
                - qs * qs
                + 4.0 * s * q * pb,
            4.0 * p * p + 4.0 * pb,
            4.0 * q * (-2.0 * p * t + tb),
            (8.0 * p * (qs * p - q * ps) + 4.0 * q * psb + 4.0 * qs * pb) * x + 8.0 * s * q * p * p + 4.0 * q * ps
                - 4.0 * (1.0 - s * q) * pb,
            2.0 * p,
            4.0 * q * t,
            4.0 * (q * ps - qs * p) * x + 2.0 * qs - 2.0 * (1.0 + 2.0 * s * q) * p,
            2.0 * q * t,
            2.0 * (q * ps + qs * p) * x + 2.0 * s * q * p - qs,
            2.0 * (1.0 + s * q) * qs - 2.0 * q * q,
            -8.0 * (p * p + pb) * q,
            -4.0 * q * q * t,
            2.0 * q * p - 4.0 * q * q * ps * x,
            2.0 * q * p,
            2.0 * q,
            -4.0 * q * q * p,
            -q * q,
        ]
    }

    #[test]
    fn exact_engine_matches_float_pipeline() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let families: Vec<Vec<f64>> = vec![
            vec![1.0, 2.0, 1.0],
            vec![1.0, 3.0, 1.0],
            vec![1.0, 0.5, 0.25, 0.125],
            vec![2.0, -0.5, 0.75, 0.0, 0.25],
        ];
        for coeffs in families {
            let phi = PhiFamily::custom_f64(&coeffs).unwrap();
            let exact = generic_zeta(&qtp(&phi).unwrap()).unwrap();
            let oracle = Phi(coeffs.clone());
            for _ in 0..20 {
                let b: f64 = rng.gen_range(0.05..0.3);
                let s: f64 = rng.gen_range(-b..=b);
                let e = exact.eval(s, b * b).unwrap();
                let o = zetas(&oracle, s, b * b);
                for k in 0..26 {
                    let scale = e[k].abs().max(1.0);
                    assert!((e[k] - o[k]).abs() <= 1e-4 * scale, "phi {coeffs:?} zeta_{}: {} vs {}", k + 1, e[k], o[k]);
                }
            }
        }
    }
}
