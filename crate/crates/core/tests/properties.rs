use backreaction::inversion::{survival_by_inversion, InversionSpec};
use backreaction::laplace::{psi_tilde, s_tilde_2d, s_tilde_2d_real};
use backreaction::model::{make_params, to_reduced, ReducedParams};
use backreaction::special::{mittag_leffler, ComplexValue};
use backreaction::survival::{survival_nonmarkov, QuadratureSpec};
use backreaction::Error;
use proptest::prelude::*;

fn params() -> impl Strategy<Value = (f64, f64, f64, f64, f64)> {
    (0.1f64..10.0, 0.1f64..10.0, 0.0f64..10.0, 0.05f64..10.0, 0.05f64..=1.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn validation_is_total(d in -1.0f64..2.0, a in -1.0f64..2.0, ka in -1.0f64..2.0, k in -1.0f64..2.0, s in -0.5f64..1.5) {
        let valid = d > 0.0 && a > 0.0 && ka >= 0.0 && k > 0.0 && s > 0.0 && s <= 1.0;
        match make_params(d, a, ka, k, s) {
            Ok(_) => prop_assert!(valid),
            Err(e) => prop_assert!(!valid && matches!(e, Error::Domain(_))),
        }
    }

    #[test]
    fn reduced_groups_round_trip((d, a, ka, k, s) in params()) {
        let p = make_params(d, a, ka, k, s).unwrap();
        let r = to_reduced(&p);
        let back = to_reduced(&r.to_unit_params());
        prop_assert!((back.h_a - r.h_a).abs() <= 1e-13 * r.h_a.max(1e-300));
        prop_assert!((back.k_red / r.k_red - 1.0).abs() <= 1e-12);
        prop_assert!(ReducedParams::new(r.h_a, r.k_red, r.sigma).is_ok());
    }

    #[test]
    fn survival_within_bounds((d, a, ka, k, s) in params(), log_t in -3.0f64..6.0) {
        let p = make_params(d, a, ka, k, s).unwrap();
        let t = 10f64.powf(log_t);
        let v = survival_nonmarkov(t, &p, &QuadratureSpec::default()).unwrap();
        prop_assert!(v.s >= -v.abs_err && v.s <= 1.0 + v.abs_err, "{:?}", v);
    }

    #[test]
    fn survival_depends_only_on_reduced_groups((d, a, ka, k, s) in params(), log_t in -2.0f64..5.0, l in -3i32..3, m in -3i32..3) {
        // power-of-two rescalings of length and time leave every reduced group bit-identical
        let (len, time) = (2f64.powi(l), 2f64.powi(m));
        let p = make_params(d, a, ka, k, s).unwrap();
        let q = make_params(d * len * len / time, a * len, ka * len * len / time, k / time, s).unwrap();
        let t = 10f64.powf(log_t);
        let x = survival_nonmarkov(t, &p, &QuadratureSpec::default()).unwrap().s;
        let y = survival_nonmarkov(t * time, &q, &QuadratureSpec::default()).unwrap().s;
        prop_assert!((x - y).abs() <= 1e-12 * x.abs().max(1e-300));
    }

    #[test]
    fn transform_bounds_and_symmetry((d, a, ka, k, s) in params(), re in -5.0f64..5.0, im in 0.01f64..50.0) {
        let p = make_params(d, a, ka, k, s).unwrap();
        let z = ComplexValue::new(re, im);
        let f = s_tilde_2d(z, &p).unwrap();
        let g = s_tilde_2d(z.conj(), &p).unwrap();
        prop_assert!((f - g.conj()).norm() <= 1e-12 * f.norm());
        let x = im;
        let sx = x * s_tilde_2d_real(x, &p).unwrap();
        prop_assert!(sx > 0.0 && sx <= 1.0);
        let psi = psi_tilde(ComplexValue::new(x, 0.0), &p).unwrap().re;
        prop_assert!(psi > 0.0 && psi < 1.0 && sx <= psi * (1.0 + 1e-14));
    }

    #[test]
    fn more_rebinding_lowers_transform((d, a, ka, k, s) in params(), x in 1e-4f64..1e3, extra in 0.01f64..5.0) {
        let p = make_params(d, a, ka, k, s).unwrap();
        let more = p.with_kappa_a(ka + extra).unwrap();
        prop_assert!(s_tilde_2d_real(x, &more).unwrap() < s_tilde_2d_real(x, &p).unwrap());
    }

    #[test]
    fn mittag_leffler_completely_monotone(s in 0.05f64..=1.0, y in 0.0f64..1e4, dy in 1e-3f64..10.0) {
        let a = mittag_leffler(s, -y).unwrap();
        let b = mittag_leffler(s, -(y + dy)).unwrap();
        prop_assert!(a > 0.0 && a <= 1.0 && b < a);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn quadrature_agrees_with_talbot(s in 0.1f64..=1.0, ka in 0.1f64..5.0, k in 0.1f64..5.0, log_t in -2.0f64..6.0) {
        let p = make_params(1.0, 1.0, ka, k, s).unwrap();
        let t = 10f64.powf(log_t);
        let q = survival_nonmarkov(t, &p, &QuadratureSpec::default()).unwrap().s;
        let v = survival_by_inversion(t, &p, &InversionSpec::default()).unwrap().s;
        prop_assert!((q - v).abs() <= 1e-6, "{} vs {}", q, v);
    }
}
