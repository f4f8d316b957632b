//! Cross-checks between independent evaluation routes.

use backreaction::asymptotics::{survival_curve_longtime, survival_longtime, survival_longtime_markov};
use backreaction::inversion::{invert_stehfest, invert_talbot, survival_by_inversion, survival_curve_by_inversion, InversionSpec};
use backreaction::laplace::{residence_survival_tilde, s_tilde_2d, s_tilde_2d_real};
use backreaction::model::{make_params, Method, PairParams, TimeGrid};
use backreaction::residence::{residence_survival, sample_residence, survival_unbound_no_rebinding, ResidenceLaw};
use backreaction::survival::{
    survival_curve, survival_markov, survival_nonmarkov, survival_nonmarkov_quadrature, QuadratureSpec,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn unit(sigma: f64) -> PairParams {
    make_params(1.0, 1.0, 1.0, 1.0, sigma).unwrap()
}

#[test]
fn quadrature_matches_talbot() {
    let spec = QuadratureSpec::default();
    let inv = InversionSpec::default();
    for sigma in [0.25, 0.5, 0.75] {
        let p = unit(sigma);
        for t in [0.1, 1.0, 10.0, 1000.0] {
            let q = survival_nonmarkov(t, &p, &spec).unwrap().s;
            let tb = invert_talbot(|s| s_tilde_2d(s, &p), t, &inv).unwrap().value;
            assert!((q - tb).abs() <= 1e-6, "σ={sigma} t={t}: {q} vs {tb}");
        }
    }
}

#[test]
fn markov_matches_talbot() {
    let p = unit(1.0);
    let q = survival_markov(1.0, &p, &QuadratureSpec::default()).unwrap().s;
    let tb = survival_by_inversion(1.0, &p, &InversionSpec::default()).unwrap().s;
    assert!((q - tb).abs() <= 1e-8);
}

#[test]
fn stehfest_matches_talbot() {
    let p = unit(0.5);
    let a = invert_stehfest(|s| s_tilde_2d_real(s, &p), 10.0, &InversionSpec::stehfest()).unwrap().value;
    let b = invert_talbot(|s| s_tilde_2d(s, &p), 10.0, &InversionSpec::default()).unwrap().value;
    assert!((a - b).abs() <= 1e-4);
}

#[test]
fn curves_agree_across_methods() {
    let p = make_params(0.7, 1.3, 2.0, 0.4, 0.6).unwrap();
    let grid = TimeGrid::log(1e-2, 1e4, 2).unwrap();
    let quad = survival_curve(&p, &grid, Method::Integral, &QuadratureSpec::default()).unwrap();
    let talbot = survival_curve_by_inversion(&p, &grid, &InversionSpec::default()).unwrap();
    let stehfest = survival_curve_by_inversion(&p, &grid, &InversionSpec::stehfest()).unwrap();
    assert!(quad.max_abs_diff(&talbot) <= 1e-6);
    assert!(quad.max_abs_diff(&stehfest) <= 1e-4);
    assert!(quad.entries.iter().all(|e| e.within_bounds() && e.method == Method::Integral));
    assert_eq!(talbot.entries[3].method, Method::Talbot);
    let first = quad.entries.first().unwrap().s;
    let last = quad.entries.last().unwrap().s;
    assert!(first < last);
}

#[test]
fn long_time_laws_match_quadrature() {
    let spec = QuadratureSpec::default();
    let t = 1e6;
    let p = unit(0.5);
    let q = 1.0 - survival_nonmarkov(t, &p, &spec).unwrap().s;
    let law = 1.0 - survival_longtime(t, &p).unwrap();
    assert!((q / law - 1.0).abs() <= 0.05);
    let m = unit(1.0);
    let q = 1.0 - survival_markov(t, &m, &spec).unwrap().s;
    let law = 1.0 - survival_longtime_markov(t, &m).unwrap();
    assert!((q / law - 1.0).abs() <= 0.05);
    assert!(survival_nonmarkov(1e8, &p, &spec).unwrap().s >= 0.99);
}

#[test]
fn asymptotic_curve_switches_law() {
    let grid = TimeGrid::log(1e6, 1e7, 1).unwrap();
    let frac = survival_curve_longtime(&unit(0.5), &grid).unwrap();
    let markov = survival_curve_longtime(&unit(1.0), &grid).unwrap();
    assert!(frac.entries.iter().all(|e| e.abs_err.is_nan() && e.method == Method::Asymptotic));
    assert_eq!(markov.entries[0].s, survival_longtime_markov(1e6, &unit(1.0)).unwrap());
}

#[test]
fn residence_survival_is_inverse_transform() {
    let p = unit(0.5);
    let law = ResidenceLaw::from_params(&p);
    let inv = InversionSpec::default();
    for k in 0..=10 {
        let t = 1e-2 * 10f64.powf(k as f64 * 0.5);
        let direct = residence_survival(t, &law).unwrap();
        let via = invert_talbot(|s| residence_survival_tilde(s, &p), t, &inv).unwrap().value;
        assert!((direct - via).abs() <= 1e-7, "t={t}");
    }
}

#[test]
fn no_rebinding_curve_matches_quadrature() {
    let law = ResidenceLaw::new(1.0, 0.75).unwrap();
    let p = make_params(1.0, 1.0, 0.0, 1.0, 0.75).unwrap();
    let q = survival_nonmarkov_quadrature(2.0, &p, &QuadratureSpec::default()).unwrap().s;
    assert!((survival_unbound_no_rebinding(2.0, &law).unwrap() - q).abs() <= 1e-6);
    let m = ResidenceLaw::new(3.0, 1.0).unwrap();
    assert_eq!(survival_unbound_no_rebinding(0.5, &m).unwrap(), -(-1.5f64).exp_m1());
}

#[test]
fn sampled_survival_matches_law() {
    let law = ResidenceLaw::new(1.0, 0.5).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let n = 1_000_000;
    let xs: Vec<f64> = (0..n).map(|_| sample_residence(&law, &mut rng)).collect();
    for t in [0.1, 1.0, 10.0] {
        let emp = xs.iter().filter(|&&x| x > t).count() as f64 / n as f64;
        let exact = residence_survival(t, &law).unwrap();
        let stderr = (exact * (1.0 - exact) / n as f64).sqrt();
        assert!((emp - exact).abs() <= 3.0 * stderr, "t={t}: {emp} vs {exact}");
    }
    let exp = ResidenceLaw::new(2.0, 1.0).unwrap();
    let mean = (0..n).map(|_| sample_residence(&exp, &mut rng)).sum::<f64>() / n as f64;
    assert!((mean * 2.0 - 1.0).abs() <= 0.005);
}
