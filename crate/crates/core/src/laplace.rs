//! Laplace-domain quantities of the pair problem.
//!
//! All functions use the principal branch for `s^σ` and `q = sqrt(s/D)`, with
//! the cut along the negative real axis. Arguments exactly on the cut are
//! rejected with [`Error::Branch`].

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::model::PairParams;
use crate::special::modified::{i01_scaled, k01_scaled};
use crate::special::{ComplexValue, Scalar};

const DENOMINATOR_GUARD: f64 = 1e-300;

/// Which Laplace-domain formula produced a [`LaplaceEvaluation`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Formula {
    PsiTilde,
    PRef,
    STildeGeneral,
    STilde2d,
    JTilde,
}

/// A Laplace-domain value tagged with its argument and formula.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LaplaceEvaluation {
    pub s: ComplexValue,
    pub value: ComplexValue,
    pub formula: Formula,
}

/// Evaluate one of the closed-form transforms at `s`. `STildeGeneral` and
/// `JTilde` are evaluated with their consistent inputs (ψ̃, p̃_ref and the
/// boundary value from this parameter set).
pub fn evaluate(formula: Formula, s: ComplexValue, params: &PairParams) -> Result<LaplaceEvaluation> {
    let value = match formula {
        Formula::PsiTilde => psi_tilde(s, params)?,
        Formula::PRef => p_ref_tilde(s, params)?,
        Formula::STildeGeneral => s_tilde_general(s, psi_tilde(s, params)?, params)?,
        Formula::STilde2d => s_tilde_2d(s, params)?,
        Formula::JTilde => j_tilde(s, psi_tilde(s, params)?, p_boundary_tilde(s, params)?, params)?,
    };
    if !(value.re.is_finite() && value.im.is_finite()) {
        return Err(Error::Singularity(format!("{formula:?} is not finite at s = {s}")));
    }
    Ok(LaplaceEvaluation { s, value, formula })
}

fn check_cut(s: ComplexValue) -> Result<()> {
    if !(s.re.is_finite() && s.im.is_finite()) {
        return Err(Error::Domain(format!("non-finite Laplace argument {s}")));
    }
    if s.im == 0.0 && s.re < 0.0 {
        return Err(Error::Branch(format!("s = {s} lies on the negative real axis")));
    }
    Ok(())
}

fn check_nonzero(s: ComplexValue) -> Result<()> {
    check_cut(s)?;
    if s.re == 0.0 && s.im == 0.0 {
        return Err(Error::Domain("s = 0 is a branch point".into()));
    }
    Ok(())
}

fn guard<T: Scalar>(den: T, what: &str) -> Result<T> {
    if den.modulus() < DENOMINATOR_GUARD || !den.modulus().is_finite() {
        Err(Error::Singularity(format!("{what}: denominator {den:?} vanished")))
    } else {
        Ok(den)
    }
}

fn pow_sigma<T: Scalar>(s: T, sigma: f64) -> T {
    if sigma == 1.0 {
        s
    } else {
        s.powf(sigma)
    }
}

/// Residence-time transform `ψ̃(s) = 1 / (1 + (s/κ)^σ)`.
pub fn psi_tilde(s: ComplexValue, params: &PairParams) -> Result<ComplexValue> {
    check_cut(s)?;
    if s.re == 0.0 && s.im == 0.0 {
        return Ok(ComplexValue::new(1.0, 0.0));
    }
    Ok(psi_generic(s, params))
}

fn psi_generic<T: Scalar>(s: T, params: &PairParams) -> T {
    (pow_sigma(s / params.kappa(), params.sigma()) + 1.0).recip()
}

/// `K₀(qa) / K₁(qa)` with `q = sqrt(s/D)`; immune to over/underflow.
fn k_ratio<T: Scalar>(s: T, params: &PairParams) -> (T, T) {
    let q = (s / params.d()).sqrt();
    let (k0, k1) = k01_scaled(q * params.a());
    (q, k0 / k1)
}

/// Reflecting-boundary propagator at contact, `p̃_ref(a, s | a)`,
/// evaluated as `K₀(qa) / (2πD · qa · K₁(qa))`.
pub fn p_ref_tilde(s: ComplexValue, params: &PairParams) -> Result<ComplexValue> {
    check_nonzero(s)?;
    Ok(p_ref_generic(s, params))
}

fn p_ref_generic<T: Scalar>(s: T, params: &PairParams) -> T {
    let (q, ratio) = k_ratio(s, params);
    ratio / (q * (2.0 * PI * params.d() * params.a()))
}

/// `p̃_ref` in its two-term Bessel form
/// `(1/2πD)[I₀K₀ + K₀² I₁/K₁]` (argument `qa`). Equal to [`p_ref_tilde`] by
/// the cross-product identity `I₀K₁ + I₁K₀ = 1/z`; kept as an independent check.
pub fn p_ref_tilde_two_term(s: ComplexValue, params: &PairParams) -> Result<ComplexValue> {
    check_nonzero(s)?;
    let q = (s / params.d()).sqrt();
    let z = q * params.a();
    let (i0, i1) = i01_scaled(z);
    let (k0, k1) = k01_scaled(z);
    Ok((i0 * k0 + k0 * k0 * i1 / k1) / (2.0 * PI * params.d()))
}

/// General identity for the unbound probability:
/// `s S̃ = ψ̃ / (1 + κ_a [1 − ψ̃] p̃_ref)`. Returns `S̃`.
pub fn s_tilde_general(s: ComplexValue, psi: ComplexValue, params: &PairParams) -> Result<ComplexValue> {
    check_nonzero(s)?;
    let p_ref = p_ref_generic(s, params);
    let den = guard((ComplexValue::new(1.0, 0.0) - psi) * p_ref * params.kappa_a() + 1.0, "s_tilde_general")?;
    Ok(psi / den / s)
}

/// Markovian identity `s S̃ = κ_d / (κ_d + s [1 + κ_a p̃_ref])` with an
/// arbitrary (possibly s-dependent, complex) dissociation rate `kappa_d`.
/// Substituting `κ_d → sψ̃/(1−ψ̃)` reproduces [`s_tilde_general`].
pub fn s_tilde_markov_form(s: ComplexValue, kappa_d: ComplexValue, params: &PairParams) -> Result<ComplexValue> {
    check_nonzero(s)?;
    let p_ref = p_ref_generic(s, params);
    let den = guard(kappa_d + s * (p_ref * params.kappa_a() + 1.0), "s_tilde_markov_form")?;
    Ok(kappa_d / den / s)
}

/// Closed form of `S̃(s|∗)` in two dimensions,
/// `(1/s) κ^σ qK₁ / [qK₁ (s^σ + κ^σ) + h s^σ K₀]`.
pub fn s_tilde_2d(s: ComplexValue, params: &PairParams) -> Result<ComplexValue> {
    check_nonzero(s)?;
    s_tilde_2d_generic(s, params)
}

/// [`s_tilde_2d`] on the positive real axis in pure real arithmetic.
pub fn s_tilde_2d_real(s: f64, params: &PairParams) -> Result<f64> {
    if !(s > 0.0 && s.is_finite()) {
        return Err(Error::Domain(format!("real Laplace argument must be positive, got {s}")));
    }
    s_tilde_2d_generic(s, params)
}

pub(crate) fn s_tilde_2d_generic<T: Scalar>(s: T, params: &PairParams) -> Result<T> {
    let sigma = params.sigma();
    let ks = params.kappa().powf(sigma);
    let ss = pow_sigma(s, sigma);
    let (q, ratio) = k_ratio(s, params);
    // divide numerator and denominator by qK₁
    let den = guard(ss + ks + ss * ratio * params.h() / q, "s_tilde_2d")?;
    Ok(den.recip() * ks / s)
}

/// Boundary value `p̃(a, s|∗) = s S̃ · p̃_ref` consistent with the backreaction
/// condition.
pub fn p_boundary_tilde(s: ComplexValue, params: &PairParams) -> Result<ComplexValue> {
    let s_tilde = s_tilde_2d(s, params)?;
    Ok(s * s_tilde * p_ref_generic(s, params))
}

/// Flux at contact, `J̃ = ψ̃ − κ_a [1 − ψ̃] p̃(a, s|∗)`.
pub fn j_tilde(s: ComplexValue, psi: ComplexValue, p_boundary: ComplexValue, params: &PairParams) -> Result<ComplexValue> {
    check_cut(s)?;
    Ok(psi - (ComplexValue::new(1.0, 0.0) - psi) * p_boundary * params.kappa_a())
}

/// Markovian flux `J̃ = (κ_d − s κ_a p̃) / (s + κ_d)` with `κ_d = κ`.
pub fn j_tilde_markov(s: ComplexValue, p_boundary: ComplexValue, params: &PairParams) -> Result<ComplexValue> {
    check_cut(s)?;
    let kd = params.kappa();
    let den = guard(s + kd, "j_tilde_markov")?;
    Ok((-(s * p_boundary * params.kappa_a()) + kd) / den)
}

/// `(1 − ψ̃(s)) / s`: transform of the residence survival function.
pub fn residence_survival_tilde(s: ComplexValue, params: &PairParams) -> Result<ComplexValue> {
    check_nonzero(s)?;
    Ok((ComplexValue::new(1.0, 0.0) - psi_generic(s, params)) / s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::make_params;
    use approx::assert_relative_eq;

    fn c(re: f64, im: f64) -> ComplexValue {
        ComplexValue::new(re, im)
    }

    fn close(a: ComplexValue, b: ComplexValue, rel: f64) -> bool {
        (a - b).norm() <= rel * b.norm()
    }

    fn unit(sigma: f64) -> PairParams {
        make_params(1.0, 1.0, 1.0, 1.0, sigma).unwrap()
    }

    #[test]
    fn psi_tilde_examples() {
        let p = unit(0.7);
        assert_eq!(psi_tilde(c(0.0, 0.0), &p).unwrap(), c(1.0, 0.0));
        let m = make_params(1.0, 1.0, 1.0, 2.5, 1.0).unwrap();
        assert!(close(psi_tilde(c(2.5, 0.0), &m).unwrap(), c(0.5, 0.0), 1e-15));
        let h = make_params(1.0, 1.0, 1.0, 2.5, 0.5).unwrap();
        assert!(close(psi_tilde(c(2.5, 0.0), &h).unwrap(), c(0.5, 0.0), 1e-15));
        assert!(matches!(psi_tilde(c(-1.0, 0.0), &h), Err(Error::Branch(_))));
    }

    #[test]
    fn p_ref_two_forms_agree() {
        let p = unit(1.0);
        for s in [c(0.01, 0.0), c(1.0, 0.0), c(100.0, 0.0), c(-3.0, 4.0), c(0.2, -7.0)] {
            let a = p_ref_tilde(s, &p).unwrap();
            let b = p_ref_tilde_two_term(s, &p).unwrap();
            assert!(close(a, b, 1e-12), "s = {s}: {a} vs {b}");
        }
    }

    #[test]
    fn p_ref_limits() {
        let p = unit(1.0);
        // 2πD p̃_ref → 1/(qa) for large s
        let s = 1e8;
        let v = p_ref_tilde(c(s, 0.0), &p).unwrap().re * 2.0 * PI;
        let lead = 1.0 / s.sqrt();
        assert!((v / lead - 1.0).abs() < 0.01);
        // logarithmic growth as s → 0
        let small = p_ref_tilde(c(1e-12, 0.0), &p).unwrap().re;
        let less_small = p_ref_tilde(c(1e-6, 0.0), &p).unwrap().re;
        assert!(small > less_small && less_small > 0.0);
    }

    #[test]
    fn s_tilde_general_examples() {
        let free = make_params(1.0, 1.0, 0.0, 1.3, 0.6).unwrap();
        for s in [c(0.1, 0.0), c(2.0, 3.0)] {
            let psi = psi_tilde(s, &free).unwrap();
            assert_eq!(s_tilde_general(s, psi, &free).unwrap() * s, psi);
        }
        // σ = 1: Markovian identity with κ_d = κ
        let m = make_params(0.8, 1.7, 2.0, 1.3, 1.0).unwrap();
        for s in [c(0.1, 0.0), c(1.0, 0.0), c(3.0, -2.0)] {
            let psi = psi_tilde(s, &m).unwrap();
            let general = s_tilde_general(s, psi, &m).unwrap();
            let markov = s_tilde_markov_form(s, c(m.kappa(), 0.0), &m).unwrap();
            assert!(close(general, markov, 1e-14));
        }
    }

    #[test]
    fn markov_form_with_effective_rate_is_general_form() {
        let p = make_params(1.0, 1.0, 1.0, 1.0, 0.7).unwrap();
        for s in [c(0.1, 0.0), c(1.0, 0.0), c(10.0, 0.0)] {
            let psi = psi_tilde(s, &p).unwrap();
            let k_eff = s * psi / (c(1.0, 0.0) - psi);
            let a = s_tilde_markov_form(s, k_eff, &p).unwrap();
            let b = s_tilde_general(s, psi, &p).unwrap();
            assert!(close(a, b, 1e-13));
        }
    }

    #[test]
    fn closed_form_matches_composition() {
        for sigma in [0.4, 1.0] {
            let p = make_params(1.3, 0.6, 2.2, 0.9, sigma).unwrap();
            for s in [c(0.03, 0.0), c(1.0, 1.0), c(50.0, 0.0)] {
                let composed = s_tilde_general(s, psi_tilde(s, &p).unwrap(), &p).unwrap();
                let closed = s_tilde_2d(s, &p).unwrap();
                assert!(close(closed, composed, 1e-13), "σ={sigma} s={s}");
            }
        }
    }

    #[test]
    fn closed_form_small_s_and_free_limit() {
        let p = unit(0.5);
        let s = 1e-10;
        assert!((s_tilde_2d(c(s, 0.0), &p).unwrap().re * s - 1.0).abs() <= 1e-3);
        let free = make_params(1.0, 1.0, 0.0, 2.0, 1.0).unwrap();
        for s in [0.3, 4.0] {
            let v = s_tilde_2d(c(s, 0.0), &free).unwrap().re;
            assert_relative_eq!(v, 2.0 / (s * (s + 2.0)), max_relative = 1e-14);
        }
    }

    #[test]
    fn real_path_matches_complex_path() {
        let p = make_params(1.0, 1.0, 1.0, 1.0, 0.35).unwrap();
        for s in [1e-7, 0.02, 1.0, 80.0, 1e5] {
            let re = s_tilde_2d_real(s, &p).unwrap();
            let cx = s_tilde_2d(c(s, 0.0), &p).unwrap();
            assert_relative_eq!(re, cx.re, max_relative = 1e-14);
            assert!(cx.im.abs() <= 1e-14 * cx.re.abs());
        }
        assert!(s_tilde_2d_real(0.0, &p).is_err());
    }

    #[test]
    fn flux_identities() {
        let p = make_params(1.0, 1.0, 1.5, 0.8, 0.6).unwrap();
        for s in [c(0.05, 0.0), c(1.0, 2.0), c(20.0, -5.0)] {
            let psi = psi_tilde(s, &p).unwrap();
            let pb = p_boundary_tilde(s, &p).unwrap();
            let j = j_tilde(s, psi, pb, &p).unwrap();
            let ss = s * s_tilde_2d(s, &p).unwrap();
            assert!(close(j, ss, 1e-13));
            assert_eq!(j_tilde(s, c(1.0, 0.0), pb, &p).unwrap(), c(1.0, 0.0));
        }
        let free = p.with_kappa_a(0.0).unwrap();
        let s = c(0.7, 0.1);
        let psi = psi_tilde(s, &free).unwrap();
        assert_eq!(j_tilde(s, psi, c(3.0, 1.0), &free).unwrap(), psi);
        let m = p.with_sigma(1.0).unwrap();
        let psi = psi_tilde(s, &m).unwrap();
        let pb = c(0.4, -0.2);
        assert!(close(j_tilde(s, psi, pb, &m).unwrap(), j_tilde_markov(s, pb, &m).unwrap(), 1e-14));
    }

    #[test]
    fn evaluate_tags_and_rejects_cut() {
        let p = unit(0.5);
        let e = evaluate(Formula::STilde2d, c(1.0, 0.0), &p).unwrap();
        assert_eq!(e.formula, Formula::STilde2d);
        assert!(e.value.im.abs() <= 1e-14);
        for f in [Formula::PRef, Formula::STildeGeneral, Formula::STilde2d, Formula::JTilde] {
            assert!(matches!(evaluate(f, c(-2.0, 0.0), &p), Err(Error::Branch(_))));
        }
    }
}
