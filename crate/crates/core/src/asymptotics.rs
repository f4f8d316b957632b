//! Long-time laws for `S(t|∗)` and the small-s expansion of its transform.
//!
//! For `0 < σ < 1`
//!
//! ```text
//! S(t) ≈ 1 − A t^{-σ} ln t / Γ(1−σ) + C t^{-σ} / Γ(1−σ),   A = κ_a / (4π D κ^σ)
//! ```
//!
//! Only the combination is meaningful: `ln t` uses the caller's time unit and
//! `C` contains `ln(a/√D)` in matching units, so the pair reduces to
//! `−(A/2)·ln(Dt/a²)` plus unit-free constants. For example with D = 4,
//! a = 2 and t = 10 the logarithmic part is the same as with D = a = 1,
//! t = 10.

use std::f64::consts::PI;

use crate::error::{domain, Result};
use crate::model::{Method, PairParams, SurvivalCurve, SurvivalPoint, TimeGrid};
use crate::special::{digamma, gamma_fn, EULER_GAMMA};

/// Coefficients of the fractional long-time law.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticLaw {
    pub sigma: f64,
    /// Coefficient of `t^{-σ} ln t / Γ(1−σ)` in `1 − S`.
    pub log_coefficient: f64,
    /// The constant `C`.
    pub c: f64,
    /// `Γ(1−σ)`.
    pub gamma: f64,
}

impl AsymptoticLaw {
    pub fn new(params: &PairParams) -> Result<Self> {
        let sigma = params.sigma();
        if sigma == 1.0 {
            return domain("the fractional long-time law needs sigma < 1; use the Markovian law");
        }
        Ok(Self {
            sigma,
            log_coefficient: params.kappa_a() / (params.kappa().powf(sigma) * 4.0 * PI * params.d()),
            c: constant_c(params)?,
            gamma: gamma_fn(1.0 - sigma)?,
        })
    }

    pub fn survival(&self, t: f64) -> f64 {
        let decay = t.powf(-self.sigma) / self.gamma;
        1.0 - self.log_coefficient * decay * t.ln() + self.c * decay
    }
}

/// `C = (κ_a/κ^σ)(1/2πD)[Ψ(1−σ)/2 + ln(½ e^γ a/√D)] − 1/κ^σ`.
pub fn constant_c(params: &PairParams) -> Result<f64> {
    let sigma = params.sigma();
    if sigma == 1.0 {
        return domain("constant C is undefined at sigma = 1 (digamma pole)");
    }
    let ks = params.kappa().powf(sigma);
    let log = (0.5 * EULER_GAMMA.exp() * params.a() / params.d().sqrt()).ln();
    Ok(params.kappa_a() / ks / (2.0 * PI * params.d()) * (0.5 * digamma(1.0 - sigma)? + log) - 1.0 / ks)
}

fn check_time(t: f64) -> Result<()> {
    if !(t > 0.0 && t.is_finite()) {
        return domain(format!("time must be positive and finite, got {t}"));
    }
    Ok(())
}

/// Two-term long-time asymptote of `S(t|∗)` for `0 < σ < 1`.
pub fn survival_longtime(t: f64, params: &PairParams) -> Result<f64> {
    check_time(t)?;
    Ok(AsymptoticLaw::new(params)?.survival(t))
}

/// Markovian asymptote `S ≈ 1 − κ_a / (κ_d 4π D t)` with `κ_d = κ`.
///
/// With `κ_a = 0` this gives exactly 1, which is outside the regime the law
/// describes.
pub fn survival_longtime_markov(t: f64, params: &PairParams) -> Result<f64> {
    check_time(t)?;
    Ok(1.0 - params.kappa_a() / (params.kappa() * 4.0 * PI * params.d() * t))
}

/// Three-term small-s expansion
/// `S̃ ≈ 1/s + (ha/κ^σ) s^{σ−1} ln(½ e^γ q a) − s^{σ−1}/κ^σ`, `q = sqrt(s/D)`.
pub fn s_tilde_small_s(s: f64, params: &PairParams) -> Result<f64> {
    if !(s > 0.0 && s.is_finite()) {
        return domain(format!("s must be positive and finite, got {s}"));
    }
    let sigma = params.sigma();
    let ks = params.kappa().powf(sigma);
    let q = (s / params.d()).sqrt();
    let pow = s.powf(sigma - 1.0);
    let ha = params.h() * params.a();
    Ok(1.0 / s + ha / ks * pow * (0.5 * EULER_GAMMA.exp() * q * params.a()).ln() - pow / ks)
}

/// The applicable long-time law (fractional or Markovian) on a grid.
/// Entries carry no error estimate.
pub fn survival_curve_longtime(params: &PairParams, grid: &TimeGrid) -> Result<SurvivalCurve> {
    let law = if params.sigma() < 1.0 { Some(AsymptoticLaw::new(params)?) } else { None };
    let entries = grid
        .times()
        .iter()
        .map(|&t| {
            let s = match &law {
                Some(law) => law.survival(t),
                None => survival_longtime_markov(t, params)?,
            };
            Ok(SurvivalPoint { t, s, abs_err: f64::NAN, method: Method::Asymptotic })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SurvivalCurve { params: *params, entries })
}
