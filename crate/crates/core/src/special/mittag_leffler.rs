use std::f64::consts::PI;

use super::gamma::gamma_unchecked;
use crate::error::{domain, Result};
use crate::quadrature::{integrate, Tolerance};

const SERIES_MAX: f64 = 1.0;

/// Mittag-Leffler function `E_σ(x) = Σ x^k / Γ(σk + 1)` for `0 < σ ≤ 1`, `x ≤ 0`.
///
/// On this half-line `E_σ` is completely monotone and takes values in (0, 1].
/// The ascending series is used for |x| ≤ 1; beyond, the spectral
/// representation
///
/// ```text
/// E_σ(-y) = (sin πσ / π) ∫₀^∞ e^{-v} y v^{σ-1} / (v^{2σ} + 2 y v^σ cos πσ + y²) dv
/// ```
///
/// has a positive integrand and is integrated adaptively in `ln v`.
pub fn mittag_leffler(sigma: f64, x: f64) -> Result<f64> {
    if !(sigma > 0.0 && sigma <= 1.0) {
        return domain(format!("mittag_leffler: sigma must lie in (0, 1], got {sigma}"));
    }
    if x.is_nan() || x > 0.0 {
        return domain(format!("mittag_leffler: argument must be <= 0, got {x}"));
    }
    if x == 0.0 {
        return Ok(1.0);
    }
    if x == f64::NEG_INFINITY {
        return Ok(0.0);
    }
    if sigma == 1.0 {
        return Ok(x.exp());
    }
    if -x <= SERIES_MAX {
        return Ok(series(sigma, x));
    }
    mittag_leffler_integral(sigma, -x)
}

fn series(sigma: f64, x: f64) -> f64 {
    let mut sum = 1.0;
    let mut power = 1.0;
    for k in 1..10_000 {
        power *= x;
        let g = gamma_unchecked(sigma * k as f64 + 1.0);
        if !g.is_finite() {
            break;
        }
        let term = power / g;
        sum += term;
        if term.abs() < 1e-17 * sum.abs() && power.abs() < 1.0 {
            break;
        }
    }
    sum
}

/// The spectral-integral route on its own, for `y > 0`, `0 < σ < 1`.
pub(crate) fn mittag_leffler_integral(sigma: f64, y: f64) -> Result<f64> {
    let (s, c) = (PI * sigma).sin_cos();
    let integrand = |w: f64| {
        let v = w.exp();
        let vs = (sigma * w).exp();
        Ok((-v).exp() * y * vs / (vs * vs + 2.0 * y * vs * c + y * y))
    };
    // e^{-v} is negligible past v = 60; the lower tail decays like e^{σw}/y.
    let hi = 60f64.ln();
    let peak = y.ln() / sigma;
    let lo = peak.min(0.0) - 45.0 / sigma;
    let mut points = vec![lo];
    for p in [peak, 0.0] {
        if p > lo && p < hi && !points.contains(&p) {
            points.push(p);
        }
    }
    points.push(hi);
    points.sort_by(f64::total_cmp);
    let tol = Tolerance { abs: 1e-300, rel: 1e-13, max_intervals: 4000 };
    let est = integrate(integrand, &points, tol)?;
    Ok(s / PI * est.value)
}
