//! Time-domain survival probability `S(t|∗)` from its real-axis integral
//! representation.
//!
//! Everything is evaluated in reduced variables `ξ = x a`, `τ = D t / a²`
//! (see [`ReducedParams`]). In these variables
//!
//! ```text
//! S = 1 + (2k/π) ∫₀^∞ e^{-τξ²} ξ^{2σ-3} [(2h_a/π) cos πσ − sin πσ · ξ Ω̂] / (α̂² + β̂²) dξ
//! ```
//!
//! which is split into a head `[0, min(1, ξ_max)]`, integrated in
//! `u = (ξ/ξ₀)^{2σ}` to absorb the `ξ^{2σ-1}` endpoint, and a body up to
//! `ξ_max = sqrt(W/τ)`. Errors are absolute in S.

use std::f64::consts::PI;

use crate::error::{domain, Error, Result};
use crate::model::{Method, PairParams, ReducedParams, SurvivalCurve, SurvivalPoint, TimeGrid};
use crate::quadrature::{integrate, Tolerance};
use crate::special::{cylinder, mittag_leffler, Cylinder};

const DENOMINATOR_GUARD: f64 = 1e-280;
const UNDERFLOW: f64 = 1e-200;
const BODY_POINTS_PER_DECADE: f64 = 4.0;

/// Accuracy controls for the survival integrals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    /// Absolute tolerance on S.
    pub abs_tol: f64,
    /// Tolerance relative to `|S - 1|`.
    pub rel_tol: f64,
    /// Truncation exponent: the integral stops where `D t x² = W`.
    pub tail_exponent: f64,
    pub max_subdivisions: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self { abs_tol: 1e-10, rel_tol: 1e-9, tail_exponent: 40.0, max_subdivisions: 2000 }
    }
}

impl QuadratureSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.abs_tol > 0.0 && self.rel_tol > 0.0) {
            return domain("quadrature tolerances must be positive");
        }
        if !(self.tail_exponent > 0.0 && self.tail_exponent.is_finite()) {
            return domain("tail exponent must be positive and finite");
        }
        if self.max_subdivisions < 2 {
            return domain("at least two subdivisions are required");
        }
        Ok(())
    }
}

/// A survival value with its absolute error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurvivalValue {
    pub s: f64,
    pub abs_err: f64,
}

/// Integrand building blocks in reduced variables, with the trigonometric
/// factors of the memory exponent precomputed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegrandParts {
    pub h_a: f64,
    pub k_red: f64,
    pub sigma: f64,
    cos: f64,
    sin: f64,
}

/// `ξα̂`, `ξβ̂` and `ξΩ̂`: the combinations that stay finite as ξ → 0.
struct Scaled {
    a: f64,
    b: f64,
    omega: f64,
}

impl IntegrandParts {
    pub fn new(reduced: &ReducedParams) -> Self {
        let (sin, cos) = if reduced.sigma == 1.0 { (0.0, -1.0) } else { (PI * reduced.sigma).sin_cos() };
        Self { h_a: reduced.h_a, k_red: reduced.k_red, sigma: reduced.sigma, cos, sin }
    }

    /// Reduced `α̂_σ(ξ)`, with `α_σ(x) = a^{-2σ} α̂_σ(xa)`.
    pub fn alpha(&self, xi: f64) -> f64 {
        self.scaled(xi).a / xi
    }

    /// Reduced `β̂_σ(ξ)`.
    pub fn beta(&self, xi: f64) -> f64 {
        self.scaled(xi).b / xi
    }

    /// Reduced `Ω̂(ξ)`, with `Ω(x) = Ω̂(xa)/a`.
    pub fn omega(&self, xi: f64) -> f64 {
        self.scaled(xi).omega / xi
    }

    fn scaled(&self, xi: f64) -> Scaled {
        let Cylinder { j0, j1, y0, y1 } = cylinder(xi);
        let (xj1, xy1) = (xi * j1, xi * y1);
        let p = xj1 + self.h_a * j0;
        let q = xy1 + self.h_a * y0;
        let pow = if self.sigma == 1.0 { xi * xi } else { xi.powf(2.0 * self.sigma) };
        let (a, b) = if self.sigma == 1.0 {
            (pow * p - self.k_red * xj1, pow * q - self.k_red * xy1)
        } else {
            (
                pow * (-p * self.cos - q * self.sin) - self.k_red * xj1,
                pow * (p * self.sin - q * self.cos) - self.k_red * xy1,
            )
        };
        let omega = xj1 * xj1 + xy1 * xy1 + self.h_a * xi * (j0 * j1 + y0 * y1);
        Scaled { a, b, omega }
    }

    /// `ξ^{1-2σ}` times the integrand of S − 1, before the Gaussian factor.
    fn reduced_kernel(&self, xi: f64) -> Result<f64> {
        let sc = self.scaled(xi);
        let den = sc.a * sc.a + sc.b * sc.b;
        if den.is_nan() || den < DENOMINATOR_GUARD {
            return Err(Error::Singularity(format!("alpha^2 + beta^2 = {den:e} at reduced x = {xi:e}")));
        }
        let mut num = 2.0 * self.h_a / PI * self.cos;
        if self.sin != 0.0 {
            num -= self.sin * sc.omega;
        }
        Ok(2.0 * self.k_red / PI * num / den)
    }
}

/// `α_σ(x)` for `x > 0` (units length^{-2σ}), Bessel arguments `xa`.
pub fn alpha_sigma(x: f64, params: &PairParams) -> Result<f64> {
    let (p, q, c) = dimensional_parts(x, params)?;
    let (sin, cos) = trig(params.sigma());
    Ok(x.powf(2.0 * params.sigma() - 1.0) * (-p * cos - q * sin) - params.kappa_d_sigma() * c.j1)
}

/// `β_σ(x)` for `x > 0`.
pub fn beta_sigma(x: f64, params: &PairParams) -> Result<f64> {
    let (p, q, c) = dimensional_parts(x, params)?;
    let (sin, cos) = trig(params.sigma());
    Ok(x.powf(2.0 * params.sigma() - 1.0) * (p * sin - q * cos) - params.kappa_d_sigma() * c.y1)
}

/// `Ω(x) = x[J₁² + Y₁²] + h[J₀J₁ + Y₀Y₁]` for `x > 0`.
pub fn omega(x: f64, params: &PairParams) -> Result<f64> {
    check_x(x)?;
    let Cylinder { j0, j1, y0, y1 } = cylinder(x * params.a());
    Ok(x * (j1 * j1 + y1 * y1) + params.h() * (j0 * j1 + y0 * y1))
}

/// Markovian `α(x) = (x² − κ_D) J₁ + h x J₀` with `κ_D = κ/D`.
pub fn alpha_markov(x: f64, params: &PairParams) -> Result<f64> {
    check_x(x)?;
    let c = cylinder(x * params.a());
    Ok((x * x - params.kappa() / params.d()) * c.j1 + params.h() * x * c.j0)
}

/// Markovian `β(x) = (x² − κ_D) Y₁ + h x Y₀`.
pub fn beta_markov(x: f64, params: &PairParams) -> Result<f64> {
    check_x(x)?;
    let c = cylinder(x * params.a());
    Ok((x * x - params.kappa() / params.d()) * c.y1 + params.h() * x * c.y0)
}

fn check_x(x: f64) -> Result<()> {
    if !(x > 0.0 && x.is_finite()) {
        return domain(format!("x must be positive and finite, got {x}"));
    }
    Ok(())
}

fn trig(sigma: f64) -> (f64, f64) {
    if sigma == 1.0 {
        (0.0, -1.0)
    } else {
        (PI * sigma).sin_cos()
    }
}

// (xJ₁ + hJ₀, xY₁ + hY₀) and the Bessel values themselves
fn dimensional_parts(x: f64, params: &PairParams) -> Result<(f64, f64, Cylinder)> {
    check_x(x)?;
    let c = cylinder(x * params.a());
    let h = params.h();
    Ok((x * c.j1 + h * c.j0, x * c.y1 + h * c.y0, c))
}

fn check_time(t: f64) -> Result<()> {
    if !(t > 0.0 && t.is_finite()) {
        return domain(format!("time must be positive and finite, got {t}"));
    }
    Ok(())
}

/// Integrate `ξ^{2p-1} g(ξ) e^{-τξ²}` over `(0, ξ_max]`, where `g` is smooth up
/// to logarithms at the origin and `p > 0`.
fn integrate_split<G>(g: G, p: f64, tau: f64, resonance: f64, spec: &QuadratureSpec) -> Result<SurvivalValue>
where
    G: Fn(f64) -> Result<f64>,
{
    spec.validate()?;
    let x_max = (spec.tail_exponent / tau).sqrt();
    let x0 = x_max.min(1.0);
    let x0_pow = x0.powf(2.0 * p);
    let tol = Tolerance { abs: 0.5 * spec.abs_tol, rel: spec.rel_tol, max_intervals: spec.max_subdivisions };

    // head: ξ = ξ₀ u^{1/(2p)}, dξ ξ^{2p-1} = ξ₀^{2p} du / (2p)
    let head = |u: f64| {
        let xi = x0 * u.powf(0.5 / p);
        if xi < UNDERFLOW {
            return Ok(0.0);
        }
        Ok(x0_pow / (2.0 * p) * g(xi)? * (-tau * xi * xi).exp())
    };
    let mut head_points = vec![0.0];
    if resonance > 0.0 && resonance < x0 {
        head_points.push((resonance / x0).powf(2.0 * p));
    }
    head_points.push(1.0);
    let head = integrate(head, &head_points, tol)?;

    let mut total = head;
    if x_max > x0 {
        let body = |xi: f64| Ok(xi.powf(2.0 * p - 1.0) * g(xi)? * (-tau * xi * xi).exp());
        let decades = x_max.log10();
        let n = (decades * BODY_POINTS_PER_DECADE).ceil().max(1.0) as usize;
        let mut points: Vec<f64> = (0..=n).map(|i| 10f64.powf(decades * i as f64 / n as f64)).collect();
        *points.last_mut().expect("nonempty") = x_max;
        if resonance > x0 && resonance < x_max {
            points.push(resonance);
            points.sort_by(f64::total_cmp);
        }
        let body = integrate(body, &points, tol)?;
        total.value += body.value;
        total.error += body.error;
    }
    let abs_err = total.error + (-spec.tail_exponent).exp();
    if abs_err > 10.0 * spec.abs_tol.max(spec.rel_tol * total.value.abs()) {
        return Err(Error::Accuracy(format!("survival integral error estimate {abs_err:e} too large")));
    }
    Ok(SurvivalValue { s: 1.0 + total.value, abs_err })
}

/// S at reduced time `τ` from the integral representation, without any
/// special-casing of `h_a = 0`.
///
/// At σ = 1 with `h_a = 0` the representation degenerates (the integrand
/// acquires a non-integrable double pole at `ξ² = k`) and a DomainError is
/// returned.
pub fn survival_reduced(tau: f64, reduced: &ReducedParams, spec: &QuadratureSpec) -> Result<SurvivalValue> {
    check_time(tau)?;
    if reduced.sigma == 1.0 && reduced.h_a == 0.0 {
        return domain("the Markovian integral representation requires kappa_a > 0");
    }
    let parts = IntegrandParts::new(reduced);
    let resonance = reduced.k_red.powf(0.5 / reduced.sigma);
    integrate_split(|xi| parts.reduced_kernel(xi), reduced.sigma, tau, resonance, spec)
}

/// Non-Markovian `S(t|∗)` from the quadrature path only.
pub fn survival_nonmarkov_quadrature(t: f64, params: &PairParams, spec: &QuadratureSpec) -> Result<SurvivalValue> {
    check_time(t)?;
    survival_reduced(params.reduced_time(t), &params.reduced(), spec)
}

/// Non-Markovian `S(t|∗)`.
///
/// Without rebinding (`κ_a = 0`) the exact result
/// `1 − E_σ(−(κt)^σ)` is returned directly.
pub fn survival_nonmarkov(t: f64, params: &PairParams, spec: &QuadratureSpec) -> Result<SurvivalValue> {
    check_time(t)?;
    spec.validate()?;
    if params.kappa_a() == 0.0 {
        let x = (params.kappa() * t).powf(params.sigma());
        let s = 1.0 - mittag_leffler(params.sigma(), -x)?;
        return Ok(SurvivalValue { s, abs_err: 1e-13 });
    }
    survival_nonmarkov_quadrature(t, params, spec)
}

/// Markovian `S(t|∗)` (σ ignored, `κ_d = κ`).
pub fn survival_markov(t: f64, params: &PairParams, spec: &QuadratureSpec) -> Result<SurvivalValue> {
    check_time(t)?;
    spec.validate()?;
    let kappa = params.kappa();
    if params.kappa_a() == 0.0 {
        return Ok(SurvivalValue { s: -(-kappa * t).exp_m1(), abs_err: 1e-15 });
    }
    let h_a = params.h() * params.a();
    let k = kappa * params.a() * params.a() / params.d();
    let prefactor = -4.0 * h_a * k / (PI * PI);
    // ξ²-scaled α, β; integrand ξ^{-1}/(α² + β²) = ξ / ((ξα)² + (ξβ)²)
    let g = |xi: f64| {
        let c = cylinder(xi);
        let a = (xi * xi - k) * (xi * c.j1) + h_a * xi * xi * c.j0;
        let b = (xi * xi - k) * (xi * c.y1) + h_a * xi * xi * c.y0;
        let den = a * a + b * b;
        if den.is_nan() || den < DENOMINATOR_GUARD {
            return Err(Error::Singularity(format!("alpha^2 + beta^2 = {den:e} at reduced x = {xi:e}")));
        }
        Ok(prefactor / den)
    };
    integrate_split(g, 1.0, params.reduced_time(t), k.sqrt(), spec)
}

/// Evaluate S on every point of `grid` with the integral (`Method::Integral`)
/// or Markovian (`Method::Markovian`) route.
pub fn survival_curve(params: &PairParams, grid: &TimeGrid, method: Method, spec: &QuadratureSpec) -> Result<SurvivalCurve> {
    let eval: fn(f64, &PairParams, &QuadratureSpec) -> Result<SurvivalValue> = match method {
        Method::Integral => survival_nonmarkov,
        Method::Markovian => survival_markov,
        other => return domain(format!("survival_curve handles integral and markovian routes, not {other}")),
    };
    let entries = grid
        .times()
        .iter()
        .map(|&t| eval(t, params, spec).map(|v| SurvivalPoint { t, s: v.s, abs_err: v.abs_err, method }))
        .collect::<Result<Vec<_>>>()?;
    Ok(SurvivalCurve { params: *params, entries })
}
