//! Parameter records, reduced units, time grids and survival curves.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::error::{domain, Error, Result};

/// Physical inputs of the pair problem.
///
/// `d` is the relative diffusion constant, `a` the encounter distance,
/// `kappa_a` the intrinsic association constant (length²/time), `kappa` the
/// dissociation rate scale and `sigma ∈ (0, 1]` the memory exponent of the
/// residence-time law (σ = 1 is Markovian unbinding with rate κ).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairParams {
    d: f64,
    a: f64,
    kappa_a: f64,
    kappa: f64,
    sigma: f64,
}

impl PairParams {
    pub fn new(d: f64, a: f64, kappa_a: f64, kappa: f64, sigma: f64) -> Result<Self> {
        for (name, v) in [("D", d), ("a", a), ("kappa_a", kappa_a), ("kappa", kappa), ("sigma", sigma)] {
            if !v.is_finite() {
                return domain(format!("{name} must be finite, got {v}"));
            }
        }
        if d <= 0.0 {
            return domain(format!("D must be positive, got {d}"));
        }
        if a <= 0.0 {
            return domain(format!("a must be positive, got {a}"));
        }
        if kappa <= 0.0 {
            return domain(format!("kappa must be positive, got {kappa}"));
        }
        if kappa_a < 0.0 {
            return domain(format!("kappa_a must be nonnegative, got {kappa_a}"));
        }
        if !(sigma > 0.0 && sigma <= 1.0) {
            return domain(format!("sigma must lie in (0, 1], got {sigma}"));
        }
        Ok(Self { d, a, kappa_a, kappa, sigma })
    }

    pub fn d(&self) -> f64 {
        self.d
    }
    pub fn a(&self) -> f64 {
        self.a
    }
    pub fn kappa_a(&self) -> f64 {
        self.kappa_a
    }
    pub fn kappa(&self) -> f64 {
        self.kappa
    }
    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    /// `h = κ_a / (2π a D)`, units 1/length.
    pub fn h(&self) -> f64 {
        self.kappa_a / (2.0 * PI * self.a * self.d)
    }

    /// `κ_D^σ = (κ/D)^σ`, units length^{-2σ}.
    pub fn kappa_d_sigma(&self) -> f64 {
        (self.kappa / self.d).powf(self.sigma)
    }

    /// Same record with a different memory exponent.
    pub fn with_sigma(&self, sigma: f64) -> Result<Self> {
        Self::new(self.d, self.a, self.kappa_a, self.kappa, sigma)
    }

    /// Same record with a different association constant.
    pub fn with_kappa_a(&self, kappa_a: f64) -> Result<Self> {
        Self::new(self.d, self.a, kappa_a, self.kappa, self.sigma)
    }

    pub fn reduced(&self) -> ReducedParams {
        to_reduced(self)
    }

    /// Reduced time `τ = D t / a²`.
    pub fn reduced_time(&self, t: f64) -> f64 {
        self.d * t / (self.a * self.a)
    }

    /// Inverse of [`PairParams::reduced_time`].
    pub fn physical_time(&self, tau: f64) -> f64 {
        tau * self.a * self.a / self.d
    }
}

/// Validated constructor, `make_params(D, a, κ_a, κ, σ)`.
pub fn make_params(d: f64, a: f64, kappa_a: f64, kappa: f64, sigma: f64) -> Result<PairParams> {
    PairParams::new(d, a, kappa_a, kappa, sigma)
}

/// Dimensionless regrouping of [`PairParams`].
///
/// With `ξ = x a` and `τ = D t / a²` the survival integrals depend only on
/// `h_a = h·a = κ_a/(2πD)`, `k_red = (κ a²/D)^σ` and σ. The map back to
/// physical time is `t = τ a²/D`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReducedParams {
    pub h_a: f64,
    pub k_red: f64,
    pub sigma: f64,
}

impl ReducedParams {
    pub fn new(h_a: f64, k_red: f64, sigma: f64) -> Result<Self> {
        if !(h_a >= 0.0 && h_a.is_finite()) {
            return domain(format!("h_a must be finite and nonnegative, got {h_a}"));
        }
        if !(k_red > 0.0 && k_red.is_finite()) {
            return domain(format!("k_red must be finite and positive, got {k_red}"));
        }
        if !(sigma > 0.0 && sigma <= 1.0) {
            return domain(format!("sigma must lie in (0, 1], got {sigma}"));
        }
        Ok(Self { h_a, k_red, sigma })
    }

    /// A representative physical parameter set (D = a = 1) with these groups.
    pub fn to_unit_params(&self) -> PairParams {
        let kappa = self.k_red.powf(1.0 / self.sigma);
        PairParams::new(1.0, 1.0, 2.0 * PI * self.h_a, kappa, self.sigma)
            .expect("reduced groups were validated")
    }
}

pub fn to_reduced(p: &PairParams) -> ReducedParams {
    ReducedParams {
        h_a: p.h() * p.a,
        k_red: (p.kappa * p.a * p.a / p.d).powf(p.sigma),
        sigma: p.sigma,
    }
}

/// How a [`TimeGrid`] was generated.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Spacing {
    Linear,
    Log { points_per_decade: usize },
    Explicit,
}

/// Strictly increasing list of positive, finite times.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeGrid {
    times: Vec<f64>,
    spacing: Spacing,
}

impl TimeGrid {
    pub fn from_times(times: Vec<f64>) -> Result<Self> {
        Self::checked(times, Spacing::Explicit)
    }

    /// `t_start · 10^{k/ppd}` for `k = 0..=round(ppd · log10(t_end/t_start))`.
    pub fn log(t_start: f64, t_end: f64, points_per_decade: usize) -> Result<Self> {
        Self::check_range(t_start, t_end)?;
        if points_per_decade < 1 {
            return domain("points per decade must be at least 1");
        }
        let ppd = points_per_decade as f64;
        let steps = (ppd * (t_end / t_start).log10()).round() as usize;
        let times = (0..=steps).map(|k| t_start * 10f64.powf(k as f64 / ppd)).collect();
        Self::checked(times, Spacing::Log { points_per_decade })
    }

    /// `n ≥ 2` evenly spaced points from `t_start` to `t_end` inclusive.
    pub fn linear(t_start: f64, t_end: f64, n: usize) -> Result<Self> {
        Self::check_range(t_start, t_end)?;
        if n < 2 {
            return domain("a linear grid needs at least 2 points");
        }
        let step = (t_end - t_start) / (n - 1) as f64;
        let times = (0..n).map(|k| t_start + step * k as f64).collect();
        Self::checked(times, Spacing::Linear)
    }

    fn check_range(t_start: f64, t_end: f64) -> Result<()> {
        if !(t_start > 0.0 && t_start.is_finite() && t_end.is_finite() && t_start < t_end) {
            return domain(format!("need 0 < t_start < t_end, got [{t_start}, {t_end}]"));
        }
        Ok(())
    }

    fn checked(times: Vec<f64>, spacing: Spacing) -> Result<Self> {
        if times.is_empty() {
            return domain("time grid is empty");
        }
        if times.iter().any(|t| !(*t > 0.0 && t.is_finite())) {
            return domain("time grid entries must be positive and finite");
        }
        if times.windows(2).any(|w| w[1] <= w[0]) {
            return domain("time grid must be strictly increasing");
        }
        Ok(Self { times, spacing })
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn spacing(&self) -> Spacing {
        self.spacing
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }
}

/// Which route produced a survival value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Integral,
    Talbot,
    Stehfest,
    Asymptotic,
    Markovian,
}

impl Method {
    pub const ALL: [Method; 5] =
        [Method::Integral, Method::Talbot, Method::Stehfest, Method::Asymptotic, Method::Markovian];

    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Integral => "integral",
            Method::Talbot => "talbot",
            Method::Stehfest => "stehfest",
            Method::Asymptotic => "asymptotic",
            Method::Markovian => "markovian",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| Error::Domain(format!("unknown method '{s}'")))
    }
}

/// One evaluated point of `S(t|∗)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurvivalPoint {
    pub t: f64,
    pub s: f64,
    /// Absolute error estimate; NaN when the route has none (asymptotic laws).
    pub abs_err: f64,
    pub method: Method,
}

impl SurvivalPoint {
    /// `-err ≤ S ≤ 1 + err`. Points without an error estimate are not checked.
    pub fn within_bounds(&self) -> bool {
        if self.abs_err.is_nan() {
            return true;
        }
        self.s >= -self.abs_err && self.s <= 1.0 + self.abs_err
    }
}

/// Survival values on a grid together with the parameters that produced them.
#[derive(Debug, Clone, PartialEq)]
pub struct SurvivalCurve {
    pub params: PairParams,
    pub entries: Vec<SurvivalPoint>,
}

impl SurvivalCurve {
    pub fn values(&self) -> impl Iterator<Item = f64> + '_ {
        self.entries.iter().map(|e| e.s)
    }

    /// Largest absolute difference in S against another curve on the same grid.
    pub fn max_abs_diff(&self, other: &SurvivalCurve) -> f64 {
        self.entries.iter().zip(&other.entries).map(|(a, b)| (a.s - b.s).abs()).fold(0.0, f64::max)
    }
}
