use std::f64::consts::PI;

use crate::error::{domain, Result};

/// Euler-Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

// Lanczos approximation, g = 7, nine terms.
const LANCZOS_G: f64 = 7.0;
#[allow(clippy::excessive_precision)]
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Gamma function for real arguments.
///
/// Uses the reflection formula below 1/2. Poles at the nonpositive integers
/// are rejected; arguments past ~171.6 overflow to `+inf`.
pub fn gamma_fn(x: f64) -> Result<f64> {
    if !x.is_finite() {
        return domain(format!("gamma: non-finite argument {x}"));
    }
    if x <= 0.0 && x.fract() == 0.0 {
        return domain(format!("gamma: pole at {x}"));
    }
    Ok(gamma_unchecked(x))
}

pub(crate) fn gamma_unchecked(x: f64) -> f64 {
    if x < 0.5 {
        return PI / ((PI * x).sin() * gamma_unchecked(1.0 - x));
    }
    let x = x - 1.0;
    let mut acc = LANCZOS[0];
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        acc += c / (x + i as f64);
    }
    let t = x + LANCZOS_G + 0.5;
    // split the power so t^(x+1/2) does not overflow before the result does
    let half = t.powf(0.5 * (x + 0.5));
    (2.0 * PI).sqrt() * half * (-t).exp() * half * acc
}

/// Digamma function Ψ(x) = Γ'(x)/Γ(x) for x > 0.
pub fn digamma(x: f64) -> Result<f64> {
    if x.is_nan() || x <= 0.0 || !x.is_finite() {
        return domain(format!("digamma: argument must be positive and finite, got {x}"));
    }
    let mut x = x;
    let mut shift = 0.0;
    while x < 10.0 {
        shift -= 1.0 / x;
        x += 1.0;
    }
    let inv2 = 1.0 / (x * x);
    // Bernoulli tail: -1/12, 1/120, -1/252, 1/240, -1/132, 691/32760, -1/12
    let tail = inv2
        * (-1.0 / 12.0
            + inv2
                * (1.0 / 120.0
                    + inv2
                        * (-1.0 / 252.0
                            + inv2
                                * (1.0 / 240.0
                                    + inv2 * (-1.0 / 132.0 + inv2 * (691.0 / 32_760.0 - inv2 / 12.0))))));
    Ok(shift + x.ln() - 0.5 / x + tail)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn gamma_known_values() {
        assert_relative_eq!(gamma_fn(0.5).unwrap(), PI.sqrt(), max_relative = 1e-14);
        assert_relative_eq!(gamma_fn(1.0).unwrap(), 1.0, max_relative = 1e-14);
        assert_relative_eq!(gamma_fn(5.0).unwrap(), 24.0, max_relative = 1e-14);
        assert_relative_eq!(gamma_fn(-0.5).unwrap(), -2.0 * PI.sqrt(), max_relative = 1e-14);
        assert_relative_eq!(gamma_fn(0.25).unwrap(), 3.625_609_908_221_908, max_relative = 1e-13);
    }

    #[test]
    fn gamma_large_argument_follows_factorials() {
        let mut fact = 1.0_f64;
        for n in 1..150 {
            fact *= n as f64;
            assert_relative_eq!(gamma_fn(n as f64 + 1.0).unwrap(), fact, max_relative = 1e-12);
        }
    }

    #[test]
    fn gamma_poles_rejected() {
        assert!(gamma_fn(0.0).is_err());
        assert!(gamma_fn(-3.0).is_err());
        assert!(gamma_fn(f64::NAN).is_err());
    }

    #[test]
    fn digamma_anchor_values() {
        assert!((digamma(1.0).unwrap() + 0.577_215_664_9).abs() < 1e-10);
        assert_relative_eq!(digamma(1.0).unwrap(), -EULER_GAMMA, max_relative = 1e-14);
        let half = -EULER_GAMMA - 2.0 * 2f64.ln();
        assert_relative_eq!(digamma(0.5).unwrap(), half, max_relative = 1e-14);
        assert!(digamma(0.0).is_err());
        assert!(digamma(-1.0).is_err());
    }

    #[test]
    fn digamma_recurrence() {
        for &x in &[0.05, 0.3, 0.75, 2.5, 13.0, 400.0] {
            let lhs = digamma(x + 1.0).unwrap();
            let rhs = digamma(x).unwrap() + 1.0 / x;
            assert_relative_eq!(lhs, rhs, max_relative = 1e-13);
        }
    }
}
