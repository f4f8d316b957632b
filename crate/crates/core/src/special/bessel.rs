//! Bessel functions of the first and second kind, orders 0 and 1, real argument.
//!
//! Below x = 2 the ascending series are summed directly. Above, the Hankel
//! functions are obtained from the modified Bessel function on the negative
//! imaginary axis, `H_ν^(1)(x) = -(2i/π) e^{-iνπ/2} K_ν(-ix)`, which yields
//! J and Y together with absolute accuracy near the machine epsilon times the
//! envelope `sqrt(2/(πx))`.

use std::f64::consts::{FRAC_2_PI, PI};

use num_complex::Complex64;

use super::gamma::EULER_GAMMA;
use super::modified::k01_scaled;

const SERIES_MAX: f64 = 2.0;

/// `J₀, J₁, Y₀, Y₁` at `x > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Cylinder {
    pub j0: f64,
    pub j1: f64,
    pub y0: f64,
    pub y1: f64,
}

pub(crate) fn cylinder(x: f64) -> Cylinder {
    if x < SERIES_MAX {
        series(x)
    } else {
        hankel(x)
    }
}

fn series(x: f64) -> Cylinder {
    let y = -0.25 * x * x;
    let mut t0 = 1.0; // y^k/(k!)^2
    let mut t1 = 1.0; // y^k/(k!(k+1)!)
    let mut j0 = t0;
    let mut j1s = t1;
    let mut h0 = 0.0;
    let mut h1 = 1.0 - 2.0 * EULER_GAMMA;
    let mut harmonic = 0.0;
    for k in 1..100 {
        let kf = k as f64;
        harmonic += 1.0 / kf;
        t0 *= y / (kf * kf);
        t1 *= y / (kf * (kf + 1.0));
        j0 += t0;
        j1s += t1;
        h0 += t0 * harmonic;
        h1 += t1 * (2.0 * (harmonic - EULER_GAMMA) + 1.0 / (kf + 1.0));
        if t0.abs() < 1e-17 * j0.abs() && t1.abs() < 1e-17 * j1s.abs() {
            break;
        }
    }
    let j1 = 0.5 * x * j1s;
    let log_half = (0.5 * x).ln();
    let y0 = FRAC_2_PI * ((log_half + EULER_GAMMA) * j0 - h0);
    let y1 = -FRAC_2_PI / x + FRAC_2_PI * log_half * j1 - x / (2.0 * PI) * h1;
    Cylinder { j0, j1, y0, y1 }
}

fn hankel(x: f64) -> Cylinder {
    let z = Complex64::new(0.0, -x);
    let (k0s, k1s) = k01_scaled(z);
    // K(z) = e^{-z} * scaled, and e^{-z} = e^{ix} has unit modulus.
    let phase = Complex64::from_polar(1.0, x);
    let k0 = k0s * phase;
    let k1 = k1s * phase;
    // H0 = -(2i/π) K0(-ix),  H1 = -(2/π) K1(-ix)
    let h0 = Complex64::new(0.0, -FRAC_2_PI) * k0;
    let h1 = -FRAC_2_PI * k1;
    Cylinder {
        j0: h0.re,
        j1: h1.re,
        y0: h0.im,
        y1: h1.im,
    }
}
