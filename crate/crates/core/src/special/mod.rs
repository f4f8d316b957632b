//! Special functions: cylinder and modified Bessel functions of order 0 and 1,
//! Gamma, digamma and the Mittag-Leffler function on the negative real axis.

mod bessel;
mod gamma;
mod mittag_leffler;
pub(crate) mod modified;

use num_complex::Complex64;

use crate::error::{domain, Error, Result};

pub(crate) use bessel::{cylinder, Cylinder};
pub use gamma::{digamma, gamma_fn, EULER_GAMMA};
pub use mittag_leffler::mittag_leffler;
pub use modified::Scalar;

/// Complex number with principal-branch `powf`, `sqrt` and `ln`
/// (argument in (−π, π], cut along the negative real axis).
pub type ComplexValue = Complex64;

/// Order of a Bessel function. Only orders 0 and 1 occur in the model.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Order {
    Zero,
    One,
}

fn check_real(name: &str, x: f64) -> Result<()> {
    if x.is_nan() || x <= 0.0 || !x.is_finite() {
        return domain(format!("{name}: argument must be positive and finite, got {x}"));
    }
    Ok(())
}

fn check_complex(name: &str, z: ComplexValue) -> Result<()> {
    if !z.re.is_finite() || !z.im.is_finite() {
        return domain(format!("{name}: non-finite argument {z}"));
    }
    if z == ComplexValue::new(0.0, 0.0) {
        return domain(format!("{name}: singular at z = 0"));
    }
    if !modified::within_sector(z) {
        return domain(format!("{name}: |arg z| too large for {z}"));
    }
    Ok(())
}

fn finite(name: &str, z: ComplexValue) -> Result<ComplexValue> {
    if z.re.is_nan() || z.im.is_nan() {
        Err(Error::Accuracy(format!("{name}: evaluation did not converge")))
    } else {
        Ok(z)
    }
}

/// Bessel function of the first kind, `J₀(x)` or `J₁(x)`, for `x > 0`.
pub fn bessel_j(order: Order, x: f64) -> Result<f64> {
    check_real("bessel_j", x)?;
    let c = cylinder(x);
    Ok(match order {
        Order::Zero => c.j0,
        Order::One => c.j1,
    })
}

/// Bessel function of the second kind, `Y₀(x)` or `Y₁(x)`, for `x > 0`.
pub fn bessel_y(order: Order, x: f64) -> Result<f64> {
    check_real("bessel_y", x)?;
    let c = cylinder(x);
    Ok(match order {
        Order::Zero => c.y0,
        Order::One => c.y1,
    })
}

/// Modified Bessel function of the first kind on the sector |arg z| < 3π/4.
///
/// Overflows to infinity for large positive real part, as `I_n` itself does.
pub fn bessel_i(order: Order, z: ComplexValue) -> Result<ComplexValue> {
    check_complex("bessel_i", z)?;
    let (i0, i1) = modified::i01_scaled(z);
    let v = match order {
        Order::Zero => i0,
        Order::One => i1,
    };
    finite("bessel_i", v * scale_exp(z))
}

/// Modified Bessel function of the second kind on the sector |arg z| < 3π/4.
pub fn bessel_k(order: Order, z: ComplexValue) -> Result<ComplexValue> {
    check_complex("bessel_k", z)?;
    let (k0, k1) = modified::k01_scaled(z);
    let v = match order {
        Order::Zero => k0,
        Order::One => k1,
    };
    finite("bessel_k", v * scale_exp(-z))
}

// e^z without spurious imaginary dust on the real axis
fn scale_exp(z: ComplexValue) -> ComplexValue {
    if z.im == 0.0 {
        ComplexValue::new(z.re.exp(), 0.0)
    } else {
        z.exp()
    }
}
