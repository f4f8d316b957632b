//! Modified Bessel functions I₀, I₁, K₀, K₁.
//!
//! Everything here is generic over [`Scalar`], so the same code runs on `f64`
//! (real nodes, never touching complex arithmetic) and on `Complex64`.
//! Internally the functions are exponentially scaled: `e^{-z} I_n(z)` and
//! `e^{z} K_n(z)`, which keeps the products `I·K` and the ratio `K₀/K₁`
//! representable for any argument magnitude.
//!
//! Algorithm split:
//! - K: power series for |z| ≤ 2, Steed's continued fraction (CF2) up to
//!   |z| = 25, Hankel asymptotic expansion beyond.
//! - I: power series for |z| ≤ 1, Miller backward recurrence normalised by
//!   `e^z = I₀ + 2 Σ I_k` up to |z| = 30, asymptotic expansion beyond.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Sub};

use num_complex::{Complex64, ComplexFloat};

use super::gamma::EULER_GAMMA;

const EPS: f64 = 1e-17;
const K_SERIES_MAX: f64 = 2.0;
const K_ASYMPTOTIC_MIN: f64 = 25.0;
const I_SERIES_MAX: f64 = 1.0;
const I_ASYMPTOTIC_MIN: f64 = 30.0;
const MAX_ITER: usize = 20_000;

/// Arithmetic needed by the Bessel kernels; implemented by `f64` and `Complex64`.
pub trait Scalar:
    ComplexFloat<Real = f64>
    + From<f64>
    + Add<f64, Output = Self>
    + Sub<f64, Output = Self>
    + Mul<f64, Output = Self>
    + Div<f64, Output = Self>
    + Debug
    + Send
    + Sync
{
    /// True when the value has no imaginary component (always for `f64`).
    fn is_real_axis(self) -> bool;
    /// Multiplication by the imaginary unit. Has no meaning on the real line,
    /// where it yields NaN; callers check [`Scalar::is_real_axis`] first.
    fn times_i(self) -> Self;

    fn lift(x: f64) -> Self {
        <Self as From<f64>>::from(x)
    }

    fn modulus(self) -> f64 {
        ComplexFloat::abs(self)
    }
}

impl Scalar for f64 {
    fn is_real_axis(self) -> bool {
        true
    }
    fn times_i(self) -> Self {
        f64::NAN
    }
}

impl Scalar for Complex64 {
    fn is_real_axis(self) -> bool {
        self.im == 0.0
    }
    fn times_i(self) -> Self {
        Complex64::new(-self.im, self.re)
    }
}

/// `(e^{z} K₀(z), e^{z} K₁(z))`.
pub(crate) fn k01_scaled<T: Scalar>(z: T) -> (T, T) {
    let r = z.modulus();
    if r <= K_SERIES_MAX {
        let (k0, k1) = k01_series(z);
        let e = z.exp();
        (k0 * e, k1 * e)
    } else if r < K_ASYMPTOTIC_MIN {
        k01_steed(z)
    } else {
        (k_asymptotic(0.0, z), k_asymptotic(4.0, z))
    }
}

/// `(e^{-z} I₀(z), e^{-z} I₁(z))`.
pub(crate) fn i01_scaled<T: Scalar>(z: T) -> (T, T) {
    let r = z.modulus();
    let (i0, i1) = if r <= I_SERIES_MAX {
        let (i0, i1) = i01_series(z);
        let e = (-z).exp();
        (i0 * e, i1 * e)
    } else if r < I_ASYMPTOTIC_MIN {
        i01_miller(z)
    } else {
        (i_asymptotic(0.0, z), i_asymptotic(4.0, z))
    };
    if z.is_real_axis() {
        (T::lift(i0.re()), T::lift(i1.re()))
    } else {
        (i0, i1)
    }
}

fn i01_series<T: Scalar>(z: T) -> (T, T) {
    let y = z * z * 0.25;
    let mut t0 = T::one();
    let mut t1 = T::one();
    let mut s0 = t0;
    let mut s1 = t1;
    for k in 1..MAX_ITER {
        let kf = k as f64;
        t0 = t0 * y / (kf * kf);
        t1 = t1 * y / (kf * (kf + 1.0));
        s0 = s0 + t0;
        s1 = s1 + t1;
        if t0.modulus() <= EPS * s0.modulus() && t1.modulus() <= EPS * s1.modulus() {
            break;
        }
    }
    (s0, z * 0.5 * s1)
}

/// Unscaled K₀, K₁ from the ascending series (small |z| only).
fn k01_series<T: Scalar>(z: T) -> (T, T) {
    let y = z * z * 0.25;
    let log_half = (z * 0.5).ln();
    let mut t0 = T::one(); // y^k / (k!)^2
    let mut t1 = T::one(); // y^k / (k! (k+1)!)
    let mut i0 = t0;
    let mut i1s = t1;
    let mut h0 = T::zero(); // Σ H_k y^k/(k!)^2
    let mut h1 = t1 * (1.0 - 2.0 * EULER_GAMMA); // Σ [ψ(k+1)+ψ(k+2)] y^k/(k!(k+1)!)
    let mut harmonic = 0.0;
    for k in 1..MAX_ITER {
        let kf = k as f64;
        harmonic += 1.0 / kf;
        t0 = t0 * y / (kf * kf);
        t1 = t1 * y / (kf * (kf + 1.0));
        i0 = i0 + t0;
        i1s = i1s + t1;
        h0 = h0 + t0 * harmonic;
        h1 = h1 + t1 * (2.0 * (harmonic - EULER_GAMMA) + 1.0 / (kf + 1.0));
        if t0.modulus() <= EPS * i0.modulus() && t1.modulus() <= EPS * i1s.modulus() {
            break;
        }
    }
    let i1 = z * 0.5 * i1s;
    let k0 = h0 - (log_half + EULER_GAMMA) * i0;
    let k1 = z.recip() + log_half * i1 - z * 0.25 * h1;
    (k0, k1)
}

/// Steed's algorithm: CF2 with Temme's normalisation, order 0 and 1.
fn k01_steed<T: Scalar>(z: T) -> (T, T) {
    let a1 = 0.25;
    let mut b = (z + 1.0) * 2.0;
    let mut d = b.recip();
    let mut h = d;
    let mut delh = d;
    let mut q1 = T::zero();
    let mut q2 = T::one();
    let mut q = T::lift(a1);
    let mut c = a1;
    let mut a = -a1;
    let mut s = q * delh + 1.0;
    for i in 1..MAX_ITER {
        let fi = i as f64;
        a -= 2.0 * fi;
        c = -a * c / (fi + 1.0);
        let qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q = q + qnew * c;
        b = b + 2.0;
        d = (b + d * a).recip();
        delh = (b * d - 1.0) * delh;
        h = h + delh;
        let dels = q * delh;
        s = s + dels;
        if dels.modulus() < EPS * s.modulus() {
            break;
        }
    }
    let h = h * a1;
    let k0 = (z * 2.0).recip().sqrt() * PI.sqrt() / s;
    let k1 = k0 * (z + 0.5 - h) / z;
    (k0, k1)
}

/// Terms of `Σ a_k(ν)/z^k` with alternating sign when `alternate` is set.
/// `mu` is 4ν². Stops at convergence or when terms begin to grow.
fn hankel_sum<T: Scalar>(mu: f64, z: T, alternate: bool) -> T {
    let mut term = T::one();
    let mut sum = T::one();
    let mut last = f64::INFINITY;
    for k in 1..200 {
        let kf = k as f64;
        let odd = 2.0 * kf - 1.0;
        let mut factor = (mu - odd * odd) / (8.0 * kf);
        if alternate {
            factor = -factor;
        }
        term = term * factor / z;
        let size = term.modulus();
        if size > last {
            break;
        }
        sum = sum + term;
        if size <= EPS * sum.modulus() {
            break;
        }
        last = size;
    }
    sum
}

fn k_asymptotic<T: Scalar>(mu: f64, z: T) -> T {
    (z * 2.0).recip().sqrt() * PI.sqrt() * hankel_sum(mu, z, false)
}

fn i_asymptotic<T: Scalar>(mu: f64, z: T) -> T {
    let pref = (z * (2.0 * PI)).recip().sqrt();
    let main = pref * hankel_sum(mu, z, true);
    if z.is_real_axis() {
        return main;
    }
    // Subdominant Stokes term, essential near the imaginary axis:
    // ± i e^{± iνπ} e^{-2z} / sqrt(2πz) Σ a_k/z^k   (scaled by e^{-z}).
    let upper = z.im() >= 0.0;
    let order_one = mu != 0.0;
    let phase = if order_one { -1.0 } else { 1.0 }; // e^{±iνπ} for ν ∈ {0,1}
    let sign = if upper { 1.0 } else { -1.0 };
    let stokes = (-z * 2.0).exp() * pref * hankel_sum(mu, z, false) * (sign * phase);
    main + stokes.times_i()
}

/// Miller's backward recurrence for I_k, normalised by e^{z}.
fn i01_miller<T: Scalar>(z: T) -> (T, T) {
    let r = z.modulus();
    let n_start = (r + 12.0 * r.sqrt() + 40.0).ceil() as usize;
    let two_over_z = z.recip() * 2.0;
    let mut next = T::zero(); // I_{k+1}
    let mut cur = T::lift(1e-30); // I_k
    let mut sum = T::zero(); // Σ_{j≥1} I_j
    for k in (1..=n_start).rev() {
        let prev = two_over_z * cur * (k as f64) + next;
        sum = sum + cur;
        next = cur;
        cur = prev;
        if cur.modulus() > 1e250 {
            cur = cur * 1e-250;
            next = next * 1e-250;
            sum = sum * 1e-250;
        }
    }
    let total = cur + sum * 2.0;
    (cur / total, next / total)
}

/// Principal-branch argument check shared by the public wrappers.
pub(crate) fn within_sector(z: Complex64) -> bool {
    z.arg().modulus() < FRAC_PI_2 + PI / 4.0
}
