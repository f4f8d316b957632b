//! Survival probability of a reversibly bound pair in two dimensions when the
//! bound-state residence time is heavy-tailed.
//!
//! A pair starts bound, dissociates after a residence time with transform
//! `ψ̃(s) = 1/(1 + (s/κ)^σ)`, diffuses with relative diffusion constant `D`
//! and rebinds at distance `a` with rate constant `κ_a`. [`survival`]
//! evaluates `S(t)`, the probability of being unbound at `t`, as a real
//! Bessel-function integral; [`inversion`] gets the same curve from the
//! Laplace transforms in [`laplace`]; [`asymptotics`] gives the long-time laws.
//!
//! ```
//! use backreaction::model::make_params;
//! use backreaction::survival::{survival_nonmarkov, QuadratureSpec};
//!
//! let params = make_params(1.0, 1.0, 1.0, 1.0, 0.5)?;
//! let v = survival_nonmarkov(10.0, &params, &QuadratureSpec::default())?;
//! assert!(v.s > 0.0 && v.s < 1.0 && v.abs_err < 1e-9);
//! # Ok::<(), backreaction::Error>(())
//! ```
//!
//! The guide in `book/` walks through each part; its code blocks run as
//! doc-tests of this crate.

pub mod asymptotics;
pub mod error;
pub mod inversion;
pub mod laplace;
pub mod model;
mod quadrature;
pub mod residence;
pub mod special;
pub mod survival;

pub use error::{Error, Result};

// Book chapters compiled as doc-tests so the guide cannot drift from the API.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/parameters.md")]
    mod parameters {}
    #[doc = include_str!("../../../book/src/survival.md")]
    mod survival {}
    #[doc = include_str!("../../../book/src/laplace.md")]
    mod laplace {}
    #[doc = include_str!("../../../book/src/asymptotics.md")]
    mod asymptotics {}
    #[doc = include_str!("../../../book/src/residence.md")]
    mod residence {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
