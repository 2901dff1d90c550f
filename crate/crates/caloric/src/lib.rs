//! Numerical toolkit for entire solutions of the heat equation
//! `∂_t F = ∂_z² F` in two complex variables.
//!
//! The crate is organized around five pillars:
//!
//! * [`poly`] — exact caloric polynomials `P_m(t, z)`, their Hermite bridge,
//!   root spectra and interlacing.
//! * [`series`] — entire functions as Taylor-coefficient generators, the
//!   coefficientwise absolute-value (sharp) operator, Taylor recentering and
//!   canonical products.
//! * [`growth`] — order/type estimation from coefficients, even/odd
//!   derivative-subsequence statistics, and the caloric t-order/t-type
//!   transfer laws.
//! * [`propagate`] — heat propagators: series, Gauss–Hermite kernel
//!   quadrature, caloric-polynomial combinations and closed-form special
//!   solutions, all wrapped in evaluatable [`propagate::HeatSolution`]
//!   handles.
//! * [`zeros`] — polynomial root finding, continuation of zeros along
//!   complex t-paths, the zero-dynamics ODE systems and ramification
//!   (multiple-zero) scanning.
//! * [`debruijn`] — the super-exponentially decaying kernel Φ, the de Bruijn
//!   function H(t, z), its real zeros and the repulsion law of their motion.
//!
//! All values are immutable after construction and all operations are pure,
//! so everything here can be shared freely across threads.

pub mod debruijn;
pub mod growth;
pub mod poly;
pub mod propagate;
pub mod quad;
pub mod rootfind;
pub mod series;
pub mod special;
pub mod zeros;

mod error;

pub use error::{Error, Result};

/// Double-precision complex number used throughout the crate.
pub type C64 = num_complex::Complex64;

/// Even/odd selector for derivative subsequences and series splits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

