//! Relativistic (Klein-Gordon) hydrogen in a space-time noncommutative
//! background.
//!
//! The library computes the exact Klein-Gordon Coulomb spectrum, the deformed
//! Coulomb potential induced by a space-time noncommutativity parameter theta
//! (conjugate pair time/polar-axis), the perturbative level shifts the
//! deformation produces at second order in theta, and the phenomenological
//! bound on theta that follows from the measured 1S-2S transition precision.
//!
//! Layout:
//! - [`constants`]: CODATA 2018 inputs and unit conversions (MeV internal).
//! - [`special`]: log-gamma, Laguerre/confluent-hypergeometric kernels, and
//!   Gauss-Laguerre quadrature (Golub-Welsch) with order escalation.
//! - [`hydrogen`]: bound-state quantum numbers, energies, and radial
//!   wavefunctions.
//! - [`matrix_elements`]: angular cos/cos^2 selection rules and radial
//!   inverse-power moments (closed form and quadrature).
//! - [`perturbation`]: the deformed potential, the order-theta and
//!   order-theta^2 perturbing operators, and level-shift evaluation in two
//!   modes (literal transcription vs corrected second-order theory).
//! - [`phenomenology`]: 1S-2S transition correction and the theta bound.
//! - [`oracles`]: independent cross-check routes (spherical-harmonic
//!   quadrature, series evaluation of radial integrals) used by tests and the
//!   `selfcheck` command.
//! - [`report`]: CLI entry points and JSON/CSV/text rendering.

pub mod constants;
pub mod error;
pub mod hydrogen;
pub mod matrix_elements;
pub mod oracles;
pub mod perturbation;
pub mod phenomenology;
pub mod report;
pub mod special;

pub use error::{Error, Result};
