//! Numerical tools for the single-photon Maxwell wave function.
//!
//! The photon wave function is the Riemann-Silberstein vector
//! `psi = (E + i s B)/sqrt(2)` where `s = +/-1` is the helicity. It obeys
//! `i d(psi)/dt = s c curl(psi)`, which this crate solves exactly per Fourier
//! mode ([`propagator::evolve_spectral`]) and cross-checks against an RK4
//! integration of the real Maxwell equations
//! ([`propagator::evolve_maxwell_real`]). The [`normalization`] module
//! synthesizes on-shell fields from momentum amplitudes with the `sqrt(E)`
//! weight so that `int psi*.psi d^3r` is the mean photon energy, and
//! [`wigner`] models transverse Wigner tomography with displaced parity.

pub mod cli;
mod error;
pub mod export;
pub mod fields;
pub mod normalization;
pub mod propagator;
pub mod pwf;
pub mod spectral;
pub mod states;
pub mod wigner;

pub use error::{Error, Result};
pub use fields::{ComplexVectorField, Grid3, Helicity, RealFieldPair, Space, Units};
