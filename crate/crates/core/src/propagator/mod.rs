//! Time evolution of the photon wave function and the real-field oracle.

mod basis;
mod evolve;
mod stepper;

pub use basis::{helicity_basis, HelicityBasis, Triad};
pub use evolve::{energy, evolve_modes, evolve_spectral};
pub use stepper::{evolve_maxwell_real, Method, StepperConfig};
