//! Transverse Wigner functions and the displaced-parity measurement model,
//! for single photons and photon pairs.

mod measurement;
mod state;
mod transform;
mod two_photon;

pub use measurement::{
    displace, displace_adjoint, displaced_parity, is_lattice_aligned, parity_2d, sagnac_count_rate,
    PhaseSpacePoint, SagnacReading,
};
pub use state::{Grid1, TransverseState, TwoPhotonState};
pub use transform::{wigner_1d, wigner_2d, wigner_at, WignerGrid, IMAG_RESIDUE_TOL};
pub use two_photon::{
    factorization_residual, joint_wigner_two_photon, schmidt_decomposition, two_photon_coincidence_rate,
    CoincidenceReading, Schmidt,
};
