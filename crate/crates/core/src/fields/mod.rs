//! Grids, Riemann-Silberstein fields, spectral curl and the
//! transverse/longitudinal split.

mod field;
mod grid;
mod ops;
pub mod vec3;

pub use field::{ComplexVectorField, Helicity, RealFieldPair, Space};
pub use grid::{Grid3, Units};
pub use ops::{
    curl_spectral, divergence_spectrum, riemann_silberstein, split_real_imag, transversality_residual,
    transverse_part, transverse_project,
};
