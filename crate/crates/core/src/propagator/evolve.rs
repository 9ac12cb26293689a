use num_complex::Complex64;

use super::basis::helicity_basis;
use crate::error::Result;
use crate::fields::vec3;
use crate::fields::{ComplexVectorField, Space};

/// Exact evolution under `i d(psi)/dt = s c curl(psi)`.
///
/// Each mode is split as `a+ e+ + a- e- + aL khat`; the helicity amplitudes
/// pick up `exp(-/+ i s c |k| t)` and `aL` is left alone. Negative `t` runs
/// backwards.
pub fn evolve_spectral(psi0: &ComplexVectorField, t: f64) -> Result<ComplexVectorField> {
    psi0.require(Space::Coordinate)?;
    if t == 0.0 {
        return Ok(psi0.clone());
    }
    let mut hat = psi0.to_momentum();
    advance_modes(&mut hat, t);
    let mut out = hat.to_coordinate();
    out.set_time(psi0.time() + t);
    Ok(out)
}

/// Same as [`evolve_spectral`] but on a momentum-space field, without transforms.
pub fn evolve_modes(psi_k: &ComplexVectorField, t: f64) -> Result<ComplexVectorField> {
    psi_k.require(Space::Momentum)?;
    let mut hat = psi_k.clone();
    advance_modes(&mut hat, t);
    hat.set_time(psi_k.time() + t);
    Ok(hat)
}

fn advance_modes(hat: &mut ComplexVectorField, t: f64) {
    let basis = helicity_basis(hat.grid());
    let omega_sign = hat.helicity().sign() * hat.units().c() * t;
    for (p, triad) in basis.iter().enumerate() {
        let Some(triad) = triad else { continue };
        let v = hat.at(p);
        let (plus, minus, _) = triad.decompose(&v);
        let phase = omega_sign * triad.k_norm;
        // add the change only, so the longitudinal part is untouched bit-for-bit
        let dp = plus * (Complex64::from_polar(1.0, -phase) - 1.0);
        let dm = minus * (Complex64::from_polar(1.0, phase) - 1.0);
        let delta = triad.compose(dp, dm, Complex64::new(0.0, 0.0));
        hat.set(p, vec3::add(&v, &delta));
    }
}

/// `sum |psi|^2 dV` for a coordinate-space field.
pub fn energy(psi: &ComplexVectorField) -> Result<f64> {
    psi.require(Space::Coordinate)?;
    let sum: f64 = psi.data().iter().map(|z| z.norm_sqr()).sum();
    Ok(sum * psi.grid().cell_volume())
}
