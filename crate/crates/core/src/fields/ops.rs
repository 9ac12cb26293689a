use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;

use super::field::{ComplexVectorField, Helicity, RealFieldPair, Space};
use super::vec3::{self, CZERO};
use crate::error::Result;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// `psi = (E + i s B)/sqrt(2)` with `s` the helicity sign.
pub fn riemann_silberstein(fields: &RealFieldPair, helicity: Helicity) -> ComplexVectorField {
    let s = helicity.sign();
    let data = fields
        .e_field()
        .iter()
        .zip(fields.b_field())
        .map(|(&e, &b)| Complex64::new(e, s * b) * FRAC_1_SQRT_2)
        .collect();
    let mut psi = ComplexVectorField::from_data(
        fields.grid().clone(),
        fields.units(),
        data,
        helicity,
        Space::Coordinate,
    )
    .expect("pair and field share a grid");
    psi.set_time(fields.time());
    psi
}

/// Inverse of [`riemann_silberstein`]: `E = sqrt(2) Re psi`, `B = s sqrt(2) Im psi`.
pub fn split_real_imag(psi: &ComplexVectorField) -> Result<RealFieldPair> {
    psi.require(Space::Coordinate)?;
    let s = psi.helicity().sign();
    let root2 = std::f64::consts::SQRT_2;
    let e = psi.data().iter().map(|z| root2 * z.re).collect();
    let b = psi.data().iter().map(|z| s * root2 * z.im).collect();
    let mut pair = RealFieldPair::from_data(psi.grid().clone(), psi.units(), e, b)?;
    pair.set_time(psi.time());
    Ok(pair)
}

/// Split a momentum-space field into transverse and longitudinal parts.
///
/// For `k != 0`, `psi_L = k^(k^.psi)` and `psi_T = psi - psi_L`. Modes with a
/// vanishing wavevector belong wholly to the longitudinal part.
pub fn transverse_project(
    psi_k: &ComplexVectorField,
) -> Result<(ComplexVectorField, ComplexVectorField)> {
    psi_k.require(Space::Momentum)?;
    let grid = psi_k.grid();
    let mut transverse = psi_k.clone();
    let mut longitudinal = psi_k.clone();
    for p in 0..grid.len() {
        let v = psi_k.at(p);
        let k = grid.wavevector(p);
        let kn = vec3::norm(&k);
        if kn == 0.0 {
            transverse.set(p, CZERO);
            continue;
        }
        let khat = k.map(|x| x / kn);
        let along = vec3::rdot(&khat, &v);
        let l = vec3::scale(&vec3::complexify(&khat), along);
        transverse.set(p, vec3::sub(&v, &l));
        longitudinal.set(p, l);
    }
    Ok((transverse, longitudinal))
}

/// Transverse part of a coordinate-space field.
pub fn transverse_part(psi: &ComplexVectorField) -> Result<ComplexVectorField> {
    psi.require(Space::Coordinate)?;
    let (t, _) = transverse_project(&psi.to_momentum())?;
    let mut out = t.to_coordinate();
    out.set_time(psi.time());
    Ok(out)
}

/// `curl psi` as the inverse transform of `i k x psi_hat`.
///
/// The output lives in the same space as the input.
pub fn curl_spectral(psi: &ComplexVectorField) -> ComplexVectorField {
    let hat = psi.to_momentum();
    let mut out = hat.clone();
    apply_curl_in_place(&hat, &mut out);
    match psi.space() {
        Space::Momentum => out,
        Space::Coordinate => out.to_coordinate(),
    }
}

fn apply_curl_in_place(hat: &ComplexVectorField, out: &mut ComplexVectorField) {
    let grid = hat.grid();
    for p in 0..grid.len() {
        let k = grid.wavevector(p);
        let v = vec3::rcross(&k, &hat.at(p));
        out.set(p, vec3::scale(&v, I));
    }
}

/// Spectral divergence per mode: `i k . psi_hat`, returned in momentum space.
pub fn divergence_spectrum(psi: &ComplexVectorField) -> Vec<Complex64> {
    let hat = psi.to_momentum();
    let grid = hat.grid();
    (0..grid.len())
        .map(|p| I * vec3::rdot(&grid.wavevector(p), &hat.at(p)))
        .collect()
}

/// `max_k |k . psi_hat(k)| / max_k |psi_hat(k)|` for a momentum-space field.
pub fn transversality_residual(psi_k: &ComplexVectorField) -> Result<f64> {
    psi_k.require(Space::Momentum)?;
    let grid = psi_k.grid();
    let mut worst = 0.0f64;
    let mut scale = 0.0f64;
    for p in 0..grid.len() {
        let v = psi_k.at(p);
        worst = worst.max(vec3::rdot(&grid.wavevector(p), &v).norm());
        scale = scale.max(vec3::cnorm_sqr(&v).sqrt());
    }
    if scale == 0.0 {
        return Ok(0.0);
    }
    Ok(worst / scale)
}
