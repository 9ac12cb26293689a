use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::measurement::{displaced_parity, PhaseSpacePoint};
use super::state::{TransverseState, TwoPhotonState};
use super::transform::{wigner_1d, wigner_nd, WignerGrid};
use crate::error::{Error, Result};

/// `W(x1, p1, x2, p2)` with one lag variable per photon.
pub fn joint_wigner_two_photon(state: &TwoPhotonState) -> Result<WignerGrid> {
    wigner_nd(state.as_transverse())
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoincidenceReading {
    /// `<psi| D1 Pi1 D1^dagger (x) D2 Pi2 D2^dagger |psi>`.
    pub bracket: Complex64,
    /// `(1 + Re bracket)/2`.
    pub rate: f64,
    /// `Re bracket / (pi hbar)^2`, the joint Wigner value it implies.
    pub derived_w: f64,
}

/// Product of the two single-photon displaced parities.
pub fn two_photon_coincidence_rate(
    state: &TwoPhotonState,
    pt1: &PhaseSpacePoint,
    pt2: &PhaseSpacePoint,
) -> Result<CoincidenceReading> {
    if pt1.ndim() != 1 || pt2.ndim() != 1 {
        return Err(Error::param("point", "each photon takes a one-axis phase-space point"));
    }
    let joint = PhaseSpacePoint::new(vec![pt1.x0[0], pt2.x0[0]], vec![pt1.p0[0], pt2.p0[0]])?;
    let bracket = displaced_parity(state.as_transverse(), &joint)?;
    let hbar = state.as_transverse().hbar();
    Ok(CoincidenceReading {
        bracket,
        rate: 0.5 * (1.0 + bracket.re),
        derived_w: bracket.re / (PI * hbar).powi(2),
    })
}

/// Schmidt decomposition `psi = sum_k s_k phi_k(x1) chi_k(x2)`.
#[derive(Clone, Debug)]
pub struct Schmidt {
    /// Schmidt coefficients, descending, `sum s_k^2 = 1` for a normalized state.
    pub coefficients: Vec<f64>,
    pub first: Vec<TransverseState>,
    pub second: Vec<TransverseState>,
}

impl Schmidt {
    /// `1 / sum_k s_k^4`; equals one exactly for product states.
    pub fn schmidt_number(&self) -> f64 {
        let total: f64 = self.coefficients.iter().map(|s| s * s).sum();
        1.0 / self
            .coefficients
            .iter()
            .map(|s| (s * s / total).powi(2))
            .sum::<f64>()
    }
}

pub fn schmidt_decomposition(state: &TwoPhotonState) -> Result<Schmidt> {
    let s = state.as_transverse();
    s.require_nonzero()?;
    let (a1, a2) = (s.axes()[0], s.axes()[1]);
    let (n1, n2) = (a1.len(), a2.len());
    let root = s.cell().sqrt();
    let m = DMatrix::from_fn(n1, n2, |i, j| s.amplitude()[i * n2 + j] * root);
    let svd = m.svd(true, true);
    let u = svd.u.ok_or_else(|| Error::InvariantBreach("SVD returned no U".into()))?;
    let v_t = svd.v_t.ok_or_else(|| Error::InvariantBreach("SVD returned no V^H".into()))?;
    let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
    order.sort_by(|&a, &b| svd.singular_values[b].total_cmp(&svd.singular_values[a]));

    let (r1, r2) = (a1.dx().sqrt(), a2.dx().sqrt());
    let mut out = Schmidt {
        coefficients: Vec::new(),
        first: Vec::new(),
        second: Vec::new(),
    };
    for k in order {
        out.coefficients.push(svd.singular_values[k]);
        let phi = (0..n1).map(|i| u[(i, k)] / r1).collect();
        let chi = (0..n2).map(|j| v_t[(k, j)] / r2).collect();
        out.first.push(TransverseState::new(vec![a1], s.hbar(), phi)?);
        out.second.push(TransverseState::new(vec![a2], s.hbar(), chi)?);
    }
    Ok(out)
}

/// `max |W_joint - s_1^2 W_phi1 (x) W_chi1|` for the leading Schmidt pair.
///
/// Zero (to rounding) exactly when the state is a product state.
pub fn factorization_residual(state: &TwoPhotonState) -> Result<f64> {
    let joint = joint_wigner_two_photon(state)?;
    let schmidt = schmidt_decomposition(state)?;
    let weight = schmidt.coefficients[0].powi(2);
    let w1 = wigner_1d(&schmidt.first[0])?;
    let w2 = wigner_1d(&schmidt.second[0])?;
    let dims = state.as_transverse().dims();
    let mut worst = 0.0f64;
    for i1 in 0..dims[0] {
        for i2 in 0..dims[1] {
            for q1 in 0..dims[0] {
                for q2 in 0..dims[1] {
                    let product = weight * w1.get(&[i1], &[q1]) * w2.get(&[i2], &[q2]);
                    worst = worst.max((joint.joint(i1, q1, i2, q2) - product).abs());
                }
            }
        }
    }
    Ok(worst)
}
