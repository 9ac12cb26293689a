//! Displaced-parity measurement model of a Sagnac interferometer that
//! mirror-inverts one arm relative to the other.

use std::f64::consts::PI;

use log::warn;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::state::TransverseState;
use crate::error::{Error, Result};
use crate::spectral::{signed_index, FftNd};

/// Phase-space point `(x0, p0)`, one entry per transverse axis.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhaseSpacePoint {
    pub x0: Vec<f64>,
    pub p0: Vec<f64>,
}

impl PhaseSpacePoint {
    pub fn new(x0: Vec<f64>, p0: Vec<f64>) -> Result<Self> {
        if x0.len() != p0.len() || x0.is_empty() {
            return Err(Error::param("point", "x0 and p0 need one entry per axis"));
        }
        if x0.iter().chain(&p0).any(|v| !v.is_finite()) {
            return Err(Error::param("point", "non-finite coordinate"));
        }
        Ok(Self { x0, p0 })
    }

    pub fn one_d(x0: f64, p0: f64) -> Self {
        Self {
            x0: vec![x0],
            p0: vec![p0],
        }
    }

    pub fn two_d(x0: [f64; 2], p0: [f64; 2]) -> Self {
        Self {
            x0: x0.to_vec(),
            p0: p0.to_vec(),
        }
    }

    pub fn origin(ndim: usize) -> Self {
        Self {
            x0: vec![0.0; ndim],
            p0: vec![0.0; ndim],
        }
    }

    pub fn ndim(&self) -> usize {
        self.x0.len()
    }

    fn negated(&self) -> Self {
        Self {
            x0: self.x0.iter().map(|v| -v).collect(),
            p0: self.p0.iter().map(|v| -v).collect(),
        }
    }
}

/// `psi(-x)` on every axis, by index reflection `i -> (n - i) mod n`.
pub fn parity_2d(state: &TransverseState) -> TransverseState {
    let mut out = state.clone();
    let dims = state.dims();
    let src = state.amplitude();
    let dst = out.amplitude_mut();
    match dims.as_slice() {
        [n] => {
            for i in 0..*n {
                dst[i] = src[(n - i) % n];
            }
        }
        [nx, ny] => {
            for i in 0..*nx {
                for j in 0..*ny {
                    dst[i * ny + j] = src[((nx - i) % nx) * ny + (ny - j) % ny];
                }
            }
        }
        _ => unreachable!("states have one or two axes"),
    }
    out
}

/// True when every shift is a whole number of lattice cells.
pub fn is_lattice_aligned(state: &TransverseState, pt: &PhaseSpacePoint) -> bool {
    state
        .axes()
        .iter()
        .zip(&pt.x0)
        .all(|(axis, &x0)| cells(x0, axis.dx()).is_some())
}

fn cells(x0: f64, dx: f64) -> Option<i64> {
    let m = x0 / dx;
    let r = m.round();
    ((m - r).abs() <= 1e-9 * (1.0 + r.abs())).then_some(r as i64)
}

/// `D(x0, p0) psi (x) = exp(i p0.x / hbar) psi(x - x0)` on the periodic lattice.
///
/// Whole-cell shifts are index rolls; fractional shifts use Fourier
/// interpolation and log a warning.
pub fn displace(state: &TransverseState, pt: &PhaseSpacePoint) -> Result<TransverseState> {
    check_rank(state, pt)?;
    let mut out = shift(state, &pt.x0);
    tilt(&mut out, &pt.p0, &vec![0.0; pt.ndim()]);
    Ok(out)
}

/// `D(x0, p0)^dagger psi (x) = exp(-i p0.(x + x0) / hbar) psi(x + x0)`.
pub fn displace_adjoint(state: &TransverseState, pt: &PhaseSpacePoint) -> Result<TransverseState> {
    check_rank(state, pt)?;
    let back = pt.negated();
    let mut out = shift(state, &back.x0);
    tilt(&mut out, &back.p0, &pt.x0);
    Ok(out)
}

fn check_rank(state: &TransverseState, pt: &PhaseSpacePoint) -> Result<()> {
    if state.ndim() != pt.ndim() {
        return Err(Error::param(
            "point",
            format!("{}-axis point for a {}-axis state", pt.ndim(), state.ndim()),
        ));
    }
    Ok(())
}

/// Multiply by `exp(i p0.(x + offset) / hbar)`.
fn tilt(state: &mut TransverseState, p0: &[f64], offset: &[f64]) {
    if p0.iter().all(|&p| p == 0.0) {
        return;
    }
    let hbar = state.hbar();
    let axes = state.axes().to_vec();
    let dims = state.dims();
    let amp = state.amplitude_mut();
    for (f, z) in amp.iter_mut().enumerate() {
        let mut phase = 0.0;
        let mut rem = f;
        for a in (0..dims.len()).rev() {
            let i = rem % dims[a];
            rem /= dims[a];
            phase += p0[a] * (axes[a].x(i) + offset[a]);
        }
        *z *= Complex64::from_polar(1.0, phase / hbar);
    }
}

/// `psi(x - x0)` on the periodic lattice.
fn shift(state: &TransverseState, x0: &[f64]) -> TransverseState {
    let axes = state.axes();
    let whole: Option<Vec<i64>> = axes.iter().zip(x0).map(|(a, &v)| cells(v, a.dx())).collect();
    match whole {
        Some(m) => roll(state, &m),
        None => {
            warn!("displacement {x0:?} is not lattice aligned; using Fourier interpolation");
            fourier_shift(state, x0)
        }
    }
}

fn roll(state: &TransverseState, m: &[i64]) -> TransverseState {
    if m.iter().all(|&v| v == 0) {
        return state.clone();
    }
    let dims = state.dims();
    let mut out = state.clone();
    let src = state.amplitude();
    let dst = out.amplitude_mut();
    let wrap = |i: usize, a: usize| -> usize {
        let n = dims[a] as i64;
        (((i as i64 - m[a]) % n + n) % n) as usize
    };
    match dims.as_slice() {
        [n] => {
            for i in 0..*n {
                dst[i] = src[wrap(i, 0)];
            }
        }
        [nx, ny] => {
            for i in 0..*nx {
                for j in 0..*ny {
                    dst[i * ny + j] = src[wrap(i, 0) * ny + wrap(j, 1)];
                }
            }
        }
        _ => unreachable!(),
    }
    out
}

fn fourier_shift(state: &TransverseState, x0: &[f64]) -> TransverseState {
    let dims = state.dims();
    let axes = state.axes().to_vec();
    let plan = FftNd::new(&dims);
    let mut out = state.clone();
    let data = out.amplitude_mut();
    plan.forward(data);
    for (f, z) in data.iter_mut().enumerate() {
        let mut phase = 0.0;
        let mut rem = f;
        for a in (0..dims.len()).rev() {
            let i = rem % dims[a];
            rem /= dims[a];
            let k = 2.0 * PI * signed_index(i, dims[a]) as f64 / axes[a].length();
            phase -= k * x0[a];
        }
        *z *= Complex64::from_polar(1.0, phase);
    }
    plan.inverse(data);
    out
}

/// `<psi| D Pi D^dagger |psi> / <psi|psi>`.
///
/// Parity and shifts are periodic, so reflecting about `x0` also reflects
/// about `x0 - L/2`; the result equals `(pi hbar)^d W(x0, p0)` only while the
/// state is negligible half a box away from `x0`.
pub fn displaced_parity(state: &TransverseState, pt: &PhaseSpacePoint) -> Result<Complex64> {
    state.require_nonzero()?;
    let moved = displace_adjoint(state, pt)?;
    let mirrored = parity_2d(&moved);
    Ok(moved.inner(&mirrored)? / state.norm_sqr())
}

/// One ideal Sagnac reading at a phase-space point.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SagnacReading {
    /// Detection probability per photon, `(1 + Re<D Pi D^dagger>)/2`.
    pub rate: f64,
    pub bracket: Complex64,
    /// `Re<D Pi D^dagger> / (pi hbar)^d`.
    pub derived_w: f64,
    /// Set when the displacement needed Fourier interpolation.
    pub interpolated: bool,
}

/// Mean count probability of the displaced-parity interferometer.
///
/// Ideal 50/50 recombination and unit visibility: `R - 1/2` is `(pi hbar)^d / 2`
/// times the Wigner function at `pt`.
pub fn sagnac_count_rate(state: &TransverseState, pt: &PhaseSpacePoint) -> Result<SagnacReading> {
    let bracket = displaced_parity(state, pt)?;
    let scale = (PI * state.hbar()).powi(state.ndim() as i32);
    Ok(SagnacReading {
        rate: 0.5 * (1.0 + bracket.re),
        bracket,
        derived_w: bracket.re / scale,
        interpolated: !is_lattice_aligned(state, pt),
    })
}
