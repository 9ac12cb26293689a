use std::f64::consts::PI;

use num_complex::Complex64;

use super::state::{Grid1, TransverseState};
use crate::error::{Error, Result};
use crate::spectral::{signed_index, FftNd};

/// Largest imaginary part tolerated in a computed Wigner value.
pub const IMAG_RESIDUE_TOL: f64 = 1e-12;

/// Wigner function sampled on `x` and `p` axes.
///
/// Values are stored with every `x` axis before every `p` axis, each in
/// increasing order: `(x)` then `(p)` for one dimension, `(x1, x2, p1, p2)`
/// for two.
#[derive(Clone, Debug, PartialEq)]
pub struct WignerGrid {
    xs: Vec<Vec<f64>>,
    ps: Vec<Vec<f64>>,
    values: Vec<f64>,
    hbar: f64,
    max_imag_residue: f64,
}

impl WignerGrid {
    pub fn from_parts(xs: Vec<Vec<f64>>, ps: Vec<Vec<f64>>, values: Vec<f64>, hbar: f64) -> Result<Self> {
        let len: usize = xs.iter().chain(&ps).map(Vec::len).product();
        if xs.len() != ps.len() || xs.is_empty() || values.len() != len {
            return Err(Error::Format("wigner axes do not match values".into()));
        }
        Ok(Self {
            xs,
            ps,
            values,
            hbar,
            max_imag_residue: 0.0,
        })
    }

    pub fn ndim(&self) -> usize {
        self.xs.len()
    }

    pub fn xs(&self, axis: usize) -> &[f64] {
        &self.xs[axis]
    }

    pub fn ps(&self, axis: usize) -> &[f64] {
        &self.ps[axis]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    /// Largest `|Im W|` seen before the imaginary part was dropped.
    pub fn max_imag_residue(&self) -> f64 {
        self.max_imag_residue
    }

    /// Axis lengths in storage order.
    pub fn shape(&self) -> Vec<usize> {
        self.xs.iter().chain(&self.ps).map(Vec::len).collect()
    }

    pub fn offset(&self, x_idx: &[usize], p_idx: &[usize]) -> usize {
        let shape = self.shape();
        x_idx
            .iter()
            .chain(p_idx)
            .zip(&shape)
            .fold(0, |acc, (&i, &n)| acc * n + i)
    }

    pub fn get(&self, x_idx: &[usize], p_idx: &[usize]) -> f64 {
        self.values[self.offset(x_idx, p_idx)]
    }

    /// Joint two-photon value `W(x1, p1, x2, p2)` by index.
    pub fn joint(&self, ix1: usize, ip1: usize, ix2: usize, ip2: usize) -> f64 {
        self.get(&[ix1, ix2], &[ip1, ip2])
    }

    fn cell_x(&self) -> f64 {
        self.xs.iter().map(|x| step(x)).product()
    }

    fn cell_p(&self) -> f64 {
        self.ps.iter().map(|p| step(p)).product()
    }

    /// `sum W dx dp`.
    pub fn integral(&self) -> f64 {
        self.values.iter().sum::<f64>() * self.cell_x() * self.cell_p()
    }

    /// `int W dp` on the `x` lattice (row-major over x axes).
    pub fn position_marginal(&self) -> Vec<f64> {
        let block: usize = self.ps.iter().map(Vec::len).product();
        let dp = self.cell_p();
        self.values
            .chunks(block)
            .map(|c| c.iter().sum::<f64>() * dp)
            .collect()
    }

    /// `int W dx` on the `p` lattice (row-major over p axes).
    pub fn momentum_marginal(&self) -> Vec<f64> {
        let block: usize = self.ps.iter().map(Vec::len).product();
        let dx = self.cell_x();
        let mut out = vec![0.0; block];
        for chunk in self.values.chunks(block) {
            for (o, v) in out.iter_mut().zip(chunk) {
                *o += v;
            }
        }
        out.iter_mut().for_each(|v| *v *= dx);
        out
    }
}

fn step(axis: &[f64]) -> f64 {
    if axis.len() < 2 {
        1.0
    } else {
        axis[1] - axis[0]
    }
}

/// `W(x, p) = (pi hbar)^-1 int psi*(x + s) psi(x - s) exp(2 i p s / hbar) ds`.
///
/// The lag `s` runs over lattice multiples of `dx`, samples outside the box
/// count as zero, and the lag sum is done by FFT for every `x`. This puts `p`
/// on a lattice of spacing `pi hbar / L`.
pub fn wigner_1d(state: &TransverseState) -> Result<WignerGrid> {
    if state.ndim() != 1 {
        return Err(Error::param("state", "wigner_1d needs a one-dimensional state"));
    }
    wigner_nd(state)
}

/// Tensor version of [`wigner_1d`] over two transverse axes.
pub fn wigner_2d(state: &TransverseState) -> Result<WignerGrid> {
    if state.ndim() != 2 {
        return Err(Error::param("state", "wigner_2d needs a two-dimensional state"));
    }
    wigner_nd(state)
}

pub(crate) fn wigner_nd(state: &TransverseState) -> Result<WignerGrid> {
    state.require_nonzero()?;
    let axes = state.axes();
    let dims = state.dims();
    let d = dims.len();
    let hbar = state.hbar();
    let plan = FftNd::new(&dims);
    let block = plan.len();
    let prefactor = state.cell() / (PI * hbar).powi(d as i32);
    let amp = state.amplitude();

    // lag offsets per FFT bin, and where each bin lands on the centered p axis
    let lags: Vec<Vec<i64>> = dims.iter().map(|&n| (0..n).map(|j| signed_index(j, n)).collect()).collect();
    let centered: Vec<Vec<usize>> = dims
        .iter()
        .map(|&n| (0..n).map(|q| (signed_index(q, n) + (n / 2) as i64) as usize).collect())
        .collect();

    let mut values = vec![0.0; block * block];
    let mut residue = 0.0f64;
    let mut buf = vec![Complex64::new(0.0, 0.0); block];

    for x_flat in 0..block {
        let x_idx = unflatten(x_flat, &dims);
        for (lag_flat, slot) in buf.iter_mut().enumerate() {
            let lag_idx = unflatten(lag_flat, &dims);
            let mut plus = 0usize;
            let mut minus = 0usize;
            let mut inside = true;
            for a in 0..d {
                let s = lags[a][lag_idx[a]];
                let up = x_idx[a] as i64 + s;
                let down = x_idx[a] as i64 - s;
                let n = dims[a] as i64;
                if up < 0 || up >= n || down < 0 || down >= n {
                    inside = false;
                    break;
                }
                plus = plus * dims[a] + up as usize;
                minus = minus * dims[a] + down as usize;
            }
            *slot = if inside {
                amp[plus].conj() * amp[minus]
            } else {
                Complex64::new(0.0, 0.0)
            };
        }
        plan.inverse_unnormalized(&mut buf);
        let out = &mut values[x_flat * block..(x_flat + 1) * block];
        for (q_flat, z) in buf.iter().enumerate() {
            let q_idx = unflatten(q_flat, &dims);
            let mut dest = 0usize;
            for a in 0..d {
                dest = dest * dims[a] + centered[a][q_idx[a]];
            }
            residue = residue.max(z.im.abs() * prefactor);
            out[dest] = z.re * prefactor;
        }
    }

    if residue > IMAG_RESIDUE_TOL {
        return Err(Error::InvariantBreach(format!(
            "wigner imaginary residue {residue:e} exceeds {IMAG_RESIDUE_TOL:e}"
        )));
    }
    let xs = axes.iter().map(Grid1::positions).collect();
    let ps = axes.iter().map(|a| a.wigner_momenta(hbar)).collect();
    let mut grid = WignerGrid::from_parts(xs, ps, values, hbar)?;
    grid.max_imag_residue = residue;
    Ok(grid)
}

fn unflatten(mut flat: usize, dims: &[usize]) -> Vec<usize> {
    let mut out = vec![0; dims.len()];
    for a in (0..dims.len()).rev() {
        out[a] = flat % dims[a];
        flat /= dims[a];
    }
    out
}

/// Wigner value at lattice position `x_idx` and arbitrary momentum `p`, by
/// direct summation over lags (same discretization as [`wigner_1d`]).
pub fn wigner_at(state: &TransverseState, x_idx: &[usize], p: &[f64]) -> Result<f64> {
    let dims = state.dims();
    let d = dims.len();
    if x_idx.len() != d || p.len() != d {
        return Err(Error::param("point", "rank does not match state"));
    }
    if x_idx.iter().zip(&dims).any(|(&i, &n)| i >= n) {
        return Err(Error::param("point", "position index outside lattice"));
    }
    let hbar = state.hbar();
    let axes = state.axes();
    let amp = state.amplitude();
    let mut acc = Complex64::new(0.0, 0.0);
    let ranges: Vec<(i64, i64)> = (0..d)
        .map(|a| {
            let (i, n) = (x_idx[a] as i64, dims[a] as i64);
            let reach = i.min(n - 1 - i);
            (-reach, reach)
        })
        .collect();
    let flat = |idx: &[i64]| -> usize { idx.iter().zip(&dims).fold(0, |acc, (&i, &n)| acc * n + i as usize) };
    let mut lag = ranges.iter().map(|r| r.0).collect::<Vec<_>>();
    loop {
        let up: Vec<i64> = (0..d).map(|a| x_idx[a] as i64 + lag[a]).collect();
        let down: Vec<i64> = (0..d).map(|a| x_idx[a] as i64 - lag[a]).collect();
        let phase: f64 = (0..d).map(|a| 2.0 * p[a] * lag[a] as f64 * axes[a].dx()).sum::<f64>() / hbar;
        acc += amp[flat(&up)].conj() * amp[flat(&down)] * Complex64::from_polar(1.0, phase);
        // odometer over the lag box
        let mut a = d;
        loop {
            if a == 0 {
                return Ok(acc.re * state.cell() / (PI * hbar).powi(d as i32));
            }
            a -= 1;
            if lag[a] < ranges[a].1 {
                lag[a] += 1;
                break;
            }
            lag[a] = ranges[a].0;
        }
    }
}
