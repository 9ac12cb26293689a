use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Centered one-dimensional lattice: `x_i = (i - n/2) dx`, `n` even.
///
/// Index `i` and index `(n - i) mod n` sit at opposite positions.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Grid1 {
    n: usize,
    length: f64,
}

impl Grid1 {
    pub fn new(n: usize, length: f64) -> Result<Self> {
        if n < 2 || !n.is_multiple_of(2) {
            return Err(Error::InvalidGrid(format!(
                "transverse axis needs an even number of points >= 2, got {n}"
            )));
        }
        if !(length.is_finite() && length > 0.0) {
            return Err(Error::InvalidGrid(format!(
                "transverse axis length must be finite and > 0, got {length}"
            )));
        }
        Ok(Self { n, length })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn dx(&self) -> f64 {
        self.length / self.n as f64
    }

    pub fn x(&self, i: usize) -> f64 {
        (i as f64 - (self.n / 2) as f64) * self.dx()
    }

    pub fn positions(&self) -> Vec<f64> {
        (0..self.n).map(|i| self.x(i)).collect()
    }

    /// Index of `-x_i`.
    pub fn reflect(&self, i: usize) -> usize {
        (self.n - i) % self.n
    }

    /// Momentum spacing of the Wigner `p` axis, `pi hbar / L`.
    pub fn wigner_dp(&self, hbar: f64) -> f64 {
        std::f64::consts::PI * hbar / self.length
    }

    /// Centered Wigner momentum samples `q pi hbar / L`, `q = -n/2 .. n/2 - 1`.
    pub fn wigner_momenta(&self, hbar: f64) -> Vec<f64> {
        let dp = self.wigner_dp(hbar);
        (0..self.n)
            .map(|i| (i as f64 - (self.n / 2) as f64) * dp)
            .collect()
    }
}

/// Scalar transverse amplitude over one or two centered axes (row-major).
#[derive(Clone, Debug, PartialEq)]
pub struct TransverseState {
    axes: Vec<Grid1>,
    hbar: f64,
    amplitude: Vec<Complex64>,
}

impl TransverseState {
    pub fn new(axes: Vec<Grid1>, hbar: f64, amplitude: Vec<Complex64>) -> Result<Self> {
        if axes.is_empty() || axes.len() > 2 {
            return Err(Error::param(
                "axes",
                format!("transverse states have 1 or 2 axes, got {}", axes.len()),
            ));
        }
        if !(hbar.is_finite() && hbar > 0.0) {
            return Err(Error::param("hbar", "must be finite and > 0"));
        }
        let len: usize = axes.iter().map(Grid1::len).product();
        if amplitude.len() != len {
            return Err(Error::Format(format!(
                "state has {} samples, lattice needs {len}",
                amplitude.len()
            )));
        }
        if amplitude.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::param("amplitude", "non-finite sample"));
        }
        Ok(Self { axes, hbar, amplitude })
    }

    pub fn from_fn_1d(axis: Grid1, hbar: f64, f: impl Fn(f64) -> Complex64) -> Result<Self> {
        let amp = axis.positions().into_iter().map(f).collect();
        Self::new(vec![axis], hbar, amp)
    }

    pub fn from_fn_2d(ax: Grid1, ay: Grid1, hbar: f64, f: impl Fn(f64, f64) -> Complex64) -> Result<Self> {
        let mut amp = Vec::with_capacity(ax.len() * ay.len());
        for i in 0..ax.len() {
            for j in 0..ay.len() {
                amp.push(f(ax.x(i), ay.x(j)));
            }
        }
        Self::new(vec![ax, ay], hbar, amp)
    }

    pub fn axes(&self) -> &[Grid1] {
        &self.axes
    }

    pub fn ndim(&self) -> usize {
        self.axes.len()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.axes.iter().map(Grid1::len).collect()
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    pub fn amplitude(&self) -> &[Complex64] {
        &self.amplitude
    }

    pub(crate) fn amplitude_mut(&mut self) -> &mut [Complex64] {
        &mut self.amplitude
    }

    pub fn cell(&self) -> f64 {
        self.axes.iter().map(Grid1::dx).product()
    }

    /// `sum |psi|^2 dV`.
    pub fn norm_sqr(&self) -> f64 {
        self.amplitude.iter().map(|z| z.norm_sqr()).sum::<f64>() * self.cell()
    }

    pub fn normalized(&self) -> Result<Self> {
        let n = self.norm_sqr();
        if n == 0.0 || !n.is_finite() {
            return Err(Error::ZeroNorm);
        }
        let s = 1.0 / n.sqrt();
        let mut out = self.clone();
        out.amplitude.iter_mut().for_each(|z| *z *= s);
        Ok(out)
    }

    /// `<self|other> = sum conj(self) other dV`.
    pub fn inner(&self, other: &Self) -> Result<Complex64> {
        if self.axes != other.axes {
            return Err(Error::GridMismatch);
        }
        Ok(self
            .amplitude
            .iter()
            .zip(&other.amplitude)
            .map(|(a, b)| a.conj() * b)
            .sum::<Complex64>()
            * self.cell())
    }

    pub(crate) fn require_nonzero(&self) -> Result<()> {
        if self.norm_sqr() == 0.0 {
            return Err(Error::ZeroNorm);
        }
        Ok(())
    }

    /// Flat index from per-axis indices.
    pub fn flat(&self, idx: &[usize]) -> usize {
        match idx {
            [i] => *i,
            [i, j] => i * self.axes[1].len() + j,
            _ => panic!("index rank does not match state"),
        }
    }

    /// `|psi|^2` on the lattice.
    pub fn density(&self) -> Vec<f64> {
        self.amplitude.iter().map(|z| z.norm_sqr()).collect()
    }

    /// Momentum density `|psi~(p)|^2` at the given momenta (one per axis), with
    /// `psi~(p) = (2 pi hbar)^(-d/2) sum psi(x) exp(-i p.x / hbar) dV`.
    pub fn momentum_density(&self, p: &[f64]) -> f64 {
        assert_eq!(p.len(), self.ndim());
        let h = self.hbar;
        let mut acc = Complex64::new(0.0, 0.0);
        match self.ndim() {
            1 => {
                for (i, a) in self.amplitude.iter().enumerate() {
                    acc += a * Complex64::from_polar(1.0, -p[0] * self.axes[0].x(i) / h);
                }
            }
            _ => {
                let ny = self.axes[1].len();
                for (f, a) in self.amplitude.iter().enumerate() {
                    let phase = p[0] * self.axes[0].x(f / ny) + p[1] * self.axes[1].x(f % ny);
                    acc += a * Complex64::from_polar(1.0, -phase / h);
                }
            }
        }
        let d = self.ndim() as i32;
        (acc * self.cell()).norm_sqr() / (2.0 * std::f64::consts::PI * h).powi(d)
    }
}

/// Joint transverse amplitude of two photons, one axis each.
#[derive(Clone, Debug, PartialEq)]
pub struct TwoPhotonState {
    state: TransverseState,
}

impl TwoPhotonState {
    /// Largest allowed number of points per photon axis.
    pub const CAP: usize = 64;

    pub fn new(state: TransverseState) -> Result<Self> {
        if state.ndim() != 2 {
            return Err(Error::param("state", "two-photon states need one axis per photon"));
        }
        let dims = state.dims();
        if dims.iter().any(|&n| n > Self::CAP) {
            return Err(Error::CapExceeded { dims, cap: Self::CAP });
        }
        Ok(Self { state })
    }

    pub fn from_fn(a1: Grid1, a2: Grid1, hbar: f64, f: impl Fn(f64, f64) -> Complex64) -> Result<Self> {
        let dims = vec![a1.len(), a2.len()];
        if dims.iter().any(|&n| n > Self::CAP) {
            return Err(Error::CapExceeded { dims, cap: Self::CAP });
        }
        Self::new(TransverseState::from_fn_2d(a1, a2, hbar, f)?)
    }

    /// `phi(x1) chi(x2)`.
    pub fn product(phi: &TransverseState, chi: &TransverseState) -> Result<Self> {
        if phi.ndim() != 1 || chi.ndim() != 1 {
            return Err(Error::param("state", "factors must be one-dimensional"));
        }
        if phi.hbar() != chi.hbar() {
            return Err(Error::param("hbar", "factors disagree on hbar"));
        }
        let mut amp = Vec::with_capacity(phi.amplitude.len() * chi.amplitude.len());
        for a in &phi.amplitude {
            for b in &chi.amplitude {
                amp.push(a * b);
            }
        }
        Self::new(TransverseState::new(
            vec![phi.axes[0], chi.axes[0]],
            phi.hbar(),
            amp,
        )?)
    }

    pub fn as_transverse(&self) -> &TransverseState {
        &self.state
    }

    pub fn normalized(&self) -> Result<Self> {
        Ok(Self {
            state: self.state.normalized()?,
        })
    }
}
