use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spectral::{is_nyquist, signed_index};

/// Action scale and speed of light. Both default to one.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Units {
    hbar: f64,
    c: f64,
}

impl Units {
    pub fn new(hbar: f64, c: f64) -> Result<Self> {
        if !(hbar.is_finite() && hbar > 0.0) {
            return Err(Error::param("hbar", "must be finite and > 0"));
        }
        if !(c.is_finite() && c > 0.0) {
            return Err(Error::param("c", "must be finite and > 0"));
        }
        Ok(Self { hbar, c })
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    /// On-shell photon energy `c * hbar * |k|`.
    pub fn energy(&self, k_norm: f64) -> f64 {
        self.c * self.hbar * k_norm
    }
}

impl Default for Units {
    fn default() -> Self {
        Self { hbar: 1.0, c: 1.0 }
    }
}

/// Uniform periodic lattice in three dimensions.
///
/// Point `(i, j, l)` sits at `(i dx, j dy, l dz)` and is stored at flat index
/// `(i * ny + j) * nz + l`. The dual lattice has `k_a = 2 pi m / L_a` with
/// `m` the signed FFT index of the bin.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Grid3 {
    dims: [usize; 3],
    lengths: [f64; 3],
}

impl Grid3 {
    pub fn new(dims: [usize; 3], lengths: [f64; 3]) -> Result<Self> {
        for a in 0..3 {
            if dims[a] < 2 {
                return Err(Error::InvalidGrid(format!(
                    "axis {a} has {} points, need at least 2",
                    dims[a]
                )));
            }
            if !(lengths[a].is_finite() && lengths[a] > 0.0) {
                return Err(Error::InvalidGrid(format!(
                    "axis {a} has length {}, need a finite positive value",
                    lengths[a]
                )));
            }
        }
        Ok(Self { dims, lengths })
    }

    /// Cubic grid with `n` points and side `length` on every axis.
    pub fn cubic(n: usize, length: f64) -> Result<Self> {
        Self::new([n; 3], [length; 3])
    }

    pub fn dims(&self) -> [usize; 3] {
        self.dims
    }

    pub fn lengths(&self) -> [f64; 3] {
        self.lengths
    }

    pub fn len(&self) -> usize {
        self.dims.iter().product()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn spacing(&self) -> [f64; 3] {
        [0, 1, 2].map(|a| self.lengths[a] / self.dims[a] as f64)
    }

    pub fn cell_volume(&self) -> f64 {
        self.spacing().iter().product()
    }

    pub fn volume(&self) -> f64 {
        self.lengths.iter().product()
    }

    pub fn index(&self, i: usize, j: usize, l: usize) -> usize {
        (i * self.dims[1] + j) * self.dims[2] + l
    }

    pub fn coords(&self, flat: usize) -> [usize; 3] {
        let l = flat % self.dims[2];
        let j = (flat / self.dims[2]) % self.dims[1];
        let i = flat / (self.dims[1] * self.dims[2]);
        [i, j, l]
    }

    pub fn position(&self, flat: usize) -> [f64; 3] {
        let c = self.coords(flat);
        let d = self.spacing();
        [0, 1, 2].map(|a| c[a] as f64 * d[a])
    }

    /// Dual-lattice wavenumbers along `axis` in FFT bin order.
    pub fn k_lattice(&self, axis: usize) -> Vec<f64> {
        let n = self.dims[axis];
        let dk = 2.0 * PI / self.lengths[axis];
        (0..n).map(|i| signed_index(i, n) as f64 * dk).collect()
    }

    /// Wavevector used by every spectral operator for bin `flat`.
    ///
    /// Same as [`Grid3::k_lattice`] except that the unpaired Nyquist bin of an
    /// even axis contributes zero, so curls of real fields stay real and the
    /// mode map `k -> -k` is an involution on the lattice.
    pub fn wavevector(&self, flat: usize) -> [f64; 3] {
        let c = self.coords(flat);
        [0, 1, 2].map(|a| {
            let n = self.dims[a];
            if is_nyquist(c[a], n) {
                0.0
            } else {
                signed_index(c[a], n) as f64 * 2.0 * PI / self.lengths[a]
            }
        })
    }

    /// Flat index of the bin holding `-k` for bin `flat`.
    pub fn mirror(&self, flat: usize) -> usize {
        let c = self.coords(flat);
        let m = [0, 1, 2].map(|a| (self.dims[a] - c[a]) % self.dims[a]);
        self.index(m[0], m[1], m[2])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spacings_and_lattice_of_unit_box() {
        let g = Grid3::new([4, 4, 4], [1.0, 1.0, 1.0]).unwrap();
        assert_eq!(g.spacing(), [0.25; 3]);
        let k = g.k_lattice(0);
        let expect = [0.0, 2.0 * PI, -4.0 * PI, -2.0 * PI];
        for (a, b) in k.iter().zip(expect) {
            assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn two_point_axis_folds_to_zero_and_minus_one() {
        let g = Grid3::cubic(2, 2.0 * PI).unwrap();
        assert_eq!(g.k_lattice(2), vec![0.0, -1.0]);
        // the lone Nyquist bin carries no derivative
        assert_eq!(g.wavevector(g.index(1, 1, 1)), [0.0; 3]);
    }

    #[test]
    fn rejects_degenerate_axes() {
        assert!(Grid3::new([0, 4, 4], [1.0; 3]).is_err());
        assert!(Grid3::new([1, 4, 4], [1.0; 3]).is_err());
        assert!(Grid3::new([4, 4, 4], [1.0, -1.0, 1.0]).is_err());
        assert!(Grid3::new([4, 4, 4], [1.0, 0.0, 1.0]).is_err());
    }

    #[test]
    fn mirror_is_an_involution_that_negates_k() {
        let g = Grid3::new([4, 5, 6], [1.0, 2.0, 3.0]).unwrap();
        for f in 0..g.len() {
            assert_eq!(g.mirror(g.mirror(f)), f);
            let k = g.wavevector(f);
            let km = g.wavevector(g.mirror(f));
            for a in 0..3 {
                assert!((k[a] + km[a]).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn units_must_be_positive() {
        assert!(Units::new(0.0, 1.0).is_err());
        assert!(Units::new(1.0, -2.0).is_err());
        assert_eq!(Units::default().energy(3.0), 3.0);
    }
}
