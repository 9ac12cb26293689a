use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::grid::{Grid3, Units};
use super::vec3::{CVec3, RVec3};
use crate::error::{Error, Result};
use crate::spectral::FftNd;

/// Photon helicity: the sign in `psi = (E +/- iB)/sqrt(2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Helicity {
    #[serde(rename = "+")]
    Positive,
    #[serde(rename = "-")]
    Negative,
}

impl Helicity {
    pub fn sign(self) -> f64 {
        match self {
            Helicity::Positive => 1.0,
            Helicity::Negative => -1.0,
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            Helicity::Positive => Helicity::Negative,
            Helicity::Negative => Helicity::Positive,
        }
    }
}

impl fmt::Display for Helicity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Helicity::Positive => "+",
            Helicity::Negative => "-",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Space {
    Coordinate,
    Momentum,
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Space::Coordinate => "coordinate",
            Space::Momentum => "momentum",
        })
    }
}

/// Complex 3-vector field on a [`Grid3`], stored component-major.
///
/// In momentum space the data are the unnormalized forward DFT of the
/// coordinate-space samples (`exp(-i k.r)`, no prefactor).
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexVectorField {
    grid: Grid3,
    units: Units,
    data: Vec<Complex64>,
    time: f64,
    helicity: Helicity,
    space: Space,
}

impl ComplexVectorField {
    pub fn zeros(grid: Grid3, units: Units, helicity: Helicity, space: Space) -> Self {
        let data = vec![Complex64::new(0.0, 0.0); 3 * grid.len()];
        Self {
            grid,
            units,
            data,
            time: 0.0,
            helicity,
            space,
        }
    }

    pub fn from_data(
        grid: Grid3,
        units: Units,
        data: Vec<Complex64>,
        helicity: Helicity,
        space: Space,
    ) -> Result<Self> {
        if data.len() != 3 * grid.len() {
            return Err(Error::Format(format!(
                "field data has {} values, grid needs {}",
                data.len(),
                3 * grid.len()
            )));
        }
        Ok(Self {
            grid,
            units,
            data,
            time: 0.0,
            helicity,
            space,
        })
    }

    /// Sample `f(position)` at every coordinate-space grid point.
    pub fn from_fn(
        grid: Grid3,
        units: Units,
        helicity: Helicity,
        f: impl Fn([f64; 3]) -> CVec3,
    ) -> Self {
        let mut field = Self::zeros(grid, units, helicity, Space::Coordinate);
        for p in 0..field.grid.len() {
            let v = f(field.grid.position(p));
            field.set(p, v);
        }
        field
    }

    pub fn grid(&self) -> &Grid3 {
        &self.grid
    }

    pub fn units(&self) -> Units {
        self.units
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [Complex64] {
        &mut self.data
    }

    pub fn into_data(self) -> Vec<Complex64> {
        self.data
    }

    pub fn time(&self) -> f64 {
        self.time
    }

    pub fn set_time(&mut self, t: f64) {
        self.time = t;
    }

    pub fn with_time(mut self, t: f64) -> Self {
        self.time = t;
        self
    }

    pub fn helicity(&self) -> Helicity {
        self.helicity
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn component(&self, c: usize) -> &[Complex64] {
        let n = self.grid.len();
        &self.data[c * n..(c + 1) * n]
    }

    pub fn at(&self, p: usize) -> CVec3 {
        let n = self.grid.len();
        [self.data[p], self.data[n + p], self.data[2 * n + p]]
    }

    pub fn set(&mut self, p: usize, v: CVec3) {
        let n = self.grid.len();
        self.data[p] = v[0];
        self.data[n + p] = v[1];
        self.data[2 * n + p] = v[2];
    }

    pub(crate) fn require(&self, space: Space) -> Result<()> {
        if self.space != space {
            return Err(Error::WrongSpace {
                expected: space,
                found: self.space,
            });
        }
        Ok(())
    }

    /// Forward DFT of each component. Momentum-space input is returned as is.
    pub fn to_momentum(&self) -> Self {
        if self.space == Space::Momentum {
            return self.clone();
        }
        let mut out = self.clone();
        let plan = FftNd::new(&self.grid.dims());
        let n = self.grid.len();
        for chunk in out.data.chunks_mut(n) {
            plan.forward(chunk);
        }
        out.space = Space::Momentum;
        out
    }

    /// Inverse DFT of each component. Coordinate-space input is returned as is.
    pub fn to_coordinate(&self) -> Self {
        if self.space == Space::Coordinate {
            return self.clone();
        }
        let mut out = self.clone();
        let plan = FftNd::new(&self.grid.dims());
        let n = self.grid.len();
        for chunk in out.data.chunks_mut(n) {
            plan.inverse(chunk);
        }
        out.space = Space::Coordinate;
        out
    }

    pub fn max_abs(&self) -> f64 {
        (0..self.grid.len())
            .map(|p| super::vec3::cnorm_sqr(&self.at(p)).sqrt())
            .fold(0.0, f64::max)
    }

    /// Largest pointwise vector distance to `other`.
    pub fn max_distance(&self, other: &Self) -> f64 {
        (0..self.grid.len())
            .map(|p| super::vec3::cnorm_sqr(&super::vec3::sub(&self.at(p), &other.at(p))).sqrt())
            .fold(0.0, f64::max)
    }
}

/// Real electric and magnetic fields sampled on the same grid.
#[derive(Clone, Debug, PartialEq)]
pub struct RealFieldPair {
    grid: Grid3,
    units: Units,
    e_field: Vec<f64>,
    b_field: Vec<f64>,
    time: f64,
}

impl RealFieldPair {
    pub fn zeros(grid: Grid3, units: Units) -> Self {
        let n = 3 * grid.len();
        Self {
            grid,
            units,
            e_field: vec![0.0; n],
            b_field: vec![0.0; n],
            time: 0.0,
        }
    }

    pub fn from_data(grid: Grid3, units: Units, e_field: Vec<f64>, b_field: Vec<f64>) -> Result<Self> {
        let n = 3 * grid.len();
        if e_field.len() != n || b_field.len() != n {
            return Err(Error::Format(format!(
                "field planes have {} and {} values, grid needs {n}",
                e_field.len(),
                b_field.len()
            )));
        }
        Ok(Self {
            grid,
            units,
            e_field,
            b_field,
            time: 0.0,
        })
    }

    pub fn from_fn(grid: Grid3, units: Units, f: impl Fn([f64; 3]) -> (RVec3, RVec3)) -> Self {
        let mut pair = Self::zeros(grid, units);
        for p in 0..pair.grid.len() {
            let (e, b) = f(pair.grid.position(p));
            pair.set(p, e, b);
        }
        pair
    }

    pub fn grid(&self) -> &Grid3 {
        &self.grid
    }

    pub fn units(&self) -> Units {
        self.units
    }

    pub fn time(&self) -> f64 {
        self.time
    }

    pub fn set_time(&mut self, t: f64) {
        self.time = t;
    }

    pub fn e_field(&self) -> &[f64] {
        &self.e_field
    }

    pub fn b_field(&self) -> &[f64] {
        &self.b_field
    }

    pub(crate) fn planes_mut(&mut self) -> (&mut [f64], &mut [f64]) {
        (&mut self.e_field, &mut self.b_field)
    }

    pub fn e_at(&self, p: usize) -> RVec3 {
        let n = self.grid.len();
        [self.e_field[p], self.e_field[n + p], self.e_field[2 * n + p]]
    }

    pub fn b_at(&self, p: usize) -> RVec3 {
        let n = self.grid.len();
        [self.b_field[p], self.b_field[n + p], self.b_field[2 * n + p]]
    }

    pub fn set(&mut self, p: usize, e: RVec3, b: RVec3) {
        let n = self.grid.len();
        for c in 0..3 {
            self.e_field[c * n + p] = e[c];
            self.b_field[c * n + p] = b[c];
        }
    }

    /// `1/2 sum (E.E + B.B) dV`.
    pub fn energy(&self) -> f64 {
        let sum: f64 = self
            .e_field
            .iter()
            .chain(&self.b_field)
            .map(|v| v * v)
            .sum();
        0.5 * sum * self.grid.cell_volume()
    }

    pub fn max_abs(&self) -> f64 {
        (0..self.grid.len())
            .map(|p| {
                let e = self.e_at(p);
                let b = self.b_at(p);
                e.iter().chain(&b).map(|v| v * v).sum::<f64>().sqrt()
            })
            .fold(0.0, f64::max)
    }

    /// Largest pointwise distance over the six components.
    pub fn max_distance(&self, other: &Self) -> f64 {
        (0..self.grid.len())
            .map(|p| {
                let (e1, b1, e2, b2) = (self.e_at(p), self.b_at(p), other.e_at(p), other.b_at(p));
                (0..3)
                    .map(|c| (e1[c] - e2[c]).powi(2) + (b1[c] - b2[c]).powi(2))
                    .sum::<f64>()
                    .sqrt()
            })
            .fold(0.0, f64::max)
    }

    /// `max |self - other| / max |other|`.
    pub fn relative_deviation(&self, reference: &Self) -> f64 {
        let scale = reference.max_abs();
        if scale == 0.0 {
            return self.max_distance(reference);
        }
        self.max_distance(reference) / scale
    }
}
