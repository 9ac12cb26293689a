//! On-shell momentum amplitudes, their normalization, and synthesis of
//! coordinate-space wave functions with the `sqrt(E)` weight.
//!
//! On a periodic box of volume `V` the momentum cell is `(2 pi hbar)^3 / V`,
//! so the measure `d^3p / (2 pi hbar)^3` becomes `1/V` per mode and
//! synthesis reads `psi(r) = (1/V) sum_k f(E_k) psi~(k) exp(i(k.r - w_k t))`.
//! With `f = sqrt(E)` this makes `int |psi|^2 d^3r` equal the mean energy
//! exactly on the lattice.

use log::warn;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fields::vec3::{self, CVec3, CZERO};
use crate::fields::{ComplexVectorField, Grid3, Helicity, Space, Units};
use crate::propagator::Triad;
use crate::spectral::FftNd;

/// Per-mode tolerance on `|khat . psi~| / max |psi~|` for the transverse flag.
pub const TRANSVERSE_TOL: f64 = 1e-13;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WeightChoice {
    /// `f(E) = 1`
    Unit,
    /// `f(E) = sqrt(E)`
    SqrtEnergy,
}

impl WeightChoice {
    pub fn factor(self, energy: f64) -> f64 {
        match self {
            WeightChoice::Unit => 1.0,
            WeightChoice::SqrtEnergy => energy.sqrt(),
        }
    }
}

/// Momentum-space amplitude `psi~(k)` on the dual lattice of a [`Grid3`].
///
/// Component-major, bins in FFT order. The helicity tag selects the sign
/// convention of the synthesized field.
#[derive(Clone, Debug, PartialEq)]
pub struct MomentumAmplitude {
    grid: Grid3,
    units: Units,
    helicity: Helicity,
    data: Vec<Complex64>,
    transverse: bool,
}

impl MomentumAmplitude {
    pub fn zeros(grid: Grid3, units: Units, helicity: Helicity) -> Self {
        let n = 3 * grid.len();
        Self {
            grid,
            units,
            helicity,
            data: vec![Complex64::new(0.0, 0.0); n],
            transverse: true,
        }
    }

    pub fn from_data(grid: Grid3, units: Units, helicity: Helicity, data: Vec<Complex64>) -> Result<Self> {
        if data.len() != 3 * grid.len() {
            return Err(Error::Format(format!(
                "amplitude has {} values, grid needs {}",
                data.len(),
                3 * grid.len()
            )));
        }
        let mut amp = Self {
            grid,
            units,
            helicity,
            data,
            transverse: false,
        };
        amp.refresh_flag();
        Ok(amp)
    }

    /// Fill each mode from `f(k)`.
    pub fn from_fn(grid: Grid3, units: Units, helicity: Helicity, mut f: impl FnMut([f64; 3]) -> CVec3) -> Self {
        let mut amp = Self::zeros(grid, units, helicity);
        for p in 0..amp.grid.len() {
            let v = f(amp.grid.wavevector(p));
            amp.put(p, v);
        }
        amp.refresh_flag();
        amp
    }

    pub fn grid(&self) -> &Grid3 {
        &self.grid
    }

    pub fn units(&self) -> Units {
        self.units
    }

    pub fn helicity(&self) -> Helicity {
        self.helicity
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    pub fn is_transverse(&self) -> bool {
        self.transverse
    }

    pub fn at(&self, p: usize) -> CVec3 {
        let n = self.grid.len();
        [self.data[p], self.data[n + p], self.data[2 * n + p]]
    }

    pub fn set(&mut self, p: usize, v: CVec3) {
        self.put(p, v);
        self.refresh_flag();
    }

    fn put(&mut self, p: usize, v: CVec3) {
        let n = self.grid.len();
        self.data[p] = v[0];
        self.data[n + p] = v[1];
        self.data[2 * n + p] = v[2];
    }

    fn refresh_flag(&mut self) {
        let scale = (0..self.grid.len())
            .map(|p| vec3::cnorm_sqr(&self.at(p)))
            .fold(0.0, f64::max)
            .sqrt();
        self.transverse = (0..self.grid.len()).all(|p| {
            let k = self.grid.wavevector(p);
            let kn = vec3::norm(&k);
            kn == 0.0 || vec3::rdot(&k, &self.at(p)).norm() / kn <= TRANSVERSE_TOL * scale
        });
    }

    /// Drop the longitudinal part of every mode (and anything on `k = 0`).
    pub fn project_transverse(&self) -> Self {
        let mut out = self.clone();
        for p in 0..self.grid.len() {
            let k = self.grid.wavevector(p);
            let kn = vec3::norm(&k);
            if kn == 0.0 {
                out.put(p, CZERO);
                continue;
            }
            let khat = k.map(|x| x / kn);
            let v = self.at(p);
            let l = vec3::scale(&vec3::complexify(&khat), vec3::rdot(&khat, &v));
            out.put(p, vec3::sub(&v, &l));
        }
        out.transverse = true;
        out
    }

    /// Keep only the positive-energy polarization `e_h(k)` of the amplitude's helicity.
    pub fn project_helicity(&self) -> Self {
        let mut out = self.clone();
        for p in 0..self.grid.len() {
            let v = match Triad::new(self.grid.wavevector(p)) {
                None => CZERO,
                Some(t) => {
                    let e = onshell_polarization(&t, self.helicity);
                    vec3::scale(&e, vec3::hdot(&e, &self.at(p)))
                }
            };
            out.put(p, v);
        }
        out.transverse = true;
        out
    }

    /// Rescale to unit [`momentum_norm`].
    pub fn normalized(&self) -> Result<Self> {
        let norm = momentum_norm(self);
        if norm == 0.0 {
            return Err(Error::ZeroNorm);
        }
        let mut out = self.clone();
        let s = 1.0 / norm.sqrt();
        out.data.iter_mut().for_each(|z| *z *= s);
        Ok(out)
    }

    fn zero_mode_content(&self) -> f64 {
        (0..self.grid.len())
            .filter(|&p| vec3::norm(&self.grid.wavevector(p)) == 0.0)
            .map(|p| vec3::cnorm_sqr(&self.at(p)))
            .sum()
    }
}

/// Polarization of a positive-energy photon of helicity `h` along `triad`.
pub fn onshell_polarization(triad: &Triad, h: Helicity) -> CVec3 {
    match h {
        Helicity::Positive => triad.e_plus,
        Helicity::Negative => triad.e_minus,
    }
}

/// `(2 pi hbar)^-3 int d^3p |psi~|^2`, i.e. `sum_k |psi~(k)|^2 / V`.
pub fn momentum_norm(amp: &MomentumAmplitude) -> f64 {
    let sum: f64 = amp.data.iter().map(|z| z.norm_sqr()).sum();
    sum / amp.grid.volume()
}

/// `(2 pi hbar)^-3 int d^3p E(p) |psi~|^2` with `E = c hbar |k|`.
pub fn energy_expectation_momentum(amp: &MomentumAmplitude) -> f64 {
    let sum: f64 = (0..amp.grid.len())
        .map(|p| {
            let e = amp.units.energy(vec3::norm(&amp.grid.wavevector(p)));
            e * vec3::cnorm_sqr(&amp.at(p))
        })
        .sum();
    sum / amp.grid.volume()
}

/// Coordinate-space wave function at time `t` from an on-shell amplitude.
pub fn synthesize_onshell(amp: &MomentumAmplitude, t: f64, weight: WeightChoice) -> Result<ComplexVectorField> {
    if amp.zero_mode_content() > 0.0 {
        return Err(Error::ZeroModeAmplitude);
    }
    if !amp.transverse {
        let worst = (0..amp.grid.len())
            .map(|p| {
                let k = amp.grid.wavevector(p);
                let kn = vec3::norm(&k).max(f64::MIN_POSITIVE);
                vec3::rdot(&k, &amp.at(p)).norm() / kn
            })
            .fold(0.0, f64::max);
        return Err(Error::NotTransverse(worst));
    }
    let grid = &amp.grid;
    let n = grid.len();
    let c = amp.units.c();
    let scale = 1.0 / grid.volume();
    let mut data = amp.data.clone();
    for p in 0..n {
        let kn = vec3::norm(&grid.wavevector(p));
        let f = weight.factor(amp.units.energy(kn)) * scale;
        let phase = Complex64::from_polar(f, -c * kn * t);
        for comp in 0..3 {
            data[comp * n + p] *= phase;
        }
    }
    let plan = FftNd::new(&grid.dims());
    for chunk in data.chunks_mut(n) {
        plan.inverse_unnormalized(chunk);
    }
    let psi = ComplexVectorField::from_data(grid.clone(), amp.units, data, amp.helicity, Space::Coordinate)?;
    Ok(psi.with_time(t))
}

/// Invert [`synthesize_onshell`]: recover the amplitude of a coordinate-space field.
///
/// Modes with zero wavevector are dropped (warned about when not negligible),
/// as are all modes with `E = 0` under the `sqrt(E)` weight.
pub fn amplitude_from_field(psi: &ComplexVectorField, weight: WeightChoice) -> Result<MomentumAmplitude> {
    psi.require(Space::Coordinate)?;
    let hat = psi.to_momentum();
    let grid = psi.grid();
    let units = psi.units();
    let dv = grid.cell_volume();
    let c = units.c();
    let t = psi.time();
    let mut amp = MomentumAmplitude::zeros(grid.clone(), units, psi.helicity());
    let mut dropped = 0.0;
    for p in 0..grid.len() {
        let kn = vec3::norm(&grid.wavevector(p));
        let v = hat.at(p);
        if kn == 0.0 {
            dropped += vec3::cnorm_sqr(&v);
            continue;
        }
        let f = weight.factor(units.energy(kn));
        let undo = Complex64::from_polar(dv / f, c * kn * t);
        amp.put(p, vec3::scale(&v, undo));
    }
    let total: f64 = (0..grid.len()).map(|p| vec3::cnorm_sqr(&hat.at(p))).sum();
    if total > 0.0 && dropped > 1e-24 * total {
        warn!(
            "dropping {:.3e} of the field power sitting on zero-wavevector modes",
            dropped / total
        );
    }
    amp.refresh_flag();
    Ok(amp)
}

#[cfg(test)]
mod tests {
    use std::f64::consts::PI;

    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::propagator::{energy, evolve_spectral};

    fn box_grid() -> Grid3 {
        Grid3::cubic(8, 2.0 * PI).unwrap()
    }

    fn single_mode(grid: &Grid3, bin: [usize; 3], h: Helicity) -> MomentumAmplitude {
        let p = grid.index(bin[0], bin[1], bin[2]);
        let triad = Triad::new(grid.wavevector(p)).unwrap();
        let mut amp = MomentumAmplitude::zeros(grid.clone(), Units::default(), h);
        amp.set(p, onshell_polarization(&triad, h));
        amp.normalized().unwrap()
    }

    fn random_amplitude(grid: &Grid3, units: Units, seed: u64, kmax: f64) -> MomentumAmplitude {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let raw = MomentumAmplitude::from_fn(grid.clone(), units, Helicity::Positive, |k| {
            let inside = vec3::norm(&k) <= kmax && vec3::norm(&k) > 0.0;
            [0, 1, 2].map(|_| {
                let z = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                if inside {
                    z
                } else {
                    Complex64::new(0.0, 0.0)
                }
            })
        });
        raw.project_transverse().normalized().unwrap()
    }

    #[test]
    fn zero_amplitude_has_zero_norm() {
        let amp = MomentumAmplitude::zeros(box_grid(), Units::default(), Helicity::Positive);
        assert_eq!(momentum_norm(&amp), 0.0);
        assert!(matches!(amp.normalized(), Err(Error::ZeroNorm)));
    }

    #[test]
    fn normalizing_gives_unit_norm() {
        let amp = random_amplitude(&box_grid(), Units::default(), 1, 3.0);
        assert!((momentum_norm(&amp) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn two_equal_modes_share_the_norm() {
        let grid = box_grid();
        let mut amp = MomentumAmplitude::zeros(grid.clone(), Units::default(), Helicity::Positive);
        let (a, b) = (grid.index(1, 0, 0), grid.index(0, 2, 0));
        amp.set(a, [0.0.into(), 1.0.into(), 0.0.into()]);
        amp.set(b, [0.0.into(), 0.0.into(), 1.0.into()]);
        let amp = amp.normalized().unwrap();
        let v = grid.volume();
        assert!((vec3::cnorm_sqr(&amp.at(a)) / v - 0.5).abs() < 1e-15);
        assert!((vec3::cnorm_sqr(&amp.at(b)) / v - 0.5).abs() < 1e-15);
    }

    #[test]
    fn single_mode_unit_weight_is_a_plane_wave() {
        let grid = box_grid();
        let amp = single_mode(&grid, [0, 0, 2], Helicity::Positive);
        let psi = synthesize_onshell(&amp, 0.0, WeightChoice::Unit).unwrap();
        let first = vec3::cnorm_sqr(&psi.at(0));
        for p in 0..grid.len() {
            assert!((vec3::cnorm_sqr(&psi.at(p)) - first).abs() < 1e-15);
            // polarization stays e+ of k = 2 z
            assert!(psi.at(p)[2].norm() < 1e-15);
        }
        // unit norm spread over the box
        assert!((energy(&psi).unwrap() - 1.0).abs() < 1e-13);
    }

    #[test]
    fn synthesis_in_time_matches_spectral_evolution() {
        let grid = box_grid();
        for h in [Helicity::Positive, Helicity::Negative] {
            let amp = random_amplitude(&grid, Units::default(), 9, 3.0);
            let amp = MomentumAmplitude::from_data(grid.clone(), Units::default(), h, amp.data().to_vec())
                .unwrap()
                .project_helicity();
            let psi0 = synthesize_onshell(&amp, 0.0, WeightChoice::SqrtEnergy).unwrap();
            let later = synthesize_onshell(&amp, 0.7, WeightChoice::SqrtEnergy).unwrap();
            let evolved = evolve_spectral(&psi0, 0.7).unwrap();
            assert!(later.max_distance(&evolved) < 1e-13 * later.max_abs());
        }
    }

    #[test]
    fn sqrt_weight_rescales_modes_by_energy_ratio() {
        let grid = box_grid();
        let (a, b) = (grid.index(1, 0, 0), grid.index(0, 0, 3));
        let mut amp = MomentumAmplitude::zeros(grid.clone(), Units::default(), Helicity::Positive);
        amp.set(a, [0.0.into(), 1.0.into(), 0.0.into()]);
        amp.set(b, [1.0.into(), 0.0.into(), 0.0.into()]);
        let unit = synthesize_onshell(&amp, 0.0, WeightChoice::Unit).unwrap().to_momentum();
        let sqrt = synthesize_onshell(&amp, 0.0, WeightChoice::SqrtEnergy).unwrap().to_momentum();
        let ra = sqrt.at(a)[1] / unit.at(a)[1];
        let rb = sqrt.at(b)[0] / unit.at(b)[0];
        assert!(((rb / ra).re - 3f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn single_mode_energy_is_c_hbar_k() {
        let grid = box_grid();
        let units = Units::new(0.5, 3.0).unwrap();
        let p = grid.index(0, 0, 2);
        let triad = Triad::new(grid.wavevector(p)).unwrap();
        let mut amp = MomentumAmplitude::zeros(grid, units, Helicity::Positive);
        amp.set(p, triad.e_plus);
        let amp = amp.normalized().unwrap();
        assert!((energy_expectation_momentum(&amp) - 0.5 * 3.0 * 2.0).abs() < 1e-13);
    }

    #[test]
    fn equal_superposition_of_k1_and_k3_has_mean_two() {
        let grid = box_grid();
        let mut amp = MomentumAmplitude::zeros(grid.clone(), Units::default(), Helicity::Positive);
        amp.set(grid.index(1, 0, 0), [0.0.into(), 1.0.into(), 0.0.into()]);
        amp.set(grid.index(0, 3, 0), [1.0.into(), 0.0.into(), 0.0.into()]);
        let amp = amp.normalized().unwrap();
        assert!((energy_expectation_momentum(&amp) - 2.0).abs() < 1e-14);
    }

    #[test]
    fn energy_identity_holds_on_the_lattice() {
        let grid = Grid3::new([8, 10, 6], [5.0, 7.0, 3.0]).unwrap();
        let units = Units::new(1.3, 0.7).unwrap();
        for seed in 0..4 {
            let amp = random_amplitude(&grid, units, seed, 4.0);
            let mean = energy_expectation_momentum(&amp);
            for t in [0.0, 0.4, -2.5] {
                let psi = synthesize_onshell(&amp, t, WeightChoice::SqrtEnergy).unwrap();
                let e = energy(&psi).unwrap();
                assert!((e - mean).abs() < 1e-12 * mean, "{e} vs {mean}");
            }
            let psi = synthesize_onshell(&amp, 0.0, WeightChoice::Unit).unwrap();
            assert!((energy(&psi).unwrap() - momentum_norm(&amp)).abs() < 1e-12);
        }
    }

    #[test]
    fn rejects_zero_mode_and_longitudinal_amplitudes() {
        let grid = box_grid();
        let mut amp = MomentumAmplitude::zeros(grid.clone(), Units::default(), Helicity::Positive);
        amp.set(0, [1.0.into(), 0.0.into(), 0.0.into()]);
        assert!(matches!(
            synthesize_onshell(&amp, 0.0, WeightChoice::Unit),
            Err(Error::ZeroModeAmplitude)
        ));

        let mut amp = MomentumAmplitude::zeros(grid.clone(), Units::default(), Helicity::Positive);
        amp.set(grid.index(0, 0, 1), [0.0.into(), 0.0.into(), 1.0.into()]);
        assert!(!amp.is_transverse());
        assert!(matches!(
            synthesize_onshell(&amp, 0.0, WeightChoice::SqrtEnergy),
            Err(Error::NotTransverse(_))
        ));
    }

    #[test]
    fn amplitude_recovery_inverts_synthesis() {
        let grid = box_grid();
        let amp = random_amplitude(&grid, Units::default(), 4, 3.0);
        for w in [WeightChoice::Unit, WeightChoice::SqrtEnergy] {
            let psi = synthesize_onshell(&amp, 1.1, w).unwrap();
            let back = amplitude_from_field(&psi, w).unwrap();
            let err = back
                .data()
                .iter()
                .zip(amp.data())
                .map(|(a, b)| (a - b).norm())
                .fold(0.0, f64::max);
            assert!(err < 1e-12, "{err}");
        }
    }
}
