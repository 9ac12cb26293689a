//! Builders for the states the rest of the crate consumes.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fields::vec3::{self, CVec3};
use crate::fields::{Grid3, Helicity, Units};
use crate::normalization::{onshell_polarization, MomentumAmplitude};
use crate::propagator::Triad;
use crate::wigner::{Grid1, TransverseState, TwoPhotonState};

/// How each momentum mode is polarized.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Polarization {
    /// The positive-energy circular polarization `e_h(k)` of the state's helicity.
    Circular,
    /// A fixed complex vector, with its component along `k` removed per mode.
    Fixed([[f64; 2]; 3]),
}

impl Polarization {
    pub fn linear(v: [f64; 3]) -> Self {
        Polarization::Fixed(v.map(|x| [x, 0.0]))
    }

    fn vector(&self, k: [f64; 3], h: Helicity) -> CVec3 {
        let Some(triad) = Triad::new(k) else {
            return vec3::CZERO;
        };
        match self {
            Polarization::Circular => onshell_polarization(&triad, h),
            Polarization::Fixed(v) => {
                let v = v.map(|[re, im]| Complex64::new(re, im));
                let along = vec3::rdot(&triad.khat, &v);
                vec3::sub(&v, &vec3::scale(&vec3::complexify(&triad.khat), along))
            }
        }
    }
}

/// Normalized Gaussian wave packet `exp(-|k - k0|^2 / (4 sigma^2))` in momentum space.
pub fn gaussian_wavepacket(
    grid: &Grid3,
    units: Units,
    helicity: Helicity,
    k0: [f64; 3],
    sigma_k: f64,
    polarization: Polarization,
) -> Result<MomentumAmplitude> {
    if !(sigma_k.is_finite() && sigma_k > 0.0) {
        return Err(Error::param("width", format!("must be > 0, got {sigma_k}")));
    }
    let amp = MomentumAmplitude::from_fn(grid.clone(), units, helicity, |k| {
        let d2: f64 = (0..3).map(|a| (k[a] - k0[a]).powi(2)).sum();
        let envelope = (-d2 / (4.0 * sigma_k * sigma_k)).exp();
        vec3::scale(&polarization.vector(k, helicity), envelope.into())
    });
    amp.normalized().map_err(|_| {
        Error::param("polarization", "no transverse content survives on this lattice")
    })
}

/// A single occupied lattice mode, normalized.
pub fn single_mode(
    grid: &Grid3,
    units: Units,
    helicity: Helicity,
    bin: [usize; 3],
    polarization: Polarization,
) -> Result<MomentumAmplitude> {
    let dims = grid.dims();
    if (0..3).any(|a| bin[a] >= dims[a]) {
        return Err(Error::param("mode", format!("bin {bin:?} outside lattice {dims:?}")));
    }
    let p = grid.index(bin[0], bin[1], bin[2]);
    let k = grid.wavevector(p);
    if vec3::norm(&k) == 0.0 {
        return Err(Error::param("mode", "zero wavevector is not on the photon shell"));
    }
    let v = polarization.vector(k, helicity);
    if vec3::cnorm_sqr(&v).sqrt() < 1e-12 {
        return Err(Error::param("polarization", "parallel to k, no transverse content"));
    }
    let mut amp = MomentumAmplitude::zeros(grid.clone(), units, helicity);
    amp.set(p, v);
    amp.normalized()
}

/// Seeded random transverse amplitude supported on `0 < |k| <= k_max`, normalized.
pub fn random_bandlimited(
    grid: &Grid3,
    units: Units,
    helicity: Helicity,
    k_max: f64,
    seed: u64,
) -> Result<MomentumAmplitude> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let raw = MomentumAmplitude::from_fn(grid.clone(), units, helicity, |k| {
        let kn = vec3::norm(&k);
        let v: CVec3 = [0, 1, 2].map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
        if kn > 0.0 && kn <= k_max {
            v
        } else {
            vec3::CZERO
        }
    });
    raw.project_transverse()
        .normalized()
        .map_err(|_| Error::param("k_max", "no lattice modes inside the band"))
}

/// Physicists' Hermite polynomial `H_n(x)`.
pub fn hermite(n: usize, x: f64) -> f64 {
    let (mut prev, mut cur) = (1.0, 2.0 * x);
    if n == 0 {
        return prev;
    }
    for k in 1..n {
        let next = 2.0 * x * cur - 2.0 * k as f64 * prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Continuum Hermite-Gauss mode `H_n(x/w) exp(-x^2 / 2w^2)`, normalized on the real line.
pub fn hermite_gauss(order: usize, waist: f64, x: f64) -> f64 {
    let u = x / waist;
    let fact: f64 = (1..=order).map(|k| k as f64).product();
    let norm = (2f64.powi(order as i32) * fact * std::f64::consts::PI.sqrt() * waist).sqrt();
    hermite(order, u) * (-0.5 * u * u).exp() / norm
}

/// Hermite-Gauss mode displaced to `x0` with mean momentum `p0`, normalized on the lattice.
pub fn hermite_gauss_1d(axis: Grid1, hbar: f64, order: usize, waist: f64, x0: f64, p0: f64) -> Result<TransverseState> {
    if !(waist.is_finite() && waist > 0.0) {
        return Err(Error::param("waist", format!("must be > 0, got {waist}")));
    }
    TransverseState::from_fn_1d(axis, hbar, |x| {
        Complex64::from_polar(hermite_gauss(order, waist, x - x0), p0 * x / hbar)
    })?
    .normalized()
}

/// Product mode `HG_m(x) HG_n(y)`, normalized on the lattice.
pub fn hermite_gauss_2d(ax: Grid1, ay: Grid1, hbar: f64, orders: (usize, usize), waist: f64) -> Result<TransverseState> {
    if !(waist.is_finite() && waist > 0.0) {
        return Err(Error::param("waist", format!("must be > 0, got {waist}")));
    }
    TransverseState::from_fn_2d(ax, ay, hbar, |x, y| {
        (hermite_gauss(orders.0, waist, x) * hermite_gauss(orders.1, waist, y)).into()
    })?
    .normalized()
}

/// Correlated Gaussian pair whose position density is a bivariate normal
/// with unit variances and correlation `r`.
pub fn correlated_gaussian_pair(a1: Grid1, a2: Grid1, hbar: f64, r: f64) -> Result<TwoPhotonState> {
    if !(r.is_finite() && r.abs() < 1.0) {
        return Err(Error::param("correlation", format!("must lie in (-1, 1), got {r}")));
    }
    let q = 4.0 * (1.0 - r * r);
    TwoPhotonState::from_fn(a1, a2, hbar, |x1, x2| {
        ((-(x1 * x1 + x2 * x2 - 2.0 * r * x1 * x2) / q).exp()).into()
    })?
    .normalized()
}
