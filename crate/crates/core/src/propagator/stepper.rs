use log::warn;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fields::vec3;
use crate::fields::{transverse_project, Helicity, RealFieldPair};
use crate::spectral::FftNd;

/// Longitudinal content above this fraction of the field is projected out with a warning.
const LONGITUDINAL_WARN: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Rk4,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct StepperConfig {
    pub dt: f64,
    pub method: Method,
}

impl StepperConfig {
    pub fn rk4(dt: f64) -> Result<Self> {
        let cfg = Self { dt, method: Method::Rk4 };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.dt.is_finite() && self.dt > 0.0) {
            return Err(Error::param("dt", format!("must be > 0, got {}", self.dt)));
        }
        Ok(())
    }

    /// Number of equal steps covering `|t|` with a step no longer than `dt`.
    pub fn steps_for(&self, t: f64) -> usize {
        let n = (t.abs() / self.dt).round().max(1.0) as usize;
        if t.abs() / n as f64 > self.dt * (1.0 + 1e-9) {
            n + 1
        } else {
            n
        }
    }
}

/// RK4 integration of `dE/dt = c curl B`, `dB/dt = -c curl E` with spectral curls.
pub fn evolve_maxwell_real(fields0: &RealFieldPair, t: f64, cfg: &StepperConfig) -> Result<RealFieldPair> {
    cfg.validate()?;
    let mut state = strip_longitudinal(fields0)?;
    if t == 0.0 {
        return Ok(state);
    }
    let steps = cfg.steps_for(t);
    let h = t / steps as f64;
    let c = fields0.units().c();
    let mut curls = CurlPair::new(&state);
    let len = state.e_field().len();

    let mut k = [vec![0.0; 2 * len], vec![0.0; 2 * len], vec![0.0; 2 * len], vec![0.0; 2 * len]];
    let mut stage = vec![0.0; 2 * len];
    let mut y: Vec<f64> = state.e_field().iter().chain(state.b_field()).copied().collect();

    for _ in 0..steps {
        for s in 0..4 {
            let weight = match s {
                0 => 0.0,
                1 | 2 => 0.5 * h,
                _ => h,
            };
            if s == 0 {
                stage.copy_from_slice(&y);
            } else {
                for ((st, yv), kv) in stage.iter_mut().zip(&y).zip(&k[s - 1]) {
                    *st = yv + weight * kv;
                }
            }
            let (e, b) = stage.split_at(len);
            let (curl_e, curl_b) = curls.compute(e, b);
            let (de, db) = k[s].split_at_mut(len);
            for i in 0..len {
                de[i] = c * curl_b[i];
                db[i] = -c * curl_e[i];
            }
        }
        for (i, yv) in y.iter_mut().enumerate() {
            *yv += h / 6.0 * (k[0][i] + 2.0 * k[1][i] + 2.0 * k[2][i] + k[3][i]);
        }
    }

    let (e_out, b_out) = state.planes_mut();
    e_out.copy_from_slice(&y[..len]);
    b_out.copy_from_slice(&y[len..]);
    state.set_time(fields0.time() + t);
    Ok(state)
}

fn strip_longitudinal(fields: &RealFieldPair) -> Result<RealFieldPair> {
    // E and B are real, so E + iB carries both through one complex projection
    let packed = crate::fields::riemann_silberstein(fields, Helicity::Positive).to_momentum();
    let (_, mut l) = transverse_project(&packed)?;
    // uniform fields are divergence free and stay put, so k = 0 is not stripped
    let grid = packed.grid().clone();
    for p in 0..grid.len() {
        if vec3::norm(&grid.wavevector(p)) == 0.0 {
            l.set(p, vec3::CZERO);
        }
    }
    let scale = packed.max_abs();
    let long = l.max_abs();
    if scale == 0.0 || long <= LONGITUDINAL_WARN * scale {
        return Ok(fields.clone());
    }
    warn!(
        "initial fields carry longitudinal content ({:.3e} of the peak mode); projecting it out",
        long / scale
    );
    let mut t = packed;
    for (z, dl) in t.data_mut().iter_mut().zip(l.data()) {
        *z -= dl;
    }
    let mut out = crate::fields::split_real_imag(&t.to_coordinate())?;
    out.set_time(fields.time());
    Ok(out)
}

/// Curls of two real fields from one complex transform of `E + iB`.
struct CurlPair {
    grid: crate::fields::Grid3,
    plan: FftNd,
    wavevectors: Vec<[f64; 3]>,
    buf: Vec<Complex64>,
    curl_e: Vec<f64>,
    curl_b: Vec<f64>,
}

impl CurlPair {
    fn new(fields: &RealFieldPair) -> Self {
        let grid = fields.grid().clone();
        let n = grid.len();
        Self {
            plan: FftNd::new(&grid.dims()),
            wavevectors: (0..n).map(|p| grid.wavevector(p)).collect(),
            grid,
            buf: vec![Complex64::new(0.0, 0.0); 3 * n],
            curl_e: vec![0.0; 3 * n],
            curl_b: vec![0.0; 3 * n],
        }
    }

    fn compute(&mut self, e: &[f64], b: &[f64]) -> (&[f64], &[f64]) {
        let n = self.grid.len();
        for ((z, &ev), &bv) in self.buf.iter_mut().zip(e).zip(b) {
            *z = Complex64::new(ev, bv);
        }
        for chunk in self.buf.chunks_mut(n) {
            self.plan.forward(chunk);
        }
        // i k x v, with the inverse transform's 1/N folded in
        let i = Complex64::new(0.0, 1.0 / n as f64);
        let (x, rest) = self.buf.split_at_mut(n);
        let (y, z) = rest.split_at_mut(n);
        for p in 0..n {
            let k = self.wavevectors[p];
            let v = [x[p], y[p], z[p]];
            let curl = vec3::rcross(&k, &v);
            x[p] = i * curl[0];
            y[p] = i * curl[1];
            z[p] = i * curl[2];
        }
        for chunk in self.buf.chunks_mut(n) {
            self.plan.inverse_unnormalized(chunk);
        }
        for (idx, z) in self.buf.iter().enumerate() {
            self.curl_e[idx] = z.re;
            self.curl_b[idx] = z.im;
        }
        (&self.curl_e, &self.curl_b)
    }
}
