use std::f64::consts::PI;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use log::warn;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::Common;
use crate::error::{Error, Result};
use crate::export::{write_scan_csv, write_wigner_csv};
use crate::fields::{split_real_imag, Grid3, Helicity, Space, Units};
use crate::normalization::{
    amplitude_from_field, energy_expectation_momentum, momentum_norm, synthesize_onshell, MomentumAmplitude,
    WeightChoice,
};
use crate::propagator::{energy, evolve_maxwell_real, evolve_spectral, StepperConfig};
use crate::pwf::{PwfFile, Record};
use crate::states::{self, Polarization};
use crate::wigner::{
    factorization_residual, joint_wigner_two_photon, sagnac_count_rate, schmidt_decomposition,
    two_photon_coincidence_rate, wigner_at, wigner_1d, wigner_2d, Grid1, PhaseSpacePoint, TransverseState,
    TwoPhotonState, WignerGrid,
};

/// Cross-oracle deviation above which `evolve --oracle` fails.
const ORACLE_TOL: f64 = 1e-6;
/// Relative tolerance on the energy identities checked by `norms`.
const IDENTITY_TOL: f64 = 1e-10;
/// Tolerance on Wigner linearity and parity identities.
const WIGNER_TOL: f64 = 1e-8;
const MAX_HG_ORDER: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StateKind {
    Gaussian,
    SingleMode,
    Random,
    HermiteGauss,
    TwoPhotonGaussian,
}

#[derive(Debug, Clone, Default, clap::Args, Serialize, Deserialize)]
pub struct MakeStateArgs {
    #[arg(long, value_enum)]
    pub kind: Option<StateKind>,
    /// Grid points per axis, e.g. `32,32,32`.
    #[arg(long, value_delimiter = ',')]
    pub dims: Option<Vec<usize>>,
    /// Box sides, e.g. `6.283,6.283,6.283`.
    #[arg(long, value_delimiter = ',')]
    pub lengths: Option<Vec<f64>>,
    /// Packet center wavevector.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub k0: Option<Vec<f64>>,
    /// Momentum-space standard deviation of the packet.
    #[arg(long)]
    pub width: Option<f64>,
    /// `circular` or a fixed vector `x,y,z`.
    #[arg(long, allow_hyphen_values = true)]
    pub polarization: Option<String>,
    /// `+` or `-`.
    #[arg(long, allow_hyphen_values = true)]
    pub helicity: Option<String>,
    /// `sqrt_energy` or `unit`.
    #[arg(long)]
    pub weight: Option<String>,
    /// `coordinate` (synthesized field) or `momentum` (amplitude).
    #[arg(long)]
    pub space: Option<String>,
    /// Lattice bin of a single mode, e.g. `0,0,1`.
    #[arg(long, value_delimiter = ',')]
    pub mode: Option<Vec<usize>>,
    #[arg(long)]
    pub k_max: Option<f64>,
    #[arg(long)]
    pub order: Option<usize>,
    /// Second-axis order; makes a two-axis Hermite-Gauss state.
    #[arg(long)]
    pub order_y: Option<usize>,
    /// Transverse points per axis.
    #[arg(long)]
    pub points: Option<usize>,
    /// Transverse box length.
    #[arg(long)]
    pub length: Option<f64>,
    #[arg(long)]
    pub waist: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub x0: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub p0: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub correlation: Option<f64>,
}

#[derive(Debug, Clone, Default, clap::Args, Serialize, Deserialize)]
pub struct EvolveArgs {
    /// Evolution time (may be negative).
    #[arg(long, allow_hyphen_values = true)]
    pub t: Option<f64>,
    /// RK4 step for the oracle.
    #[arg(long)]
    pub dt: Option<f64>,
    #[arg(long)]
    pub method: Option<String>,
    /// Also run the real-field RK4 path and report the deviation.
    #[arg(long)]
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub oracle: bool,
}

#[derive(Debug, Clone, Default, clap::Args, Serialize, Deserialize)]
pub struct NormsArgs {
    /// Weight used to synthesize the input when its header has none.
    #[arg(long)]
    pub weight: Option<String>,
}

#[derive(Debug, Clone, Default, clap::Args, Serialize, Deserialize)]
pub struct WignerArgs {}

#[derive(Debug, Clone, Default, clap::Args, Serialize, Deserialize)]
pub struct SagnacArgs {
    /// `x0` range `lo,hi` (snapped to the lattice).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub x_range: Option<Vec<f64>>,
    /// `p0` range `lo,hi`.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub p_range: Option<Vec<f64>>,
    /// Samples per range.
    #[arg(long)]
    pub points: Option<usize>,
    /// Fixed second-axis displacement for two-axis states.
    #[arg(long, allow_hyphen_values = true)]
    pub y0: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub py0: Option<f64>,
}

#[derive(Debug, Clone, Default, clap::Args, Serialize, Deserialize)]
pub struct TwoPhotonArgs {}

fn required<T>(v: Option<T>, name: &str) -> Result<T> {
    v.ok_or_else(|| Error::param(name, "required"))
}

fn units(common: &Common) -> Result<Units> {
    Units::new(common.hbar.unwrap_or(1.0), common.c.unwrap_or(1.0))
}

fn parse_helicity(s: Option<&str>) -> Result<Helicity> {
    match s.unwrap_or("+") {
        "+" | "positive" | "plus" => Ok(Helicity::Positive),
        "-" | "negative" | "minus" => Ok(Helicity::Negative),
        other => Err(Error::param("helicity", format!("expected + or -, got {other}"))),
    }
}

fn parse_weight(s: Option<&str>) -> Result<WeightChoice> {
    match s.unwrap_or("sqrt_energy") {
        "sqrt_energy" | "sqrt-energy" => Ok(WeightChoice::SqrtEnergy),
        "unit" => Ok(WeightChoice::Unit),
        other => Err(Error::param("weight", format!("expected sqrt_energy or unit, got {other}"))),
    }
}

fn parse_space(s: Option<&str>) -> Result<Space> {
    match s.unwrap_or("coordinate") {
        "coordinate" => Ok(Space::Coordinate),
        "momentum" => Ok(Space::Momentum),
        other => Err(Error::param("space", format!("expected coordinate or momentum, got {other}"))),
    }
}

fn parse_polarization(s: Option<&str>) -> Result<Polarization> {
    match s.unwrap_or("circular") {
        "circular" => Ok(Polarization::Circular),
        text => {
            let parts: std::result::Result<Vec<f64>, _> = text.split(',').map(|p| p.trim().parse()).collect();
            match parts.as_deref() {
                Ok([x, y, z]) => Ok(Polarization::linear([*x, *y, *z])),
                _ => Err(Error::param("polarization", format!("expected circular or x,y,z, got {text}"))),
            }
        }
    }
}

fn triple<T: Copy>(v: Option<&Vec<T>>, default: [T; 3], name: &str) -> Result<[T; 3]> {
    match v {
        None => Ok(default),
        Some(v) if v.len() == 3 => Ok([v[0], v[1], v[2]]),
        Some(v) => Err(Error::param(name, format!("expected 3 values, got {}", v.len()))),
    }
}

fn report(stdout: &mut impl Write, value: &Value) -> Result<()> {
    writeln!(stdout, "{}", serde_json::to_string(value)?)?;
    Ok(())
}

fn with_ext(prefix: &Path, ext: &str) -> PathBuf {
    prefix.with_extension(ext)
}

pub fn make_state(common: &Common, args: &MakeStateArgs, stdout: &mut impl Write) -> Result<()> {
    let out = required(common.out.clone(), "out")?;
    let units = units(common)?;
    let kind = args.kind.unwrap_or(StateKind::Gaussian);
    let builder = serde_json::to_value(args)?;
    let mut file = match kind {
        StateKind::Gaussian | StateKind::SingleMode | StateKind::Random => {
            let dims = triple(args.dims.as_ref(), [32; 3], "dims")?;
            let lengths = triple(args.lengths.as_ref(), [2.0 * PI; 3], "lengths")?;
            let grid = Grid3::new(dims, lengths)?;
            let helicity = parse_helicity(args.helicity.as_deref())?;
            let polarization = parse_polarization(args.polarization.as_deref())?;
            let weight = parse_weight(args.weight.as_deref())?;
            let amp = match kind {
                StateKind::Gaussian => states::gaussian_wavepacket(
                    &grid,
                    units,
                    helicity,
                    triple(args.k0.as_ref(), [0.0, 0.0, 3.0], "k0")?,
                    args.width.unwrap_or(1.0),
                    polarization,
                )?,
                StateKind::SingleMode => states::single_mode(
                    &grid,
                    units,
                    helicity,
                    triple(Some(&required(args.mode.clone(), "mode")?), [0; 3], "mode")?,
                    polarization,
                )?,
                _ => states::random_bandlimited(&grid, units, helicity, args.k_max.unwrap_or(3.0), common.seed.unwrap_or(0))?,
            };
            writeln!(
                stdout,
                "# {kind:?} state on {dims:?}: momentum norm {:.15}, <E> = {:.15}",
                momentum_norm(&amp),
                energy_expectation_momentum(&amp)
            )?;
            match parse_space(args.space.as_deref())? {
                Space::Momentum => PwfFile::from_amplitude(&amp, Some(weight)),
                Space::Coordinate => {
                    let psi = synthesize_onshell(&amp, 0.0, weight)?;
                    let mut f = PwfFile::from_field(&psi);
                    f.header.weight = Some(weight);
                    f
                }
            }
        }
        StateKind::HermiteGauss => {
            let order = args.order.unwrap_or(0);
            if order > MAX_HG_ORDER || args.order_y.is_some_and(|o| o > MAX_HG_ORDER) {
                return Err(Error::param("order", format!("orders 0..={MAX_HG_ORDER} are supported")));
            }
            let axis = Grid1::new(args.points.unwrap_or(128), args.length.unwrap_or(20.0))?;
            let waist = args.waist.unwrap_or(1.0);
            let state = match args.order_y {
                None => states::hermite_gauss_1d(
                    axis,
                    units.hbar(),
                    order,
                    waist,
                    args.x0.unwrap_or(0.0),
                    args.p0.unwrap_or(0.0),
                )?,
                Some(oy) => states::hermite_gauss_2d(axis, axis, units.hbar(), (order, oy), waist)?,
            };
            writeln!(stdout, "# Hermite-Gauss state on {:?}", state.dims())?;
            PwfFile::from_transverse(&state)
        }
        StateKind::TwoPhotonGaussian => {
            let axis = Grid1::new(args.points.unwrap_or(32), args.length.unwrap_or(16.0))?;
            let pair = states::correlated_gaussian_pair(axis, axis, units.hbar(), args.correlation.unwrap_or(0.5))?;
            writeln!(stdout, "# correlated photon pair on {:?}", pair.as_transverse().dims())?;
            PwfFile::from_two_photon(&pair)
        }
    };
    file = file.with_metadata("builder", builder);
    if let Some(seed) = common.seed {
        file = file.with_metadata("seed", seed);
    }
    file.write_path(&out)?;
    report(
        stdout,
        &json!({"command": "make-state", "kind": kind, "out": out, "seed": common.seed}),
    )
}

fn read_record(common: &Common) -> Result<(PwfFile, Record)> {
    let path = required(common.input.clone(), "in")?;
    let file = PwfFile::read_path(&path)?;
    let record = file.decode()?;
    Ok((file, record))
}

pub fn evolve(common: &Common, args: &EvolveArgs, stdout: &mut impl Write) -> Result<()> {
    let out = required(common.out.clone(), "out")?;
    let (file, record) = read_record(common)?;
    let Record::Field(psi0) = record else {
        return Err(Error::Format("evolve needs a field record".into()));
    };
    let t = args.t.unwrap_or(1.0);
    let cfg = StepperConfig::rk4(args.dt.unwrap_or(1e-3))?;
    if let Some(m) = args.method.as_deref() {
        if m != "rk4" {
            return Err(Error::param("method", format!("only rk4 is available, got {m}")));
        }
    }
    let psi = evolve_spectral(&psi0, t)?;
    let mut written = PwfFile::from_field(&psi);
    written.header.weight = file.header.weight;
    written.header.metadata = file.header.metadata.clone();
    if let Some(seed) = common.seed {
        written = written.with_metadata("seed", seed);
    }
    written.write_path(&out)?;

    let e0 = energy(&psi0)?;
    let e1 = energy(&psi)?;
    let drift = if e0 > 0.0 { (e1 - e0).abs() / e0 } else { 0.0 };
    writeln!(stdout, "# evolved to t = {}; relative energy drift {drift:.3e}", psi.time())?;

    let mut deviation = Value::Null;
    if args.oracle {
        let real = evolve_maxwell_real(&split_real_imag(&psi0)?, t, &cfg)?;
        let spectral = split_real_imag(&psi)?;
        let dev = real.relative_deviation(&spectral);
        writeln!(stdout, "# RK4 oracle (dt = {}): max relative deviation {dev:.3e}", cfg.dt)?;
        deviation = json!(dev);
        report(
            stdout,
            &json!({"command": "evolve", "t": t, "dt": cfg.dt, "energy_drift": drift, "oracle_deviation": deviation}),
        )?;
        if dev >= ORACLE_TOL {
            return Err(Error::InvariantBreach(format!(
                "RK4 oracle deviation {dev:e} exceeds {ORACLE_TOL:e}"
            )));
        }
        return Ok(());
    }
    report(
        stdout,
        &json!({"command": "evolve", "t": t, "dt": cfg.dt, "energy_drift": drift, "oracle_deviation": deviation}),
    )
}

fn rel(a: f64, b: f64) -> f64 {
    let scale = a.abs().max(b.abs());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).abs() / scale
    }
}

pub fn norms(common: &Common, args: &NormsArgs, stdout: &mut impl Write) -> Result<()> {
    let (file, record) = read_record(common)?;
    let weight = match file.header.weight {
        Some(w) => w,
        None => parse_weight(args.weight.as_deref())?,
    };
    let (amp, psi): (MomentumAmplitude, _) = match record {
        Record::Field(psi) => (amplitude_from_field(&psi, weight)?, psi),
        Record::Amplitude(amp, _) => {
            let psi = synthesize_onshell(&amp, 0.0, weight)?;
            (amp, psi)
        }
        _ => return Err(Error::Format("norms needs a field or amplitude record".into())),
    };
    let norm = momentum_norm(&amp);
    let mean = energy_expectation_momentum(&amp);
    let coord = energy(&psi)?;
    let mut warning = Value::Null;
    if coord == 0.0 && norm == 0.0 {
        warn!("field is identically zero");
        warning = json!("field is identically zero");
    }
    let identity = match weight {
        WeightChoice::SqrtEnergy => rel(coord, mean),
        WeightChoice::Unit => rel(coord, norm),
    };
    let normalized_density = if mean > 0.0 { coord / mean } else { 0.0 };
    writeln!(
        stdout,
        "# momentum norm {norm:.15}, coordinate integral {coord:.15}, <E> {mean:.15}"
    )?;
    let value = json!({
        "command": "norms",
        "weight": weight,
        "momentum_norm": norm,
        "coordinate_energy": coord,
        "energy_expectation_momentum": mean,
        "relative_differences": {
            "coordinate_vs_expectation": rel(coord, mean),
            "coordinate_vs_norm": rel(coord, norm),
            "expectation_vs_norm": rel(mean, norm),
        },
        "identity_residual": identity,
        "energy_density_integral": normalized_density,
        "warning": warning,
    });
    if let Some(out) = &common.out {
        let mut w = BufWriter::new(File::create(out)?);
        serde_json::to_writer_pretty(&mut w, &value)?;
        w.flush()?;
    }
    report(stdout, &value)?;
    if identity >= IDENTITY_TOL {
        return Err(Error::InvariantBreach(format!(
            "energy identity residual {identity:e} exceeds {IDENTITY_TOL:e}"
        )));
    }
    Ok(())
}

fn write_wigner_outputs(w: &WignerGrid, prefix: &Path, seed: Option<u64>) -> Result<()> {
    let csv = BufWriter::new(File::create(with_ext(prefix, "csv"))?);
    write_wigner_csv(w, csv)?;
    let mut file = PwfFile::from_wigner(w);
    if let Some(seed) = seed {
        file = file.with_metadata("seed", seed);
    }
    file.write_path(with_ext(prefix, "pwf"))
}

fn origin_index(w: &WignerGrid) -> (Vec<usize>, Vec<usize>) {
    let xi = (0..w.ndim()).map(|a| w.xs(a).len() / 2).collect();
    let pi = (0..w.ndim()).map(|a| w.ps(a).len() / 2).collect();
    (xi, pi)
}

pub fn wigner(common: &Common, _args: &WignerArgs, stdout: &mut impl Write) -> Result<()> {
    let out = required(common.out.clone(), "out")?;
    let (_, record) = read_record(common)?;
    let state = match record {
        Record::Transverse(s) => s,
        Record::TwoPhoton(s) => s.as_transverse().clone(),
        _ => return Err(Error::Format("wigner needs a transverse or two-photon record".into())),
    };
    let w = match state.ndim() {
        1 => wigner_1d(&state)?,
        _ => wigner_2d(&state)?,
    };
    write_wigner_outputs(&w, &out, common.seed)?;
    let (xi, pi) = origin_index(&w);
    let at_origin = w.get(&xi, &pi);
    let min = w.values().iter().copied().fold(f64::INFINITY, f64::min);
    writeln!(stdout, "# W(origin) = {at_origin:.12}, min W = {min:.6}, integral = {:.12}", w.integral())?;
    report(
        stdout,
        &json!({
            "command": "wigner",
            "shape": w.shape(),
            "hbar": w.hbar(),
            "x_range": (0..w.ndim()).map(|a| [w.xs(a)[0], *w.xs(a).last().unwrap()]).collect::<Vec<_>>(),
            "p_range": (0..w.ndim()).map(|a| [w.ps(a)[0], *w.ps(a).last().unwrap()]).collect::<Vec<_>>(),
            "w_origin": at_origin,
            "w_min": min,
            "integral": w.integral(),
            "max_imag_residue": w.max_imag_residue(),
        }),
    )
}

fn linspace(range: Option<&Vec<f64>>, default: [f64; 2], n: usize, name: &str) -> Result<Vec<f64>> {
    let [lo, hi] = match range {
        None => default,
        Some(r) if r.len() == 2 => [r[0], r[1]],
        Some(r) => return Err(Error::param(name, format!("expected lo,hi, got {} values", r.len()))),
    };
    if n == 0 {
        return Err(Error::param("points", "must be >= 1"));
    }
    if n == 1 {
        return Ok(vec![lo]);
    }
    Ok((0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect())
}

fn snap(axis: &Grid1, x: f64) -> Result<usize> {
    let i = (x / axis.dx()).round() as i64 + (axis.len() / 2) as i64;
    if i < 0 || i >= axis.len() as i64 {
        return Err(Error::param("x_range", format!("{x} lies outside the lattice")));
    }
    Ok(i as usize)
}

/// Least-squares fit `y = slope x + intercept`, with the largest residual.
pub(crate) fn linear_fit(xs: &[f64], ys: &[f64]) -> Option<(f64, f64, f64)> {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    if sxx == 0.0 {
        return None;
    }
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let worst = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| (y - slope * x - intercept).abs())
        .fold(0.0, f64::max);
    Some((slope, intercept, worst))
}

pub fn sagnac_scan(common: &Common, args: &SagnacArgs, stdout: &mut impl Write) -> Result<()> {
    let (_, record) = read_record(common)?;
    let Record::Transverse(state) = record else {
        return Err(Error::Format("sagnac-scan needs a transverse record".into()));
    };
    let n = args.points.unwrap_or(21);
    let xs = linspace(args.x_range.as_ref(), [-2.0, 2.0], n, "x_range")?;
    let ps = linspace(args.p_range.as_ref(), [-2.0, 2.0], n, "p_range")?;
    let axes = state.axes().to_vec();
    let d = state.ndim();
    let y_idx = if d == 2 { Some(snap(&axes[1], args.y0.unwrap_or(0.0))?) } else { None };
    let py0 = args.py0.unwrap_or(0.0);

    let mut rows = Vec::with_capacity(xs.len() * ps.len());
    let mut oracle = Vec::with_capacity(rows.capacity());
    for &x in &xs {
        let ix = snap(&axes[0], x)?;
        let x0 = axes[0].x(ix);
        for &p0 in &ps {
            let (xv, pv, idx) = match y_idx {
                None => (vec![x0], vec![p0], vec![ix]),
                Some(iy) => (vec![x0, axes[1].x(iy)], vec![p0, py0], vec![ix, iy]),
            };
            let pt = PhaseSpacePoint::new(xv.clone(), pv.clone())?;
            let reading = sagnac_count_rate(&state, &pt)?;
            oracle.push(wigner_at(&state, &idx, &pv)?);
            rows.push((xv, pv, reading));
        }
    }
    if let Some(out) = &common.out {
        write_scan_csv(&rows, BufWriter::new(File::create(with_ext(out, "csv"))?))?;
    }
    let excess: Vec<f64> = rows.iter().map(|r| r.2.rate - 0.5).collect();
    let expected = (PI * state.hbar()).powi(d as i32) / 2.0;
    let fit = linear_fit(&oracle, &excess);
    let value = json!({
        "command": "sagnac-scan",
        "samples": rows.len(),
        "expected_slope": expected,
        "slope": fit.map(|f| f.0),
        "intercept": fit.map(|f| f.1),
        "max_residual": fit.map(|f| f.2),
        "rate": if rows.len() == 1 { json!(rows[0].2.rate) } else { Value::Null },
    });
    match fit {
        Some((slope, _, worst)) => writeln!(
            stdout,
            "# slope {slope:.12} (expected {expected:.12}), max residual {worst:.3e}"
        )?,
        None => writeln!(stdout, "# rate {:.12} at the single scan point", rows[0].2.rate)?,
    }
    report(stdout, &value)?;
    if let Some((slope, _, worst)) = fit {
        if (slope - expected).abs() > WIGNER_TOL * expected || worst > WIGNER_TOL {
            return Err(Error::InvariantBreach(format!(
                "rate is not linear in W: slope {slope}, residual {worst:e}"
            )));
        }
    }
    Ok(())
}

pub fn two_photon(common: &Common, _args: &TwoPhotonArgs, stdout: &mut impl Write) -> Result<()> {
    let (_, record) = read_record(common)?;
    let state: TwoPhotonState = match record {
        Record::TwoPhoton(s) => s,
        Record::Transverse(s) => TwoPhotonState::new(s)?,
        _ => return Err(Error::Format("two-photon needs a two-photon record".into())),
    };
    let joint = joint_wigner_two_photon(&state)?;
    if let Some(out) = &common.out {
        write_wigner_outputs(&joint, out, common.seed)?;
    }
    let schmidt = schmidt_decomposition(&state)?;
    let residual = factorization_residual(&state)?;
    let parity_dev = parity_check(&state, &joint)?;
    writeln!(
        stdout,
        "# Schmidt number {:.6}, factorization residual {residual:.3e}, parity identity deviation {parity_dev:.3e}",
        schmidt.schmidt_number()
    )?;
    report(
        stdout,
        &json!({
            "command": "two-photon",
            "shape": joint.shape(),
            "integral": joint.integral(),
            "schmidt_number": schmidt.schmidt_number(),
            "factorization_residual": residual,
            "parity_identity_deviation": parity_dev,
        }),
    )?;
    if parity_dev > WIGNER_TOL {
        return Err(Error::InvariantBreach(format!(
            "coincidence bracket deviates from the joint Wigner by {parity_dev:e}"
        )));
    }
    Ok(())
}

/// Largest `|bracket/(pi hbar)^2 - W|` over a spread of lattice points.
fn parity_check(state: &TwoPhotonState, joint: &WignerGrid) -> Result<f64> {
    let s: &TransverseState = state.as_transverse();
    let axes = s.axes();
    let offsets = [-3i64, 0, 2];
    let mut worst = 0.0f64;
    let pick = |n: usize, o: i64| ((n / 2) as i64 + o).clamp(0, n as i64 - 1) as usize;
    for &o1 in &offsets {
        for &o2 in &offsets {
            for &q1 in &offsets {
                for &q2 in &offsets {
                    let (i1, i2) = (pick(axes[0].len(), o1), pick(axes[1].len(), o2));
                    let (j1, j2) = (pick(axes[0].len(), q1), pick(axes[1].len(), q2));
                    let pt1 = PhaseSpacePoint::one_d(axes[0].x(i1), joint.ps(0)[j1]);
                    let pt2 = PhaseSpacePoint::one_d(axes[1].x(i2), joint.ps(1)[j2]);
                    let reading = two_photon_coincidence_rate(state, &pt1, &pt2)?;
                    worst = worst.max((reading.derived_w - joint.joint(i1, j1, i2, j2)).abs());
                }
            }
        }
    }
    Ok(worst)
}
