//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

use std::f64::consts::{FRAC_1_PI, PI};
use std::process::ExitCode;
use std::time::Instant;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use maxwell_photon::fields::{
    riemann_silberstein, split_real_imag, transversality_residual, transverse_part, ComplexVectorField, Grid3,
    Helicity, Space, Units,
};
use maxwell_photon::normalization::{
    energy_expectation_momentum, synthesize_onshell, WeightChoice,
};
use maxwell_photon::propagator::{energy, evolve_maxwell_real, evolve_modes, evolve_spectral, StepperConfig};
use maxwell_photon::states::{
    correlated_gaussian_pair, gaussian_wavepacket, hermite_gauss, hermite_gauss_1d, hermite_gauss_2d,
    random_bandlimited, Polarization,
};
use maxwell_photon::wigner::{
    factorization_residual, joint_wigner_two_photon, sagnac_count_rate, two_photon_coincidence_rate, wigner_1d,
    wigner_2d, Grid1, PhaseSpacePoint, TransverseState, TwoPhotonState,
};

type Check = Result<String, String>;

fn verdict(ok: bool, detail: String) -> Check {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn packet(h: Helicity) -> ComplexVectorField {
    let grid = Grid3::cubic(32, 2.0 * PI).unwrap();
    let amp = gaussian_wavepacket(&grid, Units::default(), h, [0.0, 0.0, 3.0], 1.0, Polarization::Circular).unwrap();
    synthesize_onshell(&amp, 0.0, WeightChoice::SqrtEnergy).unwrap()
}

fn criterion_1() -> Check {
    let psi = packet(Helicity::Positive);
    let t = 1.0;
    let spectral = split_real_imag(&evolve_spectral(&psi, t).unwrap()).unwrap();
    let start = split_real_imag(&psi).unwrap();
    let dev = |dt: f64| {
        let real = evolve_maxwell_real(&start, t, &StepperConfig::rk4(dt).unwrap()).unwrap();
        real.relative_deviation(&spectral)
    };
    let coarse = dev(1e-3);
    let fine = dev(5e-4);
    let order = (coarse / fine).log2();
    verdict(
        coarse < 1e-6 && (order - 4.0).abs() <= 0.2,
        format!("deviation {coarse:.3e} at dt=1e-3, {fine:.3e} at dt=5e-4, exponent {order:.3}"),
    )
}

fn criterion_2() -> Check {
    let psi = packet(Helicity::Positive);
    let e0 = energy(&psi).unwrap();
    let mut drift = 0.0f64;
    for t in [-25.0, -1.0, 0.1, 1.0, 7.5, 1e3] {
        let e = energy(&evolve_spectral(&psi, t).unwrap()).unwrap();
        drift = drift.max((e - e0).abs() / e0);
    }
    let hat = psi.to_momentum();
    let moved = evolve_modes(&hat, 3.7).unwrap();
    let mode = |f: &ComplexVectorField, p: usize| f.at(p).iter().map(|z| z.norm_sqr()).sum::<f64>();
    let n = hat.grid().len();
    let scale = (0..n).map(|p| mode(&hat, p)).fold(0.0, f64::max);
    let per_mode = (0..n).map(|p| (mode(&moved, p) - mode(&hat, p)).abs()).fold(0.0, f64::max) / scale;
    verdict(
        drift < 1e-12 && per_mode < 1e-14,
        format!("energy drift {drift:.3e}, per-mode drift {per_mode:.3e}"),
    )
}

fn random_field(grid: &Grid3, h: Helicity, seed: u64) -> ComplexVectorField {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let data = (0..3 * grid.len())
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    ComplexVectorField::from_data(grid.clone(), Units::default(), data, h, Space::Coordinate).unwrap()
}

fn criterion_3() -> Check {
    let grid = Grid3::new([16, 12, 20], [3.0, 2.0, 5.0]).unwrap();
    let mut worst = 0.0f64;
    for (seed, h) in [(1, Helicity::Positive), (2, Helicity::Negative)] {
        let psi = transverse_part(&random_field(&grid, h, seed)).unwrap();
        for t in [0.3, 2.0, -11.0] {
            let out = evolve_spectral(&psi, t).unwrap();
            worst = worst.max(transversality_residual(&out.to_momentum()).unwrap());
        }
    }
    verdict(worst < 1e-13, format!("max |k.psi|/max|psi| = {worst:.3e}"))
}

fn criterion_4() -> Check {
    let grid = Grid3::new([16, 16, 12], [2.0 * PI, 5.0, 4.0]).unwrap();
    let units = Units::new(0.8, 1.7).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut worst = 0.0f64;
    for seed in 0..6 {
        let amp = random_bandlimited(&grid, units, Helicity::Positive, 5.0, seed).unwrap();
        let t = rng.gen_range(-3.0..3.0);
        let psi = synthesize_onshell(&amp, t, WeightChoice::SqrtEnergy).unwrap();
        let coord = energy(&psi).unwrap();
        let mean = energy_expectation_momentum(&amp);
        worst = worst.max((coord - mean).abs() / mean);
    }
    verdict(worst < 1e-10, format!("6 random amplitudes, max relative error {worst:.3e}"))
}

fn criterion_5() -> Check {
    let fields = split_real_imag(&packet(Helicity::Positive)).unwrap();
    let mut worst = 0.0f64;
    for t in [0.5, 1.0, -2.0] {
        let plus = evolve_spectral(&riemann_silberstein(&fields, Helicity::Positive), t).unwrap();
        let minus = evolve_spectral(&riemann_silberstein(&fields, Helicity::Negative), t).unwrap();
        let a = split_real_imag(&plus).unwrap();
        let b = split_real_imag(&minus).unwrap();
        worst = worst.max(b.relative_deviation(&a));
    }
    verdict(worst < 1e-12, format!("max (E,B) deviation between helicities {worst:.3e}"))
}

/// Composite Simpson quadrature of the Wigner integral on the continuum amplitude.
fn quadrature_wigner(psi: &dyn Fn(f64) -> Complex64, hbar: f64, x: f64, p: f64) -> f64 {
    let (half, m) = (12.0, 4000);
    let h = 2.0 * half / m as f64;
    let mut acc = Complex64::new(0.0, 0.0);
    for k in 0..=m {
        let s = -half + k as f64 * h;
        let w = match k {
            0 => 1.0,
            _ if k == m => 1.0,
            _ if k % 2 == 1 => 4.0,
            _ => 2.0,
        };
        acc += w * psi(x + s).conj() * psi(x - s) * Complex64::from_polar(1.0, 2.0 * p * s / hbar);
    }
    acc.re * h / 3.0 / (PI * hbar)
}

type Amplitude = Box<dyn Fn(f64) -> Complex64>;

fn wigner_cases() -> Vec<(&'static str, Amplitude)> {
    let superposition = |x: f64| {
        (Complex64::from(hermite_gauss(0, 1.0, x)) + Complex64::new(0.6, 0.8) * hermite_gauss(1, 1.0, x))
            / 2f64.sqrt()
    };
    vec![
        ("HG0", Box::new(|x| hermite_gauss(0, 1.0, x).into())),
        ("HG1", Box::new(|x| hermite_gauss(1, 1.0, x).into())),
        ("HG2", Box::new(|x| hermite_gauss(2, 1.0, x).into())),
        (
            "displaced Gaussian",
            Box::new(|x| Complex64::from_polar(hermite_gauss(0, 1.0, x - 1.2), 0.9 * x)),
        ),
        ("HG0+HG1", Box::new(superposition)),
    ]
}

fn axis_1d() -> Grid1 {
    Grid1::new(128, 20.0).unwrap()
}

fn criterion_6() -> Check {
    let mut worst = 0.0f64;
    let mut origin = Vec::new();
    for (name, psi) in wigner_cases() {
        let state = TransverseState::from_fn_1d(axis_1d(), 1.0, &psi).unwrap().normalized().unwrap();
        let w = wigner_1d(&state).unwrap();
        for i in (0..128).step_by(4) {
            for q in (0..128).step_by(4) {
                let want = quadrature_wigner(psi.as_ref(), 1.0, w.xs(0)[i], w.ps(0)[q]);
                worst = worst.max((w.get(&[i], &[q]) - want).abs());
            }
        }
        if name == "HG0" || name == "HG1" {
            origin.push(w.get(&[64], &[64]));
        }
    }
    let e0 = (origin[0] - FRAC_1_PI).abs();
    let e1 = (origin[1] + FRAC_1_PI).abs();
    verdict(
        worst < 1e-8 && e0 < 1e-6 && e1 < 1e-6,
        format!("5 states, max |W_fft - W_quad| = {worst:.3e}; W(0,0) errors {e0:.1e} (+1/pi), {e1:.1e} (-1/pi)"),
    )
}

fn fit(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let icpt = my - slope * mx;
    let resid = xs.iter().zip(ys).map(|(x, y)| (y - slope * x - icpt).abs()).fold(0.0, f64::max);
    (slope, resid)
}

fn criterion_7() -> Check {
    // one axis: first odd mode with a momentum kick
    let a = axis_1d();
    let psi = |x: f64| Complex64::from_polar(hermite_gauss(1, 1.0, x - 0.3), 0.5 * x);
    let state = TransverseState::from_fn_1d(a, 1.0, psi).unwrap().normalized().unwrap();
    let (mut oracle, mut excess) = (Vec::new(), Vec::new());
    for i in 54..=74 {
        for k in 0..21 {
            let p = -2.0 + 0.2 * k as f64;
            let r = sagnac_count_rate(&state, &PhaseSpacePoint::one_d(a.x(i), p)).unwrap();
            oracle.push(quadrature_wigner(&psi, 1.0, a.x(i), p));
            excess.push(r.rate - 0.5);
        }
    }
    let (s1, r1) = fit(&oracle, &excess);

    // two axes: HG0(x) HG1(y), scanning (x0, p0) with y0 = py0 = 0.3 fixed
    let b = Grid1::new(64, 16.0).unwrap();
    let state2 = hermite_gauss_2d(b, b, 1.0, (0, 1), 1.0).unwrap();
    let hg0 = |x: f64| Complex64::from(hermite_gauss(0, 1.0, x));
    let hg1 = |x: f64| Complex64::from(hermite_gauss(1, 1.0, x));
    let (y0, py0) = (b.x(33), 0.3);
    let wy = quadrature_wigner(&hg1, 1.0, y0, py0);
    let (mut oracle2, mut excess2) = (Vec::new(), Vec::new());
    for i in 22..=42 {
        for k in 0..21 {
            let p = -2.0 + 0.2 * k as f64;
            let pt = PhaseSpacePoint::two_d([b.x(i), y0], [p, py0]);
            let r = sagnac_count_rate(&state2, &pt).unwrap();
            oracle2.push(quadrature_wigner(&hg0, 1.0, b.x(i), p) * wy);
            excess2.push(r.rate - 0.5);
        }
    }
    let (s2, r2) = fit(&oracle2, &excess2);
    let (want1, want2) = (PI / 2.0, PI * PI / 2.0);
    verdict(
        (s1 - want1).abs() < 1e-8 && r1 < 1e-8 && (s2 - want2).abs() < 1e-8 && r2 < 1e-8,
        format!(
            "21x21 scans: d=1 slope {s1:.10} (pi/2 = {want1:.10}) residual {r1:.2e}; d=2 slope {s2:.10} (pi^2/2) residual {r2:.2e}"
        ),
    )
}

fn criterion_8() -> Check {
    let (hbar, waist, order, x0, p0) = (0.7, 0.9, 2, 0.6, -1.1);
    let state = hermite_gauss_1d(axis_1d(), hbar, order, waist, x0, p0).unwrap();
    let w = wigner_1d(&state).unwrap();
    let mut ex = 0.0f64;
    for (x, m) in w.xs(0).iter().zip(w.position_marginal()) {
        ex = ex.max((m - hermite_gauss(order, waist, x - x0).powi(2)).abs());
    }
    // the Fourier transform of a Hermite-Gauss mode is the same mode with waist hbar/waist
    let mut ep = 0.0f64;
    for (p, m) in w.ps(0).iter().zip(w.momentum_marginal()) {
        ep = ep.max((m - hermite_gauss(order, hbar / waist, p - p0).powi(2)).abs());
    }

    let b = Grid1::new(48, 14.0).unwrap();
    let state2 = hermite_gauss_2d(b, b, 1.0, (1, 2), 1.0).unwrap();
    let w2 = wigner_2d(&state2).unwrap();
    let mut e2 = 0.0f64;
    for (f, m) in w2.position_marginal().iter().enumerate() {
        let (x, y) = (b.x(f / 48), b.x(f % 48));
        e2 = e2.max((m - (hermite_gauss(1, 1.0, x) * hermite_gauss(2, 1.0, y)).powi(2)).abs());
    }
    verdict(
        ex < 1e-8 && ep < 1e-8 && e2 < 1e-8,
        format!("|psi(x)|^2 error {ex:.2e}, |psi~(p)|^2 error {ep:.2e}, two-axis position marginal error {e2:.2e}"),
    )
}

fn criterion_9() -> Check {
    let a = Grid1::new(32, 16.0).unwrap();
    let phi = hermite_gauss_1d(a, 1.0, 1, 1.0, 0.4, 0.0).unwrap();
    let chi = hermite_gauss_1d(a, 1.0, 0, 1.3, -0.5, 0.6).unwrap();
    let product = TwoPhotonState::product(&phi, &chi).unwrap();
    let joint = joint_wigner_two_photon(&product).unwrap();
    let (w1, w2) = (wigner_1d(&phi).unwrap(), wigner_1d(&chi).unwrap());
    let mut fact = factorization_residual(&product).unwrap();
    for i1 in 0..32 {
        for q1 in 0..32 {
            for i2 in 0..32 {
                for q2 in 0..32 {
                    let want = w1.get(&[i1], &[q1]) * w2.get(&[i2], &[q2]);
                    fact = fact.max((joint.joint(i1, q1, i2, q2) - want).abs());
                }
            }
        }
    }

    let pair = correlated_gaussian_pair(a, a, 1.0, 0.5).unwrap();
    let jw = joint_wigner_two_photon(&pair).unwrap();
    let norm = (jw.integral() - 1.0).abs();
    let mut bracket = 0.0f64;
    for (i1, q1, i2, q2) in [(16, 16, 16, 16), (14, 18, 17, 15), (18, 12, 13, 19), (15, 20, 16, 11), (19, 16, 19, 17)] {
        let pt1 = PhaseSpacePoint::one_d(a.x(i1), jw.ps(0)[q1]);
        let pt2 = PhaseSpacePoint::one_d(a.x(i2), jw.ps(1)[q2]);
        let r = two_photon_coincidence_rate(&pair, &pt1, &pt2).unwrap();
        bracket = bracket.max((r.bracket.re - PI * PI * jw.joint(i1, q1, i2, q2)).abs());
    }
    verdict(
        fact < 1e-8 && norm < 1e-8 && bracket < 1e-8,
        format!("factorization {fact:.2e}, normalization {norm:.2e}, parity product vs (pi hbar)^2 W {bracket:.2e}"),
    )
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Check); 9] = [
        ("1 spectral vs RK4 real-field evolution", criterion_1),
        ("2 energy conservation", criterion_2),
        ("3 transversality", criterion_3),
        ("4 energy identity", criterion_4),
        ("5 helicity rule", criterion_5),
        ("6 Wigner oracle equivalence", criterion_6),
        ("7 Sagnac linearity", criterion_7),
        ("8 Wigner marginals", criterion_8),
        ("9 two-photon joint Wigner", criterion_9),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let start = Instant::now();
        let result = run();
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("PASS criterion {name}: {detail} [{secs:.1}s]"),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {name}: {detail} [{secs:.1}s]");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} acceptance criteria failed");
        ExitCode::FAILURE
    }
}
