// Evolve a Gaussian packet exactly per mode and compare with RK4 on the
// real Maxwell equations.

use maxwell_photon::fields::split_real_imag;
use maxwell_photon::normalization::{synthesize_onshell, WeightChoice};
use maxwell_photon::propagator::{energy, evolve_maxwell_real, evolve_spectral, StepperConfig};
use maxwell_photon::states::{gaussian_wavepacket, Polarization};
use maxwell_photon::{Grid3, Helicity, Result, Units};

pub fn run_example() -> Result<()> {
    let grid = Grid3::cubic(12, 2.0 * std::f64::consts::PI)?;
    let units = Units::new(1.0, 1.0)?;
    let amp = gaussian_wavepacket(&grid, units, Helicity::Positive, [0.0, 0.0, 2.0], 1.0, Polarization::Circular)?;
    let psi0 = synthesize_onshell(&amp, 0.0, WeightChoice::SqrtEnergy)?;

    let t = 0.2;
    let exact = evolve_spectral(&psi0, t)?;
    let rk4 = evolve_maxwell_real(&split_real_imag(&psi0)?, t, &StepperConfig::rk4(2e-3)?)?;
    let dev = rk4.relative_deviation(&split_real_imag(&exact)?);

    println!("energy at 0           {:.12}", energy(&psi0)?);
    println!("energy at t={t:<10}{:.12}", energy(&exact)?);
    println!("RK4 relative deviation {dev:.3e}");
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
