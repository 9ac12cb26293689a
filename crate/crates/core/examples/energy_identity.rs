// With the sqrt(E) weight the coordinate-space norm of psi is the mean
// photon energy.

use maxwell_photon::normalization::{
    energy_expectation_momentum, momentum_norm, synthesize_onshell, WeightChoice,
};
use maxwell_photon::propagator::energy;
use maxwell_photon::states::random_bandlimited;
use maxwell_photon::{Grid3, Helicity, Result, Units};

pub fn run_example() -> Result<()> {
    let grid = Grid3::cubic(16, 2.0 * std::f64::consts::PI)?;
    let units = Units::new(1.0, 1.0)?;
    let amp = random_bandlimited(&grid, units, Helicity::Positive, 4.0, 7)?;

    let mean = energy_expectation_momentum(&amp);
    println!("momentum norm         {:.12}", momentum_norm(&amp));
    println!("<E> from amplitudes   {mean:.12}");
    for t in [0.0, 0.5, 1.0] {
        let psi = synthesize_onshell(&amp, t, WeightChoice::SqrtEnergy)?;
        let coord = energy(&psi)?;
        println!("t={t:<4} int |psi|^2   {coord:.12}  (diff {:.1e})", (coord - mean).abs());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
