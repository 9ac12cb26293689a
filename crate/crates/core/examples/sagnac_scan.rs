// Count rates of the displaced-parity interferometer along a line in
// phase space, compared with the Wigner function.

use std::f64::consts::PI;

use maxwell_photon::states::hermite_gauss_1d;
use maxwell_photon::wigner::{sagnac_count_rate, wigner_at, Grid1, PhaseSpacePoint};
use maxwell_photon::Result;

pub fn run_example() -> Result<()> {
    let axis = Grid1::new(128, 20.0)?;
    let hbar = 1.0;
    let state = hermite_gauss_1d(axis, hbar, 1, 1.0, 0.0, 0.0)?;
    let p0 = 0.25;
    println!("{:>8} {:>10} {:>16}", "x0", "rate", "(1+pi*hbar*W)/2");
    for i in (52..=76).step_by(4) {
        let x0 = axis.x(i);
        let r = sagnac_count_rate(&state, &PhaseSpacePoint::one_d(x0, p0))?;
        let w = wigner_at(&state, &[i], &[p0])?;
        println!("{x0:8.3} {:10.6} {:16.6}", r.rate, 0.5 + 0.5 * PI * hbar * w);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
