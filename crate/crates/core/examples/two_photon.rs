// A correlated photon pair: Schmidt number, joint Wigner function and a
// coincidence reading.

use std::f64::consts::PI;

use maxwell_photon::states::correlated_gaussian_pair;
use maxwell_photon::wigner::{
    joint_wigner_two_photon, schmidt_decomposition, two_photon_coincidence_rate, Grid1, PhaseSpacePoint,
};
use maxwell_photon::Result;

pub fn run_example() -> Result<()> {
    let axis = Grid1::new(32, 16.0)?;
    let pair = correlated_gaussian_pair(axis, axis, 1.0, 0.5)?;
    let schmidt = schmidt_decomposition(&pair)?;
    println!("Schmidt number        {:.6}", schmidt.schmidt_number());

    let w = joint_wigner_two_photon(&pair)?;
    println!("joint W integral      {:.10}", w.integral());

    let c = axis.len() / 2;
    let pt = PhaseSpacePoint::one_d(axis.x(c), 0.0);
    let reading = two_photon_coincidence_rate(&pair, &pt, &pt)?;
    let q = w.ps(0).len() / 2;
    println!("coincidence rate      {:.10}", reading.rate);
    println!("pi^2 W at origin      {:.10}", PI * PI * w.joint(c, q, c, q));
    println!("Re bracket            {:.10}", reading.bracket.re);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
