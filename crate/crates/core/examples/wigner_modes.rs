// Wigner functions of the first Hermite-Gauss modes and their marginals.

use maxwell_photon::states::hermite_gauss_1d;
use maxwell_photon::wigner::{wigner_1d, Grid1};
use maxwell_photon::Result;

pub fn run_example() -> Result<()> {
    let axis = Grid1::new(128, 20.0)?;
    for n in 0..3 {
        let state = hermite_gauss_1d(axis, 1.0, n, 1.0, 0.0, 0.0)?;
        let w = wigner_1d(&state)?;
        let i0 = axis.len() / 2;
        let q0 = w.ps(0).len() / 2;
        let density = state.density();
        let marginal_gap = w
            .position_marginal()
            .iter()
            .zip(&density)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        println!(
            "n={n}  W(0,0)={:+.6}  integral={:.10}  |x-marginal - |psi|^2|={marginal_gap:.1e}",
            w.get(&[i0], &[q0]),
            w.integral(),
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
