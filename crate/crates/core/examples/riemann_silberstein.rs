// Build psi from a pair of real fields, take it apart again, and check that
// the other helicity is the complex conjugate.

use maxwell_photon::fields::{riemann_silberstein, split_real_imag};
use maxwell_photon::{Grid3, Helicity, RealFieldPair, Result, Units};

pub fn run_example() -> Result<()> {
    let grid = Grid3::cubic(8, 2.0 * std::f64::consts::PI)?;
    let units = Units::new(1.0, 1.0)?;
    // plane wave along z, E along x, B along y
    let fields = RealFieldPair::from_fn(grid, units, |[_, _, z]| {
        let c = (2.0 * z).cos();
        ([c, 0.0, 0.0], [0.0, c, 0.0])
    });

    let plus = riemann_silberstein(&fields, Helicity::Positive);
    let minus = riemann_silberstein(&fields, Helicity::Negative);
    let back = split_real_imag(&plus)?;

    let conj_gap = plus
        .data()
        .iter()
        .zip(minus.data())
        .map(|(a, b)| (a.conj() - b).norm())
        .fold(0.0, f64::max);
    println!("round trip error      {:.3e}", back.max_distance(&fields));
    println!("psi_- vs conj(psi_+)  {conj_gap:.3e}");
    println!("field energy          {:.6}", fields.energy());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
