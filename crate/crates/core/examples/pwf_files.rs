// Write a field to a `.pwf` file and read it back bit for bit.

use maxwell_photon::normalization::{synthesize_onshell, WeightChoice};
use maxwell_photon::pwf::PwfFile;
use maxwell_photon::states::{single_mode, Polarization};
use maxwell_photon::{Grid3, Helicity, Result, Units};

pub fn run_example() -> Result<()> {
    let grid = Grid3::cubic(8, 2.0 * std::f64::consts::PI)?;
    let units = Units::new(1.0, 1.0)?;
    let amp = single_mode(&grid, units, Helicity::Negative, [1, 0, 2], Polarization::Circular)?;
    let psi = synthesize_onshell(&amp, 0.0, WeightChoice::SqrtEnergy)?;

    let path = std::env::temp_dir().join(format!("pwf_example_{}.pwf", std::process::id()));
    PwfFile::from_field(&psi).with_metadata("note", "single mode").write_path(&path)?;
    let read = PwfFile::read_path(&path)?;
    let back = read.to_field()?;
    std::fs::remove_file(&path)?;

    let same = psi.data().iter().zip(back.data()).all(|(a, b)| {
        a.re.to_bits() == b.re.to_bits() && a.im.to_bits() == b.im.to_bits()
    });
    println!("payload values        {}", read.header.payload_len());
    println!("bit-exact round trip  {same}");
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
