macro_rules! example {
    ($module:ident, $file:literal) => {
        mod $module {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", $file));
        }
    };
}

example!(riemann_silberstein, "riemann_silberstein.rs");
example!(spectral_evolution, "spectral_evolution.rs");
example!(energy_identity, "energy_identity.rs");
example!(wigner_modes, "wigner_modes.rs");
example!(sagnac_scan, "sagnac_scan.rs");
example!(two_photon, "two_photon.rs");
example!(pwf_files, "pwf_files.rs");

#[test]
fn riemann_silberstein_example_runs() {
    riemann_silberstein::run_example().expect("riemann_silberstein example");
}

#[test]
fn spectral_evolution_example_runs() {
    spectral_evolution::run_example().expect("spectral_evolution example");
}

#[test]
fn energy_identity_example_runs() {
    energy_identity::run_example().expect("energy_identity example");
}

#[test]
fn wigner_modes_example_runs() {
    wigner_modes::run_example().expect("wigner_modes example");
}

#[test]
fn sagnac_scan_example_runs() {
    sagnac_scan::run_example().expect("sagnac_scan example");
}

#[test]
fn two_photon_example_runs() {
    two_photon::run_example().expect("two_photon example");
}

#[test]
fn pwf_files_example_runs() {
    pwf_files::run_example().expect("pwf_files example");
}
