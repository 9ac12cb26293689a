use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;

use crate::fields::vec3::{self, CVec3, RVec3};
use crate::fields::Grid3;

/// Circular polarization triad for one nonzero mode.
///
/// `khat x e_plus = -i e_plus` and `khat x e_minus = +i e_minus`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Triad {
    pub k_norm: f64,
    pub khat: RVec3,
    pub e_plus: CVec3,
    pub e_minus: CVec3,
}

impl Triad {
    /// Triad for wavevector `k`, or `None` when `k` vanishes.
    pub fn new(k: RVec3) -> Option<Self> {
        let k_norm = vec3::norm(&k);
        if k_norm == 0.0 {
            return None;
        }
        let khat = k.map(|x| x / k_norm);
        let axis = if khat[0].abs() > 0.9 {
            [0.0, 1.0, 0.0]
        } else {
            [1.0, 0.0, 0.0]
        };
        let e1 = vec3::cross(&axis, &khat);
        let n1 = vec3::norm(&e1);
        let e1 = e1.map(|x| x / n1);
        let e2 = vec3::cross(&khat, &e1);
        let i = Complex64::new(0.0, 1.0);
        let e_plus = [0, 1, 2].map(|a| (e1[a] + i * e2[a]) * FRAC_1_SQRT_2);
        let e_minus = [0, 1, 2].map(|a| (e1[a] - i * e2[a]) * FRAC_1_SQRT_2);
        Some(Self {
            k_norm,
            khat,
            e_plus,
            e_minus,
        })
    }

    /// Components `(a_plus, a_minus, a_long)` of `v` in this triad.
    pub fn decompose(&self, v: &CVec3) -> (Complex64, Complex64, Complex64) {
        (
            vec3::hdot(&self.e_plus, v),
            vec3::hdot(&self.e_minus, v),
            vec3::rdot(&self.khat, v),
        )
    }

    pub fn compose(&self, plus: Complex64, minus: Complex64, long: Complex64) -> CVec3 {
        [0, 1, 2].map(|a| plus * self.e_plus[a] + minus * self.e_minus[a] + long * self.khat[a])
    }
}

/// Per-mode triads for every bin of a grid; bins with zero wavevector hold `None`.
#[derive(Clone, Debug)]
pub struct HelicityBasis {
    triads: Vec<Option<Triad>>,
}

impl HelicityBasis {
    pub fn triad(&self, flat: usize) -> Option<&Triad> {
        self.triads[flat].as_ref()
    }

    pub fn len(&self) -> usize {
        self.triads.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triads.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = Option<&Triad>> {
        self.triads.iter().map(Option::as_ref)
    }
}

pub fn helicity_basis(grid: &Grid3) -> HelicityBasis {
    HelicityBasis {
        triads: (0..grid.len()).map(|p| Triad::new(grid.wavevector(p))).collect(),
    }
}
