//! Multi-dimensional FFTs over row-major (C order) complex arrays.
//!
//! Forward transforms carry `exp(-i k.r)` and are unnormalized; inverse
//! transforms carry `exp(+i k.r)` and divide by the number of points, so
//! `inverse(forward(x)) == x` up to rounding.

use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftDirection, FftPlanner};

/// Reusable plans for one array shape.
pub struct FftNd {
    dims: Vec<usize>,
    forward: Vec<Arc<dyn Fft<f64>>>,
    inverse: Vec<Arc<dyn Fft<f64>>>,
}

impl FftNd {
    pub fn new(dims: &[usize]) -> Self {
        let mut planner = FftPlanner::new();
        let forward = dims
            .iter()
            .map(|&n| planner.plan_fft(n, FftDirection::Forward))
            .collect();
        let inverse = dims
            .iter()
            .map(|&n| planner.plan_fft(n, FftDirection::Inverse))
            .collect();
        Self {
            dims: dims.to_vec(),
            forward,
            inverse,
        }
    }

    pub fn len(&self) -> usize {
        self.dims.iter().product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn forward(&self, data: &mut [Complex64]) {
        self.run(data, &self.forward);
    }

    /// Inverse transform including the `1/N` factor.
    pub fn inverse(&self, data: &mut [Complex64]) {
        self.inverse_unnormalized(data);
        let scale = 1.0 / self.len() as f64;
        data.iter_mut().for_each(|z| *z *= scale);
    }

    /// Inverse transform without the `1/N` factor: `sum_k X_k exp(+i k.r)`.
    pub fn inverse_unnormalized(&self, data: &mut [Complex64]) {
        self.run(data, &self.inverse);
    }

    fn run(&self, data: &mut [Complex64], plans: &[Arc<dyn Fft<f64>>]) {
        assert_eq!(data.len(), self.len(), "array length does not match plan");
        for (axis, plan) in plans.iter().enumerate() {
            transform_axis(data, &self.dims, axis, plan.as_ref());
        }
    }
}

fn transform_axis(data: &mut [Complex64], dims: &[usize], axis: usize, plan: &dyn Fft<f64>) {
    let n = dims[axis];
    if n == 1 {
        return;
    }
    let stride: usize = dims[axis + 1..].iter().product();
    if stride == 1 {
        // lines are contiguous; rustfft walks consecutive chunks
        plan.process(data);
        return;
    }
    let outer: usize = dims[..axis].iter().product();
    // gather each block of `stride` interleaved lines into contiguous rows
    let mut buf = vec![Complex64::new(0.0, 0.0); n * stride];
    let mut scratch = vec![Complex64::new(0.0, 0.0); plan.get_inplace_scratch_len()];
    for o in 0..outer {
        let block = &mut data[o * n * stride..(o + 1) * n * stride];
        for j in 0..n {
            for (s, v) in block[j * stride..(j + 1) * stride].iter().enumerate() {
                buf[s * n + j] = *v;
            }
        }
        plan.process_with_scratch(&mut buf, &mut scratch);
        for j in 0..n {
            for (s, v) in block[j * stride..(j + 1) * stride].iter_mut().enumerate() {
                *v = buf[s * n + j];
            }
        }
    }
}

/// Signed integer frequency index of FFT bin `i` for an axis of length `n`
/// (numpy `fftfreq` ordering: `0, 1, .., -n/2, .., -1`).
pub fn signed_index(i: usize, n: usize) -> i64 {
    let positive = (n - 1) / 2 + 1;
    if i < positive {
        i as i64
    } else {
        i as i64 - n as i64
    }
}

/// True when bin `i` is the unpaired Nyquist bin of an even-length axis.
pub fn is_nyquist(i: usize, n: usize) -> bool {
    n.is_multiple_of(2) && i == n / 2
}
