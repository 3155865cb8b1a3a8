//! Type-I discrete cosine transform `y_k = sum_{n=0}^{m} x_n cos(k n pi / m)`
//! of length `m + 1`, applied along the axes of a row-major tensor.

use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use crate::exec::Execution;
use crate::trig::cos_table;

/// How each one-dimensional transform is computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DctStrategy {
    /// Direct sums for tensors below [`NAIVE_LIMIT`] entries, FFT above.
    #[default]
    Auto,
    Naive,
    Fast,
}

pub const NAIVE_LIMIT: usize = 4096;

/// Direct `O(m^2)` transform with exactly reduced cosines.
pub fn dct1_naive(x: &[f64]) -> Vec<f64> {
    let m = x.len().saturating_sub(1);
    if m == 0 {
        return x.to_vec();
    }
    let table = cos_table(m as u64);
    (0..=m)
        .map(|k| {
            let mut acc = 0.0;
            for (n, &v) in x.iter().enumerate() {
                acc += v * table[(k * n) % (2 * m)];
            }
            acc
        })
        .collect()
}

/// Precomputed FFT of the even extension, length `2m`.
#[derive(Clone)]
pub struct FastDct1 {
    m: usize,
    fft: Arc<dyn Fft<f64>>,
}

impl FastDct1 {
    pub fn new(m: usize) -> Self {
        let fft = FftPlanner::new().plan_fft_forward((2 * m).max(1));
        FastDct1 { m, fft }
    }

    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        let m = self.m;
        assert_eq!(x.len(), m + 1, "input length must be m + 1");
        if m == 0 {
            return x.to_vec();
        }
        let mut buf: Vec<Complex64> = (0..2 * m)
            .map(|n| Complex64::new(if n <= m { x[n] } else { x[2 * m - n] }, 0.0))
            .collect();
        self.fft.process(&mut buf);
        (0..=m)
            .map(|k| {
                let tail = if k % 2 == 0 { x[m] } else { -x[m] };
                0.5 * (buf[k].re + x[0] + tail)
            })
            .collect()
    }
}

pub fn dct1_fast(x: &[f64]) -> Vec<f64> {
    FastDct1::new(x.len().saturating_sub(1)).apply(x)
}

/// Transforms `data` (row-major with shape `dims`) along every axis in turn.
pub fn dct1_tensor(data: &mut [f64], dims: &[usize], strategy: DctStrategy, exec: Execution) {
    let total: usize = dims.iter().product();
    assert_eq!(data.len(), total, "tensor size does not match its shape");
    let fast = match strategy {
        DctStrategy::Auto => total >= NAIVE_LIMIT,
        DctStrategy::Naive => false,
        DctStrategy::Fast => true,
    };
    for axis in 0..dims.len() {
        let len = dims[axis];
        let stride: usize = dims[axis + 1..].iter().product();
        let lines = total / len;
        let plan = fast.then(|| FastDct1::new(len - 1));
        let start = |line: usize| (line / stride) * stride * len + line % stride;
        let transformed = exec.map(lines, |line| {
            let s = start(line);
            let x: Vec<f64> = (0..len).map(|k| data[s + k * stride]).collect();
            match &plan {
                Some(p) => p.apply(&x),
                None => dct1_naive(&x),
            }
        });
        for (line, y) in transformed.into_iter().enumerate() {
            let s = start(line);
            for (k, v) in y.into_iter().enumerate() {
                data[s + k * stride] = v;
            }
        }
    }
}
