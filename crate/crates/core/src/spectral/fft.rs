//! Thread-local FFT plans.
//!
//! Coefficients are stored normalized: `c_k = (1/N) sum_j g(x_j) e^{-2 pi i k x_j / L}`,
//! i.e. the integral Fourier coefficient divided by the domain length, so that
//! `g(x) = sum_k c_k e^{2 pi i k x / L}`.

use std::cell::RefCell;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftDirection, FftPlanner};

thread_local! {
    static PLANNER: RefCell<FftPlanner<f64>> = RefCell::new(FftPlanner::new());
}

fn plan(n: usize, direction: FftDirection) -> Arc<dyn Fft<f64>> {
    PLANNER.with(|p| p.borrow_mut().plan_fft(n, direction))
}

/// Physical samples -> normalized coefficients, in place.
pub(crate) fn forward_1d(buf: &mut [Complex64]) {
    let n = buf.len();
    plan(n, FftDirection::Forward).process(buf);
    let scale = 1.0 / n as f64;
    for c in buf.iter_mut() {
        *c *= scale;
    }
}

/// Normalized coefficients -> physical samples, in place.
pub(crate) fn inverse_1d(buf: &mut [Complex64]) {
    plan(buf.len(), FftDirection::Inverse).process(buf);
}

fn transform_2d(buf: &mut [Complex64], n: usize, direction: FftDirection) {
    debug_assert_eq!(buf.len(), n * n);
    let fft = plan(n, direction);
    let mut scratch = vec![Complex64::default(); fft.get_inplace_scratch_len()];
    // rows are contiguous
    for row in buf.chunks_exact_mut(n) {
        fft.process_with_scratch(row, &mut scratch);
    }
    let mut column = vec![Complex64::default(); n];
    for i in 0..n {
        for j in 0..n {
            column[j] = buf[j * n + i];
        }
        fft.process_with_scratch(&mut column, &mut scratch);
        for j in 0..n {
            buf[j * n + i] = column[j];
        }
    }
}

pub(crate) fn forward_2d(buf: &mut [Complex64], n: usize) {
    transform_2d(buf, n, FftDirection::Forward);
    let scale = 1.0 / (n * n) as f64;
    for c in buf.iter_mut() {
        *c *= scale;
    }
}

pub(crate) fn inverse_2d(buf: &mut [Complex64], n: usize) {
    transform_2d(buf, n, FftDirection::Inverse);
}
