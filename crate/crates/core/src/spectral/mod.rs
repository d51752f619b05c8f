//! Periodic grids, Fourier-coefficient fields and the spectral operators shared
//! by every PDE model: projections, 2/3 dealiasing, Helmholtz inversion, norms
//! and shell spectra.
//!
//! All fields represent real functions, so coefficients are Hermitian:
//! `c(-k) = conj(c(k))`. Operators below are diagonal in Fourier space and
//! depend on `|k|` only, which keeps that symmetry intact.

mod fft;
mod field1d;
mod field2d;
mod grid;

pub use field1d::SpectralField1D;
pub use field2d::SpectralField2D;
pub use grid::{wavenumber, PeriodicGrid1D, PeriodicGrid2D};

use num_complex::Complex64;

/// Common surface of 1D and 2D coefficient fields.
pub trait SpectralField: Clone + Send + Sync + std::fmt::Debug {
    fn coeffs(&self) -> &[Complex64];
    fn coeffs_mut(&mut self) -> &mut [Complex64];

    /// Integer `|k|^2` of a storage slot (Euclidean in 2D).
    fn index_sq(&self, slot: usize) -> i64;

    /// Physical `|kappa|^2 = (2 pi / L)^2 |k|^2` of a storage slot.
    fn kappa_sq(&self, slot: usize) -> f64;

    /// Points per direction.
    fn resolution(&self) -> usize;

    /// Domain length (1D) or area (2D).
    fn measure(&self) -> f64;

    fn zeros_like(&self) -> Self;

    /// Whether two fields live on the same grid.
    fn same_grid(&self, other: &Self) -> bool;

    fn is_finite(&self) -> bool {
        self.coeffs()
            .iter()
            .all(|c| c.re.is_finite() && c.im.is_finite())
    }

    /// `P_M`: keep modes with `|k| <= m`.
    fn project_low_modes(&self, m: usize) -> Self {
        let cut = (m * m) as i64;
        self.masked(|k2| k2 <= cut)
    }

    /// `Q_M = I - P_M`: keep modes with `|k| > m`.
    fn complement_projection(&self, m: usize) -> Self {
        let cut = (m * m) as i64;
        self.masked(|k2| k2 > cut)
    }

    /// 2/3 rule: keep `|k| <= floor(N/3)`.
    fn dealias_two_thirds(&self) -> Self {
        let cut = dealias_cutoff(self.resolution());
        let cut2 = (cut * cut) as i64;
        self.masked(|k2| k2 <= cut2)
    }

    /// Zero every slot whose `|k|^2` fails `keep`.
    fn masked(&self, keep: impl Fn(i64) -> bool) -> Self {
        let mut out = self.clone();
        for (slot, c) in out.coeffs_mut().iter_mut().enumerate() {
            if !keep(self.index_sq(slot)) {
                *c = Complex64::default();
            }
        }
        out
    }

    /// Apply `(I - alpha^2 Delta)^{-1}`, or with `filter_m = Some(M)` the
    /// filtered inverse `(I - alpha^2 Delta Q_M)^{-1}`.
    fn helmholtz_invert(&self, alpha: f64, filter_m: Option<usize>) -> Self {
        let mut out = self.clone();
        for (slot, c) in out.coeffs_mut().iter_mut().enumerate() {
            *c /= helmholtz_symbol(self, slot, alpha, filter_m);
        }
        out
    }

    /// `(||f||_{L^2}, |f|_{H^1})` with the normalization `||f||^2 = |Omega| sum |c_k|^2`.
    fn norms(&self) -> (f64, f64) {
        let (mut l2, mut h1) = (0.0, 0.0);
        for (slot, c) in self.coeffs().iter().enumerate() {
            let e = c.norm_sqr();
            l2 += e;
            h1 += self.kappa_sq(slot) * e;
        }
        let w = self.measure();
        ((w * l2).sqrt(), (w * h1).sqrt())
    }

    /// `L^2` inner product `Re <f, g>` over the domain.
    fn inner(&self, other: &Self) -> f64 {
        let s: f64 = self
            .coeffs()
            .iter()
            .zip(other.coeffs())
            .map(|(a, b)| (a.conj() * b).re)
            .sum();
        self.measure() * s
    }

    /// Energy per shell `j`, where a mode belongs to shell `j` when
    /// `j - 1/2 < |k| <= j + 1/2`. Entries sum to `||f||^2`.
    fn energy_spectrum(&self) -> Vec<(usize, f64)> {
        let mut shells: Vec<f64> = Vec::new();
        let w = self.measure();
        for (slot, c) in self.coeffs().iter().enumerate() {
            let j = shell_index(self.index_sq(slot));
            if shells.len() <= j {
                shells.resize(j + 1, 0.0);
            }
            shells[j] += w * c.norm_sqr();
        }
        shells.into_iter().enumerate().collect()
    }

    fn scaled(&self, a: f64) -> Self {
        let mut out = self.clone();
        out.coeffs_mut().iter_mut().for_each(|c| *c *= a);
        out
    }

    /// `self + a * other`.
    fn add_scaled(&self, a: f64, other: &Self) -> Self {
        let mut out = self.clone();
        for (c, o) in out.coeffs_mut().iter_mut().zip(other.coeffs()) {
            *c += o * a;
        }
        out
    }

    fn sub(&self, other: &Self) -> Self {
        self.add_scaled(-1.0, other)
    }

    /// Largest coefficient modulus.
    fn max_abs(&self) -> f64 {
        self.coeffs().iter().map(|c| c.norm()).fold(0.0, f64::max)
    }
}

/// Largest retained `|k|` under the 2/3 rule.
pub fn dealias_cutoff(n: usize) -> usize {
    n / 3
}

fn shell_index(k2: i64) -> usize {
    let r = (k2 as f64).sqrt();
    (r - 0.5).ceil().max(0.0) as usize
}

/// `1 + alpha^2 |kappa|^2`, or 1 on observed modes when filtered.
pub fn helmholtz_symbol<F: SpectralField>(
    field: &F,
    slot: usize,
    alpha: f64,
    filter_m: Option<usize>,
) -> f64 {
    if let Some(m) = filter_m {
        if field.index_sq(slot) <= (m * m) as i64 {
            return 1.0;
        }
    }
    1.0 + alpha * alpha * field.kappa_sq(slot)
}
