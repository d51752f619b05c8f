use num_complex::Complex64;

use super::fft;
use super::grid::PeriodicGrid2D;
use super::SpectralField;
use crate::error::{BfnError, Result};

/// Real periodic function on a square grid, stored as normalized Fourier
/// coefficients. Physical samples are row-major: index `j * n + i` is the
/// point `(x_i, y_j)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralField2D {
    grid: PeriodicGrid2D,
    coeffs: Vec<Complex64>,
}

impl SpectralField2D {
    pub fn zeros(grid: PeriodicGrid2D) -> Self {
        let n = grid.n_points();
        Self {
            grid,
            coeffs: vec![Complex64::default(); n * n],
        }
    }

    pub fn from_coeffs(grid: PeriodicGrid2D, coeffs: Vec<Complex64>) -> Result<Self> {
        let n = grid.n_points();
        if coeffs.len() != n * n {
            return Err(BfnError::GridMismatch);
        }
        Ok(Self { grid, coeffs })
    }

    pub fn from_physical(grid: PeriodicGrid2D, values: &[f64]) -> Result<Self> {
        let n = grid.n_points();
        if values.len() != n * n {
            return Err(BfnError::GridMismatch);
        }
        let mut coeffs: Vec<Complex64> = values.iter().map(|&v| Complex64::new(v, 0.0)).collect();
        fft::forward_2d(&mut coeffs, n);
        Ok(Self { grid, coeffs })
    }

    pub fn from_fn(grid: PeriodicGrid2D, f: impl Fn(f64, f64) -> f64) -> Self {
        let n = grid.n_points();
        let mut values = Vec::with_capacity(n * n);
        for j in 0..n {
            for i in 0..n {
                values.push(f(grid.x(i), grid.x(j)));
            }
        }
        Self::from_physical(grid, &values).expect("length matches grid")
    }

    pub fn to_physical(&self) -> Vec<f64> {
        let mut buf = self.coeffs.clone();
        fft::inverse_2d(&mut buf, self.grid.n_points());
        buf.into_iter().map(|c| c.re).collect()
    }

    pub fn grid(&self) -> &PeriodicGrid2D {
        &self.grid
    }

    pub fn coeff(&self, kx: i64, ky: i64) -> Complex64 {
        self.grid
            .slot(kx, ky)
            .map(|s| self.coeffs[s])
            .unwrap_or_default()
    }

    /// Set mode `(kx, ky)` and its mirror `(-kx, -ky)` to the conjugate.
    pub fn set_mode(&mut self, kx: i64, ky: i64, c: Complex64) {
        if let Some(s) = self.grid.slot(kx, ky) {
            self.coeffs[s] = c;
        }
        if let Some(s) = self.grid.slot(-kx, -ky) {
            self.coeffs[s] = c.conj();
        }
    }

    pub fn mean(&self) -> f64 {
        self.coeffs[0].re
    }

    pub fn remove_mean(&mut self) {
        self.coeffs[0] = Complex64::default();
    }

    fn spectral_multiply(&self, symbol: impl Fn(i64, i64) -> Complex64) -> Self {
        let mut out = self.clone();
        for (slot, c) in out.coeffs.iter_mut().enumerate() {
            let (kx, ky) = self.grid.wavevector(slot);
            *c *= symbol(kx, ky);
        }
        out
    }

    /// `d/dx`, Nyquist zeroed.
    pub fn derivative_x(&self) -> Self {
        let (unit, half) = (self.grid.kappa_unit(), (self.grid.n_points() / 2) as i64);
        self.spectral_multiply(|kx, _| {
            if kx == half {
                Complex64::default()
            } else {
                Complex64::new(0.0, unit * kx as f64)
            }
        })
    }

    /// `d/dy`, Nyquist zeroed.
    pub fn derivative_y(&self) -> Self {
        let (unit, half) = (self.grid.kappa_unit(), (self.grid.n_points() / 2) as i64);
        self.spectral_multiply(|_, ky| {
            if ky == half {
                Complex64::default()
            } else {
                Complex64::new(0.0, unit * ky as f64)
            }
        })
    }

    /// Solve `-Delta psi = self` with zero mean.
    pub fn inverse_laplacian(&self) -> Self {
        let mut out = self.clone();
        for (slot, c) in out.coeffs.iter_mut().enumerate() {
            let k2 = self.kappa_sq(slot);
            *c = if k2 == 0.0 {
                Complex64::default()
            } else {
                *c / k2
            };
        }
        out
    }
}

impl SpectralField for SpectralField2D {
    fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    fn coeffs_mut(&mut self) -> &mut [Complex64] {
        &mut self.coeffs
    }

    fn index_sq(&self, slot: usize) -> i64 {
        let (kx, ky) = self.grid.wavevector(slot);
        kx * kx + ky * ky
    }

    fn kappa_sq(&self, slot: usize) -> f64 {
        self.grid.kappa_unit().powi(2) * self.index_sq(slot) as f64
    }

    fn resolution(&self) -> usize {
        self.grid.n_points()
    }

    fn measure(&self) -> f64 {
        self.grid.length().powi(2)
    }

    fn zeros_like(&self) -> Self {
        Self::zeros(self.grid)
    }

    fn same_grid(&self, other: &Self) -> bool {
        self.grid == other.grid
    }
}
