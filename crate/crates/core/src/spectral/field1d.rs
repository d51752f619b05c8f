use num_complex::Complex64;

use super::fft;
use super::grid::{slot_of, PeriodicGrid1D};
use super::SpectralField;
use crate::error::{BfnError, Result};

/// Real periodic function on a 1D grid, stored as normalized Fourier
/// coefficients in FFT order.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralField1D {
    grid: PeriodicGrid1D,
    coeffs: Vec<Complex64>,
}

impl SpectralField1D {
    pub fn zeros(grid: PeriodicGrid1D) -> Self {
        Self {
            grid,
            coeffs: vec![Complex64::default(); grid.n_points()],
        }
    }

    /// Wrap coefficients given in FFT order. Hermitian symmetry is the
    /// caller's responsibility.
    pub fn from_coeffs(grid: PeriodicGrid1D, coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.len() != grid.n_points() {
            return Err(BfnError::GridMismatch);
        }
        Ok(Self { grid, coeffs })
    }

    pub fn from_physical(grid: PeriodicGrid1D, values: &[f64]) -> Result<Self> {
        if values.len() != grid.n_points() {
            return Err(BfnError::GridMismatch);
        }
        let mut coeffs: Vec<Complex64> = values.iter().map(|&v| Complex64::new(v, 0.0)).collect();
        fft::forward_1d(&mut coeffs);
        Ok(Self { grid, coeffs })
    }

    /// Sample `f` on the grid and transform.
    pub fn from_fn(grid: PeriodicGrid1D, f: impl Fn(f64) -> f64) -> Self {
        let values: Vec<f64> = grid.points().map(f).collect();
        Self::from_physical(grid, &values).expect("length matches grid")
    }

    pub fn to_physical(&self) -> Vec<f64> {
        let mut buf = self.coeffs.clone();
        fft::inverse_1d(&mut buf);
        buf.into_iter().map(|c| c.re).collect()
    }

    pub fn grid(&self) -> &PeriodicGrid1D {
        &self.grid
    }

    /// Coefficient of integer mode `k`; zero outside the resolved band.
    pub fn coeff(&self, k: i64) -> Complex64 {
        slot_of(k, self.grid.n_points())
            .map(|s| self.coeffs[s])
            .unwrap_or_default()
    }

    /// Set mode `k` and its mirror `-k` (to the conjugate).
    pub fn set_mode(&mut self, k: i64, c: Complex64) {
        let n = self.grid.n_points();
        if let Some(s) = slot_of(k, n) {
            self.coeffs[s] = c;
        }
        if let Some(s) = slot_of(-k, n) {
            self.coeffs[s] = c.conj();
        }
    }

    pub fn mean(&self) -> f64 {
        self.coeffs[0].re
    }

    pub fn remove_mean(&mut self) {
        self.coeffs[0] = Complex64::default();
    }

    /// Spectral `d/dx`, Nyquist zeroed.
    pub fn derivative(&self) -> Self {
        let n = self.grid.n_points();
        let mut out = self.clone();
        for (slot, c) in out.coeffs.iter_mut().enumerate() {
            let k = self.grid.wavenumber(slot);
            *c *= Complex64::new(0.0, self.grid.kappa(k));
        }
        out.coeffs[n / 2] = Complex64::default();
        out
    }

    /// Pseudo-spectral product with 2/3 dealiasing of both factors and of
    /// the result.
    ///
    /// When both factors are `L/g`-periodic (every nonzero mode a multiple
    /// of `g > 1`) the product is formed on the reduced lattice of those
    /// modes. The result is the same dealiased convolution, but it is then
    /// supported on multiples of `g` exactly rather than up to rounding.
    pub fn product(&self, other: &Self) -> Self {
        let a = self.dealias_two_thirds();
        let b = other.dealias_two_thirds();
        let g = gcd(support_period(&a), support_period(&b));
        if g > 1 {
            return self.reduced_product(&a, &b, g as usize);
        }
        let x = a.to_physical();
        let y = if std::ptr::eq(self, other) {
            x.clone()
        } else {
            b.to_physical()
        };
        let prod: Vec<f64> = x.iter().zip(&y).map(|(p, q)| p * q).collect();
        Self::from_physical(self.grid, &prod)
            .expect("length matches grid")
            .dealias_two_thirds()
    }

    /// `self * self`, dealiased.
    pub fn square(&self) -> Self {
        self.product(self)
    }

    fn reduced_product(&self, a: &Self, b: &Self, g: usize) -> Self {
        let n = self.grid.n_points();
        let q_max = super::dealias_cutoff(n) / g;
        // 3Q + 1 points keep every retained mode free of aliases
        let m = (3 * q_max + 1).next_power_of_two().max(2);
        let coarse = |f: &Self| {
            let mut buf = vec![Complex64::default(); m];
            for q in -(q_max as i64)..=q_max as i64 {
                let k = q * g as i64;
                buf[q.rem_euclid(m as i64) as usize] = f.coeff(k);
            }
            fft::inverse_1d(&mut buf);
            buf
        };
        let (x, y) = (coarse(a), coarse(b));
        let mut prod: Vec<Complex64> = x
            .iter()
            .zip(&y)
            .map(|(p, q)| Complex64::new(p.re * q.re, 0.0))
            .collect();
        fft::forward_1d(&mut prod);
        let mut out = Self::zeros(self.grid);
        for q in -(q_max as i64)..=q_max as i64 {
            let slot = slot_of(q * g as i64, n).expect("retained mode is resolved");
            out.coeffs[slot] = prod[q.rem_euclid(m as i64) as usize];
        }
        out
    }
}

/// Greatest common divisor of the wavenumbers carrying nonzero
/// coefficients; 0 for the zero field.
fn support_period(f: &SpectralField1D) -> u64 {
    let mut g = 0;
    for (slot, c) in f.coeffs.iter().enumerate() {
        if *c != Complex64::default() {
            g = gcd(g, f.grid.wavenumber(slot).unsigned_abs());
            if g == 1 {
                break;
            }
        }
    }
    g
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl SpectralField for SpectralField1D {
    fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    fn coeffs_mut(&mut self) -> &mut [Complex64] {
        &mut self.coeffs
    }

    fn index_sq(&self, slot: usize) -> i64 {
        let k = self.grid.wavenumber(slot);
        k * k
    }

    fn kappa_sq(&self, slot: usize) -> f64 {
        self.grid.kappa(self.grid.wavenumber(slot)).powi(2)
    }

    fn resolution(&self) -> usize {
        self.grid.n_points()
    }

    fn measure(&self) -> f64 {
        self.grid.length()
    }

    fn zeros_like(&self) -> Self {
        Self::zeros(self.grid)
    }

    fn same_grid(&self, other: &Self) -> bool {
        self.grid == other.grid
    }
}
