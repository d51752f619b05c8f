use std::f64::consts::PI;

use crate::error::{BfnError, Result};

/// Map a storage slot of an `n`-point FFT to its signed wavenumber index.
///
/// The index set is `{-n/2+1, ..., n/2}`; the Nyquist mode is stored as `+n/2`.
#[inline]
pub fn wavenumber(slot: usize, n: usize) -> i64 {
    if slot <= n / 2 {
        slot as i64
    } else {
        slot as i64 - n as i64
    }
}

#[inline]
pub(crate) fn slot_of(k: i64, n: usize) -> Option<usize> {
    let half = (n / 2) as i64;
    if k > half || k <= -half {
        None
    } else if k >= 0 {
        Some(k as usize)
    } else {
        Some((k + n as i64) as usize)
    }
}

fn check_resolution(n: usize, length: f64) -> Result<()> {
    if n < 4 || !n.is_multiple_of(2) {
        return Err(BfnError::InvalidParameter(format!(
            "grid resolution must be even and >= 4, got {n}"
        )));
    }
    if !(length.is_finite() && length > 0.0) {
        return Err(BfnError::InvalidParameter(format!(
            "domain length must be positive, got {length}"
        )));
    }
    Ok(())
}

/// Uniform periodic grid on `[0, length)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PeriodicGrid1D {
    n_points: usize,
    length: f64,
}

impl PeriodicGrid1D {
    pub fn new(n_points: usize, length: f64) -> Result<Self> {
        check_resolution(n_points, length)?;
        Ok(Self { n_points, length })
    }

    pub fn n_points(&self) -> usize {
        self.n_points
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    /// Physical wavenumber `2 pi k / L` of an integer mode.
    pub fn kappa(&self, k: i64) -> f64 {
        2.0 * PI * k as f64 / self.length
    }

    pub fn wavenumber(&self, slot: usize) -> i64 {
        wavenumber(slot, self.n_points)
    }

    pub fn x(&self, j: usize) -> f64 {
        self.length * j as f64 / self.n_points as f64
    }

    pub fn points(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n_points).map(|j| self.x(j))
    }
}

/// Square periodic grid with `n x n` points on a domain of side `length`.
///
/// Storage is row-major: slot `j * n + i` holds `(kx, ky) = (k(i), k(j))`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PeriodicGrid2D {
    n_points: usize,
    length: f64,
}

impl PeriodicGrid2D {
    pub fn new(n_points: usize, length: f64) -> Result<Self> {
        check_resolution(n_points, length)?;
        Ok(Self { n_points, length })
    }

    /// The `[-pi, pi]^2` torus used for the Navier-Stokes runs.
    pub fn torus(n_points: usize) -> Result<Self> {
        Self::new(n_points, 2.0 * PI)
    }

    pub fn n_points(&self) -> usize {
        self.n_points
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn kappa_unit(&self) -> f64 {
        2.0 * PI / self.length
    }

    pub fn wavevector(&self, slot: usize) -> (i64, i64) {
        let n = self.n_points;
        (wavenumber(slot % n, n), wavenumber(slot / n, n))
    }

    pub fn slot(&self, kx: i64, ky: i64) -> Option<usize> {
        let n = self.n_points;
        Some(slot_of(ky, n)? * n + slot_of(kx, n)?)
    }

    /// Grid coordinate; the `[-pi, pi]^2` torus is sampled from its periodic
    /// image `[0, 2 pi)^2` so that mode phases are referenced to the origin.
    pub fn x(&self, i: usize) -> f64 {
        self.length * i as f64 / self.n_points as f64
    }
}
