//! 2D Navier-Stokes in vorticity form on the `2 pi`-periodic torus.
//!
//! `omega_t + u . grad omega = nu Delta omega + g`, with `u = grad^perp psi`,
//! `-Delta psi = omega` and `g` the curl of the body force.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{BfnError, Result};
use crate::spectral::{PeriodicGrid2D, SpectralField, SpectralField2D};

#[derive(Clone, Debug, PartialEq)]
pub struct NseModel {
    pub nu: f64,
    pub forcing_vorticity: SpectralField2D,
    pub grashof_target: f64,
}

impl NseModel {
    /// Scale `forcing_vorticity` to `grashof` and bundle it.
    pub fn new(nu: f64, forcing_vorticity: SpectralField2D, grashof: f64) -> Result<Self> {
        if !(nu.is_finite() && nu > 0.0) {
            return Err(BfnError::InvalidParameter(format!(
                "nu must be positive, got {nu}"
            )));
        }
        if !(grashof.is_finite() && grashof > 0.0) {
            return Err(BfnError::InvalidParameter(format!(
                "grashof must be positive, got {grashof}"
            )));
        }
        check_mean_free(&forcing_vorticity)?;
        let forcing_vorticity = scale_forcing_to_grashof(&forcing_vorticity, nu, grashof)?;
        Ok(Self {
            nu,
            forcing_vorticity,
            grashof_target: grashof,
        })
    }

    /// Free decay: no body force, Grashof number zero.
    pub fn unforced(nu: f64, grid: PeriodicGrid2D) -> Result<Self> {
        if !(nu.is_finite() && nu > 0.0) {
            return Err(BfnError::InvalidParameter(format!(
                "nu must be positive, got {nu}"
            )));
        }
        Ok(Self {
            nu,
            forcing_vorticity: SpectralField2D::zeros(grid),
            grashof_target: 0.0,
        })
    }

    pub fn grid(&self) -> &PeriodicGrid2D {
        self.forcing_vorticity.grid()
    }

    pub fn symbol_table(&self) -> Vec<Complex64> {
        let f = &self.forcing_vorticity;
        (0..f.coeffs().len())
            .map(|s| Complex64::new(-self.nu * f.kappa_sq(s), 0.0))
            .collect()
    }

    /// `-(u . grad omega) + g`, dealiased; no mean-free check.
    pub fn explicit_terms(&self, omega: &SpectralField2D) -> SpectralField2D {
        advection(omega)
            .scaled(-1.0)
            .add_scaled(1.0, &self.forcing_vorticity)
    }
}

fn check_mean_free(f: &SpectralField2D) -> Result<()> {
    let c0 = f.coeff(0, 0).norm();
    if c0 > 1e-12 * (1.0 + f.max_abs()) {
        return Err(BfnError::NotMeanFree(c0));
    }
    Ok(())
}

/// Stream function `psi = (-Delta)^{-1} omega`.
pub fn stream_function(omega: &SpectralField2D) -> SpectralField2D {
    omega.inverse_laplacian()
}

/// Physical velocity `(psi_y, -psi_x)`.
pub fn velocity(omega: &SpectralField2D) -> (Vec<f64>, Vec<f64>) {
    let psi = stream_function(omega);
    let u = psi.derivative_y().to_physical();
    let v: Vec<f64> = psi
        .derivative_x()
        .to_physical()
        .into_iter()
        .map(|x| -x)
        .collect();
    (u, v)
}

/// Dealiased `u . grad omega`.
fn advection(omega: &SpectralField2D) -> SpectralField2D {
    let w = omega.dealias_two_thirds();
    let (u, v) = velocity(&w);
    let wx = w.derivative_x().to_physical();
    let wy = w.derivative_y().to_physical();
    let adv: Vec<f64> = (0..u.len()).map(|i| u[i] * wx[i] + v[i] * wy[i]).collect();
    SpectralField2D::from_physical(*omega.grid(), &adv)
        .expect("length matches grid")
        .dealias_two_thirds()
}

/// Explicit part of the vorticity equation. The viscous term is left to the
/// integrating factor.
pub fn nse_vorticity_rhs(omega: &SpectralField2D, model: &NseModel) -> Result<SpectralField2D> {
    if !omega.same_grid(&model.forcing_vorticity) {
        return Err(BfnError::GridMismatch);
    }
    check_mean_free(omega)?;
    Ok(model.explicit_terms(omega))
}

/// `||u||_{L^2}` of the velocity whose vorticity is `omega`, i.e. the
/// `H^{-1}` norm of `omega`.
pub fn velocity_l2(omega: &SpectralField2D) -> f64 {
    let s: f64 = omega
        .coeffs()
        .iter()
        .enumerate()
        .filter_map(|(slot, c)| {
            let k2 = omega.kappa_sq(slot);
            (k2 > 0.0).then(|| c.norm_sqr() / k2)
        })
        .sum();
    (omega.measure() * s).sqrt()
}

/// Kinetic energy `||u||^2 / 2`.
pub fn kinetic_energy(omega: &SpectralField2D) -> f64 {
    0.5 * velocity_l2(omega).powi(2)
}

/// `<u, f>` where `omega`, `g` are the curls of `u`, `f`.
pub fn energy_injection(omega: &SpectralField2D, g: &SpectralField2D) -> f64 {
    stream_function(omega).inner(g)
}

/// Rescale the forcing so that `||f||_{L^2} / nu^2 = g_target`, with the
/// velocity-level norm computed from the vorticity forcing.
pub fn scale_forcing_to_grashof(
    f: &SpectralField2D,
    nu: f64,
    g_target: f64,
) -> Result<SpectralField2D> {
    let norm = velocity_l2(f);
    if norm == 0.0 || !norm.is_finite() {
        return Err(BfnError::ZeroForcing);
    }
    Ok(f.scaled(g_target * nu * nu / norm))
}

/// Grashof number of a vorticity forcing.
pub fn grashof(f: &SpectralField2D, nu: f64) -> f64 {
    velocity_l2(f) / (nu * nu)
}

/// Deterministic phase in `[0, 2 pi)` for mode `(kx, ky)`.
fn phase(kx: i64, ky: i64) -> f64 {
    let t = 0.618_033_988_749_894_9 * kx as f64 + 0.414_213_562_373_095 * ky as f64 * ky as f64;
    2.0 * PI * t.fract().abs()
}

/// Unit-amplitude vorticity forcing on the annulus `4 <= |k| <= 6`.
pub fn default_forcing(grid: PeriodicGrid2D) -> SpectralField2D {
    band_field(grid, 4.0, 6.0, |_| 1.0)
}

/// Real field with modes `kmin <= |k| <= kmax`, amplitude `amp(|k|)`
/// and fixed phases.
fn band_field(
    grid: PeriodicGrid2D,
    kmin: f64,
    kmax: f64,
    amp: impl Fn(f64) -> f64,
) -> SpectralField2D {
    let mut f = SpectralField2D::zeros(grid);
    let kk = kmax.ceil() as i64;
    for ky in 0..=kk {
        for kx in -kk..=kk {
            // upper half plane; the mirror is filled by set_mode
            if ky == 0 && kx <= 0 {
                continue;
            }
            let r = ((kx * kx + ky * ky) as f64).sqrt();
            if r < kmin || r > kmax {
                continue;
            }
            let c = Complex64::from_polar(amp(r), phase(kx, ky));
            f.set_mode(kx, ky, c);
        }
    }
    f
}

/// Broadband initial vorticity with `|omega_k| ~ 1/|k|` up to `kmax`,
/// normalized to kinetic energy `energy`.
pub fn synthetic_initial_vorticity(
    grid: PeriodicGrid2D,
    kmax: f64,
    energy: f64,
) -> SpectralField2D {
    let w = band_field(grid, 1.0, kmax, |r| 1.0 / r);
    w.scaled((energy / kinetic_energy(&w)).sqrt())
}

/// `omega = 2 cos x cos y`, an exact steady solution of the Euler part.
pub fn taylor_green(grid: PeriodicGrid2D) -> SpectralField2D {
    SpectralField2D::from_fn(grid, |x, y| 2.0 * x.cos() * y.cos())
}
