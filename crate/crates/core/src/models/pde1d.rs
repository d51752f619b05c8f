use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{BfnError, Result};
use crate::spectral::{PeriodicGrid1D, SpectralField, SpectralField1D};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Pde1DKind {
    Heat,
    Transport,
    Burgers,
    KdVDamped,
    KdVViscous,
}

impl Pde1DKind {
    pub fn name(self) -> &'static str {
        match self {
            Self::Heat => "heat",
            Self::Transport => "transport",
            Self::Burgers => "burgers",
            Self::KdVDamped => "kdv-damped",
            Self::KdVViscous => "kdv-viscous",
        }
    }

    pub fn is_nonlinear(self) -> bool {
        matches!(self, Self::Burgers | Self::KdVDamped | Self::KdVViscous)
    }
}

/// `u_t = nu u_xx - a u_x - u_xxx [dispersion] - gamma u - u u_x [nonlinear] + f`.
#[derive(Clone, Debug, PartialEq)]
pub struct Pde1DModel {
    pub kind: Pde1DKind,
    pub nu: f64,
    pub a: f64,
    pub gamma: f64,
    pub has_dispersion: bool,
    pub forcing: Option<SpectralField1D>,
}

impl Pde1DModel {
    fn build(
        kind: Pde1DKind,
        nu: f64,
        a: f64,
        gamma: f64,
        forcing: Option<SpectralField1D>,
    ) -> Result<Self> {
        let has_dispersion = matches!(kind, Pde1DKind::KdVDamped | Pde1DKind::KdVViscous);
        let m = Self {
            kind,
            nu,
            a,
            gamma,
            has_dispersion,
            forcing,
        };
        m.validate()?;
        Ok(m)
    }

    pub fn heat(nu: f64) -> Result<Self> {
        Self::build(Pde1DKind::Heat, nu, 0.0, 0.0, None)
    }

    pub fn heat_forced(nu: f64, forcing: SpectralField1D) -> Result<Self> {
        Self::build(Pde1DKind::Heat, nu, 0.0, 0.0, Some(forcing))
    }

    pub fn transport(nu: f64, a: f64) -> Result<Self> {
        Self::build(Pde1DKind::Transport, nu, a, 0.0, None)
    }

    pub fn burgers(nu: f64) -> Result<Self> {
        Self::build(Pde1DKind::Burgers, nu, 0.0, 0.0, None)
    }

    pub fn kdv_damped(gamma: f64, forcing: Option<SpectralField1D>) -> Result<Self> {
        Self::build(Pde1DKind::KdVDamped, 0.0, 0.0, gamma, forcing)
    }

    pub fn kdv_viscous(nu: f64, forcing: Option<SpectralField1D>) -> Result<Self> {
        Self::build(Pde1DKind::KdVViscous, nu, 0.0, 0.0, forcing)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(BfnError::InvalidParameter(msg));
        for (name, v) in [("nu", self.nu), ("a", self.a), ("gamma", self.gamma)] {
            if !(v.is_finite() && v >= 0.0) {
                return bad(format!("{name} must be finite and non-negative, got {v}"));
            }
        }
        match self.kind {
            Pde1DKind::Heat if self.nu <= 0.0 => return bad("heat requires nu > 0".into()),
            Pde1DKind::KdVViscous if self.nu <= 0.0 || !self.has_dispersion => {
                return bad("viscous KdV requires nu > 0 and dispersion".into())
            }
            Pde1DKind::KdVDamped if self.gamma <= 0.0 || !self.has_dispersion => {
                return bad("damped KdV requires gamma > 0 and dispersion".into())
            }
            _ => {}
        }
        if let Some(f) = &self.forcing {
            if !f.is_finite() {
                return bad("forcing has non-finite coefficients".into());
            }
            if self.is_mean_free() && f.coeff(0).norm() > 1e-12 * (1.0 + f.max_abs()) {
                return Err(BfnError::NotMeanFree(f.coeff(0).norm()));
            }
        }
        Ok(())
    }

    /// KdV dynamics are restricted to mean-free states.
    pub fn is_mean_free(&self) -> bool {
        matches!(self.kind, Pde1DKind::KdVDamped | Pde1DKind::KdVViscous)
    }

    /// Fourier symbol of the linear part at physical wavenumber `kappa`.
    pub fn linear_symbol(&self, kappa: f64) -> Complex64 {
        let disp = if self.has_dispersion {
            kappa.powi(3)
        } else {
            0.0
        };
        Complex64::new(
            -self.nu * kappa * kappa - self.gamma,
            -self.a * kappa + disp,
        )
    }

    /// Symbol for every storage slot of `grid`.
    pub fn symbol_table(&self, grid: &PeriodicGrid1D) -> Vec<Complex64> {
        (0..grid.n_points())
            .map(|s| self.linear_symbol(grid.kappa(grid.wavenumber(s))))
            .collect()
    }

    /// `-(1/2) d/dx (u^2)`, dealiased; zero for linear models.
    pub fn nonlinear(&self, u: &SpectralField1D) -> SpectralField1D {
        if !self.kind.is_nonlinear() {
            return u.zeros_like();
        }
        u.square().derivative().scaled(-0.5)
    }

    /// Nonlinear term plus forcing: everything treated explicitly.
    pub fn explicit_terms(&self, u: &SpectralField1D) -> SpectralField1D {
        let n = self.nonlinear(u);
        match &self.forcing {
            Some(f) => n.add_scaled(1.0, f),
            None => n,
        }
    }
}

/// Free function form of [`Pde1DModel::linear_symbol`].
pub fn pde1d_linear_symbol(model: &Pde1DModel, kappa: f64) -> Complex64 {
    model.linear_symbol(kappa)
}

pub fn pde1d_nonlinear(model: &Pde1DModel, field: &SpectralField1D) -> SpectralField1D {
    model.nonlinear(field)
}

/// `I_k(1)` by its power series; underflows to zero for large `k`.
fn bessel_i_one(k: u32) -> f64 {
    let mut term = (1..=k).fold(1.0, |t, j| t * 0.5 / f64::from(j));
    let mut sum = term;
    for m in 1..40u32 {
        term *= 0.25 / (f64::from(m) * f64::from(m + k));
        sum += term;
    }
    sum
}

/// `f0 e^{cos(2 pi x / L)}` with its mean removed.
///
/// Built from the exact coefficients `f0 I_k(1)` and kept inside the
/// dealiased band, so modes the nonlinearity never reaches carry no FFT
/// round-off that an anti-diffusive backward march would amplify.
pub fn kdv_forcing(f0: f64, grid: PeriodicGrid1D) -> SpectralField1D {
    let mut f = SpectralField1D::zeros(grid);
    for k in 1..=grid.n_points() / 3 {
        f.set_mode(k as i64, Complex64::new(f0 * bessel_i_one(k as u32), 0.0));
    }
    f
}

/// Mean-free state with `|u_k| ~ e^{-k / decay} / k` on `1 <= k <= kmax`,
/// golden-ratio phases, scaled to L2 norm `norm`.
pub fn broadband_state(
    grid: PeriodicGrid1D,
    kmax: usize,
    decay: f64,
    norm: f64,
) -> Result<SpectralField1D> {
    if kmax == 0
        || kmax > grid.n_points() / 3
        || decay.is_nan()
        || decay <= 0.0
        || !(norm >= 0.0 && norm.is_finite())
    {
        return Err(BfnError::InvalidParameter(format!(
            "broadband state needs 1 <= kmax <= N/3, decay > 0 and a finite norm (kmax={kmax}, decay={decay}, norm={norm})"
        )));
    }
    let mut f = SpectralField1D::zeros(grid);
    for k in 1..=kmax {
        let kf = k as f64;
        let phase = 2.0 * PI * (0.618_033_988_749_894_9 * kf).fract();
        f.set_mode(
            k as i64,
            Complex64::from_polar((-kf / decay).exp() / kf, phase),
        );
    }
    Ok(f.scaled(norm / f.norms().0))
}
