use crate::error::{BfnError, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LorenzParams {
    pub sigma: f64,
    pub rho: f64,
    pub b: f64,
}

impl LorenzParams {
    pub fn new(sigma: f64, rho: f64, b: f64) -> Result<Self> {
        for (name, v) in [("sigma", sigma), ("rho", rho), ("b", b)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(BfnError::InvalidParameter(format!(
                    "lorenz {name} must be positive, got {v}"
                )));
            }
        }
        Ok(Self { sigma, rho, b })
    }

    /// The chaotic regime (10, 28, 8/3).
    pub fn classic() -> Self {
        Self {
            sigma: 10.0,
            rho: 28.0,
            b: 8.0 / 3.0,
        }
    }

    /// `rho + sigma`, the shift in the third equation.
    pub fn shift(&self) -> f64 {
        self.rho + self.sigma
    }

    /// Dissipation rate `min(sigma, 1, b/2)` of the absorbing-ball estimate.
    pub fn absorption_rate(&self) -> f64 {
        self.sigma.min(1.0).min(self.b / 2.0)
    }

    /// Upper bound on `|u(t)|^2` for a trajectory started at `u0`.
    pub fn energy_bound(&self, u0: &LorenzState, t: f64) -> f64 {
        let a = self.absorption_rate();
        (-2.0 * a * t).exp() * u0.norm_sq() + self.b * self.shift().powi(2) / (2.0 * a)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct LorenzState {
    pub u1: f64,
    pub u2: f64,
    pub u3: f64,
}

impl LorenzState {
    pub const fn new(u1: f64, u2: f64, u3: f64) -> Self {
        Self { u1, u2, u3 }
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.u1, self.u2, self.u3]
    }

    pub fn from_array(a: [f64; 3]) -> Self {
        Self::new(a[0], a[1], a[2])
    }

    pub fn component(&self, i: usize) -> f64 {
        self.to_array()[i]
    }

    /// `self + h * other`.
    pub fn add_scaled(self, h: f64, other: Self) -> Self {
        Self::new(
            self.u1 + h * other.u1,
            self.u2 + h * other.u2,
            self.u3 + h * other.u3,
        )
    }

    #[allow(clippy::should_implement_trait)]
    pub fn sub(self, other: Self) -> Self {
        self.add_scaled(-1.0, other)
    }

    pub fn scaled(self, h: f64) -> Self {
        Self::new(h * self.u1, h * self.u2, h * self.u3)
    }

    pub fn norm_sq(&self) -> f64 {
        self.u1 * self.u1 + self.u2 * self.u2 + self.u3 * self.u3
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.u1.is_finite() && self.u2.is_finite() && self.u3.is_finite()
    }
}

/// Vector field of the shifted Lorenz system.
pub fn lorenz_rhs(s: &LorenzState, p: &LorenzParams) -> LorenzState {
    LorenzState::new(
        -p.sigma * s.u1 + p.sigma * s.u2,
        -p.sigma * s.u1 - s.u2 - s.u1 * s.u3,
        -p.b * s.u3 + s.u1 * s.u2 - p.b * p.shift(),
    )
}

/// Exact solution `(0, 0, a e^{-bt} - (rho + sigma))`, whose first two
/// components vanish identically.
pub fn lorenz_pathological(t: f64, a_coef: f64, p: &LorenzParams) -> LorenzState {
    LorenzState::new(0.0, 0.0, a_coef * (-p.b * t).exp() - p.shift())
}
