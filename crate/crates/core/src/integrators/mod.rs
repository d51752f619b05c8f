//! Time stepping. Linear parts are integrated exactly by integrating factors;
//! nonlinear, forcing and nudging terms are explicit. Nudging values are
//! frozen at the start of each step and added once per step.

use num_complex::Complex64;

use crate::error::{BfnError, Result};
use crate::models::LorenzState;
use crate::spectral::SpectralField;

pub use crate::engine::integrate_leg;

/// Uniform lattice `t0, t0 + dt, ..., t_end`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TimeGrid {
    t0: f64,
    t_end: f64,
    dt: f64,
    n_steps: usize,
}

impl TimeGrid {
    pub fn new(t0: f64, t_end: f64, dt: f64) -> Result<Self> {
        if !(dt.is_finite() && dt > 0.0 && t0.is_finite() && t_end.is_finite()) {
            return Err(BfnError::InvalidTimeGrid(format!(
                "t0={t0}, t_end={t_end}, dt={dt}"
            )));
        }
        let ratio = (t_end - t0) / dt;
        let n = ratio.round();
        if n < 1.0 || (ratio - n).abs() > 1e-9 * n.max(1.0) {
            return Err(BfnError::InvalidTimeGrid(format!(
                "(t_end - t0) / dt = {ratio} is not a positive integer"
            )));
        }
        Ok(Self {
            t0,
            t_end,
            dt,
            n_steps: n as usize,
        })
    }

    /// `[0, t_end]` in steps of `dt`.
    pub fn window(t_end: f64, dt: f64) -> Result<Self> {
        Self::new(0.0, t_end, dt)
    }

    pub fn t0(&self) -> f64 {
        self.t0
    }

    pub fn t_end(&self) -> f64 {
        self.t_end
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn n_steps(&self) -> usize {
        self.n_steps
    }

    pub fn span(&self) -> f64 {
        self.t_end - self.t0
    }

    /// Time of lattice point `j`.
    pub fn time(&self, j: usize) -> f64 {
        self.t0 + j as f64 * self.dt
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StepDirection {
    Forward,
    /// March in `tau = T - t` from the terminal state.
    Backward,
}

impl StepDirection {
    pub fn name(self) -> &'static str {
        match self {
            Self::Forward => "forward",
            Self::Backward => "backward",
        }
    }
}

/// Classical RK4 on `rhs`, then `dt * nudge_term` once.
pub fn rk4_step_nudged(
    s: &LorenzState,
    rhs: impl Fn(&LorenzState) -> LorenzState,
    nudge_term: &LorenzState,
    dt: f64,
) -> LorenzState {
    let k1 = rhs(s);
    let k2 = rhs(&s.add_scaled(0.5 * dt, k1));
    let k3 = rhs(&s.add_scaled(0.5 * dt, k2));
    let k4 = rhs(&s.add_scaled(dt, k3));
    let incr = k1
        .add_scaled(2.0, k2)
        .add_scaled(2.0, k3)
        .add_scaled(1.0, k4);
    s.add_scaled(dt / 6.0, incr).add_scaled(dt, *nudge_term)
}

/// Per-mode factors `e^{s dt}` and `e^{s dt / 2}` for a diagonal symbol.
#[derive(Clone, Debug)]
pub struct IntegratingFactor {
    full: Vec<Complex64>,
    half: Vec<Complex64>,
}

impl IntegratingFactor {
    pub fn new(symbol: &[Complex64], dt: f64) -> Self {
        Self {
            full: symbol.iter().map(|s| (s * dt).exp()).collect(),
            half: symbol.iter().map(|s| (s * (0.5 * dt)).exp()).collect(),
        }
    }

    pub fn full(&self) -> &[Complex64] {
        &self.full
    }

    pub fn half(&self) -> &[Complex64] {
        &self.half
    }
}

fn combine<F: SpectralField>(template: &F, f: impl Fn(usize) -> Complex64) -> F {
    let mut out = template.clone();
    for (i, c) in out.coeffs_mut().iter_mut().enumerate() {
        *c = f(i);
    }
    out
}

/// One integrating-factor RK4 step for `u' = s u + N(u)` followed by the
/// explicit increment `e^{s dt} dt nudge`.
pub fn ifrk4_step<F: SpectralField>(
    field: &F,
    factor: &IntegratingFactor,
    nonlinear: impl Fn(&F) -> F,
    nudge: Option<&F>,
    dt: f64,
) -> F {
    let (e, e2) = (factor.full(), factor.half());
    let u = field.coeffs();
    let h = 0.5 * dt;

    let k1 = nonlinear(field);
    let a = combine(field, |i| e2[i] * (u[i] + k1.coeffs()[i] * h));
    let k2 = nonlinear(&a);
    let b = combine(field, |i| e2[i] * u[i] + k2.coeffs()[i] * h);
    let k3 = nonlinear(&b);
    let c = combine(field, |i| e[i] * u[i] + e2[i] * k3.coeffs()[i] * dt);
    let k4 = nonlinear(&c);

    let (k1, k2, k3, k4) = (k1.coeffs(), k2.coeffs(), k3.coeffs(), k4.coeffs());
    let w = dt / 6.0;
    combine(field, |i| {
        let mut v = e[i] * u[i] + (e[i] * k1[i] + e2[i] * (k2[i] + k3[i]) * 2.0 + k4[i]) * w;
        if let Some(n) = nudge {
            v += e[i] * n.coeffs()[i] * dt;
        }
        v
    })
}

/// First-order integrating-factor Euler: `e^{s dt} (u + dt (N(u) + nudge))`.
pub fn if_euler_step<F: SpectralField>(
    field: &F,
    factor: &IntegratingFactor,
    nonlinear: impl Fn(&F) -> F,
    nudge: Option<&F>,
    dt: f64,
) -> F {
    let e = factor.full();
    let n = nonlinear(field);
    combine(field, |i| {
        let mut rhs = n.coeffs()[i];
        if let Some(g) = nudge {
            rhs += g.coeffs()[i];
        }
        e[i] * (field.coeffs()[i] + rhs * dt)
    })
}

/// Time-stepping scheme for spectral models.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Scheme {
    #[default]
    Ifrk4,
    IfEuler,
}

impl Scheme {
    pub fn step<F: SpectralField>(
        self,
        field: &F,
        factor: &IntegratingFactor,
        nonlinear: impl Fn(&F) -> F,
        nudge: Option<&F>,
        dt: f64,
    ) -> F {
        match self {
            Self::Ifrk4 => ifrk4_step(field, factor, nonlinear, nudge, dt),
            Self::IfEuler => if_euler_step(field, factor, nonlinear, nudge, dt),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::Ifrk4 => "ifrk4",
            Self::IfEuler => "if-euler",
        }
    }
}
