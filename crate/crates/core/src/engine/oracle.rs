use crate::spectral::SpectralField;

/// How the per-cycle contraction of the observed modes is evaluated.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum OracleClock {
    /// Exact flow over a window of length `t`: `e^{-(mu + mu_back) t}`.
    Continuous { t: f64 },
    /// What an integrating-factor scheme with an explicit nudge increment
    /// produces on a linear model: `[(1 - mu dt)(1 - mu_back dt)]^steps`.
    Discrete { dt: f64, steps: usize },
}

impl OracleClock {
    pub fn cycle_factor(self, mu: f64, mu_back: f64) -> f64 {
        match self {
            Self::Continuous { t } => (-(mu + mu_back) * t).exp(),
            Self::Discrete { dt, steps } => {
                ((1.0 - mu * dt) * (1.0 - mu_back * dt)).powi(steps as i32)
            }
        }
    }
}

/// Error `w^n(0)` of the `n`-th BFN iterate (one-based) on a linear,
/// mode-decoupled model, given the first-iterate error `w^1(0)`.
///
/// Observed modes (`|k| <= m`) contract by the cycle factor once per
/// completed cycle; unobserved modes never change. The model's own linear
/// flow cancels between the forward and backward legs, so the same formula
/// covers heat and transport.
pub fn heat_bfn_error_oracle<F: SpectralField>(
    w1: &F,
    mu: f64,
    mu_back: f64,
    m: usize,
    n: usize,
    clock: OracleClock,
) -> F {
    assert!(n >= 1, "iterates are one-based");
    let factor = clock.cycle_factor(mu, mu_back).powi((n - 1) as i32);
    let m2 = (m * m) as i64;
    let mut out = w1.clone();
    for (slot, c) in out.coeffs_mut().iter_mut().enumerate() {
        if w1.index_sq(slot) <= m2 {
            *c *= factor;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::{PeriodicGrid1D, SpectralField1D};
    use std::f64::consts::PI;

    fn sample() -> SpectralField1D {
        SpectralField1D::from_fn(PeriodicGrid1D::new(64, 2.0 * PI).unwrap(), |x| {
            x.sin() + 0.5 * (3.0 * x).cos() + 0.1 * (20.0 * x).sin()
        })
    }

    #[test]
    fn first_iterate_is_unchanged() {
        let w = sample();
        let clock = OracleClock::Continuous { t: 1.0 };
        assert_eq!(heat_bfn_error_oracle(&w, 3.0, 2.0, 4, 1, clock), w);
    }

    #[test]
    fn zero_gain_is_identity() {
        let w = sample();
        for n in 1..6 {
            let clock = OracleClock::Discrete {
                dt: 0.01,
                steps: 100,
            };
            assert_eq!(heat_bfn_error_oracle(&w, 0.0, 0.0, 4, n, clock), w);
        }
    }

    #[test]
    fn full_observation_decays_everything() {
        let w = sample();
        let out = heat_bfn_error_oracle(&w, 1.0, 1.0, 64, 3, OracleClock::Continuous { t: 0.5 });
        let expect = (-2.0f64).exp();
        for (a, b) in out.coeffs().iter().zip(w.coeffs()) {
            assert!((a - b * expect).norm() < 1e-15);
        }
    }

    #[test]
    fn unobserved_modes_stay_put() {
        let w = sample();
        let out = heat_bfn_error_oracle(&w, 5.0, 5.0, 4, 4, OracleClock::Continuous { t: 1.0 });
        assert_eq!(out.coeff(20), w.coeff(20));
        assert!(out.coeff(3).norm() < 1e-12 * w.coeff(3).norm());
    }

    #[test]
    fn discrete_clock_converges_to_continuous() {
        let (mu, t) = (2.0, 1.0);
        let exact = OracleClock::Continuous { t }.cycle_factor(mu, mu);
        let mut last = f64::INFINITY;
        for steps in [100usize, 1000, 10_000] {
            let d = OracleClock::Discrete {
                dt: t / steps as f64,
                steps,
            }
            .cycle_factor(mu, mu);
            let err = (d - exact).abs();
            assert!(err < last);
            last = err;
        }
        assert!(last < 1e-3 * exact);
    }
}
