//! Comparison of a linear scenario against the closed-form error recursion.

use bfn_core::engine::{generate_reference, heat_bfn_error_oracle, run_bfn, OracleClock};
use bfn_core::SpectralField;

use crate::build::{Experiment, Setup};
use crate::config::{ExperimentConfig, ModelSpec, VariantName, Violation};
use bfn_core::engine::Pde1DSystem;

/// Tolerance on [`OracleReport::max_relative_deviation`].
pub const ORACLE_TOLERANCE: f64 = 1e-8;

/// Weight of the first-iterate error in the denominator: observed modes
/// contract below the round-off floor of `v - u` after one cycle.
const FLOOR_WEIGHT: f64 = 1e-5;

#[derive(Clone, Debug, PartialEq)]
pub struct OracleReport {
    /// `max |sim - oracle| / (|oracle| + 1e-5 |w1|)` over modes and cycles.
    pub max_relative_deviation: f64,
    pub cycles: usize,
    pub modes: usize,
}

impl OracleReport {
    pub fn passed(&self) -> bool {
        self.max_relative_deviation <= ORACLE_TOLERANCE
    }
}

/// Heat and transport only, standard backward leg.
pub fn applicable(cfg: &ExperimentConfig) -> Result<(), Violation> {
    if !matches!(
        cfg.model,
        ModelSpec::Heat { .. } | ModelSpec::Transport { .. }
    ) {
        return Err(Violation::new(
            "model.kind",
            format!("no closed form for {}", cfg.model.tag()),
        ));
    }
    if cfg.bfn.variants != [VariantName::Standard] {
        return Err(Violation::new(
            "bfn.variants",
            "the recursion covers the standard backward leg only",
        ));
    }
    Ok(())
}

pub fn compare(cfg: &ExperimentConfig, exp: &Experiment) -> Result<OracleReport, String> {
    applicable(cfg).map_err(|v| v.to_string())?;
    let Experiment::Line(s) = exp else {
        return Err("linear scenarios are one-dimensional".into());
    };
    compare_line(cfg, s)
}

fn compare_line(cfg: &ExperimentConfig, s: &Setup<Pde1DSystem>) -> Result<OracleReport, String> {
    let r = generate_reference(&s.system, &s.truth0, &s.time_grid, s.sampling.decimation)
        .map_err(|e| e.to_string())?;
    let (_, bfn) = &s.runs[0];
    let h = run_bfn(&s.system, bfn, &r).map_err(|e| e.to_string())?;
    let w1 = s.guess.sub(&s.truth0);
    let clock = OracleClock::Discrete {
        dt: cfg.time.dt,
        steps: s.sampling.steps,
    };
    let m = s.system.mode_cutoff();
    let mut worst = 0.0f64;
    for (i, state) in h.boundary_states.iter().enumerate() {
        let expect = heat_bfn_error_oracle(&w1, bfn.mu, bfn.mu_back, m, i + 1, clock);
        let got = state.sub(&s.truth0);
        for ((g, e), w) in got.coeffs().iter().zip(expect.coeffs()).zip(w1.coeffs()) {
            let dev = (g - e).norm();
            let scale = e.norm() + FLOOR_WEIGHT * w.norm();
            let rel = if scale > 0.0 {
                dev / scale
            } else if dev == 0.0 {
                0.0
            } else {
                f64::INFINITY
            };
            worst = worst.max(rel);
        }
    }
    Ok(OracleReport {
        max_relative_deviation: worst,
        cycles: h.boundary_states.len() - 1,
        modes: w1.coeffs().len(),
    })
}
