//! The back-and-forth nudging loop, twin-experiment references, the
//! direct-insertion comparator and the linear-model error oracle.

mod observation;
mod oracle;
mod sync;
mod system;
mod variant;

use std::hash::{DefaultHasher, Hasher};

pub use observation::{ComponentWindow, ObservationMask, ObservationRecord};
pub use oracle::{heat_bfn_error_oracle, OracleClock};
pub use sync::{run_synchronization, SyncDirection, SyncRule};
pub use system::{
    AssimilationSystem, LorenzStepper, LorenzSystem, NseSystem, Pde1DSystem, SpectralModel,
    SpectralStepper, SpectralSystem,
};
pub use variant::{backward_symbol, BackwardDynamics, BackwardVariant, DEFAULT_TRUNCATION};

use crate::diagnostics::ErrorSample;
use crate::error::{BfnError, Result};
use crate::integrators::{StepDirection, TimeGrid};

/// Identical-twin reference: the truth (decimated) and its observations
/// (every step).
#[derive(Clone, Debug)]
pub struct Reference<S, O> {
    /// Truth at lattice points `0, r, 2r, ..., n_steps` with `r = decimation`.
    pub truth: Vec<S>,
    pub observations: ObservationRecord<O>,
    pub decimation: usize,
}

impl<S, O> Reference<S, O> {
    pub fn time_grid(&self) -> &TimeGrid {
        self.observations.time_grid()
    }

    /// Truth at lattice point `j`; `j` must be a multiple of the decimation.
    pub fn truth_at(&self, j: usize) -> &S {
        debug_assert_eq!(j % self.decimation, 0);
        &self.truth[j / self.decimation]
    }

    pub fn initial(&self) -> &S {
        &self.truth[0]
    }
}

fn check_decimation(time_grid: &TimeGrid, r: usize) -> Result<()> {
    if r == 0 || !time_grid.n_steps().is_multiple_of(r) {
        return Err(BfnError::InvalidParameter(format!(
            "decimation {r} must divide the {} steps of the window",
            time_grid.n_steps()
        )));
    }
    Ok(())
}

/// Integrate the true system over the window and record its observations.
pub fn generate_reference<S: AssimilationSystem>(
    system: &S,
    u0: &S::State,
    time_grid: &TimeGrid,
    decimation: usize,
) -> Result<Reference<S::State, S::Obs>> {
    system.validate_state(u0)?;
    check_decimation(time_grid, decimation)?;
    let stepper = system.stepper(
        StepDirection::Forward,
        &BackwardVariant::Standard,
        0.0,
        time_grid.dt(),
    )?;
    let span = time_grid.span();
    let n = time_grid.n_steps();
    let mut truth = Vec::with_capacity(n / decimation + 1);
    let mut obs = Vec::with_capacity(n + 1);
    let mut u = u0.clone();
    for j in 0..=n {
        if j > 0 {
            u = system.step(&stepper, &u, None);
            if !system.is_finite(&u) {
                return Err(BfnError::NonFiniteState { leg: 0, step: j });
            }
        }
        if j % decimation == 0 {
            truth.push(u.clone());
        }
        obs.push(system.observe(&u, time_grid.time(j) - time_grid.t0(), span));
    }
    Ok(Reference {
        truth,
        observations: ObservationRecord::new(*time_grid, obs)?,
        decimation,
    })
}

/// How legs are placed on the iteration-time axis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum TimeConvention {
    /// Leg `k` (zero-based) covers `[k, k + 1)`.
    #[default]
    PerLeg,
    /// Cycle `n` covers `[n, n + 1)`: forward half then backward half.
    PerCycle,
}

impl TimeConvention {
    pub fn name(self) -> &'static str {
        match self {
            Self::PerLeg => "per-leg",
            Self::PerCycle => "per-cycle",
        }
    }

    /// Iteration time of fraction `s in [0, 1)` through leg `leg`.
    pub fn iteration_time(self, leg: usize, s: f64) -> f64 {
        match self {
            Self::PerLeg => leg as f64 + s,
            Self::PerCycle => 0.5 * (leg as f64 + s),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BfnConfig<S> {
    pub mu: f64,
    pub mu_back: f64,
    pub n_iterations: usize,
    /// `v~^0(0)`.
    pub initial_guess: S,
    pub variant: BackwardVariant,
    /// Record an error sample every `record_every` steps.
    pub record_every: usize,
    pub convention: TimeConvention,
    /// Flag a blow-up when the error grows by more than this factor within
    /// a leg (relative to the larger of its starting error and
    /// `f64::EPSILON` times the truth magnitude).
    pub divergence_growth: Option<f64>,
    /// Hash every assimilated state into `IterationHistory::digest`.
    pub digest: bool,
}

impl<S> BfnConfig<S> {
    /// `mu_back = mu`, standard backward pass, every step recorded.
    pub fn new(mu: f64, n_iterations: usize, initial_guess: S) -> Self {
        Self {
            mu,
            mu_back: mu,
            n_iterations,
            initial_guess,
            variant: BackwardVariant::Standard,
            record_every: 1,
            convention: TimeConvention::PerLeg,
            divergence_growth: None,
            digest: false,
        }
    }

    pub fn with_variant(mut self, variant: BackwardVariant) -> Self {
        self.variant = variant;
        self
    }

    pub fn with_mu_back(mut self, mu_back: f64) -> Self {
        self.mu_back = mu_back;
        self
    }

    pub fn with_record_every(mut self, r: usize) -> Self {
        self.record_every = r;
        self
    }

    pub fn with_convention(mut self, c: TimeConvention) -> Self {
        self.convention = c;
        self
    }

    pub fn with_divergence_growth(mut self, g: f64) -> Self {
        self.divergence_growth = Some(g);
        self
    }

    pub fn with_digest(mut self) -> Self {
        self.digest = true;
        self
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("mu", self.mu), ("mu_back", self.mu_back)] {
            if !(v.is_finite() && v >= 0.0) {
                return Err(BfnError::InvalidParameter(format!(
                    "{name} must be non-negative, got {v}"
                )));
            }
        }
        if self.n_iterations == 0 {
            return Err(BfnError::InvalidParameter(
                "n_iterations must be positive".into(),
            ));
        }
        if self.record_every == 0 {
            return Err(BfnError::InvalidParameter(
                "record_every must be positive".into(),
            ));
        }
        if let Some(g) = self.divergence_growth {
            if g.is_nan() || g <= 1.0 {
                return Err(BfnError::InvalidParameter(format!(
                    "divergence_growth must exceed 1, got {g}"
                )));
            }
        }
        self.variant.validate()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ErrorRow {
    /// Physical time of the sampled state.
    pub time: f64,
    pub errors: Vec<ErrorSample>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LegRecord<S> {
    /// Zero-based; even legs are forward, odd legs backward.
    pub index: usize,
    /// One-based BFN iteration `n`.
    pub cycle: usize,
    pub direction: StepDirection,
    pub initial_state: S,
    pub final_state: S,
    pub samples: Vec<ErrorRow>,
    /// Largest total error over the leg divided by its growth floor.
    pub growth: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum BlowUpKind {
    NonFinite,
    Divergence { growth: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BlowUp {
    pub leg: usize,
    pub step: usize,
    pub kind: BlowUpKind,
}

#[derive(Clone, Debug, PartialEq)]
pub struct IterationHistory<S> {
    pub legs: Vec<LegRecord<S>>,
    /// `v~^n(0)` for `n = 0, 1, ...`; entry 0 is the initial guess.
    pub boundary_states: Vec<S>,
    /// Errors of `boundary_states` against `u(0)`.
    pub boundary_errors: Vec<Vec<ErrorSample>>,
    pub recovered_spectrum: Option<Vec<(usize, f64)>>,
    pub blowup: Option<BlowUp>,
    pub digest: Option<u64>,
    pub convention: TimeConvention,
    pub steps_per_leg: usize,
    pub n_iterations: usize,
}

impl<S> IterationHistory<S> {
    /// Last recovered initial state.
    pub fn recovered(&self) -> &S {
        self.boundary_states
            .last()
            .expect("history holds the initial guess")
    }

    /// Total error (first norm) at each cycle boundary.
    pub fn boundary_totals(&self) -> Vec<f64> {
        self.boundary_errors.iter().map(|e| e[0].total).collect()
    }

    /// `Err(NonFiniteState)` if the run hit a non-finite state.
    pub fn check_finite(&self) -> Result<()> {
        match self.blowup {
            Some(BlowUp {
                leg,
                step,
                kind: BlowUpKind::NonFinite,
            }) => Err(BfnError::NonFiniteState { leg, step }),
            _ => Ok(()),
        }
    }
}

/// Outcome of one leg.
#[derive(Clone, Debug)]
pub struct LegResult<S> {
    pub final_state: S,
    pub samples: Vec<ErrorRow>,
    /// Largest sampled total error over the leg's growth floor.
    pub growth: f64,
    /// First sampled step whose growth exceeded the divergence threshold.
    pub diverged_at: Option<(usize, f64)>,
}

/// Leg-level settings for [`integrate_leg`].
#[derive(Clone, Copy, Debug)]
pub struct LegSpec<'a> {
    pub index: usize,
    pub direction: StepDirection,
    pub variant: &'a BackwardVariant,
    pub mu: f64,
    pub record_every: usize,
    pub convention: TimeConvention,
    pub divergence_growth: Option<f64>,
}

/// March one leg. Forward legs nudge with the observation at the left end
/// of each step; backward legs march `tau = T - t` and use the right end in
/// `t`. Errors are sampled at lattice points `0, r, 2r, ...` of the leg,
/// excluding its end point.
pub fn integrate_leg<S: AssimilationSystem>(
    system: &S,
    initial: &S::State,
    spec: &LegSpec<'_>,
    reference: &Reference<S::State, S::Obs>,
    mut digest: Option<&mut DefaultHasher>,
) -> Result<LegResult<S::State>> {
    let grid = reference.time_grid();
    let n = grid.n_steps();
    let stepper = system.stepper(spec.direction, spec.variant, spec.mu, grid.dt())?;
    let lattice = |j: usize| match spec.direction {
        StepDirection::Forward => j,
        StepDirection::Backward => n - j,
    };

    let start_truth = reference.truth_at(lattice(0));
    let floor = system
        .errors(start_truth, initial)
        .first()
        .map_or(0.0, |e| e.total)
        .max(f64::EPSILON * system.magnitude(start_truth))
        .max(f64::MIN_POSITIVE);

    let mut samples = Vec::with_capacity(n / spec.record_every);
    let mut growth: f64 = 0.0;
    let mut diverged_at = None;
    let mut v = initial.clone();
    for j in 0..n {
        if j % spec.record_every == 0 {
            let i = lattice(j);
            let it = spec
                .convention
                .iteration_time(spec.index, j as f64 / n as f64);
            let errors: Vec<ErrorSample> = system
                .errors(reference.truth_at(i), &v)
                .into_iter()
                .map(|e| e.at(it))
                .collect();
            let g = errors[0].total / floor;
            growth = growth.max(g);
            if let Some(limit) = spec.divergence_growth {
                if diverged_at.is_none() && g > limit {
                    diverged_at = Some((j, g));
                }
            }
            samples.push(ErrorRow {
                time: grid.time(i),
                errors,
            });
            if diverged_at.is_some() {
                break;
            }
        }
        v = system.step(&stepper, &v, Some(reference.observations.at(lattice(j))));
        if !system.is_finite(&v) {
            return Err(BfnError::NonFiniteState {
                leg: spec.index,
                step: j + 1,
            });
        }
        if let Some(h) = digest.as_deref_mut() {
            system.hash_state(&v, h);
        }
    }
    Ok(LegResult {
        final_state: v,
        samples,
        growth,
        diverged_at,
    })
}

/// Run `n_iterations` forward/backward cycles against a reference.
///
/// Legs chain exactly: `v^n(0) = v~^{n-1}(0)` and `v~^n(T) = v^n(T)`.
/// A non-finite state or a divergence beyond `divergence_growth` stops the
/// run and is recorded in `blowup` rather than returned as an error.
pub fn run_bfn<S: AssimilationSystem>(
    system: &S,
    config: &BfnConfig<S::State>,
    reference: &Reference<S::State, S::Obs>,
) -> Result<IterationHistory<S::State>> {
    config.validate()?;
    system.validate_state(&config.initial_guess)?;
    check_decimation(reference.time_grid(), config.record_every)?;
    if config.record_every % reference.decimation != 0 {
        return Err(BfnError::InvalidParameter(format!(
            "record_every {} must be a multiple of the reference decimation {}",
            config.record_every, reference.decimation
        )));
    }
    // surface variant/model mismatches before any work
    system.stepper(
        StepDirection::Backward,
        &config.variant,
        config.mu_back,
        reference.time_grid().dt(),
    )?;

    let u0 = reference.initial();
    let mut hasher = config.digest.then(DefaultHasher::new);
    let mut history = IterationHistory {
        legs: Vec::with_capacity(2 * config.n_iterations),
        boundary_states: vec![config.initial_guess.clone()],
        boundary_errors: vec![system.errors(u0, &config.initial_guess)],
        recovered_spectrum: None,
        blowup: None,
        digest: None,
        convention: config.convention,
        steps_per_leg: reference.time_grid().n_steps(),
        n_iterations: config.n_iterations,
    };

    let mut state = config.initial_guess.clone();
    'cycles: for cycle in 1..=config.n_iterations {
        for direction in [StepDirection::Forward, StepDirection::Backward] {
            let index = history.legs.len();
            let spec = LegSpec {
                index,
                direction,
                variant: &config.variant,
                mu: match direction {
                    StepDirection::Forward => config.mu,
                    StepDirection::Backward => config.mu_back,
                },
                record_every: config.record_every,
                convention: config.convention,
                divergence_growth: config.divergence_growth,
            };
            match integrate_leg(system, &state, &spec, reference, hasher.as_mut()) {
                Ok(res) => {
                    history.legs.push(LegRecord {
                        index,
                        cycle,
                        direction,
                        initial_state: state,
                        final_state: res.final_state.clone(),
                        samples: res.samples,
                        growth: res.growth,
                    });
                    state = res.final_state;
                    if let Some((step, growth)) = res.diverged_at {
                        history.blowup = Some(BlowUp {
                            leg: index,
                            step,
                            kind: BlowUpKind::Divergence { growth },
                        });
                        break 'cycles;
                    }
                }
                Err(BfnError::NonFiniteState { leg, step }) => {
                    history.blowup = Some(BlowUp {
                        leg,
                        step,
                        kind: BlowUpKind::NonFinite,
                    });
                    break 'cycles;
                }
                Err(e) => return Err(e),
            }
        }
        history.boundary_errors.push(system.errors(u0, &state));
        history.boundary_states.push(state.clone());
    }
    history.recovered_spectrum = system.spectrum(history.recovered());
    history.digest = hasher.map(|h| h.finish());
    Ok(history)
}
