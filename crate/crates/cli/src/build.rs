//! Turn a validated config into engine objects.

use bfn_core::engine::{AssimilationSystem, ComponentWindow};
use bfn_core::engine::{
    BackwardVariant, BfnConfig, LorenzSystem, NseSystem, ObservationMask, Pde1DSystem,
    SpectralSystem, TimeConvention, DEFAULT_TRUNCATION,
};
use bfn_core::integrators::{Scheme, StepDirection, TimeGrid};
use bfn_core::models::nse::{default_forcing, synthetic_initial_vorticity, taylor_green};
use bfn_core::models::{
    broadband_state, kdv_forcing, LorenzParams, LorenzState, NseModel, Pde1DModel,
};
use bfn_core::{PeriodicGrid1D, PeriodicGrid2D, SpectralField1D, SpectralField2D};
use num_complex::Complex64;

use crate::config::{
    ConventionName, ExperimentConfig, Family, InitialSpec, ModelSpec, Sampling, SchemeName,
    VariantName, Violation,
};

/// A config resolved into a system, initial states and run settings.
pub struct Setup<S: AssimilationSystem> {
    pub system: S,
    pub truth0: S::State,
    pub guess: S::State,
    pub time_grid: TimeGrid,
    pub sampling: Sampling,
    /// One engine config per requested variant.
    pub runs: Runs<S::State>,
}

/// One engine config per variant, in config order.
pub type Runs<S> = Vec<(VariantName, BfnConfig<S>)>;

pub enum Experiment {
    Lorenz(Setup<LorenzSystem>),
    Line(Setup<Pde1DSystem>),
    Plane(Setup<NseSystem>),
}

fn engine_violation(field: &str, e: impl std::fmt::Display) -> Vec<Violation> {
    vec![Violation::new(field, e.to_string())]
}

pub fn variant(cfg: &ExperimentConfig, name: VariantName) -> BackwardVariant {
    let alpha = cfg.bfn.alpha.unwrap_or(0.0);
    match name {
        VariantName::Standard => BackwardVariant::Standard,
        VariantName::Diffusive => BackwardVariant::Diffusive,
        VariantName::Damped => BackwardVariant::Damped,
        VariantName::Voigt => BackwardVariant::Voigt(alpha),
        VariantName::FilteredDiffusive => BackwardVariant::FilteredDiffusive,
        VariantName::FilteredVoigt => BackwardVariant::FilteredVoigt(alpha),
        VariantName::TruncatedDiffusion => {
            BackwardVariant::TruncatedDiffusion(cfg.bfn.truncation.unwrap_or(DEFAULT_TRUNCATION))
        }
    }
}

fn line_state(spec: &InitialSpec, grid: PeriodicGrid1D) -> Result<SpectralField1D, Vec<Violation>> {
    let mut f = SpectralField1D::zeros(grid);
    match spec {
        InitialSpec::Zero => {}
        InitialSpec::Fourier { terms } => {
            for t in terms {
                let k = t.k as i64;
                let c = if k == 0 {
                    Complex64::new(t.cos, 0.0)
                } else {
                    f.coeff(k) + Complex64::new(0.5 * t.cos, -0.5 * t.sin)
                };
                f.set_mode(k, c);
            }
        }
        InitialSpec::TrigPoly { degree, phase_step } => {
            for k in 1..=*degree {
                f.set_mode(
                    k as i64,
                    Complex64::from_polar(1.0 / k as f64, phase_step * k as f64),
                );
            }
        }
        InitialSpec::Broadband { kmax, decay, norm } => {
            f = broadband_state(grid, *kmax, *decay, *norm)
                .map_err(|e| engine_violation("reference", e))?;
        }
        _ => unreachable!("checked by validation"),
    }
    Ok(f)
}

fn plane_state(spec: &InitialSpec, grid: PeriodicGrid2D) -> SpectralField2D {
    match spec {
        InitialSpec::NseSynthetic { kmax, energy } => {
            synthetic_initial_vorticity(grid, *kmax, *energy)
        }
        InitialSpec::TaylorGreen { amplitude } => {
            bfn_core::SpectralField::scaled(&taylor_green(grid), *amplitude)
        }
        _ => SpectralField2D::zeros(grid),
    }
}

fn lorenz_state(spec: &InitialSpec) -> LorenzState {
    match spec {
        InitialSpec::Point { u } => LorenzState::from_array(*u),
        _ => LorenzState::default(),
    }
}

fn engine_configs<S: AssimilationSystem>(
    cfg: &ExperimentConfig,
    system: &S,
    guess: &S::State,
    sampling: Sampling,
) -> Result<Runs<S::State>, Vec<Violation>> {
    let mut out = Vec::new();
    let mut errors = Vec::new();
    for &name in &cfg.bfn.variants {
        let v = variant(cfg, name);
        if let Err(e) = system.stepper(StepDirection::Backward, &v, cfg.bfn.mu_back(), cfg.time.dt)
        {
            errors.push(Violation::new(
                "bfn.variants",
                format!("{}: {e}", name.tag()),
            ));
            continue;
        }
        let mut c = BfnConfig::new(cfg.bfn.mu, cfg.bfn.iterations, guess.clone())
            .with_mu_back(cfg.bfn.mu_back())
            .with_variant(v)
            .with_record_every(sampling.record_every)
            .with_convention(match cfg.bfn.convention {
                ConventionName::PerLeg => TimeConvention::PerLeg,
                ConventionName::PerCycle => TimeConvention::PerCycle,
            })
            .with_digest();
        if let Some(g) = cfg.bfn.divergence_growth {
            c = c.with_divergence_growth(g);
        }
        out.push((name, c));
    }
    if errors.is_empty() {
        Ok(out)
    } else {
        Err(errors)
    }
}

fn setup<S: AssimilationSystem>(
    cfg: &ExperimentConfig,
    system: S,
    truth0: S::State,
    guess: S::State,
) -> Result<Setup<S>, Vec<Violation>> {
    let sampling = cfg.sampling().expect("checked by validation");
    let time_grid =
        TimeGrid::window(cfg.time.t, cfg.time.dt).map_err(|e| engine_violation("time", e))?;
    let mut errors = Vec::new();
    for (field, s) in [("reference", &truth0), ("bfn.guess", &guess)] {
        if let Err(e) = system.validate_state(s) {
            errors.push(Violation::new(field, e.to_string()));
        }
    }
    let runs = engine_configs(cfg, &system, &guess, sampling).unwrap_or_else(|mut e| {
        errors.append(&mut e);
        Vec::new()
    });
    if !errors.is_empty() {
        return Err(errors);
    }
    Ok(Setup {
        system,
        truth0,
        guess,
        time_grid,
        sampling,
        runs,
    })
}

fn scheme(cfg: &ExperimentConfig) -> Scheme {
    match cfg.scheme() {
        SchemeName::Ifrk4 => Scheme::Ifrk4,
        SchemeName::IfEuler => Scheme::IfEuler,
    }
}

fn line_model(cfg: &ExperimentConfig, grid: PeriodicGrid1D) -> bfn_core::Result<Pde1DModel> {
    let forcing = |f0: f64| (f0 != 0.0).then(|| kdv_forcing(f0, grid));
    match cfg.model {
        ModelSpec::Heat { nu } => Pde1DModel::heat(nu),
        ModelSpec::Transport { nu, a } => Pde1DModel::transport(nu, a),
        ModelSpec::Burgers { nu } => Pde1DModel::burgers(nu),
        ModelSpec::KdvDamped { gamma, forcing: f0 } => Pde1DModel::kdv_damped(gamma, forcing(f0)),
        ModelSpec::KdvViscous { nu, forcing: f0 } => Pde1DModel::kdv_viscous(nu, forcing(f0)),
        _ => unreachable!("line family"),
    }
}

/// Build the experiment from a config whose field checks passed.
pub fn build(cfg: &ExperimentConfig) -> Result<Experiment, Vec<Violation>> {
    let obs = &cfg.observation;
    match cfg.model.family() {
        Family::Lorenz => {
            let ModelSpec::Lorenz { sigma, rho, b } = cfg.model else {
                unreachable!()
            };
            let params =
                LorenzParams::new(sigma, rho, b).map_err(|e| engine_violation("model", e))?;
            let comps = obs.components.clone().unwrap_or_default();
            let mask = ObservationMask::Components(
                comps
                    .iter()
                    .map(|&i| match obs.gamma {
                        Some(g) => ComponentWindow::staggered(i, g),
                        None => ComponentWindow::always(i),
                    })
                    .collect(),
            );
            let system =
                LorenzSystem::new(params, mask).map_err(|e| engine_violation("observation", e))?;
            let s = setup(
                cfg,
                system,
                lorenz_state(&cfg.reference),
                lorenz_state(&cfg.bfn.guess),
            )?;
            Ok(Experiment::Lorenz(s))
        }
        Family::Line => {
            let g = cfg.grid.as_ref().expect("checked by validation");
            let grid =
                PeriodicGrid1D::new(g.n, g.length).map_err(|e| engine_violation("grid", e))?;
            let model = line_model(cfg, grid).map_err(|e| engine_violation("model", e))?;
            let truth0 = line_state(&cfg.reference, grid)?;
            let guess = line_state(&cfg.bfn.guess, grid)?;
            let m = obs.m.expect("checked by validation");
            let system = SpectralSystem::new(model, &truth0, m, scheme(cfg))
                .map_err(|e| engine_violation("model", e))?;
            Ok(Experiment::Line(setup(cfg, system, truth0, guess)?))
        }
        Family::Plane => {
            let ModelSpec::Nse { nu, grashof } = cfg.model else {
                unreachable!()
            };
            let g = cfg.grid.as_ref().expect("checked by validation");
            let grid =
                PeriodicGrid2D::new(g.n, g.length).map_err(|e| engine_violation("grid", e))?;
            let model = match grashof {
                Some(gr) => NseModel::new(nu, default_forcing(grid), gr),
                None => NseModel::unforced(nu, grid),
            }
            .map_err(|e| engine_violation("model", e))?;
            let truth0 = plane_state(&cfg.reference, grid);
            let guess = plane_state(&cfg.bfn.guess, grid);
            let m = obs.m.expect("checked by validation");
            let system = SpectralSystem::new(model, &truth0, m, scheme(cfg))
                .map_err(|e| engine_violation("model", e))?;
            Ok(Experiment::Plane(setup(cfg, system, truth0, guess)?))
        }
    }
}

/// Full validation: field checks, then model construction.
pub fn check(cfg: &ExperimentConfig) -> Result<Experiment, Vec<Violation>> {
    let v = cfg.violations();
    if !v.is_empty() {
        return Err(v);
    }
    build(cfg)
}
