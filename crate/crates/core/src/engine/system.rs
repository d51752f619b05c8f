use std::fmt::Debug;
use std::hash::{DefaultHasher, Hash};

use num_complex::Complex64;

use super::observation::ObservationMask;
use super::variant::{backward_symbol, BackwardVariant};
use crate::diagnostics::{lorenz_error, ErrorSample, NormKind};
use crate::error::{BfnError, Result};
use crate::integrators::{rk4_step_nudged, IntegratingFactor, Scheme, StepDirection};
use crate::models::{lorenz_rhs, nse, LorenzParams, LorenzState, NseModel, Pde1DModel};
use crate::spectral::{SpectralField, SpectralField1D, SpectralField2D};

/// A model together with its observation operator, as seen by the BFN loop.
pub trait AssimilationSystem: Send + Sync {
    type State: Clone + Debug + Send + Sync;
    /// Masked observation at one instant.
    type Obs: Clone + Debug + PartialEq + Send + Sync;
    /// Precomputed per-leg stepping data.
    type Stepper: Send + Sync;

    fn describe(&self) -> String;

    /// Reject states the system cannot evolve (wrong grid, nonzero mean).
    fn validate_state(&self, s: &Self::State) -> Result<()>;

    fn stepper(
        &self,
        direction: StepDirection,
        variant: &BackwardVariant,
        mu: f64,
        dt: f64,
    ) -> Result<Self::Stepper>;

    /// Advance one step; `obs = None` disables nudging.
    fn step(
        &self,
        stepper: &Self::Stepper,
        s: &Self::State,
        obs: Option<&Self::Obs>,
    ) -> Self::State;

    /// Apply the observation operator at time `t` of a window of length `span`.
    fn observe(&self, s: &Self::State, t: f64, span: f64) -> Self::Obs;

    /// Error of `estimate` against `truth` in every monitored norm.
    fn errors(&self, truth: &Self::State, estimate: &Self::State) -> Vec<ErrorSample>;

    fn is_finite(&self, s: &Self::State) -> bool;

    /// Size of a state in the first monitored norm.
    fn magnitude(&self, s: &Self::State) -> f64;

    fn hash_state(&self, s: &Self::State, h: &mut DefaultHasher);

    /// Shell spectrum, for spectral states.
    fn spectrum(&self, _s: &Self::State) -> Option<Vec<(usize, f64)>> {
        None
    }
}

// ---------------------------------------------------------------- Lorenz

#[derive(Clone, Debug, PartialEq)]
pub struct LorenzSystem {
    pub params: LorenzParams,
    pub mask: ObservationMask,
}

#[derive(Clone, Copy, Debug)]
pub struct LorenzStepper {
    sign: f64,
    mu: f64,
    dt: f64,
}

impl LorenzSystem {
    pub fn new(params: LorenzParams, mask: ObservationMask) -> Result<Self> {
        mask.validate()?;
        if mask.mode_cutoff().is_some() {
            return Err(BfnError::InvalidParameter(
                "lorenz observations must be component masks".into(),
            ));
        }
        Ok(Self { params, mask })
    }
}

impl AssimilationSystem for LorenzSystem {
    type State = LorenzState;
    type Obs = [Option<f64>; 3];
    type Stepper = LorenzStepper;

    fn describe(&self) -> String {
        "lorenz".into()
    }

    fn validate_state(&self, s: &LorenzState) -> Result<()> {
        if s.is_finite() {
            Ok(())
        } else {
            Err(BfnError::InvalidParameter("non-finite lorenz state".into()))
        }
    }

    fn stepper(
        &self,
        direction: StepDirection,
        variant: &BackwardVariant,
        mu: f64,
        dt: f64,
    ) -> Result<LorenzStepper> {
        if direction == StepDirection::Backward && *variant != BackwardVariant::Standard {
            return Err(BfnError::VariantMismatch {
                variant: variant.to_string(),
                model: self.describe(),
            });
        }
        let sign = match direction {
            StepDirection::Forward => 1.0,
            StepDirection::Backward => -1.0,
        };
        Ok(LorenzStepper { sign, mu, dt })
    }

    fn step(&self, st: &LorenzStepper, s: &LorenzState, obs: Option<&Self::Obs>) -> LorenzState {
        let mut nudge = [0.0; 3];
        if let Some(o) = obs {
            let cur = s.to_array();
            for i in 0..3 {
                if let Some(val) = o[i] {
                    nudge[i] = st.mu * (val - cur[i]);
                }
            }
        }
        let p = self.params;
        let sign = st.sign;
        rk4_step_nudged(
            s,
            |v| lorenz_rhs(v, &p).scaled(sign),
            &LorenzState::from_array(nudge),
            st.dt,
        )
    }

    fn observe(&self, s: &LorenzState, t: f64, span: f64) -> Self::Obs {
        let mut out = [None; 3];
        if let ObservationMask::Components(ws) = &self.mask {
            for w in ws {
                if w.contains(t, span) {
                    out[w.component] = Some(s.component(w.component));
                }
            }
        }
        out
    }

    fn errors(&self, truth: &LorenzState, estimate: &LorenzState) -> Vec<ErrorSample> {
        vec![lorenz_error(
            truth,
            estimate,
            self.mask.observed_components(),
        )]
    }

    fn is_finite(&self, s: &LorenzState) -> bool {
        s.is_finite()
    }

    fn magnitude(&self, s: &LorenzState) -> f64 {
        s.norm()
    }

    fn hash_state(&self, s: &LorenzState, h: &mut DefaultHasher) {
        for v in s.to_array() {
            v.to_bits().hash(h);
        }
    }
}

// -------------------------------------------------------------- spectral

/// What the generic spectral system needs from a PDE model.
pub trait SpectralModel: Send + Sync {
    type Field: SpectralField;

    fn name(&self) -> String;

    /// Forward linear symbol per storage slot of `template`'s grid.
    fn symbol_table(&self, template: &Self::Field) -> Vec<Complex64>;

    /// Nonlinear and forcing terms.
    fn explicit_terms(&self, f: &Self::Field) -> Self::Field;

    fn viscosity(&self) -> f64;

    fn damping(&self) -> f64 {
        0.0
    }

    fn supports_truncated_diffusion(&self) -> bool {
        false
    }

    fn mean_free(&self) -> bool;

    /// Grid compatibility of the model's own fields with `template`.
    fn check_grid(&self, template: &Self::Field) -> Result<()>;

    /// `(L2, H1-seminorm)` of the physical quantity a field represents.
    fn error_norms(&self, f: &Self::Field) -> (f64, f64) {
        f.norms()
    }
}

impl SpectralModel for Pde1DModel {
    type Field = SpectralField1D;

    fn name(&self) -> String {
        self.kind.name().into()
    }

    fn symbol_table(&self, template: &SpectralField1D) -> Vec<Complex64> {
        Pde1DModel::symbol_table(self, template.grid())
    }

    fn explicit_terms(&self, f: &SpectralField1D) -> SpectralField1D {
        Pde1DModel::explicit_terms(self, f)
    }

    fn viscosity(&self) -> f64 {
        self.nu
    }

    fn damping(&self) -> f64 {
        self.gamma
    }

    fn supports_truncated_diffusion(&self) -> bool {
        true
    }

    fn mean_free(&self) -> bool {
        self.is_mean_free()
    }

    fn check_grid(&self, template: &SpectralField1D) -> Result<()> {
        match &self.forcing {
            Some(f) if !f.same_grid(template) => Err(BfnError::GridMismatch),
            _ => Ok(()),
        }
    }
}

impl SpectralModel for NseModel {
    type Field = SpectralField2D;

    fn name(&self) -> String {
        "nse".into()
    }

    fn symbol_table(&self, _template: &SpectralField2D) -> Vec<Complex64> {
        NseModel::symbol_table(self)
    }

    fn explicit_terms(&self, f: &SpectralField2D) -> SpectralField2D {
        NseModel::explicit_terms(self, f)
    }

    fn viscosity(&self) -> f64 {
        self.nu
    }

    fn mean_free(&self) -> bool {
        true
    }

    fn check_grid(&self, template: &SpectralField2D) -> Result<()> {
        if self.forcing_vorticity.same_grid(template) {
            Ok(())
        } else {
            Err(BfnError::GridMismatch)
        }
    }

    /// Velocity energy and enstrophy levels: `(||u||, ||omega||)`.
    fn error_norms(&self, f: &SpectralField2D) -> (f64, f64) {
        (nse::velocity_l2(f), f.norms().0)
    }
}

/// A spectral PDE observed through `P_M`.
#[derive(Clone, Debug)]
pub struct SpectralSystem<M: SpectralModel> {
    model: M,
    template: M::Field,
    m: usize,
    scheme: Scheme,
    observed_slots: Vec<usize>,
}

pub type Pde1DSystem = SpectralSystem<Pde1DModel>;
pub type NseSystem = SpectralSystem<NseModel>;

pub struct SpectralStepper {
    factor: IntegratingFactor,
    smoothing: Option<Vec<f64>>,
    sign: f64,
    mu: f64,
    dt: f64,
}

impl<M: SpectralModel> SpectralSystem<M> {
    /// `template` is any field on the target grid (its values are ignored).
    pub fn new(model: M, template: &M::Field, m: usize, scheme: Scheme) -> Result<Self> {
        model.check_grid(template)?;
        let template = template.zeros_like();
        let m2 = (m * m) as i64;
        let observed_slots = (0..template.coeffs().len())
            .filter(|&s| template.index_sq(s) <= m2)
            .collect();
        Ok(Self {
            model,
            template,
            m,
            scheme,
            observed_slots,
        })
    }

    pub fn model(&self) -> &M {
        &self.model
    }

    pub fn mode_cutoff(&self) -> usize {
        self.m
    }

    pub fn scheme(&self) -> Scheme {
        self.scheme
    }

    pub fn template(&self) -> &M::Field {
        &self.template
    }

    fn error_sample(
        &self,
        kind: NormKind,
        d: &M::Field,
        pick: fn((f64, f64)) -> f64,
    ) -> ErrorSample {
        let p = pick(self.model.error_norms(&d.project_low_modes(self.m)));
        let q = pick(self.model.error_norms(&d.complement_projection(self.m)));
        let mut e = ErrorSample::new(kind, p, q);
        e.total = pick(self.model.error_norms(d));
        e
    }
}

impl<M: SpectralModel> AssimilationSystem for SpectralSystem<M>
where
    M::Field: SpectralField,
{
    type State = M::Field;
    type Obs = Vec<Complex64>;
    type Stepper = SpectralStepper;

    fn describe(&self) -> String {
        self.model.name()
    }

    fn validate_state(&self, s: &M::Field) -> Result<()> {
        if !s.same_grid(&self.template) {
            return Err(BfnError::GridMismatch);
        }
        if self.model.mean_free() {
            let c0 = s.coeffs()[0].norm();
            if c0 > 1e-12 * (1.0 + s.max_abs()) {
                return Err(BfnError::NotMeanFree(c0));
            }
        }
        Ok(())
    }

    fn stepper(
        &self,
        direction: StepDirection,
        variant: &BackwardVariant,
        mu: f64,
        dt: f64,
    ) -> Result<SpectralStepper> {
        let (symbol, smoothing, sign) = match direction {
            StepDirection::Forward => (self.model.symbol_table(&self.template), None, 1.0),
            StepDirection::Backward => {
                let b = backward_symbol(&self.model, &self.template, variant, self.m)?;
                (b.symbol, b.smoothing, -1.0)
            }
        };
        Ok(SpectralStepper {
            factor: IntegratingFactor::new(&symbol, dt),
            smoothing,
            sign,
            mu,
            dt,
        })
    }

    fn step(&self, st: &SpectralStepper, s: &M::Field, obs: Option<&Vec<Complex64>>) -> M::Field {
        let weight = |slot: usize| st.smoothing.as_ref().map_or(1.0, |h| h[slot]);
        let explicit = |f: &M::Field| {
            let mut e = self.model.explicit_terms(f);
            for (slot, c) in e.coeffs_mut().iter_mut().enumerate() {
                *c *= st.sign * weight(slot);
            }
            e
        };
        let nudge = obs.map(|o| {
            let mut n = self.template.clone();
            let (cur, out) = (s.coeffs(), n.coeffs_mut());
            for (&slot, &val) in self.observed_slots.iter().zip(o) {
                out[slot] = (val - cur[slot]) * (st.mu * weight(slot));
            }
            n
        });
        self.scheme
            .step(s, &st.factor, explicit, nudge.as_ref(), st.dt)
    }

    fn observe(&self, s: &M::Field, _t: f64, _span: f64) -> Vec<Complex64> {
        let c = s.coeffs();
        self.observed_slots.iter().map(|&slot| c[slot]).collect()
    }

    fn errors(&self, truth: &M::Field, estimate: &M::Field) -> Vec<ErrorSample> {
        let d = truth.sub(estimate);
        vec![
            self.error_sample(NormKind::L2, &d, |n| n.0),
            self.error_sample(NormKind::H1Semi, &d, |n| n.1),
        ]
    }

    fn is_finite(&self, s: &M::Field) -> bool {
        s.is_finite()
    }

    fn magnitude(&self, s: &M::Field) -> f64 {
        self.model.error_norms(s).0
    }

    fn hash_state(&self, s: &M::Field, h: &mut DefaultHasher) {
        for c in s.coeffs() {
            c.re.to_bits().hash(h);
            c.im.to_bits().hash(h);
        }
    }

    fn spectrum(&self, s: &M::Field) -> Option<Vec<(usize, f64)>> {
        Some(s.energy_spectrum())
    }
}
