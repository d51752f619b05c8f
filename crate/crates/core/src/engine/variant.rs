use std::fmt;

use num_complex::Complex64;

use super::system::SpectralModel;
use crate::error::{BfnError, Result};
use crate::spectral::{helmholtz_symbol, SpectralField};

/// Dynamics used on the backward pass.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub enum BackwardVariant {
    /// The original model run backward.
    #[default]
    Standard,
    /// Every dissipative term has its sign reversed.
    Diffusive,
    /// Only the linear damping has its sign reversed.
    Damped,
    /// Time derivative premultiplied by `I - alpha^2 Delta`.
    Voigt(f64),
    /// Diffusive correction on unobserved modes only.
    FilteredDiffusive,
    /// Voigt smoothing on unobserved modes only.
    FilteredVoigt(f64),
    /// Backward anti-diffusion kept on `|k| <= cutoff`, dropped above.
    TruncatedDiffusion(usize),
}

pub const DEFAULT_TRUNCATION: usize = 50;

impl BackwardVariant {
    pub fn tag(&self) -> &'static str {
        match self {
            Self::Standard => "standard",
            Self::Diffusive => "diffusive",
            Self::Damped => "damped",
            Self::Voigt(_) => "voigt",
            Self::FilteredDiffusive => "filtered-diffusive",
            Self::FilteredVoigt(_) => "filtered-voigt",
            Self::TruncatedDiffusion(_) => "truncated-diffusion",
        }
    }

    /// Voigt length scale, if any.
    pub fn alpha(&self) -> Option<f64> {
        match self {
            Self::Voigt(a) | Self::FilteredVoigt(a) => Some(*a),
            _ => None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if let Some(a) = self.alpha() {
            if !(a.is_finite() && a >= 0.0) {
                return Err(BfnError::InvalidParameter(format!(
                    "voigt alpha must be non-negative, got {a}"
                )));
            }
        }
        Ok(())
    }
}

impl fmt::Display for BackwardVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Voigt(a) | Self::FilteredVoigt(a) => write!(f, "{}(alpha={a})", self.tag()),
            Self::TruncatedDiffusion(c) => write!(f, "{}(cutoff={c})", self.tag()),
            _ => f.write_str(self.tag()),
        }
    }
}

/// Per-mode description of a march in `tau = T - t`:
/// `dv/dtau = symbol v + smoothing (-(N(v) + f) + mu P_M (obs - v))`.
#[derive(Clone, Debug, PartialEq)]
pub struct BackwardDynamics {
    pub symbol: Vec<Complex64>,
    /// Inverse Helmholtz factors for the Voigt variants.
    pub smoothing: Option<Vec<f64>>,
}

fn mismatch<M: SpectralModel>(variant: &BackwardVariant, model: &M) -> BfnError {
    BfnError::VariantMismatch {
        variant: variant.to_string(),
        model: model.name(),
    }
}

/// Effective linear symbol (and Voigt smoothing) of the backward march.
///
/// `template` supplies the grid; `m` is the observation cutoff used by the
/// filtered variants.
pub fn backward_symbol<M: SpectralModel>(
    model: &M,
    template: &M::Field,
    variant: &BackwardVariant,
    m: usize,
) -> Result<BackwardDynamics> {
    variant.validate()?;
    let forward = model.symbol_table(template);
    let (nu, gamma) = (model.viscosity(), model.damping());
    let m2 = (m * m) as i64;
    let n = forward.len();
    let negated = forward.iter().map(|s| -s);

    let correction = |slot: usize, filtered: bool| -> f64 {
        if filtered && template.index_sq(slot) <= m2 {
            0.0
        } else {
            2.0 * (nu * template.kappa_sq(slot) + gamma)
        }
    };

    let symbol: Vec<Complex64> = match *variant {
        BackwardVariant::Standard
        | BackwardVariant::Voigt(_)
        | BackwardVariant::FilteredVoigt(_) => negated.collect(),
        BackwardVariant::Diffusive | BackwardVariant::FilteredDiffusive => {
            if nu <= 0.0 && gamma <= 0.0 {
                return Err(mismatch(variant, model));
            }
            let filtered = matches!(variant, BackwardVariant::FilteredDiffusive);
            negated
                .enumerate()
                .map(|(slot, s)| s - correction(slot, filtered))
                .collect()
        }
        BackwardVariant::Damped => {
            if gamma <= 0.0 {
                return Err(mismatch(variant, model));
            }
            negated.map(|s| s - 2.0 * gamma).collect()
        }
        BackwardVariant::TruncatedDiffusion(cutoff) => {
            if !model.supports_truncated_diffusion() || nu <= 0.0 {
                return Err(mismatch(variant, model));
            }
            let c2 = (cutoff * cutoff) as i64;
            negated
                .enumerate()
                .map(|(slot, s)| {
                    if template.index_sq(slot) > c2 {
                        s - nu * template.kappa_sq(slot)
                    } else {
                        s
                    }
                })
                .collect()
        }
    };

    let smoothing = variant.alpha().map(|alpha| {
        let filter = matches!(variant, BackwardVariant::FilteredVoigt(_)).then_some(m);
        (0..n)
            .map(|slot| 1.0 / helmholtz_symbol(template, slot, alpha, filter))
            .collect::<Vec<f64>>()
    });

    let symbol = match &smoothing {
        Some(h) => symbol.iter().zip(h).map(|(s, w)| s * w).collect(),
        None => symbol,
    };
    Ok(BackwardDynamics { symbol, smoothing })
}
