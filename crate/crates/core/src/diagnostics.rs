//! Error functionals and report assembly.

use crate::engine::{IterationHistory, TimeConvention};
use crate::error::{BfnError, Result};
use crate::integrators::StepDirection;
use crate::models::LorenzState;
use crate::spectral::SpectralField;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NormKind {
    L2,
    H1Semi,
    Euclidean,
}

impl NormKind {
    pub fn name(self) -> &'static str {
        match self {
            Self::L2 => "l2",
            Self::H1Semi => "h1",
            Self::Euclidean => "euclidean",
        }
    }
}

/// Error split into its observed and unobserved parts.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ErrorSample {
    pub iteration_time: f64,
    pub total: f64,
    pub observed_part: f64,
    pub unobserved_part: f64,
    pub norm_kind: NormKind,
}

impl ErrorSample {
    pub fn new(norm_kind: NormKind, observed: f64, unobserved: f64) -> Self {
        Self {
            iteration_time: 0.0,
            total: observed.hypot(unobserved),
            observed_part: observed,
            unobserved_part: unobserved,
            norm_kind,
        }
    }

    pub fn at(mut self, iteration_time: f64) -> Self {
        self.iteration_time = iteration_time;
        self
    }
}

/// `||P_M (u - v)||` and `||Q_M (u - v)||` in the requested norm.
pub fn error_decomposition<F: SpectralField>(
    u: &F,
    v: &F,
    m: usize,
    kind: NormKind,
) -> Result<ErrorSample> {
    if !u.same_grid(v) {
        return Err(BfnError::GridMismatch);
    }
    let d = u.sub(v);
    let pick = |f: &F| {
        let (l2, h1) = f.norms();
        match kind {
            NormKind::H1Semi => h1,
            _ => l2,
        }
    };
    let (p, q) = (
        pick(&d.project_low_modes(m)),
        pick(&d.complement_projection(m)),
    );
    Ok(ErrorSample {
        iteration_time: 0.0,
        total: pick(&d),
        observed_part: p,
        unobserved_part: q,
        norm_kind: kind,
    })
}

/// Euclidean error of a Lorenz state; the observed part covers the
/// components flagged in `observed`.
pub fn lorenz_error(u: &LorenzState, v: &LorenzState, observed: [bool; 3]) -> ErrorSample {
    let d = u.sub(*v).to_array();
    let (mut o, mut n) = (0.0, 0.0);
    for i in 0..3 {
        if observed[i] {
            o += d[i] * d[i];
        } else {
            n += d[i] * d[i];
        }
    }
    ErrorSample {
        iteration_time: 0.0,
        total: (o + n).sqrt(),
        observed_part: o.sqrt(),
        unobserved_part: n.sqrt(),
        norm_kind: NormKind::Euclidean,
    }
}

/// One row of the flattened error table.
#[derive(Clone, Debug, PartialEq)]
pub struct ReportRow {
    pub iteration_time: f64,
    pub leg: usize,
    pub direction: StepDirection,
    /// Physical time of the sample.
    pub time: f64,
    pub errors: Vec<ErrorSample>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundaryRow {
    /// `n` of `v~^n(0)`; 0 is the initial guess.
    pub cycle: usize,
    pub errors: Vec<ErrorSample>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub rows: Vec<ReportRow>,
    pub boundary: Vec<BoundaryRow>,
    /// Shell spectrum of the last recovered initial state.
    pub spectrum: Option<Vec<(usize, f64)>>,
    pub convention: TimeConvention,
    pub blowup_leg: Option<usize>,
}

/// Flatten an iteration history onto the iteration-time axis.
pub fn assemble_report<S>(history: &IterationHistory<S>) -> Report {
    let rows = history
        .legs
        .iter()
        .flat_map(|leg| {
            leg.samples.iter().map(move |r| ReportRow {
                iteration_time: r.errors.first().map_or(0.0, |e| e.iteration_time),
                leg: leg.index,
                direction: leg.direction,
                time: r.time,
                errors: r.errors.clone(),
            })
        })
        .collect();
    let boundary = history
        .boundary_errors
        .iter()
        .enumerate()
        .map(|(cycle, e)| BoundaryRow {
            cycle,
            errors: e.clone(),
        })
        .collect();
    Report {
        rows,
        boundary,
        spectrum: history.recovered_spectrum.clone(),
        convention: history.convention,
        blowup_leg: history.blowup.as_ref().map(|b| b.leg),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::{PeriodicGrid1D, SpectralField1D};
    use std::f64::consts::PI;

    fn grid() -> PeriodicGrid1D {
        PeriodicGrid1D::new(128, 2.0 * PI).unwrap()
    }

    #[test]
    fn identical_states_have_zero_error() {
        let u = SpectralField1D::from_fn(grid(), |x| x.sin() + (30.0 * x).cos());
        let e = error_decomposition(&u, &u, 16, NormKind::L2).unwrap();
        assert_eq!(
            (e.total, e.observed_part, e.unobserved_part),
            (0.0, 0.0, 0.0)
        );
    }

    #[test]
    fn high_mode_difference_is_unobserved() {
        let u = SpectralField1D::from_fn(grid(), |x| x.sin() + 0.05 * (30.0 * x).cos());
        let v = SpectralField1D::from_fn(grid(), f64::sin);
        let e = error_decomposition(&u, &v, 16, NormKind::L2).unwrap();
        let mode = (0.05f64 * 0.05 * PI).sqrt();
        assert!(e.observed_part < 1e-15);
        assert!((e.unobserved_part - mode).abs() < 1e-14);
        let h = error_decomposition(&u, &v, 16, NormKind::H1Semi).unwrap();
        assert!((h.unobserved_part - 30.0 * mode).abs() < 1e-12);
    }

    #[test]
    fn decomposition_is_orthogonal() {
        let u = SpectralField1D::from_fn(grid(), |x| (x.sin() * 3.0).exp());
        let v = SpectralField1D::from_fn(grid(), |x| (x.cos() * 2.0).tanh());
        for kind in [NormKind::L2, NormKind::H1Semi] {
            let e = error_decomposition(&u, &v, 5, kind).unwrap();
            let direct = match kind {
                NormKind::L2 => u.sub(&v).norms().0,
                _ => u.sub(&v).norms().1,
            };
            assert!((e.total - direct).abs() <= 1e-12 * direct);
            let recomposed = e.observed_part.hypot(e.unobserved_part);
            assert!((e.total - recomposed).abs() <= 1e-12 * e.total);
        }
        let other = SpectralField1D::zeros(PeriodicGrid1D::new(64, 2.0 * PI).unwrap());
        assert_eq!(
            error_decomposition(&u, &other, 4, NormKind::L2),
            Err(BfnError::GridMismatch)
        );
    }

    #[test]
    fn lorenz_split() {
        let u = LorenzState::new(1.0, 2.0, 3.0);
        let v = LorenzState::new(1.0, 0.0, 0.0);
        let e = lorenz_error(&u, &v, [true, true, false]);
        assert_eq!(e.observed_part, 2.0);
        assert_eq!(e.unobserved_part, 3.0);
        assert!((e.total - 13f64.sqrt()).abs() < 1e-15);
    }
}
