use crate::error::{BfnError, Result};
use crate::integrators::TimeGrid;

/// One observed Lorenz component, optionally restricted to its staggered
/// window `[(i - 1)/3 T, ((i - 1) + gamma)/3 T)` (`i` one-based).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ComponentWindow {
    /// Zero-based component index.
    pub component: usize,
    /// `None`: observed on all of `[0, T]`.
    pub gamma: Option<f64>,
}

impl ComponentWindow {
    pub fn always(component: usize) -> Self {
        Self {
            component,
            gamma: None,
        }
    }

    pub fn staggered(component: usize, gamma: f64) -> Self {
        Self {
            component,
            gamma: Some(gamma),
        }
    }

    /// Whether time `t` of a window of length `span` is observed.
    pub fn contains(&self, t: f64, span: f64) -> bool {
        match self.gamma {
            None => true,
            Some(g) => {
                let start = self.component as f64 / 3.0 * span;
                let end = (self.component as f64 + g) / 3.0 * span;
                // relative slack so lattice points landing on a boundary
                // are classified consistently
                let eps = 1e-12 * span;
                t >= start - eps && t < end - eps
            }
        }
    }
}

/// Observation operator: either low Fourier modes or Lorenz component masks.
#[derive(Clone, Debug, PartialEq)]
pub enum ObservationMask {
    /// `P_M`: modes with `|k| <= m`.
    LowModes {
        m: usize,
    },
    Components(Vec<ComponentWindow>),
}

impl ObservationMask {
    pub fn low_modes(m: usize) -> Self {
        Self::LowModes { m }
    }

    /// Components observed for the whole window.
    pub fn components(idx: &[usize]) -> Self {
        Self::Components(idx.iter().map(|&i| ComponentWindow::always(i)).collect())
    }

    /// All three components on staggered windows of relative length `gamma`.
    pub fn staggered(gamma: f64) -> Self {
        Self::Components(
            (0..3)
                .map(|i| ComponentWindow::staggered(i, gamma))
                .collect(),
        )
    }

    pub fn validate(&self) -> Result<()> {
        if let Self::Components(ws) = self {
            let mut seen = [false; 3];
            for w in ws {
                if w.component > 2 {
                    return Err(BfnError::InvalidParameter(format!(
                        "component index {} out of range",
                        w.component
                    )));
                }
                if std::mem::replace(&mut seen[w.component], true) {
                    return Err(BfnError::InvalidParameter(format!(
                        "component {} listed twice",
                        w.component
                    )));
                }
                if let Some(g) = w.gamma {
                    if !(0.0..=1.0).contains(&g) {
                        return Err(BfnError::InvalidParameter(format!(
                            "gamma_obs must lie in [0, 1], got {g}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn mode_cutoff(&self) -> Option<usize> {
        match self {
            Self::LowModes { m } => Some(*m),
            Self::Components(_) => None,
        }
    }

    /// Components that are observed at some time.
    pub fn observed_components(&self) -> [bool; 3] {
        let mut out = [false; 3];
        if let Self::Components(ws) = self {
            for w in ws {
                out[w.component] = w.gamma.is_none_or(|g| g > 0.0);
            }
        }
        out
    }
}

/// Masked observations on every lattice point `0..=n_steps` of a window.
#[derive(Clone, Debug, PartialEq)]
pub struct ObservationRecord<O> {
    time_grid: TimeGrid,
    values: Vec<O>,
}

impl<O> ObservationRecord<O> {
    pub fn new(time_grid: TimeGrid, values: Vec<O>) -> Result<Self> {
        if values.len() != time_grid.n_steps() + 1 {
            return Err(BfnError::InvalidTimeGrid(format!(
                "{} observations for {} steps",
                values.len(),
                time_grid.n_steps()
            )));
        }
        Ok(Self { time_grid, values })
    }

    pub fn time_grid(&self) -> &TimeGrid {
        &self.time_grid
    }

    pub fn times(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.values.len()).map(|j| self.time_grid.time(j))
    }

    pub fn values(&self) -> &[O] {
        &self.values
    }

    /// Observation at lattice point `j`.
    pub fn at(&self, j: usize) -> &O {
        &self.values[j]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn staggered_windows() {
        let half = ObservationMask::staggered(0.5);
        let ObservationMask::Components(ws) = &half else {
            unreachable!()
        };
        // [0, 1/6), [2/6, 3/6), [4/6, 5/6)
        assert!(ws[0].contains(0.0, 1.0));
        assert!(ws[0].contains(0.16, 1.0));
        assert!(!ws[0].contains(1.0 / 6.0, 1.0));
        assert!(!ws[1].contains(0.3, 1.0));
        assert!(ws[1].contains(2.0 / 6.0, 1.0));
        assert!(ws[2].contains(0.7, 1.0));
        assert!(!ws[2].contains(5.0 / 6.0, 1.0));
        // full fraction tiles [0, T)
        let full = ComponentWindow::staggered(2, 1.0);
        assert!(full.contains(0.999, 1.0));
        assert!(!full.contains(1.0, 1.0));
        assert!(ComponentWindow::always(1).contains(1.0, 1.0));
    }

    #[test]
    fn validation() {
        assert!(ObservationMask::staggered(1.5).validate().is_err());
        assert!(ObservationMask::components(&[0, 0]).validate().is_err());
        assert!(ObservationMask::components(&[3]).validate().is_err());
        assert!(ObservationMask::components(&[0, 1]).validate().is_ok());
        assert_eq!(
            ObservationMask::components(&[0, 1]).observed_components(),
            [true, true, false]
        );
        assert_eq!(
            ObservationMask::staggered(0.0).observed_components(),
            [false; 3]
        );
    }

    #[test]
    fn record_length_checked() {
        let g = TimeGrid::window(1.0, 0.25).unwrap();
        assert!(ObservationRecord::new(g, vec![0.0; 4]).is_err());
        let r = ObservationRecord::new(g, vec![0.0; 5]).unwrap();
        assert_eq!(
            r.times().collect::<Vec<_>>(),
            vec![0.0, 0.25, 0.5, 0.75, 1.0]
        );
    }
}
