//! Back-and-forth nudging (BFN) for initial-state recovery.
//!
//! The crate bundles spectral building blocks, the model zoo (Lorenz-63,
//! 1D heat/transport/Burgers/KdV, 2D Navier-Stokes), integrating-factor
//! time steppers, the BFN engine with its stabilized backward variants, and
//! error diagnostics.

pub mod diagnostics;
pub mod engine;
pub mod error;
pub mod integrators;
pub mod models;
pub mod spectral;

pub use error::{BfnError, Result};
pub use spectral::{
    PeriodicGrid1D, PeriodicGrid2D, SpectralField, SpectralField1D, SpectralField2D,
};
