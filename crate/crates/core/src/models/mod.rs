//! Dynamical systems: right-hand sides, linear symbols and closed forms.

pub mod lorenz;
pub mod nse;
pub mod pde1d;

pub use lorenz::{lorenz_pathological, lorenz_rhs, LorenzParams, LorenzState};
pub use nse::{nse_vorticity_rhs, scale_forcing_to_grashof, NseModel};
pub use pde1d::{
    broadband_state, kdv_forcing, pde1d_linear_symbol, pde1d_nonlinear, Pde1DKind, Pde1DModel,
};
