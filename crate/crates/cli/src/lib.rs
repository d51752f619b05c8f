//! Experiment configs, the scenario registry and the batch runner behind
//! the `bfn` binary.

pub mod build;
pub mod config;
pub mod oracle;
pub mod run;
pub mod scenarios;
pub mod schema;

pub use build::{check, Experiment};
pub use config::{apply_overrides, parse_config, parse_toml, ExperimentConfig, Violation};
pub use run::{run_experiment, Provenance, RunOutcome};
pub use scenarios::{find, Scenario, SCENARIOS};

/// Process exit codes.
pub mod exit {
    pub const OK: u8 = 0;
    /// Reserved by the argument parser for usage errors.
    pub const USAGE: u8 = 2;
    pub const INVALID_CONFIG: u8 = 3;
    pub const BLOW_UP: u8 = 4;
    pub const ENGINE_ERROR: u8 = 5;
    pub const IO_ERROR: u8 = 6;
    pub const ORACLE_MISMATCH: u8 = 7;
}
