//! Built-in scenarios, each a TOML config annotated with the behavior it
//! reproduces and the desk-scale substitutions it makes.

use crate::config::{parse_toml, ExperimentConfig, Violation};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Scenario {
    pub name: &'static str,
    pub reproduces: &'static str,
    pub substitutions: &'static [&'static str],
    pub text: &'static str,
}

impl Scenario {
    pub fn config(&self) -> Result<ExperimentConfig, Vec<Violation>> {
        parse_toml(self.text)
    }
}

macro_rules! scenario {
    ($name:literal, $what:literal, [$($sub:literal),* $(,)?]) => {
        Scenario {
            name: $name,
            reproduces: $what,
            substitutions: &[$($sub),*],
            text: include_str!(concat!("../scenarios/", $name, ".toml")),
        }
    };
}

pub const SCENARIOS: &[Scenario] = &[
    scenario!(
        "lorenz-pathological",
        "Lorenz XY nudging on the pathological family: boundary error frozen at |phi|",
        ["phi = 1e-5 (the acceptance suite sweeps 1, 1e-5, 1e-10)"]
    ),
    scenario!(
        "lorenz-xy-recovery",
        "Lorenz u1, u2 observed throughout: generic initial state recovered",
        []
    ),
    scenario!(
        "lorenz-full-windowed",
        "Lorenz with every component on a staggered window of full length (gamma = 1)",
        []
    ),
    scenario!(
        "lorenz-windowed-gamma",
        "Lorenz with staggered windows of half length: no recovery even at mu = 1e4",
        ["single gamma = 0.5; override observation.gamma to sweep"]
    ),
    scenario!(
        "heat-oracle",
        "Heat BFN: per-mode errors follow the closed-form recursion, unobserved error frozen",
        []
    ),
    scenario!(
        "transport-oracle",
        "Viscous linear transport BFN: same recursion as heat, phases cancel over a cycle",
        []
    ),
    scenario!(
        "burgers-zero-obs",
        "Burgers with nothing observed: the estimate never improves",
        ["T = 0.1 before shock formation"]
    ),
    scenario!(
        "burgers-full-M16",
        "Burgers state inside the observed band: recovered to single precision",
        ["truncated backward diffusion on 50 modes for nu > 0"]
    ),
    scenario!(
        "burgers-partial-M16",
        "Burgers with an unobserved mode-30 component: no frequencies beyond M develop",
        []
    ),
    scenario!(
        "burgers-twins-k17",
        "Sub-periodic Burgers solution invisible to low-mode observations (first twin)",
        [
            "amplitude 0.1",
            "nonzero low-mode guess so the run is not trivial"
        ]
    ),
    scenario!(
        "burgers-twins-k19",
        "Sub-periodic Burgers solution invisible to low-mode observations (second twin)",
        [
            "amplitude 0.1",
            "nonzero low-mode guess so the run is not trivial"
        ]
    ),
    scenario!(
        "kdv-viscous-standard",
        "Viscous KdV with the standard backward leg: error explodes on the first backward pass",
        [
            "broadband initial state (kmax 85, decay 20, L2 norm 0.75)",
            "divergence flagged at growth 1e10"
        ]
    ),
    scenario!(
        "kdv-viscous-stabilized",
        "Viscous KdV with diffusive and Voigt backward legs: bounded error with a floor",
        [
            "broadband initial state (kmax 85, decay 20, L2 norm 0.75)",
            "5 cycles"
        ]
    ),
    scenario!(
        "kdv-damped",
        "Damped KdV with damping reversed backward: bounded error with a floor",
        [
            "broadband initial state (kmax 85, decay 20, L2 norm 0.75)",
            "5 cycles"
        ]
    ),
    scenario!(
        "nse-variant-comparison",
        "2D NSE: observed and unobserved errors for every backward variant",
        [
            "N = 128^2 instead of the full resolution",
            "G = 5e4 with a synthetic annulus forcing",
            "T = 0.05, 3 cycles",
            "synthetic initial vorticity (cutoff 40, energy 0.5)"
        ]
    ),
    scenario!(
        "nse-taylor-green",
        "Decaying Taylor-Green vortex, fully inside the observed band: fast recovery",
        []
    ),
];

pub fn find(name: &str) -> Option<&'static Scenario> {
    SCENARIOS.iter().find(|s| s.name == name)
}
