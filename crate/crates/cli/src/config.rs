//! Experiment definitions in TOML, with validation that reports every
//! violation at once.

use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub name: String,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub description: String,
    pub model: ModelSpec,
    /// Required for spectral models, absent for Lorenz.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<GridSpec>,
    pub time: TimeSpec,
    pub observation: ObservationSpec,
    pub bfn: BfnSpec,
    /// Initial state of the reference trajectory.
    pub reference: InitialSpec,
    #[serde(default)]
    pub output: OutputSpec,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum ModelSpec {
    Lorenz {
        #[serde(default = "default_sigma")]
        sigma: f64,
        #[serde(default = "default_rho")]
        rho: f64,
        #[serde(default = "default_b")]
        b: f64,
    },
    Heat {
        nu: f64,
    },
    Transport {
        #[serde(default)]
        nu: f64,
        a: f64,
    },
    Burgers {
        #[serde(default)]
        nu: f64,
    },
    KdvDamped {
        gamma: f64,
        /// Amplitude `f0` of the forcing `f0 e^{cos(2 pi x / L)}`; 0 disables it.
        #[serde(default)]
        forcing: f64,
    },
    KdvViscous {
        nu: f64,
        #[serde(default)]
        forcing: f64,
    },
    Nse {
        nu: f64,
        /// Grashof number of the default forcing; absent means unforced.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        grashof: Option<f64>,
    },
}

fn default_sigma() -> f64 {
    10.0
}

fn default_rho() -> f64 {
    28.0
}

fn default_b() -> f64 {
    8.0 / 3.0
}

/// Which solver family a model belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Lorenz,
    Line,
    Plane,
}

impl ModelSpec {
    pub fn family(&self) -> Family {
        match self {
            Self::Lorenz { .. } => Family::Lorenz,
            Self::Nse { .. } => Family::Plane,
            _ => Family::Line,
        }
    }

    pub fn tag(&self) -> &'static str {
        match self {
            Self::Lorenz { .. } => "lorenz",
            Self::Heat { .. } => "heat",
            Self::Transport { .. } => "transport",
            Self::Burgers { .. } => "burgers",
            Self::KdvDamped { .. } => "kdv-damped",
            Self::KdvViscous { .. } => "kdv-viscous",
            Self::Nse { .. } => "nse",
        }
    }

    pub fn is_kdv(&self) -> bool {
        matches!(self, Self::KdvDamped { .. } | Self::KdvViscous { .. })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    /// Points per direction.
    pub n: usize,
    /// Period (side length in 2D); defaults to 2 pi.
    #[serde(default = "default_length")]
    pub length: f64,
}

fn default_length() -> f64 {
    2.0 * PI
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TimeSpec {
    /// Window length.
    pub t: f64,
    pub dt: f64,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObservationSpec {
    /// Spectral observation of modes `|k| <= m`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    /// Observed Lorenz components (0-based).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub components: Option<Vec<usize>>,
    /// Window fraction: component `i` is observed on
    /// `[i T / 3, (i + gamma) T / 3)`. Absent means the whole window.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma: Option<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum VariantName {
    Standard,
    Diffusive,
    Damped,
    Voigt,
    FilteredDiffusive,
    FilteredVoigt,
    TruncatedDiffusion,
}

impl VariantName {
    pub fn tag(self) -> &'static str {
        match self {
            Self::Standard => "standard",
            Self::Diffusive => "diffusive",
            Self::Damped => "damped",
            Self::Voigt => "voigt",
            Self::FilteredDiffusive => "filtered-diffusive",
            Self::FilteredVoigt => "filtered-voigt",
            Self::TruncatedDiffusion => "truncated-diffusion",
        }
    }

    pub fn needs_alpha(self) -> bool {
        matches!(self, Self::Voigt | Self::FilteredVoigt)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SchemeName {
    Ifrk4,
    IfEuler,
}

impl SchemeName {
    pub fn tag(self) -> &'static str {
        match self {
            Self::Ifrk4 => "ifrk4",
            Self::IfEuler => "if-euler",
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConventionName {
    #[default]
    PerLeg,
    PerCycle,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BfnSpec {
    pub mu: f64,
    /// Backward gain; defaults to `mu`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu_back: Option<f64>,
    pub iterations: usize,
    /// Backward variants; each one is a separate run on the same reference.
    #[serde(default = "default_variants")]
    pub variants: Vec<VariantName>,
    /// Voigt length scale.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    /// Cutoff of truncated backward diffusion.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub truncation: Option<usize>,
    /// Time stepper for spectral models; IFRK4 in 1D and IF-Euler in 2D by default.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scheme: Option<SchemeName>,
    #[serde(default)]
    pub convention: ConventionName,
    /// Flag a leg whose error grows by more than this factor.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub divergence_growth: Option<f64>,
    #[serde(default)]
    pub guess: InitialSpec,
}

fn default_variants() -> Vec<VariantName> {
    vec![VariantName::Standard]
}

impl BfnSpec {
    pub fn mu_back(&self) -> f64 {
        self.mu_back.unwrap_or(self.mu)
    }
}

/// Named initial states.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum InitialSpec {
    #[default]
    Zero,
    /// Lorenz state.
    Point { u: [f64; 3] },
    /// `sum_k c_k cos(2 pi k x / L) + s_k sin(2 pi k x / L)`.
    Fourier { terms: Vec<FourierTerm> },
    /// Coefficients `e^{i phase_step k} / k` for `1 <= k <= degree`.
    TrigPoly { degree: usize, phase_step: f64 },
    /// Broadband mean-free state with `|u_k| ~ e^{-k/decay}/k` up to `kmax`.
    Broadband { kmax: usize, decay: f64, norm: f64 },
    /// Synthetic vorticity with `|w_k| ~ 1/|k|` up to `kmax`.
    NseSynthetic { kmax: f64, energy: f64 },
    /// `w = 2 cos x cos y` scaled by `amplitude`.
    TaylorGreen {
        #[serde(default = "unit")]
        amplitude: f64,
    },
}

fn unit() -> f64 {
    1.0
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FourierTerm {
    pub k: usize,
    #[serde(default)]
    pub cos: f64,
    #[serde(default)]
    pub sin: f64,
}

impl InitialSpec {
    pub fn tag(&self) -> &'static str {
        match self {
            Self::Zero => "zero",
            Self::Point { .. } => "point",
            Self::Fourier { .. } => "fourier",
            Self::TrigPoly { .. } => "trig-poly",
            Self::Broadband { .. } => "broadband",
            Self::NseSynthetic { .. } => "nse-synthetic",
            Self::TaylorGreen { .. } => "taylor-green",
        }
    }

    fn fits(&self, family: Family) -> bool {
        match self {
            Self::Zero => true,
            Self::Point { .. } => family == Family::Lorenz,
            Self::Fourier { .. } | Self::TrigPoly { .. } | Self::Broadband { .. } => {
                family == Family::Line
            }
            Self::NseSynthetic { .. } | Self::TaylorGreen { .. } => family == Family::Plane,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    /// Steps between error samples; defaults to a hundredth of the window
    /// when that divides evenly, else one sample per leg.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub record_every: Option<usize>,
    /// Steps between stored truth states; defaults to `record_every`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub decimation: Option<usize>,
}

/// A single problem with a config, tied to the offending field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub field: String,
    pub message: String,
}

impl Violation {
    pub fn new(field: impl Into<String>, message: impl Into<String>) -> Self {
        Self {
            field: field.into(),
            message: message.into(),
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.field, self.message)
    }
}

/// Resolved sampling parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Sampling {
    pub steps: usize,
    pub record_every: usize,
    pub decimation: usize,
}

impl ExperimentConfig {
    /// Steps per leg, or `None` when `t / dt` is not a positive integer.
    pub fn steps(&self) -> Option<usize> {
        let TimeSpec { t, dt } = self.time;
        if !(t.is_finite() && dt.is_finite() && t > 0.0 && dt > 0.0) {
            return None;
        }
        let r = t / dt;
        let n = r.round();
        ((r - n).abs() <= 1e-9 * n.max(1.0) && n >= 1.0).then_some(n as usize)
    }

    pub fn sampling(&self) -> Option<Sampling> {
        let steps = self.steps()?;
        let record_every =
            self.output
                .record_every
                .unwrap_or(if steps % 100 == 0 { steps / 100 } else { steps });
        let decimation = self.output.decimation.unwrap_or(record_every);
        Some(Sampling {
            steps,
            record_every,
            decimation,
        })
    }

    pub fn scheme(&self) -> SchemeName {
        self.bfn.scheme.unwrap_or(match self.model.family() {
            Family::Plane => SchemeName::IfEuler,
            _ => SchemeName::Ifrk4,
        })
    }

    /// Field-level checks that need no model construction.
    pub fn violations(&self) -> Vec<Violation> {
        let mut v = Vec::new();
        let mut bad = |field: &str, msg: String| v.push(Violation::new(field, msg));
        let family = self.model.family();

        if self.name.trim().is_empty() {
            bad("name", "must not be empty".into());
        }
        let nonneg = |x: f64| x.is_finite() && x >= 0.0;
        let pos = |x: f64| x.is_finite() && x > 0.0;
        match &self.model {
            ModelSpec::Lorenz { sigma, rho, b } => {
                for (f, x) in [("model.sigma", sigma), ("model.rho", rho), ("model.b", b)] {
                    if !pos(*x) {
                        bad(f, format!("must be positive, got {x}"));
                    }
                }
            }
            ModelSpec::Heat { nu } => {
                if !pos(*nu) {
                    bad("model.nu", format!("heat needs nu > 0, got {nu}"));
                }
            }
            ModelSpec::Transport { nu, a } => {
                if !nonneg(*nu) {
                    bad("model.nu", format!("must be non-negative, got {nu}"));
                }
                if !a.is_finite() {
                    bad("model.a", format!("must be finite, got {a}"));
                }
            }
            ModelSpec::Burgers { nu } => {
                if !nonneg(*nu) {
                    bad("model.nu", format!("must be non-negative, got {nu}"));
                }
            }
            ModelSpec::KdvDamped { gamma, forcing } => {
                if !pos(*gamma) {
                    bad("model.gamma", format!("must be positive, got {gamma}"));
                }
                if !forcing.is_finite() {
                    bad("model.forcing", format!("must be finite, got {forcing}"));
                }
            }
            ModelSpec::KdvViscous { nu, forcing } => {
                if !pos(*nu) {
                    bad("model.nu", format!("must be positive, got {nu}"));
                }
                if !forcing.is_finite() {
                    bad("model.forcing", format!("must be finite, got {forcing}"));
                }
            }
            ModelSpec::Nse { nu, grashof } => {
                if !pos(*nu) {
                    bad("model.nu", format!("must be positive, got {nu}"));
                }
                if let Some(g) = grashof {
                    if !pos(*g) {
                        bad("model.grashof", format!("must be positive, got {g}"));
                    }
                }
            }
        }

        match (&self.grid, family) {
            (Some(_), Family::Lorenz) => bad("grid", "Lorenz has no spatial grid".into()),
            (None, Family::Line | Family::Plane) => {
                bad("grid", "required for spectral models".into())
            }
            (Some(g), _) => {
                if g.n < 8 || g.n % 2 != 0 {
                    bad(
                        "grid.n",
                        format!("must be an even number >= 8, got {}", g.n),
                    );
                }
                if !pos(g.length) {
                    bad("grid.length", format!("must be positive, got {}", g.length));
                }
            }
            (None, Family::Lorenz) => {}
        }
        let n = self.grid.as_ref().map_or(0, |g| g.n);

        if !pos(self.time.t) {
            bad("time.t", format!("must be positive, got {}", self.time.t));
        }
        if !pos(self.time.dt) {
            bad("time.dt", format!("must be positive, got {}", self.time.dt));
        } else if pos(self.time.t) && self.steps().is_none() {
            bad(
                "time.dt",
                format!("{} does not divide t = {}", self.time.dt, self.time.t),
            );
        }

        let obs = &self.observation;
        match family {
            Family::Lorenz => {
                if obs.m.is_some() {
                    bad(
                        "observation.m",
                        "Lorenz observes components, not modes".into(),
                    );
                }
                match &obs.components {
                    None => bad("observation.components", "required for Lorenz".into()),
                    Some(c) => {
                        if c.is_empty() {
                            bad(
                                "observation.components",
                                "must list at least one component".into(),
                            );
                        }
                        let mut seen = [false; 3];
                        for &i in c {
                            if i > 2 {
                                bad(
                                    "observation.components",
                                    format!("index {i} out of range 0..=2"),
                                );
                            } else if std::mem::replace(&mut seen[i], true) {
                                bad("observation.components", format!("index {i} listed twice"));
                            }
                        }
                    }
                }
                if let Some(g) = obs.gamma {
                    if !(g.is_finite() && (0.0..=1.0).contains(&g)) {
                        bad("observation.gamma", format!("must lie in [0, 1], got {g}"));
                    }
                }
            }
            Family::Line | Family::Plane => {
                if obs.components.is_some() {
                    bad(
                        "observation.components",
                        "spectral models observe modes".into(),
                    );
                }
                if obs.gamma.is_some() {
                    bad(
                        "observation.gamma",
                        "windows apply to Lorenz components only".into(),
                    );
                }
                match obs.m {
                    None => bad("observation.m", "required for spectral models".into()),
                    Some(m) if n > 0 && m > n / 2 => bad(
                        "observation.m",
                        format!("{m} exceeds the Nyquist index {}", n / 2),
                    ),
                    _ => {}
                }
            }
        }

        let b = &self.bfn;
        if !nonneg(b.mu) {
            bad("bfn.mu", format!("must be non-negative, got {}", b.mu));
        }
        if let Some(mb) = b.mu_back {
            if !nonneg(mb) {
                bad("bfn.mu_back", format!("must be non-negative, got {mb}"));
            }
        }
        if b.iterations == 0 {
            bad("bfn.iterations", "must be at least 1".into());
        }
        if b.variants.is_empty() {
            bad("bfn.variants", "must list at least one variant".into());
        }
        for (i, w) in b.variants.iter().enumerate() {
            if b.variants[..i].contains(w) {
                bad("bfn.variants", format!("{} listed twice", w.tag()));
            }
        }
        let needs_alpha = b.variants.iter().any(|w| w.needs_alpha());
        match b.alpha {
            None if needs_alpha => bad("bfn.alpha", "required by the Voigt variants".into()),
            Some(a) if !nonneg(a) => bad("bfn.alpha", format!("must be non-negative, got {a}")),
            _ => {}
        }
        if b.truncation == Some(0) {
            bad("bfn.truncation", "must be at least 1".into());
        }
        if family == Family::Lorenz {
            if b.variants.iter().any(|&w| w != VariantName::Standard) {
                bad(
                    "bfn.variants",
                    "Lorenz supports only the standard backward leg".into(),
                );
            }
            if b.scheme.is_some() {
                bad("bfn.scheme", "Lorenz always uses RK4".into());
            }
        }
        if let Some(g) = b.divergence_growth {
            if !(g.is_finite() && g > 1.0) {
                bad("bfn.divergence_growth", format!("must exceed 1, got {g}"));
            }
        }

        for (field, spec) in [("reference", &self.reference), ("bfn.guess", &b.guess)] {
            if !spec.fits(family) {
                bad(
                    &format!("{field}.kind"),
                    format!("{} does not apply to {}", spec.tag(), self.model.tag()),
                );
                continue;
            }
            match spec {
                InitialSpec::Point { u } if u.iter().any(|x| !x.is_finite()) => {
                    bad(&format!("{field}.u"), "must be finite".into());
                }
                InitialSpec::Fourier { terms } => {
                    for t in terms {
                        if n > 0 && t.k > n / 2 {
                            bad(
                                &format!("{field}.terms"),
                                format!("mode {} exceeds the Nyquist index {}", t.k, n / 2),
                            );
                        }
                        if t.k == 0 && self.model.is_kdv() {
                            bad(
                                &format!("{field}.terms"),
                                "KdV states must be mean-free".into(),
                            );
                        }
                        if !(t.cos.is_finite() && t.sin.is_finite()) {
                            bad(
                                &format!("{field}.terms"),
                                "amplitudes must be finite".into(),
                            );
                        }
                    }
                }
                InitialSpec::TrigPoly { degree, phase_step } => {
                    if n > 0 && *degree > n / 2 {
                        bad(
                            &format!("{field}.degree"),
                            format!("{degree} exceeds the Nyquist index {}", n / 2),
                        );
                    }
                    if !phase_step.is_finite() {
                        bad(&format!("{field}.phase_step"), "must be finite".into());
                    }
                }
                InitialSpec::Broadband { kmax, decay, norm } => {
                    if *kmax == 0 || (n > 0 && *kmax > n / 3) {
                        bad(
                            &format!("{field}.kmax"),
                            format!("must lie in 1..={}, got {kmax}", n / 3),
                        );
                    }
                    if !pos(*decay) {
                        bad(
                            &format!("{field}.decay"),
                            format!("must be positive, got {decay}"),
                        );
                    }
                    if !nonneg(*norm) {
                        bad(
                            &format!("{field}.norm"),
                            format!("must be non-negative, got {norm}"),
                        );
                    }
                }
                InitialSpec::NseSynthetic { kmax, energy } => {
                    if !pos(*kmax) {
                        bad(
                            &format!("{field}.kmax"),
                            format!("must be positive, got {kmax}"),
                        );
                    }
                    if !nonneg(*energy) {
                        bad(
                            &format!("{field}.energy"),
                            format!("must be non-negative, got {energy}"),
                        );
                    }
                }
                InitialSpec::TaylorGreen { amplitude } if !amplitude.is_finite() => {
                    bad(&format!("{field}.amplitude"), "must be finite".into());
                }
                _ => {}
            }
        }

        if let Some(s) = self.sampling() {
            if s.record_every == 0 || s.steps % s.record_every != 0 {
                bad(
                    "output.record_every",
                    format!(
                        "must divide the {} steps per leg, got {}",
                        s.steps, s.record_every
                    ),
                );
            }
            if s.decimation == 0 || s.record_every % s.decimation.max(1) != 0 {
                bad(
                    "output.decimation",
                    format!(
                        "must divide record_every = {}, got {}",
                        s.record_every, s.decimation
                    ),
                );
            }
        }
        v
    }
}

/// Parse TOML text into a config. Key-level problems are all reported;
/// a value of the wrong type stops at the first one.
pub fn parse_toml(text: &str) -> Result<ExperimentConfig, Vec<Violation>> {
    let table: toml::Table = toml::from_str(text).map_err(|e| vec![located(text, &e)])?;
    let v = crate::schema::check(&table);
    if !v.is_empty() {
        return Err(v);
    }
    toml::from_str(text).map_err(|e| vec![located(text, &e)])
}

/// Name the key on the line an error points at, qualified by its section.
fn located(text: &str, e: &toml::de::Error) -> Violation {
    let msg = e.message().trim().to_string();
    let Some(span) = e.span() else {
        return Violation::new("config", msg);
    };
    let before = &text[..span.start.min(text.len())];
    let line_no = before.matches('\n').count() + 1;
    let line = text.lines().nth(line_no - 1).unwrap_or("");
    let section = before
        .lines()
        .rev()
        .map(str::trim)
        .find(|l| l.starts_with('[') && l.ends_with(']'))
        .map(|l| l.trim_matches(|c| c == '[' || c == ']').to_string());
    let key = line.split_once('=').map(|(k, _)| k.trim().to_string());
    let field = match (section, key) {
        (Some(s), Some(k)) => format!("{s}.{k}"),
        (None, Some(k)) => k,
        _ => format!("line {line_no}"),
    };
    Violation::new(field, format!("{msg} (line {line_no})"))
}

/// Parse and validate, collecting every violation.
pub fn parse_config(text: &str) -> Result<ExperimentConfig, Vec<Violation>> {
    let cfg = parse_toml(text)?;
    crate::build::check(&cfg)?;
    Ok(cfg)
}

/// Apply `key.path=value` overrides to TOML text. Values are read as TOML
/// literals, falling back to bare strings.
pub fn apply_overrides(text: &str, overrides: &[String]) -> Result<String, Vec<Violation>> {
    if overrides.is_empty() {
        return Ok(text.to_string());
    }
    let mut root: toml::Table = toml::from_str(text).map_err(|e| vec![located(text, &e)])?;
    let mut errors = Vec::new();
    for o in overrides {
        let Some((path, raw)) = o.split_once('=') else {
            errors.push(Violation::new(
                "--override",
                format!("expected key=value, got {o:?}"),
            ));
            continue;
        };
        let path = path.trim();
        let value = toml::from_str::<toml::Table>(&format!("v = {}", raw.trim()))
            .ok()
            .and_then(|mut t| t.remove("v"))
            .unwrap_or_else(|| toml::Value::String(raw.trim().to_string()));
        let keys: Vec<&str> = path.split('.').collect();
        if let Err(k) = set_path(&mut root, &keys, value) {
            errors.push(Violation::new(path, format!("{k} is not a table")));
        }
    }
    if errors.is_empty() {
        Ok(toml::to_string(&root).expect("a parsed table serializes"))
    } else {
        Err(errors)
    }
}

/// Insert `value` at `keys`, creating intermediate tables. Returns the key
/// that names a non-table on the way.
fn set_path(table: &mut toml::Table, keys: &[&str], value: toml::Value) -> Result<(), String> {
    let [first, rest @ ..] = keys else {
        return Ok(());
    };
    if rest.is_empty() {
        table.insert(first.to_string(), value);
        return Ok(());
    }
    let entry = table
        .entry(first.to_string())
        .or_insert_with(|| toml::Value::Table(toml::Table::new()));
    match entry.as_table_mut() {
        Some(t) => set_path(t, rest, value),
        None => Err(first.to_string()),
    }
}

impl ExperimentConfig {
    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("configs serialize")
    }
}
