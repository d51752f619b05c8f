//! Run experiments and persist their results.

use std::fmt::Write as _;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use bfn_core::diagnostics::{assemble_report, ErrorSample};
use bfn_core::engine::{
    generate_reference, run_bfn, AssimilationSystem, BlowUpKind, IterationHistory,
};
use bfn_core::models::LorenzState;
use bfn_core::{SpectralField1D, SpectralField2D};
use serde::Serialize;

use crate::build::{Experiment, Setup};
use crate::config::{ExperimentConfig, VariantName};
use crate::scenarios::Scenario;

/// Fixed 17-significant-digit formatting for every table entry.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// How one variant's run ended.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CaseStatus {
    Completed,
    BlowUp,
    Failed,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CaseSummary {
    pub variant: String,
    pub status: CaseStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub blowup_leg: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub blowup_step: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub blowup_kind: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    /// Hex digest of every state visited.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub digest: Option<String>,
    pub cycles_completed: usize,
    /// Error of the last recovered initial state in the first norm.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub final_error: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub final_observed: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub final_unobserved: Option<f64>,
}

#[derive(Clone, Debug, Serialize)]
struct Resolved {
    family: String,
    steps_per_leg: usize,
    record_every: usize,
    decimation: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    scheme: Option<String>,
    mu_back: f64,
    system: String,
}

#[derive(Clone, Debug, Serialize)]
struct ScenarioInfo {
    name: String,
    reproduces: String,
    substitutions: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
struct Manifest {
    tool: String,
    version: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    scenario: Option<ScenarioInfo>,
    overrides: Vec<String>,
    files: Vec<String>,
    resolved: Resolved,
    cases: Vec<CaseSummary>,
    config: ExperimentConfig,
}

/// Result of one experiment.
#[derive(Clone, Debug)]
pub struct RunOutcome {
    pub name: String,
    pub out_dir: PathBuf,
    pub cases: Vec<CaseSummary>,
}

impl RunOutcome {
    pub fn blew_up(&self) -> bool {
        self.cases.iter().any(|c| c.status == CaseStatus::BlowUp)
    }

    pub fn failed(&self) -> bool {
        self.cases.iter().any(|c| c.status == CaseStatus::Failed)
    }
}

/// Where the experiment came from, echoed into the manifest.
#[derive(Clone, Debug, Default)]
pub struct Provenance<'a> {
    pub scenario: Option<&'a Scenario>,
    pub overrides: &'a [String],
}

/// Recovered-state output that differs per state type.
pub trait StateTable {
    /// Header columns after `variant`.
    fn header() -> &'static str;
    fn rows(&self) -> Vec<String>;
}

impl StateTable for LorenzState {
    fn header() -> &'static str {
        "component\tvalue"
    }

    fn rows(&self) -> Vec<String> {
        self.to_array()
            .iter()
            .enumerate()
            .map(|(i, v)| format!("{i}\t{}", fmt_f64(*v)))
            .collect()
    }
}

impl StateTable for SpectralField1D {
    fn header() -> &'static str {
        "x\tvalue"
    }

    fn rows(&self) -> Vec<String> {
        let g = self.grid();
        self.to_physical()
            .iter()
            .enumerate()
            .map(|(j, v)| format!("{}\t{}", fmt_f64(g.x(j)), fmt_f64(*v)))
            .collect()
    }
}

impl StateTable for SpectralField2D {
    fn header() -> &'static str {
        "x\ty\tvalue"
    }

    fn rows(&self) -> Vec<String> {
        let g = self.grid();
        let n = g.n_points();
        self.to_physical()
            .iter()
            .enumerate()
            .map(|(idx, v)| {
                let (i, j) = (idx % n, idx / n);
                format!("{}\t{}\t{}", fmt_f64(g.x(i)), fmt_f64(g.x(j)), fmt_f64(*v))
            })
            .collect()
    }
}

fn error_cols(e: &ErrorSample) -> String {
    format!(
        "{}\t{}\t{}\t{}",
        e.norm_kind.name(),
        fmt_f64(e.total),
        fmt_f64(e.observed_part),
        fmt_f64(e.unobserved_part)
    )
}

struct Tables {
    errors: String,
    summary: String,
    recovered: String,
    spectrum: String,
    has_spectrum: bool,
}

impl Tables {
    fn new<T: StateTable>() -> Self {
        Self {
            errors:
                "variant\titeration_time\tleg\tdirection\ttime\tnorm\ttotal\tobserved\tunobserved\n"
                    .into(),
            summary: "variant\tcycle\tnorm\ttotal\tobserved\tunobserved\n".into(),
            recovered: format!("variant\t{}\n", T::header()),
            spectrum: "variant\tshell\tenergy\n".into(),
            has_spectrum: false,
        }
    }

    fn add<T: StateTable>(&mut self, variant: &str, h: &IterationHistory<T>) {
        let rep = assemble_report(h);
        for row in &rep.rows {
            for e in &row.errors {
                let _ = writeln!(
                    self.errors,
                    "{variant}\t{}\t{}\t{}\t{}\t{}",
                    fmt_f64(row.iteration_time),
                    row.leg,
                    row.direction.name(),
                    fmt_f64(row.time),
                    error_cols(e)
                );
            }
        }
        for b in &rep.boundary {
            for e in &b.errors {
                let _ = writeln!(self.summary, "{variant}\t{}\t{}", b.cycle, error_cols(e));
            }
        }
        for r in h.recovered().rows() {
            let _ = writeln!(self.recovered, "{variant}\t{r}");
        }
        if let Some(spec) = &rep.spectrum {
            self.has_spectrum = true;
            for (shell, e) in spec {
                let _ = writeln!(self.spectrum, "{variant}\t{shell}\t{}", fmt_f64(*e));
            }
        }
    }
}

fn summarize<T>(variant: VariantName, h: &IterationHistory<T>) -> CaseSummary {
    let last = h.boundary_errors.last().and_then(|e| e.first()).copied();
    let (status, kind) = match &h.blowup {
        None => (CaseStatus::Completed, None),
        Some(b) => (
            CaseStatus::BlowUp,
            Some(match b.kind {
                BlowUpKind::NonFinite => "non-finite".to_string(),
                BlowUpKind::Divergence { growth } => format!("divergence (growth {growth:e})"),
            }),
        ),
    };
    CaseSummary {
        variant: variant.tag().into(),
        status,
        blowup_leg: h.blowup.map(|b| b.leg),
        blowup_step: h.blowup.map(|b| b.step),
        blowup_kind: kind,
        error: None,
        digest: h.digest.map(|d| format!("{d:016x}")),
        cycles_completed: h.boundary_states.len().saturating_sub(1),
        final_error: last.map(|e| e.total),
        final_observed: last.map(|e| e.observed_part),
        final_unobserved: last.map(|e| e.unobserved_part),
    }
}

fn failed_case(variant: VariantName, e: impl std::fmt::Display) -> CaseSummary {
    CaseSummary {
        variant: variant.tag().into(),
        status: CaseStatus::Failed,
        blowup_leg: None,
        blowup_step: None,
        blowup_kind: None,
        error: Some(e.to_string()),
        digest: None,
        cycles_completed: 0,
        final_error: None,
        final_observed: None,
        final_unobserved: None,
    }
}

/// Every variant's history, in config order; `Err` for engine failures.
pub type Histories<S> = Vec<(VariantName, Result<IterationHistory<S>, String>)>;

/// Generate the reference once and run every variant against it.
pub fn execute<S: AssimilationSystem>(s: &Setup<S>) -> Histories<S::State> {
    let reference =
        match generate_reference(&s.system, &s.truth0, &s.time_grid, s.sampling.decimation) {
            Ok(r) => r,
            Err(e) => {
                return s
                    .runs
                    .iter()
                    .map(|(v, _)| (*v, Err(e.to_string())))
                    .collect()
            }
        };
    s.runs
        .iter()
        .map(|(v, c)| {
            (
                *v,
                run_bfn(&s.system, c, &reference).map_err(|e| e.to_string()),
            )
        })
        .collect()
}

fn persist<S>(
    cfg: &ExperimentConfig,
    s: &Setup<S>,
    histories: &Histories<S::State>,
    family: &str,
    scheme: Option<String>,
    prov: &Provenance<'_>,
    out_dir: &Path,
) -> io::Result<Vec<CaseSummary>>
where
    S: AssimilationSystem,
    S::State: StateTable,
{
    let mut tables = Tables::new::<S::State>();
    let mut cases = Vec::new();
    for (v, h) in histories {
        match h {
            Ok(h) => {
                tables.add(v.tag(), h);
                cases.push(summarize(*v, h));
            }
            Err(e) => cases.push(failed_case(*v, e)),
        }
    }
    fs::create_dir_all(out_dir)?;
    let mut files = vec!["errors.tsv", "summary.tsv", "recovered.tsv"];
    fs::write(out_dir.join("errors.tsv"), &tables.errors)?;
    fs::write(out_dir.join("summary.tsv"), &tables.summary)?;
    fs::write(out_dir.join("recovered.tsv"), &tables.recovered)?;
    if tables.has_spectrum {
        fs::write(out_dir.join("spectrum.tsv"), &tables.spectrum)?;
        files.push("spectrum.tsv");
    }
    files.push("manifest.toml");
    let manifest = Manifest {
        tool: "bfn".into(),
        version: env!("CARGO_PKG_VERSION").into(),
        scenario: prov.scenario.map(|sc| ScenarioInfo {
            name: sc.name.into(),
            reproduces: sc.reproduces.into(),
            substitutions: sc.substitutions.iter().map(|x| x.to_string()).collect(),
        }),
        overrides: prov.overrides.to_vec(),
        files: files.iter().map(|f| f.to_string()).collect(),
        resolved: Resolved {
            family: family.into(),
            steps_per_leg: s.sampling.steps,
            record_every: s.sampling.record_every,
            decimation: s.sampling.decimation,
            scheme,
            mu_back: cfg.bfn.mu_back(),
            system: s.system.describe(),
        },
        cases: cases.clone(),
        config: cfg.clone(),
    };
    let text = toml::to_string(&manifest).map_err(io::Error::other)?;
    fs::write(out_dir.join("manifest.toml"), text)?;
    Ok(cases)
}

/// Run a validated experiment and write its tables and manifest into `out_dir`.
pub fn run_experiment(
    cfg: &ExperimentConfig,
    exp: &Experiment,
    prov: &Provenance<'_>,
    out_dir: &Path,
) -> io::Result<RunOutcome> {
    let scheme = Some(cfg.scheme().tag().to_string());
    let cases = match exp {
        Experiment::Lorenz(s) => persist(cfg, s, &execute(s), "lorenz", None, prov, out_dir)?,
        Experiment::Line(s) => persist(cfg, s, &execute(s), "line", scheme, prov, out_dir)?,
        Experiment::Plane(s) => persist(cfg, s, &execute(s), "plane", scheme, prov, out_dir)?,
    };
    Ok(RunOutcome {
        name: cfg.name.clone(),
        out_dir: out_dir.to_path_buf(),
        cases,
    })
}
