use bfn_cli::config::{FourierTerm, InitialSpec, ModelSpec, VariantName};
use bfn_cli::{apply_overrides, parse_config, parse_toml, SCENARIOS};
use proptest::prelude::*;

const MINIMAL_HEAT: &str = r#"
name = "minimal"

[model]
kind = "heat"
nu = 0.1

[grid]
n = 64

[time]
t = 0.1
dt = 1e-3

[observation]
m = 4

[bfn]
mu = 10.0
iterations = 3

[reference]
kind = "trig-poly"
degree = 6
phase_step = 0.7
"#;

fn fields(v: &[bfn_cli::Violation]) -> Vec<&str> {
    v.iter().map(|x| x.field.as_str()).collect()
}

#[test]
fn minimal_heat_fills_defaults() {
    let c = parse_config(MINIMAL_HEAT).unwrap();
    assert_eq!(c.bfn.mu_back(), 10.0);
    assert_eq!(c.bfn.guess, InitialSpec::Zero);
    assert_eq!(c.bfn.variants, vec![VariantName::Standard]);
    assert!((c.grid.unwrap().length - 2.0 * std::f64::consts::PI).abs() < 1e-15);
    let s = parse_config(MINIMAL_HEAT).unwrap().sampling().unwrap();
    assert_eq!((s.steps, s.record_every, s.decimation), (100, 1, 1));
}

#[test]
fn gamma_out_of_range_names_the_field() {
    let text = SCENARIOS
        .iter()
        .find(|s| s.name == "lorenz-windowed-gamma")
        .unwrap()
        .text;
    let bad = apply_overrides(text, &["observation.gamma=1.5".into()]).unwrap();
    let err = parse_config(&bad).unwrap_err();
    assert_eq!(fields(&err), ["observation.gamma"]);
}

#[test]
fn every_violation_is_reported() {
    let bad = apply_overrides(
        MINIMAL_HEAT,
        &[
            "bfn.mu=-1".into(),
            "grid.n=7".into(),
            "time.dt=0.03".into(),
            "bfn.iterations=0".into(),
        ],
    )
    .unwrap();
    let err = parse_config(&bad).unwrap_err();
    for f in ["bfn.mu", "grid.n", "time.dt", "bfn.iterations"] {
        assert!(fields(&err).contains(&f), "{f} missing from {err:?}");
    }
}

#[test]
fn unknown_and_missing_keys_use_full_paths() {
    let bad = apply_overrides(
        MINIMAL_HEAT,
        &["bfn.bogus=1".into(), "reference.extra=true".into()],
    )
    .unwrap();
    let bad = bad.replace("iterations = 3", "");
    let err = parse_toml(&bad).unwrap_err();
    let f = fields(&err);
    for want in ["bfn.bogus", "reference.extra", "bfn.iterations"] {
        assert!(f.contains(&want), "{want} missing from {err:?}");
    }
}

#[test]
fn wrong_type_points_at_the_key() {
    let err = parse_toml(&MINIMAL_HEAT.replace("mu = 10.0", "mu = \"fast\"")).unwrap_err();
    assert_eq!(fields(&err), ["bfn.mu"]);
}

#[test]
fn model_family_mismatches() {
    let bad = apply_overrides(MINIMAL_HEAT, &["bfn.variants=[\"voigt\"]".into()]).unwrap();
    assert_eq!(fields(&parse_config(&bad).unwrap_err()), ["bfn.alpha"]);
    let bad = apply_overrides(MINIMAL_HEAT, &["bfn.variants=[\"damped\"]".into()]).unwrap();
    assert_eq!(fields(&parse_config(&bad).unwrap_err()), ["bfn.variants"]);
    let bad = MINIMAL_HEAT.replace(
        "kind = \"trig-poly\"\ndegree = 6\nphase_step = 0.7",
        "kind = \"point\"\nu = [1.0, 2.0, 3.0]",
    );
    assert_eq!(fields(&parse_config(&bad).unwrap_err()), ["reference.kind"]);
}

#[test]
fn burgers_partial_scenario_contents() {
    let c = bfn_cli::find("burgers-partial-M16")
        .unwrap()
        .config()
        .unwrap();
    assert_eq!(c.observation.m, Some(16));
    assert_eq!(c.bfn.mu, 100.0);
    assert_eq!(c.grid.as_ref().unwrap().length, 2.0);
    let InitialSpec::Fourier { terms } = &c.reference else {
        panic!("{:?}", c.reference)
    };
    assert_eq!(
        terms,
        &[
            FourierTerm {
                k: 1,
                cos: 1.0,
                sin: 0.0
            },
            FourierTerm {
                k: 30,
                cos: 0.05,
                sin: 0.0
            }
        ]
    );
}

#[test]
fn registry_contents() {
    assert!(SCENARIOS.len() >= 14);
    for name in [
        "lorenz-windowed-gamma",
        "nse-variant-comparison",
        "burgers-zero-obs",
        "heat-oracle",
        "kdv-viscous-standard",
    ] {
        assert!(bfn_cli::find(name).is_some(), "{name}");
    }
    for (i, s) in SCENARIOS.iter().enumerate() {
        assert!(
            SCENARIOS[..i].iter().all(|o| o.name != s.name),
            "duplicate {}",
            s.name
        );
        let c = parse_config(s.text).unwrap_or_else(|e| panic!("{}: {e:?}", s.name));
        assert_eq!(c.name, s.name);
        assert!(!s.reproduces.is_empty());
    }
}

#[test]
fn scenarios_round_trip() {
    for s in SCENARIOS {
        let c = s.config().unwrap();
        assert_eq!(parse_toml(&c.to_toml()).unwrap(), c, "{}", s.name);
    }
}

#[test]
fn overrides_create_and_replace() {
    let t = apply_overrides(
        MINIMAL_HEAT,
        &[
            "bfn.mu_back=2.5".into(),
            "model.nu=0.3".into(),
            "name=renamed".into(),
        ],
    )
    .unwrap();
    let c = parse_config(&t).unwrap();
    assert_eq!(c.bfn.mu_back(), 2.5);
    assert_eq!(c.model, ModelSpec::Heat { nu: 0.3 });
    assert_eq!(c.name, "renamed");
    assert!(apply_overrides(MINIMAL_HEAT, &["no-equals".into()]).is_err());
    assert!(apply_overrides(MINIMAL_HEAT, &["name.x=1".into()]).is_err());
}

fn variant_set() -> impl Strategy<Value = Vec<VariantName>> {
    proptest::sample::subsequence(
        vec![
            VariantName::Standard,
            VariantName::Diffusive,
            VariantName::Voigt,
            VariantName::FilteredDiffusive,
            VariantName::FilteredVoigt,
            VariantName::TruncatedDiffusion,
        ],
        1..=6,
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn configs_round_trip(
        mu in 0.0..1e4f64,
        mu_back in proptest::option::of(0.0..1e4f64),
        iterations in 1usize..50,
        variants in variant_set(),
        alpha in 1e-4..1.0f64,
        nu in 1e-4..1.0f64,
        terms in prop::collection::vec((1usize..20, -1.0..1.0f64, -1.0..1.0f64), 0..5),
    ) {
        let mut c = parse_config(MINIMAL_HEAT).unwrap();
        c.model = ModelSpec::Burgers { nu };
        c.bfn.mu = mu;
        c.bfn.mu_back = mu_back;
        c.bfn.iterations = iterations;
        c.bfn.variants = variants;
        c.bfn.alpha = Some(alpha);
        c.bfn.guess = InitialSpec::Fourier {
            terms: terms.into_iter().map(|(k, cos, sin)| FourierTerm { k, cos, sin }).collect(),
        };
        let text = c.to_toml();
        let back = parse_config(&text).unwrap();
        prop_assert_eq!(back, c);
    }
}
