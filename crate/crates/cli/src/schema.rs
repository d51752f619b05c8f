//! Key-level checks on raw TOML, so unknown and missing keys are all
//! reported with their full path before typed parsing.

use crate::config::Violation;

/// `(key, required)` pairs.
type Fields = &'static [(&'static str, bool)];

const TOP: Fields = &[
    ("name", true),
    ("description", false),
    ("model", true),
    ("grid", false),
    ("time", true),
    ("observation", true),
    ("bfn", true),
    ("reference", true),
    ("output", false),
];
const GRID: Fields = &[("n", true), ("length", false)];
const TIME: Fields = &[("t", true), ("dt", true)];
const OBSERVATION: Fields = &[("m", false), ("components", false), ("gamma", false)];
const BFN: Fields = &[
    ("mu", true),
    ("mu_back", false),
    ("iterations", true),
    ("variants", false),
    ("alpha", false),
    ("truncation", false),
    ("scheme", false),
    ("convention", false),
    ("divergence_growth", false),
    ("guess", false),
];
const OUTPUT: Fields = &[("record_every", false), ("decimation", false)];
const TERM: Fields = &[("k", true), ("cos", false), ("sin", false)];

fn model_fields(kind: &str) -> Option<Fields> {
    Some(match kind {
        "lorenz" => &[
            ("kind", true),
            ("sigma", false),
            ("rho", false),
            ("b", false),
        ],
        "heat" => &[("kind", true), ("nu", true)],
        "transport" => &[("kind", true), ("nu", false), ("a", true)],
        "burgers" => &[("kind", true), ("nu", false)],
        "kdv-damped" => &[("kind", true), ("gamma", true), ("forcing", false)],
        "kdv-viscous" => &[("kind", true), ("nu", true), ("forcing", false)],
        "nse" => &[("kind", true), ("nu", true), ("grashof", false)],
        _ => return None,
    })
}

fn initial_fields(kind: &str) -> Option<Fields> {
    Some(match kind {
        "zero" => &[("kind", true)],
        "point" => &[("kind", true), ("u", true)],
        "fourier" => &[("kind", true), ("terms", true)],
        "trig-poly" => &[("kind", true), ("degree", true), ("phase_step", true)],
        "broadband" => &[
            ("kind", true),
            ("kmax", true),
            ("decay", true),
            ("norm", true),
        ],
        "nse-synthetic" => &[("kind", true), ("kmax", true), ("energy", true)],
        "taylor-green" => &[("kind", true), ("amplitude", false)],
        _ => return None,
    })
}

fn join(path: &str, key: &str) -> String {
    if path.is_empty() {
        key.to_string()
    } else {
        format!("{path}.{key}")
    }
}

struct Walk {
    out: Vec<Violation>,
}

impl Walk {
    fn fields(&mut self, path: &str, t: &toml::Table, fields: Fields) {
        for key in t.keys() {
            if !fields.iter().any(|(k, _)| k == key) {
                let known: Vec<&str> = fields.iter().map(|(k, _)| *k).collect();
                self.out.push(Violation::new(
                    join(path, key),
                    format!("unknown key (expected one of {})", known.join(", ")),
                ));
            }
        }
        for (key, required) in fields {
            if *required && !t.contains_key(*key) {
                self.out.push(Violation::new(join(path, key), "missing"));
            }
        }
    }

    fn table<'a>(&mut self, path: &str, v: Option<&'a toml::Value>) -> Option<&'a toml::Table> {
        match v {
            None => None,
            Some(toml::Value::Table(t)) => Some(t),
            Some(_) => {
                self.out.push(Violation::new(path, "must be a table"));
                None
            }
        }
    }

    fn tagged(&mut self, path: &str, t: &toml::Table, lookup: fn(&str) -> Option<Fields>) {
        match t.get("kind").and_then(|k| k.as_str()) {
            None => self.out.push(Violation::new(
                join(path, "kind"),
                "missing or not a string",
            )),
            Some(kind) => match lookup(kind) {
                None => self.out.push(Violation::new(
                    join(path, "kind"),
                    format!("unknown kind {kind:?}"),
                )),
                Some(f) => self.fields(path, t, f),
            },
        }
    }

    fn initial(&mut self, path: &str, t: &toml::Table) {
        self.tagged(path, t, initial_fields);
        if let Some(toml::Value::Array(terms)) = t.get("terms") {
            for (i, term) in terms.iter().enumerate() {
                let p = format!("{path}.terms[{i}]");
                if let Some(tt) = self.table(&p, Some(term)) {
                    self.fields(&p, tt, TERM);
                }
            }
        }
    }
}

/// Every unknown key, missing required key and misplaced scalar.
pub fn check(root: &toml::Table) -> Vec<Violation> {
    let mut w = Walk { out: Vec::new() };
    w.fields("", root, TOP);
    if let Some(t) = w.table("model", root.get("model")) {
        w.tagged("model", t, model_fields);
    }
    for (name, fields) in [
        ("grid", GRID),
        ("time", TIME),
        ("observation", OBSERVATION),
        ("output", OUTPUT),
    ] {
        if let Some(t) = w.table(name, root.get(name)) {
            w.fields(name, t, fields);
        }
    }
    if let Some(t) = w.table("bfn", root.get("bfn")) {
        w.fields("bfn", t, BFN);
        if let Some(g) = w.table("bfn.guess", t.get("guess")) {
            w.initial("bfn.guess", g);
        }
    }
    if let Some(t) = w.table("reference", root.get("reference")) {
        w.initial("reference", t);
    }
    w.out
}
