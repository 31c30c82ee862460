//! Run configuration: a flat TOML document plus repeated `[[sweep]]` tables.
//!
//! ```toml
//! scenario = "a"
//! omega = 4.6
//! lambda = 1.5
//! t = 1.0
//!
//! [[sweep]]
//! param = "separation"
//! from = 0.0
//! to = 2.733
//! steps = 200
//! ```

use std::fmt::Write as _;
use std::path::PathBuf;

use toml::{Table, Value};

use crate::error::{Error, Result};
use crate::scenarios::{
    AcceleratedSpec, Axis, InertialScenario, InertialSpec, Param, ScenarioSpec, Separation,
    Squeezing,
};

/// Squeezing samples used by `unruh-response` when none are given.
pub const DEFAULT_R_SAMPLES: [f64; 6] = [0.0, 0.25, 0.5, 0.75, 1.0, 1.25];

const TOP_KEYS: [&str; 16] = [
    "scenario",
    "omega",
    "lambda",
    "t",
    "separation",
    "separation_wavelengths",
    "T",
    "delay",
    "r",
    "Omega",
    "a",
    "r_samples",
    "outer_positions",
    "out",
    "format",
    "sweep",
];

const SWEEP_KEYS: [&str; 4] = ["param", "from", "to", "steps"];

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub spec: ScenarioSpec,
    pub sweeps: Vec<Axis>,
    pub out: Option<PathBuf>,
}

struct Doc {
    table: Table,
}

impl Doc {
    fn has(&self, key: &str) -> bool {
        self.table.contains_key(key)
    }

    fn float(&self, key: &str) -> Result<Option<f64>> {
        self.table.get(key).map(|v| as_float(key, v)).transpose()
    }

    fn required(&self, key: &str) -> Result<f64> {
        self.float(key)?
            .ok_or_else(|| Error::config(key, "required for this scenario"))
    }

    fn string(&self, key: &str) -> Result<Option<String>> {
        match self.table.get(key) {
            None => Ok(None),
            Some(Value::String(s)) => Ok(Some(s.clone())),
            Some(_) => Err(Error::config(key, "expected a string")),
        }
    }

    fn forbid(&self, keys: &[&str], scenario: &str) -> Result<()> {
        match keys.iter().find(|k| self.has(k)) {
            Some(k) => Err(Error::config(
                *k,
                format!("not a parameter of scenario `{scenario}`"),
            )),
            None => Ok(()),
        }
    }
}

fn as_float(key: &str, v: &Value) -> Result<f64> {
    match v {
        Value::Float(f) => Ok(*f),
        Value::Integer(i) => Ok(*i as f64),
        _ => Err(Error::config(key, "expected a number")),
    }
}

/// Parses and fully validates a configuration document.
pub fn parse_config(text: &str) -> Result<RunConfig> {
    let table: Table = text.parse().map_err(|e: toml::de::Error| Error::Parse(e.to_string()))?;
    if let Some(k) = table.keys().find(|k| !TOP_KEYS.contains(&k.as_str())) {
        return Err(Error::config(k.as_str(), "unknown key"));
    }
    let doc = Doc { table };

    let scenario = doc
        .string("scenario")?
        .ok_or_else(|| Error::config("scenario", "missing scenario selector"))?;
    if let Some(fmt) = doc.string("format")? {
        if fmt != "csv" {
            return Err(Error::config("format", format!("unsupported format `{fmt}`")));
        }
    }
    let spec = match scenario.as_str() {
        "a" | "b" | "c" | "d" => inertial(&doc, scenario.parse()?)?,
        "accelerated" => accelerated(&doc)?,
        "single-detector" | "unruh-response" => single(&doc, &scenario)?,
        other => {
            return Err(Error::config(
                "scenario",
                format!(
                    "unknown scenario `{other}` (expected a, b, c, d, accelerated, \
                     single-detector or unruh-response)"
                ),
            ))
        }
    };
    spec.validate()?;

    let sweeps = sweeps(&doc)?;
    for axis in &sweeps {
        for end in [axis.from, axis.to] {
            let mut probe = spec.clone();
            probe.set(axis.param, end)?;
            probe.validate()?;
        }
    }
    let out = doc.string("out")?.map(PathBuf::from);
    Ok(RunConfig { spec, sweeps, out })
}

fn inertial(doc: &Doc, scenario: InertialScenario) -> Result<ScenarioSpec> {
    let name = scenario.name();
    doc.forbid(&["delay", "r", "Omega", "a", "r_samples"], name)?;
    if scenario != InertialScenario::D {
        doc.forbid(&["T"], name)?;
    }
    let mut spec = InertialSpec::new(
        scenario,
        doc.required("omega")?,
        doc.required("lambda")?,
        doc.required("t")?,
    );
    spec.separation = match (doc.float("separation")?, doc.float("separation_wavelengths")?) {
        (Some(_), Some(_)) => {
            return Err(Error::config(
                "separation_wavelengths",
                "give either separation or separation_wavelengths",
            ))
        }
        (Some(x), None) => Separation::Absolute(x),
        (None, Some(k)) => Separation::Wavelengths(k),
        (None, None) => Separation::Absolute(0.0),
    };
    if scenario == InertialScenario::D {
        spec.gap = doc.required("T")?;
    }
    spec.outer_positions = match doc.table.get("outer_positions") {
        None => false,
        Some(Value::Boolean(b)) => *b,
        Some(_) => return Err(Error::config("outer_positions", "expected true or false")),
    };
    Ok(ScenarioSpec::Inertial(spec))
}

fn accelerated(doc: &Doc) -> Result<ScenarioSpec> {
    doc.forbid(
        &["separation", "separation_wavelengths", "T", "r_samples", "outer_positions"],
        "accelerated",
    )?;
    let squeezing = match (doc.float("r")?, doc.float("Omega")?, doc.float("a")?) {
        (Some(_), Some(_), _) | (Some(_), _, Some(_)) => {
            return Err(Error::config(
                "r",
                "ambiguous squeezing: give either r or (Omega, a), not both",
            ))
        }
        (Some(r), None, None) => Squeezing::Parameter(r),
        (None, Some(big_omega), Some(a)) => Squeezing::Acceleration { big_omega, a },
        (None, Some(_), None) => return Err(Error::config("a", "required together with Omega")),
        (None, None, Some(_)) => return Err(Error::config("Omega", "required together with a")),
        (None, None, None) => return Err(Error::config("r", "give r or (Omega, a)")),
    };
    Ok(ScenarioSpec::Accelerated(AcceleratedSpec {
        omega: doc.required("omega")?,
        lambda: doc.required("lambda")?,
        t: doc.required("t")?,
        delay: doc.float("delay")?.unwrap_or(0.0),
        squeezing,
    }))
}

fn single(doc: &Doc, scenario: &str) -> Result<ScenarioSpec> {
    doc.forbid(
        &["separation", "separation_wavelengths", "T", "delay", "r", "Omega", "a", "outer_positions"],
        scenario,
    )?;
    let (omega, lambda, t) = (doc.required("omega")?, doc.required("lambda")?, doc.required("t")?);
    if scenario == "single-detector" {
        doc.forbid(&["r_samples"], scenario)?;
        return Ok(ScenarioSpec::SingleDetector { omega, lambda, t });
    }
    let r_samples = match doc.table.get("r_samples") {
        None => DEFAULT_R_SAMPLES.to_vec(),
        Some(Value::Array(items)) => items
            .iter()
            .map(|v| as_float("r_samples", v))
            .collect::<Result<Vec<_>>>()?,
        Some(_) => return Err(Error::config("r_samples", "expected an array of numbers")),
    };
    if let Some(r) = r_samples.iter().find(|r| !(r.is_finite() && **r >= 0.0)) {
        return Err(Error::config("r_samples", format!("must be non-negative, got {r}")));
    }
    if !r_samples.contains(&0.0) {
        return Err(Error::config("r_samples", "must include 0"));
    }
    Ok(ScenarioSpec::UnruhResponse {
        omega,
        lambda,
        t,
        r_samples,
    })
}

fn sweeps(doc: &Doc) -> Result<Vec<Axis>> {
    let items = match doc.table.get("sweep") {
        None => return Ok(Vec::new()),
        Some(Value::Array(items)) => items,
        Some(_) => return Err(Error::config("sweep", "expected [[sweep]] tables")),
    };
    if items.len() > 2 {
        return Err(Error::config("sweep", "at most two sweep axes"));
    }
    let mut axes: Vec<Axis> = Vec::new();
    for item in items {
        let Value::Table(t) = item else {
            return Err(Error::config("sweep", "expected [[sweep]] tables"));
        };
        if let Some(k) = t.keys().find(|k| !SWEEP_KEYS.contains(&k.as_str())) {
            return Err(Error::config(format!("sweep.{k}"), "unknown key"));
        }
        let param = match t.get("param") {
            Some(Value::String(s)) => s
                .parse::<Param>()
                .map_err(|_| Error::config("sweep.param", format!("unknown parameter `{s}`")))?,
            Some(_) => return Err(Error::config("sweep.param", "expected a string")),
            None => return Err(Error::config("sweep.param", "missing")),
        };
        let bound = |key: &str| -> Result<f64> {
            let full = format!("sweep.{key}");
            let v = t.get(key).ok_or_else(|| Error::config(full.as_str(), "missing"))?;
            let f = as_float(&full, v)?;
            if f.is_finite() {
                Ok(f)
            } else {
                Err(Error::config(full, "must be finite"))
            }
        };
        let steps = match t.get("steps") {
            Some(Value::Integer(n)) if *n >= 2 => *n as usize,
            Some(_) => return Err(Error::config("sweep.steps", "expected an integer ≥ 2")),
            None => return Err(Error::config("sweep.steps", "missing")),
        };
        if axes.iter().any(|a| a.param == param) {
            return Err(Error::config("sweep.param", format!("`{}` swept twice", param.key())));
        }
        axes.push(Axis::new(param, bound("from")?, bound("to")?, steps));
    }
    Ok(axes)
}

/// Shortest round-trip representation, valid as a TOML float.
pub(crate) fn toml_float(x: f64) -> String {
    let s = format!("{x:?}");
    if s.contains(['.', 'e', 'i', 'N']) {
        s
    } else {
        format!("{s}.0")
    }
}

/// The effective configuration as a TOML document; parsing it back yields
/// an identical [`RunConfig`].
pub fn render_config(config: &RunConfig) -> String {
    let mut out = String::new();
    let mut kv = |k: &str, v: String| {
        let _ = writeln!(out, "{k} = {v}");
    };
    match &config.spec {
        ScenarioSpec::Inertial(s) => {
            kv("scenario", format!("\"{}\"", s.scenario));
            kv("omega", toml_float(s.omega));
            kv("lambda", toml_float(s.lambda));
            kv("t", toml_float(s.t));
            match s.separation {
                Separation::Absolute(x) => kv("separation", toml_float(x)),
                Separation::Wavelengths(k) => kv("separation_wavelengths", toml_float(k)),
            }
            if s.scenario == InertialScenario::D {
                kv("T", toml_float(s.gap));
            }
            kv("outer_positions", s.outer_positions.to_string());
        }
        ScenarioSpec::Accelerated(s) => {
            kv("scenario", "\"accelerated\"".into());
            kv("omega", toml_float(s.omega));
            kv("lambda", toml_float(s.lambda));
            kv("t", toml_float(s.t));
            kv("delay", toml_float(s.delay));
            match s.squeezing {
                Squeezing::Parameter(r) => kv("r", toml_float(r)),
                Squeezing::Acceleration { big_omega, a } => {
                    kv("Omega", toml_float(big_omega));
                    kv("a", toml_float(a));
                }
            }
        }
        ScenarioSpec::SingleDetector { omega, lambda, t } => {
            kv("scenario", "\"single-detector\"".into());
            kv("omega", toml_float(*omega));
            kv("lambda", toml_float(*lambda));
            kv("t", toml_float(*t));
        }
        ScenarioSpec::UnruhResponse {
            omega,
            lambda,
            t,
            r_samples,
        } => {
            kv("scenario", "\"unruh-response\"".into());
            kv("omega", toml_float(*omega));
            kv("lambda", toml_float(*lambda));
            kv("t", toml_float(*t));
            let list: Vec<String> = r_samples.iter().map(|r| toml_float(*r)).collect();
            kv("r_samples", format!("[{}]", list.join(", ")));
        }
    }
    if let Some(p) = &config.out {
        kv("out", toml_string(&p.to_string_lossy()));
    }
    for axis in &config.sweeps {
        let _ = write!(
            out,
            "\n[[sweep]]\nparam = \"{}\"\nfrom = {}\nto = {}\nsteps = {}\n",
            axis.param.key(),
            toml_float(axis.from),
            toml_float(axis.to),
            axis.steps
        );
    }
    out
}

fn toml_string(s: &str) -> String {
    Value::String(s.to_string()).to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn key_of(r: Result<RunConfig>) -> String {
        match r {
            Err(Error::Config { key, .. }) => key,
            other => panic!("expected a configuration error, got {other:?}"),
        }
    }

    #[test]
    fn separation_sweep() {
        let cfg = parse_config(
            "scenario = \"a\"\nomega = 4.6\nlambda = 1.5\nt = 1\n\
             [[sweep]]\nparam = \"separation\"\nfrom = 0\nto = 2.733\nsteps = 200\n",
        )
        .unwrap();
        assert_eq!(cfg.sweeps, vec![Axis::new(Param::Separation, 0.0, 2.733, 200)]);
        match cfg.spec {
            ScenarioSpec::Inertial(s) => {
                assert_eq!((s.omega, s.lambda, s.t), (4.6, 1.5, 1.0));
                assert_eq!(s.separation, Separation::Absolute(0.0));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn missing_gap_names_t() {
        let r = parse_config("scenario = \"d\"\nomega = 2.3\nlambda = 1.2\nt = 1\n");
        assert_eq!(key_of(r), "T");
    }

    #[test]
    fn ambiguous_squeezing() {
        let r = parse_config(
            "scenario = \"accelerated\"\nomega = 1\nlambda = 0.2\nt = 1\nr = 1\nOmega = 1\na = 2\n",
        );
        assert_eq!(key_of(r), "r");
    }

    #[test]
    fn rejections_name_the_key() {
        let base = "scenario = \"a\"\nomega = 4.6\nlambda = 1.5\nt = 1\n";
        assert_eq!(key_of(parse_config(&format!("{base}colour = 3\n"))), "colour");
        assert_eq!(key_of(parse_config(&format!("{base}T = 3\n"))), "T");
        assert_eq!(key_of(parse_config("scenario = \"a\"\nomega = -1\nlambda = 1\nt = 1\n")), "omega");
        assert_eq!(key_of(parse_config("scenario = \"a\"\nlambda = 1\nt = 1\n")), "omega");
        assert_eq!(key_of(parse_config("scenario = \"z\"\n")), "scenario");
        assert_eq!(
            key_of(parse_config(&format!(
                "{base}[[sweep]]\nparam = \"delay\"\nfrom = 0\nto = 1\nsteps = 3\n"
            ))),
            "delay"
        );
        assert_eq!(
            key_of(parse_config(&format!(
                "{base}[[sweep]]\nparam = \"omega\"\nfrom = 0\nto = 1\nsteps = 1\n"
            ))),
            "sweep.steps"
        );
        assert_eq!(
            key_of(parse_config(&format!(
                "{base}[[sweep]]\nparam = \"omega\"\nfrom = 0\nto = 1\nsteps = 3\n"
            ))),
            "omega"
        );
        assert!(matches!(parse_config("scenario = "), Err(Error::Parse(_))));
    }

    #[test]
    fn float_rendering_round_trips() {
        for x in [0.0, 1.0, 4.6, 1e-5, 2.733, 1e22, std::f64::consts::PI, -3.0] {
            let s = toml_float(x);
            let v: Table = format!("x = {s}").parse().unwrap();
            assert_eq!(v["x"].as_float(), Some(x), "{s}");
        }
    }

    #[test]
    fn render_then_parse_is_identity() {
        let docs = [
            "scenario = \"d\"\nomega = 2.3\nlambda = 1.2\nt = 1\nT = 0.7\nout = \"x y.csv\"\n",
            "scenario = \"a\"\nomega = 4.6\nlambda = 1.5\nt = 1\nseparation_wavelengths = 0.25\nouter_positions = true\n\
             [[sweep]]\nparam = \"omega\"\nfrom = 1\nto = 6\nsteps = 4\n\
             [[sweep]]\nparam = \"lambda\"\nfrom = 0\nto = 3\nsteps = 5\n",
            "scenario = \"accelerated\"\nomega = 2\nlambda = 0.4\nt = 1\nOmega = 2\na = 3.5\ndelay = 4\n",
            "scenario = \"unruh-response\"\nomega = 2\nlambda = 0.2\nt = 1\nr_samples = [0, 0.5, 1.5]\n",
            "scenario = \"single-detector\"\nomega = 4.6\nlambda = 1.5\nt = 1\n",
        ];
        for doc in docs {
            let cfg = parse_config(doc).unwrap();
            let again = parse_config(&render_config(&cfg)).unwrap();
            assert_eq!(cfg, again, "{doc}");
        }
    }
}
