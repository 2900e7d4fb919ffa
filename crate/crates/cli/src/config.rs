//! Run configuration: defaults, a sectioned `key = value` file, and
//! command-line overrides, applied in that order.
//!
//! ```text
//! [bath]
//! omega = 1
//! T = 0.5
//!
//! [probe]
//! probes = fock:1, coherent:1
//! ```

use std::fmt;
use std::path::PathBuf;

use fockthermo::bath::RateModel;
use fockthermo::dynamics::EvolutionMethod;
use fockthermo::fisher::{DerivativeConfig, EvalSettings, Method};
use fockthermo::fockspace::LEAKAGE_BUDGET;
use fockthermo::sweep::{log_grid, Axis, FixedParams, ProbeTemplate, SweepSpec};
use fockthermo::BathParams;

pub const DIM_MAX_ENV: &str = "FOCKTHERMO_DIM_MAX";

/// Every accepted key and the section it lives in.
pub const KEYS: &[(&str, &str)] = &[
    ("bath", "omega"),
    ("bath", "T"),
    ("bath", "gamma"),
    ("bath", "g"),
    ("bath", "rate_model"),
    ("evolution", "t"),
    ("evolution", "dt"),
    ("evolution", "method"),
    ("evolution", "leakage_budget"),
    ("evolution", "dim"),
    ("evolution", "dim_max"),
    ("derivative", "h_rel"),
    ("derivative", "richardson"),
    ("derivative", "h_abs_floor"),
    ("probe", "probes"),
    ("probe", "methods"),
    ("sweep", "axis"),
    ("sweep", "axis_values"),
    ("sweep", "workers"),
    ("bounds", "n_values"),
    ("output", "out"),
];

/// Where a bad value came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Origin {
    Line(usize),
    Flag(String),
    Env(&'static str),
    Combined,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigError {
    pub origin: Origin,
    pub key: String,
    pub message: String,
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.origin {
            Origin::Line(n) if self.key.is_empty() => write!(f, "line {n}: {}", self.message),
            Origin::Line(n) => write!(f, "line {n}: key '{}': {}", self.key, self.message),
            Origin::Flag(flag) => write!(f, "{flag}: {}", self.message),
            Origin::Env(var) => write!(f, "{var}: {}", self.message),
            Origin::Combined => write!(f, "{}", self.message),
        }
    }
}

impl std::error::Error for ConfigError {}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub omega: f64,
    pub temperature: f64,
    pub gamma: f64,
    pub g: f64,
    pub rate_model: RateModel,
    pub t: f64,
    pub dt: Option<f64>,
    pub evolution: Option<EvolutionMethod>,
    pub leakage_budget: f64,
    pub dim: Option<usize>,
    pub dim_max: Option<usize>,
    pub derivative: DerivativeConfig,
    pub probes: Vec<ProbeTemplate>,
    pub methods: Vec<Method>,
    pub axis: Axis,
    pub axis_values: Vec<f64>,
    /// 0 means one per available core.
    pub workers: usize,
    pub n_values: Vec<usize>,
    pub out: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            omega: 1.0,
            temperature: 0.5,
            gamma: 0.1,
            g: 0.05,
            rate_model: RateModel::Markovian,
            t: 0.5,
            dt: None,
            evolution: None,
            leakage_budget: LEAKAGE_BUDGET,
            dim: None,
            dim_max: None,
            derivative: DerivativeConfig::default(),
            probes: vec![ProbeTemplate::Fixed(fockthermo::ProbeSpec::Fock { n: 1 })],
            methods: vec![Method::QfiSld],
            axis: Axis::Time,
            axis_values: log_grid(0.01, 1.0, 9),
            workers: 0,
            n_values: (0..=5).collect(),
            out: None,
        }
    }
}

fn parse_f64(value: &str) -> Result<f64, String> {
    value.trim().parse::<f64>().map_err(|_| format!("expected a number, got '{}'", value.trim()))
}

fn positive(name: &str, value: &str) -> Result<f64, String> {
    let x = parse_f64(value)?;
    if x > 0.0 && x.is_finite() {
        Ok(x)
    } else {
        Err(format!("{name} must be > 0"))
    }
}

fn nonnegative(name: &str, value: &str) -> Result<f64, String> {
    let x = parse_f64(value)?;
    if x >= 0.0 && x.is_finite() {
        Ok(x)
    } else {
        Err(format!("{name} must be >= 0"))
    }
}

fn parse_usize(name: &str, value: &str) -> Result<usize, String> {
    value.trim().parse::<usize>().map_err(|_| format!("{name} must be a nonnegative integer, got '{}'", value.trim()))
}

fn is_auto(value: &str) -> bool {
    value.trim().eq_ignore_ascii_case("auto")
}

fn list(value: &str) -> impl Iterator<Item = &str> {
    value.split(',').map(str::trim).filter(|s| !s.is_empty())
}

fn dim_value(name: &str, value: &str) -> Result<Option<usize>, String> {
    if is_auto(value) {
        return Ok(None);
    }
    let d = parse_usize(name, value)?;
    if d < 2 {
        return Err(format!("{name} must be >= 2"));
    }
    Ok(Some(d))
}

/// Comma list, or `log:lo:hi:count` / `lin:lo:hi:count`.
pub fn parse_axis_values(value: &str) -> Result<Vec<f64>, String> {
    let v = value.trim();
    if let Some((kind, rest)) = v.split_once(':') {
        let parts: Vec<&str> = rest.split(':').collect();
        if parts.len() != 3 {
            return Err(format!("expected {kind}:lo:hi:count, got '{v}'"));
        }
        let lo = parse_f64(parts[0])?;
        let hi = parse_f64(parts[1])?;
        let count = parse_usize("count", parts[2])?;
        if count == 0 || !(hi > lo) {
            return Err("grid needs count >= 1 and hi > lo".to_string());
        }
        return match kind {
            "log" if lo > 0.0 => Ok(log_grid(lo, hi, count)),
            "log" => Err("log grid needs lo > 0".to_string()),
            "lin" => Ok((0..count)
                .map(|k| if count == 1 { lo } else { lo + (hi - lo) * k as f64 / (count - 1) as f64 })
                .collect()),
            _ => Err(format!("unknown grid kind '{kind}', expected log or lin")),
        };
    }
    let values = list(v).map(parse_f64).collect::<Result<Vec<_>, _>>()?;
    if values.is_empty() {
        return Err("axis_values must not be empty".to_string());
    }
    Ok(values)
}

impl RunConfig {
    /// Applies one key. Errors carry only the message; callers add origin.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), String> {
        match key {
            "omega" => self.omega = positive("omega", value)?,
            "T" => self.temperature = positive("T", value)?,
            "gamma" => self.gamma = positive("gamma", value)?,
            "g" => self.g = nonnegative("g", value)?,
            "rate_model" => self.rate_model = value.parse().map_err(|e: fockthermo::Error| e.to_string())?,
            "t" => self.t = nonnegative("t", value)?,
            "dt" => self.dt = if is_auto(value) { None } else { Some(positive("dt", value)?) },
            "method" => {
                self.evolution = if is_auto(value) {
                    None
                } else {
                    Some(value.parse().map_err(|e: fockthermo::Error| e.to_string())?)
                }
            }
            "leakage_budget" => {
                let x = positive("leakage_budget", value)?;
                if x >= 1.0 {
                    return Err("leakage_budget must be < 1".to_string());
                }
                self.leakage_budget = x;
            }
            "dim" => self.dim = dim_value("dim", value)?,
            "dim_max" => self.dim_max = dim_value("dim_max", value)?,
            "h_rel" => self.derivative.h_rel = positive("h_rel", value)?,
            "h_abs_floor" => self.derivative.h_abs_floor = positive("h_abs_floor", value)?,
            "richardson" => {
                self.derivative.richardson = match value.trim().to_ascii_lowercase().as_str() {
                    "true" | "yes" | "on" | "1" => true,
                    "false" | "no" | "off" | "0" => false,
                    other => return Err(format!("richardson must be true or false, got '{other}'")),
                }
            }
            "probes" => {
                let probes = list(value)
                    .map(|p| p.parse::<ProbeTemplate>().map_err(|e| e.to_string()))
                    .collect::<Result<Vec<_>, _>>()?;
                if probes.is_empty() {
                    return Err("probes must not be empty".to_string());
                }
                self.probes = probes;
            }
            "methods" => {
                let methods = list(value)
                    .map(|m| m.parse::<Method>().map_err(|e| e.to_string()))
                    .collect::<Result<Vec<_>, _>>()?;
                if methods.is_empty() {
                    return Err("methods must not be empty".to_string());
                }
                self.methods = methods;
            }
            "axis" => self.axis = value.parse().map_err(|e: fockthermo::Error| e.to_string())?,
            "axis_values" => self.axis_values = parse_axis_values(value)?,
            "workers" => self.workers = if is_auto(value) { 0 } else { parse_usize("workers", value)? },
            "n_values" => {
                let ns = list(value).map(|n| parse_usize("n", n)).collect::<Result<Vec<_>, _>>()?;
                if ns.is_empty() {
                    return Err("n_values must not be empty".to_string());
                }
                self.n_values = ns;
            }
            "out" => {
                let v = value.trim();
                self.out = if v.is_empty() { None } else { Some(PathBuf::from(v)) };
            }
            other => return Err(format!("unknown key '{other}'")),
        }
        Ok(())
    }

    /// Reads the file form on top of `self`.
    pub fn apply_text(&mut self, text: &str) -> Result<(), ConfigError> {
        let mut section: Option<String> = None;
        let mut seen: Vec<&str> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let err = |key: &str, message: String| ConfigError { origin: Origin::Line(line_no), key: key.to_string(), message };
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some(name) = line.strip_prefix('[') {
                let name = name
                    .strip_suffix(']')
                    .ok_or_else(|| err("", format!("malformed section header '{line}'")))?
                    .trim();
                if !KEYS.iter().any(|(s, _)| *s == name) {
                    return Err(err("", format!("unknown section [{name}]")));
                }
                section = Some(name.to_string());
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| err("", format!("expected 'key = value', got '{line}'")))?;
            let key = key.trim();
            let Some(sec) = section.as_deref() else {
                return Err(err(key, "key appears before any [section] header".to_string()));
            };
            let Some(&(_, canonical)) = KEYS.iter().find(|(s, k)| *s == sec && *k == key) else {
                return Err(err(key, format!("unknown key '{key}' in section [{sec}]")));
            };
            if seen.contains(&canonical) {
                return Err(err(key, "duplicate key".to_string()));
            }
            seen.push(canonical);
            self.set(canonical, value).map_err(|m| err(key, m))?;
        }
        Ok(())
    }

    /// Cross-field checks that no single key can see.
    pub fn validate(&self) -> Result<(), ConfigError> {
        let combined = |message: String| ConfigError { origin: Origin::Combined, key: String::new(), message };
        self.bath().map_err(|e| combined(e.to_string()))?;
        if let (Some(dt), true) = (self.dt, self.t > 0.0) {
            if dt > self.t {
                return Err(combined("dt must not exceed t".to_string()));
            }
        }
        Ok(())
    }

    /// Defaults, then the config file, then flags, then the dim cap from
    /// the environment.
    pub fn resolve(file: Option<&str>, flags: &[(&str, String)], env_dim_max: Option<&str>) -> Result<Self, ConfigError> {
        let mut cfg = RunConfig::default();
        if let Some(text) = file {
            cfg.apply_text(text)?;
        }
        for (flag, value) in flags {
            let key = flag_key(flag).ok_or_else(|| ConfigError {
                origin: Origin::Flag(format!("--{flag}")),
                key: flag.to_string(),
                message: "unknown flag".to_string(),
            })?;
            cfg.set(key, value).map_err(|message| ConfigError {
                origin: Origin::Flag(format!("--{flag}")),
                key: key.to_string(),
                message,
            })?;
        }
        if let Some(raw) = env_dim_max {
            let cap = dim_value("dim_max", raw)
                .map_err(|message| ConfigError { origin: Origin::Env(DIM_MAX_ENV), key: "dim_max".into(), message })?;
            if let Some(cap) = cap {
                cfg.dim_max = Some(cfg.dim_max.map_or(cap, |d| d.min(cap)));
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn bath(&self) -> fockthermo::Result<BathParams> {
        BathParams::new(self.omega, self.temperature, self.gamma, self.g, self.rate_model)
    }

    pub fn settings(&self) -> EvalSettings {
        EvalSettings {
            dim: self.dim,
            dim_max: self.dim_max,
            evolution: self.evolution,
            dt: self.dt,
            leakage_budget: self.leakage_budget,
            derivative: self.derivative,
        }
    }

    pub fn sweep_spec(&self) -> SweepSpec {
        SweepSpec {
            axis: self.axis,
            axis_values: self.axis_values.clone(),
            fixed: FixedParams {
                omega: self.omega,
                temperature: self.temperature,
                gamma: self.gamma,
                g: self.g,
                t: self.t,
                rate_model: self.rate_model,
            },
            probes: self.probes.clone(),
            methods: self.methods.clone(),
            settings: self.settings(),
        }
    }

    /// The file form; parsing it back gives an equal record.
    pub fn to_text(&self) -> String {
        fn opt<T: ToString>(v: &Option<T>) -> String {
            v.as_ref().map_or_else(|| "auto".to_string(), T::to_string)
        }
        fn join<T: ToString>(items: &[T]) -> String {
            items.iter().map(T::to_string).collect::<Vec<_>>().join(", ")
        }
        let mut out = String::new();
        let mut section = "";
        for &(sec, key) in KEYS {
            if sec != section {
                if !section.is_empty() {
                    out.push('\n');
                }
                out.push_str(&format!("[{sec}]\n"));
                section = sec;
            }
            let value = match key {
                "omega" => self.omega.to_string(),
                "T" => self.temperature.to_string(),
                "gamma" => self.gamma.to_string(),
                "g" => self.g.to_string(),
                "rate_model" => self.rate_model.to_string(),
                "t" => self.t.to_string(),
                "dt" => opt(&self.dt),
                "method" => opt(&self.evolution),
                "leakage_budget" => self.leakage_budget.to_string(),
                "dim" => opt(&self.dim),
                "dim_max" => opt(&self.dim_max),
                "h_rel" => self.derivative.h_rel.to_string(),
                "richardson" => self.derivative.richardson.to_string(),
                "h_abs_floor" => self.derivative.h_abs_floor.to_string(),
                "probes" => join(&self.probes),
                "methods" => join(&self.methods),
                "axis" => self.axis.to_string(),
                "axis_values" => join(&self.axis_values),
                "workers" => self.workers.to_string(),
                "n_values" => join(&self.n_values),
                "out" => self.out.as_ref().map_or_else(String::new, |p| p.display().to_string()),
                _ => unreachable!("every key is serialised"),
            };
            out.push_str(&format!("{key} = {value}\n"));
        }
        out
    }
}

/// Config key behind a long flag (without the leading dashes).
pub fn flag_key(flag: &str) -> Option<&'static str> {
    Some(match flag {
        "omega" => "omega",
        "T" => "T",
        "gamma" => "gamma",
        "g" => "g",
        "rate-model" => "rate_model",
        "t" => "t",
        "dt" => "dt",
        "probe" | "probes" => "probes",
        "method" => "methods",
        "axis" => "axis",
        "axis-values" => "axis_values",
        "dim" => "dim",
        "out" => "out",
        "workers" => "workers",
        _ => return None,
    })
}
