//! Parameter sweeps over excitation number, temperature, coupling, decay
//! rate or time, evaluated on a fixed pool of worker threads.
//!
//! Points are dealt to workers round-robin and gathered back in input
//! order, so the output never depends on the worker count.

use std::path::Path;
use std::time::Instant;

use serde::{Serialize, Serializer};

use crate::bath::{BathParams, RateModel};
use crate::bounds::{bound_for, format_sig9};
use crate::error::{Error, Result};
use crate::fisher::{numerical_record, Diagnostics, EvalSettings, Method, QfiRecord};
use crate::probes::{energy_match, ProbeSpec};

pub const CSV_HEADER: &str = "axis,axis_value,probe,method,qfi,delta_t_min,valid_short_time,leakage,h_used,dim";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Axis {
    ExcitationN,
    Temperature,
    CouplingG,
    DecayGamma,
    Time,
}

impl Axis {
    pub fn as_str(self) -> &'static str {
        match self {
            Axis::ExcitationN => "n",
            Axis::Temperature => "temperature",
            Axis::CouplingG => "g",
            Axis::DecayGamma => "gamma",
            Axis::Time => "time",
        }
    }
}

impl std::fmt::Display for Axis {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Axis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "n" | "excitation" | "excitation_n" => Ok(Axis::ExcitationN),
            "temperature" | "t_bath" => Ok(Axis::Temperature),
            "g" | "coupling" | "coupling_g" => Ok(Axis::CouplingG),
            "gamma" | "decay" | "decay_gamma" => Ok(Axis::DecayGamma),
            "time" => Ok(Axis::Time),
            other => Err(Error::domain(format!(
                "axis must be one of n, temperature, g, gamma, time; got '{other}'"
            ))),
        }
    }
}

/// A probe in a sweep: fixed, or tied to the excitation number on the `n`
/// axis (`fock`, and the energy-matched `squeezed` / `coherent`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ProbeTemplate {
    Fixed(ProbeSpec),
    FockAtN,
    SqueezedMatched,
    CoherentMatched,
}

impl ProbeTemplate {
    pub fn is_fixed(&self) -> bool {
        matches!(self, ProbeTemplate::Fixed(_))
    }

    fn resolve(&self, n: Option<f64>) -> Result<ProbeSpec> {
        match (*self, n) {
            (ProbeTemplate::Fixed(spec), _) => Ok(spec),
            (_, None) => Err(Error::domain(format!("probe '{self}' needs the n axis"))),
            (ProbeTemplate::FockAtN, Some(n)) => Ok(ProbeSpec::Fock { n: n as usize }),
            (ProbeTemplate::SqueezedMatched, Some(n)) => Ok(energy_match(n)?.squeezed()),
            (ProbeTemplate::CoherentMatched, Some(n)) => Ok(energy_match(n)?.coherent()),
        }
    }
}

impl std::fmt::Display for ProbeTemplate {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ProbeTemplate::Fixed(spec) => spec.fmt(f),
            ProbeTemplate::FockAtN => f.write_str("fock"),
            ProbeTemplate::SqueezedMatched => f.write_str("squeezed"),
            ProbeTemplate::CoherentMatched => f.write_str("coherent"),
        }
    }
}

impl std::str::FromStr for ProbeTemplate {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "fock" => Ok(ProbeTemplate::FockAtN),
            "squeezed" => Ok(ProbeTemplate::SqueezedMatched),
            "coherent" => Ok(ProbeTemplate::CoherentMatched),
            _ => Ok(ProbeTemplate::Fixed(s.parse()?)),
        }
    }
}

impl Serialize for ProbeTemplate {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Parameters held fixed while the axis varies.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FixedParams {
    pub omega: f64,
    pub temperature: f64,
    pub gamma: f64,
    pub g: f64,
    pub t: f64,
    pub rate_model: RateModel,
}

impl Default for FixedParams {
    fn default() -> Self {
        FixedParams { omega: 1.0, temperature: 0.5, gamma: 0.1, g: 0.05, t: 0.5, rate_model: RateModel::Markovian }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepSpec {
    pub axis: Axis,
    pub axis_values: Vec<f64>,
    pub fixed: FixedParams,
    pub probes: Vec<ProbeTemplate>,
    pub methods: Vec<Method>,
    pub settings: EvalSettings,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        if self.axis_values.is_empty() {
            return Err(Error::domain("axis_values must not be empty"));
        }
        if self.axis_values.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::domain("axis_values must be strictly ascending"));
        }
        if self.probes.is_empty() || self.methods.is_empty() {
            return Err(Error::domain("a sweep needs at least one probe and one method"));
        }
        for &v in &self.axis_values {
            let ok = match self.axis {
                Axis::ExcitationN => v >= 0.0 && v.fract() == 0.0,
                Axis::Temperature | Axis::DecayGamma => v > 0.0,
                Axis::CouplingG | Axis::Time => v >= 0.0,
            };
            if !ok || !v.is_finite() {
                return Err(Error::domain(format!("axis value {v} is outside the domain of axis '{}'", self.axis)));
            }
        }
        if self.axis != Axis::ExcitationN {
            if let Some(p) = self.probes.iter().find(|p| !p.is_fixed()) {
                return Err(Error::domain(format!("probe '{p}' needs the n axis; give an explicit value like fock:2")));
            }
        }
        Ok(())
    }

    /// Bath, time and probe for one axis value.
    pub fn point(&self, value: f64, probe: &ProbeTemplate) -> Result<(BathParams, f64, ProbeSpec)> {
        let f = &self.fixed;
        let mut bath = BathParams { omega: f.omega, temperature: f.temperature, gamma: f.gamma, g: f.g, rate_model: f.rate_model };
        let mut t = f.t;
        let mut n = None;
        match self.axis {
            Axis::ExcitationN => n = Some(value),
            Axis::Temperature => bath.temperature = value,
            Axis::CouplingG => {
                bath.g = value;
                bath.rate_model = RateModel::Purcell;
            }
            Axis::DecayGamma => {
                bath.gamma = value;
                bath.rate_model = RateModel::Markovian;
            }
            Axis::Time => t = value,
        }
        bath.validate()?;
        Ok((bath, t, probe.resolve(n)?))
    }
}

/// Numerical Fisher information or a closed-form bound for one point.
/// Bounds take the probe's mean photon number as `n`.
pub fn evaluate_point(probe: &ProbeSpec, bath: &BathParams, t: f64, method: Method, settings: &EvalSettings) -> Result<QfiRecord> {
    if method.is_numerical() {
        return numerical_record(probe, bath, t, method, settings);
    }
    let bound = bound_for(method, probe.mean_photon_number(), bath, t)?;
    Ok(QfiRecord {
        value: bound.value,
        method,
        t,
        probe: *probe,
        bath: *bath,
        dim: 0,
        diagnostics: Diagnostics { h_used: 0.0, dropped_pairs: 0, leakage: 0.0, valid_short_time: bound.valid },
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub axis_value: f64,
    pub probe: String,
    pub method: Method,
    pub qfi: f64,
    pub delta_t_min: f64,
    pub valid_short_time: bool,
    pub leakage: f64,
    pub h_used: f64,
    pub dim: usize,
    pub error: Option<String>,
}

impl SweepRow {
    fn from_outcome(axis_value: f64, probe: String, method: Method, outcome: Result<QfiRecord>) -> Self {
        match outcome {
            Ok(rec) => SweepRow {
                axis_value,
                probe,
                method,
                qfi: rec.value,
                delta_t_min: rec.delta_t_min(),
                valid_short_time: rec.diagnostics.valid_short_time,
                leakage: rec.diagnostics.leakage,
                h_used: rec.diagnostics.h_used,
                dim: rec.dim,
                error: None,
            },
            Err(err) => SweepRow {
                axis_value,
                probe,
                method,
                qfi: f64::NAN,
                delta_t_min: f64::NAN,
                valid_short_time: false,
                leakage: f64::NAN,
                h_used: f64::NAN,
                dim: 0,
                error: Some(err.to_string()),
            },
        }
    }

    pub fn failed(&self) -> bool {
        self.error.is_some()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Metadata {
    pub version: &'static str,
    pub wall_time_s: f64,
    pub workers: usize,
    pub failed_rows: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepResult {
    pub spec: SweepSpec,
    pub rows: Vec<SweepRow>,
    pub metadata: Metadata,
}

impl SweepResult {
    pub fn to_csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for row in &self.rows {
            let fields = [
                self.spec.axis.to_string(),
                format_sig9(row.axis_value),
                row.probe.clone(),
                row.method.to_string(),
                format_sig9(row.qfi),
                format_sig9(row.delta_t_min),
                row.valid_short_time.to_string(),
                format_sig9(row.leakage),
                format_sig9(row.h_used),
                row.dim.to_string(),
            ];
            out.push_str(&fields.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("sweep results serialise")
    }

    /// `(axis value, qfi)` for successful rows of one probe and method.
    pub fn series(&self, probe: &str, method: Method) -> Vec<(f64, f64)> {
        self.rows
            .iter()
            .filter(|r| !r.failed() && r.probe == probe && r.method == method)
            .map(|r| (r.axis_value, r.qfi))
            .collect()
    }

    pub fn write_csv(&self, path: &Path) -> Result<()> {
        write_atomic(path, &self.to_csv())
    }

    pub fn write_json(&self, path: &Path) -> Result<()> {
        write_atomic(path, &self.to_json())
    }
}

/// Writes via a temporary file in the target directory, then renames.
pub fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    use std::io::Write;
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents.as_bytes())?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| Error::Io(e.error.to_string()))?;
    Ok(())
}

pub fn available_workers() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

pub fn run_sweep(spec: &SweepSpec, workers: usize) -> Result<SweepResult> {
    spec.validate()?;
    let start = Instant::now();
    let workers = workers.max(1);

    let mut tasks = Vec::new();
    for &value in &spec.axis_values {
        for template in &spec.probes {
            for &method in &spec.methods {
                tasks.push((value, template, method));
            }
        }
    }

    let eval = |&(value, template, method): &(f64, &ProbeTemplate, Method)| -> SweepRow {
        match spec.point(value, template) {
            Ok((bath, t, probe)) => {
                let outcome = evaluate_point(&probe, &bath, t, method, &spec.settings);
                SweepRow::from_outcome(value, probe.to_string(), method, outcome)
            }
            Err(err) => SweepRow::from_outcome(value, template.to_string(), method, Err(err)),
        }
    };

    let mut slots: Vec<Option<SweepRow>> = vec![None; tasks.len()];
    std::thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                let tasks = &tasks;
                let eval = &eval;
                scope.spawn(move || {
                    (w..tasks.len()).step_by(workers).map(|i| (i, eval(&tasks[i]))).collect::<Vec<_>>()
                })
            })
            .collect();
        for handle in handles {
            for (i, row) in handle.join().expect("sweep worker panicked") {
                slots[i] = Some(row);
            }
        }
    });
    let rows: Vec<SweepRow> = slots.into_iter().map(|r| r.expect("every task produces a row")).collect();

    let failed = rows.iter().filter(|r| r.failed()).count();
    if 2 * failed > rows.len() {
        return Err(Error::SweepFailed { failed, total: rows.len() });
    }
    Ok(SweepResult {
        spec: spec.clone(),
        rows,
        metadata: Metadata {
            version: env!("CARGO_PKG_VERSION"),
            wall_time_s: start.elapsed().as_secs_f64(),
            workers,
            failed_rows: failed,
        },
    })
}

/// Least-squares line through `(ln x, ln y)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScalingFit {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
    pub points: usize,
}

/// Fits `ln F = slope · ln t + intercept`; nonpositive points are skipped.
pub fn fit_scaling_exponent(points: &[(f64, f64)]) -> Result<ScalingFit> {
    let logs: Vec<(f64, f64)> = points
        .iter()
        .filter(|(x, y)| *x > 0.0 && *y > 0.0 && x.is_finite() && y.is_finite())
        .map(|(x, y)| (x.ln(), y.ln()))
        .collect();
    if logs.len() < 4 {
        return Err(Error::InsufficientData { points: logs.len() });
    }
    let n = logs.len() as f64;
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / n;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = logs.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = logs.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let syy: f64 = logs.iter().map(|p| (p.1 - my).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::domain("scaling fit needs distinct abscissae"));
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let r_squared = if syy == 0.0 { 1.0 } else { sxy * sxy / (sxx * syy) };
    Ok(ScalingFit { slope, intercept, r_squared, points: logs.len() })
}

/// `count` points evenly spaced in `ln` between `lo` and `hi`.
pub fn log_grid(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    if count == 1 {
        return vec![lo];
    }
    let (a, b) = (lo.ln(), hi.ln());
    (0..count).map(|k| (a + (b - a) * k as f64 / (count - 1) as f64).exp()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fockspace::FockDim;
    use approx::assert_relative_eq;

    fn spec(axis: Axis, values: Vec<f64>, probes: &[&str], methods: &[Method]) -> SweepSpec {
        SweepSpec {
            axis,
            axis_values: values,
            fixed: FixedParams::default(),
            probes: probes.iter().map(|p| p.parse().unwrap()).collect(),
            methods: methods.to_vec(),
            settings: EvalSettings::default(),
        }
    }

    #[test]
    fn single_point_matches_direct_call() {
        let s = spec(Axis::Time, vec![0.2], &["fock:2"], &[Method::QfiSld]);
        let result = run_sweep(&s, 1).unwrap();
        assert_eq!(result.rows.len(), 1);
        let bath = BathParams::markovian(1.0, 0.5, 0.1).unwrap();
        let bath = BathParams { g: 0.05, ..bath };
        let direct = evaluate_point(&ProbeSpec::Fock { n: 2 }, &bath, 0.2, Method::QfiSld, &EvalSettings::default()).unwrap();
        assert_eq!(result.rows[0].qfi, direct.value);
        assert_eq!(result.rows[0].dim, 40);
    }

    #[test]
    fn rows_are_ordered_and_complete() {
        let s = spec(
            Axis::ExcitationN,
            vec![1.0, 2.0],
            &["fock", "coherent"],
            &[Method::BoundFockLinear, Method::BoundCoherent],
        );
        let result = run_sweep(&s, 3).unwrap();
        let keys: Vec<(f64, &str, Method)> =
            result.rows.iter().map(|r| (r.axis_value, r.probe.as_str(), r.method)).collect();
        assert_eq!(
            keys,
            vec![
                (1.0, "fock:1", Method::BoundFockLinear),
                (1.0, "fock:1", Method::BoundCoherent),
                (1.0, "coherent:1", Method::BoundFockLinear),
                (1.0, "coherent:1", Method::BoundCoherent),
                (2.0, "fock:2", Method::BoundFockLinear),
                (2.0, "fock:2", Method::BoundCoherent),
                (2.0, "coherent:1.4142135623730951", Method::BoundFockLinear),
                (2.0, "coherent:1.4142135623730951", Method::BoundCoherent),
            ]
        );
        let csv = result.to_csv();
        assert_eq!(csv.lines().next().unwrap(), CSV_HEADER);
        assert_eq!(csv.lines().count(), 9);
    }

    #[test]
    fn axis_overrides_rate_model() {
        let s = spec(Axis::CouplingG, vec![0.05], &["fock:1"], &[Method::BoundFockLinear]);
        let (bath, _, _) = s.point(0.05, &s.probes[0]).unwrap();
        assert_eq!(bath.rate_model, RateModel::Purcell);
        assert_relative_eq!(bath.base_rate().unwrap(), 0.1, max_relative = 1e-14);
        let s = SweepSpec {
            fixed: FixedParams { rate_model: RateModel::Purcell, ..FixedParams::default() },
            ..spec(Axis::DecayGamma, vec![0.2], &["fock:1"], &[Method::BoundFockLinear])
        };
        let (bath, _, _) = s.point(0.2, &s.probes[0]).unwrap();
        assert_eq!(bath.rate_model, RateModel::Markovian);
        assert_eq!(bath.base_rate().unwrap(), 0.2);
    }

    #[test]
    fn invalid_specs_are_rejected() {
        assert!(run_sweep(&spec(Axis::Time, vec![], &["fock:1"], &[Method::QfiSld]), 1).is_err());
        assert!(run_sweep(&spec(Axis::Time, vec![0.2, 0.1], &["fock:1"], &[Method::QfiSld]), 1).is_err());
        assert!(run_sweep(&spec(Axis::Temperature, vec![0.0], &["fock:1"], &[Method::QfiSld]), 1).is_err());
        assert!(run_sweep(&spec(Axis::ExcitationN, vec![1.5], &["fock"], &[Method::QfiSld]), 1).is_err());
        assert!(run_sweep(&spec(Axis::Time, vec![0.1], &["fock"], &[Method::QfiSld]), 1).is_err());
    }

    #[test]
    fn failures_are_recorded_until_majority() {
        let mut s = spec(Axis::Time, vec![0.1], &["fock:1", "fock:30"], &[Method::QfiSld]);
        s.settings.dim = Some(32);
        // fock:30 leaks past the budget at 32 levels
        let result = run_sweep(&s, 2).unwrap();
        assert!(!result.rows[0].failed());
        assert!(result.rows[1].failed());
        assert!(result.rows[1].error.as_deref().unwrap().contains("raise dim"));
        assert!(result.to_csv().lines().nth(2).unwrap().contains("NaN"));
        assert_eq!(result.metadata.failed_rows, 1);

        s.probes = vec!["fock:30".parse().unwrap()];
        assert!(matches!(run_sweep(&s, 1), Err(Error::SweepFailed { failed: 1, total: 1 })));
    }

    #[test]
    fn worker_count_does_not_change_output() {
        let s = spec(Axis::Temperature, vec![0.3, 0.5, 0.8], &["fock:1", "thermal:0.2"], &[Method::CfiNumber, Method::QfiSld]);
        let one = run_sweep(&s, 1).unwrap();
        let many = run_sweep(&s, 4).unwrap();
        assert_eq!(one.to_csv(), many.to_csv());
    }

    #[test]
    fn scaling_fit_on_exact_power_laws() {
        let ts = log_grid(1e-3, 1e-1, 6);
        for (power, c) in [(1.0, 3.7), (2.0, 0.2)] {
            let pts: Vec<(f64, f64)> = ts.iter().map(|&t| (t, c * t.powf(power))).collect();
            let fit = fit_scaling_exponent(&pts).unwrap();
            assert!((fit.slope - power).abs() < 1e-9);
            assert!((fit.intercept - c.ln()).abs() < 1e-9);
            assert!((fit.r_squared - 1.0).abs() < 1e-12);
        }
        let sparse = [(1.0, 1.0), (2.0, 2.0), (3.0, 0.0), (4.0, -1.0), (5.0, 5.0)];
        assert!(matches!(fit_scaling_exponent(&sparse), Err(Error::InsufficientData { points: 3 })));
    }

    #[test]
    fn fock_time_series_is_linear() {
        let s = spec(Axis::Time, log_grid(1e-2, 1e-1, 5), &["fock:1"], &[Method::QfiSld]);
        let result = run_sweep(&s, 2).unwrap();
        let fit = fit_scaling_exponent(&result.series("fock:1", Method::QfiSld)).unwrap();
        assert!((0.95..=1.05).contains(&fit.slope), "{fit:?}");
    }

    #[test]
    fn energy_matching_on_the_n_axis() {
        let s = spec(Axis::ExcitationN, vec![1.0, 3.0, 5.0], &["squeezed", "coherent"], &[Method::QfiSld]);
        for &n in &s.axis_values {
            for template in &s.probes {
                let (bath, _, probe) = s.point(n, template).unwrap();
                let dim = s.settings.resolve_dim(&probe, &bath).unwrap();
                let rho = crate::probes::make_state(&probe, dim).unwrap();
                assert!((rho.mean_photon_number() - n).abs() < 1e-8, "{probe} at {dim}");
                assert!(dim >= FockDim::default_for(n, 0.0));
            }
        }
    }

    #[test]
    fn files_are_written() {
        let dir = tempfile::tempdir().unwrap();
        let s = spec(Axis::Time, vec![0.01, 0.02], &["fock:1"], &[Method::BoundFockLinear]);
        let result = run_sweep(&s, 1).unwrap();
        let csv = dir.path().join("out.csv");
        let json = dir.path().join("out.json");
        result.write_csv(&csv).unwrap();
        result.write_json(&json).unwrap();
        assert_eq!(std::fs::read_to_string(&csv).unwrap(), result.to_csv());
        let parsed: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
        assert_eq!(parsed["rows"].as_array().unwrap().len(), 2);
        assert_eq!(parsed["spec"]["probes"][0], "fock:1");
        assert!(parsed["metadata"]["version"].is_string());
    }
}
