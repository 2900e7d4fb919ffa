use std::io::Write;
use std::path::{Path, PathBuf};

use fockthermo::bounds::{format_sig9, scaling_table};
use fockthermo::fisher::QfiRecord;
use fockthermo::sweep::{available_workers, evaluate_point, fit_scaling_exponent, run_sweep, write_atomic, Axis, ProbeTemplate};
use fockthermo::ProbeSpec;

use crate::config::{ConfigError, RunConfig};
use crate::validate::run_suite;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Config(#[from] ConfigError),
    #[error("{0}")]
    Core(#[from] fockthermo::Error),
    #[error("validation failed: {failed} of {total} checks")]
    Validation { failed: usize, total: usize },
}

impl CliError {
    /// 1 bad input, 2 numerical or i/o failure, 3 failed validation.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Config(_) => 1,
            CliError::Core(e) if e.is_numerical() || matches!(e, fockthermo::Error::Io(_)) => 2,
            CliError::Core(_) => 1,
            CliError::Validation { .. } => 3,
        }
    }
}

fn io(e: std::io::Error) -> CliError {
    CliError::Core(e.into())
}

fn fixed_probes(cfg: &RunConfig) -> Result<Vec<ProbeSpec>, CliError> {
    cfg.probes
        .iter()
        .map(|p| match p {
            ProbeTemplate::Fixed(spec) => Ok(*spec),
            other => Err(CliError::Usage(format!("probe '{other}' needs an explicit parameter here, e.g. fock:2"))),
        })
        .collect()
}

fn record_line(rec: &QfiRecord) -> String {
    format!(
        "probe={} method={} t={} value={} delta_t_min={} dim={} h_used={} leakage={} valid_short_time={}",
        rec.probe,
        rec.method,
        format_sig9(rec.t),
        format_sig9(rec.value),
        format_sig9(rec.delta_t_min()),
        rec.dim,
        format_sig9(rec.diagnostics.h_used),
        format_sig9(rec.diagnostics.leakage),
        rec.diagnostics.valid_short_time,
    )
}

pub fn cmd_qfi(cfg: &RunConfig, out: &mut dyn Write) -> Result<(), CliError> {
    let bath = cfg.bath()?;
    let settings = cfg.settings();
    let mut records = Vec::new();
    for probe in fixed_probes(cfg)? {
        for &method in &cfg.methods {
            let rec = evaluate_point(&probe, &bath, cfg.t, method, &settings)?;
            writeln!(out, "{}", record_line(&rec)).map_err(io)?;
            records.push(rec);
        }
    }
    if let Some(path) = &cfg.out {
        let json: Vec<_> = records
            .iter()
            .map(|r| serde_json::json!({ "record": r, "delta_t_min": r.delta_t_min() }))
            .collect();
        write_atomic(path, &serde_json::to_string_pretty(&json).expect("records serialise"))?;
    }
    Ok(())
}

pub fn cmd_bounds(cfg: &RunConfig, out: &mut dyn Write) -> Result<(), CliError> {
    let bath = cfg.bath()?;
    let settings = cfg.settings();
    let numerics = cfg.methods.iter().any(|m| m.is_numerical()).then_some(&settings);
    let table = scaling_table(&bath, &cfg.n_values, cfg.t, numerics)?;
    let csv = table.to_csv();
    out.write_all(csv.as_bytes()).map_err(io)?;
    if let Some(path) = &cfg.out {
        write_atomic(path, &csv)?;
    }
    Ok(())
}

fn json_path(csv: &Path) -> PathBuf {
    csv.with_extension("json")
}

pub fn cmd_sweep(cfg: &RunConfig, out: &mut dyn Write) -> Result<(), CliError> {
    let spec = cfg.sweep_spec();
    let workers = if cfg.workers == 0 { available_workers() } else { cfg.workers };
    let result = run_sweep(&spec, workers)?;
    let csv_path = cfg.out.clone().unwrap_or_else(|| PathBuf::from("sweep.csv"));
    result.write_csv(&csv_path)?;
    result.write_json(&json_path(&csv_path))?;
    writeln!(
        out,
        "{} rows ({} failed) on {} workers in {:.2} s -> {}",
        result.rows.len(),
        result.metadata.failed_rows,
        workers,
        result.metadata.wall_time_s,
        csv_path.display()
    )
    .map_err(io)?;
    if spec.axis == Axis::Time {
        let mut seen = Vec::new();
        for row in &result.rows {
            let key = (row.probe.clone(), row.method);
            if seen.contains(&key) {
                continue;
            }
            if let Ok(fit) = fit_scaling_exponent(&result.series(&key.0, key.1)) {
                writeln!(out, "slope {} {}: {} (r2 {})", key.0, key.1, format_sig9(fit.slope), format_sig9(fit.r_squared))
                    .map_err(io)?;
            }
            seen.push(key);
        }
    }
    for row in result.rows.iter().filter(|r| r.failed()) {
        writeln!(out, "failed: {} {} at {}: {}", row.probe, row.method, format_sig9(row.axis_value), row.error.as_deref().unwrap_or(""))
            .map_err(io)?;
    }
    Ok(())
}

pub fn cmd_validate(out: &mut dyn Write) -> Result<(), CliError> {
    let outcomes = run_suite();
    for o in &outcomes {
        let status = if o.passed { "PASS" } else { "FAIL" };
        writeln!(out, "[{status}] {}.{} ({:.2} s): {}", o.module, o.id, o.seconds, o.detail).map_err(io)?;
    }
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    writeln!(out, "{} of {} checks passed", outcomes.len() - failed, outcomes.len()).map_err(io)?;
    if failed > 0 {
        return Err(CliError::Validation { failed, total: outcomes.len() });
    }
    Ok(())
}
