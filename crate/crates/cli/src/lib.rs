//! `fockthermo` command line: `qfi`, `bounds`, `sweep` and `validate`.

pub mod commands;
pub mod config;
pub mod validate;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use commands::CliError;
use config::RunConfig;

#[derive(Debug, Parser)]
#[command(name = "fockthermo", version, about = "Thermometry with a dissipative bosonic probe")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Fisher information (or a bound) for each probe and method at one time.
    Qfi(Flags),
    /// Table of closed-form bounds, with simulated values when a numerical method is selected.
    Bounds(Flags),
    /// Sweep one parameter and write CSV plus a JSON mirror.
    Sweep(Flags),
    /// Run the invariant suite.
    Validate,
}

#[derive(Debug, Args)]
struct Flags {
    #[arg(long, allow_hyphen_values = true)]
    omega: Option<String>,
    #[arg(long = "T", value_name = "T", allow_hyphen_values = true)]
    temperature: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    gamma: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    g: Option<String>,
    #[arg(long)]
    rate_model: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    t: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    dt: Option<String>,
    #[arg(long, conflicts_with = "probes")]
    probe: Option<String>,
    /// Comma-separated; on the n axis `fock`, `squeezed` and `coherent` follow n.
    #[arg(long)]
    probes: Option<String>,
    /// Comma-separated methods: cfi, qfi, bound_fock_linear, ...
    #[arg(long)]
    method: Option<String>,
    /// n, temperature, g, gamma or time.
    #[arg(long)]
    axis: Option<String>,
    /// Comma list, or log:lo:hi:count / lin:lo:hi:count.
    #[arg(long)]
    axis_values: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    dim: Option<String>,
    #[arg(long)]
    out: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    workers: Option<String>,
    #[arg(long)]
    config: Option<PathBuf>,
}

impl Flags {
    fn overrides(&self) -> Vec<(&'static str, String)> {
        let pairs: [(&'static str, &Option<String>); 14] = [
            ("omega", &self.omega),
            ("T", &self.temperature),
            ("gamma", &self.gamma),
            ("g", &self.g),
            ("rate-model", &self.rate_model),
            ("t", &self.t),
            ("dt", &self.dt),
            ("probe", &self.probe),
            ("probes", &self.probes),
            ("method", &self.method),
            ("axis", &self.axis),
            ("axis-values", &self.axis_values),
            ("dim", &self.dim),
            ("workers", &self.workers),
        ];
        let mut out: Vec<_> = pairs.into_iter().filter_map(|(k, v)| v.clone().map(|v| (k, v))).collect();
        if let Some(o) = &self.out {
            out.push(("out", o.clone()));
        }
        out
    }

    fn resolve(&self, env_dim_max: Option<&str>) -> Result<RunConfig, CliError> {
        let text = match &self.config {
            Some(path) => Some(
                std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?,
            ),
            None => None,
        };
        Ok(RunConfig::resolve(text.as_deref(), &self.overrides(), env_dim_max)?)
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// process exit status.
pub fn run<I, T>(args: I, env_dim_max: Option<&str>, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 { out.write_all(rendered.as_bytes()) } else { err.write_all(rendered.as_bytes()) };
            return code;
        }
    };
    let result = match &cli.command {
        Command::Qfi(flags) => flags.resolve(env_dim_max).and_then(|cfg| commands::cmd_qfi(&cfg, out)),
        Command::Bounds(flags) => flags.resolve(env_dim_max).and_then(|cfg| commands::cmd_bounds(&cfg, out)),
        Command::Sweep(flags) => flags.resolve(env_dim_max).and_then(|cfg| commands::cmd_sweep(&cfg, out)),
        Command::Validate => commands::cmd_validate(out),
    };
    match result {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
