//! Command-line front end: configuration loading, dispatch, and CSV output.

pub mod config;
pub mod run;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::Parser;

use config::{ConfigError, RunConfig, Settings};
use run::RunError;

#[derive(Debug, Parser)]
#[command(
    name = "periodic-kpp",
    version,
    about = "Minimal front speeds for the periodic Fisher-KPP equation",
    after_help = "Commands: speed, optimize, verify-equality, constancy, perturb, scan-period, simulate, stationary.\n\
                  Any flag may also be given as `key = value` in the --config file (flags win)."
)]
pub struct Cli {
    /// Command to run; may instead come from the config file.
    pub command: Option<String>,
    /// `key = value` file; `#` starts a comment.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Diffusion coefficient d(x): expression or Fourier record.
    #[arg(long, allow_hyphen_values = true)]
    pub d: Option<String>,
    /// Growth rate r(x): expression or Fourier record.
    #[arg(long, allow_hyphen_values = true)]
    pub r: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub period: Option<String>,
    /// Prescribed mean of r for optimize, constancy and perturb (default 1).
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<String>,
    /// Power of two, at least 16 (default 256).
    #[arg(long, allow_hyphen_values = true)]
    pub grid_size: Option<String>,
    /// CSV destination; standard output when absent.
    #[arg(long)]
    pub output: Option<String>,
    /// Comma-separated periods for scan-period.
    #[arg(long, allow_hyphen_values = true)]
    pub ls: Option<String>,
    /// `lo,hi,count`: geometric periods for scan-period (default 0.05,20,12).
    #[arg(long, allow_hyphen_values = true)]
    pub l_range: Option<String>,
    /// Comma-separated perturbation sizes (default -0.5,-0.1,0.1,0.5).
    #[arg(long, allow_hyphen_values = true)]
    pub epsilons: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub seed: Option<String>,
    /// Simulation domain is [-X, X] (default 400).
    #[arg(long, allow_hyphen_values = true)]
    pub half_width: Option<String>,
    /// Final simulation time (default 150).
    #[arg(long, allow_hyphen_values = true)]
    pub t_end: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub dt: Option<String>,
    /// Front level (default 0.01 times the mean of r).
    #[arg(long, allow_hyphen_values = true)]
    pub threshold: Option<String>,
    /// Simulation mesh points per period, a power of two (default 64).
    #[arg(long, allow_hyphen_values = true)]
    pub points_per_period: Option<String>,
    /// Time between front records (default 0.5).
    #[arg(long, allow_hyphen_values = true)]
    pub output_interval: Option<String>,
    /// File for the `t x u` snapshot dump of simulate.
    #[arg(long)]
    pub snapshots: Option<String>,
    /// Time between snapshots (default t_end / 10).
    #[arg(long, allow_hyphen_values = true)]
    pub snapshot_interval: Option<String>,
}

impl Cli {
    fn flag_settings(&self) -> Settings {
        let pairs = [
            ("command", &self.command),
            ("d", &self.d),
            ("r", &self.r),
            ("period", &self.period),
            ("alpha", &self.alpha),
            ("grid_size", &self.grid_size),
            ("output", &self.output),
            ("ls", &self.ls),
            ("l_range", &self.l_range),
            ("epsilons", &self.epsilons),
            ("seed", &self.seed),
            ("half_width", &self.half_width),
            ("t_end", &self.t_end),
            ("dt", &self.dt),
            ("threshold", &self.threshold),
            ("points_per_period", &self.points_per_period),
            ("output_interval", &self.output_interval),
            ("snapshots", &self.snapshots),
            ("snapshot_interval", &self.snapshot_interval),
        ];
        Settings(
            pairs
                .into_iter()
                .filter_map(|(k, v)| v.clone().map(|v| (k.to_string(), v)))
                .collect(),
        )
    }

    /// File settings overlaid with flags, then validated.
    pub fn load_config(&self) -> Result<RunConfig, ConfigError> {
        let base = match &self.config {
            Some(path) => Settings::read(path)?,
            None => Settings::default(),
        };
        base.overlay(self.flag_settings()).into_config()
    }
}

/// Full CLI entry point; returns the process exit code.
pub fn main_with_args<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = write!(stderr, "{}", e.render());
            return code;
        }
    };
    match run_cli(&cli, stdout) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

fn run_cli(cli: &Cli, stdout: &mut dyn Write) -> Result<(), RunError> {
    let config = cli.load_config()?;
    let report = run::execute(&config)?;
    match &config.output_path {
        Some(path) => run::write_file(path, &report.bytes),
        None => stdout.write_all(&report.bytes).map_err(|source| RunError::Output {
            path: "<stdout>".into(),
            source,
        }),
    }
}
