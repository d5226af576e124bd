//! Dispatch of a validated [`RunConfig`] and CSV rendering.

use std::fs;
use std::io;
use std::path::Path;

use periodic_kpp::eigen::{EIGENVECTOR_TOLERANCE, RESIDUAL_TOLERANCE};
use periodic_kpp::pde::STATIONARY_TOLERANCE;
use periodic_kpp::*;
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::config::{Command, ConfigError, RunConfig};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Error)]
pub enum RunError {
    #[error("config: {0}")]
    Config(#[from] ConfigError),
    #[error("{stage}: {source}")]
    Module {
        stage: &'static str,
        #[source]
        source: Error,
    },
    #[error("output: cannot write {path}: {source}")]
    Output {
        path: String,
        #[source]
        source: io::Error,
    },
}

impl RunError {
    /// 1 for invalid input, 2 for numerical or I/O failure.
    pub fn exit_code(&self) -> u8 {
        match self {
            RunError::Config(_) => 1,
            RunError::Module { source, .. } if source.is_precondition() => 1,
            _ => 2,
        }
    }
}

fn stage<T>(name: &'static str, r: Result<T>) -> Result<T, RunError> {
    r.map_err(|source| RunError::Module { stage: name, source })
}

/// A rendered report: CSV body plus `#` footer lines.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CsvReport {
    pub bytes: Vec<u8>,
}

struct Table {
    writer: csv::Writer<Vec<u8>>,
    footer: Vec<(String, String)>,
}

impl Table {
    fn new(header: &[&str]) -> Self {
        let mut writer = csv::Writer::from_writer(Vec::new());
        writer.write_record(header).expect("in-memory write");
        Table { writer, footer: Vec::new() }
    }

    fn row(&mut self, fields: &[String]) {
        self.writer.write_record(fields).expect("in-memory write");
    }

    fn note(&mut self, key: &str, value: impl ToString) {
        self.footer.push((key.to_string(), value.to_string()));
    }

    fn finish(self, config: &RunConfig) -> CsvReport {
        let mut bytes = self.writer.into_inner().expect("in-memory flush");
        let mut lines = self.footer;
        lines.push(("command".into(), config.command.to_string()));
        lines.push(("grid_size".into(), config.grid_size.to_string()));
        lines.push((
            "tolerances".into(),
            format!(
                "eigenvector {EIGENVECTOR_TOLERANCE:e}; eigen_residual {RESIDUAL_TOLERANCE:e}; \
                 lambda_search {:e}; stationary_residual {STATIONARY_TOLERANCE:e}",
                SpeedOptions::default().lambda_rel_tol
            ),
        ));
        lines.push(("version".into(), format!("periodic-kpp {VERSION}")));
        lines.push(("input_sha256".into(), input_hash(config)));
        for (k, v) in lines {
            bytes.extend_from_slice(format!("# {k} = {v}\n").as_bytes());
        }
        CsvReport { bytes }
    }
}

/// SHA-256 of the canonical `key=value` lines of the effective settings.
pub fn input_hash(config: &RunConfig) -> String {
    let mut h = Sha256::new();
    for (k, v) in &config.canonical {
        h.update(format!("{k}={v}\n").as_bytes());
    }
    hex::encode(h.finalize())
}

fn num(x: f64) -> String {
    format!("{x:e}")
}

fn coefficient(spec: &str, config: &RunConfig, n: usize, name: &'static str) -> Result<PeriodicCoefficient, RunError> {
    stage(name, parse_coefficient(spec, config.period, n))
}

fn pair(config: &RunConfig, n: usize) -> Result<(PeriodicCoefficient, PeriodicCoefficient), RunError> {
    let d = coefficient(&config.d_spec, config, n, "coefficient d")?;
    let r_spec = config.r_spec.as_deref().expect("validated: r present");
    let r = coefficient(r_spec, config, n, "coefficient r")?;
    Ok((d, r))
}

/// Runs the computation and returns the CSV report; snapshot dumps for
/// `simulate` are written to their own path as a side effect.
pub fn execute(config: &RunConfig) -> Result<CsvReport, RunError> {
    let n = config.grid_size;
    let table = match config.command {
        Command::Speed => {
            let (d, r) = pair(config, n)?;
            let s = stage("minimal speed", minimal_speed(&d, &r))?;
            let mut t = Table::new(&["c_star", "lambda_star", "lower_bound", "gap", "grid_size", "richardson_estimate"]);
            t.row(&[
                num(s.c_star),
                num(s.lambda_star),
                num(s.lower_bound),
                num(s.c_star - s.lower_bound),
                s.grid_size.to_string(),
                num(s.richardson_estimate),
            ]);
            t.note("k_at_lambda_star", num(s.k_at_star));
            t.note("lambda_bracket", format!("{} {}", num(s.bracket.0), num(s.bracket.1)));
            t
        }
        Command::Optimize => {
            let d = coefficient(&config.d_spec, config, n, "coefficient d")?;
            let r_d = stage("optimal growth", optimal_growth(&d, config.alpha))?;
            let residual = stage("condition residual", condition_residual(&d, &r_d))?;
            let mut t = Table::new(&["x", "r_d"]);
            for (x, v) in d.nodes().zip(r_d.samples()) {
                t.row(&[num(x), num(*v)]);
            }
            t.note("alpha", num(config.alpha));
            t.note("mean_r_d", num(means(&r_d).arithmetic_mean));
            t.note("condition_residual", num(residual));
            t
        }
        Command::VerifyEquality => {
            let (d, r) = pair(config, n)?;
            let rep = stage("equality report", equality_report(&d, &r))?;
            let mut t = Table::new(&[
                "condition_residual",
                "speed_gap",
                "lambda0",
                "eigenfunction_deviation",
                "c_star",
                "lambda_star",
            ]);
            t.row(&[
                num(rep.condition_residual),
                num(rep.speed_gap),
                num(rep.lambda0),
                num(rep.eigenfunction_deviation),
                num(rep.speed.c_star),
                num(rep.speed.lambda_star),
            ]);
            t
        }
        Command::Constancy => {
            let d = coefficient(&config.d_spec, config, n, "coefficient d")?;
            let rep = stage("constancy test", constancy_test(&d, config.alpha))?;
            let mut t = Table::new(&["deviation", "verdict"]);
            let verdict = match rep.verdict {
                Verdict::Constant => "constant",
                Verdict::Nonconstant => "nonconstant",
            };
            t.row(&[num(rep.deviation), verdict.to_string()]);
            t.note("alpha", num(config.alpha));
            t
        }
        Command::Perturb => {
            let d = coefficient(&config.d_spec, config, n, "coefficient d")?;
            let study = stage(
                "perturbation study",
                perturbation_study(&d, config.alpha, &config.epsilons, config.seed),
            )?;
            let mut t = Table::new(&["eta_id", "epsilon", "speed", "delta"]);
            for trial in &study.trials {
                t.row(&[trial.eta_id.to_string(), num(trial.epsilon), num(trial.speed), num(trial.delta)]);
            }
            t.note("base_speed", num(study.base_speed));
            t.note("min_delta", num(study.min_delta));
            t.note("seed", config.seed);
            t
        }
        Command::ScanPeriod => {
            let (d, r) = pair(config, n)?;
            let scan = stage("period scan", period_scan(&d, &r, &config.ls))?;
            let mut t = Table::new(&["L", "c_star_L", "lower_bound"]);
            for (l, c) in scan.ls.iter().zip(&scan.speeds) {
                t.row(&[num(*l), num(*c), num(scan.limit_value)]);
            }
            let flag = if scan.curvature_positive() {
                "positive"
            } else if scan.curvature_vanishes() {
                "vanishing"
            } else {
                "negative"
            };
            t.note("extrapolated_c_star_L", scan.extrapolated.iter().map(|c| num(*c)).collect::<Vec<_>>().join(" "));
            t.note("second_difference", num(scan.second_difference_at_zero));
            t.note("second_difference_tolerance", num(scan.second_difference_tolerance));
            t.note("second_difference_flag", flag);
            t
        }
        Command::Simulate => {
            let sim = &config.simulation;
            let (d, r) = pair(config, sim.points_per_period)?;
            let mut cfg = stage("simulation setup", SimulationConfig::new(d, r, sim.half_width, sim.t_end))?;
            cfg.points_per_period = sim.points_per_period;
            cfg.output_interval = sim.output_interval;
            if let Some(dt) = sim.dt {
                cfg.dt = dt;
            }
            if let Some(theta) = sim.threshold {
                cfg.threshold = theta;
            }
            if sim.snapshots.is_some() {
                cfg.snapshot_interval = Some(sim.snapshot_interval.unwrap_or(sim.t_end / 10.0));
            }
            let run = stage("simulation", simulate(&cfg))?;
            if let Some(path) = &sim.snapshots {
                let mut buf = Vec::new();
                run.write_snapshots(&mut buf).expect("in-memory write");
                write_file(path, &buf)?;
            }
            let traj = &run.trajectory;
            let mut t = Table::new(&["t", "front_position"]);
            for (time, x) in traj.times.iter().zip(&traj.positions) {
                t.row(&[num(*time), num(*x)]);
            }
            t.note("fitted_speed", num(traj.fitted_speed));
            t.note("ci_halfwidth", num(3.0 * traj.slope_standard_error));
            t.note("fit_residual", num(traj.fit_residual));
            t.note("boundary_contamination", traj.boundary_contamination);
            t.note("dt", num(run.dt));
            t.note("mesh", run.nodes.len());
            t.note("threshold", num(cfg.threshold));
            t
        }
        Command::Stationary => {
            let (d, r) = pair(config, n)?;
            let s = stage("stationary state", stationary_state(&d, &r))?;
            let mut t = Table::new(&["x", "p"]);
            for (x, p) in d.nodes().zip(&s.p) {
                t.row(&[num(x), num(*p)]);
            }
            t.note("residual", num(s.residual));
            t.note("newton_steps", s.newton_steps);
            t
        }
    };
    Ok(table.finish(config))
}

pub fn write_file(path: &Path, bytes: &[u8]) -> Result<(), RunError> {
    fs::write(path, bytes).map_err(|source| RunError::Output {
        path: path.display().to_string(),
        source,
    })
}
