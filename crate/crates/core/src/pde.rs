//! Direct simulation of `u_t = (d u_x)_x + (r - u) u` on `[-X, X]` and the
//! periodic stationary state `p`.
//!
//! The simulation mesh is aligned with the coefficient grid: it has spacing
//! `L / P` with `P` points per period and nodes at integer multiples of the
//! spacing, so the coefficient samples are reused verbatim and the discrete
//! stationary state of [`stationary_state`] is an exact equilibrium of the
//! interior scheme.

use std::io::{self, Write};

use crate::coeffs::PeriodicCoefficient;
use crate::eigen::DiscretePair;
use crate::error::{Error, Result};
use crate::speed::{checked_means, minimal_speed};
use crate::tridiag::{solve_tridiagonal, CyclicTridiagonal};

pub const STATIONARY_TOLERANCE: f64 = 1e-8;
pub const MAX_NEWTON_STEPS: usize = 50;
pub const DEFAULT_POINTS_PER_PERIOD: usize = 64;
pub const NEGATIVITY_TOLERANCE: f64 = 1e-12;
/// Front-to-boundary distance, in periods, below which a fit is contaminated.
pub const CONTAMINATION_PERIODS: f64 = 5.0;

#[derive(Debug, Clone, PartialEq)]
pub struct StationaryState {
    pub period: f64,
    pub p: Vec<f64>,
    pub residual: f64,
    pub newton_steps: usize,
}

/// Damped Newton iteration for `(d p')' + (r - p) p = 0` on the periodic
/// grid, starting from `p = max(<r>_a, max r)`.
pub fn stationary_state(d: &PeriodicCoefficient, r: &PeriodicCoefficient) -> Result<StationaryState> {
    let (_, am) = checked_means(d, r)?;
    let pair = DiscretePair::new(d, r)?;
    // bands(0) is -D - diag(r).
    let (base, _) = pair.bands(0.0);
    let n = pair.grid_size();
    let rhs = |p: &[f64]| -> Vec<f64> {
        let dp = pair.flux_divergence(p);
        (0..n).map(|j| dp[j] + (pair.r[j] - p[j]) * p[j]).collect()
    };
    let norm = |v: &[f64]| v.iter().fold(0.0f64, |m, x| m.max(x.abs()));

    let mut p = vec![am.max(r.max()); n];
    let mut f = rhs(&p);
    let mut res = norm(&f);
    let mut steps = 0;
    while res >= STATIONARY_TOLERANCE {
        if steps == MAX_NEWTON_STEPS {
            return Err(Error::NewtonDivergence { steps, residual: res });
        }
        steps += 1;
        let jac = CyclicTridiagonal {
            lower: base.lower.iter().map(|v| -v).collect(),
            diag: (0..n).map(|j| -base.diag[j] - 2.0 * p[j]).collect(),
            upper: base.upper.iter().map(|v| -v).collect(),
        };
        let neg_f: Vec<f64> = f.iter().map(|v| -v).collect();
        let delta = jac.solve(&neg_f)?;
        let mut t = 1.0;
        loop {
            let trial: Vec<f64> = p.iter().zip(&delta).map(|(a, b)| a + t * b).collect();
            let f_trial = rhs(&trial);
            let res_trial = norm(&f_trial);
            if res_trial < res || t < 1e-6 {
                p = trial;
                f = f_trial;
                res = res_trial;
                break;
            }
            t *= 0.5;
        }
        if !res.is_finite() {
            return Err(Error::NewtonDivergence { steps, residual: res });
        }
    }
    let min = p.iter().copied().fold(f64::INFINITY, f64::min);
    if min <= 0.0 {
        return Err(Error::LostPositivity { min });
    }
    Ok(StationaryState {
        period: pair.period(),
        p,
        residual: res,
        newton_steps: steps,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InitialData {
    pub center: f64,
    pub half_width: f64,
    pub height: f64,
}

#[derive(Debug, Clone)]
pub struct SimulationConfig {
    pub d: PeriodicCoefficient,
    pub r: PeriodicCoefficient,
    pub domain_half_width: f64,
    /// Mesh resolution as points per period; must be a power of two.
    pub points_per_period: usize,
    pub dt: f64,
    pub t_end: f64,
    pub threshold: f64,
    pub fit_window: (f64, f64),
    pub initial_data: InitialData,
    /// Time between recorded front positions.
    pub output_interval: f64,
    /// Time between stored snapshots; `None` keeps only the final state.
    pub snapshot_interval: Option<f64>,
}

impl SimulationConfig {
    /// Defaults: 64 points per period, `dt = min(0.1, 0.25 dx)` (reduced if
    /// the reaction step needs it), `theta = 0.01 <r>_a`, fit window
    /// `(0.5, 1.0)`, and a plateau of height `<r>_a` over one period at 0.
    pub fn new(
        d: PeriodicCoefficient,
        r: PeriodicCoefficient,
        domain_half_width: f64,
        t_end: f64,
    ) -> Result<Self> {
        let (_, am) = checked_means(&d, &r)?;
        let period = d.period();
        let dx = period / DEFAULT_POINTS_PER_PERIOD as f64;
        let initial_data = InitialData {
            center: 0.0,
            half_width: period,
            height: am,
        };
        let m = initial_data.height.max(r.max());
        let dt = 0.1f64.min(0.25 * dx).min(0.5 * reaction_step_bound(m, r.min()));
        Ok(SimulationConfig {
            d,
            r,
            domain_half_width,
            points_per_period: DEFAULT_POINTS_PER_PERIOD,
            dt,
            t_end,
            threshold: 0.01 * am,
            fit_window: (0.5, 1.0),
            initial_data,
            output_interval: 0.5,
            snapshot_interval: None,
        })
    }

    pub fn spacing(&self) -> f64 {
        self.d.period() / self.points_per_period as f64
    }

    /// Nodes `i dx` for `|i dx| <= X`, boundary nodes included.
    pub fn nodes(&self) -> Vec<f64> {
        let dx = self.spacing();
        let k = (self.domain_half_width / dx).floor() as i64;
        (-k..=k).map(|i| i as f64 * dx).collect()
    }

    pub fn mesh(&self) -> usize {
        self.nodes().len()
    }

    pub fn initial_value(&self, x: f64) -> f64 {
        let init = &self.initial_data;
        if (x - init.center).abs() <= init.half_width {
            init.height
        } else {
            0.0
        }
    }
}

/// Largest `dt` for which `u + dt (r - u) u` is monotone in `u` on `[0, m]`.
pub fn reaction_step_bound(m: f64, r_min: f64) -> f64 {
    1.0 / (2.0 * m + (-r_min).max(0.0))
}

#[derive(Debug, Clone, PartialEq)]
pub struct Snapshot {
    pub t: f64,
    pub u: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FrontTrajectory {
    pub times: Vec<f64>,
    pub positions: Vec<f64>,
    pub fitted_speed: f64,
    pub fit_intercept: f64,
    pub slope_standard_error: f64,
    pub fit_residual: f64,
    pub boundary_contamination: bool,
}

#[derive(Debug, Clone)]
pub struct SimulationRun {
    pub nodes: Vec<f64>,
    pub dt: f64,
    pub steps: usize,
    pub snapshots: Vec<Snapshot>,
    pub trajectory: FrontTrajectory,
    pub stationary: StationaryState,
    /// Measure of `{u >= theta}` at each recorded time.
    pub level_set_measure: Vec<f64>,
    pub max_u: f64,
}

impl SimulationRun {
    /// Rows `t x u`, one blank-line-separated block per snapshot.
    pub fn write_snapshots(&self, mut w: impl Write) -> io::Result<()> {
        for (i, snap) in self.snapshots.iter().enumerate() {
            if i > 0 {
                writeln!(w)?;
            }
            for (x, u) in self.nodes.iter().zip(&snap.u) {
                writeln!(w, "{:.16e} {:.16e} {:.16e}", snap.t, x, u)?;
            }
        }
        Ok(())
    }

    pub fn final_state(&self) -> &Snapshot {
        self.snapshots.last().expect("final state is always stored")
    }
}

struct Prepared {
    nodes: Vec<f64>,
    /// `d` at `x_{i+1/2}` for each node `i`.
    d_mid: Vec<f64>,
    r: Vec<f64>,
    dx: f64,
    dt: f64,
    steps: usize,
    stationary: StationaryState,
}

fn validate(config: &SimulationConfig) -> Result<Prepared> {
    let invalid = |msg: String| Err(Error::InvalidSimulation(msg));
    let period = config.d.period();
    for (name, v) in [
        ("domain_half_width", config.domain_half_width),
        ("dt", config.dt),
        ("t_end", config.t_end),
        ("threshold", config.threshold),
        ("output_interval", config.output_interval),
    ] {
        if !(v.is_finite() && v > 0.0) {
            return Err(Error::NotPositive { name, value: v });
        }
    }
    if let Some(s) = config.snapshot_interval {
        if !(s.is_finite() && s > 0.0) {
            return Err(Error::NotPositive { name: "snapshot_interval", value: s });
        }
    }
    let (a, b) = config.fit_window;
    if !(0.0 <= a && a < b && b <= 1.0) {
        return invalid(format!("fit window ({a}, {b}) must satisfy 0 <= start < end <= 1"));
    }
    let init = config.initial_data;
    if !(init.height.is_finite() && init.height > 0.0 && init.half_width > 0.0) {
        return invalid("initial data is identically zero".into());
    }
    if !init.center.is_finite() || !init.half_width.is_finite() {
        return invalid("initial data must be finite".into());
    }

    let p_count = config.points_per_period;
    let (d, r) = if config.d.grid_size() == p_count && config.r.grid_size() == p_count {
        (config.d.clone(), config.r.clone())
    } else {
        (config.d.resampled(p_count)?, config.r.resampled(p_count)?)
    };
    d.same_grid(&r)?;
    let stationary = stationary_state(&d, &r).map_err(|e| e.context("stationary state"))?;
    let p_min = stationary.p.iter().copied().fold(f64::INFINITY, f64::min);
    let p_max = stationary.p.iter().copied().fold(0.0, f64::max);
    if config.threshold >= p_min {
        return invalid(format!(
            "threshold {} must lie below min p = {p_min}",
            config.threshold
        ));
    }
    if init.height <= config.threshold {
        return invalid("initial height must exceed the front threshold".into());
    }
    let bound = reaction_step_bound(init.height.max(p_max), r.min());
    if config.dt > bound {
        return invalid(format!("dt = {} exceeds the stability bound {bound}", config.dt));
    }

    let nodes = config.nodes();
    if nodes.len() < 3 {
        return invalid("domain holds fewer than three mesh points".into());
    }
    let x_max = *nodes.last().expect("non-empty mesh");
    let expected = minimal_speed(&d, &r).map_err(|e| e.context("expected speed"))?.c_star;
    let reach = init.center.abs() + init.half_width + expected * config.t_end;
    let needed = reach + CONTAMINATION_PERIODS * period;
    if x_max < needed {
        return invalid(format!(
            "domain half-width {} too small: the front is expected to travel to {reach:.3}, \
             which needs X >= {needed:.3}",
            config.domain_half_width
        ));
    }
    if nodes.iter().all(|&x| config.initial_value(x) == 0.0) {
        return invalid("initial data vanishes on every mesh point".into());
    }

    let dx = config.spacing();
    let mid = d.midpoints();
    let wrap = |x: f64| -> usize { ((x / dx).round() as i64).rem_euclid(p_count as i64) as usize };
    let d_mid = nodes.iter().map(|&x| mid[wrap(x)]).collect();
    let r_nodes = nodes.iter().map(|&x| r.samples()[wrap(x)]).collect();
    // Shrink dt so that the output interval is a whole number of steps.
    let per_record = (config.output_interval / config.dt - 1e-9).ceil().max(1.0);
    let dt = config.output_interval / per_record;
    let steps = (config.t_end / dt - 1e-9).ceil() as usize;
    Ok(Prepared {
        nodes,
        d_mid,
        r: r_nodes,
        dx,
        dt,
        steps,
        stationary,
    })
}

/// Rightmost `x` with `u >= theta`, interpolated linearly into the next cell.
pub fn front_position(nodes: &[f64], u: &[f64], theta: f64) -> Option<f64> {
    let j = u.iter().rposition(|&v| v >= theta)?;
    if j + 1 == u.len() {
        return Some(nodes[j]);
    }
    let frac = (u[j] - theta) / (u[j] - u[j + 1]);
    Some(nodes[j] + frac * (nodes[j + 1] - nodes[j]))
}

/// Least-squares line `y = a + b t`; returns `(b, a, se(b), rms)`.
fn linear_fit(t: &[f64], y: &[f64]) -> (f64, f64, f64, f64) {
    let n = t.len() as f64;
    let tm = t.iter().sum::<f64>() / n;
    let ym = y.iter().sum::<f64>() / n;
    let stt: f64 = t.iter().map(|v| (v - tm).powi(2)).sum();
    let sty: f64 = t.iter().zip(y).map(|(a, b)| (a - tm) * (b - ym)).sum();
    let slope = sty / stt;
    let intercept = ym - slope * tm;
    let ssr: f64 = t
        .iter()
        .zip(y)
        .map(|(a, b)| (b - intercept - slope * a).powi(2))
        .sum();
    let se = if t.len() > 2 { (ssr / (n - 2.0) / stt).sqrt() } else { f64::INFINITY };
    (slope, intercept, se, (ssr / n).sqrt())
}

/// IMEX stepping: backward Euler for the flux-form diffusion, explicit
/// reaction, `u = 0` at `x = +-X`. The step is reduced to divide the output
/// interval evenly; the run stops at the first step at or after `t_end`.
pub fn simulate(config: &SimulationConfig) -> Result<SimulationRun> {
    let prep = validate(config)?;
    let Prepared { nodes, d_mid, r, dx, dt, steps, stationary } = prep;
    let m = nodes.len();
    let n_int = m - 2;
    let k = dt / (dx * dx);
    let lower: Vec<f64> = (1..m - 1).map(|i| -k * d_mid[i - 1]).collect();
    let upper: Vec<f64> = (1..m - 1).map(|i| -k * d_mid[i]).collect();
    let diag: Vec<f64> = (1..m - 1).map(|i| 1.0 + k * (d_mid[i - 1] + d_mid[i])).collect();

    let mut u: Vec<f64> = nodes.iter().map(|&x| config.initial_value(x)).collect();
    u[0] = 0.0;
    u[m - 1] = 0.0;
    let record_every = ((config.output_interval / dt).round() as usize).max(1);
    let snapshot_every = config
        .snapshot_interval
        .map(|s| ((s / dt).round() as usize).max(1));
    let theta = config.threshold;
    let fit_start = config.fit_window.0 * config.t_end;
    let fit_end = config.fit_window.1 * config.t_end;
    let x_max = nodes[m - 1];
    let guard = CONTAMINATION_PERIODS * config.d.period();

    let mut times = Vec::new();
    let mut positions = Vec::new();
    let mut measure = Vec::new();
    let mut snapshots = Vec::new();
    let mut contamination = false;
    let mut max_u = u.iter().copied().fold(0.0, f64::max);
    let mut rhs = vec![0.0; n_int];
    let mut record = |step: usize, u: &[f64]| -> Result<()> {
        let t = step as f64 * dt;
        let pos = front_position(&nodes, u, theta).ok_or_else(|| {
            Error::InvalidSimulation(format!("solution fell below the threshold everywhere at t = {t}"))
        })?;
        if t >= fit_start - 0.5 * dt && t <= fit_end + 0.5 * dt && x_max - pos < guard {
            contamination = true;
        }
        times.push(t);
        positions.push(pos);
        measure.push(u.iter().filter(|&&v| v >= theta).count() as f64 * dx);
        Ok(())
    };
    record(0, &u)?;
    if snapshot_every.is_some() {
        snapshots.push(Snapshot { t: 0.0, u: u.clone() });
    }
    for step in 1..=steps {
        for i in 1..m - 1 {
            rhs[i - 1] = u[i] + dt * (r[i] - u[i]) * u[i];
        }
        let next = solve_tridiagonal(&lower, &diag, &upper, &rhs)?;
        u[1..m - 1].copy_from_slice(&next);
        let t = step as f64 * dt;
        for &v in &u {
            if v < -NEGATIVITY_TOLERANCE || !v.is_finite() {
                return Err(Error::NegativeSolution { value: v, t });
            }
            max_u = max_u.max(v);
        }
        if step % record_every == 0 || step == steps {
            record(step, &u)?;
        }
        let snap_due = snapshot_every.map_or(false, |s| step % s == 0);
        if snap_due || step == steps {
            snapshots.push(Snapshot { t, u: u.clone() });
        }
    }
    if contamination {
        return Err(Error::BoundaryContamination);
    }

    let window: Vec<usize> = (0..times.len())
        .filter(|&i| times[i] >= fit_start - 0.5 * dt && times[i] <= fit_end + 0.5 * dt)
        .collect();
    if window.len() < 3 {
        return Err(Error::InvalidSimulation(
            "fewer than three front records fall in the fit window".into(),
        ));
    }
    let wt: Vec<f64> = window.iter().map(|&i| times[i]).collect();
    let wy: Vec<f64> = window.iter().map(|&i| positions[i]).collect();
    let (slope, intercept, se, rms) = linear_fit(&wt, &wy);
    Ok(SimulationRun {
        nodes,
        dt,
        steps,
        snapshots,
        trajectory: FrontTrajectory {
            times,
            positions,
            fitted_speed: slope,
            fit_intercept: intercept,
            slope_standard_error: se,
            fit_residual: rms,
            boundary_contamination: contamination,
        },
        stationary,
        level_set_measure: measure,
        max_u,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpreadingEstimate {
    pub speed: f64,
    /// Three standard errors of the fitted slope.
    pub ci_halfwidth: f64,
    /// Largest `u` along `x = center + 1.2 speed t` over the last quarter.
    pub ahead_max: f64,
    /// Smallest `u` along `x = center + 0.8 speed t` over the last quarter.
    pub behind_min: f64,
    pub rays_consistent: bool,
}

/// Linear interpolation of `u` at `x`; `None` outside the mesh.
fn sample_at(nodes: &[f64], u: &[f64], x: f64) -> Option<f64> {
    let dx = nodes[1] - nodes[0];
    let s = (x - nodes[0]) / dx;
    if s < 0.0 || s > (nodes.len() - 1) as f64 {
        return None;
    }
    let i = (s.floor() as usize).min(nodes.len() - 2);
    let f = s - i as f64;
    Some((1.0 - f) * u[i] + f * u[i + 1])
}

/// Fitted spreading speed plus a check of the ray dichotomy: ahead of the
/// front (`c = 1.2 speed`) the solution must be below `1e-6`, behind it
/// (`c = 0.8 speed`) above the threshold.
pub fn spreading_speed_estimate(config: &SimulationConfig) -> Result<SpreadingEstimate> {
    let mut config = config.clone();
    config.snapshot_interval = Some(config.output_interval);
    let run = simulate(&config)?;
    let speed = run.trajectory.fitted_speed;
    let center = config.initial_data.center;
    let late = 0.75 * config.t_end;
    let mut ahead_max = 0.0f64;
    let mut behind_min = f64::INFINITY;
    for snap in run.snapshots.iter().filter(|s| s.t >= late) {
        if let Some(v) = sample_at(&run.nodes, &snap.u, center + 1.2 * speed * snap.t) {
            ahead_max = ahead_max.max(v);
        }
        if let Some(v) = sample_at(&run.nodes, &snap.u, center + 0.8 * speed * snap.t) {
            behind_min = behind_min.min(v);
        }
    }
    Ok(SpreadingEstimate {
        speed,
        ci_halfwidth: 3.0 * run.trajectory.slope_standard_error,
        ahead_max,
        behind_min,
        rays_consistent: ahead_max < 1e-6 && behind_min > config.threshold,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffs::parse_coefficient;
    use std::f64::consts::TAU;

    fn c(s: &str, n: usize) -> PeriodicCoefficient {
        parse_coefficient(s, TAU, n).unwrap()
    }

    #[test]
    fn constant_stationary_states() {
        let s = stationary_state(&c("1", 64), &c("1", 64)).unwrap();
        assert!(s.p.iter().all(|v| (v - 1.0).abs() < 1e-14));
        assert_eq!(s.newton_steps, 0);
        let s = stationary_state(&c("2", 64), &c("3", 64)).unwrap();
        assert!(s.p.iter().all(|v| (v - 3.0).abs() < 1e-12));
    }

    #[test]
    fn nonconstant_stationary_state() {
        let s = stationary_state(&c("1/(1 - 0.5*sin(x))", 256), &c("1 + 0.5*sin(x)", 256)).unwrap();
        assert!(s.residual < STATIONARY_TOLERANCE);
        let (lo, hi) = s.p.iter().fold((f64::INFINITY, 0.0f64), |(a, b), v| (a.min(*v), b.max(*v)));
        assert!(lo > 0.0 && hi - lo > 0.05, "{lo} {hi}");
    }

    #[test]
    fn front_interpolation() {
        let nodes = [0.0, 1.0, 2.0, 3.0];
        assert_eq!(front_position(&nodes, &[1.0, 0.5, 0.0, 0.0], 0.25), Some(1.5));
        assert_eq!(front_position(&nodes, &[0.0; 4], 0.25), None);
    }

    #[test]
    fn fit_recovers_line() {
        let t = [0.0, 1.0, 2.0, 3.0];
        let y: Vec<f64> = t.iter().map(|v| 1.0 + 2.0 * v).collect();
        let (b, a, se, rms) = linear_fit(&t, &y);
        assert!((b - 2.0).abs() < 1e-14 && (a - 1.0).abs() < 1e-14);
        assert!(se < 1e-14 && rms < 1e-14);
    }

    #[test]
    fn zero_initial_data_rejected() {
        let mut cfg = SimulationConfig::new(c("1", 64), c("1", 64), 100.0, 10.0).unwrap();
        cfg.initial_data.height = 0.0;
        assert!(matches!(simulate(&cfg), Err(Error::InvalidSimulation(_))));
    }

    #[test]
    fn small_domain_rejected() {
        let cfg = SimulationConfig::new(c("1", 64), c("1", 64), 60.0, 30.0).unwrap();
        assert!(matches!(simulate(&cfg), Err(Error::InvalidSimulation(_))));
    }

    #[test]
    fn short_homogeneous_run() {
        let mut cfg = SimulationConfig::new(c("1", 64), c("1", 64), 120.0, 30.0).unwrap();
        cfg.snapshot_interval = Some(10.0);
        let run = simulate(&cfg).unwrap();
        assert_eq!(run.snapshots.len(), 4);
        assert!(run.max_u <= 1.0 + 1e-9);
        let speed = run.trajectory.fitted_speed;
        assert!((speed - 2.0).abs() < 0.2, "{speed}");
        let mut buf = Vec::new();
        run.write_snapshots(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.split("\n\n").count(), 4);
        assert!(text.starts_with("0.0000000000000000e0 "));
    }
}
