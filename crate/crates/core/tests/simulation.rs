mod common;

use common::TAU;
use periodic_kpp::pde::front_position;
use periodic_kpp::*;

fn c(s: &str, n: usize) -> PeriodicCoefficient {
    parse_coefficient(s, TAU, n).unwrap()
}

/// Explicit Euler relaxation of the semi-discrete periodic problem
/// `p' = (d p_x)_x + (r - p) p`, with its own flux-form stencil.
fn relaxed_state(d: impl Fn(f64) -> f64, r: impl Fn(f64) -> f64, n: usize) -> Vec<f64> {
    let h = TAU / n as f64;
    let dm: Vec<f64> = (0..n).map(|j| d((j as f64 + 0.5) * h)).collect();
    let rv: Vec<f64> = (0..n).map(|j| r(j as f64 * h)).collect();
    let dmax = dm.iter().copied().fold(0.0, f64::max);
    let dt = 0.4 * h * h / dmax;
    let mut p = vec![1.0; n];
    for _ in 0..2_000_000 {
        let next: Vec<f64> = (0..n)
            .map(|j| {
                let (jm, jp) = ((j + n - 1) % n, (j + 1) % n);
                let flux = (dm[j] * (p[jp] - p[j]) - dm[jm] * (p[j] - p[jm])) / (h * h);
                p[j] + dt * (flux + (rv[j] - p[j]) * p[j])
            })
            .collect();
        let change = next.iter().zip(&p).fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
        p = next;
        if change < 1e-13 * dt {
            break;
        }
    }
    p
}

#[test]
fn stationary_state_matches_relaxation() {
    let n = 64;
    let s = stationary_state(&c("1/(1 - 0.5*sin(x))", n), &c("1 + 0.5*sin(x)", n)).unwrap();
    let p = relaxed_state(|x| 1.0 / (1.0 - 0.5 * x.sin()), |x| 1.0 + 0.5 * x.sin(), n);
    let diff = s.p.iter().zip(&p).fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
    assert!(diff < 1e-6, "{diff}");
    assert!(s.residual < 1e-8);
    assert!(s.p.iter().all(|v| *v > 0.0));
}

#[test]
fn stationary_state_rejects_bad_inputs() {
    assert!(stationary_state(&c("1", 64), &c("-1", 64)).unwrap_err().is_precondition());
    assert!(stationary_state(&c("sin(x)", 64), &c("1", 64)).unwrap_err().is_precondition());
}

fn checked_run(d: &str, r: &str) -> (SimulationRun, f64) {
    let cfg = SimulationConfig::new(c(d, 64), c(r, 64), 400.0, 150.0).unwrap();
    let run = simulate(&cfg).unwrap();
    let traj = &run.trajectory;
    assert!(!traj.boundary_contamination);

    let u0_max = cfg.initial_data.height;
    let p_max = run.stationary.p.iter().copied().fold(0.0, f64::max);
    assert!(run.max_u <= u0_max.max(p_max) + 1e-9, "{} vs {}", run.max_u, p_max);

    let dx = cfg.spacing();
    let fit_start = cfg.fit_window.0 * cfg.t_end;
    for w in traj.times.windows(2).zip(traj.positions.windows(2)) {
        if w.0[0] >= fit_start {
            assert!(w.1[1] >= w.1[0] - dx, "front moved back at t = {}", w.0[1]);
        }
    }
    let spread_from = run
        .level_set_measure
        .iter()
        .position(|m| *m > 3.0 * TAU)
        .unwrap();
    for w in run.level_set_measure[spread_from..].windows(2) {
        assert!(w[1] >= w[0], "level set shrank: {} -> {}", w[0], w[1]);
    }

    // One period around the starting plateau has settled onto p.
    let u = &run.final_state().u;
    let center = run.nodes.len() / 2;
    let per = run.stationary.p.len();
    for i in center..center + per {
        let j = (run.nodes[i] / dx).round().rem_euclid(per as f64) as usize;
        assert!((u[i] - run.stationary.p[j]).abs() < 1e-3);
    }
    let speed = minimal_speed(&c(d, 256), &c(r, 256)).unwrap().c_star;
    (run, speed)
}

#[test]
fn homogeneous_front_runs_at_two() {
    let (run, speed) = checked_run("1", "1");
    assert!((run.trajectory.fitted_speed - speed).abs() / speed < 0.05);
}

#[test]
fn periodic_fronts_match_eigen_route() {
    for (d, r) in [("1/(1 - 0.5*sin(x))", "1 + 0.5*sin(x)"), ("1", "1 + 0.5*sin(x)")] {
        let (run, speed) = checked_run(d, r);
        let rel = (run.trajectory.fitted_speed - speed).abs() / speed;
        assert!(rel < 0.05, "{d} | {r}: {rel}");
    }
}

#[test]
fn ray_dichotomy_holds() {
    let cfg = SimulationConfig::new(c("1", 64), c("1", 64), 300.0, 100.0).unwrap();
    let est = spreading_speed_estimate(&cfg).unwrap();
    assert!((est.speed - 2.0).abs() < 0.1);
    assert!(est.ci_halfwidth < 0.05);
    assert!(est.rays_consistent, "{est:?}");
}

#[test]
fn snapshots_are_plain_columns() {
    let mut cfg = SimulationConfig::new(c("1", 16), c("1", 16), 80.0, 20.0).unwrap();
    cfg.snapshot_interval = Some(10.0);
    let run = simulate(&cfg).unwrap();
    let mut out = Vec::new();
    run.write_snapshots(&mut out).unwrap();
    let text = String::from_utf8(out).unwrap();
    let blocks: Vec<&str> = text.trim_end().split("\n\n").collect();
    assert_eq!(blocks.len(), 3);
    for block in blocks {
        assert_eq!(block.lines().count(), run.nodes.len());
        for line in block.lines() {
            let cols: Vec<&str> = line.split(' ').collect();
            assert_eq!(cols.len(), 3);
            for col in cols {
                let mantissa = col.split('e').next().unwrap().trim_start_matches('-');
                assert_eq!(mantissa.chars().filter(char::is_ascii_digit).count(), 17);
                col.parse::<f64>().unwrap();
            }
        }
    }
}

#[test]
fn invalid_configs_are_preconditions() {
    let base = SimulationConfig::new(c("1", 64), c("1", 64), 200.0, 50.0).unwrap();
    let mut cases = Vec::new();
    let mut cfg = base.clone();
    cfg.initial_data.height = 0.0;
    cases.push(cfg);
    let mut cfg = base.clone();
    cfg.dt = 2.0;
    cases.push(cfg);
    let mut cfg = base.clone();
    cfg.threshold = 1.5;
    cases.push(cfg);
    let mut cfg = base.clone();
    cfg.fit_window = (0.8, 0.2);
    cases.push(cfg);
    let mut cfg = base.clone();
    cfg.domain_half_width = 50.0;
    cases.push(cfg);
    let mut cfg = base;
    cfg.initial_data.center = 1e4;
    cases.push(cfg);
    for cfg in cases {
        assert!(simulate(&cfg).unwrap_err().is_precondition());
    }
}

#[test]
fn front_is_rightmost_crossing() {
    let nodes: Vec<f64> = (0..6).map(f64::from).collect();
    let u = [0.0, 1.0, 0.0, 0.8, 0.2, 0.0];
    assert_eq!(front_position(&nodes, &u, 0.5), Some(3.5));
}
