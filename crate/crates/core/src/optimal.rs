//! The optimal growth profile `r_d = alpha (2 - <d>_h / d)` and the checks
//! built around it: perturbation studies inside the mean-`alpha` class, the
//! eigenfunction-constancy dichotomy at `lambda0`, and period scans
//! `L -> c*_L` of dilated coefficients.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coeffs::{check_positive, means, PeriodicCoefficient};
use crate::eigen::{principal_eigenpair, DiscretePair};
use crate::error::{Error, Result};
use crate::expr::{BinOp, Expr, FourierSeries};
use crate::par_map;
use crate::speed::{checked_means, minimal_speed};

pub const PERTURBATION_COUNT: usize = 10;
pub const MAX_PERTURBATION_ORDER: usize = 4;
pub const CONSTANCY_TOLERANCE: f64 = 1e-6;

/// `r_d(x) = alpha (2 - <d>_h / d(x))`, the minimizer of `c*_d(r)` over
/// growth rates with mean `alpha`.
pub fn optimal_growth(d: &PeriodicCoefficient, alpha: f64) -> Result<PeriodicCoefficient> {
    check_positive("alpha", alpha)?;
    d.require_positive()?;
    let hm = means(d).harmonic_mean.expect("positive d");
    let samples = d.samples().iter().map(|dv| alpha * (2.0 - hm / dv)).collect();
    let expr = d.expr().map(|e| {
        Expr::Bin(
            BinOp::Mul,
            Box::new(Expr::Num(alpha)),
            Box::new(Expr::Bin(
                BinOp::Sub,
                Box::new(Expr::Num(2.0)),
                Box::new(Expr::Bin(BinOp::Div, Box::new(Expr::Num(hm)), Box::new(e))),
            )),
        )
    });
    Ok(d.derived(samples, expr))
}

/// `max |r_{kd} - r_d|` on the grid.
pub fn scale_invariance_check(d: &PeriodicCoefficient, alpha: f64, k: f64) -> Result<f64> {
    check_positive("k", k)?;
    let base = optimal_growth(d, alpha)?;
    let scaled = optimal_growth(&d.scaled(k), alpha)?;
    Ok(base
        .samples()
        .iter()
        .zip(scaled.samples())
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max))
}

#[derive(Debug, Clone, PartialEq)]
pub struct PerturbationTrial {
    pub eta_id: usize,
    pub epsilon: f64,
    pub speed: f64,
    pub delta: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PerturbationStudy {
    pub base_speed: f64,
    pub trials: Vec<PerturbationTrial>,
    pub min_delta: f64,
}

/// Mean-zero trigonometric perturbation with harmonics `1..=order`,
/// normalized to `max |eta| = 1` on the grid.
#[derive(Debug, Clone, PartialEq)]
pub struct Perturbation {
    pub id: usize,
    pub series: FourierSeries,
    pub samples: Vec<f64>,
}

/// Ten seeded perturbations; perturbation `i` uses harmonics up to order
/// `1 + i mod 4` with coefficients uniform on `[-1, 1]`.
pub fn draw_perturbations(d: &PeriodicCoefficient, seed: u64) -> Vec<Perturbation> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let period = d.period();
    (0..PERTURBATION_COUNT)
        .map(|id| {
            let order = 1 + id % MAX_PERTURBATION_ORDER;
            let harmonics: Vec<(f64, f64)> = (0..order)
                .map(|_| (rng.gen_range(-1.0..=1.0), rng.gen_range(-1.0..=1.0)))
                .collect();
            let raw = FourierSeries {
                a0: 0.0,
                harmonics,
                period,
            };
            let peak = d
                .nodes()
                .map(|x| raw.eval(x).abs())
                .fold(0.0, f64::max);
            let series = FourierSeries {
                a0: 0.0,
                harmonics: raw.harmonics.iter().map(|(a, b)| (a / peak, b / peak)).collect(),
                period,
            };
            let samples = d.nodes().map(|x| series.eval(x)).collect();
            Perturbation {
                id,
                series,
                samples,
            }
        })
        .collect()
}

/// `r + epsilon * eta` as a coefficient on `r`'s grid.
pub fn perturbed(r: &PeriodicCoefficient, eta: &Perturbation, epsilon: f64) -> PeriodicCoefficient {
    let samples = r
        .samples()
        .iter()
        .zip(&eta.samples)
        .map(|(rv, e)| rv + epsilon * e)
        .collect();
    let expr = r.expr().map(|e| {
        Expr::Bin(
            BinOp::Add,
            Box::new(e),
            Box::new(Expr::Fourier(eta.series.clone()).scaled(epsilon)),
        )
    });
    r.derived(samples, expr)
}

pub fn perturbation_study(
    d: &PeriodicCoefficient,
    alpha: f64,
    epsilons: &[f64],
    seed: u64,
) -> Result<PerturbationStudy> {
    let r_d = optimal_growth(d, alpha)?;
    let base_speed = minimal_speed(d, &r_d)?.c_star;
    let etas = draw_perturbations(d, seed);
    let jobs: Vec<(&Perturbation, f64)> = etas
        .iter()
        .flat_map(|eta| epsilons.iter().map(move |&e| (eta, e)))
        .collect();
    let trials = par_map(&jobs, |&(eta, epsilon)| {
        let speed = if epsilon == 0.0 {
            base_speed
        } else {
            minimal_speed(d, &perturbed(&r_d, eta, epsilon))
                .map_err(|e| e.context(format!("eta {} epsilon {epsilon}", eta.id)))?
                .c_star
        };
        Ok(PerturbationTrial {
            eta_id: eta.id,
            epsilon,
            speed,
            delta: speed - base_speed,
        })
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    let min_delta = trials
        .iter()
        .filter(|t| t.epsilon != 0.0)
        .map(|t| t.delta)
        .fold(f64::INFINITY, f64::min);
    Ok(PerturbationStudy {
        base_speed,
        trials,
        min_delta,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Constant,
    Nonconstant,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstancyReport {
    pub deviation: f64,
    pub verdict: Verdict,
}

/// Principal eigenfunction of `(d, r_d)` at `lambda0 = sqrt(alpha / <d>_h)`
/// and whether it is constant.
pub fn constancy_test(d: &PeriodicCoefficient, alpha: f64) -> Result<ConstancyReport> {
    let r_d = optimal_growth(d, alpha)?;
    let (hm, _) = checked_means(d, &r_d)?;
    let lambda0 = (alpha / hm).sqrt();
    let pair = principal_eigenpair(&DiscretePair::new(d, &r_d)?.operator(lambda0)?)?;
    let deviation = pair.deviation();
    Ok(ConstancyReport {
        deviation,
        verdict: if deviation < CONSTANCY_TOLERANCE {
            Verdict::Constant
        } else {
            Verdict::Nonconstant
        },
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct PeriodScan {
    pub ls: Vec<f64>,
    /// `c*_L` on the ambient grid.
    pub speeds: Vec<f64>,
    /// Grid-extrapolated `c*_L`.
    pub extrapolated: Vec<f64>,
    /// `2 sqrt(<d>_h <r>_a)`, the `L -> 0` limit.
    pub limit_value: f64,
    /// Three-point second difference of the extrapolated speeds over the
    /// three smallest `L`.
    pub second_difference_at_zero: f64,
    /// Noise floor for `second_difference_at_zero`: `4 * SPEED_TOL / (dL1 * dL2)`.
    pub second_difference_tolerance: f64,
}

/// Absolute accuracy assumed for each extrapolated `c*_L` when judging the
/// second difference.
pub const SPEED_TOL: f64 = 1e-6;

impl PeriodScan {
    pub fn is_nondecreasing(&self, slack: f64) -> bool {
        self.speeds.windows(2).all(|w| w[1] >= w[0] - slack)
    }

    pub fn curvature_positive(&self) -> bool {
        self.second_difference_at_zero > self.second_difference_tolerance
    }

    pub fn curvature_vanishes(&self) -> bool {
        self.second_difference_at_zero.abs() <= self.second_difference_tolerance
    }
}

/// Speeds `c*_L` of `(d_L, r_L)` with `d_L(x) = d(x L0 / L)`.
pub fn period_scan(
    d: &PeriodicCoefficient,
    r: &PeriodicCoefficient,
    ls: &[f64],
) -> Result<PeriodScan> {
    let (hm, am) = checked_means(d, r)?;
    if ls.len() < 3 {
        return Err(Error::InvalidSimulation(
            "period scan needs at least three periods".into(),
        ));
    }
    for w in ls.windows(2) {
        if !(w[1] > w[0]) {
            return Err(Error::InvalidSimulation(
                "periods must be strictly increasing".into(),
            ));
        }
    }
    for &l in ls {
        check_positive("L", l)?;
    }
    let results = par_map(ls, |&l| {
        let dl = d.rescale_period(l)?;
        let rl = r.rescale_period(l)?;
        minimal_speed(&dl, &rl).map_err(|e| e.context(format!("L = {l}")))
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    let speeds: Vec<f64> = results.iter().map(|s| s.c_star).collect();
    let extrapolated: Vec<f64> = results.iter().map(|s| s.richardson_estimate).collect();
    let (l1, l2, l3) = (ls[0], ls[1], ls[2]);
    let (c1, c2, c3) = (extrapolated[0], extrapolated[1], extrapolated[2]);
    let second = 2.0 * ((c3 - c2) / (l3 - l2) - (c2 - c1) / (l2 - l1)) / (l3 - l1);
    Ok(PeriodScan {
        ls: ls.to_vec(),
        speeds,
        extrapolated,
        limit_value: 2.0 * (hm * am).sqrt(),
        second_difference_at_zero: second,
        second_difference_tolerance: 4.0 * SPEED_TOL / ((l2 - l1) * (l3 - l2)),
    })
}

/// `count` periods spaced geometrically on `[lo, hi]`.
pub fn geometric_periods(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    let ratio = (hi / lo).powf(1.0 / (count - 1) as f64);
    (0..count)
        .map(|i| if i + 1 == count { hi } else { lo * ratio.powi(i as i32) })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffs::parse_coefficient;
    use crate::speed::condition_residual;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    const TAU: f64 = 2.0 * PI;

    fn c(spec: &str, l: f64, n: usize) -> PeriodicCoefficient {
        parse_coefficient(spec, l, n).unwrap()
    }

    #[test]
    fn constant_d_gives_constant_r() {
        let r = optimal_growth(&c("5", TAU, 64), 3.0).unwrap();
        for v in r.samples() {
            assert_relative_eq!(*v, 3.0, epsilon = 1e-14);
        }
    }

    #[test]
    fn reciprocal_d_gives_example_growth() {
        let d = c("1/(1 - 0.5*sin(x))", TAU, 256);
        let r = optimal_growth(&d, 1.0).unwrap();
        for (x, v) in r.nodes().zip(r.samples()) {
            assert_relative_eq!(*v, 1.0 + 0.5 * x.sin(), epsilon = 1e-13);
        }
        let mid = r.eval(0.3).unwrap().unwrap();
        assert_relative_eq!(mid, 1.0 + 0.5 * 0.3f64.sin(), epsilon = 1e-13);
    }

    #[test]
    fn optimal_growth_meets_constraint_and_condition() {
        let d = c("1 + 0.5*cos(2*pi*x)", 1.0, 256);
        let r = optimal_growth(&d, 2.0).unwrap();
        assert_relative_eq!(means(&r).arithmetic_mean, 2.0, epsilon = 1e-12);
        assert!(condition_residual(&d, &r).unwrap() < 1e-10);
    }

    #[test]
    fn scale_invariance() {
        assert!(scale_invariance_check(&c("1", TAU, 64), 1.0, 7.0).unwrap() < 1e-15);
        let d = c("1/(1 - 0.5*sin(x))", TAU, 256);
        assert!(scale_invariance_check(&d, 1.0, 0.3).unwrap() < 1e-12);
        let d = c("1 + 0.5*cos(x)", TAU, 256);
        assert!(scale_invariance_check(&d, 2.0, 1e3).unwrap() < 1e-12);
    }

    #[test]
    fn perturbations_are_mean_zero_and_unit_peak() {
        let d = c("1 + 0.5*cos(x)", TAU, 128);
        let etas = draw_perturbations(&d, 42);
        assert_eq!(etas.len(), 10);
        for eta in &etas {
            let mean = eta.samples.iter().sum::<f64>() / 128.0;
            assert!(mean.abs() < 1e-14);
            let peak = eta.samples.iter().fold(0.0f64, |m, v| m.max(v.abs()));
            assert_relative_eq!(peak, 1.0, epsilon = 1e-14);
        }
        assert_eq!(etas, draw_perturbations(&d, 42));
        assert_ne!(etas, draw_perturbations(&d, 43));
    }

    #[test]
    fn zero_epsilon_has_zero_delta() {
        let d = c("1 + 0.5*cos(x)", TAU, 64);
        let study = perturbation_study(&d, 1.0, &[0.0], 1).unwrap();
        assert!(study.trials.iter().all(|t| t.delta == 0.0));
    }

    #[test]
    fn constant_d_perturbation_increases_speed() {
        let d = c("2", TAU, 64);
        let study = perturbation_study(&d, 1.0, &[0.5], 9).unwrap();
        assert!(study.min_delta > 0.0, "{study:?}");
    }

    #[test]
    fn constancy_dichotomy_basics() {
        let rep = constancy_test(&c("4", TAU, 128), 1.0).unwrap();
        assert_eq!(rep.verdict, Verdict::Constant);
        assert!(rep.deviation < 1e-10);
        let rep = constancy_test(&c("1 + 1e-12*cos(x)", TAU, 128), 1.0).unwrap();
        assert_eq!(rep.verdict, Verdict::Constant);
        let rep = constancy_test(&c("1/(1 - 0.5*sin(x))", TAU, 256), 1.0).unwrap();
        assert_eq!(rep.verdict, Verdict::Nonconstant);
        assert!(rep.deviation > 0.01);
    }

    #[test]
    fn constant_period_scan_is_flat() {
        let scan = period_scan(&c("2", 1.0, 64), &c("0.5", 1.0, 64), &[0.1, 0.5, 2.0, 8.0]).unwrap();
        for s in &scan.speeds {
            assert_relative_eq!(*s, 2.0, epsilon = 1e-8);
        }
        assert!(scan.curvature_vanishes());
    }

    #[test]
    fn geometric_grid_endpoints() {
        let ls = geometric_periods(0.05, 20.0, 12);
        assert_eq!(ls.len(), 12);
        assert_eq!(ls[0], 0.05);
        assert_eq!(ls[11], 20.0);
        assert!(ls.windows(2).all(|w| w[1] > w[0]));
    }

    #[test]
    fn period_scan_validates_input() {
        let d = c("1", 1.0, 32);
        assert!(period_scan(&d, &d, &[1.0, 0.5, 2.0]).is_err());
        assert!(period_scan(&d, &d, &[1.0, 2.0]).is_err());
    }
}
