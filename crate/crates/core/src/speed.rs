//! Minimal wave speed `c* = min_{lambda > 0} -k_lambda(d, r) / lambda`, the
//! mean-based lower bound `2 sqrt(<d>_h <r>_a)` and the equality diagnostics.

use crate::coeffs::{means, PeriodicCoefficient};
use crate::eigen::{principal_eigenpair, DiscretePair};
use crate::error::{Error, Result};
use crate::par_map;

const INV_PHI: f64 = 0.618_033_988_749_894_8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpeedOptions {
    /// Relative width at which golden-section search stops.
    pub lambda_rel_tol: f64,
    /// Points in the geometric pre-scan of the bracket.
    pub prescan_points: usize,
    /// Initial bracket is `[lambda0 / spread, lambda0 * spread]`.
    pub initial_spread: f64,
    /// Give up once the bracket spans this many decades.
    pub max_decades: f64,
    /// Refine the golden-section argmin with Newton steps on `g'(lambda) = 0`.
    pub polish: bool,
    /// Re-evaluate `g(lambda*)` on the `2N` grid and extrapolate.
    pub richardson: bool,
}

impl Default for SpeedOptions {
    fn default() -> Self {
        SpeedOptions {
            lambda_rel_tol: 1e-10,
            prescan_points: 17,
            initial_spread: 64.0,
            max_decades: 12.0,
            polish: true,
            richardson: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpeedResult {
    pub c_star: f64,
    pub lambda_star: f64,
    pub k_at_star: f64,
    pub lower_bound: f64,
    /// Sub-bracket that enclosed `lambda_star`.
    pub bracket: (f64, f64),
    /// Eigensolves performed on the ambient grid.
    pub evaluations: usize,
    pub grid_size: usize,
    /// `(4 c*(2N) - c*(N)) / 3`, or `c_star` when the coefficients cannot be
    /// re-sampled.
    pub richardson_estimate: f64,
}

impl SpeedResult {
    pub fn gap(&self) -> f64 {
        self.richardson_estimate - self.lower_bound
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EqualityReport {
    /// `max_j |r_j / <r>_a + <d>_h / d_j - 2|`.
    pub condition_residual: f64,
    /// Extrapolated `c*` minus the lower bound.
    pub speed_gap: f64,
    /// `sqrt(<r>_a / <d>_h)`.
    pub lambda0: f64,
    /// `max psi - min psi` of the max-normalized principal eigenfunction at
    /// `lambda0`.
    pub eigenfunction_deviation: f64,
    pub speed: SpeedResult,
}

/// `(<d>_h, <r>_a)` after checking `min d > 0` and `<r>_a > 0`.
pub(crate) fn checked_means(d: &PeriodicCoefficient, r: &PeriodicCoefficient) -> Result<(f64, f64)> {
    d.same_grid(r)?;
    d.require_positive()?;
    let hm = means(d).harmonic_mean.expect("positive d has a harmonic mean");
    let am = means(r).arithmetic_mean;
    if am <= 0.0 {
        return Err(Error::NonPositiveGrowthMean(am));
    }
    Ok((hm, am))
}

pub fn lower_bound(d: &PeriodicCoefficient, r: &PeriodicCoefficient) -> Result<f64> {
    let (hm, am) = checked_means(d, r)?;
    Ok(2.0 * (hm * am).sqrt())
}

pub fn condition_residual(d: &PeriodicCoefficient, r: &PeriodicCoefficient) -> Result<f64> {
    let (hm, am) = checked_means(d, r)?;
    Ok(d.samples()
        .iter()
        .zip(r.samples())
        .map(|(dv, rv)| (rv / am + hm / dv - 2.0).abs())
        .fold(0.0, f64::max))
}

struct Objective<'a> {
    pair: &'a DiscretePair,
    evaluations: usize,
}

impl Objective<'_> {
    fn g(&mut self, lambda: f64) -> Result<f64> {
        self.evaluations += 1;
        speed_at(self.pair, lambda)
    }
}

fn speed_at(pair: &DiscretePair, lambda: f64) -> Result<f64> {
    let k = principal_eigenpair(&pair.operator(lambda)?)?.k;
    Ok(-k / lambda)
}

/// `g(lambda) = -k_lambda / lambda` on the given `lambda` values.
pub fn speed_curve(
    d: &PeriodicCoefficient,
    r: &PeriodicCoefficient,
    lambdas: &[f64],
) -> Result<Vec<f64>> {
    let pair = DiscretePair::new(d, r)?;
    par_map(lambdas, |&l| speed_at(&pair, l)).into_iter().collect()
}

pub fn minimal_speed(d: &PeriodicCoefficient, r: &PeriodicCoefficient) -> Result<SpeedResult> {
    minimal_speed_with(d, r, &SpeedOptions::default())
}

pub fn minimal_speed_with(
    d: &PeriodicCoefficient,
    r: &PeriodicCoefficient,
    opts: &SpeedOptions,
) -> Result<SpeedResult> {
    let (hm, am) = checked_means(d, r)?;
    let pair = DiscretePair::new(d, r)?;
    let lambda0 = (am / hm).sqrt();
    let mut obj = Objective {
        pair: &pair,
        evaluations: 0,
    };

    let (mut lo, mut hi) = (lambda0 / opts.initial_spread, lambda0 * opts.initial_spread);
    let (grid, values) = loop {
        if (hi / lo).log10() > opts.max_decades {
            return Err(Error::BracketExhausted { lo, hi });
        }
        let m = opts.prescan_points.max(3);
        let ratio = (hi / lo).powf(1.0 / (m - 1) as f64);
        let grid: Vec<f64> = (0..m).map(|i| lo * ratio.powi(i as i32)).collect();
        let values: Vec<f64> = par_map(&grid, |&l| speed_at(&pair, l))
            .into_iter()
            .collect::<Result<_>>()?;
        obj.evaluations += m;
        let best = argmin(&values);
        if best == 0 {
            lo /= opts.initial_spread;
        } else if best == m - 1 {
            hi *= opts.initial_spread;
        } else {
            break (grid, values);
        }
    };

    // Every interior local minimum of the pre-scan gets its own search.
    let mut best: Option<(f64, f64, (f64, f64))> = None;
    for i in 1..grid.len() - 1 {
        if values[i] <= values[i - 1] && values[i] <= values[i + 1] {
            let (a, b) = (grid[i - 1], grid[i + 1]);
            let (l, g) = golden_section(&mut obj, a, b, opts.lambda_rel_tol)?;
            if best.is_none_or(|(_, gb, _)| g < gb) {
                best = Some((l, g, (a, b)));
            }
        }
    }
    let (mut lambda_star, _, bracket) = best.expect("interior minimum exists");

    if opts.polish {
        if let Some(l) = polish(&pair, lambda_star, bracket) {
            lambda_star = l;
        }
    }

    let k_at_star = principal_eigenpair(&pair.operator(lambda_star)?)?.k;
    obj.evaluations += 1;
    let c_star = -k_at_star / lambda_star;

    let richardson_estimate = if opts.richardson && d.is_evaluable() && r.is_evaluable() {
        let n2 = 2 * d.grid_size();
        let fine = DiscretePair::new(&d.resampled(n2)?, &r.resampled(n2)?)?;
        let c_fine = speed_at(&fine, lambda_star)?;
        (4.0 * c_fine - c_star) / 3.0
    } else {
        c_star
    };

    Ok(SpeedResult {
        c_star,
        lambda_star,
        k_at_star,
        lower_bound: 2.0 * (hm * am).sqrt(),
        bracket,
        evaluations: obj.evaluations,
        grid_size: d.grid_size(),
        richardson_estimate,
    })
}

fn argmin(v: &[f64]) -> usize {
    v.iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .map(|(i, _)| i)
        .expect("non-empty")
}

fn golden_section(obj: &mut Objective<'_>, mut a: f64, mut b: f64, rel_tol: f64) -> Result<(f64, f64)> {
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = obj.g(x1)?;
    let mut f2 = obj.g(x2)?;
    while (b - a) > rel_tol * 0.5 * (a + b) {
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = obj.g(x1)?;
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = obj.g(x2)?;
        }
    }
    Ok(if f1 <= f2 { (x1, f1) } else { (x2, f2) })
}

/// Newton iteration on `F(lambda) = k - lambda k'` (zero exactly where
/// `g' = 0`), with `k'` from left/right eigenvectors. Golden-section alone
/// cannot place the argmin better than about `sqrt(eps)` relative.
fn polish(pair: &DiscretePair, start: f64, bracket: (f64, f64)) -> Option<f64> {
    let f = |l: f64| pair.eigenvalue_with_slope(l).ok().map(|(k, dk)| k - l * dk);
    let mut l = start;
    let mut fl = f(l)?;
    for _ in 0..8 {
        let step = 1e-6 * l;
        let fp = (f(l + step)? - fl) / step;
        if fp == 0.0 || !fp.is_finite() {
            break;
        }
        let next = l - fl / fp;
        if !(bracket.0..=bracket.1).contains(&next) {
            return None;
        }
        let done = (next - l).abs() <= 1e-15 * l;
        l = next;
        fl = f(l)?;
        if done {
            break;
        }
    }
    // The golden-section answer is already within ~1e-7; a larger move
    // means Newton wandered off.
    ((l - start).abs() <= 1e-4 * start).then_some(l)
}

pub fn equality_report(d: &PeriodicCoefficient, r: &PeriodicCoefficient) -> Result<EqualityReport> {
    let (hm, am) = checked_means(d, r)?;
    let lambda0 = (am / hm).sqrt();
    let condition_residual = condition_residual(d, r)?;
    let speed = minimal_speed(d, r).map_err(|e| e.context("minimal speed"))?;
    let pair = principal_eigenpair(&DiscretePair::new(d, r)?.operator(lambda0)?)
        .map_err(|e| e.context("eigenfunction at lambda0"))?;
    Ok(EqualityReport {
        condition_residual,
        speed_gap: speed.gap(),
        lambda0,
        eigenfunction_deviation: pair.deviation(),
        speed,
    })
}
