//! Period-`L` coefficient functions sampled on a uniform grid, and the
//! spatial means built from them.

use std::f64::consts::PI;
use std::sync::Arc;

use rustfft::num_complex::Complex;
use rustfft::FftPlanner;

use crate::error::{Error, Result};
use crate::expr::{self, Expr, FourierSeries, ParsedSpec};

pub const DEFAULT_GRID_SIZE: usize = 256;
pub const MIN_GRID_SIZE: usize = 16;

/// Where the samples came from. Every variant except `Samples` can be
/// evaluated off-grid (midpoints, refinement checks).
#[derive(Debug, Clone, PartialEq)]
pub enum Source {
    Expression { text: String, expr: Expr },
    Fourier(FourierSeries),
    ReciprocalFourier(FourierSeries),
    /// Built from another evaluable coefficient (rescaling, scaling, `r_d`).
    Derived(Expr),
    Samples,
}

impl Source {
    fn expr(&self) -> Option<Expr> {
        match self {
            Source::Expression { expr, .. } | Source::Derived(expr) => Some(expr.clone()),
            Source::Fourier(s) => Some(ParsedSpec::Fourier(s.clone()).into_expr()),
            Source::ReciprocalFourier(s) => {
                Some(ParsedSpec::ReciprocalFourier(s.clone()).into_expr())
            }
            Source::Samples => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PeriodicCoefficient {
    period: f64,
    samples: Arc<[f64]>,
    source: Source,
    /// Relative change of the arithmetic mean when re-sampled at `2N`.
    /// `None` for raw sample sources.
    refinement_drift: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeanSummary {
    pub arithmetic_mean: f64,
    /// Absent when any sample is `<= 0`.
    pub harmonic_mean: Option<f64>,
}

/// The admissible set `{ r : mean(r) = alpha }` of growth coefficients.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstraintSet {
    alpha: f64,
    period: f64,
}

impl ConstraintSet {
    pub fn new(alpha: f64, period: f64) -> Result<Self> {
        check_positive("alpha", alpha)?;
        check_period(period)?;
        Ok(ConstraintSet { alpha, period })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn period(&self) -> f64 {
        self.period
    }

    pub fn contains(&self, r: &PeriodicCoefficient, tol: f64) -> bool {
        (r.period - self.period).abs() <= 1e-12 * self.period
            && (means(r).arithmetic_mean - self.alpha).abs() <= tol
    }
}

pub(crate) fn check_positive(name: &'static str, value: f64) -> Result<()> {
    if value > 0.0 && value.is_finite() {
        Ok(())
    } else {
        Err(Error::NotPositive { name, value })
    }
}

fn check_period(period: f64) -> Result<()> {
    if period > 0.0 && period.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidPeriod(period))
    }
}

pub fn check_grid_size(n: usize) -> Result<()> {
    if n >= MIN_GRID_SIZE && n.is_power_of_two() {
        Ok(())
    } else {
        Err(Error::InvalidGridSize(n))
    }
}

fn sample_expr(expr: &Expr, period: f64, n: usize) -> Result<Vec<f64>> {
    (0..n)
        .map(|j| {
            let x = j as f64 * period / n as f64;
            let v = expr.eval(x)?;
            if v.is_finite() {
                Ok(v)
            } else {
                Err(Error::NonFinite { x })
            }
        })
        .collect()
}

fn mean(v: &[f64]) -> f64 {
    v.iter().sum::<f64>() / v.len() as f64
}

/// Parses `spec` (expression or Fourier record) and samples it at
/// `x_j = j L / N`.
pub fn parse_coefficient(spec: &str, period: f64, grid_size: usize) -> Result<PeriodicCoefficient> {
    check_period(period)?;
    check_grid_size(grid_size)?;
    let source = match expr::parse_spec(spec, period)? {
        ParsedSpec::Expression(expr) => Source::Expression {
            text: spec.trim().to_string(),
            expr,
        },
        ParsedSpec::Fourier(s) => Source::Fourier(s),
        ParsedSpec::ReciprocalFourier(s) => Source::ReciprocalFourier(s),
    };
    PeriodicCoefficient::from_source(source, period, grid_size)
}

impl PeriodicCoefficient {
    fn from_source(source: Source, period: f64, grid_size: usize) -> Result<Self> {
        let expr = source.expr().expect("evaluable source");
        let samples = sample_expr(&expr, period, grid_size)?;
        let fine = sample_expr(&expr, period, 2 * grid_size)?;
        let (m, m2) = (mean(&samples), mean(&fine));
        let drift = (m2 - m).abs() / m.abs().max(f64::MIN_POSITIVE);
        Ok(PeriodicCoefficient {
            period,
            samples: samples.into(),
            source,
            refinement_drift: Some(drift),
        })
    }

    /// Coefficient from an already-evaluable expression in `x`.
    pub fn from_expr(expr: Expr, period: f64, grid_size: usize) -> Result<Self> {
        check_period(period)?;
        check_grid_size(grid_size)?;
        Self::from_source(Source::Derived(expr), period, grid_size)
    }

    pub fn constant(value: f64, period: f64, grid_size: usize) -> Result<Self> {
        Self::from_expr(Expr::Num(value), period, grid_size)
    }

    /// Raw samples on the uniform grid; off-grid values are unavailable, so
    /// midpoints fall back to two-point averages.
    pub fn from_samples(samples: Vec<f64>, period: f64) -> Result<Self> {
        check_period(period)?;
        check_grid_size(samples.len())?;
        if let Some(j) = samples.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite {
                x: j as f64 * period / samples.len() as f64,
            });
        }
        Ok(PeriodicCoefficient {
            period,
            samples: samples.into(),
            source: Source::Samples,
            refinement_drift: None,
        })
    }

    pub fn period(&self) -> f64 {
        self.period
    }

    pub fn grid_size(&self) -> usize {
        self.samples.len()
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn source(&self) -> &Source {
        &self.source
    }

    pub fn refinement_drift(&self) -> Option<f64> {
        self.refinement_drift
    }

    pub fn spacing(&self) -> f64 {
        self.period / self.grid_size() as f64
    }

    pub fn nodes(&self) -> impl Iterator<Item = f64> + '_ {
        let h = self.spacing();
        (0..self.grid_size()).map(move |j| j as f64 * h)
    }

    pub fn min(&self) -> f64 {
        self.samples.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.samples.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn is_evaluable(&self) -> bool {
        !matches!(self.source, Source::Samples)
    }

    /// Off-grid evaluation; `None` for raw sample sources.
    pub fn eval(&self, x: f64) -> Option<Result<f64>> {
        self.source.expr().map(|e| e.eval(x).map_err(Error::from))
    }

    /// Canonical text for the source, re-parseable for expression and
    /// Fourier sources.
    pub fn describe(&self) -> String {
        match &self.source {
            Source::Expression { text, .. } => text.clone(),
            Source::Fourier(s) => ParsedSpec::Fourier(s.clone()).to_string(),
            Source::ReciprocalFourier(s) => ParsedSpec::ReciprocalFourier(s.clone()).to_string(),
            Source::Derived(e) => e.to_string(),
            Source::Samples => format!("<{} samples>", self.grid_size()),
        }
    }

    /// Same function sampled at a different grid size. Raw sample sources
    /// cannot be re-sampled.
    pub fn resampled(&self, grid_size: usize) -> Result<Self> {
        check_grid_size(grid_size)?;
        if grid_size == self.grid_size() {
            return Ok(self.clone());
        }
        match self.source {
            Source::Samples => Err(Error::InvalidSimulation(
                "raw-sample coefficients cannot be re-sampled".into(),
            )),
            _ => Self::from_source(self.source.clone(), self.period, grid_size),
        }
    }

    /// Enforces `min > 0` on the grid and, for evaluable sources, on the
    /// refined `2N` grid as well.
    pub fn require_positive(&self) -> Result<()> {
        let check = |samples: &[f64], period: f64| -> Result<()> {
            let (j, &min) = samples
                .iter()
                .enumerate()
                .min_by(|a, b| a.1.total_cmp(b.1))
                .expect("non-empty grid");
            if min > 0.0 {
                Ok(())
            } else {
                Err(Error::NonPositiveCoefficient {
                    min,
                    x: j as f64 * period / samples.len() as f64,
                })
            }
        };
        check(&self.samples, self.period)?;
        if let Some(expr) = self.source.expr() {
            let fine = sample_expr(&expr, self.period, 2 * self.grid_size())?;
            check(&fine, self.period)?;
        }
        Ok(())
    }

    /// Values at the cell midpoints `x_{j+1/2}`, `j = 0..N-1`.
    pub fn midpoints(&self) -> Vec<f64> {
        let n = self.grid_size();
        let h = self.spacing();
        match self.source.expr() {
            Some(e) => (0..n)
                .map(|j| {
                    let x = (j as f64 + 0.5) * h;
                    e.eval(x).unwrap_or_else(|_| {
                        0.5 * (self.samples[j] + self.samples[(j + 1) % n])
                    })
                })
                .collect(),
            None => (0..n)
                .map(|j| 0.5 * (self.samples[j] + self.samples[(j + 1) % n]))
                .collect(),
        }
    }

    /// `c'(x_j)`: spectral differentiation for evaluable sources, centered
    /// differences for raw samples.
    pub fn derivative(&self) -> Vec<f64> {
        match self.source {
            Source::Samples => centered_derivative(&self.samples, self.period),
            _ => spectral_derivative(&self.samples, self.period),
        }
    }

    /// `x -> c(x * L / L_new)`, with period `L_new`. Grid nodes map onto grid
    /// nodes, so the samples are unchanged.
    pub fn rescale_period(&self, new_period: f64) -> Result<Self> {
        check_period(new_period)?;
        let factor = self.period / new_period;
        let source = match self.source.expr() {
            Some(_) if new_period == self.period => self.source.clone(),
            Some(e) => Source::Derived(Expr::Dilate(factor, Box::new(e))),
            None => Source::Samples,
        };
        Ok(PeriodicCoefficient {
            period: new_period,
            samples: self.samples.clone(),
            source,
            refinement_drift: self.refinement_drift,
        })
    }

    /// `k * c`.
    pub fn scaled(&self, k: f64) -> Self {
        let source = match self.source.expr() {
            Some(e) => Source::Derived(e.scaled(k)),
            None => Source::Samples,
        };
        PeriodicCoefficient {
            period: self.period,
            samples: self.samples.iter().map(|v| k * v).collect(),
            source,
            refinement_drift: self.refinement_drift,
        }
    }

    /// Pointwise map with an evaluable companion expression. `samples` must
    /// already hold `f(self)` on the grid.
    pub(crate) fn derived(&self, samples: Vec<f64>, expr: Option<Expr>) -> Self {
        let source = match (self.source.expr(), expr) {
            (Some(_), Some(e)) => Source::Derived(e),
            _ => Source::Samples,
        };
        PeriodicCoefficient {
            period: self.period,
            samples: samples.into(),
            source,
            refinement_drift: self.refinement_drift,
        }
    }

    /// Underlying expression, when evaluable.
    pub fn expr(&self) -> Option<Expr> {
        self.source.expr()
    }

    pub fn same_grid(&self, other: &Self) -> Result<()> {
        if (self.period - other.period).abs() <= 1e-12 * self.period.max(other.period)
            && self.grid_size() == other.grid_size()
        {
            Ok(())
        } else {
            Err(Error::GridMismatch(
                self.period,
                other.period,
                self.grid_size(),
                other.grid_size(),
            ))
        }
    }
}

/// Trapezoid-rule means on the periodic grid.
pub fn means(c: &PeriodicCoefficient) -> MeanSummary {
    let arithmetic_mean = mean(&c.samples);
    let harmonic_mean = (c.min() > 0.0)
        .then(|| 1.0 / (c.samples.iter().map(|v| 1.0 / v).sum::<f64>() / c.grid_size() as f64));
    MeanSummary {
        arithmetic_mean,
        harmonic_mean,
    }
}

pub fn spectral_derivative(samples: &[f64], period: f64) -> Vec<f64> {
    let n = samples.len();
    let mut planner = FftPlanner::<f64>::new();
    let fwd = planner.plan_fft_forward(n);
    let inv = planner.plan_fft_inverse(n);
    let mut buf: Vec<Complex<f64>> = samples.iter().map(|&v| Complex::new(v, 0.0)).collect();
    fwd.process(&mut buf);
    let w = 2.0 * PI / period;
    for (k, c) in buf.iter_mut().enumerate() {
        let wave = if k < n / 2 {
            k as f64
        } else if k == n / 2 {
            0.0
        } else {
            k as f64 - n as f64
        };
        *c *= Complex::new(0.0, wave * w);
    }
    inv.process(&mut buf);
    buf.iter().map(|c| c.re / n as f64).collect()
}

pub fn centered_derivative(samples: &[f64], period: f64) -> Vec<f64> {
    let n = samples.len();
    let h = period / n as f64;
    (0..n)
        .map(|j| (samples[(j + 1) % n] - samples[(j + n - 1) % n]) / (2.0 * h))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    const TAU: f64 = 2.0 * PI;

    #[test]
    fn affine_sine_has_unit_mean() {
        let c = parse_coefficient("1 + 0.5*sin(x)", TAU, 256).unwrap();
        assert_relative_eq!(means(&c).arithmetic_mean, 1.0, epsilon = 1e-14);
        assert!(c.refinement_drift().unwrap() < 1e-14);
    }

    #[test]
    fn reciprocal_min_at_three_halves_pi() {
        let c = parse_coefficient("1/(1 - 0.5*sin(x))", TAU, 256).unwrap();
        let (j, &min) = c
            .samples()
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.total_cmp(b.1))
            .unwrap();
        assert_relative_eq!(min, 2.0 / 3.0, epsilon = 1e-15);
        assert_eq!(j, 192);
        assert!(c.require_positive().is_ok());
    }

    #[test]
    fn syntax_error_carries_position() {
        match parse_coefficient("1 + 2*sin(x", TAU, 256) {
            Err(Error::Parse(e)) => assert_eq!(e.position(), 12),
            other => panic!("expected a syntax error, got {other:?}"),
        }
    }

    #[test]
    fn division_by_zero_at_node() {
        let err = parse_coefficient("1/sin(x)", TAU, 256).unwrap_err();
        assert!(matches!(err, Error::Eval(_) | Error::NonFinite { .. }), "{err:?}");
    }

    #[test]
    fn grid_size_validation() {
        assert_eq!(
            parse_coefficient("1", 1.0, 200).unwrap_err(),
            Error::InvalidGridSize(200)
        );
        assert_eq!(
            parse_coefficient("1", 1.0, 8).unwrap_err(),
            Error::InvalidGridSize(8)
        );
        assert!(matches!(
            parse_coefficient("1", -1.0, 16).unwrap_err(),
            Error::InvalidPeriod(_)
        ));
    }

    #[test]
    fn constant_means() {
        let c = PeriodicCoefficient::constant(3.0, 1.0, 64).unwrap();
        let m = means(&c);
        assert_eq!(m.arithmetic_mean, 3.0);
        assert_relative_eq!(m.harmonic_mean.unwrap(), 3.0, epsilon = 1e-14);
    }

    #[test]
    fn harmonic_mean_of_reciprocal_affine_sine_is_one() {
        let d = parse_coefficient("1/(1 - 0.5*sin(x))", TAU, 256).unwrap();
        let m = means(&d);
        assert_relative_eq!(m.harmonic_mean.unwrap(), 1.0, epsilon = 1e-14);
        assert!(m.arithmetic_mean > 1.0);
    }

    #[test]
    fn harmonic_mean_absent_for_sign_changing() {
        let c = parse_coefficient("1 + 2*sin(x)", TAU, 64).unwrap();
        assert_eq!(means(&c).harmonic_mean, None);
        assert!(matches!(
            c.require_positive(),
            Err(Error::NonPositiveCoefficient { .. })
        ));
    }

    #[test]
    fn refinement_recheck_catches_dip_between_nodes() {
        // Negative only near x = 1/32 (between the N = 16 nodes 0 and 1/16).
        let spec = "1 - 1.5*exp(-40000*(x - 0.03125)*(x - 0.03125))";
        let c = parse_coefficient(spec, 1.0, 16).unwrap();
        assert!(c.min() > 0.0);
        assert!(c.require_positive().is_err());
    }

    /// Independent oracle for the harmonic mean of `1 + 0.5 sin x`:
    /// closed form `1 / mean(1/(1 + a sin x)) = sqrt(1 - a^2)`, checked
    /// against plain trapezoid quadrature at N = 4096.
    fn harmonic_oracle() -> f64 {
        let n = 4096;
        let s: f64 = (0..n)
            .map(|j| 1.0 / (1.0 + 0.5 * (TAU * j as f64 / n as f64).sin()))
            .sum();
        n as f64 / s
    }

    #[test]
    fn harmonic_mean_of_affine_sine() {
        let oracle = harmonic_oracle();
        assert_relative_eq!(oracle, 0.75f64.sqrt(), epsilon = 1e-14);
        let c = parse_coefficient("1 + 0.5*sin(x)", TAU, 256).unwrap();
        let m = means(&c);
        assert_relative_eq!(m.harmonic_mean.unwrap(), oracle, epsilon = 1e-13);
        assert!(m.harmonic_mean.unwrap() < 1.0);
    }

    #[test]
    fn rescale_identity_and_dilation() {
        let c = parse_coefficient("1 + 0.5*sin(2*pi*x)", 1.0, 128).unwrap();
        let same = c.rescale_period(1.0).unwrap();
        assert_eq!(same.samples(), c.samples());

        let r7 = c.rescale_period(7.0).unwrap();
        assert_eq!(r7.period(), 7.0);
        for (x, v) in r7.nodes().zip(r7.samples()) {
            assert_relative_eq!(*v, 1.0 + 0.5 * (TAU * x / 7.0).sin(), epsilon = 1e-14);
        }
        // Off-grid evaluation follows the dilation too.
        let v = r7.eval(1.3).unwrap().unwrap();
        assert_relative_eq!(v, 1.0 + 0.5 * (TAU * 1.3 / 7.0).sin(), epsilon = 1e-14);
    }

    #[test]
    fn rescale_keeps_harmonic_mean() {
        let d = parse_coefficient("1/(1 - 0.5*sin(x))", TAU, 256).unwrap();
        let small = d.rescale_period(0.01).unwrap();
        assert_eq!(means(&small), means(&d));
        assert_relative_eq!(means(&small).harmonic_mean.unwrap(), 1.0, epsilon = 1e-14);
    }

    #[test]
    fn spectral_derivative_is_exact_for_trig() {
        let c = parse_coefficient("1 + 0.5*sin(3*x)", TAU, 64).unwrap();
        for (x, dv) in c.nodes().zip(c.derivative()) {
            assert_relative_eq!(dv, 1.5 * (3.0 * x).cos(), epsilon = 1e-12);
        }
    }

    #[test]
    fn raw_samples_use_centered_derivative_and_averaged_midpoints() {
        let c = parse_coefficient("1 + 0.5*sin(x)", TAU, 64).unwrap();
        let raw = PeriodicCoefficient::from_samples(c.samples().to_vec(), TAU).unwrap();
        assert!(!raw.is_evaluable());
        let h = raw.spacing();
        for (j, (x, dv)) in raw.nodes().zip(raw.derivative()).enumerate() {
            let expect = 0.5 * ((x + h).sin() - (x - h).sin()) / (2.0 * h);
            assert_relative_eq!(dv, expect, epsilon = 1e-12);
            let mid = raw.midpoints()[j];
            let s = raw.samples();
            assert_eq!(mid, 0.5 * (s[j] + s[(j + 1) % 64]));
        }
    }

    #[test]
    fn constraint_membership() {
        let set = ConstraintSet::new(1.0, TAU).unwrap();
        let r = parse_coefficient("1 + 0.5*sin(x)", TAU, 64).unwrap();
        assert!(set.contains(&r, 1e-12));
        assert!(!set.contains(&r.scaled(2.0), 1e-12));
        assert!(ConstraintSet::new(0.0, 1.0).is_err());
    }
}
