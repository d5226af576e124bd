//! Principal eigenvalue `k_lambda(d, r)` of the periodic operator
//!
//! ```text
//! -L psi = -(d psi')' - 2 lambda d psi' - (lambda^2 d + lambda d' + r) psi
//! ```
//!
//! and the variational characterization
//! `k_lambda = min_{phi > 0, |phi|_2 = 1} I(phi; lambda, d, r)` with
//! `I = int d |phi'|^2 - int r phi^2 - lambda^2 L^2 / int 1/(d phi^2)`.

use crate::coeffs::{check_positive, PeriodicCoefficient};
use crate::error::{Error, Result};
use crate::tridiag::CyclicTridiagonal;

pub const MAX_EIGEN_ITERATIONS: usize = 10_000;
pub const EIGENVECTOR_TOLERANCE: f64 = 1e-12;
/// Below this, an eigenvector change that no longer halves per step is
/// treated as rounding noise.
const STALL_THRESHOLD: f64 = 1e-10;
pub const RESIDUAL_TOLERANCE: f64 = 1e-8;
pub const VARIATIONAL_FLOOR: f64 = 1e-8;
pub const VARIATIONAL_STALL_TOLERANCE: f64 = 1e-12;
pub const VARIATIONAL_STALL_STEPS: usize = 20;
pub const MAX_VARIATIONAL_STEPS: usize = 200_000;

/// Grid data of a `(d, r)` pair, validated once and reused across many
/// values of `lambda`.
#[derive(Debug, Clone)]
pub struct DiscretePair {
    pub(crate) period: f64,
    pub(crate) h: f64,
    pub(crate) d: Vec<f64>,
    /// `d(x_{j+1/2})`.
    pub(crate) d_mid: Vec<f64>,
    pub(crate) d_prime: Vec<f64>,
    pub(crate) r: Vec<f64>,
}

impl DiscretePair {
    pub fn new(d: &PeriodicCoefficient, r: &PeriodicCoefficient) -> Result<Self> {
        d.same_grid(r)?;
        d.require_positive()?;
        let d_mid = d.midpoints();
        if let Some(&m) = d_mid.iter().find(|v| **v <= 0.0) {
            return Err(Error::NonPositiveCoefficient { min: m, x: f64::NAN });
        }
        Ok(DiscretePair {
            period: d.period(),
            h: d.spacing(),
            d: d.samples().to_vec(),
            d_mid,
            d_prime: d.derivative(),
            r: r.samples().to_vec(),
        })
    }

    pub fn grid_size(&self) -> usize {
        self.d.len()
    }

    pub fn period(&self) -> f64 {
        self.period
    }

    /// `(D phi)_j = [d_{j+1/2}(phi_{j+1} - phi_j) - d_{j-1/2}(phi_j - phi_{j-1})] / h^2`.
    pub(crate) fn flux_divergence(&self, phi: &[f64]) -> Vec<f64> {
        let n = phi.len();
        let h2 = self.h * self.h;
        (0..n)
            .map(|j| {
                let (jm, jp) = ((j + n - 1) % n, (j + 1) % n);
                (self.d_mid[j] * (phi[jp] - phi[j]) - self.d_mid[jm] * (phi[j] - phi[jm])) / h2
            })
            .collect()
    }

    pub(crate) fn bands(&self, lambda: f64) -> (CyclicTridiagonal, usize) {
        let n = self.grid_size();
        let (h, h2) = (self.h, self.h * self.h);
        let mut lower = vec![0.0; n];
        let mut diag = vec![0.0; n];
        let mut upper = vec![0.0; n];
        let mut upwinded = 0;
        for j in 0..n {
            let jm = (j + n - 1) % n;
            let (dl, dr) = (self.d_mid[jm], self.d_mid[j]);
            let dj = self.d[j];
            diag[j] = (dl + dr) / h2
                - (lambda * lambda * dj + lambda * self.d_prime[j] + self.r[j]);
            let centered_lower = -dl / h2 + lambda * dj / h;
            if centered_lower <= 0.0 {
                lower[j] = centered_lower;
                upper[j] = -dr / h2 - lambda * dj / h;
            } else {
                // Cell Peclet number above one: one-sided difference keeps
                // the off-diagonals non-positive.
                upwinded += 1;
                lower[j] = -dl / h2;
                upper[j] = -dr / h2 - 2.0 * lambda * dj / h;
                diag[j] += 2.0 * lambda * dj / h;
            }
        }
        (CyclicTridiagonal { lower, diag, upper }, upwinded)
    }

    /// `d/dlambda` of the bands returned by [`Self::bands`].
    fn bands_lambda_derivative(&self, lambda: f64) -> CyclicTridiagonal {
        let n = self.grid_size();
        let (h, h2) = (self.h, self.h * self.h);
        let mut out = CyclicTridiagonal {
            lower: vec![0.0; n],
            diag: vec![0.0; n],
            upper: vec![0.0; n],
        };
        for j in 0..n {
            let jm = (j + n - 1) % n;
            let dj = self.d[j];
            out.diag[j] = -(2.0 * lambda * dj + self.d_prime[j]);
            if -self.d_mid[jm] / h2 + lambda * dj / h <= 0.0 {
                out.lower[j] = dj / h;
                out.upper[j] = -dj / h;
            } else {
                out.upper[j] = -2.0 * dj / h;
                out.diag[j] += 2.0 * dj / h;
            }
        }
        out
    }

    pub fn operator(&self, lambda: f64) -> Result<OperatorMatrix> {
        check_positive("lambda", lambda)?;
        let (bands, upwinded_rows) = self.bands(lambda);
        Ok(OperatorMatrix {
            lambda,
            period: self.period,
            bands,
            upwinded_rows,
        })
    }

    /// Principal eigenvalue and `dk/dlambda` (from the left and right
    /// principal eigenvectors).
    pub fn eigenvalue_with_slope(&self, lambda: f64) -> Result<(f64, f64)> {
        let op = self.operator(lambda)?;
        let right = principal_eigenpair(&op)?;
        let left = perron_iteration(&op.bands.transpose())?;
        let da = self.bands_lambda_derivative(lambda);
        let num: f64 = left.psi.iter().zip(da.apply(&right.psi)).map(|(w, v)| w * v).sum();
        let den: f64 = left.psi.iter().zip(&right.psi).map(|(w, v)| w * v).sum();
        Ok((right.k, num / den))
    }

    /// Discrete `I(phi; lambda, d, r)`.
    pub fn functional(&self, lambda: f64, phi: &[f64]) -> f64 {
        let n = phi.len();
        let h = self.h;
        let mut grad_energy = 0.0;
        let mut growth = 0.0;
        let mut inv = 0.0;
        for j in 0..n {
            let dphi = phi[(j + 1) % n] - phi[j];
            grad_energy += self.d_mid[j] * dphi * dphi / h;
            growth += h * self.r[j] * phi[j] * phi[j];
            inv += h / (self.d[j] * phi[j] * phi[j]);
        }
        let l = self.period;
        grad_energy - growth - lambda * lambda * l * l / inv
    }

    fn inverse_weight_integral(&self, phi: &[f64]) -> f64 {
        phi.iter()
            .zip(&self.d)
            .map(|(p, d)| self.h / (d * p * p))
            .sum()
    }

    /// Pointwise Euler-Lagrange residual vector
    /// `-(d phi')' - r phi - lambda^2 L^2 / J^2 / (d phi^3) - I(phi) phi`.
    fn euler_lagrange_vector(&self, lambda: f64, phi: &[f64]) -> Vec<f64> {
        let l = self.period;
        let j_int = self.inverse_weight_integral(phi);
        let coef = lambda * lambda * l * l / (j_int * j_int);
        let value = self.functional(lambda, phi);
        let div = self.flux_divergence(phi);
        (0..phi.len())
            .map(|j| {
                let p = phi[j];
                -div[j] - self.r[j] * p - coef / (self.d[j] * p * p * p) - value * p
            })
            .collect()
    }

    fn l2_norm_sq(&self, phi: &[f64]) -> f64 {
        self.h * phi.iter().map(|p| p * p).sum::<f64>()
    }

    fn l2_dot(&self, a: &[f64], b: &[f64]) -> f64 {
        self.h * a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>()
    }

    fn project_normalize(&self, mut phi: Vec<f64>) -> Vec<f64> {
        for p in phi.iter_mut() {
            *p = p.max(VARIATIONAL_FLOOR);
        }
        let s = self.l2_norm_sq(&phi).sqrt();
        phi.iter_mut().for_each(|p| *p /= s);
        phi
    }

    pub fn variational(&self, lambda: f64) -> Result<VariationalResult> {
        check_positive("lambda", lambda)?;
        let n = self.grid_size();
        let l = self.period;
        let mut phi = vec![1.0 / l.sqrt(); n];
        let mut value = self.functional(lambda, &phi);

        // H1-type preconditioner: (-D + s) applied to the gradient.
        let shift = 1.0
            + self.r.iter().fold(0.0f64, |m, v| m.max(v.abs()))
            + lambda * lambda * self.d.iter().fold(0.0f64, |m, v| m.max(*v));
        let h2 = self.h * self.h;
        let precond = CyclicTridiagonal {
            lower: (0..n).map(|j| -self.d_mid[(j + n - 1) % n] / h2).collect(),
            diag: (0..n)
                .map(|j| (self.d_mid[j] + self.d_mid[(j + n - 1) % n]) / h2 + shift)
                .collect(),
            upper: (0..n).map(|j| -self.d_mid[j] / h2).collect(),
        };

        let mut step = 1.0;
        let mut quiet = 0;
        let mut steps = 0;
        while steps < MAX_VARIATIONAL_STEPS {
            steps += 1;
            let grad = self.euler_lagrange_vector(lambda, &phi);
            let mut dir = precond.solve(&grad)?;
            let along = self.l2_dot(&dir, &phi);
            dir.iter_mut().zip(&phi).for_each(|(p, f)| *p -= along * f);
            let slope = self.l2_dot(&grad, &dir);

            let mut t = step;
            let mut accepted = None;
            if slope > 0.0 {
                while t > 1e-16 {
                    let trial = self
                        .project_normalize(phi.iter().zip(&dir).map(|(f, p)| f - t * p).collect());
                    let v = self.functional(lambda, &trial);
                    if v < value {
                        accepted = Some((trial, v));
                        break;
                    }
                    t *= 0.5;
                }
            }
            match accepted {
                Some((trial, v)) => {
                    let decrease = value - v;
                    phi = trial;
                    value = v;
                    step = (2.0 * t).min(1.0);
                    if decrease < VARIATIONAL_STALL_TOLERANCE {
                        quiet += 1;
                    } else {
                        quiet = 0;
                    }
                }
                None => {
                    let gnorm = grad.iter().fold(0.0f64, |m, g| m.max(g.abs()));
                    if steps == 1 && gnorm > 1e-6 * value.abs().max(1.0) {
                        return Err(Error::NoDescent { value });
                    }
                    break;
                }
            }
            if quiet >= VARIATIONAL_STALL_STEPS {
                break;
            }
        }
        let el_residual = inf_norm(&self.euler_lagrange_vector(lambda, &phi));
        Ok(VariationalResult {
            value,
            phi,
            el_residual,
            steps,
        })
    }
}

fn inf_norm(v: &[f64]) -> f64 {
    v.iter().fold(0.0f64, |m, x| m.max(x.abs()))
}

/// Discretized `-L_{lambda,d,r}` stored as a periodic tridiagonal matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorMatrix {
    pub lambda: f64,
    pub period: f64,
    pub bands: CyclicTridiagonal,
    /// Rows where the centered first-derivative stencil was replaced by a
    /// forward difference (large `lambda h`).
    pub upwinded_rows: usize,
}

impl OperatorMatrix {
    pub fn grid_size(&self) -> usize {
        self.bands.len()
    }

    pub fn apply(&self, v: &[f64]) -> Vec<f64> {
        self.bands.apply(v)
    }

    pub fn to_dense(&self) -> Vec<Vec<f64>> {
        self.bands.to_dense()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EigenPair {
    pub k: f64,
    /// Positive, normalized to `max psi = 1`.
    pub psi: Vec<f64>,
    pub residual: f64,
    pub iterations: usize,
}

impl EigenPair {
    /// `max psi - min psi` (with `max psi = 1`).
    pub fn deviation(&self) -> f64 {
        let min = self.psi.iter().copied().fold(f64::INFINITY, f64::min);
        1.0 - min
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VariationalResult {
    pub value: f64,
    /// Positive with `int phi^2 = 1`.
    pub phi: Vec<f64>,
    pub el_residual: f64,
    pub steps: usize,
}

pub fn assemble_operator(
    d: &PeriodicCoefficient,
    r: &PeriodicCoefficient,
    lambda: f64,
) -> Result<OperatorMatrix> {
    DiscretePair::new(d, r)?.operator(lambda)
}

/// Perron eigenpair of the discretized operator by shifted inverse
/// iteration. The first shift is the Gershgorin lower bound; later shifts
/// are the Collatz-Wielandt lower bound `min_j (A psi)_j / psi_j`, which
/// stays below the principal eigenvalue for a Z-matrix.
pub fn principal_eigenpair(op: &OperatorMatrix) -> Result<EigenPair> {
    perron_iteration(&op.bands)
}

fn perron_iteration(a: &CyclicTridiagonal) -> Result<EigenPair> {
    let n = a.len();
    let mut psi = vec![1.0; n];
    let mut change = f64::INFINITY;
    let mut previous;
    let norm = (0..n)
        .map(|j| a.lower[j].abs() + a.diag[j].abs() + a.upper[j].abs())
        .fold(0.0, f64::max);
    for it in 1..=MAX_EIGEN_ITERATIONS {
        let a_psi = a.apply(&psi);
        let (lo, hi) = a_psi
            .iter()
            .zip(&psi)
            .map(|(ap, p)| ap / p)
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), q| (lo.min(q), hi.max(q)));
        // Keep the shift safely below k: rounding in `diag - sigma` is of
        // order eps * |A|.
        let margin = (1e-10 * lo.abs().max(1.0)).max(1e-12 * norm);
        let sigma = if it == 1 {
            gershgorin_lower_bound(a) - margin
        } else {
            lo - (0.1 * (hi - lo)).max(margin)
        };
        let next = a.shifted(sigma).solve(&psi)?;
        let sign = if next.iter().sum::<f64>() < 0.0 { -1.0 } else { 1.0 };
        let top = next.iter().fold(0.0f64, |m, v| m.max(sign * v));
        let next: Vec<f64> = next.iter().map(|v| sign * v / top).collect();
        previous = change;
        change = next
            .iter()
            .zip(&psi)
            .fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
        psi = next;
        // On fine grids the change can stall at rounding level above the
        // tolerance; the residual test below then decides.
        let stalled = change < STALL_THRESHOLD && change > 0.5 * previous;
        if change < EIGENVECTOR_TOLERANCE || stalled {
            let pair = finish(a, psi, it)?;
            // On very fine grids the residual of a correctly rounded psi is
            // already of order eps * |A|, so that much is tolerated on top.
            let floor = 16.0 * f64::EPSILON * norm;
            if pair.residual <= RESIDUAL_TOLERANCE * pair.k.abs().max(1.0) + floor {
                return Ok(pair);
            }
            psi = pair.psi;
        }
    }
    Err(Error::EigenNoConvergence {
        iterations: MAX_EIGEN_ITERATIONS,
        change,
    })
}

fn finish(a: &CyclicTridiagonal, psi: Vec<f64>, iterations: usize) -> Result<EigenPair> {
    let min = psi.iter().copied().fold(f64::INFINITY, f64::min);
    if min <= 0.0 {
        return Err(Error::MixedSignEigenvector { ratio: min });
    }
    let a_psi = a.apply(&psi);
    let k = a_psi.iter().zip(&psi).map(|(x, y)| x * y).sum::<f64>()
        / psi.iter().map(|y| y * y).sum::<f64>();
    let residual = a_psi
        .iter()
        .zip(&psi)
        .fold(0.0f64, |m, (ap, p)| m.max((ap - k * p).abs()));
    Ok(EigenPair {
        k,
        psi,
        residual,
        iterations,
    })
}

/// `min_j (a_jj - sum_{i != j} |a_ji|)`.
pub fn gershgorin_lower_bound(a: &CyclicTridiagonal) -> f64 {
    (0..a.len())
        .map(|j| a.diag[j] - a.lower[j].abs() - a.upper[j].abs())
        .fold(f64::INFINITY, f64::min)
}

pub fn variational_value(
    d: &PeriodicCoefficient,
    r: &PeriodicCoefficient,
    lambda: f64,
) -> Result<VariationalResult> {
    DiscretePair::new(d, r)?.variational(lambda)
}

/// Infinity norm of the Euler-Lagrange residual of `I` at `phi`.
pub fn euler_lagrange_residual(
    d: &PeriodicCoefficient,
    r: &PeriodicCoefficient,
    lambda: f64,
    phi: &[f64],
) -> Result<f64> {
    let pair = DiscretePair::new(d, r)?;
    check_positive("lambda", lambda)?;
    if phi.len() != pair.grid_size() {
        return Err(Error::GridMismatch(
            pair.period,
            pair.period,
            pair.grid_size(),
            phi.len(),
        ));
    }
    Ok(inf_norm(&pair.euler_lagrange_vector(lambda, phi)))
}
