//! Periodic ("cyclic") tridiagonal matrices: three bands plus the two
//! wrap-around corner entries.

use crate::error::{Error, Result};

/// Row `j` reads `lower[j] * v[j-1] + diag[j] * v[j] + upper[j] * v[j+1]`
/// with indices taken modulo `n`. `lower[0]` and `upper[n-1]` are the
/// corner entries.
#[derive(Debug, Clone, PartialEq)]
pub struct CyclicTridiagonal {
    pub lower: Vec<f64>,
    pub diag: Vec<f64>,
    pub upper: Vec<f64>,
}

impl CyclicTridiagonal {
    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    pub fn apply(&self, v: &[f64]) -> Vec<f64> {
        let n = self.len();
        (0..n)
            .map(|j| {
                self.lower[j] * v[(j + n - 1) % n] + self.diag[j] * v[j] + self.upper[j] * v[(j + 1) % n]
            })
            .collect()
    }

    pub fn transpose(&self) -> Self {
        let n = self.len();
        CyclicTridiagonal {
            lower: (0..n).map(|j| self.upper[(j + n - 1) % n]).collect(),
            diag: self.diag.clone(),
            upper: (0..n).map(|j| self.lower[(j + 1) % n]).collect(),
        }
    }

    pub fn shifted(&self, sigma: f64) -> Self {
        CyclicTridiagonal {
            lower: self.lower.clone(),
            diag: self.diag.iter().map(|d| d - sigma).collect(),
            upper: self.upper.clone(),
        }
    }

    pub fn to_dense(&self) -> Vec<Vec<f64>> {
        let n = self.len();
        let mut m = vec![vec![0.0; n]; n];
        for j in 0..n {
            m[j][(j + n - 1) % n] += self.lower[j];
            m[j][j] += self.diag[j];
            m[j][(j + 1) % n] += self.upper[j];
        }
        m
    }

    /// Solves `A x = b` by the Sherman-Morrison reduction to an open
    /// tridiagonal system. No pivoting: intended for diagonally dominant or
    /// M-matrix systems.
    pub fn solve(&self, b: &[f64]) -> Result<Vec<f64>> {
        let n = self.len();
        let (a0, cn) = (self.lower[0], self.upper[n - 1]);
        let gamma = -self.diag[0];
        if gamma == 0.0 {
            return Err(Error::SingularSystem);
        }
        let mut diag = self.diag.clone();
        diag[0] -= gamma;
        diag[n - 1] -= a0 * cn / gamma;

        let mut u = vec![0.0; n];
        u[0] = gamma;
        u[n - 1] = cn;

        let (y, z) = thomas2(&self.lower, &diag, &self.upper, b, &u)?;
        let vy = y[0] + a0 / gamma * y[n - 1];
        let vz = z[0] + a0 / gamma * z[n - 1];
        let denom = 1.0 + vz;
        if denom == 0.0 || !denom.is_finite() {
            return Err(Error::SingularSystem);
        }
        let f = vy / denom;
        Ok(y.iter().zip(&z).map(|(yi, zi)| yi - f * zi).collect())
    }
}

/// Thomas algorithm on the open tridiagonal part (ignoring `lower[0]` and
/// `upper[n-1]`) for two right-hand sides at once.
fn thomas2(
    lower: &[f64],
    diag: &[f64],
    upper: &[f64],
    b1: &[f64],
    b2: &[f64],
) -> Result<(Vec<f64>, Vec<f64>)> {
    let n = diag.len();
    let mut c = vec![0.0; n];
    let mut x1 = vec![0.0; n];
    let mut x2 = vec![0.0; n];
    let mut piv = diag[0];
    if piv == 0.0 {
        return Err(Error::SingularSystem);
    }
    c[0] = upper[0] / piv;
    x1[0] = b1[0] / piv;
    x2[0] = b2[0] / piv;
    for j in 1..n {
        piv = diag[j] - lower[j] * c[j - 1];
        if piv == 0.0 || !piv.is_finite() {
            return Err(Error::SingularSystem);
        }
        c[j] = if j + 1 < n { upper[j] / piv } else { 0.0 };
        x1[j] = (b1[j] - lower[j] * x1[j - 1]) / piv;
        x2[j] = (b2[j] - lower[j] * x2[j - 1]) / piv;
    }
    for j in (0..n - 1).rev() {
        x1[j] -= c[j] * x1[j + 1];
        x2[j] -= c[j] * x2[j + 1];
    }
    Ok((x1, x2))
}

/// Open (non-periodic) tridiagonal solve; `lower[0]` and `upper[n-1]` are
/// ignored.
pub fn solve_tridiagonal(lower: &[f64], diag: &[f64], upper: &[f64], b: &[f64]) -> Result<Vec<f64>> {
    let n = diag.len();
    let mut c = vec![0.0; n];
    let mut x = vec![0.0; n];
    let mut piv = diag[0];
    if piv == 0.0 {
        return Err(Error::SingularSystem);
    }
    c[0] = upper[0] / piv;
    x[0] = b[0] / piv;
    for j in 1..n {
        piv = diag[j] - lower[j] * c[j - 1];
        if piv == 0.0 || !piv.is_finite() {
            return Err(Error::SingularSystem);
        }
        c[j] = if j + 1 < n { upper[j] / piv } else { 0.0 };
        x[j] = (b[j] - lower[j] * x[j - 1]) / piv;
    }
    for j in (0..n - 1).rev() {
        x[j] -= c[j] * x[j + 1];
    }
    Ok(x)
}
