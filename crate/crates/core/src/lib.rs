//! Minimal traveling-wave speeds for the spatially periodic Fisher-KPP
//! equation `u_t = (d(x) u_x)_x + (r(x) - u) u`.
//!
//! The speed is computed three ways: through the principal eigenvalue
//! `k_lambda(d, r)` of the linearized periodic operator
//! (`c* = min_lambda -k_lambda / lambda`), through the variational
//! characterization of `k_lambda`, and by direct simulation of the Cauchy
//! problem. On top of that sit the harmonic/arithmetic-mean lower bound
//! `2 sqrt(<d>_h <r>_a)`, its equality condition
//! `r / <r>_a + <d>_h / d = 2`, and the optimal growth profile
//! `r_d = alpha (2 - <d>_h / d)`.

pub mod coeffs;
pub mod eigen;
pub mod error;
pub mod expr;
pub mod optimal;
pub mod pde;
pub mod speed;
pub mod tridiag;

pub use coeffs::{means, parse_coefficient, ConstraintSet, MeanSummary, PeriodicCoefficient};
pub use eigen::{
    assemble_operator, euler_lagrange_residual, principal_eigenpair, variational_value, EigenPair,
    OperatorMatrix, VariationalResult,
};
pub use error::{Error, Result};
pub use optimal::{
    constancy_test, optimal_growth, perturbation_study, period_scan, scale_invariance_check,
    ConstancyReport, PeriodScan, PerturbationStudy, Verdict,
};
pub use pde::{
    simulate, spreading_speed_estimate, stationary_state, FrontTrajectory, InitialData,
    SimulationConfig, SimulationRun, SpreadingEstimate, StationaryState,
};
pub use speed::{
    condition_residual, equality_report, lower_bound, minimal_speed, minimal_speed_with,
    speed_curve, EqualityReport, SpeedOptions, SpeedResult,
};

/// Order-preserving map, fanned out over threads when the `parallel`
/// feature is on.
#[cfg(feature = "parallel")]
pub(crate) fn par_map<T: Sync, U: Send>(items: &[T], f: impl Fn(&T) -> U + Sync + Send) -> Vec<U> {
    use rayon::prelude::*;
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn par_map<T: Sync, U: Send>(items: &[T], f: impl Fn(&T) -> U + Sync + Send) -> Vec<U> {
    items.iter().map(f).collect()
}
