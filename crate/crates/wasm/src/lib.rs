//! WebAssembly bindings for the browser demo in `www/`.
//!
//! Each export has a plain Rust counterpart returning `Result<_, String>` so
//! the logic can be tested natively.

use periodic_kpp::optimal::geometric_periods;
use periodic_kpp::speed::speed_curve;
use periodic_kpp::*;
use wasm_bindgen::prelude::*;

fn pair(d: &str, r: &str, period: f64, grid_size: usize) -> Result<(PeriodicCoefficient, PeriodicCoefficient), String> {
    let d = parse_coefficient(d, period, grid_size).map_err(|e| format!("d: {e}"))?;
    let r = parse_coefficient(r, period, grid_size).map_err(|e| format!("r: {e}"))?;
    Ok((d, r))
}

/// `g(lambda) = -k_lambda / lambda` on a geometric grid around the minimizer.
#[wasm_bindgen]
#[derive(Debug, Clone)]
pub struct SpeedCurve {
    lambdas: Vec<f64>,
    values: Vec<f64>,
    pub c_star: f64,
    pub lambda_star: f64,
    pub lower_bound: f64,
    pub condition_residual: f64,
}

#[wasm_bindgen]
impl SpeedCurve {
    #[wasm_bindgen(getter)]
    pub fn lambdas(&self) -> Vec<f64> {
        self.lambdas.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn values(&self) -> Vec<f64> {
        self.values.clone()
    }
}

pub fn compute_speed_curve(d: &str, r: &str, period: f64, grid_size: usize, points: usize) -> Result<SpeedCurve, String> {
    let (d, r) = pair(d, r, period, grid_size)?;
    let s = minimal_speed(&d, &r).map_err(|e| e.to_string())?;
    let lambdas = geometric_periods(s.lambda_star / 4.0, s.lambda_star * 4.0, points.max(3));
    let values = speed_curve(&d, &r, &lambdas).map_err(|e| e.to_string())?;
    Ok(SpeedCurve {
        lambdas,
        values,
        c_star: s.c_star,
        lambda_star: s.lambda_star,
        lower_bound: s.lower_bound,
        condition_residual: condition_residual(&d, &r).map_err(|e| e.to_string())?,
    })
}

#[wasm_bindgen(js_name = speedCurve)]
pub fn speed_curve_js(d: &str, r: &str, period: f64, grid_size: usize, points: usize) -> Result<SpeedCurve, JsError> {
    compute_speed_curve(d, r, period, grid_size, points).map_err(|e| JsError::new(&e))
}

/// The optimal growth profile `r_d` for a given `d`, with its speed.
#[wasm_bindgen]
#[derive(Debug, Clone)]
pub struct OptimalProfile {
    xs: Vec<f64>,
    d: Vec<f64>,
    r_d: Vec<f64>,
    pub c_star: f64,
    pub lower_bound: f64,
    pub eigenfunction_deviation: f64,
}

#[wasm_bindgen]
impl OptimalProfile {
    #[wasm_bindgen(getter)]
    pub fn xs(&self) -> Vec<f64> {
        self.xs.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn d(&self) -> Vec<f64> {
        self.d.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn r_d(&self) -> Vec<f64> {
        self.r_d.clone()
    }
}

pub fn compute_optimal_profile(d: &str, period: f64, alpha: f64, grid_size: usize) -> Result<OptimalProfile, String> {
    let d = parse_coefficient(d, period, grid_size).map_err(|e| format!("d: {e}"))?;
    let r_d = optimal_growth(&d, alpha).map_err(|e| e.to_string())?;
    let s = minimal_speed(&d, &r_d).map_err(|e| e.to_string())?;
    let dev = constancy_test(&d, alpha).map_err(|e| e.to_string())?.deviation;
    Ok(OptimalProfile {
        xs: d.nodes().collect(),
        d: d.samples().to_vec(),
        r_d: r_d.samples().to_vec(),
        c_star: s.c_star,
        lower_bound: s.lower_bound,
        eigenfunction_deviation: dev,
    })
}

#[wasm_bindgen(js_name = optimalProfile)]
pub fn optimal_profile_js(d: &str, period: f64, alpha: f64, grid_size: usize) -> Result<OptimalProfile, JsError> {
    compute_optimal_profile(d, period, alpha, grid_size).map_err(|e| JsError::new(&e))
}

/// `c*_L` over geometrically spaced periods; `d` and `r` are given on the
/// unit period.
#[wasm_bindgen]
#[derive(Debug, Clone)]
pub struct Scan {
    ls: Vec<f64>,
    speeds: Vec<f64>,
    pub limit_value: f64,
    pub second_difference: f64,
    pub second_difference_tolerance: f64,
}

#[wasm_bindgen]
impl Scan {
    #[wasm_bindgen(getter)]
    pub fn ls(&self) -> Vec<f64> {
        self.ls.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn speeds(&self) -> Vec<f64> {
        self.speeds.clone()
    }
}

pub fn compute_period_scan(d: &str, r: &str, lo: f64, hi: f64, count: usize, grid_size: usize) -> Result<Scan, String> {
    if !(lo > 0.0 && hi > lo && count >= 3) {
        return Err("need 0 < L_min < L_max and at least three periods".into());
    }
    let (d, r) = pair(d, r, 1.0, grid_size)?;
    let scan = period_scan(&d, &r, &geometric_periods(lo, hi, count)).map_err(|e| e.to_string())?;
    Ok(Scan {
        ls: scan.ls,
        speeds: scan.extrapolated,
        limit_value: scan.limit_value,
        second_difference: scan.second_difference_at_zero,
        second_difference_tolerance: scan.second_difference_tolerance,
    })
}

#[wasm_bindgen(js_name = periodScan)]
pub fn period_scan_js(d: &str, r: &str, lo: f64, hi: f64, count: usize, grid_size: usize) -> Result<Scan, JsError> {
    compute_period_scan(d, r, lo, hi, count, grid_size).map_err(|e| JsError::new(&e))
}
