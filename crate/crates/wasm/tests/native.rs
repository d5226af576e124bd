use periodic_kpp_wasm::*;

const TAU: f64 = std::f64::consts::TAU;

#[test]
fn curve_has_its_minimum_at_c_star() {
    let c = compute_speed_curve("1/(1 - 0.5*sin(x))", "1 + 0.5*sin(x)", TAU, 128, 41).unwrap();
    assert_eq!(c.lambdas().len(), 41);
    let min = c.values().iter().copied().fold(f64::INFINITY, f64::min);
    assert!(min >= c.c_star - 1e-9);
    assert!((c.c_star - 2.0).abs() < 1e-3);
    assert!(c.condition_residual < 1e-10);
}

#[test]
fn optimal_profile_attains_bound() {
    let p = compute_optimal_profile("1 + 0.5*cos(x)", TAU, 1.0, 128).unwrap();
    assert_eq!(p.xs().len(), 128);
    let mean = p.r_d().iter().sum::<f64>() / 128.0;
    assert!((mean - 1.0).abs() < 1e-12);
    assert!((p.c_star - p.lower_bound).abs() < 1e-3);
    assert!(p.eigenfunction_deviation > 1e-3);
}

#[test]
fn scan_is_monotone() {
    let s = compute_period_scan("1", "1 + 0.5*sin(2*pi*x)", 0.05, 20.0, 8, 64).unwrap();
    assert!(s.speeds().windows(2).all(|w| w[1] >= w[0] - 1e-6));
    assert!((s.limit_value - 2.0).abs() < 1e-12);
}

#[test]
fn bad_input_is_reported() {
    let err = compute_speed_curve("1 + ", "1", TAU, 64, 10).unwrap_err();
    assert!(err.starts_with("d: syntax error"));
    assert!(compute_period_scan("1", "1", 2.0, 1.0, 5, 64).is_err());
}
