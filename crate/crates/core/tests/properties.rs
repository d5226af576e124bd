use std::f64::consts::TAU;

use periodic_kpp::eigen::DiscretePair;
use periodic_kpp::expr::parse_spec;
use periodic_kpp::speed::speed_curve;
use periodic_kpp::*;
use proptest::prelude::*;

fn fourier_text(a0: f64, harmonics: &[(f64, f64)]) -> String {
    let mut s = format!("fourier: {a0:?}");
    for (a, b) in harmonics {
        s.push_str(&format!(", [{a:?}, {b:?}]"));
    }
    s
}

/// Trig polynomial of order at most 3 with mean `a0` and harmonics scaled
/// so that the minimum stays above `(1 - amp) a0`.
fn positive_series() -> impl Strategy<Value = String> {
    (prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1..=3), 0.0f64..0.8, 0.2f64..5.0).prop_map(
        |(h, amp, scale)| {
            let total: f64 = h.iter().map(|(a, b)| a.abs() + b.abs()).sum::<f64>().max(1e-9);
            let h: Vec<(f64, f64)> = h
                .iter()
                .map(|(a, b)| (scale * amp * a / total, scale * amp * b / total))
                .collect();
            fourier_text(scale, &h)
        },
    )
}

fn coefficient(text: &str, period: f64, n: usize) -> PeriodicCoefficient {
    parse_coefficient(text, period, n).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn harmonic_mean_below_arithmetic(spec in positive_series()) {
        let c = coefficient(&spec, TAU, 64);
        let m = means(&c);
        let (am, hm) = (m.arithmetic_mean, m.harmonic_mean.unwrap());
        prop_assert!(hm <= am * (1.0 + 1e-15));
        // am - hm = hm <(c - am)^2 / c> / am bounds the sample variance.
        let var = c.samples().iter().map(|v| (v - am).powi(2)).sum::<f64>() / 64.0;
        prop_assert!(var <= (am - hm) * am * c.max() / hm * (1.0 + 1e-9) + 1e-15);
    }

    #[test]
    fn means_survive_dilation(spec in positive_series(), new_period in 0.01f64..100.0) {
        let c = coefficient(&spec, TAU, 128);
        let scaled = c.rescale_period(new_period).unwrap();
        let (a, b) = (means(&c), means(&scaled));
        prop_assert!((a.arithmetic_mean - b.arithmetic_mean).abs() <= 1e-12);
        prop_assert!((a.harmonic_mean.unwrap() - b.harmonic_mean.unwrap()).abs() <= 1e-12);
    }

    #[test]
    fn fourier_record_round_trips(
        a0 in -5.0f64..5.0,
        h in prop::collection::vec((-3.0f64..3.0, -3.0f64..3.0), 0..5),
        reciprocal in any::<bool>(),
    ) {
        let body = fourier_text(a0, &h);
        let text = if reciprocal { format!("reciprocal_{body}") } else { body };
        let printed = parse_spec(&text, 3.0).unwrap().to_string();
        prop_assert_eq!(parse_spec(&printed, 3.0).unwrap(), parse_spec(&text, 3.0).unwrap());
        if !reciprocal {
            let a = coefficient(&text, 3.0, 32);
            let b = coefficient(&printed, 3.0, 32);
            prop_assert!(a.samples().iter().zip(b.samples()).all(|(x, y)| x.to_bits() == y.to_bits()));
        }
    }

    #[test]
    fn constant_test_function_bounds_eigenvalue(
        d in positive_series(),
        r in positive_series(),
        lambda in 0.1f64..3.0,
    ) {
        let (d, r) = (coefficient(&d, TAU, 128), coefficient(&r, TAU, 128));
        let k = principal_eigenpair(&assemble_operator(&d, &r, lambda).unwrap()).unwrap();
        prop_assert!(k.psi.iter().all(|v| *v > 0.0));
        let bound = -means(&r).arithmetic_mean - lambda * lambda * means(&d).harmonic_mean.unwrap();
        prop_assert!(k.k <= bound + 1e-6 * bound.abs().max(1.0), "k = {} bound = {}", k.k, bound);
    }

    #[test]
    fn constant_coefficient_eigenvalue(d0 in 0.1f64..10.0, r0 in -5.0f64..5.0, lambda in 0.05f64..4.0) {
        let d = PeriodicCoefficient::constant(d0, TAU, 64).unwrap();
        let r = PeriodicCoefficient::constant(r0, TAU, 64).unwrap();
        let pair = principal_eigenpair(&assemble_operator(&d, &r, lambda).unwrap()).unwrap();
        prop_assert!((pair.k + lambda * lambda * d0 + r0).abs() < 1e-10);
        prop_assert!(pair.deviation() < 1e-10);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn speed_exceeds_lower_bound(d in positive_series(), r in positive_series()) {
        let (d, r) = (coefficient(&d, TAU, 128), coefficient(&r, TAU, 128));
        let s = minimal_speed(&d, &r).unwrap();
        prop_assert!(s.c_star >= s.lower_bound - 1e-6, "{s:?}");
    }

    #[test]
    fn optimal_growth_meets_equality(d in positive_series(), alpha in 0.2f64..5.0) {
        let d = coefficient(&d, TAU, 256);
        let r_d = optimal_growth(&d, alpha).unwrap();
        prop_assert!((means(&r_d).arithmetic_mean - alpha).abs() < 1e-10);
        prop_assert!(condition_residual(&d, &r_d).unwrap() < 1e-10);
        let hm = means(&d).harmonic_mean.unwrap();
        let lambda0 = (alpha / hm).sqrt();
        let s = minimal_speed(&d, &r_d).unwrap();
        prop_assert!((s.richardson_estimate - 2.0 * (hm * alpha).sqrt()).abs() < 1e-4, "{s:?}");
        prop_assert!(s.gap() < 1e-4);
        prop_assert!((s.lambda_star - lambda0).abs() < 1e-4 * lambda0);
        for k in [1e-3, 1.0, 1e3] {
            prop_assert!(scale_invariance_check(&d, alpha, k).unwrap() < 1e-12);
        }
    }

    #[test]
    fn optimal_pair_is_strict(d in positive_series(), alpha in 0.2f64..5.0) {
        let d = coefficient(&d, TAU, 256);
        let r_d = optimal_growth(&d, alpha).unwrap();
        let lambda0 = (alpha / means(&d).harmonic_mean.unwrap()).sqrt();
        let g = speed_curve(&d, &r_d, &[0.9 * lambda0, lambda0, 1.1 * lambda0]).unwrap();
        prop_assert!(g[0] - g[1] >= 1e-6 && g[2] - g[1] >= 1e-6, "{g:?}");
        let v = variational_value(&d, &r_d, lambda0).unwrap();
        let (lo, hi) = v.phi.iter().fold((f64::INFINITY, 0.0f64), |(a, b), p| (a.min(*p), b.max(*p)));
        prop_assert!((hi - lo) * TAU.sqrt() < 1e-6);
    }

    #[test]
    fn variational_matches_eigenvalue(d in positive_series(), r in positive_series(), lambda in 0.2f64..2.0) {
        let (d, r) = (coefficient(&d, TAU, 256), coefficient(&r, TAU, 256));
        let k = principal_eigenpair(&assemble_operator(&d, &r, lambda).unwrap()).unwrap().k;
        let v = variational_value(&d, &r, lambda).unwrap().value;
        prop_assert!((v - k).abs() <= 1e-4 * k.abs().max(1.0), "variational {v} eigen {k}");
    }
}

#[test]
fn eigenvalue_converges_at_second_order() {
    let k_at = |n: usize| {
        let d = coefficient("1/(1 - 0.5*sin(x))", TAU, n);
        let r = coefficient("1 + 0.3*cos(x) - 0.2*sin(2*x)", TAU, n);
        DiscretePair::new(&d, &r).unwrap().eigenvalue_with_slope(0.8).unwrap().0
    };
    let (a, b, c) = (k_at(128), k_at(256), k_at(512));
    let order = ((a - b) / (b - c)).abs().log2();
    assert!(order >= 1.9, "observed order {order}");
    assert!((a - b).abs() * 128.0 * 128.0 < 10.0);
}

#[test]
fn homogeneous_speed_scales_with_root_of_d() {
    for k in [0.01, 0.5, 3.0, 40.0] {
        let d = PeriodicCoefficient::constant(k * 1.5, TAU, 64).unwrap();
        let r = PeriodicCoefficient::constant(2.0, TAU, 64).unwrap();
        let s = minimal_speed(&d, &r).unwrap();
        assert!((s.c_star - 2.0 * (k * 3.0f64).sqrt()).abs() < 1e-8, "k = {k}: {s:?}");
    }
}

#[test]
fn constancy_verdict_tracks_variation_of_d() {
    for amp in [0.0, 1e-10, 1e-3, 0.1, 0.5, 1.2] {
        let d = coefficient(&format!("2 + {amp}*(cos(x) - 0.5*sin(3*x))"), TAU, 256);
        let constant = d.max() - d.min() < 1e-8;
        let verdict = constancy_test(&d, 1.0).unwrap().verdict;
        assert_eq!(verdict == Verdict::Constant, constant, "amplitude {amp}");
    }
}

#[test]
fn fine_grids_converge() {
    for n in [1024, 2048] {
        let d = coefficient("1/(1 - 0.5*sin(x))", TAU, n);
        let r = coefficient("1 + 0.5*sin(x)", TAU, n);
        let s = minimal_speed(&d, &r).unwrap();
        assert!((s.c_star - 2.0).abs() < 1.5e-6, "n = {n}: {s:?}");
    }
}
