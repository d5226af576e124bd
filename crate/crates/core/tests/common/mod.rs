//! Reference computations that share no code with the library.
#![allow(dead_code)]

pub const TAU: f64 = std::f64::consts::TAU;

/// Trace of the monodromy matrix of `phi' = q / d`, `q' = -(r + k) phi`
/// over one period, by RK4 with `steps` steps.
pub fn monodromy_trace(d: &dyn Fn(f64) -> f64, r: &dyn Fn(f64) -> f64, period: f64, k: f64, steps: usize) -> f64 {
    let h = period / steps as f64;
    let f = |x: f64, y: [f64; 2]| -> [f64; 2] { [y[1] / d(x), -(r(x) + k) * y[0]] };
    let mut trace = 0.0;
    for start in [[1.0, 0.0], [0.0, 1.0]] {
        let mut y = start;
        for i in 0..steps {
            let x = i as f64 * h;
            let k1 = f(x, y);
            let k2 = f(x + h / 2.0, [y[0] + h / 2.0 * k1[0], y[1] + h / 2.0 * k1[1]]);
            let k3 = f(x + h / 2.0, [y[0] + h / 2.0 * k2[0], y[1] + h / 2.0 * k2[1]]);
            let k4 = f(x + h, [y[0] + h * k3[0], y[1] + h * k3[1]]);
            for c in 0..2 {
                y[c] += h / 6.0 * (k1[c] + 2.0 * k2[c] + 2.0 * k3[c] + k4[c]);
            }
        }
        trace += if start[0] == 1.0 { y[0] } else { y[1] };
    }
    trace
}

/// Principal eigenvalue `k_lambda`: `phi = e^{lambda x} psi` solves
/// `(d phi')' + r phi = -k phi` with Floquet multiplier `e^{lambda L}`, and
/// `k_lambda` is the lowest `k` where the monodromy trace falls to
/// `2 cosh(lambda L)`.
pub fn floquet_k(d: &dyn Fn(f64) -> f64, r: &dyn Fn(f64) -> f64, period: f64, lambda: f64) -> f64 {
    let steps = 4000;
    let target = 2.0 * (lambda * period).cosh();
    let g = |k: f64| monodromy_trace(d, r, period, k, steps) - target;
    let (mut dmax, mut rmax) = (0.0f64, f64::NEG_INFINITY);
    for i in 0..1000 {
        let x = i as f64 * period / 1000.0;
        dmax = dmax.max(d(x));
        rmax = rmax.max(r(x));
    }
    let mut lo = -(rmax + lambda * lambda * dmax * 4.0 + 10.0);
    assert!(g(lo) > 0.0);
    let step = 0.01;
    let mut hi = lo + step;
    while g(hi) > 0.0 {
        lo = hi;
        hi += step;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if g(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-14 * lo.abs().max(1.0) {
            break;
        }
    }
    0.5 * (lo + hi)
}

/// `min_lambda -k_lambda / lambda` by golden section on a log scale.
pub fn floquet_speed(d: &dyn Fn(f64) -> f64, r: &dyn Fn(f64) -> f64, period: f64, lo: f64, hi: f64) -> (f64, f64) {
    let f = |l: f64| -floquet_k(d, r, period, l) / l;
    let phi = (5.0f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (lo.ln(), hi.ln());
    let mut x1 = b - phi * (b - a);
    let mut x2 = a + phi * (b - a);
    let (mut f1, mut f2) = (f(x1.exp()), f(x2.exp()));
    while b - a > 1e-7 {
        if f1 < f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - phi * (b - a);
            f1 = f(x1.exp());
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + phi * (b - a);
            f2 = f(x2.exp());
        }
    }
    let l = (0.5 * (a + b)).exp();
    (f(l), l)
}

/// Composite Simpson rule on `[0, period]` with `n` (even) intervals.
pub fn simpson(f: &dyn Fn(f64) -> f64, period: f64, n: usize) -> f64 {
    let h = period / n as f64;
    let mut s = f(0.0) + f(period);
    for i in 1..n {
        s += f(i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 };
    }
    s * h / 3.0
}
