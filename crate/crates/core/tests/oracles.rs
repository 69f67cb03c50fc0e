//! Library results against oracles written independently here.

use std::f64::consts::PI;

use num_complex::Complex64;
use statrs::function::gamma::gamma;
use threshold_core::spectral::{ray_angle, tau_eigenvalues, FdGrid};
use threshold_core::threshold::{airy_theta0_closed_form, airy_tau, count_sign_changes, curve, smallest_alpha_above_half_pi};
use threshold_core::{rho, rho_value, t0, theta0, theta_upper, ModelParams};

/// Composite Simpson with `n` (even) panels.
fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
    let h = (b - a) / n as f64;
    let mut s = f(a) + f(b);
    for i in 1..n {
        s += f(a + i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 };
    }
    s * h / 3.0
}

/// rho(theta) from scratch: I along gamma in u = sqrt(t), J from Gamma functions.
fn rho_oracle(alpha: f64, theta: f64) -> f64 {
    let t0 = 2.0 * PI * alpha / (alpha + 2.0);
    let c = Complex64::from_polar(1.0, theta);
    let mu0 = Complex64::from_polar(1.0, t0);
    let tau = (theta - t0).sin() / theta.sin();
    let integrand = |u: f64| {
        let t = u * u;
        let zeta = ((mu0 - t) / c).powf(1.0 / alpha);
        let zeta_t = -zeta / (alpha * (mu0 - t));
        2.0 * t * zeta_t.im
    };
    let i = simpson(integrand, 0.0, tau.sqrt(), 20_000);
    let b = PI.sqrt() * gamma(1.0 / alpha + 1.0) / (2.0 * gamma(1.0 / alpha + 1.5));
    i - (theta / alpha).sin() * b
}

#[test]
fn rho_matches_independent_quadrature() {
    for &alpha in &[0.3, 0.5, 0.8, 1.2, 1.6] {
        let (lo, hi) = (t0(alpha).unwrap(), theta_upper(alpha).unwrap());
        for i in 1..6 {
            let theta = lo + (hi - lo) * i as f64 / 6.0;
            let lib = rho(&ModelParams::new(alpha, theta).unwrap(), 1e-12).unwrap().rho;
            let oracle = rho_oracle(alpha, theta);
            assert!((lib - oracle).abs() < 1e-9, "alpha={alpha} theta={theta}: {lib} vs {oracle}");
        }
    }
}

#[test]
fn airy_reference_values() {
    let r = rho(&ModelParams::new(1.0, 2.0 * PI / 3.0).unwrap(), 1e-12).unwrap();
    assert!((r.rho + 3f64.sqrt() / 3.0).abs() < 1e-10);
    let r = rho(&ModelParams::new(1.0, 3.0 * PI / 4.0).unwrap(), 1e-12).unwrap();
    // (2/3)((sin(pi/12)/sin(3pi/4))^{3/2} - 1) sin(3pi/4)
    assert!((r.rho + 0.367014115020026).abs() < 1e-10, "{}", r.rho);
    assert!((airy_tau(5.0 * PI / 6.0) - 1.0).abs() < 1e-15);
    assert_eq!(airy_theta0_closed_form(), 5.0 * PI / 6.0);
}

#[test]
fn airy_root_identity() {
    let s = theta0(1.0, 1e-10).unwrap();
    assert!(((s.theta0 - 2.0 * PI / 3.0).sin() - s.theta0.sin()).abs() < 1e-9);
    assert!((s.delta_t() - PI / 6.0).abs() < 1e-8);
}

/// Roots from an independent prototype (SciPy, I - J and S-forms agreeing to 1e-16).
#[test]
fn thresholds_match_reference() {
    for (alpha, expected) in [
        (0.25, 0.7578027559943671),
        (0.5, 1.4593986221689121),
        (2.0 / 3.0, 1.8897361172234306),
        (1.5, 3.1264679457792277),
    ] {
        let s = theta0(alpha, 1e-12).unwrap();
        assert!((s.theta0 - expected).abs() < 1e-9, "alpha={alpha}: {} vs {expected}", s.theta0);
    }
}

#[test]
fn single_sign_change() {
    for &alpha in &[0.25, 0.5, 2.0 / 3.0, 1.0, 1.5] {
        assert_eq!(count_sign_changes(alpha, 400, 1e-6, 1e-10).unwrap(), 1, "alpha={alpha}");
    }
    // for alpha = 1.9 the sign change is within 1e-12 of pi: scan geometrically toward it
    let values: Vec<f64> = (2..=14)
        .map(|e| rho_value(&ModelParams::new(1.9, PI - 10f64.powi(-e)).unwrap(), 1e-12).unwrap())
        .collect();
    assert!(values.windows(2).all(|w| w[1] > w[0]));
    assert_eq!(values.windows(2).filter(|w| (w[0] < 0.0) != (w[1] < 0.0)).count(), 1);
}

#[test]
fn curve_hits_airy_value() {
    let samples = curve(0.5, 1.5, 11, 1e-10).unwrap();
    let s = samples.iter().find(|s| (s.alpha - 1.0).abs() < 1e-12).unwrap();
    assert!((s.theta0 - 5.0 * PI / 6.0).abs() < 1e-8);
    let dt = samples.iter().find(|s| (s.alpha - 0.7).abs() < 1e-12).map(|s| s.delta_t()).unwrap();
    assert!(dt > 0.0);
}

#[test]
fn threshold_above_half_pi_below_two_thirds() {
    let samples = curve(0.6, 2.0 / 3.0, 67, 1e-10).unwrap();
    let a = smallest_alpha_above_half_pi(&samples).unwrap();
    println!("smallest sampled alpha with theta0 > pi/2: {a:.4}");
    assert!(a < 2.0 / 3.0);
}

#[test]
fn sector_clearance() {
    for &alpha in &[0.25, 0.5, 2.0 / 3.0, 1.0, 1.5] {
        let lo = t0(alpha).unwrap();
        let hi = theta0(alpha, 1e-10).unwrap().theta0;
        for i in 0..=20 {
            let theta = lo + (hi - lo) * i as f64 / 20.0;
            assert!(ray_angle(alpha, theta) < lo);
        }
    }
}

/// RK4 shooting with a node count, bisection in the energy.
fn shooting(alpha: f64, n: usize, x_max: f64, steps: usize) -> f64 {
    let nodes = |e: f64| {
        let h = x_max / steps as f64;
        let (mut y, mut dy, mut count) = (0.0f64, 1.0f64, 0);
        let g = |x: f64, y: f64| (x.powf(alpha) - e) * y;
        for i in 0..steps {
            let x = i as f64 * h;
            let k1 = (dy, g(x, y));
            let k2 = (dy + 0.5 * h * k1.1, g(x + 0.5 * h, y + 0.5 * h * k1.0));
            let k3 = (dy + 0.5 * h * k2.1, g(x + 0.5 * h, y + 0.5 * h * k2.0));
            let k4 = (dy + h * k3.1, g(x + h, y + h * k3.0));
            let y_new = y + h / 6.0 * (k1.0 + 2.0 * k2.0 + 2.0 * k3.0 + k4.0);
            dy += h / 6.0 * (k1.1 + 2.0 * k2.1 + 2.0 * k3.1 + k4.1);
            if i > 0 && y_new.signum() != y.signum() {
                count += 1;
            }
            y = y_new;
        }
        count
    };
    let (mut lo, mut hi) = (0.0, 60.0);
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        if nodes(mid) >= n {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

#[test]
fn eigenvalues_match_shooting() {
    for (alpha, x_max) in [(0.5, 60.0), (1.5, 10.0)] {
        let set = tau_eigenvalues(alpha, 3, FdGrid::auto()).unwrap();
        for n in 1..=3 {
            let oracle = shooting(alpha, n, x_max, 200_000);
            assert!((set.tau[n - 1] - oracle).abs() < 1e-6, "alpha={alpha} n={n}: {} vs {oracle}", set.tau[n - 1]);
        }
    }
}

#[test]
fn refinement_stays_within_error_estimate() {
    for alpha in [0.5, 1.0, 1.5] {
        let base = tau_eigenvalues(alpha, 4, FdGrid::auto()).unwrap();
        let d = &base.discretization;
        let fine = tau_eigenvalues(alpha, 4, FdGrid::auto().with_x_max(2.0 * d.x_max).with_points(4 * d.coarse_points + 3)).unwrap();
        for n in 0..4 {
            assert!((base.tau[n] - fine.tau[n]).abs() < d.errors[n], "alpha={alpha} n={}", n + 1);
        }
    }
}

#[test]
fn airy_first_zero() {
    let set = tau_eigenvalues(1.0, 1, FdGrid::auto()).unwrap();
    assert!((set.tau[0] - 2.338107410459767).abs() < 1e-8);
}
