//! Invariant suite behind `spectral-threshold verify`.

use std::f64::consts::PI;

use threshold_core::threshold::{airy_rho, count_sign_changes, RhoFn};
use threshold_core::wkb::{dichotomy_check, wronskian_check, MONOTONICITY_SAMPLES};
use threshold_core::{
    airy_theta0_closed_form, monotonicity_report, rho, rotate_spectrum, t0, tau_eigenvalues, theta0, theta_upper,
    wkb_compare, FdGrid, ModelParams, PathLabel,
};

use crate::format::g;
use crate::output::{emit, Output, Record};
use crate::{CliError, RunConfig};

const ALPHA_SET: [f64; 6] = [0.25, 0.5, 2.0 / 3.0, 1.0, 1.5, 1.9];
const AGREEMENT_FLOOR: f64 = 1e-8;
/// Quadrature errors of the three routes add up; allow two orders above `rel_tol`.
const AGREEMENT_FACTOR: f64 = 100.0;
const ROOT_FLOOR: f64 = 1e-8;
const SIGN_GRID: usize = 64;
const SIGN_MARGIN: f64 = 1e-6;
const HARMONIC_TOL: f64 = 1e-4;
/// Frozen `k * deviation` bounds from the regression runs.
const WKB_BOUNDS: [((f64, f64), f64); 2] = [((0.5, 1.4), 1.6), ((1.0, 2.7), 0.4)];
const WRONSKIAN_TOL: f64 = 1e-6;
const DICHOTOMY_FACTOR: f64 = 1.5;

struct Check {
    name: &'static str,
    passed: bool,
    detail: String,
}

fn check(name: &'static str, f: impl FnOnce() -> threshold_core::Result<(bool, String)>) -> Check {
    match f() {
        Ok((passed, detail)) => Check { name, passed, detail },
        Err(e) => Check { name, passed: false, detail: format!("error: {e}") },
    }
}

fn interior_angles(alpha: f64) -> threshold_core::Result<Vec<f64>> {
    let (lo, hi) = (t0(alpha)?, theta_upper(alpha)?);
    Ok([0.05, 0.25, 0.5, 0.75, 0.95].iter().map(|s| lo + s * (hi - lo)).collect())
}

fn three_way(rel_tol: f64) -> threshold_core::Result<(bool, String)> {
    let tol = AGREEMENT_FLOOR.max(AGREEMENT_FACTOR * rel_tol);
    let mut worst: f64 = 0.0;
    for alpha in ALPHA_SET {
        for theta in interior_angles(alpha)? {
            worst = worst.max(rho(&ModelParams::new(alpha, theta)?, rel_tol)?.max_disagreement());
        }
    }
    Ok((worst <= tol, format!("max delta = {} (tol {})", g(worst), g(tol))))
}

fn sign_structure(tol: f64, rel_tol: f64) -> threshold_core::Result<(bool, String)> {
    let mut bad = Vec::new();
    for alpha in ALPHA_SET {
        let f = RhoFn::new(alpha, rel_tol)?;
        let left = f.eval(t0(alpha)? + SIGN_MARGIN)?;
        let root = theta0(alpha, tol);
        let changes = count_sign_changes(alpha, SIGN_GRID, SIGN_MARGIN, rel_tol)?;
        if !(left < 0.0) || root.is_err() || changes > 1 {
            bad.push(format!("alpha = {}: rho(t0+) = {}, root {}, {changes} sign changes", g(alpha), g(left), if root.is_ok() { "found" } else { "missing" }));
        }
    }
    let ok = bad.is_empty();
    Ok((ok, if ok { format!("{} alphas: negative at t0, one zero", ALPHA_SET.len()) } else { bad.join("; ") }))
}

fn monotonicity() -> threshold_core::Result<(bool, String)> {
    let pairs = [(0.5, 1.3), (1.0, 2.7), (1.7, 3.1)];
    let labels = [PathLabel::L1, PathLabel::L3, PathLabel::L2, PathLabel::RealAxis, PathLabel::Vertical];
    let mut violations = 0;
    for (alpha, theta) in pairs {
        let p = ModelParams::new(alpha, theta)?;
        for label in labels {
            violations += monotonicity_report(&p, label, MONOTONICITY_SAMPLES)?.violations;
        }
    }
    Ok((violations == 0, format!("{violations} violations over {} paths", pairs.len() * labels.len())))
}

fn airy(tol: f64, rel_tol: f64) -> threshold_core::Result<(bool, String)> {
    let root_tol = ROOT_FLOOR.max(tol);
    let root_err = (theta0(1.0, tol)?.theta0 - airy_theta0_closed_form()).abs();
    let closed_tol = AGREEMENT_FLOOR.max(AGREEMENT_FACTOR * rel_tol);
    let mut closed_err: f64 = 0.0;
    for i in 1..10 {
        let theta = 2.0 * PI / 3.0 + PI / 3.0 * i as f64 / 10.0;
        closed_err = closed_err.max((rho(&ModelParams::new(1.0, theta)?, rel_tol)?.rho - airy_rho(theta)).abs());
    }
    Ok((
        root_err <= root_tol && closed_err <= closed_tol,
        format!("|theta0(1) - 5pi/6| = {} (tol {}), max |rho - closed form| = {} (tol {})", g(root_err), g(root_tol), g(closed_err), g(closed_tol)),
    ))
}

fn spectral_ray() -> threshold_core::Result<(bool, String)> {
    let harmonic = tau_eigenvalues(2.0, 3, FdGrid::auto())?;
    let err = harmonic.tau.iter().zip([3.0, 7.0, 11.0]).map(|(t, e)| (t - e).abs()).fold(0.0, f64::max);
    let mut ray: f64 = 0.0;
    for (alpha, theta) in [(1.0, 5.0 * PI / 6.0), (2.0 / 3.0, PI / 2.0)] {
        let set = rotate_spectrum(&tau_eigenvalues(alpha, 4, FdGrid::auto())?, theta)?;
        let expected = 2.0 * theta / (alpha + 2.0);
        for l in &set.lambda {
            ray = ray.max((l.arg() - expected).abs());
        }
    }
    Ok((
        err < HARMONIC_TOL && ray <= 4.0 * f64::EPSILON,
        format!("max |tau - (3, 7, 11)| = {} (tol {}), max |arg lambda - 2 theta/(alpha+2)| = {}", g(err), g(HARMONIC_TOL), g(ray)),
    ))
}

fn wkb() -> threshold_core::Result<(bool, String)> {
    let mut ok = true;
    let mut parts = Vec::new();
    for ((alpha, theta), c) in WKB_BOUNDS {
        let p = ModelParams::new(alpha, theta)?;
        let d20 = wkb_compare(&p, 20.0)?.ratio_deviation;
        let d40 = wkb_compare(&p, 40.0)?.ratio_deviation;
        let drift = wronskian_check(&p, 20.0)?.max_relative_drift;
        let dich = dichotomy_check(&p, 20.0)?;
        ok &= d40 < d20 && 20.0 * d20 <= c && 40.0 * d40 <= c && drift < WRONSKIAN_TOL && dich.within_factor(DICHOTOMY_FACTOR);
        parts.push(format!(
            "({}, {}): k dev = {}, {} (bound {}), wronskian drift {}, dichotomy {}",
            g(alpha),
            g(theta),
            g(20.0 * d20),
            g(40.0 * d40),
            g(c),
            g(drift),
            g(dich.coefficient_ratio)
        ));
    }
    Ok((ok, parts.join("; ")))
}

pub fn run(cfg: &RunConfig) -> Result<(), CliError> {
    let checks = [
        check("three-way rho agreement", || three_way(cfg.rel_tol)),
        check("rho sign structure", || sign_structure(cfg.tol, cfg.rel_tol)),
        check("Re S monotonicity", monotonicity),
        check("Airy closed form", || airy(cfg.tol, cfg.rel_tol)),
        check("spectral ray", spectral_ray),
        check("WKB convergence", wkb),
    ];
    let rows: Vec<Record> = checks
        .iter()
        .map(|c| Record::new().text("check", c.name).text("status", if c.passed { "PASS" } else { "FAIL" }).text("detail", c.detail.clone()))
        .collect();
    if cfg.format.is_none() && cfg.out.is_none() {
        for c in &checks {
            println!("{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
        }
    } else {
        emit(cfg, &Output::Table(rows), None)?;
    }
    let failed: Vec<&str> = checks.iter().filter(|c| !c.passed).map(|c| c.name).collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::Verify(failed.join(", ")))
    }
}
