//! Dirichlet eigenvalues `tau_n` of `-y'' + x^alpha y` on the half-line and
//! their rotation onto the ray of the complex operator.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::action::j_integral;
use crate::error::{Error, Result};
use crate::pathquad::{integrate_real, QuadOptions};

/// Largest allowed `h * sqrt(tau_max)` on the coarse grid.
pub const MAX_PHASE_PER_STEP: f64 = 0.25;
/// Decay exponent `int sqrt(x^alpha - tau_max)` required past the turning point.
const DECAY_EXPONENT: f64 = 20.0;
const AUTO_PHASE_PER_STEP: f64 = 0.004;
const AUTO_MIN_POINTS: usize = 2000;
const AUTO_MAX_POINTS: usize = 400_000;

/// Discretization request. `None` fields are chosen automatically.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct FdGrid {
    /// Interior points of the coarse grid; the fine grid has `2 * points + 1`.
    pub points: Option<usize>,
    pub x_max: Option<f64>,
}

impl FdGrid {
    pub fn auto() -> Self {
        Self::default()
    }

    pub fn with_points(mut self, points: usize) -> Self {
        self.points = Some(points);
        self
    }

    pub fn with_x_max(mut self, x_max: f64) -> Self {
        self.x_max = Some(x_max);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Discretization {
    pub coarse_points: usize,
    pub fine_points: usize,
    pub x_max: f64,
    /// `|extrapolated - fine|` per eigenvalue.
    pub errors: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EigenvalueSet {
    pub alpha: f64,
    pub tau: Vec<f64>,
    /// Filled by [`rotate_spectrum`].
    pub lambda: Vec<Complex64>,
    pub theta: Option<f64>,
    pub discretization: Discretization,
}

/// Bohr-Sommerfeld estimate `(pi (n - 1/4) / B)^{2 alpha/(alpha+2)}`, used only to size the domain.
pub fn wkb_estimate(alpha: f64, n: usize) -> Result<f64> {
    let b = j_integral(alpha, 1e-10)?;
    Ok((std::f64::consts::PI * (n as f64 - 0.25) / b).powf(2.0 * alpha / (alpha + 2.0)))
}

/// Truncation point with `X^alpha >= 2 tau` and a decay exponent of at least 20 beyond the turning point.
pub fn truncation_point(alpha: f64, tau: f64) -> Result<f64> {
    let turn = tau.powf(1.0 / alpha);
    let mut x = (2.0 * tau).powf(1.0 / alpha);
    let decay = |x: f64| -> Result<f64> {
        let f = |s: f64| Complex64::new((s.powf(alpha) - tau).max(0.0).sqrt(), 0.0);
        Ok(integrate_real(f, turn, x, QuadOptions::new(1e-8))?.value.re)
    };
    while decay(x)? < DECAY_EXPONENT {
        x = turn + 1.25 * (x - turn);
    }
    Ok(x)
}

/// First `n_max` Dirichlet eigenvalues, second-order finite differences on two
/// grids (step `h` and `h/2`) combined by Richardson extrapolation.
pub fn tau_eigenvalues(alpha: f64, n_max: usize, grid: FdGrid) -> Result<EigenvalueSet> {
    if !(alpha > 0.0 && alpha <= 2.0) {
        return Err(Error::domain(format!("alpha must be in (0, 2], got {alpha}")));
    }
    if n_max == 0 {
        return Err(Error::domain("n_max must be >= 1"));
    }
    let tau_est = 1.2 * wkb_estimate(alpha, n_max)? + 1.0;
    let x_max = match grid.x_max {
        Some(x) if x > 0.0 => x,
        Some(x) => return Err(Error::domain(format!("x_max must be > 0, got {x}"))),
        None => truncation_point(alpha, tau_est)?,
    };
    let points = match grid.points {
        Some(p) => p,
        None => ((x_max * tau_est.sqrt() / AUTO_PHASE_PER_STEP).ceil() as usize).clamp(AUTO_MIN_POINTS, AUTO_MAX_POINTS),
    };
    if points < 4 * n_max {
        return Err(Error::Resolution(format!("{points} grid points cannot resolve {n_max} eigenvalues")));
    }
    let h = x_max / (points + 1) as f64;
    if h * tau_est.sqrt() > MAX_PHASE_PER_STEP {
        return Err(Error::Resolution(format!(
            "grid step {h:.3e} too coarse for tau up to {tau_est:.3e} (h*sqrt(tau) = {:.3} > {MAX_PHASE_PER_STEP})",
            h * tau_est.sqrt()
        )));
    }
    let fine_points = 2 * points + 1;
    let (coarse, fine) = rayon::join(
        || fd_eigenvalues(alpha, x_max, points, n_max),
        || fd_eigenvalues(alpha, x_max, fine_points, n_max),
    );
    let mut tau = Vec::with_capacity(n_max);
    let mut errors = Vec::with_capacity(n_max);
    for (c, f) in coarse.iter().zip(&fine) {
        let ext = (4.0 * f - c) / 3.0;
        tau.push(ext);
        errors.push((ext - f).abs());
    }
    let top = *tau.last().unwrap();
    if x_max.powf(alpha) < 2.0 * top {
        return Err(Error::Resolution(format!("x_max = {x_max} gives x^alpha < 2 tau_{n_max} = {}", 2.0 * top)));
    }
    if h * top.sqrt() > MAX_PHASE_PER_STEP {
        return Err(Error::Resolution(format!("grid step {h:.3e} too coarse for tau_{n_max} = {top:.6}")));
    }
    Ok(EigenvalueSet {
        alpha,
        tau,
        lambda: Vec::new(),
        theta: None,
        discretization: Discretization { coarse_points: points, fine_points, x_max, errors },
    })
}

/// Lowest `n` eigenvalues of the `points`-interior-node FD matrix on `[0, x_max]`.
fn fd_eigenvalues(alpha: f64, x_max: f64, points: usize, n: usize) -> Vec<f64> {
    let h = x_max / (points + 1) as f64;
    let h2 = h * h;
    // scaled by h^2: diagonal 2 + h^2 x^alpha, off-diagonal -1
    let diag: Vec<f64> = (1..=points).map(|i| 2.0 + h2 * (i as f64 * h).powf(alpha)).collect();
    let upper = diag.iter().cloned().fold(0.0, f64::max) + 2.0;
    (1..=n)
        .map(|k| {
            let (mut lo, mut hi) = (0.0, upper);
            while hi - lo > 1e-15 * hi.max(1e-300) {
                let mid = 0.5 * (lo + hi);
                if mid <= lo || mid >= hi {
                    break;
                }
                if sturm_count(&diag, mid) >= k {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            0.5 * (lo + hi) / h2
        })
        .collect()
}

/// Eigenvalues below `x` of the tridiagonal matrix with the given diagonal and unit off-diagonal `-1`.
fn sturm_count(diag: &[f64], x: f64) -> usize {
    let mut count = 0;
    let mut q = 1.0;
    for (i, &d) in diag.iter().enumerate() {
        q = if i == 0 { d - x } else { d - x - 1.0 / q };
        if q == 0.0 {
            q = -f64::EPSILON;
        }
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

/// Angle of the eigenvalue ray, `2 theta / (alpha + 2)`.
pub fn ray_angle(alpha: f64, theta: f64) -> f64 {
    2.0 * theta / (alpha + 2.0)
}

/// `lambda_n = c^{2/(alpha+2)} tau_n` with `|c| = 1`.
pub fn rotate_spectrum(set: &EigenvalueSet, theta: f64) -> Result<EigenvalueSet> {
    if !(0.0..std::f64::consts::PI).contains(&theta) {
        return Err(Error::domain(format!("theta must be in [0, pi), got {theta}")));
    }
    let arg = ray_angle(set.alpha, theta);
    let mut out = set.clone();
    out.lambda = set.tau.iter().map(|&t| Complex64::from_polar(t, arg)).collect();
    out.theta = Some(theta);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn harmonic_oscillator_odd_levels() {
        let s = tau_eigenvalues(2.0, 3, FdGrid::auto()).unwrap();
        for (t, e) in s.tau.iter().zip([3.0, 7.0, 11.0]) {
            assert!((t - e).abs() < 1e-6, "{t} vs {e}");
        }
        assert!(s.discretization.errors.iter().all(|&e| e < 1e-4));
    }

    #[test]
    fn sturm_count_small_matrix() {
        // [[2,-1],[-1,2]] has eigenvalues 1 and 3
        let d = [2.0, 2.0];
        assert_eq!(sturm_count(&d, 0.5), 0);
        assert_eq!(sturm_count(&d, 2.0), 1);
        assert_eq!(sturm_count(&d, 3.5), 2);
    }

    #[test]
    fn coarse_grid_is_rejected() {
        let e = tau_eigenvalues(1.0, 5, FdGrid::auto().with_points(40)).unwrap_err();
        assert!(matches!(e, Error::Resolution(_)), "{e}");
        let e = tau_eigenvalues(1.0, 5, FdGrid::auto().with_x_max(3.0)).unwrap_err();
        assert!(matches!(e, Error::Resolution(_)), "{e}");
    }

    #[test]
    fn rotation() {
        let s = tau_eigenvalues(1.0, 3, FdGrid::auto()).unwrap();
        let r = rotate_spectrum(&s, 0.0).unwrap();
        for (l, t) in r.lambda.iter().zip(&s.tau) {
            assert_eq!(*l, Complex64::new(*t, 0.0));
        }
        let r = rotate_spectrum(&s, 5.0 * PI / 6.0).unwrap();
        for l in &r.lambda {
            assert!((l.arg() - 5.0 * PI / 9.0).abs() < 1e-15);
        }
        assert!(rotate_spectrum(&s, PI).unwrap_err().is_domain());
    }

    #[test]
    fn wkb_estimate_is_close() {
        let s = tau_eigenvalues(1.0, 4, FdGrid::auto()).unwrap();
        for (n, t) in s.tau.iter().enumerate() {
            let w = wkb_estimate(1.0, n + 1).unwrap();
            assert!((t - w).abs() / t < 0.02, "n={} {t} vs {w}", n + 1);
        }
    }
}
