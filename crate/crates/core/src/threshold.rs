//! Root of `rho(theta)` on `(t0(alpha), min(pi, pi*alpha))` and its sampling in `alpha`.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::action::{gamma_i, j_integral};
use crate::complexcore::{t0_unchecked as t0, ModelParams};
use crate::error::{Error, Result};
use crate::pathquad::ROOT_REL_TOL;

pub const DEFAULT_TOL: f64 = 1e-10;
/// Initial distance kept from each end of the admissible interval.
pub const EDGE_MARGIN: f64 = 1e-6;
/// Smallest margin tried when the bracket has to be pushed toward an end.
/// For alpha close to 2 the root sits within 1e-12 of pi.
pub const MIN_EDGE_MARGIN: f64 = 1e-14;
const MAX_ITER: usize = 200;
/// Points per warm-started chunk in [`curve`]. Fixed so results do not depend on thread count.
const CURVE_CHUNK: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThresholdSample {
    pub alpha: f64,
    pub theta0: f64,
    /// `|rho(theta0)|`
    pub residual: f64,
    /// Final enclosing interval, `rho(lo) < 0 < rho(hi)`.
    pub bracket: (f64, f64),
    pub evaluations: usize,
}

impl ThresholdSample {
    pub fn t0(&self) -> f64 {
        t0(self.alpha)
    }

    pub fn delta_t(&self) -> f64 {
        self.theta0 - self.t0()
    }
}

/// `rho(theta)` for fixed alpha, with the `theta`-independent integral cached.
#[derive(Debug, Clone, Copy)]
pub struct RhoFn {
    alpha: f64,
    b: f64,
    rel_tol: f64,
}

impl RhoFn {
    pub fn new(alpha: f64, rel_tol: f64) -> Result<Self> {
        // validates alpha
        ModelParams::new(alpha, t0(alpha))?;
        Ok(RhoFn { alpha, b: j_integral(alpha, rel_tol)?, rel_tol })
    }

    pub fn eval(&self, theta: f64) -> Result<f64> {
        let p = ModelParams::new(self.alpha, theta)?;
        Ok(gamma_i(&p, self.rel_tol)? - (theta / self.alpha).sin() * self.b)
    }
}

/// `theta0(alpha)` to within `tol` in theta.
pub fn theta0(alpha: f64, tol: f64) -> Result<ThresholdSample> {
    theta0_with_guess(alpha, tol, None)
}

/// As [`theta0`], first trying a narrow bracket around `guess`.
pub fn theta0_with_guess(alpha: f64, tol: f64, guess: Option<f64>) -> Result<ThresholdSample> {
    if !(tol > 0.0) {
        return Err(Error::domain(format!("tol must be > 0, got {tol}")));
    }
    if !(alpha > 0.0 && alpha < 2.0) {
        return Err(Error::domain(format!("alpha must be in (0, 2), got {alpha}")));
    }
    let f = RhoFn::new(alpha, ROOT_REL_TOL.min(tol * 1e-2).max(1e-13))?;
    let lo_end = t0(alpha);
    let hi_end = PI.min(PI * alpha);
    let mut evals = 0usize;
    let mut eval = |theta: f64| -> Result<f64> {
        evals += 1;
        f.eval(theta)
    };

    let mut bracket = None;
    if let Some(g) = guess {
        let w = 1e-3 * (hi_end - lo_end);
        let a = (g - w).max(lo_end + EDGE_MARGIN);
        let b = (g + w).min(hi_end - EDGE_MARGIN);
        if a < b {
            let (fa, fb) = (eval(a)?, eval(b)?);
            if fa < 0.0 && fb > 0.0 {
                bracket = Some((a, fa, b, fb));
            }
        }
    }
    let (a, fa, b, fb) = match bracket {
        Some(br) => br,
        None => {
            let (a, fa) = expand_edge(&mut eval, lo_end, 1.0, |v| v < 0.0)
                .ok_or(Error::Bracket { alpha, lo: lo_end + MIN_EDGE_MARGIN, hi: hi_end - EDGE_MARGIN })??;
            let (b, fb) = expand_edge(&mut eval, hi_end, -1.0, |v| v > 0.0)
                .ok_or(Error::Bracket { alpha, lo: a, hi: hi_end - MIN_EDGE_MARGIN })??;
            (a, fa, b, fb)
        }
    };
    let (theta0, residual, bracket) = refine(&mut eval, a, fa, b, fb, tol)?;
    Ok(ThresholdSample { alpha, theta0, residual, bracket, evaluations: evals })
}

/// Walk the margin from `EDGE_MARGIN` down to `MIN_EDGE_MARGIN` until `ok(rho)`.
fn expand_edge<F>(eval: &mut F, end: f64, dir: f64, ok: impl Fn(f64) -> bool) -> Option<Result<(f64, f64)>>
where
    F: FnMut(f64) -> Result<f64>,
{
    let mut margin = EDGE_MARGIN;
    while margin >= MIN_EDGE_MARGIN * 0.999 {
        let x = end + dir * margin;
        if (x - end) * dir > 0.0 {
            match eval(x) {
                Ok(v) if ok(v) => return Some(Ok((x, v))),
                Ok(_) => {}
                Err(e) if e.is_domain() => {}
                Err(e) => return Some(Err(e)),
            }
        }
        margin /= 10.0;
    }
    None
}

/// Illinois false position with a bisection fallback whenever the bracket
/// fails to halve over two steps.
fn refine<F>(eval: &mut F, mut a: f64, mut fa: f64, mut b: f64, mut fb: f64, tol: f64) -> Result<(f64, f64, (f64, f64))>
where
    F: FnMut(f64) -> Result<f64>,
{
    let mut last_width = b - a;
    let mut side = 0i8;
    for it in 0..MAX_ITER {
        if b - a < tol {
            break;
        }
        let width = b - a;
        let secant = b - fb * (b - a) / (fb - fa);
        let force_bisect = it % 3 == 2 && width > 0.5 * last_width;
        let mut x = if force_bisect || !(secant > a && secant < b) { 0.5 * (a + b) } else { secant };
        // stay off the endpoints so the bracket always shrinks
        let guard = 0.25 * tol.min(width);
        x = x.clamp(a + guard, b - guard);
        if !(x > a && x < b) {
            break;
        }
        if it % 3 == 2 {
            last_width = width;
        }
        let fx = eval(x)?;
        if fx == 0.0 {
            return Ok((x, 0.0, (x, x)));
        }
        if fx < 0.0 {
            a = x;
            fa = fx;
            if side == -1 {
                fb *= 0.5;
            }
            side = -1;
        } else {
            b = x;
            fb = fx;
            if side == 1 {
                fa *= 0.5;
            }
            side = 1;
        }
    }
    // the Illinois halving distorts fa, fb; report honest residuals
    let (ra, rb) = (eval(a)?, eval(b)?);
    let (x, r) = if ra.abs() <= rb.abs() { (a, ra.abs()) } else { (b, rb.abs()) };
    Ok((x, r, (a, b)))
}

/// Uniform alpha grid of `n` points on `[alpha_min, alpha_max]`.
pub fn alpha_grid(alpha_min: f64, alpha_max: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| if i + 1 == n { alpha_max } else { alpha_min + (alpha_max - alpha_min) * i as f64 / (n - 1) as f64 })
        .collect()
}

fn check_curve_args(alpha_min: f64, alpha_max: f64, n: usize) -> Result<()> {
    if !(alpha_min > 0.0 && alpha_min < alpha_max && alpha_max < 2.0) {
        return Err(Error::domain(format!(
            "need 0 < alpha_min < alpha_max < 2, got alpha_min = {alpha_min}, alpha_max = {alpha_max}"
        )));
    }
    if n < 2 {
        return Err(Error::domain(format!("need at least 2 grid points, got {n}")));
    }
    Ok(())
}

/// `theta0` on a uniform alpha grid, keeping per-point failures.
///
/// Chunks of the grid run in parallel; inside a chunk each root warm-starts
/// from the previous one. Output is ordered by alpha.
pub fn curve_lenient(alpha_min: f64, alpha_max: f64, n: usize, tol: f64) -> Result<Vec<(f64, Result<ThresholdSample>)>> {
    check_curve_args(alpha_min, alpha_max, n)?;
    let grid = alpha_grid(alpha_min, alpha_max, n);
    let chunks: Vec<Vec<(f64, Result<ThresholdSample>)>> = grid
        .par_chunks(CURVE_CHUNK)
        .map(|chunk| {
            let mut guess = None;
            chunk
                .iter()
                .map(|&alpha| {
                    let r = theta0_with_guess(alpha, tol, guess);
                    guess = r.as_ref().ok().map(|s| s.theta0);
                    (alpha, r)
                })
                .collect()
        })
        .collect();
    Ok(chunks.into_iter().flatten().collect())
}

/// As [`curve_lenient`], failing on the first point without a root.
pub fn curve(alpha_min: f64, alpha_max: f64, n: usize, tol: f64) -> Result<Vec<ThresholdSample>> {
    curve_lenient(alpha_min, alpha_max, n, tol)?.into_iter().map(|(_, r)| r).collect()
}

/// Smallest sampled alpha with `theta0 > pi/2`, if any.
pub fn smallest_alpha_above_half_pi(samples: &[ThresholdSample]) -> Option<f64> {
    samples.iter().filter(|s| s.theta0 > PI / 2.0).map(|s| s.alpha).fold(None, |m, a| Some(m.map_or(a, |m: f64| m.min(a))))
}

/// Sign changes of `rho` on an `n`-point uniform grid over `[t0 + margin, upper - margin]`.
pub fn count_sign_changes(alpha: f64, n: usize, margin: f64, rel_tol: f64) -> Result<usize> {
    let f = RhoFn::new(alpha, rel_tol)?;
    let (lo, hi) = (t0(alpha) + margin, PI.min(PI * alpha) - margin);
    let mut changes = 0;
    let mut prev: Option<f64> = None;
    for i in 0..n {
        let v = f.eval(lo + (hi - lo) * i as f64 / (n - 1) as f64)?;
        if let Some(p) = prev {
            if (p < 0.0) != (v < 0.0) {
                changes += 1;
            }
        }
        prev = Some(v);
    }
    Ok(changes)
}

/// `tau(theta) = sin(theta - 2 pi/3) / sin(theta)` for alpha = 1.
pub fn airy_tau(theta: f64) -> f64 {
    (theta - 2.0 * PI / 3.0).sin() / theta.sin()
}

/// `rho(theta) = (2/3)(tau^{3/2} - 1) sin(theta)` for alpha = 1.
pub fn airy_rho(theta: f64) -> f64 {
    2.0 / 3.0 * (airy_tau(theta).max(0.0).powf(1.5) - 1.0) * theta.sin()
}

/// Root of `sin(theta - 2 pi/3) = sin(theta)` on `(2 pi/3, pi)`.
///
/// Two angles in `(0, pi)` have equal sines only if they are equal or
/// supplementary. They differ here, so `theta - 2 pi/3 = pi - theta`,
/// i.e. `2 theta = 5 pi/3`.
pub fn airy_theta0_closed_form() -> f64 {
    5.0 * PI / 6.0
}
