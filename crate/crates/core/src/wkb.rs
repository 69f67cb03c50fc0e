//! Numerical checks of the Weyl-solution asymptotics on the half-line and of
//! the monotonicity of `Re S` along the contours used in the proof.
//!
//! In `t`, the spectral equation reads `w'' = k^2 (c t^alpha - mu) w`. On the
//! real axis the main branch is `q^{1/2} = -i sqrt(-q)` with the principal
//! root, and `-q` never meets the negative axis for `t >= 0`, so
//! `q^{1/4} = e^{-i pi/4} (-q)^{1/4}` is a continuous quarter root there.

use std::f64::consts::FRAC_PI_4;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::action::action_s;
use crate::complexcore::{pow_unchecked, principal_sqrt, turning_points, ModelParams};
use crate::error::{Error, Result};
use crate::ode::{self, Dopri5Options, ScaledComplex, State};
use crate::pathquad::{integrate_real, BranchTracker, ContourPath, PathLabel, QuadOptions};

/// Half-width, relative to `Z0`, of the window around `Z0` left out of ratio comparisons.
pub const Z0_MARGIN: f64 = 0.1;
/// Required `k (Re S(Z0) - Re S(T))` when choosing the far end `T`.
pub const SEED_SEPARATION: f64 = 35.0;
pub const MIN_K: f64 = 5.0;
const ODE_REL_TOL: f64 = 1e-11;
const DEFAULT_GRID: usize = 400;

fn check_params(params: &ModelParams, k: f64) -> Result<()> {
    if !(k >= MIN_K) {
        return Err(Error::domain(format!("k must be >= {MIN_K}, got {k}")));
    }
    if params.tau() <= 0.0 {
        return Err(Error::domain("theta must exceed phi so that Z0 is not a turning point"));
    }
    Ok(())
}

/// Main-branch `q^{1/2}` on the real axis.
fn sqrt_q_real(params: &ModelParams, t: f64) -> Complex64 {
    -Complex64::i() * principal_sqrt(-params.q(Complex64::new(t, 0.0)))
}

/// Quarter root with `(q^{1/4})^2 = q^{1/2}` on the main branch, continuous on `t >= 0`.
fn quarter_q_real(params: &ModelParams, t: f64) -> Complex64 {
    Complex64::from_polar(1.0, -FRAC_PI_4) * pow_unchecked(-params.q(Complex64::new(t, 0.0)), 0.25)
}

/// `S` on the real axis at each of the ascending points `ts`.
fn real_action(params: &ModelParams, ts: &[f64]) -> Result<Vec<Complex64>> {
    let opts = QuadOptions::new(1e-13).with_abs_tol(1e-15);
    let mut out = Vec::with_capacity(ts.len());
    let mut acc = Complex64::new(0.0, 0.0);
    let mut prev = 0.0;
    for &t in ts {
        acc += integrate_real(|s| sqrt_q_real(params, s), prev, t, opts)?.value;
        out.push(acc);
        prev = t;
    }
    Ok(out)
}

fn s_zeta0(params: &ModelParams) -> Result<Complex64> {
    let tp = turning_points(params)?;
    Ok(action_s(params, tp.zeta0, &ContourPath::radial(tp.zeta0)?, 1e-13)?.value)
}

/// Far end `T` with `k (Re S(Z0) - Re S(T)) >= SEED_SEPARATION` and
/// `Re S(T) < Re S(zeta0)`, so that `T` lies beyond the ridge of `Re S` around `Z0`.
pub fn choose_t_max(params: &ModelParams, k: f64) -> Result<f64> {
    check_params(params, k)?;
    let z0 = turning_points(params)?.z0;
    let s_z0 = real_action(params, &[z0])?[0].re;
    let s_zeta0 = s_zeta0(params)?.re;
    let mut t = 1.5 * z0;
    loop {
        let s_t = s_z0 + real_action_between(params, z0, t)?;
        if k * (s_z0 - s_t) >= SEED_SEPARATION && k * (s_zeta0 - s_t) >= 1.0 {
            return Ok(t);
        }
        t = z0 + 1.5 * (t - z0);
        if t > 1e8 * z0.max(1.0) {
            return Err(Error::Integration("could not place the far end of the Weyl integration".into()));
        }
    }
}

fn real_action_between(params: &ModelParams, a: f64, b: f64) -> Result<f64> {
    Ok(integrate_real(|s| sqrt_q_real(params, s), a, b, QuadOptions::new(1e-12))?.value.re)
}

/// The recessive solution tabulated on an ascending grid.
#[derive(Debug, Clone)]
pub struct WeylSolution {
    pub t: Vec<f64>,
    pub w: Vec<ScaledComplex>,
    pub dw: Vec<ScaledComplex>,
    pub t_max: f64,
}

fn rhs(params: ModelParams, k: f64) -> impl Fn(f64, &State) -> State {
    let (c, mu, alpha, k2) = (params.c(), params.mu(), params.alpha(), k * k);
    move |t: f64, y: &State| [y[1], (c * t.max(0.0).powf(alpha) - mu) * k2 * y[0]]
}

fn tabulate(raw: Vec<(State, f64)>, ts_desc: &[f64]) -> WeylSolution {
    let mut t = Vec::with_capacity(ts_desc.len());
    let mut w = Vec::with_capacity(ts_desc.len());
    let mut dw = Vec::with_capacity(ts_desc.len());
    for (&ti, (y, ls)) in ts_desc.iter().zip(raw).rev() {
        t.push(ti);
        w.push(ScaledComplex::new(y[0], ls));
        dw.push(ScaledComplex::new(y[1], ls));
    }
    WeylSolution { t, w, dw, t_max: ts_desc.first().copied().unwrap_or(0.0) }
}

fn ode_options(k: f64) -> Dopri5Options {
    Dopri5Options { rel_tol: ODE_REL_TOL, initial_step: 1e-3 / k, ..Default::default() }
}

fn scaled_pair(raw: &[(State, f64)]) -> Vec<(ScaledComplex, ScaledComplex)> {
    raw.iter().map(|(y, ls)| (ScaledComplex::new(y[0], *ls), ScaledComplex::new(y[1], *ls))).collect()
}

/// `f g' - f' g`
fn wronskian(f: (ScaledComplex, ScaledComplex), g: (ScaledComplex, ScaledComplex)) -> ScaledComplex {
    f.0.times(g.1).add(f.1.times(g.0).neg())
}

/// Inward integration from `t_max` alone, seeded with `q^{-1/4} e^{k S}`.
///
/// Accurate beyond `Z0`. On `[0, Z0]` the `e^{-kS}` part of the solution is
/// smaller than the local error near `Z0` by `e^{-2k(Re S(Z0) - Re S(zeta0))}`,
/// so this is reliable there only for moderate `k`.
pub fn weyl_inward(params: &ModelParams, k: f64, t_max: f64, grid: &[f64]) -> Result<WeylSolution> {
    check_grid(params, k, t_max, grid)?;
    let ts_desc: Vec<f64> = grid.iter().rev().copied().collect();
    let raw = ode::integrate(rhs(*params, k), t_max, weyl_seed(params, k, t_max), &ts_desc, ode_options(k))?;
    let mut sol = tabulate(raw, &ts_desc);
    sol.t_max = t_max;
    Ok(sol)
}

fn check_grid(params: &ModelParams, k: f64, t_max: f64, grid: &[f64]) -> Result<f64> {
    check_params(params, k)?;
    let z0 = turning_points(params)?.z0;
    if !(t_max > z0) {
        return Err(Error::domain(format!("T = {t_max} must exceed Z0 = {z0}")));
    }
    if grid.iter().any(|&t| t < 0.0 || t > t_max) || grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::domain("grid must be strictly ascending inside [0, T]"));
    }
    Ok(z0)
}

/// Value and derivative of `q^{-1/4} e^{sign k S}` at `t`, up to a constant.
fn wkb_seed_at(params: &ModelParams, k: f64, t: f64, sign: f64) -> State {
    let tz = Complex64::new(t, 0.0);
    let w0 = Complex64::new(1.0, 0.0);
    [w0, w0 * (sqrt_q_real(params, t) * (sign * k) - params.dq(tz) / (params.q(tz) * 4.0))]
}

fn weyl_seed(params: &ModelParams, k: f64, t_max: f64) -> State {
    wkb_seed_at(params, k, t_max, 1.0)
}

/// Integrates along the straight segment `from -> to` in the complex plane,
/// `y = (w, dw/dz)`.
fn integrate_segment(params: &ModelParams, k: f64, from: Complex64, to: Complex64, y0: State) -> Result<(State, f64)> {
    let (c, mu, alpha, k2) = (params.c(), params.mu(), params.alpha(), k * k);
    let d = to - from;
    let f = move |s: f64, y: &State| {
        let z = from + d * s;
        [y[1] * d, (c * pow_unchecked(z, alpha) - mu) * k2 * y[0] * d]
    };
    let opts = Dopri5Options { initial_step: 1e-3 / (k * d.norm().max(1e-3)), ..ode_options(k) };
    Ok(ode::integrate(f, 0.0, y0, &[1.0], opts)?[0])
}

/// The recessive solution on the ascending `grid` (all points `<= t_max`).
///
/// Beyond `Z0` it is integrated inward along the real axis from `t_max`.
/// There the `e^{kS}` term dominates and this direction is stable.
///
/// On `[0, Z0]` the `e^{-kS}` term of the solution is born near `zeta0` and
/// is smaller than the dominant term near `Z0` by a factor
/// `e^{-2k(Re S(Z0) - Re S(zeta0))}`. A real-axis integration loses it below
/// the local error once `k` is moderately large. Instead the solution is
/// carried from `t_max` straight to `zeta0`, then from `zeta0` straight to
/// each grid point. `Re S` stays at or below `Re S(zeta0)` along the first
/// segment, and is monotone along the others. Neither term is ever
/// exponentially hidden behind the other in the wrong direction.
pub fn weyl_numeric(params: &ModelParams, k: f64, t_max: f64, grid: &[f64]) -> Result<WeylSolution> {
    let z0 = check_grid(params, k, t_max, grid)?;
    let zeta0 = turning_points(params)?.zeta0;
    let left: Vec<f64> = grid.iter().copied().filter(|&t| t <= z0).collect();
    let right: Vec<f64> = grid.iter().copied().filter(|&t| t > z0).collect();

    let seed = weyl_seed(params, k, t_max);
    let right_desc: Vec<f64> = right.iter().rev().copied().collect();
    let w_right = scaled_pair(&ode::integrate(rhs(*params, k), t_max, seed, &right_desc, ode_options(k))?);

    let (y_zeta0, ls_zeta0) = integrate_segment(params, k, Complex64::new(t_max, 0.0), zeta0, seed)?;
    let mut t = Vec::with_capacity(grid.len());
    let mut w = Vec::with_capacity(grid.len());
    let mut dw = Vec::with_capacity(grid.len());
    for &ti in &left {
        let (y, ls) = integrate_segment(params, k, zeta0, Complex64::new(ti, 0.0), y_zeta0)?;
        t.push(ti);
        w.push(ScaledComplex::new(y[0], ls + ls_zeta0));
        dw.push(ScaledComplex::new(y[1], ls + ls_zeta0));
    }
    for (ti, (v, dv)) in right.iter().zip(w_right.into_iter().rev()) {
        t.push(*ti);
        w.push(v);
        dw.push(dv);
    }
    Ok(WeylSolution { t, w, dw, t_max })
}

/// The solution with `w(0) = 0`, `w'(0) = 1`, integrated outward.
pub fn dirichlet_numeric(params: &ModelParams, k: f64, grid: &[f64]) -> Result<WeylSolution> {
    check_params(params, k)?;
    let y0 = [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)];
    let raw = ode::integrate(rhs(*params, k), 0.0, y0, grid, ode_options(k))?;
    let t_max = grid.last().copied().unwrap_or(0.0);
    Ok(WeylSolution {
        t: grid.to_vec(),
        w: raw.iter().map(|(y, ls)| ScaledComplex::new(y[0], *ls)).collect(),
        dw: raw.iter().map(|(y, ls)| ScaledComplex::new(y[1], *ls)).collect(),
        t_max,
    })
}

/// The two WKB terms at `t`: `-i q^{-1/4} e^{k(S - 2 S(zeta0))}` and `q^{-1/4} e^{-k S}`.
fn wkb_terms(params: &ModelParams, k: f64, t: f64, s_t: Complex64, s_zeta0: Complex64) -> (ScaledComplex, ScaledComplex) {
    let pre = quarter_q_real(params, t).inv();
    let recessive = ScaledComplex::exp((s_t - s_zeta0 * 2.0) * k).mul(-Complex64::i() * pre);
    let dominant = ScaledComplex::exp(-s_t * k).mul(pre);
    (recessive, dominant)
}

fn wkb_from_terms(t: f64, z0: f64, terms: (ScaledComplex, ScaledComplex)) -> ScaledComplex {
    if t <= z0 {
        terms.0.add(terms.1)
    } else {
        terms.0
    }
}

/// Leading-order Weyl solution at `t >= 0`, up to one overall constant: two
/// exponentials on `[0, Z0]`, the decaying one alone beyond.
pub fn wkb_asymptotic(params: &ModelParams, k: f64, t: f64) -> Result<ScaledComplex> {
    check_params(params, k)?;
    if !(t >= 0.0) {
        return Err(Error::domain(format!("t must be >= 0, got {t}")));
    }
    let z0 = turning_points(params)?.z0;
    let s_t = real_action(params, &[t])?[0];
    Ok(wkb_from_terms(t, z0, wkb_terms(params, k, t, s_t, s_zeta0(params)?)))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WkbComparison {
    pub alpha: f64,
    pub theta: f64,
    pub phi: f64,
    pub k: f64,
    pub z0: f64,
    pub t_max: f64,
    pub t_grid: Vec<f64>,
    /// `numeric / asymptotic` normalized by the fitted constant, per grid point.
    pub ratios: Vec<Complex64>,
    /// Fitted `numeric / asymptotic` (magnitude meaningless: the numeric scale is arbitrary).
    pub constant: Complex64,
    /// Largest weighted residual on `[0, Z0)` outside the margin.
    pub deviation_left: f64,
    /// `max |ratio - 1|` on `(Z0, T]` outside the margin.
    pub deviation_right: f64,
    pub ratio_deviation: f64,
    pub margin: f64,
}

/// Comparison grid on `[0, T]` with the window `|t - Z0| < Z0_MARGIN * Z0` removed.
pub fn comparison_grid(z0: f64, t_max: f64, n: usize) -> Vec<f64> {
    let n = n.max(4);
    (0..n)
        .map(|i| if i + 1 == n { t_max } else { t_max * i as f64 / (n - 1) as f64 })
        .filter(|t| (t - z0).abs() >= Z0_MARGIN * z0)
        .collect()
}

/// Numeric Weyl solution against [`wkb_asymptotic`] on the real axis.
///
/// Each residual is taken relative to `|T1| + |T2|`, the sum of the moduli of
/// the two WKB terms (only the decaying one beyond `Z0`). Beyond `Z0` this is
/// exactly `|numeric / asymptotic - 1|`. Before `Z0` it stays meaningful where
/// the two terms have equal size and their sum nearly cancels. The single free
/// constant is the least-squares fit under the same weights.
pub fn wkb_compare(params: &ModelParams, k: f64) -> Result<WkbComparison> {
    wkb_compare_on(params, k, DEFAULT_GRID)
}

pub fn wkb_compare_on(params: &ModelParams, k: f64, n_grid: usize) -> Result<WkbComparison> {
    check_params(params, k)?;
    let z0 = turning_points(params)?.z0;
    let t_max = choose_t_max(params, k)?;
    let grid = comparison_grid(z0, t_max, n_grid);
    let sol = weyl_numeric(params, k, t_max, &grid)?;
    let s = real_action(params, &grid)?;
    let sz = s_zeta0(params)?;
    // (asymptotic, numeric) per point, both divided by the weight
    let mut rows: Vec<(Complex64, ScaledComplex)> = Vec::with_capacity(grid.len());
    for ((&t, &s_t), &w) in grid.iter().zip(&s).zip(&sol.w) {
        let terms = wkb_terms(params, k, t, s_t, sz);
        let a = wkb_from_terms(t, z0, terms);
        let weight = if t <= z0 { modulus_sum(terms.0, terms.1) } else { modulus_sum(terms.0, ScaledComplex::new(Complex64::new(0.0, 0.0), 0.0)) };
        rows.push((a.ratio(weight), ScaledComplex::new(w.mantissa / weight.mantissa, w.log_scale - weight.log_scale)));
    }
    // the numeric normalization is arbitrary: bring it to O(1) first
    let shift = rows.iter().map(|(_, n)| n.ln_norm()).fold(f64::NEG_INFINITY, f64::max);
    let rows: Vec<(Complex64, Complex64)> =
        rows.into_iter().map(|(a, n)| (a, n.mantissa * (n.log_scale - shift).exp())).collect();
    let num: Complex64 = rows.iter().map(|(a, n)| a.conj() * n).sum();
    let den: f64 = rows.iter().map(|(a, _)| a.norm_sqr()).sum();
    let fitted = num / den;
    let residual: Vec<f64> = rows.iter().map(|(a, n)| (n / fitted - a).norm()).collect();
    let ratios: Vec<Complex64> = rows.iter().map(|(a, n)| n / fitted / a).collect();
    let dev = |left: bool| {
        grid.iter()
            .zip(&residual)
            .filter(|(t, _)| (**t < z0) == left)
            .map(|(_, r)| *r)
            .fold(0.0, f64::max)
    };
    let (deviation_left, deviation_right) = (dev(true), dev(false));
    Ok(WkbComparison {
        alpha: params.alpha(),
        theta: params.theta(),
        phi: params.phi(),
        k,
        z0,
        t_max,
        t_grid: grid,
        ratios,
        constant: fitted * shift.exp(),
        deviation_left,
        deviation_right,
        ratio_deviation: deviation_left.max(deviation_right),
        margin: Z0_MARGIN * z0,
    })
}

/// `|a| + |b|` in scaled form.
fn modulus_sum(a: ScaledComplex, b: ScaledComplex) -> ScaledComplex {
    let l = a.log_scale.max(b.log_scale);
    let m = a.mantissa.norm() * (a.log_scale - l).exp() + b.mantissa.norm() * (b.log_scale - l).exp();
    ScaledComplex::new(Complex64::new(m, 0.0), l)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DichotomyReport {
    /// Fitted coefficient of `-i q^{-1/4} e^{k(S - 2 S(zeta0))}`.
    pub recessive: Complex64,
    /// Fitted coefficient of `q^{-1/4} e^{-k S}`.
    pub dominant: Complex64,
    /// `|recessive / dominant|`; the asymptotics predict 1.
    pub coefficient_ratio: f64,
    /// `e^{-2k Re S(zeta0)}`: relative size of the recessive term at `t = 0`.
    pub subdominant_at_origin: f64,
}

impl DichotomyReport {
    pub fn within_factor(&self, factor: f64) -> bool {
        self.coefficient_ratio <= factor && self.coefficient_ratio >= 1.0 / factor
    }
}

/// Fits the numeric solution on `[0, (1 - Z0_MARGIN) Z0]` by both exponentials
/// with independent coefficients.
pub fn dichotomy_check(params: &ModelParams, k: f64) -> Result<DichotomyReport> {
    check_params(params, k)?;
    let z0 = turning_points(params)?.z0;
    let t_max = choose_t_max(params, k)?;
    let n = DEFAULT_GRID / 2;
    let grid: Vec<f64> = (0..n).map(|i| (1.0 - Z0_MARGIN) * z0 * i as f64 / (n - 1) as f64).collect();
    let sol = weyl_numeric(params, k, t_max, &grid)?;
    let s = real_action(params, &grid)?;
    let sz = s_zeta0(params)?;
    // rows normalized by |a| + |b| so every point weighs the same
    let (mut aa, mut ab, mut bb, mut an, mut bn) =
        (0.0, Complex64::new(0.0, 0.0), 0.0, Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
    let mut scale = None;
    for ((&t, &s_t), &w) in grid.iter().zip(&s).zip(&sol.w) {
        let (ra, rb) = wkb_terms(params, k, t, s_t, sz);
        let norm = modulus_sum(ra, rb);
        let a = ra.ratio(norm);
        let b = rb.ratio(norm);
        let nv = w.ratio(norm);
        // fix the arbitrary normalization of the numeric solution at the first point
        let sc = *scale.get_or_insert(nv.norm());
        let nv = nv / sc;
        aa += a.norm_sqr();
        bb += b.norm_sqr();
        ab += a.conj() * b;
        an += a.conj() * nv;
        bn += b.conj() * nv;
    }
    // normal equations [[aa, ab], [ab*, bb]] [x, y] = [an, bn]
    let det = aa * bb - ab.norm_sqr();
    if !(det > 1e-14 * aa * bb) {
        return Err(Error::Integration("the two WKB terms are not separable on this grid".into()));
    }
    let x = (an * bb - ab * bn) / det;
    let y = (bn * aa - ab.conj() * an) / det;
    Ok(DichotomyReport {
        recessive: x,
        dominant: y,
        coefficient_ratio: x.norm() / y.norm(),
        subdominant_at_origin: (-2.0 * k * sz.re).exp(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WronskianReport {
    /// `max |W(t) / W(0) - 1|` over the grid.
    pub max_relative_drift: f64,
    pub samples: usize,
}

/// Wronskian of the Weyl solution (integrated inward) with the Dirichlet
/// solution (integrated outward). The two are independent, so no cancellation.
pub fn wronskian_check(params: &ModelParams, k: f64) -> Result<WronskianReport> {
    check_params(params, k)?;
    let t_max = choose_t_max(params, k)?;
    let n = DEFAULT_GRID / 2;
    let grid: Vec<f64> = (0..n).map(|i| if i + 1 == n { t_max } else { t_max * i as f64 / (n - 1) as f64 }).collect();
    let weyl = weyl_numeric(params, k, t_max, &grid)?;
    let dir = dirichlet_numeric(params, k, &grid)?;
    let w: Vec<ScaledComplex> = (0..n).map(|i| wronskian((weyl.w[i], weyl.dw[i]), (dir.w[i], dir.dw[i]))).collect();
    let max_relative_drift = w.iter().map(|x| (x.ratio(w[0]) - 1.0).norm()).fold(0.0, f64::max);
    Ok(WronskianReport { max_relative_drift, samples: n })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MonotonicitySample {
    pub t: f64,
    pub z: Complex64,
    /// `Re(q^{1/2}(zeta(t)) zeta'(t))`, the derivative of `Re S` along the path.
    pub slope: f64,
    pub expected_sign: i8,
}

impl MonotonicitySample {
    pub fn ok(&self) -> bool {
        self.slope * f64::from(self.expected_sign) > 0.0
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonotonicityReport {
    pub path_label: PathLabel,
    pub samples: Vec<MonotonicitySample>,
    pub violations: usize,
    pub sign_changes: usize,
}

pub const MONOTONICITY_SAMPLES: usize = 1000;
/// Angular offset of `l1` below the ray through `zeta0`.
pub const L1_OFFSET: f64 = 1e-2;

/// Signs of `d/dt Re S` along a truncated contour, against the expected pattern:
/// increasing on `l1`, `l3`, `l2` and the vertical ray at `Z0`; on the real
/// axis increasing before `Z0` and decreasing after.
pub fn monotonicity_report(params: &ModelParams, label: PathLabel, n: usize) -> Result<MonotonicityReport> {
    let tp = turning_points(params)?;
    if params.tau() <= 0.0 {
        return Err(Error::domain("theta must exceed phi for the contour family to be defined"));
    }
    let reach = 3.0 * tp.z0.max(tp.zeta0.norm());
    let path = match label {
        PathLabel::L1 => ContourPath::l1(&tp, L1_OFFSET, reach)?,
        PathLabel::L3 => ContourPath::l3(&tp, reach)?,
        PathLabel::L2 => ContourPath::l2(&tp, reach, reach)?,
        PathLabel::RealAxis => ContourPath::real_axis(reach)?,
        PathLabel::Vertical => ContourPath::vertical(&tp, reach)?,
        other => return Err(Error::domain(format!("no monotonicity statement for path {other}"))),
    };
    let tracker = if label == PathLabel::Vertical || label == PathLabel::L2 {
        let start = path.start();
        let seed = crate::pathquad::main_branch_at(params, start)?;
        BranchTracker::with_seed(&path, params, seed)?
    } else {
        BranchTracker::new(&path, params)?
    };
    let n = n.max(2);
    let len = path.param_len();
    let samples: Vec<MonotonicitySample> = (0..n)
        .map(|i| {
            let t = len * (i as f64 + 0.5) / n as f64;
            let z = path.point(t);
            let slope = (tracker.at(t).sqrt_value * path.tangent(t)).re;
            let expected_sign = if label == PathLabel::RealAxis && z.re > tp.z0 { -1 } else { 1 };
            MonotonicitySample { t, z, slope, expected_sign }
        })
        .collect();
    let violations = samples.iter().filter(|s| !s.ok()).count();
    let sign_changes = samples.windows(2).filter(|w| (w[0].slope > 0.0) != (w[1].slope > 0.0)).count();
    Ok(MonotonicityReport { path_label: label, samples, violations, sign_changes })
}
