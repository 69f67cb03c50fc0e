//! Adaptive Gauss-Kronrod (G10/K21) quadrature for complex-valued integrands
//! of a real variable.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use num_complex::Complex64;

use crate::error::{Error, Result};

#[allow(clippy::excessive_precision)]
const XGK: [f64; 11] = [
    0.995657163025808080735527280689003,
    0.973906528517171720077964012084452,
    0.930157491355708226001207180059508,
    0.865063366688984510732096688423493,
    0.780817726586416897063717578345042,
    0.679409568299024406234327365114874,
    0.562757134668604683339000099272694,
    0.433395394129247190799265943165784,
    0.294392862701460198131126603103866,
    0.148874338981631210884826001129720,
    0.000000000000000000000000000000000,
];

// Gauss weights for the nodes XGK[1], XGK[3], ..., XGK[9].
#[allow(clippy::excessive_precision)]
const WG: [f64; 5] = [
    0.066671344308688137593568809893332,
    0.149451349150580593145776339657697,
    0.219086362515982043995534934228163,
    0.269266719309996355091226921569469,
    0.295524224714752870173892994651338,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 11] = [
    0.011694638867371874278064396062192,
    0.032558162307964727478818972459390,
    0.054755896574351996031381300244580,
    0.075039674810919952767043140916190,
    0.093125454583697605535065465083366,
    0.109387158802297641899210590325805,
    0.123491976262065851077958109831074,
    0.134709217311473325928054001771707,
    0.142775938577060080797094273138717,
    0.147739104901338491374841515972068,
    0.149445554002916905664936468389821,
];

/// Tolerances and budget for [`integrate_real`].
#[derive(Debug, Clone, Copy)]
pub struct QuadOptions {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_intervals: usize,
}

impl QuadOptions {
    pub fn new(rel_tol: f64) -> Self {
        Self {
            rel_tol,
            abs_tol: 0.0,
            max_intervals: 4000,
        }
    }

    pub fn with_abs_tol(mut self, abs_tol: f64) -> Self {
        self.abs_tol = abs_tol;
        self
    }
}

impl Default for QuadOptions {
    fn default() -> Self {
        Self::new(1e-12)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct QuadResult {
    pub value: Complex64,
    pub error: f64,
    pub intervals: usize,
    pub evaluations: usize,
}

/// Which endpoint (if any) carries a square-root singularity `~ sqrt(x - x_end)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SqrtEndpoint {
    #[default]
    None,
    Start,
    End,
}

#[derive(Debug, Clone, Copy)]
struct Piece {
    a: f64,
    b: f64,
    value: Complex64,
    error: f64,
}

impl PartialEq for Piece {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Piece {}
impl PartialOrd for Piece {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Piece {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

/// One application of the 21-point Kronrod rule with QUADPACK's error scaling.
fn qk21<F: FnMut(f64) -> Complex64>(f: &mut F, a: f64, b: f64) -> (Complex64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let abs_half = half.abs();

    let fc = f(center);
    let mut res_g = Complex64::new(0.0, 0.0);
    let mut res_k = fc * WGK[10];
    let mut res_abs = WGK[10] * fc.norm();
    let mut fv1 = [Complex64::new(0.0, 0.0); 10];
    let mut fv2 = [Complex64::new(0.0, 0.0); 10];

    for j in 0..10 {
        let x = half * XGK[j];
        let f1 = f(center - x);
        let f2 = f(center + x);
        fv1[j] = f1;
        fv2[j] = f2;
        res_k += WGK[j] * (f1 + f2);
        res_abs += WGK[j] * (f1.norm() + f2.norm());
        if j % 2 == 1 {
            res_g += WG[j / 2] * (f1 + f2);
        }
    }

    let mean = res_k * 0.5;
    let mut res_asc = WGK[10] * (fc - mean).norm();
    for j in 0..10 {
        res_asc += WGK[j] * ((fv1[j] - mean).norm() + (fv2[j] - mean).norm());
    }

    let result = res_k * half;
    res_abs *= abs_half;
    res_asc *= abs_half;
    let mut err = ((res_k - res_g) * half).norm();
    if res_asc != 0.0 && err != 0.0 {
        err = res_asc * (200.0 * err / res_asc).powf(1.5).min(1.0);
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * res_abs);
    }
    (result, err)
}

/// Adaptive integral of `f` over `[a, b]`.
///
/// Subdivides the interval with the largest error estimate until the total
/// estimate falls below `max(abs_tol, rel_tol |I|)`. Intervals that can no
/// longer be split in floating point are frozen; if the budget is exhausted the
/// error carries the achieved estimate.
pub fn integrate_real<F>(mut f: F, a: f64, b: f64, opts: QuadOptions) -> Result<QuadResult>
where
    F: FnMut(f64) -> Complex64,
{
    if a == b {
        return Ok(QuadResult {
            value: Complex64::new(0.0, 0.0),
            error: 0.0,
            intervals: 0,
            evaluations: 0,
        });
    }

    let (value, error) = qk21(&mut f, a, b);
    let mut evaluations = 21;
    let mut total = value;
    let mut total_err = error;
    let mut heap = BinaryHeap::new();
    heap.push(Piece { a, b, value, error });
    let mut frozen_err = 0.0;
    let mut frozen = Vec::new();

    loop {
        let tol = opts.abs_tol.max(opts.rel_tol * total.norm());
        if total_err <= tol {
            break;
        }
        let Some(worst) = heap.pop() else {
            break;
        };
        if heap.len() + frozen.len() + 1 >= opts.max_intervals {
            heap.push(worst);
            return Err(Error::Quadrature {
                estimate: total_err,
                intervals: heap.len() + frozen.len(),
            });
        }
        let mid = 0.5 * (worst.a + worst.b);
        if mid == worst.a || mid == worst.b || (worst.b - worst.a).abs() < 4.0 * f64::EPSILON * mid.abs() {
            frozen_err += worst.error;
            frozen.push(worst);
            continue;
        }
        let (v1, e1) = qk21(&mut f, worst.a, mid);
        let (v2, e2) = qk21(&mut f, mid, worst.b);
        evaluations += 42;
        total += v1 + v2 - worst.value;
        total_err += e1 + e2 - worst.error;
        heap.push(Piece { a: worst.a, b: mid, value: v1, error: e1 });
        heap.push(Piece { a: mid, b: worst.b, value: v2, error: e2 });
    }

    // Re-sum to shed the drift accumulated by the running updates.
    let value: Complex64 = heap.iter().chain(frozen.iter()).map(|p| p.value).sum();
    let error: f64 = heap.iter().map(|p| p.error).sum::<f64>() + frozen_err;
    let tol = opts.abs_tol.max(opts.rel_tol * value.norm());
    if error > tol && heap.is_empty() {
        return Err(Error::Quadrature {
            estimate: error,
            intervals: frozen.len(),
        });
    }
    Ok(QuadResult {
        value,
        error,
        intervals: heap.len() + frozen.len(),
        evaluations,
    })
}

/// Like [`integrate_real`], removing a square-root endpoint singularity by the
/// substitution `x = x_end -/+ (b - a) u^2` before adaptive refinement.
pub fn integrate_real_sqrt_endpoint<F>(
    mut f: F,
    a: f64,
    b: f64,
    endpoint: SqrtEndpoint,
    opts: QuadOptions,
) -> Result<QuadResult>
where
    F: FnMut(f64) -> Complex64,
{
    let len = b - a;
    match endpoint {
        SqrtEndpoint::None => integrate_real(f, a, b, opts),
        SqrtEndpoint::End => integrate_real(|u| f(b - len * u * u) * (2.0 * len * u), 0.0, 1.0, opts),
        SqrtEndpoint::Start => integrate_real(|u| f(a + len * u * u) * (2.0 * len * u), 0.0, 1.0, opts),
    }
}
