//! Contours, branch-continuous evaluation of `q^{1/2}` along them, and
//! adaptive complex quadrature of branch-aware integrands.

mod branch;
mod path;
mod quad;

use num_complex::Complex64;

pub use branch::{main_branch_at, main_branch_at_origin, track_sqrt, BranchState, BranchTracker};
pub use path::{ContourPath, PathLabel, Segment};
pub use quad::{integrate_real, integrate_real_sqrt_endpoint, QuadOptions, QuadResult, SqrtEndpoint};

use crate::complexcore::ModelParams;
use crate::error::Result;

/// Default relative tolerance for action integrals.
pub const ACTION_REL_TOL: f64 = 1e-12;
/// Looser tolerance used inside root-finding iterations.
pub const ROOT_REL_TOL: f64 = 1e-9;

const ZETA0_MATCH: f64 = 1e-12;

/// Integral of `integrand(z, q^{1/2}(z)) dz` along `path`, with `q^{1/2}`
/// continued from the main branch at the path start.
///
/// A segment endpoint sitting on `zeta0` gets the `u^2` substitution that
/// removes the square-root singularity of `q^{1/2}` there.
pub fn integrate<F>(path: &ContourPath, params: &ModelParams, integrand: F, rel_tol: f64) -> Result<QuadResult>
where
    F: Fn(Complex64, Complex64) -> Complex64,
{
    let tracker = BranchTracker::new(path, params)?;
    integrate_tracked(&tracker, 0.0, path.param_len(), &integrand, QuadOptions::new(rel_tol))
}

/// Integral over the parameter range `[t_a, t_b]` of an already tracked path.
pub fn integrate_tracked<F>(tracker: &BranchTracker, t_a: f64, t_b: f64, integrand: &F, opts: QuadOptions) -> Result<QuadResult>
where
    F: Fn(Complex64, Complex64) -> Complex64,
{
    let path = tracker.path();
    let zeta0 = tracker.turning_points().zeta0;
    let mut total = QuadResult { value: Complex64::new(0.0, 0.0), error: 0.0, intervals: 0, evaluations: 0 };
    if t_a >= t_b {
        return Ok(total);
    }

    // Break at segment joins so each piece is smooth.
    let mut cuts = vec![t_a];
    let mut k = t_a.floor() + 1.0;
    while k < t_b {
        cuts.push(k);
        k += 1.0;
    }
    cuts.push(t_b);

    for w in cuts.windows(2) {
        let (a, b) = (w[0], w[1]);
        let near = |t: f64| (path.point(t) - zeta0).norm() <= ZETA0_MATCH * (1.0 + zeta0.norm());
        let endpoint = if near(b) {
            SqrtEndpoint::End
        } else if near(a) {
            SqrtEndpoint::Start
        } else {
            SqrtEndpoint::None
        };
        let f = |t: f64| {
            let z = path.point(t);
            let w = tracker.at(t).sqrt_value;
            integrand(z, w) * path.tangent(t)
        };
        let r = integrate_real_sqrt_endpoint(f, a, b, endpoint, opts)?;
        total.value += r.value;
        total.error += r.error;
        total.intervals += r.intervals;
        total.evaluations += r.evaluations;
    }
    Ok(total)
}

/// Running integrals `int_{ts[0]}^{ts[j]} q^{1/2} dz` for increasing parameters `ts`.
pub fn cumulative_action(tracker: &BranchTracker, ts: &[f64], opts: QuadOptions) -> Result<Vec<Complex64>> {
    let integrand = |_z: Complex64, w: Complex64| w;
    let mut out = Vec::with_capacity(ts.len());
    let mut acc = Complex64::new(0.0, 0.0);
    let mut prev = match ts.first() {
        Some(&t) => t,
        None => return Ok(out),
    };
    for &t in ts {
        acc += integrate_tracked(tracker, prev, t, &integrand, opts)?.value;
        out.push(acc);
        prev = t;
    }
    Ok(out)
}
