//! The action `S(z) = int_0^z sqrt(c zeta^alpha - mu) d zeta` and the
//! threshold function `rho(theta) = Re{S(Z0) - 2 S(zeta0)}` at `phi = t0(alpha)`.
//!
//! `rho` is available in three independent representations:
//!
//! * segment form: principal square root on the segments `[0, Z0]` and
//!   `[0, zeta0]`, each integral's sign fixed so its real part is positive;
//! * S-form: `S` integrated with the tracked main branch;
//! * `I - J`: `I` as a real integral along `gamma`, where `q^{1/2} = -i t^{1/2}`,
//!   and `J = sin(theta/alpha) int_0^1 sqrt(1 - xi^alpha) d xi`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::complexcore::{pow_unchecked, principal_sqrt, turning_points, ModelParams};
use crate::error::{Error, Result};
use crate::pathquad::{self, integrate_real, integrate_real_sqrt_endpoint, ContourPath, PathLabel, QuadOptions, SqrtEndpoint};

/// Below this distance `theta - t0(alpha)` the segment `[zeta0, Z0]` has
/// essentially collapsed and `I - J` is taken as the headline value.
pub const NEAR_DEGENERATE: f64 = 1e-7;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ActionValue {
    pub value: Complex64,
    pub endpoint: Complex64,
    pub path_label: PathLabel,
    /// Crossings of the cut `Delta` along the path; odd means the second sheet.
    pub sheet_flips: u32,
}

/// `S(z)` along `path`, which must run from the origin to `z`.
pub fn action_s(params: &ModelParams, z: Complex64, path: &ContourPath, rel_tol: f64) -> Result<ActionValue> {
    let origin = Complex64::new(0.0, 0.0);
    if path.start().norm() > 1e-12 {
        return Err(Error::domain(format!("S(z) paths start at the origin, got {}", path.start())));
    }
    if (path.end() - z).norm() > 1e-10 * (1.0 + z.norm()) {
        return Err(Error::domain(format!("path ends at {} but S was requested at {z}", path.end())));
    }
    if z == origin {
        return Ok(ActionValue { value: origin, endpoint: z, path_label: path.label(), sheet_flips: 0 });
    }
    let tracker = pathquad::BranchTracker::new(path, params)?;
    let r = pathquad::integrate_tracked(&tracker, 0.0, path.param_len(), &|_z: Complex64, w: Complex64| w, QuadOptions::new(rel_tol))?;
    Ok(ActionValue {
        value: r.value,
        endpoint: z,
        path_label: path.label(),
        sheet_flips: tracker.end_state().sheet_flips,
    })
}

/// `int_0^1 sqrt(1 - xi^alpha) d xi`, integrated in `u` with `xi = 1 - u^2`.
pub fn j_integral(alpha: f64, rel_tol: f64) -> Result<f64> {
    if !(alpha > 0.0) {
        return Err(Error::domain(format!("alpha must be positive, got {alpha}")));
    }
    let f = |u: f64| {
        // 1 - (1 - u^2)^alpha without cancellation
        let one_minus = -(alpha * (-u * u).ln_1p()).exp_m1();
        Complex64::new(2.0 * u * one_minus.max(0.0).sqrt(), 0.0)
    };
    Ok(integrate_real(f, 0.0, 1.0, QuadOptions::new(rel_tol))?.value.re)
}

/// `J(theta) = sin(theta/alpha) int_0^1 sqrt(1 - xi^alpha) d xi`, which equals `Re S(zeta0)` at `phi = t0`.
pub fn j_term(params: &ModelParams, rel_tol: f64) -> Result<f64> {
    Ok((params.theta() / params.alpha()).sin() * j_integral(params.alpha(), rel_tol)?)
}

/// `I(theta) = int_0^tau t^{1/2} Im zeta_t dt` along
/// `gamma: zeta(t) = ((mu0 - t)/c)^{1/alpha}`, `tau = Im(c/mu0) / Im c`.
///
/// Integrated in `u = t^{1/2}` so the integrand is smooth at the `zeta0` end.
pub fn gamma_i(params: &ModelParams, rel_tol: f64) -> Result<f64> {
    let p = params.at_extension_point();
    let tau = p.tau();
    if tau < 0.0 {
        return Err(Error::domain(format!("tau = {tau} < 0: theta is below t0(alpha)")));
    }
    if tau == 0.0 {
        return Ok(0.0);
    }
    let (alpha, c, mu0) = (p.alpha(), p.c(), p.mu0());
    let f = |u: f64| {
        let t = u * u;
        let zeta = pow_unchecked((mu0 - t) / c, 1.0 / alpha);
        let zeta_t = -zeta / (mu0 - t) / alpha;
        Complex64::new(2.0 * t * zeta_t.im, 0.0)
    };
    let opts = QuadOptions::new(rel_tol).with_abs_tol(rel_tol * 1e-3);
    Ok(integrate_real(f, 0.0, tau.sqrt(), opts)?.value.re)
}

/// `I` computed as `Re int_{zeta0}^{Z0} q^{1/2} d zeta` along `gamma` with the
/// general tracked-branch machinery. Used to cross-check [`gamma_i`].
pub fn gamma_i_tracked(params: &ModelParams, rel_tol: f64) -> Result<f64> {
    let p = params.at_extension_point();
    if p.tau() <= 0.0 {
        return Ok(0.0);
    }
    let path = ContourPath::gamma(&p)?;
    Ok(pathquad::integrate(&path, &p, |_, w| w, rel_tol)?.value.re)
}

/// `rho` as written with principal square roots on straight segments, the sign
/// of each integral chosen so that its real part is positive.
pub fn rho_segment_form(params: &ModelParams, rel_tol: f64) -> Result<f64> {
    let p = params.at_extension_point();
    let tp = turning_points(&p)?;
    let (alpha, c, mu) = (p.alpha(), p.c(), p.mu());
    let opts = QuadOptions::new(rel_tol);

    let on_real = |t: f64| principal_sqrt(c * t.powf(alpha) - mu);
    let mut to_z0 = integrate_real_sqrt_endpoint(on_real, 0.0, tp.z0, SqrtEndpoint::End, opts)?.value;
    if to_z0.re < 0.0 {
        to_z0 = -to_z0;
    }

    let zeta0 = tp.zeta0;
    let on_radial = |s: f64| principal_sqrt(c * pow_unchecked(zeta0 * s, alpha) - mu) * zeta0;
    let mut to_zeta0 = integrate_real_sqrt_endpoint(on_radial, 0.0, 1.0, SqrtEndpoint::End, opts)?.value;
    if to_zeta0.re < 0.0 {
        to_zeta0 = -to_zeta0;
    }
    Ok(to_z0.re - 2.0 * to_zeta0.re)
}

/// `rho(theta, phi) = Re{S(Z0) - 2 S(zeta0)}` for the given `phi`, with `S`
/// on the tracked main branch along `[0, Z0]` and `[0, zeta0]`.
pub fn rho_general(params: &ModelParams, rel_tol: f64) -> Result<f64> {
    let (s_z0, s_zeta0) = s_at_critical_points(params, rel_tol)?;
    Ok(s_z0.value.re - 2.0 * s_zeta0.value.re)
}

fn s_at_critical_points(params: &ModelParams, rel_tol: f64) -> Result<(ActionValue, ActionValue)> {
    let tp = turning_points(params)?;
    let z0 = Complex64::new(tp.z0, 0.0);
    let s_z0 = action_s(params, z0, &ContourPath::real_axis(tp.z0)?, rel_tol)?;
    let s_zeta0 = action_s(params, tp.zeta0, &ContourPath::radial(tp.zeta0)?, rel_tol)?;
    Ok((s_z0, s_zeta0))
}

/// `rho(theta)` with all representations side by side.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RhoBreakdown {
    pub alpha: f64,
    pub theta: f64,
    /// Headline value: the S-form, or `I - J` when `theta - t0 < NEAR_DEGENERATE`.
    pub rho: f64,
    pub s_form: f64,
    pub segment_form: f64,
    pub i_term: f64,
    pub j_term: f64,
    pub s_z0: Complex64,
    pub s_zeta0: Complex64,
    pub zeta0: Complex64,
    pub z0: f64,
}

impl RhoBreakdown {
    pub fn i_minus_j(&self) -> f64 {
        self.i_term - self.j_term
    }

    /// Largest pairwise gap between the three representations.
    pub fn max_disagreement(&self) -> f64 {
        let ij = self.i_minus_j();
        (self.s_form - self.segment_form)
            .abs()
            .max((self.s_form - ij).abs())
            .max((self.segment_form - ij).abs())
    }
}

/// `rho(theta) = rho(theta, t0(alpha))`. The `phi` carried by `params` is
/// ignored; the extension point is always used.
pub fn rho(params: &ModelParams, rel_tol: f64) -> Result<RhoBreakdown> {
    let p = params.at_extension_point();
    let tp = turning_points(&p)?;
    let (s_z0, s_zeta0) = s_at_critical_points(&p, rel_tol)?;
    let s_form = s_z0.value.re - 2.0 * s_zeta0.value.re;
    let segment_form = rho_segment_form(&p, rel_tol)?;
    let i_term = gamma_i(&p, rel_tol)?;
    let j_term = j_term(&p, rel_tol)?;
    let headline = if p.theta() - p.t0() < NEAR_DEGENERATE { i_term - j_term } else { s_form };
    Ok(RhoBreakdown {
        alpha: p.alpha(),
        theta: p.theta(),
        rho: headline,
        s_form,
        segment_form,
        i_term,
        j_term,
        s_z0: s_z0.value,
        s_zeta0: s_zeta0.value,
        zeta0: tp.zeta0,
        z0: tp.z0,
    })
}

/// `rho(theta)` through `I - J` only: branch-free and well conditioned up to
/// the endpoints, so this is what the root finder evaluates.
pub fn rho_value(params: &ModelParams, rel_tol: f64) -> Result<f64> {
    let p = params.at_extension_point();
    Ok(gamma_i(&p, rel_tol)? - j_term(&p, rel_tol)?)
}
