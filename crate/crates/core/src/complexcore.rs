//! Principal-branch complex arithmetic, the model constants `c`, `mu`, `mu0`
//! and the turning-point geometry shared by every other module.
//!
//! All angles are radians. `c = e^{i theta}`, `mu = e^{i phi}` and
//! `mu0 = e^{i t0(alpha)}` have unit modulus.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Slack allowed when comparing `theta` against `t0(alpha)`, so that a caller
/// passing `t0(alpha)` computed by its own arithmetic is not rejected.
const ANGLE_SLACK: f64 = 8.0 * f64::EPSILON;

/// Main branch `z^beta = |z|^beta e^{i beta arg z}` with `arg z` in `(-pi, pi]`.
pub fn principal_power(z: Complex64, beta: f64) -> Result<Complex64> {
    if z == Complex64::new(0.0, 0.0) {
        if beta > 0.0 {
            return Ok(Complex64::new(0.0, 0.0));
        }
        return Err(Error::domain(format!(
            "principal_power: 0 raised to non-positive power {beta}"
        )));
    }
    Ok(pow_unchecked(z, beta))
}

/// `principal_power` without the zero check; `0^beta` returns 0 for any beta.
#[inline]
pub(crate) fn pow_unchecked(z: Complex64, beta: f64) -> Complex64 {
    let r = z.norm();
    if r == 0.0 {
        return Complex64::new(0.0, 0.0);
    }
    // atan2 returns -pi for (-x, -0.0); the principal convention wants +pi.
    let mut arg = z.im.atan2(z.re);
    if arg == -PI {
        arg = PI;
    }
    Complex64::from_polar(r.powf(beta), beta * arg)
}

/// Principal square root, consistent with `principal_power(z, 0.5)`.
#[inline]
pub(crate) fn principal_sqrt(z: Complex64) -> Complex64 {
    if z.im == 0.0 && z.re < 0.0 {
        return Complex64::new(0.0, (-z.re).sqrt());
    }
    z.sqrt()
}

/// The classical completeness boundary `t0(alpha) = 2 pi alpha / (alpha + 2)`.
pub fn t0(alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    Ok(t0_unchecked(alpha))
}

#[inline]
pub(crate) fn t0_unchecked(alpha: f64) -> f64 {
    2.0 * PI * alpha / (alpha + 2.0)
}

/// Upper end of the admissible `theta` interval, `min(pi, pi alpha)`.
pub fn theta_upper(alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    Ok(PI * alpha.min(1.0))
}

fn check_alpha(alpha: f64) -> Result<()> {
    if !(alpha > 0.0 && alpha < 2.0) {
        return Err(Error::domain(format!(
            "alpha must lie in (0, 2), got {alpha}"
        )));
    }
    Ok(())
}

/// Parameters of the rescaled spectral problem `w'' = k^2 (c t^alpha - mu) w`.
///
/// Construction validates the full region used by every downstream module:
/// `0 < alpha < 2`, `t0(alpha) <= theta < min(pi, pi alpha)` and
/// `0 < phi <= t0(alpha)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    alpha: f64,
    theta: f64,
    phi: f64,
}

impl ModelParams {
    /// Parameters at the extension point `phi = t0(alpha)`.
    pub fn new(alpha: f64, theta: f64) -> Result<Self> {
        check_alpha(alpha)?;
        Self::with_phi(alpha, theta, t0_unchecked(alpha))
    }

    pub fn with_phi(alpha: f64, theta: f64, phi: f64) -> Result<Self> {
        check_alpha(alpha)?;
        if !theta.is_finite() || !phi.is_finite() {
            return Err(Error::domain("theta and phi must be finite"));
        }
        let t0 = t0_unchecked(alpha);
        let upper = PI * alpha.min(1.0);
        let upper_name = if alpha >= 1.0 { "pi" } else { "pi*alpha" };
        if theta >= upper {
            return Err(Error::domain(format!(
                "theta must be < {upper_name} (= {upper}) for alpha = {alpha}, got {theta}"
            )));
        }
        if theta < t0 * (1.0 - ANGLE_SLACK) {
            return Err(Error::domain(format!(
                "theta must be >= t0(alpha) = {t0} for alpha = {alpha}, got {theta}"
            )));
        }
        if !(phi > 0.0) {
            return Err(Error::domain(format!("phi must be > 0, got {phi}")));
        }
        if phi > t0 * (1.0 + ANGLE_SLACK) {
            return Err(Error::domain(format!(
                "phi must be <= t0(alpha) = {t0}, got {phi}"
            )));
        }
        Ok(Self { alpha, theta, phi })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn t0(&self) -> f64 {
        t0_unchecked(self.alpha)
    }

    pub fn theta_upper(&self) -> f64 {
        PI * self.alpha.min(1.0)
    }

    /// `c = e^{i theta}`.
    pub fn c(&self) -> Complex64 {
        Complex64::from_polar(1.0, self.theta)
    }

    /// `mu = e^{i phi}`.
    pub fn mu(&self) -> Complex64 {
        Complex64::from_polar(1.0, self.phi)
    }

    /// `mu0 = e^{i t0(alpha)}`.
    pub fn mu0(&self) -> Complex64 {
        Complex64::from_polar(1.0, self.t0())
    }

    /// Same `(alpha, theta)` with `phi` moved to the extension point `t0(alpha)`.
    pub fn at_extension_point(&self) -> Self {
        Self {
            phi: self.t0(),
            ..*self
        }
    }

    /// `q(z) = c z^alpha - mu` on the main branch of `z^alpha`.
    #[inline]
    pub fn q(&self, z: Complex64) -> Complex64 {
        self.c() * pow_unchecked(z, self.alpha) - self.mu()
    }

    /// `q'(z) = alpha c z^(alpha - 1)`.
    #[inline]
    pub fn dq(&self, z: Complex64) -> Complex64 {
        self.c() * self.alpha * pow_unchecked(z, self.alpha - 1.0)
    }

    /// `tau = Im(c / mu) / Im c`; equals `-q(Z0)`.
    pub fn tau(&self) -> f64 {
        (self.theta - self.phi).sin() / self.theta.sin()
    }
}

/// Turning point `zeta0` (the zero of `q`) and the real maximum point `Z0` of `Re S`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TurningPoints {
    pub zeta0: Complex64,
    pub z0: f64,
}

/// `zeta0 = (mu / c)^{1/alpha}` and `Z0 = (Im mu / Im c)^{1/alpha}`.
pub fn turning_points(params: &ModelParams) -> Result<TurningPoints> {
    let sin_theta = params.theta.sin();
    if sin_theta <= 0.0 {
        return Err(Error::domain("Im c must be positive to locate Z0"));
    }
    // arg(mu / c) = phi - theta lies in (-pi, 0], so the polar form is the
    // principal power and stays exact at phi = theta.
    let zeta0 = Complex64::from_polar(1.0, (params.phi - params.theta) / params.alpha);
    let z0 = (params.phi.sin() / sin_theta).powf(1.0 / params.alpha);
    Ok(TurningPoints { zeta0, z0 })
}
