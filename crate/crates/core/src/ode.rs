//! Dormand-Prince 5(4) for linear complex systems `y' = A(t) y` in two
//! unknowns, integrated in either direction along the real line.
//!
//! Linearity lets the state be rescaled freely; the integrator keeps the
//! magnitude near 1 and accumulates the natural log of the removed factor.

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type State = [Complex64; 2];

/// A complex number `mantissa * exp(log_scale)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaledComplex {
    pub mantissa: Complex64,
    pub log_scale: f64,
}

impl ScaledComplex {
    pub fn new(mantissa: Complex64, log_scale: f64) -> Self {
        ScaledComplex { mantissa, log_scale }
    }

    /// `exp(z)` without overflow.
    pub fn exp(z: Complex64) -> Self {
        ScaledComplex { mantissa: Complex64::from_polar(1.0, z.im), log_scale: z.re }
    }

    pub fn ln_norm(&self) -> f64 {
        self.mantissa.norm().ln() + self.log_scale
    }

    pub fn mul(self, z: Complex64) -> Self {
        ScaledComplex { mantissa: self.mantissa * z, log_scale: self.log_scale }
    }

    pub fn add(self, other: Self) -> Self {
        let l = self.log_scale.max(other.log_scale);
        let m = self.mantissa * (self.log_scale - l).exp() + other.mantissa * (other.log_scale - l).exp();
        ScaledComplex { mantissa: m, log_scale: l }
    }

    pub fn times(self, other: Self) -> Self {
        ScaledComplex { mantissa: self.mantissa * other.mantissa, log_scale: self.log_scale + other.log_scale }
    }

    pub fn over(self, other: Self) -> Self {
        ScaledComplex { mantissa: self.mantissa / other.mantissa, log_scale: self.log_scale - other.log_scale }
    }

    pub fn neg(self) -> Self {
        ScaledComplex { mantissa: -self.mantissa, log_scale: self.log_scale }
    }

    /// `self / other` as a plain complex number; meaningful when the quotient is moderate.
    pub fn ratio(self, other: Self) -> Complex64 {
        self.mantissa / other.mantissa * (self.log_scale - other.log_scale).exp()
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Dopri5Options {
    pub rel_tol: f64,
    pub max_steps: usize,
    pub initial_step: f64,
    /// Rescale when `|y|` exceeds this.
    pub rescale_above: f64,
}

impl Default for Dopri5Options {
    fn default() -> Self {
        Dopri5Options { rel_tol: 1e-10, max_steps: 2_000_000, initial_step: 1e-3, rescale_above: 1e50 }
    }
}

const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;
const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const A71: f64 = 35.0 / 384.0;
const A73: f64 = 500.0 / 1113.0;
const A74: f64 = 125.0 / 192.0;
const A75: f64 = -2187.0 / 6784.0;
const A76: f64 = 11.0 / 84.0;
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

fn axpy(y: &State, terms: &[(f64, &State)], h: f64) -> State {
    let mut out = *y;
    for (c, k) in terms {
        if *c != 0.0 {
            out[0] += k[0] * (c * h);
            out[1] += k[1] * (c * h);
        }
    }
    out
}

/// Solution values at `outputs` (ordered in the direction of integration),
/// each as a mantissa pair sharing one log-scale.
pub fn integrate<F>(f: F, t_start: f64, y0: State, outputs: &[f64], opts: Dopri5Options) -> Result<Vec<(State, f64)>>
where
    F: Fn(f64, &State) -> State,
{
    let mut out = Vec::with_capacity(outputs.len());
    let Some(&t_last) = outputs.last() else { return Ok(out) };
    let dir = if t_last >= t_start { 1.0 } else { -1.0 };
    let mut t = t_start;
    let mut y = y0;
    let mut log_scale = 0.0;
    let mut h = opts.initial_step.abs().max(1e-12) * dir;
    let mut k1 = f(t, &y);
    let mut steps = 0usize;
    let span = (t_last - t_start).abs().max(1.0);

    for &target in outputs {
        if (target - t) * dir < 0.0 {
            return Err(Error::Integration(format!("output {target} lies behind the integration direction")));
        }
        while (target - t) * dir > 0.0 {
            steps += 1;
            if steps > opts.max_steps {
                return Err(Error::Integration(format!("step budget {} exhausted at t = {t}", opts.max_steps)));
            }
            let last = (t + h - target) * dir >= 0.0;
            let hs = if last { target - t } else { h };

            let k2 = f(t + C2 * hs, &axpy(&y, &[(A21, &k1)], hs));
            let k3 = f(t + C3 * hs, &axpy(&y, &[(A31, &k1), (A32, &k2)], hs));
            let k4 = f(t + C4 * hs, &axpy(&y, &[(A41, &k1), (A42, &k2), (A43, &k3)], hs));
            let k5 = f(t + C5 * hs, &axpy(&y, &[(A51, &k1), (A52, &k2), (A53, &k3), (A54, &k4)], hs));
            let k6 = f(t + hs, &axpy(&y, &[(A61, &k1), (A62, &k2), (A63, &k3), (A64, &k4), (A65, &k5)], hs));
            let y_new = axpy(&y, &[(A71, &k1), (A73, &k3), (A74, &k4), (A75, &k5), (A76, &k6)], hs);
            let k7 = f(t + hs, &y_new);

            let scale = y[0].norm().max(y[1].norm()).max(y_new[0].norm()).max(y_new[1].norm()) * opts.rel_tol;
            let mut err: f64 = 0.0;
            for i in 0..2 {
                let e = (k1[i] * E1 + k3[i] * E3 + k4[i] * E4 + k5[i] * E5 + k6[i] * E6 + k7[i] * E7) * hs;
                err = err.max(e.norm() / scale);
            }
            if !err.is_finite() {
                return Err(Error::Integration(format!("non-finite state at t = {t}")));
            }
            if err <= 1.0 {
                t = if last { target } else { t + hs };
                y = y_new;
                k1 = k7;
                let mag = y[0].norm().max(y[1].norm());
                if mag > opts.rescale_above || (mag < 1.0 / opts.rescale_above && mag > 0.0) {
                    y = [y[0] / mag, y[1] / mag];
                    k1 = [k1[0] / mag, k1[1] / mag];
                    log_scale += mag.ln();
                }
            }
            let fac = if err == 0.0 { 5.0 } else { (0.9 * err.powf(-0.2)).clamp(0.2, 5.0) };
            let h_abs = (hs.abs() * fac).max(1e-14 * span);
            if !last || err > 1.0 {
                h = h_abs * dir;
            }
            if err > 1.0 && hs.abs() <= 1e-14 * span {
                return Err(Error::Integration(format!("step size underflow at t = {t}")));
            }
        }
        out.push((y, log_scale));
    }
    Ok(out)
}
