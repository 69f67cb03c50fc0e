use threshold_core::threshold::curve_lenient;
use threshold_core::wkb::{dichotomy_check, wronskian_check};
use threshold_core::{rho_general, rotate_spectrum, t0, tau_eigenvalues, wkb_compare, FdGrid, ModelParams};

use crate::output::{emit, Field, Output, Record};
use crate::{CliError, Format, RunConfig};

pub fn rho(cfg: &RunConfig, alpha: f64, theta: f64, phi: Option<f64>) -> Result<(), CliError> {
    let theta = cfg.angle(theta);
    let params = ModelParams::new(alpha, theta)?;
    let general = match phi {
        Some(phi) => {
            let phi = cfg.angle(phi);
            Some((phi, rho_general(&ModelParams::with_phi(alpha, theta, phi)?, cfg.rel_tol)?))
        }
        None => None,
    };
    let b = threshold_core::rho(&params, cfg.rel_tol)?;
    let mut rec = Record::new()
        .num("alpha", alpha)
        .num("theta", theta)
        .num("rho", b.rho)
        .num("i_term", b.i_term)
        .num("j_term", b.j_term)
        .complex("zeta0", b.zeta0)
        .num("z0", b.z0)
        .num("re_s_zeta0", b.s_zeta0.re)
        .num("disagreement", b.max_disagreement());
    if let Some((phi, value)) = general {
        rec = rec.num("phi", phi).num("rho_phi", value);
    }
    emit(cfg, &Output::Single(rec), None)
}

pub fn theta0(cfg: &RunConfig, alpha: f64) -> Result<(), CliError> {
    let s = threshold_core::theta0(alpha, cfg.tol)?;
    let rec = Record::new()
        .num("alpha", s.alpha)
        .num("t0", s.t0())
        .num("theta0", s.theta0)
        .num("delta_t", s.delta_t())
        .num("residual", s.residual)
        .num("bracket_lo", s.bracket.0)
        .num("bracket_hi", s.bracket.1)
        .int("evaluations", s.evaluations);
    emit(cfg, &Output::Single(rec), None)
}

pub fn curve(cfg: &RunConfig, alpha_min: f64, alpha_max: f64) -> Result<(), CliError> {
    if cfg.steps == 0 {
        return Err(CliError::Input("steps must be >= 1".into()));
    }
    if !(alpha_min > 0.0 && alpha_max < 2.0 && alpha_min < alpha_max) {
        return Err(CliError::Input(format!(
            "alpha range must satisfy 0 < alpha-min < alpha-max < 2, got [{alpha_min}, {alpha_max}]"
        )));
    }
    let points = curve_lenient(alpha_min, alpha_max, cfg.steps + 1, cfg.tol)?;
    let rows = points
        .into_iter()
        .map(|(alpha, sample)| {
            let rec = Record::new().num("alpha", alpha).num("t0", t0(alpha).unwrap_or(f64::NAN));
            match sample {
                Ok(s) => rec
                    .num("theta0", s.theta0)
                    .num("delta_t", s.delta_t())
                    .num("residual", s.residual)
                    .text("note", ""),
                Err(e) => rec
                    .field("theta0", Field::Missing)
                    .field("delta_t", Field::Missing)
                    .field("residual", Field::Missing)
                    .text("note", e.to_string()),
            }
        })
        .collect();
    emit(cfg, &Output::Table(rows), Some(Format::Csv))
}

pub fn spectrum(cfg: &RunConfig, alpha: f64, theta: Option<f64>) -> Result<(), CliError> {
    if cfg.n == 0 {
        return Err(CliError::Input("n must be >= 1".into()));
    }
    let mut set = tau_eigenvalues(alpha, cfg.n, FdGrid::auto())?;
    if let Some(theta) = theta {
        set = rotate_spectrum(&set, cfg.angle(theta))?;
    }
    let rows = set
        .tau
        .iter()
        .enumerate()
        .map(|(i, &tau)| {
            let rec = Record::new().int("n", i + 1).num("tau", tau).num("error", set.discretization.errors[i]);
            match set.lambda.get(i) {
                Some(l) => rec.num("lambda_re", l.re).num("lambda_im", l.im).num("arg", l.arg()),
                None => rec,
            }
        })
        .collect();
    emit(cfg, &Output::Table(rows), None)
}

pub fn wkb_check(cfg: &RunConfig, alpha: f64, theta: f64, phi: Option<f64>) -> Result<(), CliError> {
    let theta = cfg.angle(theta);
    let params = match phi {
        Some(phi) => ModelParams::with_phi(alpha, theta, cfg.angle(phi))?,
        None => ModelParams::new(alpha, theta)?,
    };
    let cmp = wkb_compare(&params, cfg.k)?;
    let dich = dichotomy_check(&params, cfg.k)?;
    let wr = wronskian_check(&params, cfg.k)?;
    let rec = Record::new()
        .num("alpha", cmp.alpha)
        .num("theta", cmp.theta)
        .num("phi", cmp.phi)
        .num("k", cmp.k)
        .num("z0", cmp.z0)
        .num("t_max", cmp.t_max)
        .num("margin", cmp.margin)
        .num("deviation_left", cmp.deviation_left)
        .num("deviation_right", cmp.deviation_right)
        .num("ratio_deviation", cmp.ratio_deviation)
        .num("k_times_deviation", cmp.k * cmp.ratio_deviation)
        .num("dichotomy_ratio", dich.coefficient_ratio)
        .num("wronskian_drift", wr.max_relative_drift);
    emit(cfg, &Output::Single(rec), None)
}
