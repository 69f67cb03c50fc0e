//! Completeness threshold `theta0(alpha)` for the complex Schrodinger operator
//! `-d^2/dx^2 + c x^alpha` on the half-line with a Dirichlet condition at 0.
//!
//! The threshold is the unique zero of `rho(theta) = Re{S(Z0) - 2 S(zeta0)}`,
//! where `S` is the complex action of `sqrt(c z^alpha - mu)`. The crate computes
//! `rho` in three independent ways, finds its zero, computes the eigenvalue ray
//! of the operator and checks the WKB asymptotics of the Weyl solution.

pub mod action;
pub mod complexcore;
pub mod error;
pub mod ode;
pub mod pathquad;
pub mod spectral;
pub mod threshold;
pub mod wkb;

pub use action::{action_s, gamma_i, j_integral, j_term, rho, rho_general, rho_value, ActionValue, RhoBreakdown};
pub use complexcore::{principal_power, t0, theta_upper, turning_points, ModelParams, TurningPoints};
pub use error::{Error, Result};
pub use pathquad::{track_sqrt, BranchState, ContourPath, PathLabel};
pub use spectral::{rotate_spectrum, tau_eigenvalues, EigenvalueSet, FdGrid};
pub use threshold::{airy_theta0_closed_form, curve, theta0, ThresholdSample};
pub use wkb::{monotonicity_report, weyl_numeric, wkb_asymptotic, wkb_compare, MonotonicityReport, WkbComparison};
