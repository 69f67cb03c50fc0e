//! Analytic continuation of `q^{1/2}(z) = sqrt(c z^alpha - mu)` along a contour.
//!
//! The value is carried along the path by phase-continuity stepping: a step is
//! accepted only when the phase of `q` moves by less than `pi/4`, so the two
//! candidate roots are never ambiguous, and the candidate nearest the previous
//! value is kept. Crossing the cut `Delta = {zeta0 + s, s >= 0}` is not special
//! cased; it simply happens to land the value on the other sheet. Crossings are
//! counted geometrically for reporting.

use std::f64::consts::FRAC_PI_4;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::path::{ContourPath, PathLabel, Segment};
use crate::complexcore::{pow_unchecked, principal_sqrt, turning_points, ModelParams, TurningPoints};
use crate::error::{Error, Result};

const MAX_STEP: f64 = 1.0 / 64.0;
const MIN_STEP: f64 = 1e-13;
const MAX_PHASE_STEP: f64 = FRAC_PI_4;
/// `|q(z)| <= ZERO_Q (1 + |c z^alpha|)` is treated as the turning point.
const ZERO_Q: f64 = 1e-13;
/// Offset (in path parameter) used to seed paths that start at `zeta0`.
const START_OFFSET: f64 = 1e-9;

/// Value of `q^{1/2}` on the tracked sheet.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BranchState {
    pub sqrt_value: Complex64,
    /// Number of crossings of the cut `Delta` between the path start and this point.
    pub sheet_flips: u32,
}

impl BranchState {
    pub fn on_main_sheet(&self) -> bool {
        self.sheet_flips % 2 == 0
    }
}

#[derive(Debug, Clone, Copy)]
struct Anchor {
    t: f64,
    z: Complex64,
    sqrt: Complex64,
    flips: u32,
}

/// A path together with a dense set of anchors carrying the continued branch.
#[derive(Debug, Clone)]
pub struct BranchTracker {
    path: ContourPath,
    params: ModelParams,
    turning: TurningPoints,
    anchors: Vec<Anchor>,
}

fn is_turning_point(params: &ModelParams, z: Complex64, q: Complex64) -> bool {
    q.norm() <= ZERO_Q * (1.0 + pow_unchecked(z, params.alpha()).norm())
}

/// Number of crossings of `Delta` by the straight chord `a -> b`.
fn cut_crossings(zeta0: Complex64, a: Complex64, b: Complex64) -> u32 {
    let ya = a.im - zeta0.im;
    let yb = b.im - zeta0.im;
    if (ya >= 0.0) == (yb >= 0.0) {
        return 0;
    }
    let s = ya / (ya - yb);
    let x = a.re + (b.re - a.re) * s;
    u32::from(x >= zeta0.re)
}

/// The main branch at `z = 0`: `q(0) = -mu`, and `Re > 0`, `Im < 0` there.
pub fn main_branch_at_origin(params: &ModelParams) -> Complex64 {
    -Complex64::i() * Complex64::from_polar(1.0, 0.5 * params.phi())
}

/// Value of the main branch of `q^{1/2}` (defined on `C_r \ Delta`) at `z`,
/// obtained by continuation from the origin along a route that avoids `Delta`.
pub fn main_branch_at(params: &ModelParams, z: Complex64) -> Result<Complex64> {
    let tp = turning_points(params)?;
    main_branch_with(params, &tp, z)
}

fn main_branch_with(params: &ModelParams, tp: &TurningPoints, z: Complex64) -> Result<Complex64> {
    let origin = Complex64::new(0.0, 0.0);
    if z == origin {
        return Ok(main_branch_at_origin(params));
    }
    if is_turning_point(params, z, params.q(z)) {
        return Ok(origin);
    }
    let zeta0 = tp.zeta0;
    let radial_ok = z.im >= zeta0.im || {
        let s = zeta0.im / z.im;
        s * z.re < zeta0.re
    };
    let route = if radial_ok {
        ContourPath::radial(z)?
    } else {
        // Down the imaginary axis below the cut, then across.
        let corner = Complex64::new(0.0, z.im);
        ContourPath::new(
            PathLabel::Custom,
            vec![Segment::Line { from: origin, to: corner }, Segment::Line { from: corner, to: z }],
        )?
    };
    let tracker = BranchTracker::track(&route, params, *tp, 0.0, main_branch_at_origin(params))?;
    Ok(tracker.anchors.last().expect("tracking leaves at least one anchor").sqrt)
}

impl BranchTracker {
    /// Track along `path`, seeding with the main branch at the path start.
    pub fn new(path: &ContourPath, params: &ModelParams) -> Result<Self> {
        let tp = turning_points(params)?;
        let start = path.start();
        if is_turning_point(params, start, params.q(start)) {
            // Seed just off zeta0, keep an exact zero anchor at t = 0.
            let seed = main_branch_with(params, &tp, path.point(START_OFFSET))?;
            let mut tracker = Self::track(path, params, tp, START_OFFSET, seed)?;
            tracker.anchors.insert(0, Anchor { t: 0.0, z: start, sqrt: Complex64::new(0.0, 0.0), flips: 0 });
            return Ok(tracker);
        }
        let seed = main_branch_with(params, &tp, start)?;
        Self::track(path, params, tp, 0.0, seed)
    }

    /// Track along `path` starting from an explicit value at the path start.
    pub fn with_seed(path: &ContourPath, params: &ModelParams, seed: Complex64) -> Result<Self> {
        let tp = turning_points(params)?;
        Self::track(path, params, tp, 0.0, seed)
    }

    fn track(path: &ContourPath, params: &ModelParams, turning: TurningPoints, t_begin: f64, seed: Complex64) -> Result<Self> {
        let t_end = path.param_len();
        let mut t = t_begin;
        let mut z = path.point(t);
        let mut q = params.q(z);
        let mut w = seed;
        let mut flips = 0u32;
        let mut h = MAX_STEP;
        let mut anchors = vec![Anchor { t, z, sqrt: w, flips }];

        while t < t_end {
            let t1 = if t_end - t <= h { t_end } else { t + h };
            let z1 = path.point(t1);
            let q1 = params.q(z1);

            if is_turning_point(params, z1, q1) {
                if t1 == t_end {
                    flips += cut_crossings(turning.zeta0, z, z1);
                    anchors.push(Anchor { t: t1, z: z1, sqrt: Complex64::new(0.0, 0.0), flips });
                    break;
                }
                return Err(Error::Singularity { at: t1 });
            }

            let dphase = (q1 / q).arg().abs();
            if dphase > MAX_PHASE_STEP {
                if h <= MIN_STEP {
                    let near_zero = q1.norm() < 1e-6 * (1.0 + pow_unchecked(z1, params.alpha()).norm());
                    return Err(if near_zero {
                        Error::Singularity { at: t1 }
                    } else {
                        Error::Continuity { at: t1, min_step: MIN_STEP }
                    });
                }
                h *= 0.5;
                continue;
            }

            let mut w1 = principal_sqrt(q1);
            if (w1 * w.conj()).re < 0.0 {
                w1 = -w1;
            }
            flips += cut_crossings(turning.zeta0, z, z1);
            anchors.push(Anchor { t: t1, z: z1, sqrt: w1, flips });
            t = t1;
            z = z1;
            q = q1;
            w = w1;
            if dphase < 0.25 * MAX_PHASE_STEP {
                h = (2.0 * h).min(MAX_STEP);
            }
        }

        Ok(Self { path: path.clone(), params: *params, turning, anchors })
    }

    pub fn path(&self) -> &ContourPath {
        &self.path
    }

    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    pub fn turning_points(&self) -> &TurningPoints {
        &self.turning
    }

    /// Number of accepted tracking steps.
    pub fn steps(&self) -> usize {
        self.anchors.len() - 1
    }

    /// Continued value at global path parameter `t`.
    pub fn at(&self, t: f64) -> BranchState {
        let t = t.clamp(0.0, self.path.param_len());
        let idx = self.anchors.partition_point(|a| a.t <= t).max(1) - 1;
        let a = self.anchors[idx];
        if t == a.t {
            return BranchState { sqrt_value: a.sqrt, sheet_flips: a.flips };
        }
        let z = self.path.point(t);
        let q = self.params.q(z);
        let reference = if a.sqrt.norm() > 0.0 {
            a.sqrt
        } else {
            self.anchors.get(idx + 1).map_or(a.sqrt, |b| b.sqrt)
        };
        let mut w = principal_sqrt(q);
        if (w * reference.conj()).re < 0.0 {
            w = -w;
        }
        let flips = a.flips + cut_crossings(self.turning.zeta0, a.z, z);
        BranchState { sqrt_value: w, sheet_flips: flips }
    }

    /// The final value on the path.
    pub fn end_state(&self) -> BranchState {
        let a = self.anchors.last().expect("tracking leaves at least one anchor");
        BranchState { sqrt_value: a.sqrt, sheet_flips: a.flips }
    }
}

/// Continued value of `q^{1/2}` at path parameter `t`, seeded on the main
/// branch at the path start.
pub fn track_sqrt(path: &ContourPath, params: &ModelParams, t: f64) -> Result<BranchState> {
    Ok(BranchTracker::new(path, params)?.at(t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn airy() -> ModelParams {
        ModelParams::with_phi(1.0, 5.0 * PI / 6.0, 2.0 * PI / 3.0).unwrap()
    }

    #[test]
    fn small_real_z_is_fourth_quadrant() {
        let p = airy();
        let path = ContourPath::real_axis(1e-3).unwrap();
        let w = track_sqrt(&path, &p, 1.0).unwrap().sqrt_value;
        assert!(w.re > 0.0 && w.im < 0.0);
        let lead = -Complex64::i() * p.mu().sqrt();
        assert!((w - lead).norm() < 1e-2);
    }

    #[test]
    fn value_at_turning_point_endpoint_is_zero() {
        let p = airy();
        let tp = turning_points(&p).unwrap();
        let path = ContourPath::radial(tp.zeta0).unwrap();
        let s = track_sqrt(&path, &p, 1.0).unwrap();
        assert_eq!(s.sqrt_value, Complex64::new(0.0, 0.0));
    }

    #[test]
    fn value_at_z0_is_minus_i_sqrt_tau() {
        let p = airy();
        let tp = turning_points(&p).unwrap();
        let path = ContourPath::real_axis(tp.z0).unwrap();
        let w = track_sqrt(&path, &p, 1.0).unwrap().sqrt_value;
        let tau = (p.c() / p.mu()).im / p.c().im;
        assert!((w - Complex64::new(0.0, -tau.sqrt())).norm() < 1e-12, "{w}");
    }

    #[test]
    fn imaginary_part_negative_on_real_axis() {
        for &(alpha, theta) in &[(0.4, 1.15), (1.0, 2.5), (1.6, 3.0)] {
            let p = ModelParams::new(alpha, theta).unwrap();
            let tp = turning_points(&p).unwrap();
            let path = ContourPath::real_axis(4.0 * tp.z0).unwrap();
            let tr = BranchTracker::new(&path, &p).unwrap();
            for k in 1..=200 {
                let w = tr.at(k as f64 / 200.0).sqrt_value;
                assert!(w.im < 0.0, "alpha={alpha} t={k}");
            }
        }
    }

    #[test]
    fn interior_turning_point_is_a_singularity() {
        let p = airy();
        let tp = turning_points(&p).unwrap();
        let path = ContourPath::radial(tp.zeta0 * 2.0).unwrap();
        assert!(matches!(BranchTracker::new(&path, &p), Err(Error::Singularity { .. })));
    }

    #[test]
    fn loop_around_turning_point_negates() {
        let p = ModelParams::new(0.8, 2.1).unwrap();
        let tp = turning_points(&p).unwrap();
        let r = 0.5 * tp.zeta0.re.min(tp.zeta0.norm());
        let one_turn = |turns: f64| {
            ContourPath::new(
                PathLabel::Custom,
                vec![Segment::Arc { center: tp.zeta0, radius: r, start_angle: PI / 2.0, end_angle: PI / 2.0 + 2.0 * PI * turns }],
            )
            .unwrap()
        };
        let once = BranchTracker::new(&one_turn(1.0), &p).unwrap();
        let start = once.at(0.0).sqrt_value;
        let end = once.end_state();
        assert!((end.sqrt_value + start).norm() < 1e-12);
        assert_eq!(end.sheet_flips, 1);
        let twice = BranchTracker::new(&one_turn(2.0), &p).unwrap();
        assert!((twice.end_state().sqrt_value - start).norm() < 1e-12);
        assert_eq!(twice.end_state().sheet_flips, 2);
    }

    #[test]
    fn path_starting_at_zeta0() {
        let p = airy();
        let tp = turning_points(&p).unwrap();
        let path = ContourPath::segment(PathLabel::Custom, tp.zeta0, Complex64::new(tp.z0, 0.0)).unwrap();
        let tr = BranchTracker::new(&path, &p).unwrap();
        assert_eq!(tr.at(0.0).sqrt_value, Complex64::new(0.0, 0.0));
        // same value at Z0 as along the real axis
        let end = tr.end_state().sqrt_value;
        let direct = main_branch_at(&p, Complex64::new(tp.z0, 0.0)).unwrap();
        assert!((end - direct).norm() < 1e-12, "{end} vs {direct}");
    }

    #[test]
    fn crossing_the_cut_gives_negated_main_branch() {
        let p = ModelParams::new(1.0, 2.5).unwrap();
        let tp = turning_points(&p).unwrap();
        let path = ContourPath::l2r(&tp, 0.05, 6.0, 8.0, 1.0).unwrap();
        let tr = BranchTracker::new(&path, &p).unwrap();
        // on the real segment [Z0, R] (segment 2), after Gamma_R
        for k in 0..10 {
            let t = 2.0 + k as f64 / 10.0;
            let st = tr.at(t);
            assert_eq!(st.sheet_flips, 1);
            let z = path.point(t);
            let main = main_branch_at(&p, z).unwrap();
            assert!((st.sqrt_value + main).norm() < 1e-10, "t={t}");
        }
    }
}
