//! Piecewise smooth contours in the closed right half-plane.
//!
//! A path with `n` segments is parameterized by a global parameter
//! `t in [0, n]`; segment `i` covers `[i, i + 1]`.

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::complexcore::{pow_unchecked, ModelParams, TurningPoints};
use crate::error::{Error, Result};

/// Geometry of one smooth piece, parameterized by a local `s in [0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Segment {
    Line { from: Complex64, to: Complex64 },
    /// `center + radius e^{i angle}`, angle running from `start_angle` to `end_angle`.
    Arc { center: Complex64, radius: f64, start_angle: f64, end_angle: f64 },
    /// `zeta(t) = ((mu0 - t) / c)^{1/alpha}` for `t` from `t_start` to `t_end`.
    Gamma { alpha: f64, c: Complex64, mu0: Complex64, t_start: f64, t_end: f64 },
}

impl Segment {
    pub fn point(&self, s: f64) -> Complex64 {
        match *self {
            Segment::Line { from, to } => from + (to - from) * s,
            Segment::Arc { center, radius, start_angle, end_angle } => {
                center + Complex64::from_polar(radius, start_angle + (end_angle - start_angle) * s)
            }
            Segment::Gamma { alpha, c, mu0, t_start, t_end } => {
                let t = t_start + (t_end - t_start) * s;
                pow_unchecked((mu0 - t) / c, 1.0 / alpha)
            }
        }
    }

    /// `d zeta / ds`.
    pub fn tangent(&self, s: f64) -> Complex64 {
        match *self {
            Segment::Line { from, to } => to - from,
            Segment::Arc { radius, start_angle, end_angle, .. } => {
                let span = end_angle - start_angle;
                let ang = start_angle + span * s;
                Complex64::new(0.0, span) * Complex64::from_polar(radius, ang)
            }
            Segment::Gamma { alpha, mu0, t_start, t_end, .. } => {
                let t = t_start + (t_end - t_start) * s;
                // zeta_t = -(1/alpha) zeta / (mu0 - t)
                -self.point(s) / (mu0 - t) * ((t_end - t_start) / alpha)
            }
        }
    }

    pub fn start(&self) -> Complex64 {
        self.point(0.0)
    }

    pub fn end(&self) -> Complex64 {
        self.point(1.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PathLabel {
    L1,
    L2,
    L3,
    L2R,
    GammaR,
    Gamma,
    RealAxis,
    /// The vertical ray `Z0 + i t`, shared by `l2` and `l3`.
    Vertical,
    Radial,
    Custom,
}

impl fmt::Display for PathLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            PathLabel::L1 => "l1",
            PathLabel::L2 => "l2",
            PathLabel::L3 => "l3",
            PathLabel::L2R => "l2R",
            PathLabel::GammaR => "GammaR",
            PathLabel::Gamma => "gamma",
            PathLabel::RealAxis => "real_axis",
            PathLabel::Vertical => "vertical",
            PathLabel::Radial => "radial",
            PathLabel::Custom => "custom",
        };
        f.write_str(s)
    }
}

impl std::str::FromStr for PathLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "l1" => PathLabel::L1,
            "l2" => PathLabel::L2,
            "l3" => PathLabel::L3,
            "l2R" | "l2r" => PathLabel::L2R,
            "GammaR" | "gammar" => PathLabel::GammaR,
            "gamma" => PathLabel::Gamma,
            "real_axis" | "real" => PathLabel::RealAxis,
            "vertical" => PathLabel::Vertical,
            "radial" => PathLabel::Radial,
            "custom" => PathLabel::Custom,
            other => return Err(Error::domain(format!("unknown path label '{other}'"))),
        })
    }
}

/// Contiguous chain of segments lying in `Re z >= 0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ContourPath {
    segments: Vec<Segment>,
    label: PathLabel,
}

const JOIN_TOL: f64 = 1e-12;

impl ContourPath {
    pub fn new(label: PathLabel, segments: Vec<Segment>) -> Result<Self> {
        if segments.is_empty() {
            return Err(Error::domain("a contour path needs at least one segment"));
        }
        for (i, pair) in segments.windows(2).enumerate() {
            let (e, s) = (pair[0].end(), pair[1].start());
            if (e - s).norm() > JOIN_TOL * (1.0 + e.norm()) {
                return Err(Error::domain(format!(
                    "segments {i} and {} are not contiguous: {e} vs {s}",
                    i + 1
                )));
            }
        }
        for (i, seg) in segments.iter().enumerate() {
            for k in 0..=32 {
                let z = seg.point(k as f64 / 32.0);
                if z.re < -JOIN_TOL * (1.0 + z.norm()) {
                    return Err(Error::domain(format!(
                        "segment {i} leaves the right half-plane at {z}"
                    )));
                }
            }
        }
        Ok(Self { segments, label })
    }

    pub fn label(&self) -> PathLabel {
        self.label
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    /// Length of the global parameter range, i.e. the number of segments.
    pub fn param_len(&self) -> f64 {
        self.segments.len() as f64
    }

    fn locate(&self, t: f64) -> (usize, f64) {
        let n = self.segments.len();
        let t = t.clamp(0.0, n as f64);
        let i = (t.floor() as usize).min(n - 1);
        (i, t - i as f64)
    }

    pub fn point(&self, t: f64) -> Complex64 {
        let (i, s) = self.locate(t);
        self.segments[i].point(s)
    }

    pub fn tangent(&self, t: f64) -> Complex64 {
        let (i, s) = self.locate(t);
        self.segments[i].tangent(s)
    }

    pub fn start(&self) -> Complex64 {
        self.segments[0].start()
    }

    pub fn end(&self) -> Complex64 {
        self.segments[self.segments.len() - 1].end()
    }

    /// Straight segment from `from` to `to`.
    pub fn segment(label: PathLabel, from: Complex64, to: Complex64) -> Result<Self> {
        Self::new(label, vec![Segment::Line { from, to }])
    }

    /// The radial segment `[0, z]`.
    pub fn radial(z: Complex64) -> Result<Self> {
        Self::segment(PathLabel::Radial, Complex64::new(0.0, 0.0), z)
    }

    /// The real segment `[0, x]`.
    pub fn real_axis(x: f64) -> Result<Self> {
        Self::segment(PathLabel::RealAxis, Complex64::new(0.0, 0.0), Complex64::new(x, 0.0))
    }

    /// `l1 = { zeta0 e^{-i eps} t : 0 <= t <= r_max }`, truncated at radius `r_max`.
    pub fn l1(tp: &TurningPoints, eps: f64, r_max: f64) -> Result<Self> {
        let dir = Complex64::from_polar(1.0, tp.zeta0.arg() - eps);
        Self::segment(PathLabel::L1, Complex64::new(0.0, 0.0), dir * r_max)
    }

    /// The vertical ray `{Z0 + i t : 0 <= t <= height}`.
    pub fn vertical(tp: &TurningPoints, height: f64) -> Result<Self> {
        let z0 = Complex64::new(tp.z0, 0.0);
        Self::segment(PathLabel::Vertical, z0, z0 + Complex64::new(0.0, height))
    }

    /// `l3 = [0, Z0] + {Z0 + i t}`, the ray truncated at `height`.
    pub fn l3(tp: &TurningPoints, height: f64) -> Result<Self> {
        let z0 = Complex64::new(tp.z0, 0.0);
        Self::new(
            PathLabel::L3,
            vec![
                Segment::Line { from: Complex64::new(0.0, 0.0), to: z0 },
                Segment::Line { from: z0, to: z0 + Complex64::new(0.0, height) },
            ],
        )
    }

    /// `l2` oriented from `+infinity` (truncated at `r`) to `Z0`, then up the vertical ray.
    pub fn l2(tp: &TurningPoints, r: f64, height: f64) -> Result<Self> {
        let z0 = Complex64::new(tp.z0, 0.0);
        Self::new(
            PathLabel::L2,
            vec![
                Segment::Line { from: Complex64::new(r, 0.0), to: z0 },
                Segment::Line { from: z0, to: z0 + Complex64::new(0.0, height) },
            ],
        )
    }

    /// `Gamma_R = { R e^{i t} : t from arg zeta0 - eps to 0 }`, counterclockwise.
    pub fn gamma_r(tp: &TurningPoints, eps: f64, r: f64) -> Result<Self> {
        Self::new(
            PathLabel::GammaR,
            vec![Segment::Arc {
                center: Complex64::new(0.0, 0.0),
                radius: r,
                start_angle: tp.zeta0.arg() - eps,
                end_angle: 0.0,
            }],
        )
    }

    /// `l_{2,R}` oriented from the far end of `l1` (radius `r_far`) inward along
    /// `l1` to radius `r`, counterclockwise along `Gamma_R`, back along the
    /// real axis to `Z0` and up the vertical ray to `height`. Crosses the cut.
    pub fn l2r(tp: &TurningPoints, eps: f64, r: f64, r_far: f64, height: f64) -> Result<Self> {
        let dir_angle = tp.zeta0.arg() - eps;
        let dir = Complex64::from_polar(1.0, dir_angle);
        let z0 = Complex64::new(tp.z0, 0.0);
        Self::new(
            PathLabel::L2R,
            vec![
                Segment::Line { from: dir * r_far, to: dir * r },
                Segment::Arc {
                    center: Complex64::new(0.0, 0.0),
                    radius: r,
                    start_angle: dir_angle,
                    end_angle: 0.0,
                },
                Segment::Line { from: Complex64::new(r, 0.0), to: z0 },
                Segment::Line { from: z0, to: z0 + Complex64::new(0.0, height) },
            ],
        )
    }

    /// The path `gamma = { ((mu0 - t)/c)^{1/alpha} : 0 <= t <= tau }` from
    /// `zeta0` to `Z0` (parameters at the extension point).
    pub fn gamma(params: &ModelParams) -> Result<Self> {
        let p = params.at_extension_point();
        let tau = p.tau().max(0.0);
        Self::new(
            PathLabel::Gamma,
            vec![Segment::Gamma {
                alpha: p.alpha(),
                c: p.c(),
                mu0: p.mu0(),
                t_start: 0.0,
                t_end: tau,
            }],
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexcore::turning_points;
    #[test]
    fn rejects_gaps_and_left_half_plane() {
        let a = Segment::Line { from: Complex64::new(0.0, 0.0), to: Complex64::new(1.0, 0.0) };
        let b = Segment::Line { from: Complex64::new(1.1, 0.0), to: Complex64::new(2.0, 0.0) };
        assert!(ContourPath::new(PathLabel::Custom, vec![a, b]).is_err());
        assert!(ContourPath::segment(PathLabel::Custom, Complex64::new(0.0, 0.0), Complex64::new(-1.0, 1.0)).is_err());
        assert!(ContourPath::new(PathLabel::Custom, vec![]).is_err());
    }

    #[test]
    fn tangents_match_finite_differences() {
        let p = ModelParams::new(0.7, 1.7).unwrap();
        let tp = turning_points(&p).unwrap();
        let paths = [
            ContourPath::l2r(&tp, 0.05, 5.0, 9.0, 3.0).unwrap(),
            ContourPath::gamma(&p).unwrap(),
            ContourPath::l3(&tp, 2.0).unwrap(),
        ];
        for path in &paths {
            let n = path.param_len();
            for k in 1..40 {
                let t = n * (k as f64 + 0.3) / 40.0;
                let h = 1e-6;
                let fd = (path.point(t + h) - path.point(t - h)) / (2.0 * h);
                let tan = path.tangent(t);
                assert!((fd - tan).norm() < 1e-6 * (1.0 + tan.norm()), "{}: t={t} fd={fd} tan={tan}", path.label());
            }
        }
    }

    #[test]
    fn gamma_runs_from_zeta0_to_z0() {
        let p = ModelParams::new(1.3, 2.9).unwrap();
        let tp = turning_points(&p).unwrap();
        let g = ContourPath::gamma(&p).unwrap();
        assert!((g.start() - tp.zeta0).norm() < 1e-14);
        assert!((g.end() - Complex64::new(tp.z0, 0.0)).norm() < 1e-12);
        // stays in the fourth quadrant
        for k in 0..=50 {
            let z = g.point(k as f64 / 50.0);
            assert!(z.re > 0.0 && z.im <= 1e-15);
        }
    }

    #[test]
    fn labels_round_trip() {
        for l in ["l1", "l2", "l3", "l2R", "GammaR", "gamma", "real_axis", "vertical", "radial", "custom"] {
            assert_eq!(l.parse::<PathLabel>().unwrap().to_string(), l);
        }
        assert!("nope".parse::<PathLabel>().is_err());
    }
}
