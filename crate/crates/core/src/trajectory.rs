//! Reference paths: an optional straight approach followed by whole
//! counter-clockwise revolutions of a circle.
//!
//! The circle is parameterized as `C + R (cos phi, sin phi)` with
//! `phi(t) = phi0 + 2 pi f (t - t_approach)`. The tangent angle on the circle
//! is `phi + pi/2`. Tangent angles come from the analytic path, never from
//! differencing positions.
//!
//! Geometry of the two-segment paths, with `alpha` the approach angle:
//!
//! * `line_then_circle`: the circle is entered at `phi0 = alpha`; the approach
//!   runs radially outward along direction `alpha` and ends on the entry
//!   point. With the default approach length (one radius) it starts at the
//!   circle center. Direction jumps by 90 degrees at the junction.
//! * `tangent_then_circle`: the circle is entered at `phi0 = alpha - 90 deg`
//!   so the circle tangent there equals `alpha`; the approach is collinear
//!   with that tangent and the travel direction is continuous.
//!
//! `circle_only` uses the `tangent_then_circle` circle without the approach;
//! `line_only` is the `line_then_circle` approach alone.

use std::f64::consts::{FRAC_PI_2, TAU};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{CircleSpec, PathTangent, Point2};

/// Slack allowed past the end of the time domain, in seconds, to absorb
/// rounding in `k * dt`.
const TIME_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PathKind {
    LineThenCircle,
    TangentThenCircle,
    CircleOnly,
    LineOnly,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PathSpec {
    pub kind: PathKind,
    pub circle: CircleSpec,
    /// Revolutions per second on the circle, Hz.
    pub frequency: f64,
    /// Duration of the straight approach, s.
    pub approach_duration: f64,
    pub circle_revolutions: u32,
    /// Direction of the approach line, degrees from +X.
    pub approach_angle: f64,
    /// Length of the approach line in nm; one radius when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub approach_length: Option<f64>,
}

/// Which piece of the path a sample belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Segment {
    Approach,
    Circle,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathSample {
    pub t: f64,
    pub reference: Point2,
    pub tangent: PathTangent,
    pub segment: Segment,
}

/// Line-then-circle benchmark: 1 Hz, 800 nm diameter, 2 s approach at 45
/// degrees, 4 revolutions.
pub fn benchmark_path_a() -> PathSpec {
    PathSpec {
        kind: PathKind::LineThenCircle,
        circle: CircleSpec { center: Point2::ORIGIN, radius: 400.0 },
        frequency: 1.0,
        approach_duration: 2.0,
        circle_revolutions: 4,
        approach_angle: 45.0,
        approach_length: None,
    }
}

/// Tangent-then-circle benchmark with the same circle and timing as
/// [`benchmark_path_a`].
pub fn benchmark_path_b() -> PathSpec {
    PathSpec { kind: PathKind::TangentThenCircle, ..benchmark_path_a() }
}

impl PathSpec {
    pub fn validate(&self) -> Result<()> {
        self.circle.validate().map_err(|e| match e {
            Error::InvalidParameter { field, reason } => {
                Error::InvalidParameter { field: format!("path.{field}"), reason }
            }
            other => other,
        })?;
        if !(self.frequency.is_finite() && self.frequency > 0.0) {
            return Err(Error::invalid("path.frequency", format!("must be > 0, got {}", self.frequency)));
        }
        if !(self.approach_duration.is_finite() && self.approach_duration >= 0.0) {
            return Err(Error::invalid(
                "path.approach_duration",
                format!("must be >= 0, got {}", self.approach_duration),
            ));
        }
        if self.circle_revolutions < 1 {
            return Err(Error::invalid("path.circle_revolutions", "must be >= 1"));
        }
        if !self.approach_angle.is_finite() {
            return Err(Error::invalid("path.approach_angle", "must be finite"));
        }
        if let Some(len) = self.approach_length {
            if !(len.is_finite() && len > 0.0) {
                return Err(Error::invalid("path.approach_length", format!("must be > 0, got {len}")));
            }
        }
        if self.kind == PathKind::LineOnly && self.approach_duration <= 0.0 {
            return Err(Error::invalid("path.approach_duration", "line_only requires a positive approach"));
        }
        Ok(())
    }

    fn has_approach(&self) -> bool {
        matches!(self.kind, PathKind::LineThenCircle | PathKind::TangentThenCircle | PathKind::LineOnly)
            && self.approach_duration > 0.0
    }

    fn has_circle(&self) -> bool {
        self.kind != PathKind::LineOnly
    }

    /// Time at which the circle segment begins.
    pub fn circle_start(&self) -> f64 {
        if self.has_approach() {
            self.approach_duration
        } else {
            0.0
        }
    }

    pub fn circle_duration(&self) -> f64 {
        if self.has_circle() {
            self.circle_revolutions as f64 / self.frequency
        } else {
            0.0
        }
    }

    pub fn duration(&self) -> f64 {
        match self.kind {
            PathKind::LineOnly => self.approach_duration,
            _ => self.circle_start() + self.circle_duration(),
        }
    }

    /// Start of the last commanded revolution, if the path has a circle.
    pub fn final_revolution_start(&self) -> Option<f64> {
        self.has_circle().then(|| self.duration() - 1.0 / self.frequency)
    }

    fn approach_direction(&self) -> f64 {
        self.approach_angle.to_radians()
    }

    /// Polar angle of the circle entry point.
    fn entry_phase(&self) -> f64 {
        match self.kind {
            PathKind::LineThenCircle | PathKind::LineOnly => self.approach_direction(),
            PathKind::TangentThenCircle | PathKind::CircleOnly => self.approach_direction() - FRAC_PI_2,
        }
    }

    fn approach_end(&self) -> Point2 {
        self.circle.point_at(self.entry_phase())
    }

    fn approach_start(&self) -> Point2 {
        let len = self.approach_length.unwrap_or(self.circle.radius);
        let (s, c) = self.approach_direction().sin_cos();
        self.approach_end() - Point2::new(c, s) * len
    }

    /// Reference position and tangent at time `t`.
    pub fn sample(&self, t: f64) -> Result<PathSample> {
        let duration = self.duration();
        if !(t >= 0.0 && t <= duration + TIME_SLACK) {
            return Err(Error::OutsideTimeDomain { t, duration });
        }
        let t = t.min(duration);
        if self.has_approach() && (t < self.approach_duration || !self.has_circle()) {
            let start = self.approach_start();
            let end = self.approach_end();
            let frac = t / self.approach_duration;
            return Ok(PathSample {
                t,
                reference: start + (end - start) * frac,
                tangent: PathTangent::from_angle(self.approach_direction()),
                segment: Segment::Approach,
            });
        }
        let phi = self.entry_phase() + TAU * self.frequency * (t - self.circle_start());
        Ok(PathSample {
            t,
            reference: self.circle.point_at(phi),
            tangent: PathTangent::from_angle(phi + FRAC_PI_2),
            segment: Segment::Circle,
        })
    }
}
