//! Contour-error geometry for circular and straight command paths.
//!
//! All lengths are nanometers and all angles radians. The tangent angle
//! `theta` is the direction of travel of the command path; the contour error
//! is the component of the axial error normal to that direction.
//!
//! Sign convention: a positive contour error means the actual position lies
//! to the right of the direction of travel. For a counter-clockwise circle
//! that is outside the circle, which matches the sign of
//! [`circle_contour_error_exact`].

use std::ops::{Add, Mul, Sub};

use nalgebra::{Matrix2, Vector2};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A position in the stage plane, in nanometers.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub const ORIGIN: Point2 = Point2 { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn dot(self, other: Point2) -> f64 {
        self.x * other.x + self.y * other.y
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn distance(self, other: Point2) -> f64 {
        (self - other).norm()
    }

    fn ensure_finite(self, what: &'static str) -> Result<Self> {
        if self.is_finite() {
            Ok(self)
        } else {
            Err(Error::NonFinite { what })
        }
    }
}

impl Add for Point2 {
    type Output = Point2;
    fn add(self, rhs: Point2) -> Point2 {
        Point2::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for Point2 {
    type Output = Point2;
    fn sub(self, rhs: Point2) -> Point2 {
        Point2::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Mul<f64> for Point2 {
    type Output = Point2;
    fn mul(self, k: f64) -> Point2 {
        Point2::new(self.x * k, self.y * k)
    }
}

/// Per-axis tracking error, command minus actual.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct AxialErrors {
    pub e_x: f64,
    pub e_y: f64,
}

impl AxialErrors {
    pub const fn new(e_x: f64, e_y: f64) -> Self {
        Self { e_x, e_y }
    }

    pub fn between(command: Point2, actual: Point2) -> Self {
        Self { e_x: command.x - actual.x, e_y: command.y - actual.y }
    }

    /// The actual position implied by these errors against `command`.
    pub fn actual_from(&self, command: Point2) -> Point2 {
        Point2::new(command.x - self.e_x, command.y - self.e_y)
    }

    pub fn magnitude(&self) -> f64 {
        self.e_x.hypot(self.e_y)
    }

    pub fn is_finite(&self) -> bool {
        self.e_x.is_finite() && self.e_y.is_finite()
    }
}

/// Direction of travel of the command path, kept as an angle plus its
/// direction cosines `m_x = cos(theta)`, `m_y = sin(theta)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathTangent {
    theta: f64,
    m_x: f64,
    m_y: f64,
}

impl PathTangent {
    pub fn from_angle(theta: f64) -> Self {
        let (m_y, m_x) = theta.sin_cos();
        Self { theta, m_x, m_y }
    }

    pub fn from_degrees(degrees: f64) -> Self {
        Self::from_angle(degrees.to_radians())
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn m_x(&self) -> f64 {
        self.m_x
    }

    pub fn m_y(&self) -> f64 {
        self.m_y
    }

    /// Unit vector along the direction of travel.
    pub fn direction(&self) -> Point2 {
        Point2::new(self.m_x, self.m_y)
    }

    /// Unit normal pointing to the left of the direction of travel.
    pub fn left_normal(&self) -> Point2 {
        Point2::new(-self.m_y, self.m_x)
    }

    /// Slope `tan(theta)` of the path line, `None` for vertical paths.
    pub fn slope(&self) -> Option<f64> {
        if self.m_x.abs() <= 1e-12 {
            None
        } else {
            Some(self.m_y / self.m_x)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CircleSpec {
    pub center: Point2,
    pub radius: f64,
}

impl CircleSpec {
    pub fn new(center: Point2, radius: f64) -> Result<Self> {
        let circle = Self { center, radius };
        circle.validate()?;
        Ok(circle)
    }

    pub fn validate(&self) -> Result<()> {
        self.center.ensure_finite("circle center")?;
        if !(self.radius.is_finite() && self.radius > 0.0) {
            return Err(Error::invalid("circle.radius", format!("must be > 0, got {}", self.radius)));
        }
        Ok(())
    }

    /// Point on the circle at polar angle `phi` about the center.
    pub fn point_at(&self, phi: f64) -> Point2 {
        let (s, c) = phi.sin_cos();
        Point2::new(self.center.x + self.radius * c, self.center.y + self.radius * s)
    }
}

/// Contour-error components along the X and Y axes.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ContourErrorVec {
    pub eps_x: f64,
    pub eps_y: f64,
}

impl ContourErrorVec {
    pub fn magnitude(&self) -> f64 {
        self.eps_x.hypot(self.eps_y)
    }
}

/// Signed distance from `actual` to the circle: positive outside, negative
/// inside.
pub fn circle_contour_error_exact(actual: Point2, circle: &CircleSpec) -> Result<f64> {
    actual.ensure_finite("actual position")?;
    circle.validate()?;
    Ok((actual - circle.center).norm() - circle.radius)
}

/// Truncation order of the small-error expansion of the circular contour
/// error.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Expansion {
    /// `eps = e_y cos(theta) - e_x sin(theta)`.
    #[default]
    FirstOrder,
    /// First order plus the `(e_x^2 + e_y^2) / 2R` correction term.
    SecondOrder,
}

/// Small-error approximation of the circular contour error, with `theta` the
/// tangent angle of a counter-clockwise reference at the command point.
pub fn circle_contour_error_linearized(
    e: AxialErrors,
    tangent: PathTangent,
    radius: f64,
    expansion: Expansion,
) -> Result<f64> {
    if !(radius.is_finite() && radius > 0.0) {
        return Err(Error::invalid("radius", format!("must be > 0, got {radius}")));
    }
    if !e.is_finite() {
        return Err(Error::NonFinite { what: "axial errors" });
    }
    let first = signed_contour_error(e, tangent);
    Ok(match expansion {
        Expansion::FirstOrder => first,
        Expansion::SecondOrder => first + (e.e_x * e.e_x + e.e_y * e.e_y) / (2.0 * radius),
    })
}

/// Signed normal component of the axial error, `e_y m_x - e_x m_y`.
///
/// Its magnitude equals `|projection_matrix(tangent) * e|`.
pub fn signed_contour_error(e: AxialErrors, tangent: PathTangent) -> f64 {
    e.e_y * tangent.m_x - e.e_x * tangent.m_y
}

/// Foot of the perpendicular dropped from `actual` onto the line through
/// `command` with the given slope.
pub fn line_foot_of_perpendicular(command: Point2, actual: Point2, slope: f64) -> Result<Point2> {
    if !slope.is_finite() {
        return Err(Error::invalid("slope", "must be finite; use projection_matrix for vertical paths"));
    }
    command.ensure_finite("command position")?;
    actual.ensure_finite("actual position")?;
    let m = slope;
    let m2 = m * m;
    let denom = 1.0 + m2;
    let x = (m2 * command.x + m * (actual.y - command.y) + actual.x) / denom;
    let y = (m2 * actual.y + m * (actual.x - command.x) + command.y) / denom;
    Ok(Point2::new(x, y))
}

/// Contour-error projection matrix
/// `[[m_y^2, -m_x m_y], [-m_x m_y, m_x^2]]`.
///
/// It projects any axial error onto the path normal: symmetric, idempotent,
/// with the tangent direction as its null space.
pub fn projection_matrix(tangent: PathTangent) -> Matrix2<f64> {
    let (mx, my) = (tangent.m_x, tangent.m_y);
    Matrix2::new(my * my, -mx * my, -mx * my, mx * mx)
}

/// Contour-error components `M(theta) * e`.
pub fn contour_error_components(e: AxialErrors, tangent: PathTangent) -> ContourErrorVec {
    let eps = projection_matrix(tangent) * Vector2::new(e.e_x, e.e_y);
    ContourErrorVec { eps_x: eps.x, eps_y: eps.y }
}
