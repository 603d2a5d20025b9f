//! Eccentricity, curvature, arc length and area of axis-aligned ellipses,
//! plus the signed curvature of a general plane curve.

use std::f64::consts::{PI, TAU};

use crate::error::{Error, Result};
use crate::oracles::{integrate, DEFAULT_BUDGET};
use crate::section::{CurveAngle, SectionEllipse};
use crate::vector::Vec2;

/// Default relative tolerance for arc-length quadrature.
pub const DEFAULT_ARC_REL_TOL: f64 = 1e-10;

/// Velocities shorter than this are treated as a singular point of the curve.
pub const MIN_SPEED: f64 = 1e-300;

/// First and second derivatives of a plane curve at one parameter value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Derivative2Jet {
    pub first: Vec2,
    pub second: Vec2,
}

impl Derivative2Jet {
    /// Exact jet of `α(t) = (A cos t, B sin t)`.
    pub fn of_ellipse(e: &SectionEllipse, t: CurveAngle) -> Self {
        let (s, c) = t.radians().sin_cos();
        Self {
            first: [-e.semi_x * s, e.semi_y * c],
            second: [-e.semi_x * c, -e.semi_y * s],
        }
    }
}

fn major_minor(e: &SectionEllipse) -> (f64, f64) {
    if e.semi_x >= e.semi_y {
        (e.semi_x, e.semi_y)
    } else {
        (e.semi_y, e.semi_x)
    }
}

/// Distance from the centre to either focus; zero for a circle.
pub fn focal_half_distance(e: &SectionEllipse) -> f64 {
    let (major, minor) = major_minor(e);
    ((major - minor) * (major + minor)).sqrt()
}

/// Focal half-distance over the major semi-axis, in `[0, 1)`.
pub fn eccentricity(e: &SectionEllipse) -> f64 {
    let (major, _) = major_minor(e);
    focal_half_distance(e) / major
}

/// `k = (x′y″ − x″y′) / ((x′)² + (y′)²)^{3/2}`.
pub fn signed_curvature(j: &Derivative2Jet) -> Result<f64> {
    let [dx, dy] = j.first;
    let [ddx, ddy] = j.second;
    let speed = dx.hypot(dy);
    if !(speed >= MIN_SPEED) {
        return Err(Error::SingularVelocity);
    }
    // divide in stages so speed³ cannot overflow
    Ok((dx * ddy - ddx * dy) / speed / speed / speed)
}

/// Curvature of the counter-clockwise ellipse, `AB / (A² sin²t + B² cos²t)^{3/2}`.
pub fn ellipse_curvature(e: &SectionEllipse, t: CurveAngle) -> f64 {
    let (s, c) = t.radians().sin_cos();
    let speed = (e.semi_x * s).hypot(e.semi_y * c);
    (e.semi_x / speed) * (e.semi_y / speed) / speed
}

/// Length of `α` between parameters `t0 ≤ t1`, integrating the speed
/// `√(A² sin²t + B² cos²t)` to relative accuracy `rel_tol`.
pub fn ellipse_arc_length(e: &SectionEllipse, t0: f64, t1: f64, rel_tol: f64) -> Result<f64> {
    if !(t0 <= t1) {
        return Err(Error::InvalidArgument(format!(
            "arc length needs t0 <= t1, got [{t0}, {t1}]"
        )));
    }
    let (a, b) = (e.semi_x, e.semi_y);
    let speed = move |t: f64| (a * t.sin()).hypot(b * t.cos());
    Ok(integrate(speed, t0, t1, rel_tol, DEFAULT_BUDGET)?.value)
}

/// Full perimeter, `t ∈ [0, 2π]`.
pub fn ellipse_perimeter(e: &SectionEllipse, rel_tol: f64) -> Result<f64> {
    ellipse_arc_length(e, 0.0, TAU, rel_tol)
}

pub fn ellipse_area(e: &SectionEllipse) -> f64 {
    PI * e.semi_x * e.semi_y
}
