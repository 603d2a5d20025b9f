//! Horizontal sections of the quadrics and their stereographic images.
//!
//! The plane `z = d` cuts either quadric in an axis-aligned ellipse centred on
//! the z-axis. Projecting that ellipse back to `z = 0` from the pole gives another
//! centred ellipse whose semi-axes are those of the section scaled by `c / (c − d)`.

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quadric::{PlanePoint, Quadric, QuadricKind, SurfacePoint};

/// Origin-centred ellipse `x²/semi_x² + y²/semi_y² = 1` in the plane `z = plane_height`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SectionEllipse {
    pub semi_x: f64,
    pub semi_y: f64,
    pub plane_height: f64,
}

/// Curve parameter of `α(t) = (A cos t, B sin t)`, wrapped to `[0, 2π)`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct CurveAngle(f64);

impl CurveAngle {
    pub fn new(t: f64) -> Self {
        let w = t.rem_euclid(TAU);
        // rem_euclid can round up to exactly TAU for tiny negative inputs
        Self(if w >= TAU { 0.0 } else { w })
    }

    pub fn radians(self) -> f64 {
        self.0
    }
}

impl From<f64> for CurveAngle {
    fn from(t: f64) -> Self {
        Self::new(t)
    }
}

impl SectionEllipse {
    pub fn new(semi_x: f64, semi_y: f64, plane_height: f64) -> Self {
        Self {
            semi_x,
            semi_y,
            plane_height,
        }
    }

    /// Point `(semi_x cos t, semi_y sin t)` of the ellipse in its own plane.
    pub fn evaluate(&self, t: CurveAngle) -> PlanePoint {
        let (s, c) = t.radians().sin_cos();
        PlanePoint::new(self.semi_x * c, self.semi_y * s)
    }

    /// Same point, placed at height `plane_height`.
    pub fn lifted(&self, t: CurveAngle) -> SurfacePoint {
        let p = self.evaluate(t);
        SurfacePoint::new(p.u, p.v, self.plane_height)
    }

    /// `n` points at `t_k = 2πk/n`, `k = 0..n`, counter-clockwise from `(semi_x, 0)`.
    pub fn sample(&self, n: usize) -> Result<Vec<(f64, PlanePoint)>> {
        if n < 3 {
            return Err(Error::InvalidSampleCount { n, min: 3 });
        }
        Ok((0..n)
            .map(|k| {
                let t = TAU * k as f64 / n as f64;
                (t, self.evaluate(CurveAngle(t)))
            })
            .collect())
    }

    /// Left-hand side of the ellipse equation at `p`; 1 on the curve.
    pub fn equation_value(&self, p: PlanePoint) -> f64 {
        let (x, y) = (p.u / self.semi_x, p.v / self.semi_y);
        x * x + y * y
    }
}

pub fn evaluate_curve(e: &SectionEllipse, t: CurveAngle) -> PlanePoint {
    e.evaluate(t)
}

pub fn sample_curve(e: &SectionEllipse, n: usize) -> Result<Vec<(f64, PlanePoint)>> {
    e.sample(n)
}

/// Human-readable description of the heights with a proper elliptic section.
pub fn valid_section_range(q: &Quadric) -> String {
    match q.kind {
        QuadricKind::Ellipsoid => format!("-{c} < d < {c}", c = q.c),
        QuadricKind::EllipticParaboloid => format!("d < {}", q.c),
    }
}

pub fn is_valid_section_height(q: &Quadric, d: f64) -> bool {
    let below_pole = d < q.c;
    match q.kind {
        QuadricKind::Ellipsoid => below_pole && d > -q.c,
        QuadricKind::EllipticParaboloid => below_pole && d.is_finite(),
    }
}

/// Numerator, and the section and projection denominators, shared by both
/// ellipses: `semi = axis · numer / denom`.
fn scale_terms(q: &Quadric, d: f64) -> Result<(f64, f64, f64)> {
    if !is_valid_section_height(q, d) {
        return Err(degenerate(q, d));
    }
    let below = q.c - d;
    Ok(match q.kind {
        // A = a √(c² − d²) / c,  A₀ = a √(c² − d²) / (c − d)
        QuadricKind::Ellipsoid => ((below * (q.c + d)).sqrt(), q.c, below),
        // A = a √(c − d) = a (c − d) / √(c − d),  A₀ = c a / √(c − d)
        QuadricKind::EllipticParaboloid => {
            let root = below.sqrt();
            (1.0, root / below, root / q.c)
        }
    })
}

fn degenerate(q: &Quadric, d: f64) -> Error {
    Error::DegenerateSection {
        d,
        range: valid_section_range(q),
    }
}

fn build(q: &Quadric, d: f64, numer: f64, denom: f64, height: f64) -> Result<SectionEllipse> {
    let e = SectionEllipse::new(q.a * numer / denom, q.b * numer / denom, height);
    let proper = |s: f64| s.is_finite() && s > 0.0;
    if proper(e.semi_x) && proper(e.semi_y) {
        Ok(e)
    } else {
        Err(degenerate(q, d))
    }
}

/// The ellipse cut from `q` by the plane `z = d`.
pub fn section_ellipse(q: &Quadric, d: f64) -> Result<SectionEllipse> {
    let (numer, section_denom, _) = scale_terms(q, d)?;
    build(q, d, numer, section_denom, d)
}

/// Stereographic image in `z = 0` of the section at height `d`.
pub fn projected_ellipse(q: &Quadric, d: f64) -> Result<SectionEllipse> {
    let (numer, _, projection_denom) = scale_terms(q, d)?;
    build(q, d, numer, projection_denom, 0.0)
}

/// The factor `c / (c − d)` carrying section semi-axes to projected ones.
pub fn projection_scale(q: &Quadric, d: f64) -> Result<f64> {
    if !is_valid_section_height(q, d) {
        return Err(degenerate(q, d));
    }
    Ok(q.c / (q.c - d))
}
