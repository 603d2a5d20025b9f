//! The two quadric families handled by the projections.
//!
//! Both are symmetric about the z-axis and carry their projection pole at
//! `(0, 0, c)`:
//!
//! ```text
//! ellipsoid             x²/a² + y²/b² + z²/c² = 1
//! elliptic paraboloid   z = c − x²/a² − y²/b²
//! ```
//!
//! A sphere of radius `r` is `Quadric::ellipsoid(r, r, r)`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default tolerance for [`Quadric::contains`].
pub const DEFAULT_MEMBERSHIP_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QuadricKind {
    Ellipsoid,
    EllipticParaboloid,
}

impl fmt::Display for QuadricKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuadricKind::Ellipsoid => f.write_str("ellipsoid"),
            QuadricKind::EllipticParaboloid => f.write_str("paraboloid"),
        }
    }
}

/// An origin-centred ellipsoid or a z-axis elliptic paraboloid with vertex at height `c`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Quadric {
    pub kind: QuadricKind,
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

/// A point in space, normally on a quadric.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SurfacePoint {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

/// A point of the projection plane `z = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlanePoint {
    pub u: f64,
    pub v: f64,
}

impl SurfacePoint {
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }
}

impl PlanePoint {
    pub const fn new(u: f64, v: f64) -> Self {
        Self { u, v }
    }

    pub fn is_origin(self) -> bool {
        self.u == 0.0 && self.v == 0.0
    }

    pub fn norm(self) -> f64 {
        self.u.hypot(self.v)
    }
}

impl Quadric {
    /// Builds a validated ellipsoid with semi-axes `a`, `b`, `c`.
    pub fn ellipsoid(a: f64, b: f64, c: f64) -> Result<Self> {
        let q = Self {
            kind: QuadricKind::Ellipsoid,
            a,
            b,
            c,
        };
        q.validate()?;
        Ok(q)
    }

    /// Builds a validated paraboloid `z = c − x²/a² − y²/b²`.
    pub fn paraboloid(a: f64, b: f64, c: f64) -> Result<Self> {
        let q = Self {
            kind: QuadricKind::EllipticParaboloid,
            a,
            b,
            c,
        };
        q.validate()?;
        Ok(q)
    }

    /// Sphere of radius `r`.
    pub fn sphere(r: f64) -> Result<Self> {
        Self::ellipsoid(r, r, r)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, value) in [("a", self.a), ("b", self.b), ("c", self.c)] {
            if !(value.is_finite() && value > 0.0) {
                return Err(Error::NonPositiveAxis { name, value });
            }
        }
        Ok(())
    }

    /// Signed defect of the implicit equation at `p`; zero exactly on the surface.
    ///
    /// The ellipsoid residual is `x²/a² + y²/b² + z²/c² − 1` and the paraboloid
    /// residual is `z − c + x²/a² + y²/b²`.
    pub fn implicit_residual(&self, p: SurfacePoint) -> f64 {
        let (xa, yb) = (p.x / self.a, p.y / self.b);
        match self.kind {
            QuadricKind::Ellipsoid => {
                let zc = p.z / self.c;
                xa * xa + yb * yb + zc * zc - 1.0
            }
            QuadricKind::EllipticParaboloid => (p.z - self.c) + (xa * xa + yb * yb),
        }
    }

    pub fn contains(&self, p: SurfacePoint, tol: f64) -> bool {
        self.implicit_residual(p).abs() <= tol
    }

    /// The projection pole `N = (0, 0, c)`.
    pub fn north_pole(&self) -> SurfacePoint {
        SurfacePoint::new(0.0, 0.0, self.c)
    }
}

impl fmt::Display for Quadric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({}, {}, {})", self.kind, self.a, self.b, self.c)
    }
}
