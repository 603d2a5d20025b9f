//! Stereographic projection from the pole `N = (0, 0, c)` onto the plane `z = 0`.
//!
//! A plane point `Q = (u, v, 0)` is sent to the second intersection of the line
//! `N + t (Q − N) = (t u, t v, (1 − t) c)` with the quadric. Substituting the line
//! into the implicit equation leaves a single non-zero root in `t`:
//!
//! ```text
//! ellipsoid    D = b²u² + a²v² + a²b²    t = 2a²b² / D
//! paraboloid   M = b²u² + a²v²           t = c a²b² / M
//! ```
//!
//! The inverse intersects the line through `N` and a surface point `(x, y, z)`
//! with the plane, giving `(c x / (c − z), c y / (c − z))` for both families.
//! The paraboloid chart omits the plane origin, which would correspond to the
//! point at infinity along the paraboloid's axis.

use crate::error::{Error, Result};
use crate::quadric::{PlanePoint, Quadric, QuadricKind, SurfacePoint};
use crate::vector::{cross, norm3, Vec3};

/// `|c − z|` at or below this multiple of `c` is treated as the pole.
pub const POLE_THRESHOLD: f64 = 1e-12;

/// Line parameter `t` and the projection denominator (`D` or `M`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProjectionScalars {
    pub t: f64,
    pub denom: f64,
}

/// Tangent columns of the forward map and their cross product.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacobianColumns {
    pub d_u: Vec3,
    pub d_v: Vec3,
    pub cross: Vec3,
}

impl JacobianColumns {
    /// Columns with the cross product taken componentwise from `d_u` and `d_v`.
    pub fn from_columns(d_u: Vec3, d_v: Vec3) -> Self {
        Self {
            d_u,
            d_v,
            cross: cross(d_u, d_v),
        }
    }
}

fn check_domain(q: &Quadric, p: PlanePoint) -> Result<()> {
    if q.kind == QuadricKind::EllipticParaboloid && p.is_origin() {
        return Err(Error::ParaboloidOriginUndefined);
    }
    Ok(())
}

/// Quadratic form `b²u² + a²v²` shared by both denominators.
fn plane_form(q: &Quadric, p: PlanePoint) -> f64 {
    let (bu, av) = (q.b * p.u, q.a * p.v);
    bu * bu + av * av
}

pub fn line_parameter(q: &Quadric, p: PlanePoint) -> Result<ProjectionScalars> {
    check_domain(q, p)?;
    let ab2 = (q.a * q.b) * (q.a * q.b);
    let s = plane_form(q, p);
    Ok(match q.kind {
        QuadricKind::Ellipsoid => {
            let denom = s + ab2;
            ProjectionScalars {
                t: 2.0 * ab2 / denom,
                denom,
            }
        }
        QuadricKind::EllipticParaboloid => ProjectionScalars {
            t: q.c * ab2 / s,
            denom: s,
        },
    })
}

/// Forward map from the plane to the quadric minus its pole.
pub fn project_to_surface(q: &Quadric, p: PlanePoint) -> Result<SurfacePoint> {
    let ProjectionScalars { t, denom } = line_parameter(q, p)?;
    let ab2 = (q.a * q.b) * (q.a * q.b);
    let z = match q.kind {
        QuadricKind::Ellipsoid => q.c * (plane_form(q, p) - ab2) / denom,
        QuadricKind::EllipticParaboloid => q.c * (denom - ab2 * q.c) / denom,
    };
    Ok(SurfacePoint::new(t * p.u, t * p.v, z))
}

/// Inverse map from the quadric minus its pole back to the plane.
///
/// `tol` bounds the implicit residual accepted for `p`.
pub fn project_to_plane(q: &Quadric, p: SurfacePoint, tol: f64) -> Result<PlanePoint> {
    let residual = q.implicit_residual(p);
    if !(residual.abs() <= tol) {
        return Err(Error::NotOnSurface {
            x: p.x,
            y: p.y,
            z: p.z,
            residual,
            tol,
        });
    }
    let gap = q.c - p.z;
    if gap.abs() <= POLE_THRESHOLD * q.c {
        return Err(Error::PoleNotProjectable {
            x: p.x,
            y: p.y,
            z: p.z,
        });
    }
    let gap = pole_gap(q, p).unwrap_or(gap);
    let scale = q.c / gap;
    Ok(PlanePoint::new(scale * p.x, scale * p.y))
}

/// `c − z` from the surface equation for points above the plane, where direct
/// subtraction would cancel. `None` elsewhere.
fn pole_gap(q: &Quadric, p: SurfacePoint) -> Option<f64> {
    if p.z <= 0.0 {
        return None;
    }
    let (xa, yb) = (p.x / q.a, p.y / q.b);
    let radial = xa * xa + yb * yb;
    let gap = match q.kind {
        // c² − z² = c² (x²/a² + y²/b²)
        QuadricKind::Ellipsoid => q.c * q.c * radial / (q.c + p.z),
        // c − z = x²/a² + y²/b²
        QuadricKind::EllipticParaboloid => radial,
    };
    (gap > 0.0 && gap.is_finite()).then_some(gap)
}

/// Closed-form partial derivatives and normal of the forward map.
pub fn jacobian_columns(q: &Quadric, p: PlanePoint) -> Result<JacobianColumns> {
    let ProjectionScalars { t, denom } = line_parameter(q, p)?;
    let (a2, b2, c) = (q.a * q.a, q.b * q.b, q.c);
    let (u, v) = (p.u, p.v);
    let cols = match q.kind {
        QuadricKind::Ellipsoid => {
            // s = a²b²/D, so every a^m b^n / D^k factor is a power of s over D.
            let s = 0.5 * t;
            let d_u = [
                2.0 * s * (1.0 - 2.0 * b2 * u * u / denom),
                -4.0 * s * b2 * u * v / denom,
                4.0 * s * b2 * u * c / denom,
            ];
            let d_v = [
                -4.0 * s * a2 * u * v / denom,
                2.0 * s * (1.0 - 2.0 * a2 * v * v / denom),
                4.0 * s * a2 * v * c / denom,
            ];
            // (4a⁴b⁴/D³)(−2b²uc, −2a²vc, a²b² − b²u² − a²v²)
            let k = 4.0 * s * s;
            let ab2 = a2 * b2;
            let cross = [
                k * (-2.0 * b2 * u * c / denom),
                k * (-2.0 * a2 * v * c / denom),
                k * ((ab2 - b2 * u * u) - a2 * v * v) / denom,
            ];
            JacobianColumns { d_u, d_v, cross }
        }
        QuadricKind::EllipticParaboloid => {
            // t = a²b²c/M
            let d_u = [
                t * (1.0 - 2.0 * b2 * u * u / denom),
                -2.0 * t * b2 * u * v / denom,
                2.0 * t * b2 * c * u / denom,
            ];
            let d_v = [
                -2.0 * t * a2 * u * v / denom,
                t * (1.0 - 2.0 * a2 * v * v / denom),
                2.0 * t * a2 * c * v / denom,
            ];
            // t² (−2b²cu/M, −2a²cv/M, −1); the z entry is −a⁴b⁴c²/M².
            let k = t * t;
            let cross = [
                k * (-2.0 * b2 * c * u / denom),
                k * (-2.0 * a2 * c * v / denom),
                -k,
            ];
            JacobianColumns { d_u, d_v, cross }
        }
    };
    Ok(cols)
}

/// Whether the differential of the forward map is injective at `p`.
pub fn is_regular_at(q: &Quadric, p: PlanePoint) -> Result<bool> {
    let j = jacobian_columns(q, p)?;
    Ok(norm3(j.cross) > 0.0)
}

/// Mirror through `z = 0`, swapping the roles of the two poles.
///
/// Composing [`project_to_plane`] with this reflection charts the ellipsoid
/// minus its south pole.
pub fn reflect_to_south_chart(p: SurfacePoint) -> SurfacePoint {
    SurfacePoint::new(p.x, p.y, -p.z)
}
