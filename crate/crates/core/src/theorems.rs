//! Executable checks of how the projection acts on horizontal sections.
//!
//! Each check evaluates a quantity on the projected ellipse (`lhs`) and on the
//! section ellipse (`rhs`) and compares `lhs` with `expected_ratio · rhs`:
//!
//! | id     | quantity     | ratio           |
//! |--------|--------------|-----------------|
//! | T1, T2 | eccentricity | 1               |
//! | T3, T4 | curvature    | (c − d) / c     |
//! | T5, T6 | arc length   | c / (c − d)     |
//! | T7, T8 | area         | (c / (c − d))²  |
//!
//! Odd ids are the ellipsoid, even ids the paraboloid. All four ratios follow
//! from the single identity `(A₀, B₀) = λ (A, B)` with `λ = c / (c − d)`, which
//! [`scaling_deviation`] checks on its own.

use std::f64::consts::TAU;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metrics::{
    eccentricity, ellipse_arc_length, ellipse_area, ellipse_curvature, ellipse_perimeter,
    DEFAULT_ARC_REL_TOL,
};
use crate::oracles::polygon_area;
use crate::quadric::{Quadric, QuadricKind};
use crate::section::{projected_ellipse, projection_scale, section_ellipse, SectionEllipse};
use crate::vector::Vec2;

/// Absolute tolerance for eccentricity preservation.
pub const ECCENTRICITY_TOL: f64 = 1e-12;
/// Curvature tolerance, relative to the largest projected curvature.
pub const CURVATURE_REL_TOL: f64 = 1e-10;
/// Relative tolerance for the perimeter ratio.
pub const ARC_LENGTH_REL_TOL: f64 = 1e-8;
/// Relative tolerance for the closed-form area ratio.
pub const AREA_REL_TOL: f64 = 1e-12;
/// Curve samples for the curvature comparison.
pub const DEFAULT_CURVATURE_SAMPLES: usize = 360;
/// Polygon vertices for the shoelace area cross-check.
pub const SHOELACE_SAMPLES: usize = 100_000;
/// Relative tolerance of the shoelace area cross-check.
pub const SHOELACE_REL_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TheoremId {
    T1,
    T2,
    T3,
    T4,
    T5,
    T6,
    T7,
    T8,
}

impl TheoremId {
    fn pick(kind: QuadricKind, ellipsoid: Self, paraboloid: Self) -> Self {
        match kind {
            QuadricKind::Ellipsoid => ellipsoid,
            QuadricKind::EllipticParaboloid => paraboloid,
        }
    }

    pub fn eccentricity(kind: QuadricKind) -> Self {
        Self::pick(kind, Self::T1, Self::T2)
    }

    pub fn curvature(kind: QuadricKind) -> Self {
        Self::pick(kind, Self::T3, Self::T4)
    }

    pub fn arc_length(kind: QuadricKind) -> Self {
        Self::pick(kind, Self::T5, Self::T6)
    }

    pub fn area(kind: QuadricKind) -> Self {
        Self::pick(kind, Self::T7, Self::T8)
    }

    pub fn quantity(self) -> &'static str {
        match self {
            Self::T1 | Self::T2 => "eccentricity",
            Self::T3 | Self::T4 => "curvature",
            Self::T5 | Self::T6 => "arc_length",
            Self::T7 | Self::T8 => "area",
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// A scalar or a vector of samples over the curve parameter.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Quantity {
    Scalar(f64),
    Samples(Vec<f64>),
}

impl Quantity {
    /// The scalar, or the largest sample.
    pub fn headline(&self) -> f64 {
        match self {
            Quantity::Scalar(x) => *x,
            Quantity::Samples(v) => v.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        }
    }
}

/// Secondary comparison against an independent oracle.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CrossCheck {
    pub oracle: String,
    pub max_rel_error: f64,
    pub tolerance: f64,
    pub pass: bool,
}

/// Outcome of one check at one `(quadric, d)`.
///
/// `pass` holds iff `max_abs_error <= tolerance` and any `cross_check` passes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TheoremReport {
    pub theorem_id: TheoremId,
    pub quadric: Quadric,
    pub d: f64,
    pub lhs: Quantity,
    pub rhs: Quantity,
    pub expected_ratio: f64,
    pub max_abs_error: f64,
    pub tolerance: f64,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cross_check: Option<CrossCheck>,
}

impl TheoremReport {
    #[allow(clippy::too_many_arguments)]
    fn new(
        theorem_id: TheoremId,
        quadric: &Quadric,
        d: f64,
        lhs: Quantity,
        rhs: Quantity,
        expected_ratio: f64,
        max_abs_error: f64,
        tolerance: f64,
    ) -> Self {
        Self {
            theorem_id,
            quadric: *quadric,
            d,
            lhs,
            rhs,
            expected_ratio,
            max_abs_error,
            tolerance,
            pass: max_abs_error <= tolerance,
            cross_check: None,
        }
    }

    fn with_cross_check(mut self, check: CrossCheck) -> Self {
        self.pass = self.pass && check.pass;
        self.cross_check = Some(check);
        self
    }
}

fn ellipses(q: &Quadric, d: f64) -> Result<(SectionEllipse, SectionEllipse)> {
    Ok((section_ellipse(q, d)?, projected_ellipse(q, d)?))
}

fn rel_err(value: f64, reference: f64) -> f64 {
    (value - reference).abs() / reference.abs()
}

/// Eccentricity of the quadric's own `a : b` ratio, `√(a² − b²) / max(a, b)`.
pub fn reference_eccentricity(q: &Quadric) -> f64 {
    let (major, minor) = if q.a >= q.b { (q.a, q.b) } else { (q.b, q.a) };
    ((major - minor) * (major + minor)).sqrt() / major
}

/// Eccentricity preservation (T1 ellipsoid, T2 paraboloid). `tol` is absolute.
///
/// The error also covers the distance of both sides from
/// [`reference_eccentricity`].
pub fn verify_eccentricity(q: &Quadric, d: f64, tol: f64) -> Result<TheoremReport> {
    let (section, projected) = ellipses(q, d)?;
    let (lhs, rhs) = (eccentricity(&projected), eccentricity(&section));
    let reference = reference_eccentricity(q);
    let err = (lhs - rhs)
        .abs()
        .max((lhs - reference).abs())
        .max((rhs - reference).abs());
    Ok(TheoremReport::new(
        TheoremId::eccentricity(q.kind),
        q,
        d,
        Quantity::Scalar(lhs),
        Quantity::Scalar(rhs),
        1.0,
        err,
        tol,
    ))
}

/// Curvature ratio `(c − d)/c` (T3, T4) over `n_samples` uniform angles.
///
/// `rel_tol` is scaled by the largest projected curvature; the report carries
/// the resulting absolute tolerance.
pub fn verify_curvature_ratio(
    q: &Quadric,
    d: f64,
    n_samples: usize,
    rel_tol: f64,
) -> Result<TheoremReport> {
    if n_samples < 8 {
        return Err(Error::InvalidSampleCount {
            n: n_samples,
            min: 8,
        });
    }
    let (section, projected) = ellipses(q, d)?;
    let ratio = (q.c - d) / q.c;
    let angles = (0..n_samples).map(|k| (TAU * k as f64 / n_samples as f64).into());
    let (lhs, rhs): (Vec<f64>, Vec<f64>) = angles
        .map(|t| {
            (
                ellipse_curvature(&projected, t),
                ellipse_curvature(&section, t),
            )
        })
        .unzip();
    let err = lhs
        .iter()
        .zip(&rhs)
        .map(|(k0, kd)| (k0 - ratio * kd).abs())
        .fold(0.0, f64::max);
    let scale = lhs.iter().copied().fold(0.0, f64::max);
    Ok(TheoremReport::new(
        TheoremId::curvature(q.kind),
        q,
        d,
        Quantity::Samples(lhs),
        Quantity::Samples(rhs),
        ratio,
        err,
        rel_tol * scale,
    ))
}

/// Quadrature tolerance used for a requested ratio tolerance.
fn quadrature_tol(rel_tol: f64) -> f64 {
    (rel_tol * 1e-2).clamp(1e-13, DEFAULT_ARC_REL_TOL)
}

/// Arc-length ratio `c/(c − d)` (T5, T6) over the full perimeter.
/// The error is relative to the projected perimeter.
pub fn verify_arclength_ratio(q: &Quadric, d: f64, rel_tol: f64) -> Result<TheoremReport> {
    verify_arclength_ratio_on(q, d, 0.0, TAU, rel_tol)
}

/// Arc-length ratio on the parameter interval `[t0, t1]`.
pub fn verify_arclength_ratio_on(
    q: &Quadric,
    d: f64,
    t0: f64,
    t1: f64,
    rel_tol: f64,
) -> Result<TheoremReport> {
    if !(rel_tol > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "tolerance must be positive, got {rel_tol}"
        )));
    }
    let (section, projected) = ellipses(q, d)?;
    let quad_tol = quadrature_tol(rel_tol);
    let lhs = ellipse_arc_length(&projected, t0, t1, quad_tol)?;
    let rhs = ellipse_arc_length(&section, t0, t1, quad_tol)?;
    let ratio = projection_scale(q, d)?;
    let err = if lhs == 0.0 {
        (ratio * rhs).abs()
    } else {
        rel_err(ratio * rhs, lhs)
    };
    Ok(TheoremReport::new(
        TheoremId::arc_length(q.kind),
        q,
        d,
        Quantity::Scalar(lhs),
        Quantity::Scalar(rhs),
        ratio,
        err,
        rel_tol,
    ))
}

fn shoelace_area(e: &SectionEllipse, n: usize) -> Result<f64> {
    let pts: Vec<Vec2> = e.sample(n)?.into_iter().map(|(_, p)| [p.u, p.v]).collect();
    polygon_area(&pts)
}

/// Area ratio `(c/(c − d))²` (T7, T8), closed forms compared at relative `tol`,
/// with a shoelace cross-check of both areas on `SHOELACE_SAMPLES`-gons.
pub fn verify_area_ratio(q: &Quadric, d: f64, tol: f64) -> Result<TheoremReport> {
    verify_area_ratio_with(q, d, tol, Some(SHOELACE_SAMPLES))
}

/// As [`verify_area_ratio`]; `shoelace_samples = None` skips the polygon cross-check.
pub fn verify_area_ratio_with(
    q: &Quadric,
    d: f64,
    tol: f64,
    shoelace_samples: Option<usize>,
) -> Result<TheoremReport> {
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    let (section, projected) = ellipses(q, d)?;
    let (lhs, rhs) = (ellipse_area(&projected), ellipse_area(&section));
    let scale = projection_scale(q, d)?;
    let ratio = scale * scale;
    let report = TheoremReport::new(
        TheoremId::area(q.kind),
        q,
        d,
        Quantity::Scalar(lhs),
        Quantity::Scalar(rhs),
        ratio,
        rel_err(ratio * rhs, lhs),
        tol,
    );
    let Some(n) = shoelace_samples else {
        return Ok(report);
    };
    let max_rel_error =
        rel_err(shoelace_area(&projected, n)?, lhs).max(rel_err(shoelace_area(&section, n)?, rhs));
    Ok(report.with_cross_check(CrossCheck {
        oracle: format!("shoelace-{n}"),
        max_rel_error,
        tolerance: SHOELACE_REL_TOL,
        pass: max_rel_error <= SHOELACE_REL_TOL,
    }))
}

/// The four checks for one `(quadric, d)` at the default tolerances.
pub fn verify_all(q: &Quadric, d: f64) -> Result<Vec<TheoremReport>> {
    Ok(vec![
        verify_eccentricity(q, d, ECCENTRICITY_TOL)?,
        verify_curvature_ratio(q, d, DEFAULT_CURVATURE_SAMPLES, CURVATURE_REL_TOL)?,
        verify_arclength_ratio(q, d, ARC_LENGTH_REL_TOL)?,
        verify_area_ratio(q, d, AREA_REL_TOL)?,
    ])
}

/// Largest relative deviation of `(A₀, B₀)` from `λ (A, B)`, `λ = c/(c − d)`.
pub fn scaling_deviation(q: &Quadric, d: f64) -> Result<f64> {
    let (section, projected) = ellipses(q, d)?;
    let scale = projection_scale(q, d)?;
    Ok(rel_err(scale * section.semi_x, projected.semi_x)
        .max(rel_err(scale * section.semi_y, projected.semi_y)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonotoneFlags {
    pub curvature_decreasing: bool,
    pub length_increasing: bool,
    pub area_increasing: bool,
}

impl MonotoneFlags {
    pub fn all(&self) -> bool {
        self.curvature_decreasing && self.length_increasing && self.area_increasing
    }
}

/// Projected curvature at `t = 0`, perimeter and area along sections rising
/// toward the pole.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RemarkReport {
    pub quadric: Quadric,
    pub d_values: Vec<f64>,
    pub curvature_trend: Vec<f64>,
    pub length_trend: Vec<f64>,
    pub area_trend: Vec<f64>,
    pub monotone_flags: MonotoneFlags,
    /// `k₀(0) / k_d(0)` at the last height.
    pub final_curvature_ratio: f64,
    /// `𝒜₀ / 𝒜_d` at the last height.
    pub final_area_ratio: f64,
    pub pass: bool,
}

fn strictly(values: &[f64], cmp: impl Fn(f64, f64) -> bool) -> bool {
    values.windows(2).all(|w| cmp(w[0], w[1]))
}

pub fn remark_scan(q: &Quadric, d_values: &[f64]) -> Result<RemarkReport> {
    if d_values.is_empty() {
        return Err(Error::InvalidArgument(
            "remark scan needs at least one d".into(),
        ));
    }
    if !strictly(d_values, |x, y| x < y) {
        return Err(Error::InvalidArgument(
            "remark scan heights must be strictly increasing".into(),
        ));
    }
    let mut curvature_trend = Vec::with_capacity(d_values.len());
    let mut length_trend = Vec::with_capacity(d_values.len());
    let mut area_trend = Vec::with_capacity(d_values.len());
    let (mut final_curvature_ratio, mut final_area_ratio) = (1.0, 1.0);
    for &d in d_values {
        let (section, projected) = ellipses(q, d)?;
        let k0 = ellipse_curvature(&projected, 0.0.into());
        curvature_trend.push(k0);
        length_trend.push(ellipse_perimeter(&projected, DEFAULT_ARC_REL_TOL)?);
        area_trend.push(ellipse_area(&projected));
        final_curvature_ratio = k0 / ellipse_curvature(&section, 0.0.into());
        final_area_ratio = ellipse_area(&projected) / ellipse_area(&section);
    }
    let monotone_flags = MonotoneFlags {
        curvature_decreasing: strictly(&curvature_trend, |x, y| x > y),
        length_increasing: strictly(&length_trend, |x, y| x < y),
        area_increasing: strictly(&area_trend, |x, y| x < y),
    };
    Ok(RemarkReport {
        quadric: *q,
        d_values: d_values.to_vec(),
        curvature_trend,
        length_trend,
        area_trend,
        pass: monotone_flags.all(),
        monotone_flags,
        final_curvature_ratio,
        final_area_ratio,
    })
}

/// Heights `{0, 0.5, 0.9, 0.99, 0.999} · c`.
pub fn default_remark_heights(q: &Quadric) -> Vec<f64> {
    [0.0, 0.5, 0.9, 0.99, 0.999]
        .iter()
        .map(|f| f * q.c)
        .collect()
}
