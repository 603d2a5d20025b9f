//! Independent numerical machinery used to check the closed forms: adaptive
//! Gauss–Legendre quadrature, central finite differences, a focal-sum
//! eccentricity check and the shoelace polygon area.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::metrics::Derivative2Jet;
use crate::projection::JacobianColumns;
use crate::quadric::{PlanePoint, SurfacePoint};
use crate::section::SectionEllipse;
use crate::vector::{Vec2, Vec3};

/// Number of nodes per quadrature panel.
pub const GAUSS_ORDER: usize = 15;

/// Default cap on integrand evaluations for [`integrate`].
pub const DEFAULT_BUDGET: usize = 1_000_000;

/// Relative finite-difference step; the absolute step is this times `max(1, |x|)`.
pub const FD_STEP: f64 = 1e-5;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub value: f64,
    pub error_estimate: f64,
    pub evaluations: usize,
}

struct GaussRule {
    nodes: [f64; GAUSS_ORDER],
    weights: [f64; GAUSS_ORDER],
}

/// Legendre polynomial `P_n(x)` and its derivative by the three-term recurrence.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let n = n as f64;
    (p1, n * (x * p1 - p0) / (x * x - 1.0))
}

fn gauss_rule() -> &'static GaussRule {
    static RULE: OnceLock<GaussRule> = OnceLock::new();
    RULE.get_or_init(|| {
        let n = GAUSS_ORDER;
        let mut nodes = [0.0; GAUSS_ORDER];
        let mut weights = [0.0; GAUSS_ORDER];
        for i in 0..n {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            for _ in 0..100 {
                let (p, dp) = legendre(n, x);
                let step = p / dp;
                x -= step;
                if step.abs() <= 1e-16 {
                    break;
                }
            }
            let (_, dp) = legendre(n, x);
            nodes[i] = x;
            weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
        }
        GaussRule { nodes, weights }
    })
}

/// One Gauss panel on `[a, b]`: integral of `f` and of `|f|`.
fn panel<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let rule = gauss_rule();
    let (mid, half) = (0.5 * (a + b), 0.5 * (b - a));
    let (mut sum, mut abs_sum) = (0.0, 0.0);
    for (x, w) in rule.nodes.iter().zip(&rule.weights) {
        let y = f(mid + half * x);
        sum += w * y;
        abs_sum += w * y.abs();
    }
    (sum * half, abs_sum * half)
}

/// A subinterval with its value from two half-panels and the disagreement with
/// the single panel over the whole subinterval.
struct Segment {
    a: f64,
    b: f64,
    left: f64,
    right: f64,
    abs: f64,
    err: f64,
}

impl Segment {
    fn new<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, whole: f64) -> Self {
        let m = 0.5 * (a + b);
        let (left, left_abs) = panel(f, a, m);
        let (right, right_abs) = panel(f, m, b);
        Self {
            a,
            b,
            left,
            right,
            abs: left_abs + right_abs,
            err: (whole - (left + right)).abs(),
        }
    }

    fn value(&self) -> f64 {
        self.left + self.right
    }
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.err.total_cmp(&other.err) == Ordering::Equal
    }
}

impl Eq for Segment {}

impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.err.total_cmp(&other.err)
    }
}

/// Adaptive Gauss–Legendre quadrature of `f` over `[a, b]`.
///
/// The subinterval with the largest error estimate is bisected until the summed
/// estimate drops below `rel_tol · |value|` (or the rounding floor of the
/// integral of `|f|`). Fails once `budget` evaluations would be exceeded.
pub fn integrate<F>(f: F, a: f64, b: f64, rel_tol: f64, budget: usize) -> Result<QuadratureResult>
where
    F: Fn(f64) -> f64,
{
    if !(a.is_finite() && b.is_finite() && a <= b) {
        return Err(Error::InvalidArgument(format!(
            "integration bounds must be finite with a <= b, got [{a}, {b}]"
        )));
    }
    if !(rel_tol > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "relative tolerance must be positive, got {rel_tol}"
        )));
    }
    if a == b {
        return Ok(QuadratureResult {
            value: 0.0,
            error_estimate: 0.0,
            evaluations: 0,
        });
    }

    let cost = 2 * GAUSS_ORDER;
    let non_convergence = |err: f64| Error::QuadratureNonConvergence {
        rel_tol,
        budget,
        error_estimate: err,
    };
    if 3 * GAUSS_ORDER > budget {
        return Err(non_convergence(f64::INFINITY));
    }

    let (whole, _) = panel(&f, a, b);
    let mut evaluations = 3 * GAUSS_ORDER;
    let mut heap = BinaryHeap::new();
    heap.push(Segment::new(&f, a, b, whole));

    loop {
        let (mut value, mut err, mut abs) = (0.0, 0.0, 0.0);
        for s in heap.iter() {
            value += s.value();
            err += s.err;
            abs += s.abs;
        }
        if !(value.is_finite() && err.is_finite()) {
            return Err(Error::InvalidArgument(
                "integrand returned a non-finite value".into(),
            ));
        }
        let target = (rel_tol * value.abs()).max(50.0 * f64::EPSILON * abs);
        if err <= target {
            return Ok(QuadratureResult {
                value,
                error_estimate: err,
                evaluations,
            });
        }
        if evaluations + 2 * cost > budget {
            return Err(non_convergence(err));
        }
        let worst = heap.pop().expect("at least one segment");
        let m = 0.5 * (worst.a + worst.b);
        if !(worst.a < m && m < worst.b) {
            // interval exhausted at binary64 resolution
            return Err(non_convergence(err));
        }
        heap.push(Segment::new(&f, worst.a, m, worst.left));
        heap.push(Segment::new(&f, m, worst.b, worst.right));
        evaluations += 2 * cost;
    }
}

fn check_step(h: f64) -> Result<()> {
    if h > 0.0 && h.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!(
            "finite-difference step must be positive, got {h}"
        )))
    }
}

/// Default step `FD_STEP · max(1, |x|)`.
pub fn default_step(x: f64) -> f64 {
    FD_STEP * x.abs().max(1.0)
}

/// Central-difference first and second derivatives of a plane curve at `t`.
pub fn fd_jet<C>(curve: C, t: f64, h: f64) -> Result<Derivative2Jet>
where
    C: Fn(f64) -> Vec2,
{
    check_step(h)?;
    let (p, c, n) = (curve(t + h), curve(t), curve(t - h));
    let first = [(p[0] - n[0]) / (2.0 * h), (p[1] - n[1]) / (2.0 * h)];
    let second = [
        (p[0] - 2.0 * c[0] + n[0]) / (h * h),
        (p[1] - 2.0 * c[1] + n[1]) / (h * h),
    ];
    Ok(Derivative2Jet { first, second })
}

/// Central-difference tangent columns of a surface map at `p`, with the cross
/// product of the numeric columns.
pub fn fd_surface_jacobian<M>(map: M, p: PlanePoint, h: f64) -> Result<JacobianColumns>
where
    M: Fn(PlanePoint) -> Result<SurfacePoint>,
{
    check_step(h)?;
    let eval = |u: f64, v: f64| -> Result<Vec3> {
        map(PlanePoint::new(u, v))
            .map(SurfacePoint::to_array)
            .map_err(|e| Error::DomainError(format!("at ({u}, {v}): {e}")))
    };
    let diff = |plus: Vec3, minus: Vec3| -> Vec3 {
        [
            (plus[0] - minus[0]) / (2.0 * h),
            (plus[1] - minus[1]) / (2.0 * h),
            (plus[2] - minus[2]) / (2.0 * h),
        ]
    };
    let d_u = diff(eval(p.u + h, p.v)?, eval(p.u - h, p.v)?);
    let d_v = diff(eval(p.u, p.v + h)?, eval(p.u, p.v - h)?);
    Ok(JacobianColumns::from_columns(d_u, d_v))
}

/// Eccentricity from the foci, after checking that the focal distance sum is
/// constant (`2 · major`) on `n` boundary samples.
pub fn foci_eccentricity(e: &SectionEllipse, n: usize) -> Result<f64> {
    if n < 8 {
        return Err(Error::InvalidSampleCount { n, min: 8 });
    }
    // orient the major axis along x
    let (major, minor) = if e.semi_y > e.semi_x {
        (e.semi_y, e.semi_x)
    } else {
        (e.semi_x, e.semi_y)
    };
    let focus = (major * major - minor * minor).abs().sqrt();
    let mut deviation: f64 = 0.0;
    for k in 0..n {
        let t = std::f64::consts::TAU * k as f64 / n as f64;
        let (x, y) = (major * t.cos(), minor * t.sin());
        let sum = (x - focus).hypot(y) + (x + focus).hypot(y);
        deviation = deviation.max((sum - 2.0 * major).abs() / (2.0 * major));
    }
    if !(deviation <= 1e-10) {
        return Err(Error::FocusCheckFailed { deviation });
    }
    Ok(focus / major)
}

/// Shoelace area of a closed polygon, positive for counter-clockwise vertices.
pub fn polygon_area(points: &[Vec2]) -> Result<f64> {
    if points.len() < 3 {
        return Err(Error::TooFewPoints(points.len()));
    }
    let twice: f64 = points
        .iter()
        .zip(points.iter().cycle().skip(1))
        .map(|(p, q)| p[0] * q[1] - q[0] * p[1])
        .sum();
    Ok(0.5 * twice)
}
