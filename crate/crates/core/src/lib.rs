//! Stereographic projections of the ellipsoid and the elliptic paraboloid from
//! their pole `(0, 0, c)` onto the plane `z = 0`, and numeric verification of how
//! the projection acts on horizontal section ellipses.
//!
//! The projection sends the ellipse cut by the plane `z = d` to a centred ellipse
//! in `z = 0` whose semi-axes are scaled by `λ = c / (c − d)`. Consequently
//! eccentricity is preserved, curvature scales by `1/λ`, arc length by `λ` and
//! area by `λ²`. The [`theorems`] module checks each of these numerically.
//!
//! ```
//! use quadric_stereo::{projection, Quadric, PlanePoint};
//!
//! let q = Quadric::ellipsoid(2.0, 1.0, 2.0).unwrap();
//! let p = projection::project_to_surface(&q, PlanePoint::new(2.0, 0.0)).unwrap();
//! assert_eq!((p.x, p.y, p.z), (2.0, 0.0, 0.0));
//! ```

// `!(x > 0.0)` guards also reject NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod error;
pub mod metrics;
pub mod oracles;
pub mod projection;
pub mod quadric;
pub mod section;
pub mod theorems;
pub mod vector;

pub use error::{Error, Result};
pub use quadric::{PlanePoint, Quadric, QuadricKind, SurfacePoint};
pub use section::{CurveAngle, SectionEllipse};
