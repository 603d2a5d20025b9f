//! Minimal fixed-size vector helpers.

pub type Vec2 = [f64; 2];
pub type Vec3 = [f64; 3];

pub fn cross(p: Vec3, q: Vec3) -> Vec3 {
    [
        p[1] * q[2] - p[2] * q[1],
        p[2] * q[0] - p[0] * q[2],
        p[0] * q[1] - p[1] * q[0],
    ]
}

pub fn norm3(p: Vec3) -> f64 {
    p[0].hypot(p[1]).hypot(p[2])
}

pub fn sub3(p: Vec3, q: Vec3) -> Vec3 {
    [p[0] - q[0], p[1] - q[1], p[2] - q[2]]
}

/// `‖p − q‖ / ‖q‖`, or the absolute distance when `q` is the zero vector.
pub fn rel_dist3(p: Vec3, q: Vec3) -> f64 {
    let d = norm3(sub3(p, q));
    let scale = norm3(q);
    if scale > 0.0 {
        d / scale
    } else {
        d
    }
}

pub fn rel_dist2(p: Vec2, q: Vec2) -> f64 {
    let d = (p[0] - q[0]).hypot(p[1] - q[1]);
    let scale = q[0].hypot(q[1]);
    if scale > 0.0 {
        d / scale
    } else {
        d
    }
}
