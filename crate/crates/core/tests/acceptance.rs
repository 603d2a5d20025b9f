//! Acceptance gate: one PASS/FAIL line per criterion, non-zero exit on any failure.

use std::f64::consts::TAU;
use std::process::Command;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use quadric_stereo::error::Error;
use quadric_stereo::metrics::{ellipse_perimeter, DEFAULT_ARC_REL_TOL};
use quadric_stereo::oracles::fd_surface_jacobian;
use quadric_stereo::projection::{jacobian_columns, project_to_plane, project_to_surface};
use quadric_stereo::section::{projected_ellipse, section_ellipse};
use quadric_stereo::theorems::{
    default_remark_heights, remark_scan, scaling_deviation, verify_arclength_ratio,
    verify_area_ratio_with, verify_curvature_ratio, verify_eccentricity, ARC_LENGTH_REL_TOL,
    AREA_REL_TOL, CURVATURE_REL_TOL, DEFAULT_CURVATURE_SAMPLES, ECCENTRICITY_TOL, SHOELACE_SAMPLES,
};
use quadric_stereo::vector::{rel_dist2, rel_dist3};
use quadric_stereo::{PlanePoint, Quadric, QuadricKind, SectionEllipse, SurfacePoint};

const SEED: u64 = 0x5eed_0001;
const N_QUADRICS: usize = 50;
const N_HEIGHTS: usize = 20;
const GRID: usize = 41;

fn log_uniform(rng: &mut ChaCha8Rng) -> f64 {
    10f64.powf(rng.gen_range(-1.0..=1.0))
}

fn random_family(rng: &mut ChaCha8Rng, kind: QuadricKind) -> Vec<Quadric> {
    (0..N_QUADRICS)
        .map(|_| {
            let (a, b, c) = (log_uniform(rng), log_uniform(rng), log_uniform(rng));
            match kind {
                QuadricKind::Ellipsoid => Quadric::ellipsoid(a, b, c),
                QuadricKind::EllipticParaboloid => Quadric::paraboloid(a, b, c),
            }
            .unwrap()
        })
        .collect()
}

fn random_heights(rng: &mut ChaCha8Rng, q: &Quadric) -> Vec<f64> {
    (0..N_HEIGHTS)
        .map(|_| match q.kind {
            QuadricKind::Ellipsoid => q.c * rng.gen_range(-0.95..0.95),
            QuadricKind::EllipticParaboloid => q.c * (1.0 - rng.gen_range(0.05..3.0)),
        })
        .collect()
}

fn grid(kind: QuadricKind) -> Vec<PlanePoint> {
    let step = 20.0 / (GRID - 1) as f64;
    let mut pts = Vec::with_capacity(GRID * GRID);
    for i in 0..GRID {
        for j in 0..GRID {
            let p = PlanePoint::new(-10.0 + step * i as f64, -10.0 + step * j as f64);
            if kind == QuadricKind::EllipticParaboloid && p.is_origin() {
                continue;
            }
            pts.push(p);
        }
    }
    pts
}

struct Family {
    ellipsoids: Vec<Quadric>,
    paraboloids: Vec<Quadric>,
    heights: Vec<Vec<f64>>,
    radii: Vec<f64>,
}

impl Family {
    fn new() -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(SEED);
        let ellipsoids = random_family(&mut rng, QuadricKind::Ellipsoid);
        let paraboloids = random_family(&mut rng, QuadricKind::EllipticParaboloid);
        let heights = ellipsoids
            .iter()
            .chain(&paraboloids)
            .map(|q| random_heights(&mut rng, q))
            .collect();
        let radii = (0..20).map(|_| log_uniform(&mut rng)).collect();
        Self {
            ellipsoids,
            paraboloids,
            heights,
            radii,
        }
    }

    fn quadrics(&self) -> impl Iterator<Item = &Quadric> {
        self.ellipsoids.iter().chain(&self.paraboloids)
    }

    fn sweep(&self) -> impl Iterator<Item = (&Quadric, f64)> {
        self.quadrics()
            .zip(&self.heights)
            .flat_map(|(q, ds)| ds.iter().map(move |&d| (q, d)))
    }
}

type Check = fn(&Family) -> Outcome;

/// Outcome of one criterion: worst observed value against its threshold.
struct Outcome {
    pass: bool,
    detail: String,
}

fn within(label: &str, worst: f64, tol: f64) -> Outcome {
    Outcome {
        pass: worst <= tol,
        detail: format!("{label} {worst:.3e} (tol {tol:.0e})"),
    }
}

fn all(parts: Vec<Outcome>) -> Outcome {
    Outcome {
        pass: parts.iter().all(|o| o.pass),
        detail: parts
            .iter()
            .map(|o| o.detail.as_str())
            .collect::<Vec<_>>()
            .join("; "),
    }
}

fn round_trip(f: &Family) -> Outcome {
    let mut worst = 0.0f64;
    for q in f.quadrics() {
        for p in grid(q.kind) {
            let back = project_to_surface(q, p)
                .and_then(|s| project_to_plane(q, s, f64::INFINITY))
                .map(|b| rel_dist2([b.u, b.v], [p.u, p.v]))
                .unwrap_or(f64::INFINITY);
            worst = worst.max(back);
        }
    }
    within("max rel error", worst, 1e-12)
}

fn membership(f: &Family) -> Outcome {
    let (mut worst_e, mut worst_p, mut worst_rel_p, mut max_z) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for q in f.quadrics() {
        for p in grid(q.kind) {
            let s = project_to_surface(q, p).unwrap();
            let r = q.implicit_residual(s).abs();
            match q.kind {
                QuadricKind::Ellipsoid => worst_e = worst_e.max(r),
                QuadricKind::EllipticParaboloid => {
                    worst_p = worst_p.max(r);
                    worst_rel_p = worst_rel_p.max(r / s.z.abs().max(q.c));
                    max_z = max_z.max(s.z.abs());
                }
            }
        }
    }
    let mut o = all(vec![
        within("ellipsoid max |residual|", worst_e, 1e-12),
        within("paraboloid max |residual|", worst_p, 1e-12),
    ]);
    // rounding z alone leaves a residual of up to eps·|z|/2
    o.detail.push_str(&format!(
        "; paraboloid max |z| {max_z:.3e}, max |residual|/max(|z|, c) {worst_rel_p:.3e}"
    ));
    o
}

fn sphere_reduction(f: &Family) -> Outcome {
    let mut worst = 0.0f64;
    for &r in &f.radii {
        let q = Quadric::sphere(r).unwrap();
        for p in grid(QuadricKind::Ellipsoid) {
            let (u, v) = (p.u, p.v);
            let den = r * r + u * u + v * v;
            let expected = [
                2.0 * r * r * u / den,
                2.0 * r * r * v / den,
                r * (u * u + v * v - r * r) / den,
            ];
            let got = project_to_surface(&q, p).unwrap().to_array();
            worst = worst.max(rel_dist3(got, expected));
        }
    }
    within("max rel error", worst, 1e-14)
}

fn fd_error(q: &Quadric, p: PlanePoint, h: f64) -> f64 {
    let jc = jacobian_columns(q, p).unwrap();
    let num = fd_surface_jacobian(|x| project_to_surface(q, x), p, h).unwrap();
    (0..3)
        .map(|k| {
            (jc.d_u[k] - num.d_u[k])
                .abs()
                .max((jc.d_v[k] - num.d_v[k]).abs())
        })
        .fold(0.0, f64::max)
}

fn jacobian(f: &Family) -> Outcome {
    let (mut ell_fd, mut par_fd) = (0.0f64, (0.0f64, None));
    let (mut ell_cross, mut par_cross) = (0.0f64, 0.0f64);
    let mut par_negative = true;
    for q in f.quadrics() {
        let (a2, b2, c) = (q.a * q.a, q.b * q.b, q.c);
        for p in grid(q.kind) {
            let jc = jacobian_columns(q, p).unwrap();
            let fd = fd_error(q, p, 1e-5);
            let (u, v) = (p.u, p.v);
            match q.kind {
                QuadricKind::Ellipsoid => {
                    let d = b2 * u * u + a2 * v * v + a2 * b2;
                    let k = 4.0 * a2 * a2 * b2 * b2 / (d * d * d);
                    let expected = [
                        k * (-2.0 * b2 * u * c),
                        k * (-2.0 * a2 * v * c),
                        k * (a2 * b2 - b2 * u * u - a2 * v * v),
                    ];
                    ell_cross = ell_cross.max(rel_dist3(jc.cross, expected));
                    ell_fd = ell_fd.max(fd);
                }
                QuadricKind::EllipticParaboloid => {
                    let m = b2 * u * u + a2 * v * v;
                    let expected = -a2 * a2 * b2 * b2 * c * c / (m * m);
                    par_cross = par_cross.max(((jc.cross[2] - expected) / expected).abs());
                    par_negative &= jc.cross[2] < 0.0;
                    if fd > par_fd.0 {
                        par_fd = (fd, Some((*q, p)));
                    }
                }
            }
        }
    }
    let mut parts = vec![
        within("ellipsoid fd columns max abs", ell_fd, 1e-6),
        within("paraboloid fd columns max abs", par_fd.0, 1e-6),
        within("ellipsoid cross rel", ell_cross, 1e-12),
        within("paraboloid cross.z rel", par_cross, 1e-12),
    ];
    parts.push(Outcome {
        pass: par_negative,
        detail: format!("paraboloid cross.z < 0: {par_negative}"),
    });
    let mut o = all(parts);
    // diagnostic only: an O(h²) error ratio at the worst point separates truncation from a wrong formula
    if let (false, Some((q, p))) = (o.pass, par_fd.1) {
        let ratio = fd_error(&q, p, 1e-5) / fd_error(&q, p, 1e-6);
        o.detail.push_str(&format!(
            "; worst at {q} ({}, {}), error ratio h=1e-5 vs 1e-6: {ratio:.1}",
            p.u, p.v
        ));
    }
    o
}

fn eccentricity(f: &Family) -> Outcome {
    let mut worst = 0.0f64;
    let mut ok = true;
    for (q, d) in f.sweep() {
        let r = verify_eccentricity(q, d, ECCENTRICITY_TOL).unwrap();
        ok &= r.pass;
        let (big, small) = (q.a.max(q.b), q.a.min(q.b));
        let literal = (big * big - small * small).sqrt() / big;
        let (lhs, rhs) = (r.lhs.headline(), r.rhs.headline());
        worst = worst
            .max((lhs - rhs).abs())
            .max((lhs - literal).abs())
            .max((rhs - literal).abs());
    }
    let mut o = within("max |Δe|", worst, ECCENTRICITY_TOL);
    o.pass &= ok;
    o
}

fn curvature(f: &Family) -> Outcome {
    let mut worst = 0.0f64;
    let mut ok = true;
    for (q, d) in f.sweep() {
        let r = verify_curvature_ratio(q, d, DEFAULT_CURVATURE_SAMPLES, CURVATURE_REL_TOL).unwrap();
        ok &= r.pass;
        worst = worst.max(r.max_abs_error / r.lhs.headline());
    }
    let mut o = within("max err / max k0", worst, CURVATURE_REL_TOL);
    o.pass &= ok;
    o
}

fn arc_length(f: &Family) -> Outcome {
    let mut worst = 0.0f64;
    let mut ok = true;
    for (q, d) in f.sweep() {
        let r = verify_arclength_ratio(q, d, ARC_LENGTH_REL_TOL).unwrap();
        ok &= r.pass;
        worst = worst.max(r.max_abs_error);
    }
    // independent composite midpoint rule on 10⁶ panels
    let n = 1_000_000;
    let h = TAU / n as f64;
    let oracle: f64 = (0..n)
        .map(|k| {
            let t = (k as f64 + 0.5) * h;
            (4.0 * t.sin().powi(2) + t.cos().powi(2)).sqrt()
        })
        .sum::<f64>()
        * h;
    let fixture =
        ellipse_perimeter(&SectionEllipse::new(2.0, 1.0, 0.0), DEFAULT_ARC_REL_TOL).unwrap();
    let mut ratio = within("max rel ratio error", worst, ARC_LENGTH_REL_TOL);
    ratio.pass &= ok;
    all(vec![
        ratio,
        within(
            "fixture (2,1) vs 9.688448220547675",
            (fixture - 9.688448220547675).abs(),
            1e-9,
        ),
        within(
            "fixture vs composite oracle",
            (fixture - oracle).abs(),
            1e-9,
        ),
    ])
}

fn area(f: &Family) -> Outcome {
    let (mut worst, mut worst_shoelace) = (0.0f64, 0.0f64);
    let mut ok = true;
    for (qi, (q, ds)) in f.quadrics().zip(&f.heights).enumerate() {
        for (di, &d) in ds.iter().enumerate() {
            // the 10⁵-gon cross-check runs on a stride of the sweep
            let shoelace = ((qi + di) % 10 == 0).then_some(SHOELACE_SAMPLES);
            let r = verify_area_ratio_with(q, d, AREA_REL_TOL, shoelace).unwrap();
            ok &= r.pass;
            worst = worst.max(r.max_abs_error);
            if let Some(cc) = &r.cross_check {
                worst_shoelace = worst_shoelace.max(cc.max_rel_error);
            }
        }
    }
    let mut closed = within("closed-form rel", worst, AREA_REL_TOL);
    closed.pass &= ok;
    all(vec![closed, within("shoelace rel", worst_shoelace, 1e-8)])
}

fn scaling(f: &Family) -> Outcome {
    let mut worst = 0.0f64;
    for (q, d) in f.sweep() {
        worst = worst.max(scaling_deviation(q, d).unwrap());
    }
    // a λ-scaling defect of 1e-9 must surface in the area check
    let q = Quadric::ellipsoid(2.0, 1.0, 2.0).unwrap();
    let (s, p) = (
        section_ellipse(&q, 1.0).unwrap(),
        projected_ellipse(&q, 1.0).unwrap(),
    );
    let skewed = p.semi_x * (1.0 + 1e-9) * p.semi_y / (s.semi_x * s.semi_y);
    let lambda = q.c / (q.c - 1.0);
    let detected = ((skewed - lambda * lambda) / (lambda * lambda)).abs() > AREA_REL_TOL;
    let mut o = within("max rel deviation", worst, 1e-12);
    o.pass &= detected;
    o.detail
        .push_str(&format!("; injected defect detected: {detected}"));
    o
}

fn remark(f: &Family) -> Outcome {
    let mut ok = true;
    let mut min_area_ratio = f64::INFINITY;
    let fixture = Quadric::ellipsoid(2.0, 1.0, 2.0).unwrap();
    for q in std::iter::once(&fixture).chain(f.quadrics()) {
        let r = remark_scan(q, &default_remark_heights(q)).unwrap();
        ok &= r.monotone_flags.all();
        min_area_ratio = min_area_ratio.min(r.final_area_ratio);
    }
    Outcome {
        pass: ok && min_area_ratio >= 1e5,
        detail: format!("monotone: {ok}; min area ratio at 0.999c {min_area_ratio:.6e} (min 1e5)"),
    }
}

fn degenerate(_: &Family) -> Outcome {
    let e = Quadric::ellipsoid(2.0, 1.0, 2.0).unwrap();
    let p = Quadric::paraboloid(2.0, 1.0, 2.0).unwrap();
    let checks = [
        (
            "ellipsoid d=c",
            matches!(
                section_ellipse(&e, 2.0),
                Err(Error::DegenerateSection { .. })
            ),
        ),
        (
            "ellipsoid d=-c",
            matches!(
                section_ellipse(&e, -2.0),
                Err(Error::DegenerateSection { .. })
            ),
        ),
        (
            "ellipsoid projected d=c",
            matches!(
                projected_ellipse(&e, 2.0),
                Err(Error::DegenerateSection { .. })
            ),
        ),
        (
            "paraboloid d=c",
            matches!(
                section_ellipse(&p, 2.0),
                Err(Error::DegenerateSection { .. })
            ),
        ),
        (
            "paraboloid origin",
            project_to_surface(&p, PlanePoint::new(0.0, 0.0))
                == Err(Error::ParaboloidOriginUndefined),
        ),
        (
            "ellipsoid pole",
            matches!(
                project_to_plane(&e, SurfacePoint::new(0.0, 0.0, 2.0), 1e-9),
                Err(Error::PoleNotProjectable { .. })
            ),
        ),
        (
            "paraboloid pole",
            matches!(
                project_to_plane(&p, SurfacePoint::new(0.0, 0.0, 2.0), 1e-9),
                Err(Error::PoleNotProjectable { .. })
            ),
        ),
        (
            "theorem at d=c",
            matches!(
                verify_eccentricity(&e, 2.0, 1e-12),
                Err(Error::DegenerateSection { .. })
            ),
        ),
    ];
    let failed: Vec<&str> = checks
        .iter()
        .filter(|(_, ok)| !ok)
        .map(|(n, _)| *n)
        .collect();
    Outcome {
        pass: failed.is_empty(),
        detail: if failed.is_empty() {
            format!("{} designated errors raised", checks.len())
        } else {
            format!("wrong outcome: {}", failed.join(", "))
        },
    }
}

fn cli_determinism(_: &Family) -> Outcome {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_quadric-stereo"))
            .args(["verify", "--ellipsoid", "2,1,2", "--d", "1"])
            .output()
            .expect("binary runs")
    };
    let (first, second) = (run(), run());
    let same = first.stdout == second.stdout && !first.stdout.is_empty();
    let codes = (first.status.code(), second.status.code());
    Outcome {
        pass: same && codes == (Some(0), Some(0)),
        detail: format!("byte-identical: {same}; exit codes {codes:?}"),
    }
}

fn main() {
    let start = Instant::now();
    let family = Family::new();
    let criteria: [(&str, Check); 12] = [
        ("round-trip identity", round_trip),
        ("surface membership", membership),
        ("sphere reduction", sphere_reduction),
        ("jacobian correctness", jacobian),
        ("eccentricity preservation", eccentricity),
        ("curvature ratio", curvature),
        ("arc-length ratio", arc_length),
        ("area ratio", area),
        ("lambda scaling", scaling),
        ("remark behavior", remark),
        ("degenerate paths", degenerate),
        ("cli determinism", cli_determinism),
    ];
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let o = check(&family);
        if !o.pass {
            failures += 1;
        }
        println!(
            "{} criterion {:>2} {name}: {} [{:.2}s]",
            if o.pass { "PASS" } else { "FAIL" },
            i + 1,
            o.detail,
            t.elapsed().as_secs_f64()
        );
    }
    println!(
        "{} of {} criteria passed in {:.2}s",
        criteria.len() - failures,
        criteria.len(),
        start.elapsed().as_secs_f64()
    );
    if failures > 0 {
        std::process::exit(1);
    }
}
