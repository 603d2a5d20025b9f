//! Command-line front end.
//!
//! Every command writes CSV (default) or JSON to standard output or `--out`.
//! Exit codes: 0 success, 1 usage or input error, 2 domain error (a point or
//! height outside a map's domain), 3 a verification check failed.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{Map, Value};

use crate::error::Error;
use crate::metrics::{
    eccentricity, ellipse_area, ellipse_curvature, ellipse_perimeter, focal_half_distance,
    DEFAULT_ARC_REL_TOL,
};
use crate::oracles::{DEFAULT_BUDGET, FD_STEP, GAUSS_ORDER};
use crate::projection::{project_to_plane, project_to_surface, POLE_THRESHOLD};
use crate::quadric::{PlanePoint, Quadric, SurfacePoint, DEFAULT_MEMBERSHIP_TOL};
use crate::section::{projected_ellipse, section_ellipse, SectionEllipse};
use crate::theorems::{
    default_remark_heights, remark_scan, verify_arclength_ratio, verify_area_ratio,
    verify_curvature_ratio, verify_eccentricity, RemarkReport, TheoremReport, ARC_LENGTH_REL_TOL,
    AREA_REL_TOL, CURVATURE_REL_TOL, DEFAULT_CURVATURE_SAMPLES, ECCENTRICITY_TOL, SHOELACE_REL_TOL,
    SHOELACE_SAMPLES,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DOMAIN: i32 = 2;
pub const EXIT_VERIFY_FAILED: i32 = 3;

const DEFAULT_SAMPLES: usize = 360;

#[derive(Debug, Parser)]
#[command(
    name = "quadric-stereo",
    version,
    about = "Stereographic projections of the ellipsoid and elliptic paraboloid"
)]
struct Cli {
    /// Print every default tolerance and sample count, then exit.
    #[arg(long, global = true)]
    show_defaults: bool,

    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Map plane points (u, v) onto the quadric.
    Project {
        #[command(flatten)]
        surface: SurfaceArgs,
        /// Plane point `u,v`; repeatable.
        #[arg(long = "point", value_name = "U,V", value_parser = parse_pair, allow_hyphen_values = true)]
        points: Vec<[f64; 2]>,
        /// CSV file of `u,v` rows, read after any `--point` values.
        #[arg(long, value_name = "PATH")]
        input: Option<PathBuf>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Map surface points (x, y, z) back to the plane.
    Invert {
        #[command(flatten)]
        surface: SurfaceArgs,
        /// Surface point `x,y,z`; repeatable.
        #[arg(long = "point", value_name = "X,Y,Z", value_parser = parse_triple, allow_hyphen_values = true)]
        points: Vec<[f64; 3]>,
        /// CSV file of `x,y,z` rows, read after any `--point` values.
        #[arg(long, value_name = "PATH")]
        input: Option<PathBuf>,
        /// Largest implicit-equation residual accepted for an input point.
        #[arg(long, default_value_t = DEFAULT_MEMBERSHIP_TOL)]
        tol: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Section ellipse at z = d and its projection, with their metrics.
    Section {
        #[command(flatten)]
        surface: SurfaceArgs,
        #[command(flatten)]
        heights: HeightArgs,
        /// Also emit this many boundary samples of both ellipses.
        #[arg(long)]
        samples: Option<usize>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Metrics of a single axis-aligned ellipse.
    Metrics {
        /// Semi-axes `A,B` along x and y.
        #[arg(long, value_name = "A,B", value_parser = parse_pair)]
        semi: [f64; 2],
        /// Curve parameter at which to report curvature; repeatable.
        #[arg(long = "t", value_name = "T", allow_negative_numbers = true)]
        angles: Vec<f64>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run the eccentricity, curvature, arc-length and area checks.
    Verify {
        #[command(flatten)]
        surface: SurfaceArgs,
        #[command(flatten)]
        heights: HeightArgs,
        /// Curve samples for the curvature check.
        #[arg(long, default_value_t = DEFAULT_CURVATURE_SAMPLES)]
        samples: usize,
        /// Override every check's tolerance (absolute for eccentricity, relative otherwise).
        #[arg(long)]
        tol: Option<f64>,
        /// Append the scan of projected curvature, length and area as d approaches c.
        #[arg(long)]
        remark: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Boundary samples of the lifted section and its projection, for plotting.
    Sample {
        #[command(flatten)]
        surface: SurfaceArgs,
        #[command(flatten)]
        heights: HeightArgs,
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        samples: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct SurfaceArgs {
    /// Ellipsoid x²/a² + y²/b² + z²/c² = 1.
    #[arg(long, value_name = "A,B,C", value_parser = parse_triple)]
    ellipsoid: Option<[f64; 3]>,
    /// Paraboloid z = c − x²/a² − y²/b².
    #[arg(long, value_name = "A,B,C", value_parser = parse_triple)]
    paraboloid: Option<[f64; 3]>,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct HeightArgs {
    /// Section height; repeatable.
    #[arg(long, allow_negative_numbers = true)]
    d: Vec<f64>,
    /// `start:stop:count`, inclusive of both ends.
    #[arg(long = "d-sweep", value_name = "START:STOP:COUNT", value_parser = parse_sweep, allow_hyphen_values = true)]
    d_sweep: Option<Sweep>,
}

/// Heights from `--d-sweep`.
#[derive(Debug, Clone)]
struct Sweep(Vec<f64>);

#[derive(Debug, Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Write to this file instead of standard output.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

fn parse_numbers<const N: usize>(s: &str) -> std::result::Result<[f64; N], String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != N {
        return Err(format!("expected {N} comma-separated numbers, got `{s}`"));
    }
    let mut out = [0.0; N];
    for (slot, part) in out.iter_mut().zip(parts) {
        let x: f64 = part
            .parse()
            .map_err(|_| format!("`{part}` is not a number"))?;
        if !x.is_finite() {
            return Err(format!("`{part}` is not finite"));
        }
        *slot = x;
    }
    Ok(out)
}

fn parse_pair(s: &str) -> std::result::Result<[f64; 2], String> {
    parse_numbers::<2>(s)
}

fn parse_triple(s: &str) -> std::result::Result<[f64; 3], String> {
    parse_numbers::<3>(s)
}

fn parse_sweep(s: &str) -> std::result::Result<Sweep, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let [start, stop, count] = parts.as_slice() else {
        return Err(format!("expected START:STOP:COUNT, got `{s}`"));
    };
    let [start, stop] = parse_numbers::<2>(&format!("{start},{stop}"))?;
    let count: usize = count
        .trim()
        .parse()
        .map_err(|_| format!("`{count}` is not a positive integer"))?;
    match count {
        0 => Err("sweep count must be at least 1".into()),
        1 => Ok(Sweep(vec![start])),
        n => Ok(Sweep(
            (0..n)
                .map(|k| start + (stop - start) * k as f64 / (n - 1) as f64)
                .collect(),
        )),
    }
}

/// Failure of a command, carrying its exit code.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NonPositiveAxis { .. }
            | Error::InvalidSampleCount { .. }
            | Error::InvalidArgument(_)
            | Error::TooFewPoints(_) => EXIT_USAGE,
            _ => EXIT_DOMAIN,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

type CmdResult<T> = std::result::Result<T, Failure>;

impl SurfaceArgs {
    fn quadric(&self) -> CmdResult<Quadric> {
        let q = match (self.ellipsoid, self.paraboloid) {
            (Some([a, b, c]), None) => Quadric::ellipsoid(a, b, c),
            (None, Some([a, b, c])) => Quadric::paraboloid(a, b, c),
            _ => {
                return Err(usage(
                    "exactly one of --ellipsoid or --paraboloid is required",
                ))
            }
        };
        Ok(q?)
    }
}

impl HeightArgs {
    fn values(&self) -> Vec<f64> {
        self.d_sweep
            .as_ref()
            .map_or_else(|| self.d.clone(), |s| s.0.clone())
    }
}

/// Shortest round-trip decimal form; exponent notation outside `[1e-5, 1e16)`.
pub fn format_number(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    let mag = x.abs();
    if mag.is_finite() && !(1e-5..1e16).contains(&mag) {
        format!("{x:e}")
    } else {
        format!("{x}")
    }
}

#[derive(Debug, Clone)]
enum Cell {
    Num(f64),
    Text(String),
    Flag(bool),
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Num(x) => format_number(*x),
            Cell::Text(s) => s.clone(),
            Cell::Flag(b) => b.to_string(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Num(x) => serde_json::Number::from_f64(*x)
                .map(Value::Number)
                .unwrap_or(Value::Null),
            Cell::Text(s) => Value::String(s.clone()),
            Cell::Flag(b) => Value::Bool(*b),
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_owned())
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}

impl From<bool> for Cell {
    fn from(b: bool) -> Self {
        Cell::Flag(b)
    }
}

/// A named, headered block of rows.
struct Table {
    name: &'static str,
    header: Vec<&'static str>,
    rows: Vec<Vec<Cell>>,
}

impl Table {
    fn new(name: &'static str, header: &[&'static str]) -> Self {
        Self {
            name,
            header: header.to_vec(),
            rows: Vec::new(),
        }
    }

    fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    fn write_csv(&self, out: &mut String) {
        out.push_str(&self.header.join(","));
        out.push('\n');
        for row in &self.rows {
            let fields: Vec<String> = row.iter().map(Cell::csv).collect();
            out.push_str(&fields.join(","));
            out.push('\n');
        }
    }

    fn to_json(&self) -> Value {
        Value::Array(
            self.rows
                .iter()
                .map(|row| {
                    let obj: Map<String, Value> = self
                        .header
                        .iter()
                        .zip(row)
                        .map(|(k, v)| ((*k).to_owned(), v.json()))
                        .collect();
                    Value::Object(obj)
                })
                .collect(),
        )
    }
}

fn render_tables(tables: &[Table], format: Format) -> String {
    match format {
        Format::Csv => {
            let mut out = String::new();
            for (i, t) in tables.iter().enumerate() {
                if i > 0 {
                    out.push('\n');
                }
                t.write_csv(&mut out);
            }
            out
        }
        Format::Json => {
            let doc: Map<String, Value> = tables
                .iter()
                .map(|t| (t.name.to_owned(), t.to_json()))
                .collect();
            json_document(&Value::Object(doc))
        }
    }
}

fn json_document<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report values serialize");
    s.push('\n');
    s
}

fn read_rows<const N: usize>(path: &Path) -> CmdResult<Vec<[f64; N]>> {
    let text = fs::read_to_string(path)
        .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    let mut rows = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        match parse_numbers::<N>(line) {
            Ok(r) => rows.push(r),
            // a non-numeric first line is a header
            Err(_)
                if i == 0
                    && !line.starts_with(|c: char| c.is_ascii_digit() || c == '-' || c == '.') => {}
            Err(e) => return Err(usage(format!("{}:{}: {e}", path.display(), i + 1))),
        }
    }
    Ok(rows)
}

fn collect_points<const N: usize>(
    inline: &[[f64; N]],
    input: &Option<PathBuf>,
) -> CmdResult<Vec<[f64; N]>> {
    let mut points = inline.to_vec();
    if let Some(path) = input {
        points.extend(read_rows::<N>(path)?);
    }
    if points.is_empty() {
        return Err(usage("no points given; use --point or --input"));
    }
    Ok(points)
}

fn cmd_project(q: &Quadric, points: &[[f64; 2]], format: Format) -> CmdResult<String> {
    let mut t = Table::new("points", &["u", "v", "x", "y", "z"]);
    for &[u, v] in points {
        let p = project_to_surface(q, PlanePoint::new(u, v))?;
        t.push(vec![u.into(), v.into(), p.x.into(), p.y.into(), p.z.into()]);
    }
    Ok(render_tables(&[t], format))
}

fn cmd_invert(q: &Quadric, points: &[[f64; 3]], tol: f64, format: Format) -> CmdResult<String> {
    if !(tol >= 0.0) {
        return Err(usage(format!("--tol must be non-negative, got {tol}")));
    }
    let mut t = Table::new("points", &["x", "y", "z", "u", "v"]);
    for &[x, y, z] in points {
        let uv = project_to_plane(q, SurfacePoint::new(x, y, z), tol)?;
        t.push(vec![x.into(), y.into(), z.into(), uv.u.into(), uv.v.into()]);
    }
    Ok(render_tables(&[t], format))
}

fn sample_table(q: &Quadric, heights: &[f64], n: usize) -> CmdResult<Table> {
    let mut t = Table::new("samples", &["curve", "d", "t", "x", "y", "z"]);
    for &d in heights {
        let section = section_ellipse(q, d)?;
        let samples = section.sample(n)?;
        for &(angle, p) in &samples {
            t.push(vec![
                "section".into(),
                d.into(),
                angle.into(),
                p.u.into(),
                p.v.into(),
                d.into(),
            ]);
        }
        for &(angle, p) in &samples {
            let uv = project_to_plane(q, SurfacePoint::new(p.u, p.v, d), DEFAULT_MEMBERSHIP_TOL)?;
            t.push(vec![
                "projection".into(),
                d.into(),
                angle.into(),
                uv.u.into(),
                uv.v.into(),
                0.0.into(),
            ]);
        }
    }
    Ok(t)
}

fn cmd_section(
    q: &Quadric,
    heights: &[f64],
    samples: Option<usize>,
    format: Format,
) -> CmdResult<String> {
    let mut t = Table::new(
        "sections",
        &[
            "kind",
            "a",
            "b",
            "c",
            "d",
            "A",
            "B",
            "A0",
            "B0",
            "eccentricity",
            "eccentricity0",
            "area",
            "area0",
            "perimeter",
            "perimeter0",
        ],
    );
    for &d in heights {
        let s = section_ellipse(q, d)?;
        let p = projected_ellipse(q, d)?;
        t.push(vec![
            q.kind.to_string().into(),
            q.a.into(),
            q.b.into(),
            q.c.into(),
            d.into(),
            s.semi_x.into(),
            s.semi_y.into(),
            p.semi_x.into(),
            p.semi_y.into(),
            eccentricity(&s).into(),
            eccentricity(&p).into(),
            ellipse_area(&s).into(),
            ellipse_area(&p).into(),
            ellipse_perimeter(&s, DEFAULT_ARC_REL_TOL)?.into(),
            ellipse_perimeter(&p, DEFAULT_ARC_REL_TOL)?.into(),
        ]);
    }
    let mut tables = vec![t];
    if let Some(n) = samples {
        tables.push(sample_table(q, heights, n)?);
    }
    Ok(render_tables(&tables, format))
}

fn cmd_metrics(semi: [f64; 2], angles: &[f64], format: Format) -> CmdResult<String> {
    let [a, b] = semi;
    if !(a > 0.0 && b > 0.0) {
        return Err(usage(format!("semi-axes must be positive, got {a},{b}")));
    }
    let e = SectionEllipse::new(a, b, 0.0);
    let mut m = Table::new(
        "metrics",
        &[
            "semi_x",
            "semi_y",
            "focal_half_distance",
            "eccentricity",
            "area",
            "perimeter",
        ],
    );
    m.push(vec![
        a.into(),
        b.into(),
        focal_half_distance(&e).into(),
        eccentricity(&e).into(),
        ellipse_area(&e).into(),
        ellipse_perimeter(&e, DEFAULT_ARC_REL_TOL)?.into(),
    ]);
    let mut tables = vec![m];
    if !angles.is_empty() {
        let mut k = Table::new("curvature", &["t", "curvature"]);
        for &t in angles {
            k.push(vec![t.into(), ellipse_curvature(&e, t.into()).into()]);
        }
        tables.push(k);
    }
    Ok(render_tables(&tables, format))
}

fn report_row(r: &TheoremReport) -> Vec<Cell> {
    vec![
        r.theorem_id.to_string().into(),
        r.quadric.kind.to_string().into(),
        r.quadric.a.into(),
        r.quadric.b.into(),
        r.quadric.c.into(),
        r.d.into(),
        r.lhs.headline().into(),
        r.rhs.headline().into(),
        r.expected_ratio.into(),
        r.max_abs_error.into(),
        r.tolerance.into(),
        r.pass.into(),
    ]
}

fn remark_tables(r: &RemarkReport) -> [Table; 2] {
    let mut trend = Table::new("remark", &["d", "curvature0", "length0", "area0"]);
    for i in 0..r.d_values.len() {
        trend.push(vec![
            r.d_values[i].into(),
            r.curvature_trend[i].into(),
            r.length_trend[i].into(),
            r.area_trend[i].into(),
        ]);
    }
    let mut flags = Table::new(
        "remark_flags",
        &[
            "curvature_decreasing",
            "length_increasing",
            "area_increasing",
            "final_curvature_ratio",
            "final_area_ratio",
            "pass",
        ],
    );
    let f = r.monotone_flags;
    flags.push(vec![
        f.curvature_decreasing.into(),
        f.length_increasing.into(),
        f.area_increasing.into(),
        r.final_curvature_ratio.into(),
        r.final_area_ratio.into(),
        r.pass.into(),
    ]);
    [trend, flags]
}

#[derive(Serialize)]
struct VerifyDocument<'a> {
    reports: &'a [TheoremReport],
    #[serde(skip_serializing_if = "Option::is_none")]
    remark: Option<&'a RemarkReport>,
}

fn cmd_verify(
    q: &Quadric,
    heights: &[f64],
    samples: usize,
    tol: Option<f64>,
    remark: bool,
    format: Format,
) -> CmdResult<(String, bool)> {
    if let Some(t) = tol {
        if !(t > 0.0) {
            return Err(usage(format!("--tol must be positive, got {t}")));
        }
    }
    let mut reports = Vec::with_capacity(4 * heights.len());
    for &d in heights {
        reports.push(verify_eccentricity(q, d, tol.unwrap_or(ECCENTRICITY_TOL))?);
        reports.push(verify_curvature_ratio(
            q,
            d,
            samples,
            tol.unwrap_or(CURVATURE_REL_TOL),
        )?);
        reports.push(verify_arclength_ratio(
            q,
            d,
            tol.unwrap_or(ARC_LENGTH_REL_TOL),
        )?);
        reports.push(verify_area_ratio(q, d, tol.unwrap_or(AREA_REL_TOL))?);
    }
    let remark = if remark {
        Some(remark_scan(q, &default_remark_heights(q))?)
    } else {
        None
    };
    let all_pass = reports.iter().all(|r| r.pass) && remark.as_ref().is_none_or(|r| r.pass);
    let text = match format {
        Format::Json => json_document(&VerifyDocument {
            reports: &reports,
            remark: remark.as_ref(),
        }),
        Format::Csv => {
            let mut t = Table::new(
                "reports",
                &[
                    "theorem_id",
                    "kind",
                    "a",
                    "b",
                    "c",
                    "d",
                    "lhs",
                    "rhs",
                    "expected_ratio",
                    "max_abs_error",
                    "tolerance",
                    "pass",
                ],
            );
            for r in &reports {
                t.push(report_row(r));
            }
            let mut tables = vec![t];
            if let Some(r) = &remark {
                tables.extend(remark_tables(r));
            }
            render_tables(&tables, Format::Csv)
        }
    };
    Ok((text, all_pass))
}

fn cmd_sample(q: &Quadric, heights: &[f64], n: usize, format: Format) -> CmdResult<String> {
    if n < 3 {
        return Err(Error::InvalidSampleCount { n, min: 3 }.into());
    }
    let mut t = sample_table(q, heights, n)?;
    // single-height output keeps the plain curve,t,x,y,z layout
    if heights.len() == 1 {
        t.header.remove(1);
        for row in &mut t.rows {
            row.remove(1);
        }
    }
    Ok(render_tables(&[t], format))
}

fn defaults_text(format: Format) -> String {
    let mut t = Table::new("defaults", &["name", "value"]);
    let entries: [(&str, f64); 13] = [
        ("membership_tol", DEFAULT_MEMBERSHIP_TOL),
        ("pole_threshold_rel", POLE_THRESHOLD),
        ("gauss_order", GAUSS_ORDER as f64),
        ("quadrature_budget", DEFAULT_BUDGET as f64),
        ("arc_length_quadrature_rel_tol", DEFAULT_ARC_REL_TOL),
        ("fd_step_rel", FD_STEP),
        ("eccentricity_tol_abs", ECCENTRICITY_TOL),
        ("curvature_tol_rel", CURVATURE_REL_TOL),
        ("curvature_samples", DEFAULT_CURVATURE_SAMPLES as f64),
        ("arc_length_tol_rel", ARC_LENGTH_REL_TOL),
        ("area_tol_rel", AREA_REL_TOL),
        ("shoelace_samples", SHOELACE_SAMPLES as f64),
        ("shoelace_tol_rel", SHOELACE_REL_TOL),
    ];
    for (name, value) in entries {
        t.push(vec![name.into(), value.into()]);
    }
    t.push(vec![
        "curve_samples".into(),
        (DEFAULT_SAMPLES as f64).into(),
    ]);
    render_tables(&[t], format)
}

fn emit(text: &str, out: &Option<PathBuf>, stdout: &mut dyn Write) -> CmdResult<()> {
    match out {
        Some(path) => fs::write(path, text)
            .map_err(|e| usage(format!("cannot write {}: {e}", path.display()))),
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|e| usage(format!("cannot write output: {e}"))),
    }
}

fn dispatch(command: Command, stdout: &mut dyn Write) -> CmdResult<i32> {
    let mut code = EXIT_OK;
    let (text, out) = match command {
        Command::Project {
            surface,
            points,
            input,
            output,
        } => {
            let q = surface.quadric()?;
            let pts = collect_points(&points, &input)?;
            (cmd_project(&q, &pts, output.format)?, output.out)
        }
        Command::Invert {
            surface,
            points,
            input,
            tol,
            output,
        } => {
            let q = surface.quadric()?;
            let pts = collect_points(&points, &input)?;
            (cmd_invert(&q, &pts, tol, output.format)?, output.out)
        }
        Command::Section {
            surface,
            heights,
            samples,
            output,
        } => {
            let q = surface.quadric()?;
            (
                cmd_section(&q, &heights.values(), samples, output.format)?,
                output.out,
            )
        }
        Command::Metrics {
            semi,
            angles,
            output,
        } => (cmd_metrics(semi, &angles, output.format)?, output.out),
        Command::Verify {
            surface,
            heights,
            samples,
            tol,
            remark,
            output,
        } => {
            let q = surface.quadric()?;
            let (text, pass) =
                cmd_verify(&q, &heights.values(), samples, tol, remark, output.format)?;
            if !pass {
                code = EXIT_VERIFY_FAILED;
            }
            (text, output.out)
        }
        Command::Sample {
            surface,
            heights,
            samples,
            output,
        } => {
            let q = surface.quadric()?;
            (
                cmd_sample(&q, &heights.values(), samples, output.format)?,
                output.out,
            )
        }
    };
    emit(&text, &out, stdout)?;
    Ok(code)
}

/// Parses `args` (including the program name) and runs one command.
/// Returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(rendered.as_bytes())
            } else {
                stdout.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    if cli.show_defaults {
        let format = match &cli.command {
            Some(
                Command::Project { output, .. }
                | Command::Invert { output, .. }
                | Command::Section { output, .. }
                | Command::Metrics { output, .. }
                | Command::Verify { output, .. }
                | Command::Sample { output, .. },
            ) => output.format,
            None => Format::Csv,
        };
        let _ = stdout.write_all(defaults_text(format).as_bytes());
        return EXIT_OK;
    }
    let Some(command) = cli.command else {
        let _ = writeln!(stderr, "error: a subcommand is required (try --help)");
        return EXIT_USAGE;
    };
    match dispatch(command, stdout) {
        Ok(code) => code,
        Err(f) => {
            let mut msg = String::new();
            let _ = write!(msg, "error: {}", f.message);
            let _ = writeln!(stderr, "{msg}");
            f.code
        }
    }
}
