//! Command-line surface for the hqgeo kernel. Every subcommand prints to
//! stdout by default and writes machine-readable artifacts (CSV or JSON)
//! with `--out`; writes go through a temp file and rename so a crash never
//! leaves a half-written artifact. Exit codes: 0 success, 1 domain errors
//! (characteristic points, solver failures) or failed verify checks, 2
//! flag errors.

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use hqgeo::frame::theta;
use hqgeo::surface::{
    profile_point, CcSphereProfile, EuclideanProfile, KoranyiProfile, ParaboloidProfile,
};
use hqgeo::verify;
use hqgeo::{
    cc_distance, cc_sphere_sample, curvature_report, dilate, gauge_distance, solve_cc_bvp,
    solve_gl_bvp, ImplicitSurface, MetricParams, Mode, Point, SampledCurve, Suite,
};

const SCHEMA: &str = "hqgeo/1";
const DEFAULT_SEED: u64 = 42;

#[derive(Parser)]
#[command(
    name = "hqgeo",
    version,
    about = "Distances, geodesics, curvature and horizontal mean curvature \
             on the 7-dimensional quaternionic Heisenberg group",
    after_help = "Points are 7 comma-separated reals x1,x2,x3,x4,t1,t2,t3. \
                  Relative --out paths resolve against $HQGEO_OUT_DIR when set."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Metric {
    Cc,
    Koranyi,
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SphereMetric {
    Cc,
    Koranyi,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Distance between two points
    Dist {
        /// Start point (7 reals)
        #[arg(long, value_parser = parse_point)]
        from: Point,
        /// End point (7 reals)
        #[arg(long, value_parser = parse_point)]
        to: Point,
        /// Which distance to compute
        #[arg(long, value_enum, default_value = "both")]
        metric: Metric,
        /// Use the published vertical geodesic coefficient instead of the
        /// self-consistent one
        #[arg(long)]
        as_published: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Write the output to this file instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Geodesic from the origin to a target point, sampled
    Geodesic {
        /// Endpoint (7 reals)
        #[arg(long, value_parser = parse_point)]
        target: Point,
        /// Extension-metric parameter; solves in the Riemannian metric with
        /// symmetric vertical weights instead of the horizontal metric
        #[arg(long = "L", value_name = "VAL")]
        l: Option<f64>,
        /// Number of samples along the curve (odd, at least 3)
        #[arg(long, default_value_t = 129)]
        samples: usize,
        #[arg(long)]
        as_published: bool,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sample points on a metric sphere around the origin
    Sphere {
        #[arg(long)]
        radius: f64,
        #[arg(long)]
        samples: usize,
        #[arg(long, value_enum, default_value = "cc")]
        metric: SphereMetric,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        as_published: bool,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Curvature report for an extension metric
    Curvature {
        /// Vertical weights l1,l2,l3
        #[arg(long = "L", value_parser = parse_triple, value_name = "L1,L2,L3")]
        l: [f64; 3],
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Horizontal mean curvature of a catalog surface over a radial grid
    Hmc {
        /// Catalog surface name
        #[arg(long)]
        surface: String,
        /// Surface parameters as key=value (known key: R)
        #[arg(long, value_delimiter = ',')]
        params: Vec<String>,
        /// Grid spec: r=VALUE or r=START:STOP:COUNT
        #[arg(long)]
        grid: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Explicit horizontal path between two points
    Path {
        #[arg(long, value_parser = parse_point)]
        from: Point,
        #[arg(long, value_parser = parse_point)]
        to: Point,
        /// Samples per path segment (odd, at least 3)
        #[arg(long, default_value_t = 33)]
        samples: usize,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the self-check suites and print a pass/fail table
    Verify {
        #[arg(long, default_value = "all", value_parser = parse_suite)]
        suite: Suite,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

enum CliError {
    Usage(String),
    Domain(String),
}

impl From<hqgeo::Error> for CliError {
    fn from(e: hqgeo::Error) -> CliError {
        match e {
            hqgeo::Error::Input(msg) => CliError::Usage(msg),
            other => CliError::Domain(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> CliError {
        CliError::Domain(format!("i/o failure: {e}"))
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> CliError {
        CliError::Domain(format!("serialization failure: {e}"))
    }
}

fn parse_point(s: &str) -> Result<Point, String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 7 {
        return Err(format!(
            "expected 7 comma-separated reals x1,x2,x3,x4,t1,t2,t3, got {} values",
            parts.len()
        ));
    }
    let mut c = [0.0; 7];
    for (slot, part) in c.iter_mut().zip(parts.iter()) {
        *slot = part
            .trim()
            .parse::<f64>()
            .map_err(|e| format!("bad coordinate '{part}': {e}"))?;
        if !slot.is_finite() {
            return Err(format!("coordinate '{part}' is not finite"));
        }
    }
    Ok(Point::from_coords(c))
}

fn parse_triple(s: &str) -> Result<[f64; 3], String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 3 {
        return Err(format!("expected 3 comma-separated reals, got {}", parts.len()));
    }
    let mut out = [0.0; 3];
    for (slot, part) in out.iter_mut().zip(parts.iter()) {
        *slot = part
            .trim()
            .parse::<f64>()
            .map_err(|e| format!("bad value '{part}': {e}"))?;
    }
    Ok(out)
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse::<Suite>().map_err(|e| e.to_string())
}

fn mode_of(as_published: bool) -> Mode {
    if as_published {
        Mode::AsPublished
    } else {
        Mode::Corrected
    }
}

fn mode_name(mode: Mode) -> &'static str {
    match mode {
        Mode::Corrected => "corrected",
        Mode::AsPublished => "as-published",
    }
}

/// Relative output paths resolve against HQGEO_OUT_DIR when it is set.
fn resolve_out(path: &Path) -> PathBuf {
    if path.is_relative() {
        if let Ok(dir) = std::env::var("HQGEO_OUT_DIR") {
            if !dir.is_empty() {
                return Path::new(&dir).join(path);
            }
        }
    }
    path.to_path_buf()
}

/// Write to stdout, or atomically (temp file + rename) to `--out`.
fn emit(out: Option<&Path>, content: &str) -> Result<(), CliError> {
    match out {
        None => {
            print!("{content}");
            Ok(())
        }
        Some(path) => {
            let path = resolve_out(path);
            let dir = match path.parent() {
                Some(d) if !d.as_os_str().is_empty() => d,
                _ => Path::new("."),
            };
            let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
            tmp.write_all(content.as_bytes())?;
            tmp.persist(&path)
                .map_err(|e| CliError::Domain(format!("cannot write {}: {}", path.display(), e.error)))?;
            Ok(())
        }
    }
}

/// No NaN or infinity may leak into a JSON artifact. serde_json encodes
/// non-finite floats as null, so any null is a leak.
fn ensure_finite(v: &Value) -> Result<(), CliError> {
    match v {
        Value::Null => Err(CliError::Domain(
            "refusing to emit JSON with a non-finite number".to_string(),
        )),
        Value::Array(items) => items.iter().try_for_each(ensure_finite),
        Value::Object(map) => map.values().try_for_each(ensure_finite),
        _ => Ok(()),
    }
}

fn render_json(v: &Value) -> Result<String, CliError> {
    ensure_finite(v)?;
    let mut s = serde_json::to_string_pretty(v)?;
    s.push('\n');
    Ok(s)
}

fn coords_json(p: Point) -> Value {
    Value::from(p.coords().to_vec())
}

fn curve_rows(curve: &SampledCurve) -> Vec<(f64, [f64; 7], [f64; 3], f64)> {
    curve
        .samples()
        .iter()
        .map(|s| {
            let th = theta(s.point, s.velocity);
            let res = (th[0] * th[0] + th[1] * th[1] + th[2] * th[2]).sqrt();
            (s.lambda, s.point.coords(), th, res)
        })
        .collect()
}

fn curve_csv(curve: &SampledCurve) -> String {
    let mut s =
        String::from("lambda,x1,x2,x3,x4,t1,t2,t3,theta1,theta2,theta3,res_horizontality\n");
    for (lambda, c, th, res) in curve_rows(curve) {
        let _ = writeln!(
            s,
            "{lambda},{},{},{},{},{},{},{},{},{},{},{res}",
            c[0], c[1], c[2], c[3], c[4], c[5], c[6], th[0], th[1], th[2]
        );
    }
    s
}

fn curve_samples_json(curve: &SampledCurve) -> Value {
    Value::from(
        curve_rows(curve)
            .into_iter()
            .map(|(lambda, c, th, res)| {
                json!({
                    "lambda": lambda,
                    "coords": c.to_vec(),
                    "theta": th.to_vec(),
                    "res_horizontality": res,
                })
            })
            .collect::<Vec<Value>>(),
    )
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn run(command: Command) -> Result<ExitCode, CliError> {
    match command {
        Command::Dist {
            from,
            to,
            metric,
            as_published,
            format,
            out,
        } => run_dist(from, to, metric, mode_of(as_published), format, out.as_deref()),
        Command::Geodesic {
            target,
            l,
            samples,
            as_published,
            format,
            out,
        } => run_geodesic(target, l, samples, mode_of(as_published), format, out.as_deref()),
        Command::Sphere {
            radius,
            samples,
            metric,
            seed,
            as_published,
            format,
            out,
        } => run_sphere(
            radius,
            samples,
            metric,
            seed,
            mode_of(as_published),
            format,
            out.as_deref(),
        ),
        Command::Curvature { l, out } => run_curvature(l, out.as_deref()),
        Command::Hmc {
            surface,
            params,
            grid,
            format,
            out,
        } => run_hmc(&surface, &params, &grid, format, out.as_deref()),
        Command::Path {
            from,
            to,
            samples,
            format,
            out,
        } => run_path(from, to, samples, format, out.as_deref()),
        Command::Verify {
            suite,
            seed,
            format,
            out,
        } => run_verify(suite, seed, format, out.as_deref()),
    }
}

fn run_dist(
    from: Point,
    to: Point,
    metric: Metric,
    mode: Mode,
    format: Format,
    out: Option<&Path>,
) -> Result<ExitCode, CliError> {
    let d_cc = match metric {
        Metric::Cc | Metric::Both => Some(cc_distance(from, to, mode)),
        Metric::Koranyi => None,
    };
    let d_k = match metric {
        Metric::Koranyi | Metric::Both => Some(gauge_distance(from, to)),
        Metric::Cc => None,
    };
    let ratio = match (d_cc, d_k) {
        (Some(c), Some(k)) if k > 0.0 => Some(c / k),
        _ => None,
    };
    let content = match format {
        Format::Text => {
            let mut s = String::new();
            if let Some(c) = d_cc {
                let _ = writeln!(s, "d_cc = {c}");
            }
            if let Some(k) = d_k {
                let _ = writeln!(s, "d_koranyi = {k}");
            }
            if let Some(r) = ratio {
                let _ = writeln!(s, "ratio = {r}");
            }
            s
        }
        Format::Json => {
            let mut obj = json!({
                "schema": SCHEMA,
                "from": coords_json(from),
                "to": coords_json(to),
                "mode": mode_name(mode),
            });
            let map = obj.as_object_mut().expect("object literal");
            if let Some(c) = d_cc {
                map.insert("d_cc".to_string(), json!(c));
            }
            if let Some(k) = d_k {
                map.insert("d_koranyi".to_string(), json!(k));
            }
            if let Some(r) = ratio {
                map.insert("ratio".to_string(), json!(r));
            }
            render_json(&obj)?
        }
        Format::Csv => {
            return Err(CliError::Usage(
                "dist emits text or json, not csv".to_string(),
            ))
        }
    };
    emit(out, &content)?;
    Ok(ExitCode::SUCCESS)
}

fn run_geodesic(
    target: Point,
    l: Option<f64>,
    samples: usize,
    mode: Mode,
    format: Format,
    out: Option<&Path>,
) -> Result<ExitCode, CliError> {
    let (curve, meta) = match l {
        Some(l) => {
            let params = MetricParams::symmetric(l)?;
            let geo = solve_gl_bvp(target, params, mode)?;
            let curve = geo.curve(samples, mode)?;
            let cc = geo.contact_constants();
            let meta = json!({
                "metric": "gl",
                "l": l,
                "length": geo.length(),
                "contact_constants": cc.to_vec(),
            });
            (curve, meta)
        }
        None => {
            let sol = solve_cc_bvp(target, mode)?;
            let curve = sol.geodesic.curve(sol.radius, samples, mode)?;
            let meta = json!({
                "metric": "cc",
                "length": sol.radius,
                "unit_defect": sol.unit_defect,
            });
            (curve, meta)
        }
    };
    let content = match format {
        Format::Csv => curve_csv(&curve),
        Format::Json => {
            let mut obj = json!({
                "schema": SCHEMA,
                "target": coords_json(target),
                "mode": mode_name(mode),
                "samples": curve_samples_json(&curve),
            });
            let map = obj.as_object_mut().expect("object literal");
            for (k, v) in meta.as_object().expect("object literal") {
                map.insert(k.clone(), v.clone());
            }
            render_json(&obj)?
        }
        Format::Text => {
            return Err(CliError::Usage(
                "geodesic emits csv or json, not text".to_string(),
            ))
        }
    };
    emit(out, &content)?;
    Ok(ExitCode::SUCCESS)
}

/// Gauge-sphere sampling: a standard normal 7-vector dilated onto the
/// sphere. The vertical part scales quadratically under dilation, so this
/// is not the uniform measure, but the points sit exactly at gauge radius.
fn gauge_sphere_sample(radius: f64, n: usize, seed: u64) -> Result<Vec<Point>, CliError> {
    use rand_sampling::*;
    if !(radius > 0.0) || !radius.is_finite() {
        return Err(CliError::Usage(format!(
            "sphere radius must be positive, got {radius}"
        )));
    }
    let mut state = SplitMix::new(seed);
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let mut c = [0.0; 7];
        let mut norm2 = 0.0;
        for slot in c.iter_mut() {
            *slot = state.normal();
            norm2 += *slot * *slot;
        }
        if norm2 < 1e-12 {
            continue;
        }
        let p = Point::from_coords(c);
        out.push(dilate(p, radius / p.gauge()));
    }
    Ok(out)
}

/// Small deterministic normal sampler for the gauge-sphere subcommand, so
/// the binary does not need a second RNG stack: SplitMix64 driving a
/// Box-Muller transform.
mod rand_sampling {
    pub struct SplitMix {
        state: u64,
        spare: Option<f64>,
    }

    impl SplitMix {
        pub fn new(seed: u64) -> SplitMix {
            SplitMix { state: seed, spare: None }
        }

        fn next_u64(&mut self) -> u64 {
            self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
            let mut z = self.state;
            z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
            z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
            z ^ (z >> 31)
        }

        /// Uniform in (0, 1].
        fn uniform(&mut self) -> f64 {
            ((self.next_u64() >> 11) as f64 + 1.0) / (1u64 << 53) as f64
        }

        pub fn normal(&mut self) -> f64 {
            if let Some(v) = self.spare.take() {
                return v;
            }
            let r = (-2.0 * self.uniform().ln()).sqrt();
            let phi = std::f64::consts::TAU * self.uniform();
            self.spare = Some(r * phi.sin());
            r * phi.cos()
        }
    }
}

fn run_sphere(
    radius: f64,
    samples: usize,
    metric: SphereMetric,
    seed: u64,
    mode: Mode,
    format: Format,
    out: Option<&Path>,
) -> Result<ExitCode, CliError> {
    let points = match metric {
        SphereMetric::Cc => cc_sphere_sample(radius, samples, seed, mode)?,
        SphereMetric::Koranyi => gauge_sphere_sample(radius, samples, seed)?,
    };
    let with_distance: Vec<(Point, f64)> = points
        .into_iter()
        .map(|p| {
            let d = match metric {
                SphereMetric::Cc => cc_distance(Point::ORIGIN, p, mode),
                SphereMetric::Koranyi => gauge_distance(Point::ORIGIN, p),
            };
            (p, d)
        })
        .collect();
    let content = match format {
        Format::Csv => {
            let mut s = String::from("x1,x2,x3,x4,t1,t2,t3,distance\n");
            for (p, d) in &with_distance {
                let c = p.coords();
                let _ = writeln!(
                    s,
                    "{},{},{},{},{},{},{},{d}",
                    c[0], c[1], c[2], c[3], c[4], c[5], c[6]
                );
            }
            s
        }
        Format::Json => {
            let rows: Vec<Value> = with_distance
                .iter()
                .map(|(p, d)| json!({ "coords": coords_json(*p), "distance": d }))
                .collect();
            render_json(&json!({
                "schema": SCHEMA,
                "metric": match metric {
                    SphereMetric::Cc => "cc",
                    SphereMetric::Koranyi => "koranyi",
                },
                "radius": radius,
                "seed": seed,
                "mode": mode_name(mode),
                "samples": rows,
            }))?
        }
        Format::Text => {
            return Err(CliError::Usage(
                "sphere emits csv or json, not text".to_string(),
            ))
        }
    };
    emit(out, &content)?;
    Ok(ExitCode::SUCCESS)
}

fn run_curvature(l: [f64; 3], out: Option<&Path>) -> Result<ExitCode, CliError> {
    let params = MetricParams::new(l)?;
    let report = curvature_report(params);
    let value = serde_json::to_value(&report)?;
    let content = render_json(&value)?;
    emit(out, &content)?;
    Ok(ExitCode::SUCCESS)
}

fn parse_params(entries: &[String]) -> Result<BTreeMap<String, f64>, CliError> {
    let mut map = BTreeMap::new();
    for entry in entries {
        let (key, value) = entry.split_once('=').ok_or_else(|| {
            CliError::Usage(format!("parameter '{entry}' is not of the form key=value"))
        })?;
        let value: f64 = value
            .trim()
            .parse()
            .map_err(|e| CliError::Usage(format!("bad parameter value '{value}': {e}")))?;
        if key.trim() != "R" {
            return Err(CliError::Usage(format!(
                "unknown surface parameter '{key}' (known: R)"
            )));
        }
        map.insert(key.trim().to_string(), value);
    }
    Ok(map)
}

fn parse_grid(spec: &str) -> Result<Vec<f64>, CliError> {
    let body = spec.strip_prefix("r=").ok_or_else(|| {
        CliError::Usage(format!("grid spec '{spec}' must start with 'r='"))
    })?;
    let parts: Vec<&str> = body.split(':').collect();
    let parse = |s: &str| -> Result<f64, CliError> {
        s.trim()
            .parse::<f64>()
            .map_err(|e| CliError::Usage(format!("bad grid value '{s}': {e}")))
    };
    match parts.as_slice() {
        [single] => Ok(vec![parse(single)?]),
        [start, stop, count] => {
            let (a, b) = (parse(start)?, parse(stop)?);
            let n: usize = count.trim().parse().map_err(|e| {
                CliError::Usage(format!("bad grid count '{count}': {e}"))
            })?;
            if n < 2 {
                return Err(CliError::Usage("grid count must be at least 2".to_string()));
            }
            Ok((0..n)
                .map(|i| a + (b - a) * i as f64 / (n - 1) as f64)
                .collect())
        }
        _ => Err(CliError::Usage(format!(
            "grid spec '{spec}' must be r=VALUE or r=START:STOP:COUNT"
        ))),
    }
}

/// A point of the named catalog surface at radial coordinate `r` of its
/// profile; the hyperplane has no radial profile, so `r` moves along a
/// horizontal in-surface direction instead.
fn surface_point(name: &str, radius: f64, r: f64) -> Result<Point, CliError> {
    let p = match name {
        "koranyi-sphere" => profile_point(&KoranyiProfile { radius }, r)?,
        "euclidean-sphere" => profile_point(&EuclideanProfile { radius }, r)?,
        "cc-sphere" => profile_point(&CcSphereProfile::new(radius)?, r)?,
        "paraboloid-sqrt43" => profile_point(&ParaboloidProfile, r)?,
        "hyperplane-x1" => Point::from_coords([0.0, r, 0.0, 0.0, 0.0, 0.0, 0.0]),
        other => {
            return Err(CliError::Usage(format!(
                "no radial parametrization for surface '{other}'"
            )))
        }
    };
    Ok(p)
}

fn run_hmc(
    surface: &str,
    params: &[String],
    grid: &str,
    format: Format,
    out: Option<&Path>,
) -> Result<ExitCode, CliError> {
    let params = parse_params(params)?;
    let radius = params.get("R").copied().unwrap_or(1.0);
    let catalog = ImplicitSurface::catalog(surface, radius)?;
    let rs = parse_grid(grid)?;
    let mut values = Vec::with_capacity(rs.len());
    for &r in &rs {
        let p = surface_point(surface, radius, r)?;
        values.push(catalog.horizontal_mean_curvature(p)?);
    }
    let content = match format {
        Format::Text => {
            let mut s = String::new();
            for v in &values {
                let _ = writeln!(s, "{v}");
            }
            s
        }
        Format::Csv => {
            let mut s = String::from("r,h0\n");
            for (r, v) in rs.iter().zip(values.iter()) {
                let _ = writeln!(s, "{r},{v}");
            }
            s
        }
        Format::Json => {
            let rows: Vec<Value> = rs
                .iter()
                .zip(values.iter())
                .map(|(r, v)| json!({ "r": r, "h0": v }))
                .collect();
            render_json(&json!({
                "schema": SCHEMA,
                "surface": surface,
                "radius": radius,
                "grid": rows,
            }))?
        }
    };
    emit(out, &content)?;
    Ok(ExitCode::SUCCESS)
}

fn run_path(
    from: Point,
    to: Point,
    samples: usize,
    format: Format,
    out: Option<&Path>,
) -> Result<ExitCode, CliError> {
    let curve = hqgeo::connect(from, to, samples)?;
    let content = match format {
        Format::Csv => curve_csv(&curve),
        Format::Json => render_json(&json!({
            "schema": SCHEMA,
            "from": coords_json(from),
            "to": coords_json(to),
            "length_cc": curve.length_cc(),
            "samples": curve_samples_json(&curve),
        }))?,
        Format::Text => {
            return Err(CliError::Usage(
                "path emits csv or json, not text".to_string(),
            ))
        }
    };
    emit(out, &content)?;
    Ok(ExitCode::SUCCESS)
}

fn run_verify(
    suite: Suite,
    seed: u64,
    format: Format,
    out: Option<&Path>,
) -> Result<ExitCode, CliError> {
    let results = verify::run(suite, seed);
    let failures = results.iter().filter(|r| !r.passed).count();
    let content = match format {
        Format::Text => {
            let width = results.iter().map(|r| r.name.len()).max().unwrap_or(0);
            let mut s = String::new();
            for r in &results {
                let _ = writeln!(
                    s,
                    "{} {:width$}  {}",
                    if r.passed { "PASS" } else { "FAIL" },
                    r.name,
                    r.detail,
                );
            }
            let _ = writeln!(s, "{} checks, {failures} failed", results.len());
            s
        }
        Format::Json => {
            let checks = serde_json::to_value(&results)?;
            render_json(&json!({
                "schema": SCHEMA,
                "seed": seed,
                "passed": failures == 0,
                "checks": checks,
            }))?
        }
        Format::Csv => {
            return Err(CliError::Usage(
                "verify emits text or json, not csv".to_string(),
            ))
        }
    };
    emit(out, &content)?;
    Ok(if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}
