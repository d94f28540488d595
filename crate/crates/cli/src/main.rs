//! Command-line surface over the measure-geometry library: support sweeps,
//! membership queries, certificates, constructions, covering search,
//! tables, figures, and the property-suite verifier. Every output embeds
//! its run configuration, and a fixed seed gives byte-identical output at
//! any worker count (cap workers with METRONOID_THREADS).

mod figure;
mod out;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use metronoid::{
    ball_certificate, centroid_energy, cross_polytope_certificate, directional_ratio_exact_2d,
    discretize_grid, evaluate_dstar_dstar, fvein_search, grunbaum_ratio, mean_abs_inner,
    required_resolution, sphere_construction, tail_lower_bound, tail_volume_ratio,
    uniform_body_construction, verify_suites, BodySchema, Certificate, CertificateKind,
    ContainmentMethod, ContainmentReport, ConvexBody, DirectionNet, DiscreteMeasure, GridSpec,
    MeasureSchema, MembershipStatus, Metronoid, SandwichReport, Vector, DSTAR_CSV_HEADER,
};
use out::{g17, run_config, write_text, JVal};

#[derive(Parser)]
#[command(name = "metronoid", version, about = "Measure-generated convex sets toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Support values of a measure's generated set along directions
    Support(SupportArgs),
    /// Membership query for a point in the generated set
    Member(MemberArgs),
    /// Vertex list of the generated set
    Vertices(MeasureIoArgs),
    /// Layered SVG of a planar measure and its generated set
    Figure(FigureArgs),
    /// Build a measure whose generated set approximates a body
    #[command(subcommand)]
    Construct(ConstructCmd),
    /// Guaranteed tail-volume lower bound for centered bodies
    Tailbound(TailboundArgs),
    /// Monte Carlo halfspace or tail volume ratio for a centered body
    Grunbaum(GrunbaumArgs),
    /// Containment certificates with their transport cost
    #[command(subcommand)]
    Cert(CertCmd),
    /// Subgradient search for a low-cost covering certificate
    FveinSearch(FveinArgs),
    /// Transport cost of a probability measure into its centroid body
    CentroidEnergy(MeasureIoArgs),
    /// Grid discretization with a support sandwich check
    Discretize(DiscretizeArgs),
    /// Reproducible experiment tables as CSV
    Tables(TablesArgs),
    /// Run the property suites and report worst slacks
    Verify(VerifyArgs),
}

#[derive(Args)]
struct SupportArgs {
    /// Measure JSON file ({"dim": n, "atoms": [{"x": [..], "w": ..}]})
    measure: PathBuf,
    /// Single direction as comma-separated coordinates
    #[arg(long)]
    direction: Option<String>,
    /// Direction-net size (default: the standard net for the dimension)
    #[arg(long)]
    net: Option<usize>,
    /// Add LP-oracle columns (lp value and agreement gap)
    #[arg(long)]
    oracle: bool,
    /// Output format
    #[arg(long, default_value = "json", value_parser = ["json", "csv"])]
    format: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct MemberArgs {
    measure: PathBuf,
    /// Query point as comma-separated coordinates
    #[arg(long)]
    point: String,
    #[arg(long)]
    net: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct MeasureIoArgs {
    measure: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct FigureArgs {
    measure: PathBuf,
    /// Output SVG path
    #[arg(long)]
    out: PathBuf,
}

#[derive(Subcommand)]
enum ConstructCmd {
    /// Doubled uniform sphere measure generating the unit ball
    Sphere(SphereArgs),
    /// Uniform density on R*K scaled to the mass that forces containment
    Uniform(UniformArgs),
}

#[derive(Args)]
struct SphereArgs {
    #[arg(long)]
    dim: usize,
    #[arg(long, default_value_t = 10_000)]
    count: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write the sampled measure to this file
    #[arg(long)]
    measure_out: Option<PathBuf>,
}

#[derive(Args)]
struct UniformArgs {
    /// Body as kind:dim[:radius] (ball, cube, cross) or a body JSON file
    #[arg(long)]
    body: String,
    /// Outer scale R in (1, dim]
    #[arg(long)]
    r: f64,
    #[arg(long, default_value_t = 20_000)]
    count: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    measure_out: Option<PathBuf>,
}

#[derive(Args)]
struct TailboundArgs {
    #[arg(long)]
    dim: usize,
    #[arg(long)]
    r: f64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct GrunbaumArgs {
    #[arg(long)]
    body: String,
    /// Cut direction (default: the first coordinate axis)
    #[arg(long)]
    direction: Option<String>,
    /// Tail scale; omit for the halfspace ratio
    #[arg(long)]
    r: Option<f64>,
    #[arg(long, default_value_t = 200_000)]
    count: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Compare against the exact planar clipping oracle (dim 2 only)
    #[arg(long)]
    oracle: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum CertCmd {
    /// Exact cross-polytope certificate of cost 2n
    Cross(CrossCertArgs),
    /// Sampled sphere certificate for the unit ball
    Ball(BallCertArgs),
}

#[derive(Args)]
struct CrossCertArgs {
    #[arg(long)]
    dim: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BallCertArgs {
    #[arg(long)]
    dim: usize,
    #[arg(long, default_value_t = 10_000)]
    count: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct FveinArgs {
    #[arg(long)]
    body: String,
    /// Generator count (at most 8 per dimension)
    #[arg(long)]
    m: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 10_000)]
    iterations: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct DiscretizeArgs {
    measure: PathBuf,
    /// Relative position error budget in (0, 0.25]
    #[arg(long)]
    epsilon: f64,
    #[arg(long)]
    net: Option<usize>,
    /// Slack allowed in the support sandwich check
    #[arg(long, default_value_t = 1e-12)]
    tol: f64,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    measure_out: Option<PathBuf>,
}

#[derive(Args)]
struct TablesArgs {
    /// One of: dstar, fvein, centroid-energy
    #[arg(long)]
    suite: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Sample count for the sampled columns
    #[arg(long)]
    count: Option<usize>,
    /// Verdict slack for sampled containment columns
    #[arg(long, default_value_t = 0.02)]
    tol: f64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Restrict to one suite (metronoid, body, constructions, vertex-index)
    #[arg(long)]
    suite: Option<String>,
    #[arg(long, default_value_t = 40)]
    cases: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = init_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    match run(cli.command) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

/// METRONOID_THREADS caps the worker pool. Results never depend on it;
/// only wall time does.
fn init_threads() -> Result<(), String> {
    match std::env::var("METRONOID_THREADS") {
        Ok(v) => {
            let k: usize = v
                .parse()
                .map_err(|_| format!("METRONOID_THREADS must be a positive integer, got {v:?}"))?;
            if k == 0 {
                return Err("METRONOID_THREADS must be positive".into());
            }
            rayon::ThreadPoolBuilder::new()
                .num_threads(k)
                .build_global()
                .map_err(|e| e.to_string())
        }
        Err(_) => Ok(()),
    }
}

fn run(cmd: Cmd) -> Result<ExitCode, String> {
    match cmd {
        Cmd::Support(a) => cmd_support(a),
        Cmd::Member(a) => cmd_member(a),
        Cmd::Vertices(a) => cmd_vertices(a),
        Cmd::Figure(a) => cmd_figure(a),
        Cmd::Construct(c) => match c {
            ConstructCmd::Sphere(a) => cmd_construct_sphere(a),
            ConstructCmd::Uniform(a) => cmd_construct_uniform(a),
        },
        Cmd::Tailbound(a) => cmd_tailbound(a),
        Cmd::Grunbaum(a) => cmd_grunbaum(a),
        Cmd::Cert(c) => match c {
            CertCmd::Cross(a) => cmd_cert_cross(a),
            CertCmd::Ball(a) => cmd_cert_ball(a),
        },
        Cmd::FveinSearch(a) => cmd_fvein_search(a),
        Cmd::CentroidEnergy(a) => cmd_centroid_energy(a),
        Cmd::Discretize(a) => cmd_discretize(a),
        Cmd::Tables(a) => cmd_tables(a),
        Cmd::Verify(a) => cmd_verify(a),
    }
    .map(|code| code)
}

fn estr(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn load_measure(path: &Path) -> Result<DiscreteMeasure, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let schema: MeasureSchema =
        serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    DiscreteMeasure::from_schema(&schema).map_err(|e| format!("{}: {e}", path.display()))
}

/// Bodies come inline as kind:dim[:radius] or as a body JSON file.
fn parse_body(spec: &str) -> Result<ConvexBody, String> {
    if spec.ends_with(".json") {
        let text = fs::read_to_string(spec).map_err(|e| format!("{spec}: {e}"))?;
        let schema: BodySchema =
            serde_json::from_str(&text).map_err(|e| format!("{spec}: {e}"))?;
        return ConvexBody::from_schema(&schema).map_err(estr);
    }
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() < 2 || parts.len() > 3 {
        return Err(format!(
            "body spec {spec:?} must be kind:dim[:radius] or a .json file"
        ));
    }
    let dim: usize = parts[1]
        .parse()
        .map_err(|_| format!("bad dimension in body spec {spec:?}"))?;
    let radius: f64 = if parts.len() == 3 {
        parts[2]
            .parse()
            .map_err(|_| format!("bad radius in body spec {spec:?}"))?
    } else {
        1.0
    };
    match parts[0] {
        "ball" => ConvexBody::ball(dim, radius),
        "cube" => ConvexBody::cube(dim, radius),
        "cross" => ConvexBody::cross_polytope(dim, radius),
        other => {
            return Err(format!(
                "unknown body kind {other:?} (ball, cube, cross, or a .json file)"
            ))
        }
    }
    .map_err(estr)
}

fn parse_vector(text: &str, expect_dim: usize) -> Result<Vector, String> {
    let coords: Result<Vec<f64>, _> = text.split(',').map(|t| t.trim().parse()).collect();
    let coords = coords.map_err(|_| format!("cannot parse coordinates from {text:?}"))?;
    if coords.len() != expect_dim {
        return Err(format!(
            "expected {expect_dim} coordinates, got {} in {text:?}",
            coords.len()
        ));
    }
    Vector::new(coords).map_err(estr)
}

fn net_for(dim: usize, count: Option<usize>) -> Result<DirectionNet, String> {
    match count {
        Some(c) => DirectionNet::with_count(dim, c, 0),
        None => DirectionNet::standard(dim, 0),
    }
    .map_err(estr)
}

fn opt_num(v: Option<f64>) -> JVal {
    match v {
        Some(x) => JVal::Num(x),
        None => JVal::Null,
    }
}

fn opt_int(v: Option<usize>) -> JVal {
    match v {
        Some(x) => JVal::Int(x as i64),
        None => JVal::Null,
    }
}

fn path_str(p: &Path) -> JVal {
    JVal::s(p.display().to_string())
}

fn containment_json(c: &ContainmentReport) -> JVal {
    JVal::Obj(vec![
        ("contained", JVal::Bool(c.contained)),
        (
            "method",
            JVal::s(match c.method {
                ContainmentMethod::ExactVertices => "vertices",
                ContainmentMethod::NetSupport => "net",
            }),
        ),
        ("worst_slack", opt_num(c.worst_slack)),
        ("screen_ok", JVal::Bool(c.screen_ok)),
    ])
}

fn sandwich_json(s: &SandwichReport) -> JVal {
    JVal::Obj(vec![
        ("inner", containment_json(&s.inner)),
        (
            "outer_pass",
            s.outer_pass.map(JVal::Bool).unwrap_or(JVal::Null),
        ),
        ("outer_ratio", opt_num(s.outer_ratio)),
        ("outer_exact", JVal::Bool(s.outer_exact)),
    ])
}

fn certificate_fields(
    cert: &Certificate,
    net_size: Option<usize>,
) -> Vec<(&'static str, JVal)> {
    vec![
        ("body", JVal::body(&cert.body)),
        ("cost", JVal::Num(cert.cost)),
        (
            "kind",
            JVal::s(match cert.kind {
                CertificateKind::Exact => "exact",
                CertificateKind::Sampled => "sampled",
            }),
        ),
        ("net_size", opt_int(net_size)),
        ("worst_slack", opt_num(cert.verified.worst_slack)),
        ("verified", JVal::Bool(cert.verified.contained)),
        ("measure", JVal::measure(&cert.measure)),
    ]
}

fn emit(out: Option<&Path>, text: &str) -> Result<ExitCode, String> {
    write_text(out, text).map_err(estr)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_support(a: SupportArgs) -> Result<ExitCode, String> {
    let mu = load_measure(&a.measure)?;
    let met = Metronoid::new(mu.clone()).map_err(estr)?;
    let n = mu.dim();
    let dirs: Vec<Vector> = match &a.direction {
        Some(d) => vec![parse_vector(d, n)?],
        None => net_for(n, a.net)?.directions().to_vec(),
    };
    let config = run_config(
        "support",
        None,
        vec![
            ("measure", path_str(&a.measure)),
            (
                "direction",
                a.direction.clone().map(JVal::Str).unwrap_or(JVal::Null),
            ),
            ("net", opt_int(if a.direction.is_some() { None } else { Some(dirs.len()) })),
            ("oracle", JVal::Bool(a.oracle)),
            ("format", JVal::s(a.format.clone())),
        ],
    );
    let mut rows_json = Vec::with_capacity(dirs.len());
    let mut rows_csv = String::new();
    for theta in &dirs {
        let h = met.msupport(theta).map_err(estr)?;
        let y = met.extreme_point(theta).map_err(estr)?;
        let (lp, gap) = if a.oracle {
            let v = met.msupport_lp(theta).map_err(estr)?;
            (Some(v), Some((h - v).abs()))
        } else {
            (None, None)
        };
        if a.format == "csv" {
            let mut cells: Vec<String> = theta.0.iter().map(|&c| g17(c)).collect();
            cells.push(g17(h));
            cells.extend(y.0.iter().map(|&c| g17(c)));
            if let (Some(lp), Some(gap)) = (lp, gap) {
                cells.push(g17(lp));
                cells.push(g17(gap));
            }
            rows_csv.push_str(&cells.join(","));
            rows_csv.push('\n');
        } else {
            let mut fields = vec![
                ("theta", JVal::vector(theta)),
                ("h", JVal::Num(h)),
                ("y", JVal::vector(&y)),
            ];
            if let (Some(lp), Some(gap)) = (lp, gap) {
                fields.push(("lp", JVal::Num(lp)));
                fields.push(("gap", JVal::Num(gap)));
            }
            rows_json.push(JVal::Obj(fields));
        }
    }
    let text = if a.format == "csv" {
        let mut header: Vec<String> = (0..n).map(|i| format!("theta_{i}")).collect();
        header.push("h".into());
        header.extend((0..n).map(|i| format!("y_{i}")));
        if a.oracle {
            header.push("lp".into());
            header.push("gap".into());
        }
        format!(
            "# config: {}\n{}\n{}",
            config.render_compact(),
            header.join(","),
            rows_csv
        )
    } else {
        JVal::Obj(vec![("config", config), ("rows", JVal::Arr(rows_json))]).render()
    };
    emit(a.out.as_deref(), &text)
}

fn cmd_member(a: MemberArgs) -> Result<ExitCode, String> {
    let mu = load_measure(&a.measure)?;
    let met = Metronoid::new(mu.clone()).map_err(estr)?;
    let x = parse_vector(&a.point, mu.dim())?;
    let net = net_for(mu.dim(), a.net)?;
    let cert = met.membership_with_net(&x, &net).map_err(estr)?;
    let status = match cert.status {
        MembershipStatus::Inside => "inside",
        MembershipStatus::Boundary => "boundary",
        MembershipStatus::Outside => "outside",
    };
    // Witness residual: how far the certified combination is from x.
    let residual = if cert.status == MembershipStatus::Outside {
        JVal::Null
    } else {
        let mut y = Vector::zeros(mu.dim());
        for ((p, _), lam) in mu.atoms().iter().zip(&cert.lambda) {
            y.add_scaled(p, *lam);
        }
        let worst = y
            .0
            .iter()
            .zip(&x.0)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0f64, f64::max);
        JVal::Num(worst)
    };
    let config = run_config(
        "member",
        None,
        vec![
            ("measure", path_str(&a.measure)),
            ("point", JVal::s(a.point.clone())),
            ("net", JVal::Int(net.len() as i64)),
        ],
    );
    let text = JVal::Obj(vec![
        ("config", config),
        ("status", JVal::s(status)),
        ("lambda", JVal::floats(&cert.lambda)),
        ("residual", residual),
    ])
    .render();
    emit(a.out.as_deref(), &text)
}

fn cmd_vertices(a: MeasureIoArgs) -> Result<ExitCode, String> {
    let mu = load_measure(&a.measure)?;
    let met = Metronoid::new(mu).map_err(estr)?;
    let vertices = met.vertices().map_err(estr)?;
    let config = run_config(
        "vertices",
        None,
        vec![("measure", path_str(&a.measure))],
    );
    let text = JVal::Obj(vec![
        ("config", config),
        ("count", JVal::Int(vertices.len() as i64)),
        (
            "vertices",
            JVal::Arr(vertices.iter().map(JVal::vector).collect()),
        ),
    ])
    .render();
    emit(a.out.as_deref(), &text)
}

fn cmd_figure(a: FigureArgs) -> Result<ExitCode, String> {
    let mu = load_measure(&a.measure)?;
    let config = run_config(
        "figure",
        None,
        vec![
            ("measure", path_str(&a.measure)),
            ("out", path_str(&a.out)),
        ],
    );
    let svg = figure::figure_svg(&mu, &config).map_err(estr)?;
    emit(Some(&a.out), &svg)
}

fn construction_json(
    command: &str,
    config: JVal,
    report: &metronoid::ConstructionReport,
    measure_out: Option<&Path>,
) -> Result<String, String> {
    if let Some(path) = measure_out {
        write_text(Some(path), &JVal::measure(&report.measure).render()).map_err(estr)?;
    }
    let _ = command;
    Ok(JVal::Obj(vec![
        ("config", config),
        ("mass", JVal::Num(report.mass)),
        ("cost", JVal::Num(report.cost)),
        ("bound_mass", JVal::Num(report.claimed_bounds.0)),
        ("bound_cost", JVal::Num(report.claimed_bounds.1)),
        ("atom_count", JVal::Int(report.measure.len() as i64)),
        ("sample_mass", JVal::Num(report.measure.total_mass())),
        ("containment", sandwich_json(&report.containment)),
    ])
    .render())
}

fn cmd_construct_sphere(a: SphereArgs) -> Result<ExitCode, String> {
    let report = sphere_construction(a.dim, a.count, a.seed).map_err(estr)?;
    let config = run_config(
        "construct sphere",
        Some(a.seed),
        vec![
            ("dim", JVal::Int(a.dim as i64)),
            ("count", JVal::Int(a.count as i64)),
        ],
    );
    let text = construction_json("construct sphere", config, &report, a.measure_out.as_deref())?;
    emit(a.out.as_deref(), &text)
}

fn cmd_construct_uniform(a: UniformArgs) -> Result<ExitCode, String> {
    let body = parse_body(&a.body)?;
    let report = uniform_body_construction(&body, a.r, a.count, a.seed).map_err(estr)?;
    let config = run_config(
        "construct uniform",
        Some(a.seed),
        vec![
            ("body", JVal::s(a.body.clone())),
            ("r", JVal::Num(a.r)),
            ("count", JVal::Int(a.count as i64)),
        ],
    );
    let text = construction_json("construct uniform", config, &report, a.measure_out.as_deref())?;
    emit(a.out.as_deref(), &text)
}

fn cmd_tailbound(a: TailboundArgs) -> Result<ExitCode, String> {
    if a.dim == 0 {
        return Err("dimension must be positive".into());
    }
    if !(a.r > 1.0) || !a.r.is_finite() {
        return Err(format!("tail scale {} must exceed 1", a.r));
    }
    let reference = (-1.0 - (a.dim as f64 - 1.0) / (a.r - 1.0)).exp();
    let config = run_config(
        "tailbound",
        None,
        vec![
            ("dim", JVal::Int(a.dim as i64)),
            ("r", JVal::Num(a.r)),
        ],
    );
    let text = JVal::Obj(vec![
        ("config", config),
        ("bound", JVal::Num(tail_lower_bound(a.dim, a.r))),
        ("reference_constant", JVal::Num(reference)),
        (
            "note",
            JVal::s(
                "bound is the guaranteed value; the reference constant can exceed \
                 the attainable minimum (planar simplex toward a vertex at r = 2 \
                 has exact tail ratio 1/9, below e^-2)",
            ),
        ),
    ])
    .render();
    emit(a.out.as_deref(), &text)
}

fn cmd_grunbaum(a: GrunbaumArgs) -> Result<ExitCode, String> {
    let body = parse_body(&a.body)?;
    let n = body.dim();
    let u = match &a.direction {
        Some(d) => parse_vector(d, n)?,
        None => Vector::basis(n, 0),
    };
    let (estimate, floor) = match a.r {
        Some(r) => (
            tail_volume_ratio(&body, &u, r, a.count, a.seed).map_err(estr)?,
            tail_lower_bound(n, r),
        ),
        None => (
            grunbaum_ratio(&body, &u, a.count, a.seed).map_err(estr)?,
            (-1.0f64).exp(),
        ),
    };
    let floor_ok = estimate.value >= floor - 3.0 * estimate.std_error;
    let oracle = if a.oracle {
        if n != 2 {
            return Err("the exact clipping oracle is planar only".into());
        }
        let level = match a.r {
            Some(r) => body.support(&u).map_err(estr)? / r,
            None => 0.0,
        };
        let exact = directional_ratio_exact_2d(&body, &u, level).map_err(estr)?;
        let sigmas = if estimate.std_error > 0.0 {
            (estimate.value - exact).abs() / estimate.std_error
        } else {
            0.0
        };
        JVal::Obj(vec![
            ("exact", JVal::Num(exact)),
            ("gap_sigmas", JVal::Num(sigmas)),
        ])
    } else {
        JVal::Null
    };
    let config = run_config(
        "grunbaum",
        Some(a.seed),
        vec![
            ("body", JVal::s(a.body.clone())),
            (
                "direction",
                a.direction.clone().map(JVal::Str).unwrap_or(JVal::Null),
            ),
            ("r", opt_num(a.r)),
            ("count", JVal::Int(a.count as i64)),
            ("oracle", JVal::Bool(a.oracle)),
        ],
    );
    let text = JVal::Obj(vec![
        ("config", config),
        ("value", JVal::Num(estimate.value)),
        ("std_error", JVal::Num(estimate.std_error)),
        ("samples", JVal::Int(estimate.samples as i64)),
        ("floor", JVal::Num(floor)),
        ("floor_satisfied", JVal::Bool(floor_ok)),
        ("oracle", oracle),
    ])
    .render();
    emit(a.out.as_deref(), &text)
}

fn cmd_cert_cross(a: CrossCertArgs) -> Result<ExitCode, String> {
    let cert = cross_polytope_certificate(a.dim).map_err(estr)?;
    let config = run_config(
        "cert cross",
        None,
        vec![("dim", JVal::Int(a.dim as i64))],
    );
    let mut fields = vec![("config", config)];
    fields.extend(certificate_fields(&cert, None));
    emit(a.out.as_deref(), &JVal::Obj(fields).render())
}

fn cmd_cert_ball(a: BallCertArgs) -> Result<ExitCode, String> {
    let cert = ball_certificate(a.dim, a.count, a.seed).map_err(estr)?;
    let net_size = DirectionNet::standard(a.dim, 0).map_err(estr)?.len();
    let config = run_config(
        "cert ball",
        Some(a.seed),
        vec![
            ("dim", JVal::Int(a.dim as i64)),
            ("count", JVal::Int(a.count as i64)),
        ],
    );
    let mut fields = vec![("config", config)];
    fields.extend(certificate_fields(&cert, Some(net_size)));
    emit(a.out.as_deref(), &JVal::Obj(fields).render())
}

fn cmd_fvein_search(a: FveinArgs) -> Result<ExitCode, String> {
    let body = parse_body(&a.body)?;
    let outcome = fvein_search(&body, a.m, a.seed, a.iterations).map_err(estr)?;
    let net_size = DirectionNet::standard(body.dim(), 0).map_err(estr)?.len();
    let config = run_config(
        "fvein-search",
        Some(a.seed),
        vec![
            ("body", JVal::s(a.body.clone())),
            ("m", JVal::Int(a.m as i64)),
            ("iterations", JVal::Int(a.iterations as i64)),
        ],
    );
    let mut fields = vec![("config", config)];
    fields.extend(certificate_fields(&outcome.certificate, Some(net_size)));
    fields.push((
        "generators",
        JVal::Arr(outcome.generators.iter().map(JVal::vector).collect()),
    ));
    fields.push(("best_costs", JVal::floats(&outcome.best_costs)));
    emit(a.out.as_deref(), &JVal::Obj(fields).render())
}

fn cmd_centroid_energy(a: MeasureIoArgs) -> Result<ExitCode, String> {
    let mu = load_measure(&a.measure)?;
    let energy = centroid_energy(&mu).map_err(estr)?;
    let config = run_config(
        "centroid-energy",
        None,
        vec![("measure", path_str(&a.measure))],
    );
    let text = JVal::Obj(vec![
        ("config", config),
        ("dim", JVal::Int(mu.dim() as i64)),
        ("atom_count", JVal::Int(mu.len() as i64)),
        ("energy", JVal::Num(energy)),
        ("sqrt_dim", JVal::Num((mu.dim() as f64).sqrt())),
    ])
    .render();
    emit(a.out.as_deref(), &text)
}

/// Two-stage discretization. Snapping alone keeps the generated set within
/// the (1 +- 2 epsilon) support sandwich whenever the set contains the unit
/// ball; dilating the snapped measure by 1/(1 - 2 epsilon) then makes the
/// output's set contain the original's. Both checks are reported per run;
/// the emitted measure is the dilated one.
fn cmd_discretize(a: DiscretizeArgs) -> Result<ExitCode, String> {
    let mu = load_measure(&a.measure)?;
    let range = mu
        .atoms()
        .iter()
        .flat_map(|(x, _)| x.0.iter().map(|c| c.abs()))
        .fold(0.0f64, f64::max)
        .max(1e-9);
    let resolution = required_resolution(mu.dim(), mu.total_mass(), a.epsilon);
    let grid = GridSpec::new(range, resolution, a.epsilon).map_err(estr)?;
    let snapped = metronoid::snap_to_grid(&mu, &grid).map_err(estr)?;
    let dilated = discretize_grid(&mu, &grid).map_err(estr)?;
    let net = net_for(mu.dim(), a.net)?;
    let met = Metronoid::new(mu.clone()).map_err(estr)?;
    let met_m = Metronoid::new(snapped.clone()).map_err(estr)?;
    let met_d = Metronoid::new(dilated.clone()).map_err(estr)?;
    let expand = (1.0 + 2.0 * a.epsilon) / (1.0 - 2.0 * a.epsilon);
    let mut sandwich_lo = f64::NEG_INFINITY;
    let mut sandwich_hi = f64::NEG_INFINITY;
    let mut violations = 0usize;
    let mut cover_slack = f64::NEG_INFINITY;
    let mut cover_hi = f64::NEG_INFINITY;
    for theta in net.directions() {
        let h = met.msupport(theta).map_err(estr)?;
        let hm = met_m.msupport(theta).map_err(estr)?;
        let hd = met_d.msupport(theta).map_err(estr)?;
        let lo = (1.0 - 2.0 * a.epsilon) * h;
        let hi = (1.0 + 2.0 * a.epsilon) * h;
        sandwich_lo = sandwich_lo.max(lo - hm);
        sandwich_hi = sandwich_hi.max(hm - hi);
        if lo - hm > a.tol || hm - hi > a.tol {
            violations += 1;
        }
        cover_slack = cover_slack.max(h - hd);
        cover_hi = cover_hi.max(hd - expand * h);
    }
    if let Some(path) = &a.measure_out {
        write_text(Some(path), &JVal::measure(&dilated).render()).map_err(estr)?;
    }
    let config = run_config(
        "discretize",
        None,
        vec![
            ("measure", path_str(&a.measure)),
            ("epsilon", JVal::Num(a.epsilon)),
            ("net", JVal::Int(net.len() as i64)),
            ("tol", JVal::Num(a.tol)),
        ],
    );
    let text = JVal::Obj(vec![
        ("config", config),
        ("range", JVal::Num(grid.range)),
        ("resolution", JVal::Int(grid.resolution as i64)),
        ("atoms_in", JVal::Int(mu.len() as i64)),
        ("atoms_out", JVal::Int(dilated.len() as i64)),
        ("snapped_sandwich_lower_excess", JVal::Num(sandwich_lo)),
        ("snapped_sandwich_upper_excess", JVal::Num(sandwich_hi)),
        ("snapped_violations", JVal::Int(violations as i64)),
        ("dilated_cover_slack", JVal::Num(cover_slack)),
        ("dilated_upper_excess", JVal::Num(cover_hi)),
        ("measure", JVal::measure(&dilated)),
    ])
    .render();
    emit(a.out.as_deref(), &text)
}

fn cmd_tables(a: TablesArgs) -> Result<ExitCode, String> {
    let config = run_config(
        "tables",
        Some(a.seed),
        vec![
            ("suite", JVal::s(a.suite.clone())),
            ("count", opt_int(a.count)),
            ("tol", JVal::Num(a.tol)),
        ],
    );
    let header_line = format!("# config: {}", config.render_compact());
    let body = match a.suite.as_str() {
        "dstar" => {
            let count = a.count.unwrap_or(20_000);
            let mut lines = vec![DSTAR_CSV_HEADER.to_string()];
            for (n, r) in [(2usize, 2.0f64), (3, 2.0), (3, 3.0)] {
                let k = ConvexBody::cube(n, 1.0).map_err(estr)?;
                let report = uniform_body_construction(&k, r, count, a.seed).map_err(estr)?;
                lines.push(evaluate_dstar_dstar(&report, r, a.tol).csv_row());
            }
            lines.join("\n")
        }
        "fvein" => {
            let mut lines = vec!["n,cross_cost,ball_cost,asymptote".to_string()];
            for n in 1..=8usize {
                let cross = cross_polytope_certificate(n).map_err(estr)?;
                let ball_cost = 2.0 / mean_abs_inner(n).map_err(estr)?;
                let asym = (std::f64::consts::TAU * n as f64).sqrt();
                lines.push(format!(
                    "{n},{},{},{}",
                    g17(cross.cost),
                    g17(ball_cost),
                    g17(asym)
                ));
            }
            lines.join("\n")
        }
        "centroid-energy" => {
            let count = a.count.unwrap_or(2_000);
            let mut lines = vec!["n,family,energy,sqrt_n".to_string()];
            for n in 2..=8usize {
                let w = 1.0 / (2 * n) as f64;
                let atoms: Vec<(Vector, f64)> = (0..2 * n)
                    .map(|j| {
                        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
                        (Vector::basis(n, j / 2).scale(sign), w)
                    })
                    .collect();
                let coord = DiscreteMeasure::new(n, atoms).map_err(estr)?;
                lines.push(format!(
                    "{n},coordinate,{},{}",
                    g17(centroid_energy(&coord).map_err(estr)?),
                    g17((n as f64).sqrt())
                ));
                let sphere =
                    metronoid::sample_sphere(n, 1.0, 1.0, count, a.seed).map_err(estr)?;
                lines.push(format!(
                    "{n},sphere,{},{}",
                    g17(centroid_energy(&sphere).map_err(estr)?),
                    g17((n as f64).sqrt())
                ));
            }
            lines.join("\n")
        }
        other => {
            return Err(format!(
                "unknown table suite {other:?} (dstar, fvein, centroid-energy)"
            ))
        }
    };
    emit(a.out.as_deref(), &format!("{header_line}\n{body}\n"))
}

fn cmd_verify(a: VerifyArgs) -> Result<ExitCode, String> {
    let reports = verify_suites(a.suite.as_deref(), a.seed, a.cases).map_err(estr)?;
    let all_pass = reports.iter().all(|r| r.pass);
    let config = run_config(
        "verify",
        Some(a.seed),
        vec![
            (
                "suite",
                a.suite.clone().map(JVal::Str).unwrap_or(JVal::Null),
            ),
            ("cases", JVal::Int(a.cases as i64)),
        ],
    );
    let rows = reports
        .iter()
        .map(|r| {
            JVal::Obj(vec![
                ("suite", JVal::s(r.suite)),
                ("property", JVal::s(r.property)),
                ("cases", JVal::Int(r.cases as i64)),
                ("worst_slack", JVal::Num(r.worst_slack)),
                ("tol", JVal::Num(r.tol)),
                ("pass", JVal::Bool(r.pass)),
            ])
        })
        .collect();
    let text = JVal::Obj(vec![
        ("config", config),
        ("properties", JVal::Arr(rows)),
        ("pass", JVal::Bool(all_pass)),
    ])
    .render();
    write_text(a.out.as_deref(), &text).map_err(estr)?;
    Ok(if all_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}
