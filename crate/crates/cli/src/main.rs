//! Command-line front end: reads exact-coordinate JSON, runs the
//! geometry kernel, and emits JSON reports or SVG drawings.
//!
//! Exit codes: 0 on success, 2 on input validation failure (with a
//! JSON witness on stderr), 3 on internal assertion failure.

mod render;

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use qdelaunay_core::angles2d::angle_data;
use qdelaunay_core::delaunay::{delaunay, full_decomposition};
use qdelaunay_core::edgeweights::{augment_to_sphere, validate_disk, validate_sphere, weights_from_delaunay};
use qdelaunay_core::error::Error;
use qdelaunay_core::hull::{convex_hull, lift};
use qdelaunay_core::interp::{optimality_check, LpNorm};
use qdelaunay_core::proximity::{gabriel, mst, rng};
use qdelaunay_core::qform::{PointSet, QuadraticForm};
use qdelaunay_core::rat::{parse_rat, rat, Rat};
use qdelaunay_core::schema::{self, SCHEMA};
use qdelaunay_core::transforms::{limit_harness, moebius_delaunay_check};
use qdelaunay_core::voronoi::{inverse_voronoi, voronoi};

use render::{Layer, RenderInput, RenderSpec};

#[derive(Parser)]
#[command(
    name = "qdelaunay",
    about = "Delaunay decompositions, Voronoi duals, angles, and proximity graphs for arbitrary quadratic forms",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct CommonArgs {
    /// Form: a JSON file or one of the presets euclidean | minkowski | degenerate.
    #[arg(long)]
    form: Option<String>,
    /// Point set JSON file.
    #[arg(long)]
    points: Option<PathBuf>,
    /// Output file (stdout when absent).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Optional key=value config file (tolerance, viewport, samples).
    #[arg(long)]
    config: Option<PathBuf>,
    /// Seed for randomized subroutines; outputs are deterministic for a
    /// fixed seed (current subcommands are fully deterministic).
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Numeric tolerance for floating-point condition checks.
    #[arg(long)]
    tolerance: Option<f64>,
}

#[derive(Subcommand)]
enum Command {
    /// Q-Delaunay decomposition.
    Del(CommonArgs),
    /// Full-ball decomposition (top facets).
    Full(CommonArgs),
    /// Q-Voronoi decomposition (non-degenerate forms, d = 2).
    Voronoi {
        #[command(flatten)]
        common: CommonArgs,
        /// Farthest-site (inverse) regions instead of nearest-site.
        #[arg(long)]
        inverse: bool,
    },
    /// Interior/edge angle report of the Delaunay complex.
    Angles(CommonArgs),
    /// Weighted planar graph of Q-circle intersection angles.
    Weights(CommonArgs),
    /// Validate a weighted graph against the prescription conditions.
    ValidateWeights {
        #[command(flatten)]
        common: CommonArgs,
        /// Weighted graph JSON file.
        #[arg(long)]
        graph: PathBuf,
    },
    /// Proximity graphs (MST, RNG, Gabriel).
    Proximity {
        #[command(flatten)]
        common: CommonArgs,
        /// mst | rng | gabriel | all
        #[arg(long, default_value = "all")]
        graph_kind: String,
    },
    /// Interpolation-error optimality table for f = Q.
    Interp {
        #[command(flatten)]
        common: CommonArgs,
        /// Norm: 1 | 2 | inf
        #[arg(long, default_value = "2")]
        p: String,
    },
    /// Rescaled-limit sweep for degenerate forms.
    LimitCheck {
        #[command(flatten)]
        common: CommonArgs,
        /// Decreasing positive rationals, comma separated.
        #[arg(long)]
        t_values: String,
    },
    /// Moebius invariance check along a discretized path.
    MoebiusCheck {
        #[command(flatten)]
        common: CommonArgs,
        /// Path JSON file of exact (d+2)x(d+2) samples.
        #[arg(long)]
        path: PathBuf,
    },
    /// Lifted points and classified hull facets.
    LiftGraph(CommonArgs),
    /// Static SVG rendering.
    Render {
        #[command(flatten)]
        common: CommonArgs,
        /// SVG output file.
        #[arg(long)]
        svg: PathBuf,
        /// Comma-separated layers: points,cells,conics,voronoi,mst,rng,gabriel
        #[arg(long, default_value = "points,cells,conics")]
        layers: String,
        /// Viewport x0,y0,x1,y1 (data bounding box when absent).
        #[arg(long)]
        viewport: Option<String>,
        /// Samples per curve branch (>= 16).
        #[arg(long)]
        samples: Option<usize>,
    },
}

/// Values from the optional key=value config file.
#[derive(Debug, Clone, Default)]
struct Config {
    tolerance: Option<f64>,
    viewport: Option<[f64; 4]>,
    samples: Option<usize>,
}

fn load_config(path: &Option<PathBuf>) -> Result<Config, Error> {
    let mut cfg = Config::default();
    let Some(path) = path else { return Ok(cfg) };
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read config {path:?}: {e}")))?;
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("config line without '=': {line:?}")))?;
        match key.trim() {
            "tolerance" => {
                cfg.tolerance = Some(value.trim().parse().map_err(|_| {
                    Error::Parse(format!("bad tolerance value {value:?}"))
                })?)
            }
            "viewport" => cfg.viewport = Some(parse_viewport(value.trim())?),
            "samples" => {
                cfg.samples = Some(value.trim().parse().map_err(|_| {
                    Error::Parse(format!("bad samples value {value:?}"))
                })?)
            }
            other => return Err(Error::Parse(format!("unknown config key {other:?}"))),
        }
    }
    Ok(cfg)
}

fn parse_viewport(s: &str) -> Result<[f64; 4], Error> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 4 {
        return Err(Error::Parse("viewport needs x0,y0,x1,y1".into()));
    }
    let mut out = [0.0; 4];
    for (i, p) in parts.iter().enumerate() {
        out[i] = p
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad viewport number {p:?}")))?;
    }
    Ok(out)
}

fn load_form(spec: &Option<String>) -> Result<QuadraticForm, Error> {
    let spec = spec
        .as_deref()
        .ok_or_else(|| Error::Parse("missing --form".into()))?;
    match spec {
        "euclidean" => Ok(QuadraticForm::euclidean2()),
        "minkowski" => Ok(QuadraticForm::minkowski2()),
        "degenerate" => Ok(QuadraticForm::degenerate2()),
        path => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Parse(format!("cannot read form {path:?}: {e}")))?;
            let json: schema::FormJson = serde_json::from_str(&text)
                .map_err(|e| Error::Parse(format!("bad form JSON: {e}")))?;
            schema::form_from_json(&json)
        }
    }
}

fn load_points(path: &Option<PathBuf>) -> Result<PointSet, Error> {
    let path = path
        .as_ref()
        .ok_or_else(|| Error::Parse("missing --points".into()))?;
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read points {path:?}: {e}")))?;
    let json: schema::PointSetJson = serde_json::from_str(&text)
        .map_err(|e| Error::Parse(format!("bad point set JSON: {e}")))?;
    schema::points_from_json(&json)
}

fn emit(common: &CommonArgs, value: &impl serde::Serialize) -> Result<(), Error> {
    let mut text = serde_json::to_string_pretty(value)
        .map_err(|e| Error::Assertion(format!("serialization failed: {e}")))?;
    text.push('\n');
    match &common.out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Error::Parse(format!("cannot write {path:?}: {e}"))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn tolerance_of(common: &CommonArgs, cfg: &Config) -> f64 {
    common
        .tolerance
        .or(cfg.tolerance)
        .unwrap_or(qdelaunay_core::edgeweights::WEIGHT_TOLERANCE)
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Del(common) => {
            let q = load_form(&common.form)?;
            let xs = load_points(&common.points)?;
            let complex = delaunay(&q, &xs)?;
            emit(&common, &schema::decomposition_to_json(&q, &complex))
        }
        Command::Full(common) => {
            let q = load_form(&common.form)?;
            let xs = load_points(&common.points)?;
            let complex = full_decomposition(&q, &xs)?;
            emit(&common, &schema::decomposition_to_json(&q, &complex))
        }
        Command::Voronoi { common, inverse } => {
            let cfg = load_config(&common.config)?;
            let q = load_form(&common.form)?;
            let xs = load_points(&common.points)?;
            let cells = if inverse { inverse_voronoi(&q, &xs)? } else { voronoi(&q, &xs)? };
            let clip = cfg.viewport.map(|v| {
                [
                    rat_approx(v[0]),
                    rat_approx(v[1]),
                    rat_approx(v[2]),
                    rat_approx(v[3]),
                ]
            });
            emit(&common, &schema::voronoi_to_json(&cells, inverse, clip.as_ref()))
        }
        Command::Angles(common) => {
            let q = load_form(&common.form)?;
            let xs = load_points(&common.points)?;
            let complex = delaunay(&q, &xs)?;
            let data = angle_data(&q, &complex)?;
            emit(&common, &schema::angle_report_to_json(&data))
        }
        Command::Weights(common) => {
            let q = load_form(&common.form)?;
            let xs = load_points(&common.points)?;
            let complex = delaunay(&q, &xs)?;
            let graph = weights_from_delaunay(&q, &complex)?;
            emit(&common, &schema::weighted_graph_to_json(&graph))
        }
        Command::ValidateWeights { common, graph } => {
            let cfg = load_config(&common.config)?;
            let tol = tolerance_of(&common, &cfg);
            let text = std::fs::read_to_string(&graph)
                .map_err(|e| Error::Parse(format!("cannot read graph {graph:?}: {e}")))?;
            let json: schema::WeightedGraphJson = serde_json::from_str(&text)
                .map_err(|e| Error::Parse(format!("bad graph JSON: {e}")))?;
            let g = schema::weighted_graph_from_json(&json)?;
            let disk = validate_disk(&g, tol)?;
            let sphere_graph = augment_to_sphere(&g)?;
            let sphere = validate_sphere(&sphere_graph, tol)?;
            emit(&common, &schema::weight_report_to_json(&disk, &sphere))
        }
        Command::Proximity { common, graph_kind } => {
            let q = load_form(&common.form)?;
            let xs = load_points(&common.points)?;
            let mut out = serde_json::Map::new();
            out.insert("schema".into(), serde_json::json!(SCHEMA));
            let want = |k: &str| graph_kind == "all" || graph_kind == k;
            if want("mst") {
                let g = mst(&q, &xs)?;
                out.insert(
                    "mst".into(),
                    serde_json::to_value(schema::graph_to_json("mst", &g)).unwrap(),
                );
            }
            if want("rng") {
                let g = rng(&q, &xs)?;
                out.insert(
                    "rng".into(),
                    serde_json::to_value(schema::graph_to_json("rng", &g)).unwrap(),
                );
            }
            if want("gabriel") && !q.is_degenerate() {
                let g = gabriel(&q, &xs)?;
                out.insert(
                    "gabriel".into(),
                    serde_json::to_value(schema::graph_to_json("gabriel", &g)).unwrap(),
                );
            }
            if !["all", "mst", "rng", "gabriel"].contains(&graph_kind.as_str()) {
                return Err(Error::Parse(format!("unknown graph kind {graph_kind:?}")));
            }
            emit(&common, &serde_json::Value::Object(out))
        }
        Command::Interp { common, p } => {
            let q = load_form(&common.form)?;
            let xs = load_points(&common.points)?;
            let norm = match p.as_str() {
                "1" => LpNorm::L1,
                "2" => LpNorm::L2,
                "inf" => LpNorm::LInf,
                other => return Err(Error::Parse(format!("unknown norm {other:?}"))),
            };
            let report = optimality_check(&q, &xs, norm)?;
            emit(&common, &schema::interp_report_to_json(&report))
        }
        Command::LimitCheck { common, t_values } => {
            let q = load_form(&common.form)?;
            let path = common
                .points
                .as_ref()
                .ok_or_else(|| Error::Parse("missing --points (first-order data)".into()))?;
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Parse(format!("cannot read {path:?}: {e}")))?;
            let json: schema::FirstOrderJson = serde_json::from_str(&text)
                .map_err(|e| Error::Parse(format!("bad first-order JSON: {e}")))?;
            let (m, base, velocities) = schema::first_order_from_json(&json);
            let ts: Vec<Rat> = t_values
                .split(',')
                .map(|t| parse_rat(t.trim()))
                .collect::<Result<_, _>>()?;
            let report = limit_harness(&q, m, &base, &velocities, &ts)?;
            emit(&common, &schema::limit_report_to_json(&report))
        }
        Command::MoebiusCheck { common, path } => {
            let q = load_form(&common.form)?;
            let xs = load_points(&common.points)?;
            let text = std::fs::read_to_string(&path)
                .map_err(|e| Error::Parse(format!("cannot read path {path:?}: {e}")))?;
            let json: schema::MoebiusPathJson = serde_json::from_str(&text)
                .map_err(|e| Error::Parse(format!("bad path JSON: {e}")))?;
            let samples = schema::moebius_path_from_json(&q, &json)?;
            let g = samples
                .last()
                .ok_or_else(|| Error::Parse("empty Moebius path".into()))?;
            let report = moebius_delaunay_check(&q, &xs, g, &samples)?;
            emit(&common, &schema::moebius_report_to_json(&report))
        }
        Command::LiftGraph(common) => {
            let q = load_form(&common.form)?;
            let xs = load_points(&common.points)?;
            let lifted = lift(&q, &xs)?;
            let facets = convex_hull(&lifted.lifted)?;
            emit(&common, &schema::lift_to_json(&lifted.lifted, &facets)?)
        }
        Command::Render { common, svg, layers, viewport, samples } => {
            let cfg = load_config(&common.config)?;
            let q = load_form(&common.form)?;
            let xs = load_points(&common.points)?;
            let complex = delaunay(&q, &xs)?;
            let layer_set: BTreeSet<Layer> = layers
                .split(',')
                .map(|l| Layer::parse(l.trim()))
                .collect::<Result<_, _>>()?;
            let spec = RenderSpec {
                viewport: match &viewport {
                    Some(v) => Some(parse_viewport(v)?),
                    None => cfg.viewport,
                },
                samples: samples.or(cfg.samples).unwrap_or(64),
                layers: layer_set.clone(),
            };
            let vor;
            let mut input = RenderInput { complex: Some(&complex), ..Default::default() };
            if layer_set.contains(&Layer::Voronoi) {
                vor = voronoi(&q, &xs)?;
                input.voronoi = Some(&vor);
            }
            let tree;
            let neighbor;
            let gab;
            if layer_set.contains(&Layer::Mst) {
                tree = mst(&q, &xs)?;
                input.graphs.push(("mst", &tree));
            }
            if layer_set.contains(&Layer::Rng) {
                neighbor = rng(&q, &xs)?;
                input.graphs.push(("rng", &neighbor));
            }
            if layer_set.contains(&Layer::Gabriel) {
                gab = gabriel(&q, &xs)?;
                input.graphs.push(("gabriel", &gab));
            }
            let doc = render::render_svg(&input, &spec)?;
            std::fs::write(&svg, doc)
                .map_err(|e| Error::Parse(format!("cannot write {svg:?}: {e}")))?;
            Ok(())
        }
    }
}

fn rat_approx(x: f64) -> Rat {
    let scaled = (x * 4096.0).round() as i64;
    Rat::new(scaled.into(), 4096.into()) * rat(1)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let witness = serde_json::json!({
                "schema": SCHEMA,
                "error": e.to_string(),
                "input_error": e.is_input_error(),
            });
            eprintln!("{witness}");
            if e.is_input_error() {
                ExitCode::from(2)
            } else {
                ExitCode::from(3)
            }
        }
    }
}
