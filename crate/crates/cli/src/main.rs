//! `nncurv`: runs the geometric operations on JSON inputs and writes JSON or
//! CSV reports.
//!
//! Exit status: 0 on success, 2 for malformed input or parameters, 3 when an
//! input violates a hypothesis of the requested operation, 4 when `verify`
//! finds a failing criterion.

mod output;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use nncurv::approx::{
    approx_boundaries, approx_doubles, approx_flatten, approx_segments, approx_to_segment,
    Certificate,
};
use nncurv::classify::{admissible, classify, table, SurfaceType};
use nncurv::convex::{hausdorff_distance, minkowski_combine};
use nncurv::intrinsic::{
    boundary_metric, double_metric, realize_disc, realize_sphere, MetricSample, Resolution,
    SheetTag, Site,
};
use nncurv::io::{body_from_json, body_to_json, direction_from_json, sample_to_json};
use nncurv::moduli::{
    cd_density_check, cstar_distance, cstar_quotient_distance, flat_quotient_distance,
    interval_contract, lattice_reduce, structure_invariants, ConcaveDensity, FlatStructure,
    LatticeBasis, Vec2,
};
use nncurv::{ConvexBody, Direction, Vec3};
use nncurv_verify::{flatten_sweep, mesh_sweep, run_suite, PlotRow, SuiteConfig};

use output::Report;

#[derive(Parser)]
#[command(
    name = "nncurv",
    version,
    about = "Convex-body models of nonnegatively curved surfaces"
)]
struct Cli {
    #[command(flatten)]
    run: RunOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct RunOpts {
    /// Write the report to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Report format; defaults to csv for `plotdata` and json otherwise.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Geodesic graph spacing is diam / 2^mesh_level.
    #[arg(long, global = true, default_value_t = 4)]
    mesh_level: u32,
    /// Default sample sites are diam / 2^(sample_level+1) apart.
    #[arg(long, global = true, default_value_t = 2)]
    sample_level: u32,
    /// Number of default sites along the boundary of a planar body.
    #[arg(long, global = true, default_value_t = 128)]
    boundary_res: usize,
    /// Grid size for generated densities.
    #[arg(long, global = true, default_value_t = 65)]
    grid: usize,
}

impl RunOpts {
    fn res(&self) -> Resolution {
        Resolution {
            mesh_level: self.mesh_level,
            sample_level: self.sample_level,
            boundary_res: self.boundary_res,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Convex body operations.
    #[command(subcommand)]
    Body(BodyCmd),
    /// Intrinsic metrics of realized surfaces.
    #[command(subcommand)]
    Metric(MetricCmd),
    /// Run an approximation lemma and print its certificate.
    Approx(ApproxArgs),
    /// Moduli coordinates and distances.
    #[command(subcommand)]
    Moduli(ModuliCmd),
    /// Admissible spaces by dimension and splitting degree.
    Classify(ClassifyArgs),
    /// Run the acceptance suite.
    Verify(VerifyArgs),
    /// Long-format sweep data for external plotting.
    #[command(subcommand)]
    Plotdata(PlotCmd),
}

#[derive(Subcommand)]
enum BodyCmd {
    /// Extreme points of a point set, given as a body file or a bare array.
    Hull {
        points: PathBuf,
    },
    Steiner {
        body: PathBuf,
    },
    Hausdorff {
        a: PathBuf,
        b: PathBuf,
    },
    /// s·A + t·B.
    Minkowski {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, default_value_t = 1.0)]
        s: f64,
        #[arg(long, default_value_t = 1.0)]
        t: f64,
    },
}

#[derive(Subcommand)]
enum MetricCmd {
    /// The sphere realization on its default sites.
    Sphere { body: PathBuf },
    /// The disc realization for a mirror direction.
    Disc {
        body: PathBuf,
        /// Mirror normal as a JSON array, e.g. "[0,0,1]".
        #[arg(long)]
        axis: String,
    },
    /// Surface distances between given points of a solid body.
    Boundary {
        body: PathBuf,
        /// JSON array of points, inline or as a file path.
        #[arg(long)]
        points: String,
    },
    /// Distances in the double of a planar body.
    Double {
        polygon: PathBuf,
        /// JSON array of {"pos": [x,y,z], "sheet": "sheet1" | "sheet2" | "boundary"}, inline or as a file path.
        #[arg(long)]
        sites: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum LemmaArg {
    #[value(name = "3to3")]
    Boundaries,
    #[value(name = "3to2")]
    Flatten,
    #[value(name = "3to1")]
    SolidToSegment,
    #[value(name = "2to1")]
    PlanarToSegment,
    #[value(name = "2to2")]
    Doubles,
    #[value(name = "1to1")]
    Segments,
}

#[derive(Args)]
struct ApproxArgs {
    kind: LemmaArg,
    /// Source body.
    #[arg(long)]
    a: PathBuf,
    /// Target body for the lemmas between two bodies.
    #[arg(long)]
    b: Option<PathBuf>,
    /// Collapse direction for the flattening lemmas, as a JSON array.
    #[arg(long)]
    v: Option<String>,
}

#[derive(Subcommand)]
enum ModuliCmd {
    /// Moduli coordinates of a flat structure file.
    Invariants { structure: PathBuf },
    /// Canonical lattice basis.
    Reduce {
        /// Basis entries v1x,v1y,v2x,v2y.
        #[arg(long, value_delimiter = ',', required = true, allow_hyphen_values = true)]
        basis: Vec<f64>,
    },
    /// Quotient distance on a flat structure, or C* distances of two densities.
    Distances {
        #[arg(long, requires_all = ["p", "q"], conflicts_with_all = ["f", "g"])]
        structure: Option<PathBuf>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        p: Option<Vec<f64>>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        q: Option<Vec<f64>>,
        #[arg(long, requires = "g")]
        f: Option<PathBuf>,
        #[arg(long)]
        g: Option<PathBuf>,
    },
    /// Admissibility of a density file; without one, of 1, t and t² at --grid.
    DensityCheck { density: Option<PathBuf> },
    /// The contraction t + (1-t)·f.
    Contract {
        density: PathBuf,
        #[arg(long)]
        t: f64,
    },
}

#[derive(Args)]
struct ClassifyArgs {
    #[arg(long, requires = "k")]
    dim: Option<u32>,
    #[arg(long)]
    k: Option<u32>,
    /// Check one name against the admissible list.
    #[arg(long, conflicts_with_all = ["dim", "k"])]
    name: Option<String>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value_t = 7)]
    seed: u64,
    /// Comma-separated criterion numbers; all when absent.
    #[arg(long, value_delimiter = ',')]
    only: Vec<u32>,
}

#[derive(Subcommand)]
enum PlotCmd {
    /// Cube opposite-face distance by mesh level against the unfolding value.
    Mesh {
        #[arg(long, default_value_t = 2)]
        from: u32,
        #[arg(long, default_value_t = 5)]
        to: u32,
    },
    /// Slab flattening distortion by thickness against its bound.
    Flatten {
        #[arg(long, value_delimiter = ',', default_value = "0.2,0.1,0.05")]
        h: Vec<f64>,
    },
    /// Re-emit rows saved as a JSON array of {parameter, measured, bound, allowance}.
    Report { rows: PathBuf },
}

/// Why a command stopped, mapped to the exit status.
#[derive(Debug)]
pub enum Failure {
    Input(String),
    Hypothesis(String),
    /// The report was produced but records failures.
    Invariant(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 2,
            Failure::Hypothesis(_) => 3,
            Failure::Invariant(_) => 4,
        }
    }
}

impl From<nncurv::Error> for Failure {
    fn from(e: nncurv::Error) -> Self {
        if e.is_hypothesis() {
            Failure::Hypothesis(e.to_string())
        } else {
            Failure::Input(e.to_string())
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

/// Inline JSON, or the contents of the named file.
fn json_arg(arg: &str) -> Result<String, Failure> {
    let p = Path::new(arg);
    if !arg.trim_start().starts_with(['[', '{']) && p.exists() {
        read(p)
    } else {
        Ok(arg.to_string())
    }
}

fn parse<T: serde::de::DeserializeOwned>(text: &str, what: &str) -> Result<T, Failure> {
    serde_json::from_str(text).map_err(|e| Failure::Input(format!("malformed {what}: {e}")))
}

fn body(path: &Path) -> Result<ConvexBody, Failure> {
    Ok(body_from_json(&read(path)?)?)
}

fn points(text: &str) -> Result<Vec<Vec3>, Failure> {
    let raw: Vec<[f64; 3]> = parse(text, "point list")?;
    Ok(raw.iter().map(|p| Vec3::new(p[0], p[1], p[2])).collect())
}

fn direction(text: &str) -> Result<Direction, Failure> {
    Ok(direction_from_json(text)?)
}

fn body_report(b: &ConvexBody) -> Result<Report, Failure> {
    let mut v: serde_json::Value = parse(&body_to_json(b), "body")?;
    v["dim"] = b.dim().into();
    v["diameter"] = b.diameter().into();
    Ok(Report::Json(v))
}

fn sample_report(s: &MetricSample) -> Result<Report, Failure> {
    Ok(Report::Json(parse(&sample_to_json(s), "sample")?))
}

fn vec3(v: &Vec3) -> [f64; 3] {
    [v.x, v.y, v.z]
}

fn run_body(cmd: &BodyCmd) -> Result<Report, Failure> {
    match cmd {
        BodyCmd::Hull { points: path } => {
            let text = read(path)?;
            let b = match body_from_json(&text) {
                Ok(b) => b,
                Err(_) => ConvexBody::from_points(&points(&text)?)?,
            };
            body_report(&b)
        }
        BodyCmd::Steiner { body: p } => {
            Report::json(&json!({ "steiner": vec3(&body(p)?.steiner()) }))
        }
        BodyCmd::Hausdorff { a, b } => {
            Report::json(&json!({ "hausdorff": hausdorff_distance(&body(a)?, &body(b)?) }))
        }
        BodyCmd::Minkowski { a, b, s, t } => {
            body_report(&minkowski_combine(*s, &body(a)?, *t, &body(b)?)?)
        }
    }
}

#[derive(serde::Deserialize)]
struct SiteArg {
    pos: [f64; 3],
    sheet: SheetTag,
}

fn run_metric(cmd: &MetricCmd, res: &Resolution) -> Result<Report, Failure> {
    let s = match cmd {
        MetricCmd::Sphere { body: p } => realize_sphere(&body(p)?, res)?,
        MetricCmd::Disc { body: p, axis } => {
            realize_disc(&body(p)?, &direction(&json_arg(axis)?)?, res)?
        }
        MetricCmd::Boundary {
            body: p,
            points: pts,
        } => boundary_metric(&body(p)?, res.mesh_level, &points(&json_arg(pts)?)?)?,
        MetricCmd::Double { polygon, sites } => {
            let raw: Vec<SiteArg> = parse(&json_arg(sites)?, "site list")?;
            let sites: Vec<Site> = raw
                .iter()
                .map(|s| Site::on(Vec3::new(s.pos[0], s.pos[1], s.pos[2]), s.sheet))
                .collect();
            double_metric(&body(polygon)?, &sites)?
        }
    };
    sample_report(&s)
}

fn run_approx(args: &ApproxArgs, res: &Resolution) -> Result<Report, Failure> {
    let a = body(&args.a)?;
    let second = || -> Result<ConvexBody, Failure> {
        args.b
            .as_deref()
            .map(body)
            .unwrap_or_else(|| Err(Failure::Input("--b is required for this lemma".into())))
    };
    let dir = || -> Result<Direction, Failure> {
        args.v
            .as_deref()
            .map(|v| json_arg(v).and_then(|t| direction(&t)))
            .unwrap_or_else(|| Err(Failure::Input("--v is required for this lemma".into())))
    };
    let need = |dim: usize| -> Result<(), Failure> {
        if a.dim() == dim {
            Ok(())
        } else {
            Err(Failure::Input(format!(
                "source body has dimension {}, this lemma takes {dim}",
                a.dim()
            )))
        }
    };
    let (_, cert): (_, Certificate) = match args.kind {
        LemmaArg::Boundaries => {
            need(3)?;
            approx_boundaries(&a, &second()?, res)?
        }
        LemmaArg::Flatten => {
            need(3)?;
            approx_flatten(&a, &dir()?, res)?
        }
        LemmaArg::SolidToSegment => {
            need(3)?;
            approx_to_segment(&a, &dir()?, res)?
        }
        LemmaArg::PlanarToSegment => {
            need(2)?;
            approx_to_segment(&a, &dir()?, res)?
        }
        LemmaArg::Doubles => {
            need(2)?;
            approx_doubles(&a, &second()?, res)?
        }
        LemmaArg::Segments => {
            need(1)?;
            approx_segments(&a, &second()?, res)?
        }
    };
    let mut v = serde_json::to_value(&cert).map_err(|e| Failure::Input(e.to_string()))?;
    v["holds"] = cert.holds().into();
    Ok(Report::Json(v))
}

fn density(path: &Path) -> Result<ConcaveDensity, Failure> {
    parse(&read(path)?, "density")
}

fn run_moduli(cmd: &ModuliCmd, grid: usize) -> Result<Report, Failure> {
    match cmd {
        ModuliCmd::Invariants { structure } => {
            let s: FlatStructure = parse(&read(structure)?, "flat structure")?;
            Report::json(
                &json!({ "kind": s.kind().name(), "invariants": structure_invariants(&s) }),
            )
        }
        ModuliCmd::Reduce { basis } => {
            if basis.len() != 4 {
                return Err(Failure::Input(format!("--basis takes 4 numbers, got {}", basis.len())));
            }
            let b =
                LatticeBasis::new(Vec2::new(basis[0], basis[1]), Vec2::new(basis[2], basis[3]))?;
            let r = lattice_reduce(&b)?;
            Report::json(&json!({ "v1": [r.v1.x, r.v1.y], "v2": [r.v2.x, r.v2.y] }))
        }
        ModuliCmd::Distances {
            structure,
            p,
            q,
            f,
            g,
        } => match (structure, f, g) {
            (Some(s), _, _) => {
                let s: FlatStructure = parse(&read(s)?, "flat structure")?;
                let (p, q) = (
                    p.as_deref().unwrap_or_default(),
                    q.as_deref().unwrap_or_default(),
                );
                Report::json(
                    &json!({ "kind": s.kind().name(), "distance": flat_quotient_distance(&s, p, q)? }),
                )
            }
            (None, Some(f), Some(g)) => {
                let (f, g) = (density(f)?, density(g)?);
                Report::json(&json!({
                    "cstar": cstar_distance(&f, &g)?,
                    "quotient": cstar_quotient_distance(&f, &g)?,
                }))
            }
            _ => Err(Failure::Input(
                "give --structure with --p and --q, or --f and --g".into(),
            )),
        },
        ModuliCmd::DensityCheck {
            density: Some(path),
        } => Report::json(&cd_density_check(&density(path)?)),
        ModuliCmd::DensityCheck { density: None } => {
            let cases: [(&str, fn(f64) -> f64); 3] =
                [("1", |_| 1.0), ("t", |t| t), ("t^2", |t| t * t)];
            let mut out = serde_json::Map::new();
            for (name, f) in cases {
                let g = ConcaveDensity::from_fn(grid, 2.0, f)?;
                out.insert(
                    name.into(),
                    serde_json::to_value(cd_density_check(&g))
                        .map_err(|e| Failure::Input(e.to_string()))?,
                );
            }
            Ok(Report::Json(out.into()))
        }
        ModuliCmd::Contract { density: path, t } => {
            Report::json(&interval_contract(*t, &density(path)?)?)
        }
    }
}

/// One cell prints as a JSON list of names; the whole table, or any csv
/// output, as rows `(dim, k, space)`.
fn run_classify(args: &ClassifyArgs, format: Option<Format>) -> Result<Report, Failure> {
    if let Some(name) = &args.name {
        return Report::json(&json!({ "name": name, "admissible": admissible(name) }));
    }
    let cells: Vec<(u32, u32, Vec<SurfaceType>)> = match (args.dim, args.k) {
        (Some(d), Some(k)) => vec![(d, k, classify(d, k)?)],
        _ => table()
            .into_iter()
            .map(|r| (r.dim, r.k, r.spaces))
            .collect(),
    };
    if args.dim.is_some() && format != Some(Format::Csv) {
        return Report::json(&cells[0].2);
    }
    let rows = cells
        .iter()
        .flat_map(|(d, k, spaces)| {
            spaces
                .iter()
                .map(move |s| vec![d.to_string(), k.to_string(), s.name().to_string()])
        })
        .collect();
    Ok(Report::Table {
        header: vec!["dim", "k", "space"],
        rows,
    })
}

fn plot_table(rows: &[PlotRow]) -> Report {
    Report::Table {
        header: vec!["parameter", "measured", "bound", "allowance"],
        rows: rows
            .iter()
            .map(|r| {
                vec![
                    r.parameter.to_string(),
                    r.measured.to_string(),
                    r.bound.to_string(),
                    r.allowance.to_string(),
                ]
            })
            .collect(),
    }
}

#[derive(serde::Deserialize, Serialize)]
struct SavedRow {
    parameter: f64,
    measured: f64,
    bound: f64,
    allowance: f64,
}

fn run_plot(cmd: &PlotCmd, res: &Resolution) -> Result<Report, Failure> {
    let rows = match cmd {
        PlotCmd::Mesh { from, to } => mesh_sweep(*from..=*to)?,
        PlotCmd::Flatten { h } => flatten_sweep(h, res)?,
        PlotCmd::Report { rows } => {
            let saved: Vec<SavedRow> = parse(&read(rows)?, "plot rows")?;
            saved
                .into_iter()
                .map(|r| PlotRow {
                    parameter: r.parameter,
                    measured: r.measured,
                    bound: r.bound,
                    allowance: r.allowance,
                })
                .collect()
        }
    };
    Ok(plot_table(&rows))
}

fn run(cli: &Cli) -> Result<(), Failure> {
    let res = cli.run.res();
    let mut verdict = Ok(());
    let (report, default) = match &cli.command {
        Command::Body(c) => (run_body(c)?, Format::Json),
        Command::Metric(c) => (run_metric(c, &res)?, Format::Json),
        Command::Approx(a) => (run_approx(a, &res)?, Format::Json),
        Command::Moduli(c) => (run_moduli(c, cli.run.grid)?, Format::Json),
        Command::Classify(a) => (run_classify(a, cli.run.format)?, Format::Json),
        Command::Verify(a) => {
            let mut cfg = SuiteConfig::new(a.seed);
            cfg.res = res;
            let report = run_suite(&cfg, &a.only);
            for c in &report.criteria {
                eprintln!("{}", c.line());
            }
            if !report.all_passed() {
                verdict = Err(Failure::Invariant(format!(
                    "{} of {} criteria failed",
                    report.failed,
                    report.criteria.len()
                )));
            }
            let out = match cli.run.format {
                Some(Format::Csv) => Report::Table {
                    header: vec!["id", "title", "passed", "cases", "failures", "worst_ratio"],
                    rows: report
                        .criteria
                        .iter()
                        .map(|c| {
                            vec![
                                c.id.to_string(),
                                c.title.to_string(),
                                c.passed.to_string(),
                                c.cases.to_string(),
                                c.failures.to_string(),
                                c.worst_ratio.to_string(),
                            ]
                        })
                        .collect(),
                },
                _ => Report::json(&report)?,
            };
            (out, Format::Json)
        }
        Command::Plotdata(c) => (run_plot(c, &res)?, Format::Csv),
    };
    let text = match cli.run.format.unwrap_or(default) {
        Format::Json => report.render_json()?,
        Format::Csv => report.render_csv()?,
    };
    output::emit(&text, cli.run.out.as_deref())?;
    verdict
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Input(m) => eprintln!("error: {m}"),
                Failure::Hypothesis(m) => eprintln!("hypothesis violated: {m}"),
                Failure::Invariant(m) => eprintln!("verify: {m}"),
            }
            ExitCode::from(f.code())
        }
    }
}
