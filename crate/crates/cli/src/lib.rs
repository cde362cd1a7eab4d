//! Command implementations behind the `diskfold` binary.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;

use diskfold::geometry::{Disk, ExactScalar};
use diskfold::io::{parse_coloring, parse_disks, parse_shapes, write_coloring, write_disks, write_shapes};
use diskfold::online::{
    bound_formula, branch_count, default_base, run, AlgorithmConfig, AlgorithmKind, BoundParams, Mode,
    RunOutput,
};
use diskfold::oracles::{
    build_disk_graph, build_shape_graph, gen_random_disks, report_run, RatioReport, REPORT_HEADER, RNG_ID,
};
use diskfold::plane_coloring::{
    hsq_parameter, min_same_color_gap, pq_sigma_bound, pq_sigma_exact, records, validate_lstar,
    validate_solid, ColoringKind, PlaneColoring,
};
use diskfold::shapes::{gen_random_shapes, shape_config, shape_stream_adapter, ConvexShape};
use diskfold::tiling::{gamma, HexLattice};
use diskfold::Error;

/// Exit status: 0 success, 1 validation or verification failure, 2 usage.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    Failed,
}

/// Errors the user caused (exit 2), as opposed to failed checks (exit 1).
#[derive(Debug)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn usage(e: impl std::fmt::Display) -> anyhow::Error {
    UsageError(e.to_string()).into()
}

/// Library errors that mean "the input failed a check" rather than "the
/// command was malformed".
pub fn is_validation_error(e: &Error) -> bool {
    matches!(
        e,
        Error::DiameterOutOfRange { .. } | Error::RhoTooLarge { .. } | Error::InvalidColoring(_)
    )
}

fn lib(e: Error) -> anyhow::Error {
    if is_validation_error(&e) {
        anyhow::Error::new(e)
    } else {
        usage(e)
    }
}

#[derive(Parser, Debug)]
#[command(name = "diskfold", version, about = "Online coloring of disk graphs over hexagonal b-fold plane colorings")]
pub struct Cli {
    /// key=value file supplying defaults for long options of the command.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build, validate and inspect plane colorings.
    #[command(subcommand)]
    Plane(PlaneCommand),
    /// Run an online algorithm on an instance.
    Run(RunArgs),
    /// Run a seeded batch of instances and algorithms with verification.
    Bench(BenchArgs),
    /// Write bound curves as CSV.
    Curves(CurvesArgs),
}

#[derive(Subcommand, Debug)]
pub enum PlaneCommand {
    /// Write a coloring file.
    Build(BuildArgs),
    /// Check a coloring file at a given σ.
    Validate(ValidateArgs),
    /// Print the closed-form and exact σ of an (h², p, q)-coloring.
    Sigma(SigmaArgs),
    /// Print the record (h², p, q)-colorings.
    Records(RecordsArgs),
}

#[derive(Args, Debug)]
pub struct BuildArgs {
    #[arg(long)]
    pub h: u32,
    #[arg(long)]
    pub p: Option<i64>,
    #[arg(long)]
    pub q: Option<i64>,
    /// Build for this σ instead of explicit (p, q).
    #[arg(long)]
    pub sigma: Option<String>,
    /// pq, lstar3 or lstar6 (with --sigma).
    #[arg(long, default_value = "pq")]
    pub kind: String,
    /// Include the color of one tile per class.
    #[arg(long)]
    pub table: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct ValidateArgs {
    #[arg(long)]
    pub file: PathBuf,
    #[arg(long)]
    pub sigma: String,
}

#[derive(Args, Debug)]
pub struct SigmaArgs {
    #[arg(long)]
    pub h: u32,
    #[arg(long)]
    pub p: i64,
    #[arg(long)]
    pub q: i64,
}

#[derive(Args, Debug)]
pub struct RecordsArgs {
    /// Comma-separated h values.
    #[arg(long, default_value = "1,2,3", value_delimiter = ',')]
    pub h: Vec<u32>,
    #[arg(long, default_value = "1")]
    pub sigma_min: f64,
    /// Scan colorings whose closed-form σ is at most this.
    #[arg(long, default_value = "3")]
    pub sigma_max: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct RunArgs {
    #[arg(long)]
    pub algorithm: String,
    #[arg(long)]
    pub sigma: String,
    /// Layer parameter (b = h²) for folding algorithms.
    #[arg(long, default_value_t = 2)]
    pub h: u32,
    /// proper or l21.
    #[arg(long, default_value = "proper")]
    pub mode: String,
    /// Coloring file to use as base instead of the default construction.
    #[arg(long)]
    pub base: Option<PathBuf>,
    /// JSONL instance; disks unless --shapes.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Generate this many items instead of reading --input.
    #[arg(long)]
    pub generate: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long = "box", default_value_t = 20.0)]
    pub box_side: f64,
    /// Items are convex shapes; needs --rho.
    #[arg(long)]
    pub shapes: bool,
    /// Declared bound on outer/inner diameter ratio of shapes.
    #[arg(long)]
    pub rho: Option<String>,
    /// Per-vertex CSV output (stdout if absent).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Write the (generated) instance as JSONL.
    #[arg(long)]
    pub instance_out: Option<PathBuf>,
    /// Verify with the oracles and print a ratio report row.
    #[arg(long)]
    pub verify: bool,
    /// Append the ratio report row to this CSV.
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct BenchArgs {
    #[arg(long)]
    pub sigma: String,
    #[arg(long, default_value_t = 10)]
    pub instances: usize,
    #[arg(long, default_value_t = 60)]
    pub n: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long = "box", default_value_t = 8.0)]
    pub box_side: f64,
    /// Comma-separated algorithm ids.
    #[arg(long, value_delimiter = ',', default_value = "simple,branch-color,fold-shade,branch-fold")]
    pub algorithms: Vec<String>,
    /// Comma-separated h values for folding algorithms.
    #[arg(long, value_delimiter = ',', default_value = "1,3,8")]
    pub h: Vec<u32>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct CurvesArgs {
    #[arg(long, default_value = "curves")]
    pub out_dir: PathBuf,
    /// a, b, c or all.
    #[arg(long, default_value = "all")]
    pub which: String,
    /// Largest σ for curve (a).
    #[arg(long, default_value_t = 16.0)]
    pub sigma_max: f64,
    /// Largest ω for curve (b).
    #[arg(long, default_value_t = 1_000_000)]
    pub omega_max: u64,
    /// Comma-separated h values for curve (b).
    #[arg(long, value_delimiter = ',', default_value = "1,2,3,5")]
    pub h: Vec<u32>,
}

/// Reads `key=value` lines (`#` comments, blank lines ignored).
pub fn read_config(path: &Path) -> anyhow::Result<BTreeMap<String, String>> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let mut out = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| usage(format!("{}:{}: expected key=value", path.display(), i + 1)))?;
        out.insert(k.trim().replace('_', "-"), v.trim().to_string());
    }
    Ok(out)
}

/// Appends `--key value` for config entries not given on the command line.
/// `true`/`false` values toggle flags.
pub fn merge_config(args: Vec<String>) -> anyhow::Result<Vec<String>> {
    let pos = args.iter().position(|a| a == "--config");
    let path = match pos {
        Some(i) => args
            .get(i + 1)
            .cloned()
            .ok_or_else(|| usage("--config needs a file"))?,
        None => match args.iter().find_map(|a| a.strip_prefix("--config=")) {
            Some(p) => p.to_string(),
            None => return Ok(args),
        },
    };
    let config = read_config(Path::new(&path))?;
    let mut out = args.clone();
    for (k, v) in config {
        let flag = format!("--{}", k);
        let given = args.iter().any(|a| *a == flag || a.starts_with(&format!("{}=", flag)));
        if given || k == "config" {
            continue;
        }
        match v.as_str() {
            "true" => out.push(flag),
            "false" => {}
            _ => {
                out.push(flag);
                out.push(v);
            }
        }
    }
    Ok(out)
}

fn scalar(s: &str, what: &str) -> anyhow::Result<ExactScalar> {
    s.parse().map_err(|e| usage(format!("{}: {}", what, e)))
}

fn emit(out: &Option<PathBuf>, text: &str) -> anyhow::Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{}", text);
            Ok(())
        }
    }
}

pub fn execute(cli: Cli) -> anyhow::Result<Status> {
    match cli.command {
        Command::Plane(PlaneCommand::Build(a)) => plane_build(a),
        Command::Plane(PlaneCommand::Validate(a)) => plane_validate(a),
        Command::Plane(PlaneCommand::Sigma(a)) => plane_sigma(a),
        Command::Plane(PlaneCommand::Records(a)) => plane_records(a),
        Command::Run(a) => cmd_run(a),
        Command::Bench(a) => cmd_bench(a),
        Command::Curves(a) => cmd_curves(a),
    }
}

fn lattice(h: u32) -> anyhow::Result<Arc<HexLattice>> {
    Ok(Arc::new(HexLattice::new(h).map_err(lib)?))
}

fn plane_build(a: BuildArgs) -> anyhow::Result<Status> {
    let lat = lattice(a.h)?;
    let kind = ColoringKind::parse(&a.kind).map_err(usage)?;
    let (coloring, sigma_field) = match (&a.sigma, a.p, a.q) {
        (Some(s), None, None) => {
            let sigma = scalar(s, "sigma")?;
            let c = match kind {
                ColoringKind::Pq => PlaneColoring::hsq(lat, &sigma),
                ColoringKind::LStar3 => PlaneColoring::lstar_small_sigma(lat, &sigma),
                ColoringKind::LStar6 => PlaneColoring::lstar_general(lat, &sigma),
            }
            .map_err(lib)?;
            let field = match kind {
                ColoringKind::Pq => format!("{:.9}", min_same_color_gap(&c).value),
                _ => s.clone(),
            };
            (c, field)
        }
        (None, Some(p), Some(q)) => {
            if kind != ColoringKind::Pq {
                return Err(usage("explicit --p/--q builds pq colorings only"));
            }
            let c = PlaneColoring::pq(lat, p, q).map_err(lib)?;
            let field = format!("{:.9}", min_same_color_gap(&c).value);
            (c, field)
        }
        _ => return Err(usage("give either --sigma or both --p and --q")),
    };
    emit(&a.out, &write_coloring(&coloring, &sigma_field, a.table))?;
    eprintln!("k={} b={} sigma={}", coloring.k(), coloring.b(), sigma_field);
    Ok(Status::Ok)
}

fn plane_validate(a: ValidateArgs) -> anyhow::Result<Status> {
    let text = fs::read_to_string(&a.file).with_context(|| format!("reading {}", a.file.display()))?;
    let file = parse_coloring(&text).map_err(usage)?;
    let sigma = scalar(&a.sigma, "sigma")?;
    let coloring = match file.build() {
        Ok(c) => c,
        Err(e) => {
            println!("result=fail reason={}", e);
            return Ok(Status::Failed);
        }
    };
    let (passed, detail) = if coloring.kind().is_lstar() {
        let r = validate_lstar(&coloring, &sigma).map_err(lib)?;
        let v = r.violation.map(|v| {
            format!(
                "condition={} tile_a=({},{}) tile_b=({},{}) gap_sq={}",
                v.condition, v.tile_a.i, v.tile_a.j, v.tile_b.i, v.tile_b.j, v.gap_sq
            )
        });
        (r.passed, format!("pairs_checked={} {}", r.pairs_checked, v.unwrap_or_default()))
    } else {
        let r = validate_solid(&coloring, &sigma).map_err(lib)?;
        let v = r.violation.map(|v| {
            format!(
                "condition={} tile_a=({},{}) tile_b=({},{}) gap_sq={}",
                v.condition, v.tile_a.i, v.tile_a.j, v.tile_b.i, v.tile_b.j, v.gap_sq
            )
        });
        (
            r.passed,
            format!(
                "pairs_checked={} points_sampled={} {}",
                r.pairs_checked,
                r.points_sampled,
                v.unwrap_or_default()
            ),
        )
    };
    println!(
        "result={} kind={} k={} b={} sigma={} {}",
        if passed { "pass" } else { "fail" },
        coloring.kind().id(),
        coloring.k(),
        coloring.b(),
        a.sigma,
        detail.trim_end()
    );
    Ok(if passed { Status::Ok } else { Status::Failed })
}

fn plane_sigma(a: SigmaArgs) -> anyhow::Result<Status> {
    let bound = pq_sigma_bound(a.h, a.p, a.q).map_err(usage)?;
    println!("bound={:.9} valid={}", bound.value, bound.valid);
    match pq_sigma_exact(lattice(a.h)?, a.p, a.q) {
        Ok(s) => {
            println!(
                "exact={:.9} sq={} witness=({},{})",
                s.value, s.sq, s.witness.i, s.witness.j
            );
            Ok(Status::Ok)
        }
        Err(e) => {
            println!("exact=rejected reason={}", e);
            Ok(Status::Failed)
        }
    }
}

pub fn records_csv(rows: &[diskfold::plane_coloring::RecordRow]) -> String {
    let mut out = String::from("sigma,k_over_b,b,k,p,q\n");
    for r in rows {
        writeln!(out, "{:.5},{:.5},{},{},{},{}", r.sigma, r.k_over_b, r.b, r.k, r.p, r.q).unwrap();
    }
    out
}

fn plane_records(a: RecordsArgs) -> anyhow::Result<Status> {
    let rows = records(&a.h, a.sigma_min, a.sigma_max).map_err(lib)?;
    emit(&a.out, &records_csv(&rows))?;
    Ok(Status::Ok)
}

/// A disk or shape instance.
pub enum Instance {
    Disks(Vec<Disk>),
    Shapes(Vec<ConvexShape>),
}

impl Instance {
    pub fn len(&self) -> usize {
        match self {
            Instance::Disks(d) => d.len(),
            Instance::Shapes(s) => s.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

fn load_instance(a: &RunArgs, sigma: &ExactScalar, rho: Option<&ExactScalar>) -> anyhow::Result<Instance> {
    match (&a.input, a.generate) {
        (Some(path), None) => {
            let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            Ok(if a.shapes {
                Instance::Shapes(parse_shapes(&text).map_err(lib)?)
            } else {
                Instance::Disks(parse_disks(&text).map_err(lib)?)
            })
        }
        (None, Some(n)) => Ok(if a.shapes {
            let rho = rho.ok_or_else(|| usage("--shapes needs --rho"))?;
            Instance::Shapes(gen_random_shapes(n, sigma, rho, a.box_side, a.seed))
        } else {
            Instance::Disks(gen_random_disks(n, sigma, a.box_side, a.seed))
        }),
        _ => Err(usage("give exactly one of --input and --generate")),
    }
}

fn base_from_file(path: &Path) -> anyhow::Result<Arc<PlaneColoring>> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let file = parse_coloring(&text).map_err(usage)?;
    Ok(Arc::new(file.build().map_err(lib)?))
}

/// Per-vertex CSV of a run, with the metadata as a leading comment.
pub fn run_csv(out: &RunOutput) -> String {
    let branches = out.metadata.branches;
    let mut s = String::new();
    writeln!(
        s,
        "# {} max_branches={} rng={}",
        serde_json::to_string(&out.metadata).expect("metadata serializes"),
        branches,
        RNG_ID
    )
    .unwrap();
    s.push_str("id,branch,color,layer,tile_i,tile_j,flat_color\n");
    for (id, v) in out.colors.iter().enumerate() {
        let (ti, tj) = v.tile.map(|t| (t.i.to_string(), t.j.to_string())).unwrap_or_default();
        writeln!(
            s,
            "{},{},{},{},{},{},{}",
            id,
            v.color.branch,
            v.color.value,
            v.layer,
            ti,
            tj,
            v.color.flat(branches)
        )
        .unwrap();
    }
    s
}

fn cmd_run(a: RunArgs) -> anyhow::Result<Status> {
    let kind = AlgorithmKind::parse(&a.algorithm).map_err(usage)?;
    let mode = Mode::parse(&a.mode).map_err(usage)?;
    let sigma = scalar(&a.sigma, "sigma")?;
    let rho = a.rho.as_deref().map(|r| scalar(r, "rho")).transpose()?;
    let base = match &a.base {
        Some(p) => Some(base_from_file(p)?),
        None => None,
    };
    let instance = load_instance(&a, &sigma, rho.as_ref())?;
    if let Some(p) = &a.instance_out {
        let text = match &instance {
            Instance::Disks(d) => write_disks(d),
            Instance::Shapes(s) => write_shapes(s),
        };
        fs::write(p, text).with_context(|| format!("writing {}", p.display()))?;
    }
    let (config, output, graph) = match &instance {
        Instance::Disks(disks) => {
            let base = match base {
                Some(b) => Some(b),
                None => default_base(kind, &sigma, a.h, mode).map_err(lib)?,
            };
            let config = AlgorithmConfig::new(kind, sigma.clone(), base, mode).map_err(lib)?;
            let out = run(&config, disks).map_err(lib)?;
            let graph = a.verify.then(|| build_disk_graph(disks));
            (config, out, graph)
        }
        Instance::Shapes(shapes) => {
            if mode == Mode::L21 {
                return Err(usage("shapes are colored in proper mode only"));
            }
            let rho = rho.ok_or_else(|| usage("--shapes needs --rho"))?;
            let config = shape_config(kind, &sigma, &rho, a.h, base).map_err(lib)?;
            let out = shape_stream_adapter(&config, &rho, shapes).map_err(lib)?;
            let graph = a.verify.then(|| build_shape_graph(shapes));
            (config, out, graph)
        }
    };
    emit(&a.out, &run_csv(&output))?;
    let stats = serde_json::to_string(&output.stats).expect("stats serialize");
    if a.out.is_some() {
        println!("{}", stats);
    } else {
        eprintln!("{}", stats);
    }
    let Some(graph) = graph else {
        return Ok(Status::Ok);
    };
    let id = match (&a.input, a.generate) {
        (Some(p), _) => p.display().to_string(),
        (None, _) => format!("seed-{}", a.seed),
    };
    let report = report_run(&id, &config, &graph, &output);
    let row = report.csv_row();
    if let Some(path) = &a.report {
        let mut text = if path.exists() {
            fs::read_to_string(path)?
        } else {
            format!("{}\n", REPORT_HEADER)
        };
        writeln!(text, "{}", row).unwrap();
        fs::write(path, text)?;
    }
    let target: &mut dyn std::io::Write = if a.out.is_some() { &mut std::io::stdout() } else { &mut std::io::stderr() };
    writeln!(target, "{}\n{}", REPORT_HEADER, row)?;
    Ok(if report_ok(&report) { Status::Ok } else { Status::Failed })
}

/// Verified, and the bound holds whenever `ω` is exact.
pub fn report_ok(r: &RatioReport) -> bool {
    r.verified && (r.bound_respected || !r.omega_exact)
}

fn cmd_bench(a: BenchArgs) -> anyhow::Result<Status> {
    let sigma = scalar(&a.sigma, "sigma")?;
    let kinds = a
        .algorithms
        .iter()
        .map(|s| AlgorithmKind::parse(s))
        .collect::<Result<Vec<_>, _>>()
        .map_err(usage)?;
    let mut configs = Vec::new();
    for &kind in &kinds {
        let hs: Vec<u32> = if kind.folds() { a.h.clone() } else { vec![1] };
        for h in hs {
            let base = default_base(kind, &sigma, h, Mode::Proper).map_err(lib)?;
            configs.push(AlgorithmConfig::new(kind, sigma.clone(), base, Mode::Proper).map_err(lib)?);
        }
    }
    let rows: Vec<Vec<RatioReport>> = (0..a.instances)
        .into_par_iter()
        .map(|i| {
            let seed = a.seed.wrapping_mul(1_000_003).wrapping_add(i as u64);
            let disks = gen_random_disks(a.n, &sigma, a.box_side, seed);
            let graph = build_disk_graph(&disks);
            let id = format!("inst-{:05}", i);
            configs
                .iter()
                .map(|c| {
                    let out = run(c, &disks).map_err(lib)?;
                    Ok(report_run(&id, c, &graph, &out))
                })
                .collect::<anyhow::Result<Vec<_>>>()
        })
        .collect::<anyhow::Result<Vec<_>>>()?;
    let mut text = format!("{}\n", REPORT_HEADER);
    let mut total = 0;
    let mut verified = 0;
    let mut respected = 0;
    for r in rows.iter().flatten() {
        total += 1;
        verified += r.verified as usize;
        respected += (r.bound_respected || !r.omega_exact) as usize;
        writeln!(text, "{}", r.csv_row()).unwrap();
    }
    emit(&a.out, &text)?;
    let summary = format!("rows={} verified={} bound_respected={}", total, verified, respected);
    if a.out.is_some() {
        println!("{}", summary);
    } else {
        eprintln!("{}", summary);
    }
    Ok(if verified == total && respected == total { Status::Ok } else { Status::Failed })
}

/// Curve (a): ratio bounds of the basic algorithms against σ.
pub fn curve_a(sigma_max: f64, steps: usize) -> String {
    let mut s = String::from("sigma,branch_ff,simple,branch_color\n");
    for i in 0..=steps {
        let v = 1.0 + (sigma_max - 1.0) * i as f64 / steps as f64;
        let sigma: ExactScalar = format!("{:.4}", v).parse().expect("decimal");
        let branches = branch_count(&sigma) as u64;
        let p = hsq_parameter(1, &sigma) as u64;
        writeln!(s, "{:.4},{},{},{}", v, 28 * branches, p * p, 12 * branches).unwrap();
    }
    s
}

fn fold_shade_params(h: u32, sigma: &ExactScalar) -> BoundParams {
    let p = hsq_parameter(h, sigma) as u64;
    BoundParams {
        k: p * p,
        b: (h * h) as u64,
        gamma: gamma(h),
        branches: 1,
    }
}

/// Curve (b): FoldShadeColor bound over ω, for σ ∈ {1, 2} and the given h.
pub fn curve_b(hs: &[u32], omega_max: u64, points: usize) -> String {
    let mut omegas: Vec<u64> = (0..=points)
        .map(|i| (omega_max as f64).powf(i as f64 / points as f64).round() as u64)
        .collect();
    omegas.dedup();
    let mut s = String::from("sigma,h,omega,bound,ratio\n");
    for sigma in ["1", "2"] {
        let sv: ExactScalar = sigma.parse().expect("integer");
        for &h in hs {
            let params = fold_shade_params(h, &sv);
            for &w in &omegas {
                let bound = bound_formula(AlgorithmKind::FoldShadeColor, w, &params);
                writeln!(s, "{},{},{},{},{:.6}", sigma, h, w, bound, bound as f64 / w as f64).unwrap();
            }
        }
    }
    s
}

/// Curve (c): FoldShadeColor ratio against σ at ω = 10⁹, h = 10.
pub fn curve_c(sigma_max: f64, steps: usize) -> String {
    let omega = 1_000_000_000u64;
    let h = 10;
    let mut s = String::from("sigma,k,b,gamma,bound,ratio\n");
    for i in 0..=steps {
        let v = 1.0 + (sigma_max - 1.0) * i as f64 / steps as f64;
        let sigma: ExactScalar = format!("{:.4}", v).parse().expect("decimal");
        let params = fold_shade_params(h, &sigma);
        let bound = bound_formula(AlgorithmKind::FoldShadeColor, omega, &params);
        writeln!(
            s,
            "{:.4},{},{},{},{},{:.6}",
            v,
            params.k,
            params.b,
            params.gamma,
            bound,
            bound as f64 / omega as f64
        )
        .unwrap();
    }
    s
}

fn cmd_curves(a: CurvesArgs) -> anyhow::Result<Status> {
    let which = a.which.as_str();
    if !matches!(which, "a" | "b" | "c" | "all") {
        return Err(usage(format!("unknown curve `{}`", which)));
    }
    fs::create_dir_all(&a.out_dir).with_context(|| format!("creating {}", a.out_dir.display()))?;
    let write = |name: &str, text: String| -> anyhow::Result<()> {
        let p = a.out_dir.join(name);
        fs::write(&p, text).with_context(|| format!("writing {}", p.display()))
    };
    if matches!(which, "a" | "all") {
        write("curve_a.csv", curve_a(a.sigma_max, 150))?;
    }
    if matches!(which, "b" | "all") {
        write("curve_b.csv", curve_b(&a.h, a.omega_max, 120))?;
    }
    if matches!(which, "c" | "all") {
        write("curve_c.csv", curve_c(a.sigma_max, 150))?;
    }
    Ok(Status::Ok)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn curve_a_starts_at_sigma_one() {
        let text = curve_a(16.0, 150);
        assert_eq!(text.lines().nth(1).unwrap(), "1.0000,28,9,12");
    }

    #[test]
    fn curve_b_decreases_eventually() {
        let text = curve_b(&[1, 2, 3, 5], 1_000_000, 120);
        for key in ["1,1,", "1,5,", "2,3,"] {
            let ratios: Vec<(u64, f64)> = text
                .lines()
                .filter(|l| l.starts_with(key))
                .map(|l| {
                    let f: Vec<&str> = l.split(',').collect();
                    (f[2].parse().unwrap(), f[4].parse().unwrap())
                })
                .collect();
            let early = ratios.iter().find(|r| r.0 >= 1000).unwrap().1;
            let last = ratios.last().unwrap();
            assert_eq!(last.0, 1_000_000);
            assert!(last.1 <= early, "{} {} {}", key, early, last.1);
            if key != "1,1," {
                assert!(last.1 < early, "{} {} {}", key, early, last.1);
            }
        }
    }

    #[test]
    fn curve_b_crosses_five_between_50k_and_60k() {
        let params = fold_shade_params(5, &"1".parse().unwrap());
        assert_eq!((params.k, params.b, params.gamma), (121, 25, 150));
        let r = |w: u64| bound_formula(AlgorithmKind::FoldShadeColor, w, &params) as f64 / w as f64;
        assert!(r(50_000) > 5.0);
        assert!(r(60_000) < 5.0);
    }

    #[test]
    fn config_fills_missing_flags() {
        let dir = std::env::temp_dir().join(format!("diskfold-cfg-{}", std::process::id()));
        fs::create_dir_all(&dir).unwrap();
        let path = dir.join("run.cfg");
        fs::write(&path, "# defaults\nsigma = 2\nverify = true\nseed=3\nshapes=false\n").unwrap();
        let args: Vec<String> = ["diskfold", "--config", path.to_str().unwrap(), "run", "--seed", "9"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        let merged = merge_config(args).unwrap();
        assert!(merged.windows(2).any(|w| w[0] == "--sigma" && w[1] == "2"));
        assert!(merged.contains(&"--verify".to_string()));
        assert!(!merged.contains(&"--shapes".to_string()));
        assert_eq!(merged.iter().filter(|a| *a == "--seed").count(), 1);
        fs::remove_dir_all(&dir).unwrap();
    }
}
