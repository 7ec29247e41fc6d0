//! `setdepth`: Tukey depth of convex bodies from the command line.
//!
//! Exit status: 0 on success (including failed properties), 2 on invalid
//! input, 3 when a computation fails.

mod io;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use setdepth::properties::mutants::Mutant;
use setdepth::properties::{consistency_experiment, ConvergenceRow};
use setdepth::{
    contour_membership, depth, hausdorff, rank, run_suite, tukey_median_1d, ConvexBody, DepthConfig,
    DepthFunction, DepthReport, DiscreteSetDistribution, HausdorffMethod, Method, SuiteConfig, TukeyDepth,
};

use io::{from_lib, invalid, CliResult, NamedBody};

#[derive(Parser)]
#[command(name = "setdepth", version, about = "Tukey depth of compact convex sets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Depth of each body.
    Depth(DepthArgs),
    /// Bodies ordered by depth, deepest first.
    Rank(DepthArgs),
    /// Hausdorff distance between two bodies.
    Hausdorff(HausdorffArgs),
    /// Tukey median interval of a one-dimensional law.
    Median(MedianArgs),
    /// Membership of each body in the depth contour at level alpha.
    Contour(ContourArgs),
    /// Property suite and classification.
    Properties(PropertiesArgs),
    /// Empirical convergence of the sample depth.
    Consistency(ConsistencyArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Auto,
    Exact,
    Sampled,
}

#[derive(Clone, Copy, Default, ValueEnum)]
enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Args)]
struct DistArgs {
    /// Distribution JSON file.
    #[arg(long)]
    dist: Option<PathBuf>,
    /// Interval observations with header `a,b`, equally weighted.
    #[arg(long)]
    sample_csv: Option<PathBuf>,
}

impl DistArgs {
    fn load(&self) -> CliResult<DiscreteSetDistribution> {
        io::load_distribution(self.dist.as_deref(), self.sample_csv.as_deref())
    }
}

#[derive(Args)]
struct EngineArgs {
    #[arg(long, value_enum, default_value = "auto")]
    method: MethodArg,
    /// Number of directions for the sampled engine.
    #[arg(long)]
    m: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl EngineArgs {
    fn config(&self) -> CliResult<DepthConfig> {
        if self.m == Some(0) {
            return Err(invalid(anyhow::anyhow!("--m must be positive")));
        }
        Ok(DepthConfig {
            method: match self.method {
                MethodArg::Auto => Method::Auto,
                MethodArg::Exact => Method::Exact,
                MethodArg::Sampled => Method::Sampled,
            },
            directions: self.m,
            seed: self.seed,
            ..DepthConfig::default()
        })
    }
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args)]
struct DepthArgs {
    /// Body JSON file (a body or an array of bodies); repeatable.
    #[arg(long = "body", required = true)]
    bodies: Vec<PathBuf>,
    #[command(flatten)]
    dist: DistArgs,
    #[command(flatten)]
    engine: EngineArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct HausdorffArgs {
    /// Body files holding two bodies in total.
    #[arg(long = "body", required = true)]
    bodies: Vec<PathBuf>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct MedianArgs {
    #[command(flatten)]
    dist: DistArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct ContourArgs {
    #[arg(long = "body", required = true)]
    bodies: Vec<PathBuf>,
    #[command(flatten)]
    dist: DistArgs,
    #[arg(long)]
    alpha: f64,
    #[command(flatten)]
    engine: EngineArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct PropertiesArgs {
    /// Suite configuration JSON; defaults apply to missing fields.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Run the suite on a deliberately broken depth function.
    #[arg(long)]
    mutant: Option<String>,
    /// Overrides the configured seed.
    #[arg(long)]
    seed: Option<u64>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct ConsistencyArgs {
    /// Test bodies; the atoms of the law when omitted.
    #[arg(long = "body")]
    bodies: Vec<PathBuf>,
    #[command(flatten)]
    dist: DistArgs,
    #[arg(long, default_value_t = 0.05)]
    epsilon: f64,
    #[arg(long, value_delimiter = ',', default_value = "100,1000,10000")]
    n_grid: Vec<usize>,
    #[command(flatten)]
    engine: EngineArgs,
    #[command(flatten)]
    output: OutputArgs,
}

fn write<T: Serialize, R: Serialize>(
    output: &OutputArgs,
    json: &T,
    rows: &[R],
    header: &[&str],
) -> CliResult<()> {
    let text = match output.format {
        Format::Json => io::json_text(json)?,
        Format::Csv => io::csv_text(rows, header)?,
    };
    io::emit(&text, output.out.as_deref())
}

fn load_with_law(paths: &[PathBuf], dist: &DistArgs) -> CliResult<(Vec<NamedBody>, DiscreteSetDistribution)> {
    let law = dist.load()?;
    let bodies = io::load_bodies(paths)?;
    io::check_dims(&bodies, law.dim())?;
    Ok((bodies, law))
}

#[derive(Serialize)]
struct DepthEntry<'a> {
    id: &'a str,
    body: &'a ConvexBody,
    report: &'a DepthReport,
}

#[derive(Serialize)]
struct DepthRow<'a> {
    id: &'a str,
    depth: f64,
    witness: String,
    side: setdepth::Side,
    method: setdepth::DepthMethod,
    directions_used: usize,
    seed: u64,
}

impl<'a> DepthRow<'a> {
    fn new(id: &'a str, r: &DepthReport, seed: u64) -> Self {
        DepthRow {
            id,
            depth: r.value,
            witness: io::direction_field(&r.witness_direction),
            side: r.witness_side,
            method: r.method,
            directions_used: r.directions_used,
            seed,
        }
    }
}

const DEPTH_HEADER: [&str; 7] = [
    "id",
    "depth",
    "witness",
    "side",
    "method",
    "directions_used",
    "seed",
];

#[derive(Serialize)]
struct DepthOutput<'a> {
    command: &'static str,
    seed: u64,
    config: &'a DepthConfig,
    results: Vec<DepthEntry<'a>>,
}

fn cmd_depth(args: &DepthArgs, ranked: bool) -> CliResult<()> {
    let config = args.engine.config()?;
    let (named, law) = load_with_law(&args.bodies, &args.dist)?;
    let reports: Vec<(usize, DepthReport)> = if ranked {
        let bodies: Vec<ConvexBody> = named.iter().map(|b| b.body.clone()).collect();
        rank(&bodies, &law, &config)
            .map_err(from_lib)?
            .into_iter()
            .map(|r| (r.index, r.report))
            .collect()
    } else {
        named
            .iter()
            .enumerate()
            .map(|(i, b)| depth(&b.body, &law, &config).map(|r| (i, r)))
            .collect::<Result<_, _>>()
            .map_err(from_lib)?
    };
    let results = reports
        .iter()
        .map(|(i, report)| DepthEntry {
            id: &named[*i].id,
            body: &named[*i].body,
            report,
        })
        .collect();
    let rows: Vec<DepthRow> = reports
        .iter()
        .map(|(i, r)| DepthRow::new(&named[*i].id, r, config.seed))
        .collect();
    let json = DepthOutput {
        command: if ranked { "rank" } else { "depth" },
        seed: config.seed,
        config: &config,
        results,
    };
    write(&args.output, &json, &rows, &DEPTH_HEADER)
}

#[derive(Serialize)]
struct HausdorffRow<'a> {
    a: &'a str,
    b: &'a str,
    distance: f64,
    method: &'static str,
    grid: Option<usize>,
}

#[derive(Serialize)]
struct HausdorffOutput<'a> {
    command: &'static str,
    a: &'a NamedBody,
    b: &'a NamedBody,
    report: setdepth::HausdorffReport,
}

fn cmd_hausdorff(args: &HausdorffArgs) -> CliResult<()> {
    let bodies = io::load_bodies(&args.bodies)?;
    let [a, b] = bodies.as_slice() else {
        return Err(invalid(anyhow::anyhow!(
            "hausdorff needs exactly two bodies, got {}",
            bodies.len()
        )));
    };
    let report = hausdorff(&a.body, &b.body).map_err(from_lib)?;
    let (method, grid) = match report.method {
        HausdorffMethod::Exact => ("exact", None),
        HausdorffMethod::Approx { grid } => ("approx", Some(grid)),
    };
    let row = HausdorffRow {
        a: &a.id,
        b: &b.id,
        distance: report.distance,
        method,
        grid,
    };
    let json = HausdorffOutput {
        command: "hausdorff",
        a,
        b,
        report,
    };
    write(
        &args.output,
        &json,
        &[row],
        &["a", "b", "distance", "method", "grid"],
    )
}

#[derive(Serialize)]
struct MedianOutput {
    command: &'static str,
    median: ConvexBody,
}

#[derive(Serialize)]
struct MedianRow {
    a: f64,
    b: f64,
}

fn cmd_median(args: &MedianArgs) -> CliResult<()> {
    let law = args.dist.load()?;
    if law.dim() != 1 {
        return Err(invalid(anyhow::anyhow!(
            "median needs a one-dimensional law, got dimension {}",
            law.dim()
        )));
    }
    let median = tukey_median_1d(&law).map_err(from_lib)?;
    let row = MedianRow {
        a: -median.support_vec(&[-1.0]),
        b: median.support_vec(&[1.0]),
    };
    let json = MedianOutput {
        command: "median",
        median,
    };
    write(&args.output, &json, &[row], &["a", "b"])
}

#[derive(Serialize)]
struct ContourRow<'a> {
    id: &'a str,
    depth: f64,
    member: bool,
    alpha: f64,
    seed: u64,
}

#[derive(Serialize)]
struct ContourOutput<'a> {
    command: &'static str,
    seed: u64,
    alpha: f64,
    config: &'a DepthConfig,
    results: &'a [ContourRow<'a>],
}

fn cmd_contour(args: &ContourArgs) -> CliResult<()> {
    let config = args.engine.config()?;
    if !(0.0..=1.0).contains(&args.alpha) {
        return Err(invalid(anyhow::anyhow!(
            "--alpha must lie in [0, 1], got {}",
            args.alpha
        )));
    }
    let (named, law) = load_with_law(&args.bodies, &args.dist)?;
    let rows = named
        .iter()
        .map(|b| {
            let value = depth(&b.body, &law, &config)?.value;
            Ok(ContourRow {
                id: &b.id,
                depth: value,
                member: contour_membership(&b.body, &law, args.alpha, &config)?,
                alpha: args.alpha,
                seed: config.seed,
            })
        })
        .collect::<Result<Vec<_>, setdepth::Error>>()
        .map_err(from_lib)?;
    let json = ContourOutput {
        command: "contour",
        seed: config.seed,
        alpha: args.alpha,
        config: &config,
        results: &rows,
    };
    write(
        &args.output,
        &json,
        &rows,
        &["id", "depth", "member", "alpha", "seed"],
    )
}

#[derive(Serialize)]
struct PropertyRow<'a> {
    property: String,
    verdict: setdepth::Verdict,
    trials: usize,
    seed: u64,
    detail: &'a str,
}

fn cmd_properties(args: &PropertiesArgs) -> CliResult<()> {
    let mut config: SuiteConfig = match &args.config {
        Some(path) => io::parse_json(&io::read(path)?, path)?,
        None => SuiteConfig::default(),
    };
    if let Some(seed) = args.seed {
        config.seed = seed;
    }
    let tukey = TukeyDepth::default();
    let mutant;
    let f: &dyn DepthFunction = match &args.mutant {
        None => &tukey,
        Some(name) => {
            mutant = Mutant::parse(name).ok_or_else(|| {
                let known: Vec<&str> = Mutant::ALL.iter().map(|m| m.name()).collect();
                invalid(anyhow::anyhow!(
                    "unknown mutant `{name}`; known: {}",
                    known.join(", ")
                ))
            })?;
            &mutant
        }
    };
    let report = run_suite(f, &config).map_err(from_lib)?;
    let labels: Vec<String> = report.labels.iter().map(ToString::to_string).collect();
    eprintln!("{}: labels [{}]", report.name, labels.join(", "));
    let rows: Vec<PropertyRow> = report
        .reports
        .iter()
        .map(|r| PropertyRow {
            property: r.property.to_string(),
            verdict: r.verdict,
            trials: r.trials,
            seed: r.seed,
            detail: &r.detail,
        })
        .collect();
    write(
        &args.output,
        &report,
        &rows,
        &["property", "verdict", "trials", "seed", "detail"],
    )
}

#[derive(Serialize)]
struct ConsistencyOutput<'a> {
    command: &'static str,
    seed: u64,
    epsilon: f64,
    bodies: &'a [NamedBody],
    rows: &'a [ConvergenceRow],
}

fn cmd_consistency(args: &ConsistencyArgs) -> CliResult<()> {
    let config = args.engine.config()?;
    let (mut named, law) = load_with_law(&args.bodies, &args.dist)?;
    if named.is_empty() {
        named = law
            .bodies()
            .enumerate()
            .map(|(i, b)| NamedBody {
                id: format!("atom#{i}"),
                body: b.clone(),
            })
            .collect();
    }
    let bodies: Vec<ConvexBody> = named.iter().map(|b| b.body.clone()).collect();
    let f = TukeyDepth {
        config: config.clone(),
    };
    let table = consistency_experiment(&f, &law, &bodies, &args.n_grid, args.epsilon, config.seed)
        .map_err(from_lib)?;
    let json = ConsistencyOutput {
        command: "consistency",
        seed: config.seed,
        epsilon: table.epsilon,
        bodies: &named,
        rows: &table.rows,
    };
    write(
        &args.output,
        &json,
        &table.rows,
        &["n", "sup_error", "dkw_bound", "seed"],
    )
}

fn run(cli: &Cli) -> CliResult<()> {
    match &cli.command {
        Command::Depth(a) => cmd_depth(a, false),
        Command::Rank(a) => cmd_depth(a, true),
        Command::Hausdorff(a) => cmd_hausdorff(a),
        Command::Median(a) => cmd_median(a),
        Command::Contour(a) => cmd_contour(a),
        Command::Properties(a) => cmd_properties(a),
        Command::Consistency(a) => cmd_consistency(a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {failure}");
            ExitCode::from(failure.code as u8)
        }
    }
}
