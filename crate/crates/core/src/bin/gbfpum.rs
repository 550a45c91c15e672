use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use gbf_pum::clustering::{random_feature_matrix, select_partition_by_modularity, ClusterMethod};
use gbf_pum::error::ErrorClass;
use gbf_pum::gbf::GbfSpec;
use gbf_pum::graph::{generate_geometric, generate_grid, Graph};
use gbf_pum::harness::{self, ExperimentConfig};
use gbf_pum::pum::{enlarge_cover, pou_weights, pum_interpolate};
use gbf_pum::{io, Error, Result};

/// Graph signal interpolation with GBF kernels on community subdomains.
#[derive(Debug, Parser)]
#[command(name = "gbfpum", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write a synthetic graph (edge list at OUT, coordinates at OUT.coords).
    Gen(GenArgs),
    /// Partition a graph, choosing J by modularity.
    Cluster(ClusterArgs),
    /// Reconstruct a signal from samples with partition-of-unity GBF interpolation.
    Interpolate(InterpolateArgs),
    /// Run a configured method sweep and write the CSV report.
    Experiment(ExperimentArgs),
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false, id = "kind")]
struct GenKind {
    /// Lattice size, e.g. 20x20.
    #[arg(long, value_name = "RxC")]
    grid: Option<String>,
    /// Random geometric graph in the unit square.
    #[arg(long, num_args = 2, value_names = ["N", "RADIUS"])]
    geometric: Option<Vec<String>>,
}

#[derive(Debug, Args)]
struct GenArgs {
    #[command(flatten)]
    kind: GenKind,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct ClusterArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    coords: Option<PathBuf>,
    /// greedy | spectral | filtered
    #[arg(long, default_value = "greedy")]
    method: String,
    #[arg(long, default_value_t = 1)]
    jmin: usize,
    #[arg(long, default_value_t = harness::config::DEFAULT_JMAX)]
    jmax: usize,
    /// Random feature dimension for the filtered method.
    #[arg(long, default_value_t = harness::config::DEFAULT_FEATURES)]
    k: usize,
    /// Largest filter order tried by the filtered method.
    #[arg(long, default_value_t = gbf_pum::clustering::DEFAULT_T_MAX)]
    tmax: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct InterpolateArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    partition: PathBuf,
    #[arg(long)]
    samples: PathBuf,
    /// Enlargement radius in hops.
    #[arg(long = "R", default_value_t = 8)]
    radius: usize,
    #[arg(long, default_value_t = 1e-3)]
    eps: f64,
    #[arg(long, default_value_t = 2.0)]
    s: f64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct ExperimentArgs {
    #[arg(long)]
    config: PathBuf,
}

fn coords_path(out: &Path) -> PathBuf {
    let mut p = out.as_os_str().to_owned();
    p.push(".coords");
    PathBuf::from(p)
}

fn usage(msg: impl Into<String>) -> Error {
    Error::Config(msg.into())
}

fn gen(args: GenArgs) -> Result<()> {
    let g: Graph = if let Some(spec) = &args.kind.grid {
        let (r, c) = spec
            .split_once(['x', 'X'])
            .ok_or_else(|| usage(format!("--grid expects RxC, got {spec:?}")))?;
        let parse = |s: &str| {
            s.trim()
                .parse::<usize>()
                .map_err(|_| usage(format!("--grid expects RxC, got {spec:?}")))
        };
        generate_grid(parse(r)?, parse(c)?)?
    } else {
        let v = args.kind.geometric.as_deref().unwrap_or_default();
        let n = v[0]
            .parse::<usize>()
            .map_err(|_| usage(format!("bad node count {:?}", v[0])))?;
        let radius = v[1]
            .parse::<f64>()
            .map_err(|_| usage(format!("bad radius {:?}", v[1])))?;
        generate_geometric(n, radius, args.seed)?
    };
    io::write_edge_list(&g, &args.out)?;
    if let Some(coords) = g.coords() {
        io::write_coords(coords, &coords_path(&args.out))?;
    }
    println!("n={} m={}", g.node_count(), g.edge_count());
    Ok(())
}

fn cluster(args: ClusterArgs) -> Result<()> {
    let g = io::load_graph(&args.graph, args.coords.as_deref())?;
    let method = match args.method.parse::<ClusterMethod>()? {
        ClusterMethod::Filtered { .. } => ClusterMethod::Filtered { t_max: args.tmax },
        m => m,
    };
    let features = if method.needs_features() {
        Some(random_feature_matrix(g.coords(), args.k, args.seed)?)
    } else {
        None
    };
    let jmax = args.jmax.min(g.node_count());
    let sel = select_partition_by_modularity(
        &g,
        method,
        args.jmin..=jmax,
        args.seed,
        None,
        features.as_ref(),
    )?;
    io::write_partition(&sel.partition, &args.out)?;
    println!("J={} MOD={:.4}", sel.count, sel.modularity);
    Ok(())
}

fn interpolate(args: InterpolateArgs) -> Result<()> {
    let g = io::load_graph(&args.graph, None)?;
    let n = g.node_count();
    let partition = io::import_partition(&args.partition, n)?;
    let samples = io::read_samples(&args.samples, n)?;
    let cover = enlarge_cover(&g, &partition, args.radius)?;
    let pou = pou_weights(&cover);
    let spec = GbfSpec::variational_spline(args.eps, args.s);
    let out = pum_interpolate(&g, &cover, &pou, spec, &samples)?;
    for j in &out.empty_subdomains {
        eprintln!("warning: subdomain {j} holds no samples; its local interpolant is zero");
    }
    io::write_signal(&out.signal, &args.out)
}

fn experiment(args: ExperimentArgs) -> Result<()> {
    let cfg = ExperimentConfig::load(&args.config)?;
    let rows = harness::run_experiment(&cfg)?;
    print!("{}", harness::render_table(&rows));
    match &cfg.out {
        Some(path) => harness::write_report(&rows, path),
        None => {
            print!("{}", harness::render_csv(&rows));
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let result = match cli.command {
        Command::Gen(a) => gen(a),
        Command::Cluster(a) => cluster(a),
        Command::Interpolate(a) => interpolate(a),
        Command::Experiment(a) => experiment(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e.class() {
                ErrorClass::Usage => 1,
                ErrorClass::Data => 2,
                ErrorClass::Numerical => 3,
            })
        }
    }
}
