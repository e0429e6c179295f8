use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use planted_rgg::experiments::{log_grid, log_grid_int, phase_diagram, run_grid, ExperimentConfig};
use planted_rgg::geometry::{blocking_region_fraction, touching_lens_fraction, unit_ball_volume};
use planted_rgg::rgg::io::{self as gio, Instance};
use planted_rgg::rgg::{plant_clique, sample_instance_with, VertexCount};
use planted_rgg::theory::{degree_thresholds, mu_from_radius, RegimeCuts};
use planted_rgg::{classify_regime, cn_recover, evaluate, vd_recover, ClassifierConfig, Error, Method, ModelParams};

#[derive(Parser)]
#[command(name = "planted-rgg", version, about = "Planted cliques in hard random geometric graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample a random geometric graph and write it to a file.
    Generate(GenerateArgs),
    /// Plant a clique into a graph file.
    Plant(PlantArgs),
    /// Recover the clique from the k largest degrees.
    RunVd(RunArgs),
    /// Recover the clique from common neighbours.
    RunCn(RunArgs),
    /// Monte Carlo success rates over a (mu, k) grid, as CSV.
    Experiment(ExperimentArgs),
    /// Classifier verdicts over a log-spaced (mu, k) grid, as CSV.
    PhaseDiagram(PhaseArgs),
    /// Print geometric constants and degree thresholds.
    Constants(ConstantsArgs),
}

#[derive(Args)]
#[group(id = "scale", required = true, multiple = false)]
struct Scale {
    /// Mean degree mu = n phi_d r^d.
    #[arg(long)]
    mu: Option<f64>,
    /// Connection radius r < 1/4.
    #[arg(long)]
    radius: Option<f64>,
}

#[derive(Args)]
struct Model {
    /// Expected number of vertices.
    #[arg(long)]
    n: f64,
    /// Torus dimension.
    #[arg(long, short = 'd', default_value_t = 2)]
    dim: usize,
    #[command(flatten)]
    scale: Scale,
}

impl Model {
    fn params(&self) -> Result<ModelParams, Error> {
        match (self.scale.mu, self.scale.radius) {
            (Some(mu), _) => ModelParams::from_mu(self.n, self.dim, mu),
            (_, Some(r)) => ModelParams::from_radius(self.n, self.dim, r),
            _ => unreachable!("clap enforces one of --mu/--radius"),
        }
    }
}

#[derive(Args)]
struct GenerateArgs {
    #[command(flatten)]
    model: Model,
    /// Use exactly this many vertices instead of Poisson(n).
    #[arg(long)]
    fixed_n: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, short)]
    output: PathBuf,
}

#[derive(Args)]
struct PlantArgs {
    #[arg(long, short)]
    input: PathBuf,
    #[arg(long, short)]
    k: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, short)]
    output: PathBuf,
}

#[derive(Args)]
struct RunArgs {
    #[arg(long, short)]
    input: PathBuf,
    /// Clique size; defaults to the planted clique's size.
    #[arg(long, short)]
    k: Option<usize>,
}

#[derive(Args)]
struct ExperimentArgs {
    /// TOML file with the experiment fields; flags given here override it.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    n: Option<f64>,
    #[arg(long, short = 'd')]
    dim: Option<usize>,
    /// Comma-separated mean degrees.
    #[arg(long, value_delimiter = ',', conflicts_with = "radius")]
    mu: Option<Vec<f64>>,
    /// Comma-separated radii, converted to mean degrees.
    #[arg(long, value_delimiter = ',')]
    radius: Option<Vec<f64>>,
    /// Comma-separated clique sizes.
    #[arg(long, short, value_delimiter = ',')]
    k: Option<Vec<usize>>,
    /// Trials per cell [default: 200].
    #[arg(long)]
    trials: Option<usize>,
    /// Master seed [default: 0].
    #[arg(long)]
    seed: Option<u64>,
    /// Comma-separated subset of VD,CN [default: VD,CN].
    #[arg(long, value_delimiter = ',')]
    methods: Option<Vec<String>>,
    #[arg(long)]
    fixed_n: Option<usize>,
    #[arg(long)]
    threads: Option<usize>,
    /// CSV destination; stdout when omitted.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

impl ExperimentArgs {
    fn config(&self) -> Result<ExperimentConfig, Error> {
        let mut cfg = match &self.config {
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
                ExperimentConfig::from_toml(&text)?
            }
            None => {
                let missing = |flag: &str| Error::Usage(format!("--{flag} is required without --config"));
                let n = self.n.ok_or_else(|| missing("n"))?;
                let k = self.k.clone().ok_or_else(|| missing("k"))?;
                if self.mu.is_none() && self.radius.is_none() {
                    return Err(missing("mu or --radius"));
                }
                ExperimentConfig::new(n, self.dim.unwrap_or(2), Vec::new(), k)
            }
        };
        if let Some(n) = self.n {
            cfg.n = n;
        }
        if let Some(d) = self.dim {
            cfg.d = d;
        }
        if let Some(mu) = &self.mu {
            cfg.mu = mu.clone();
        }
        if let Some(radii) = &self.radius {
            cfg.mu = radii
                .iter()
                .map(|&r| mu_from_radius(cfg.n, cfg.d, r))
                .collect::<Result<_, _>>()?;
        }
        if let Some(k) = &self.k {
            cfg.k = k.clone();
        }
        if let Some(t) = self.trials {
            cfg.trials = t;
        }
        if let Some(s) = self.seed {
            cfg.master_seed = s;
        }
        if let Some(m) = &self.methods {
            cfg.methods = m.iter().map(|s| Method::parse(s)).collect::<Result<_, _>>()?;
        }
        if self.fixed_n.is_some() {
            cfg.fixed_n = self.fixed_n;
        }
        if self.threads.is_some() {
            cfg.threads = self.threads;
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

#[derive(Args)]
struct PhaseArgs {
    #[arg(long)]
    n: f64,
    #[arg(long, short = 'd', default_value_t = 2)]
    dim: usize,
    #[arg(long, default_value_t = 0.1)]
    mu_min: f64,
    #[arg(long, default_value_t = 1e4)]
    mu_max: f64,
    #[arg(long, default_value_t = 20)]
    mu_count: usize,
    #[arg(long, default_value_t = 2)]
    k_min: usize,
    #[arg(long, default_value_t = 10_000)]
    k_max: usize,
    #[arg(long, default_value_t = 20)]
    k_count: usize,
    #[arg(long, default_value_t = 0.1)]
    epsilon: f64,
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct ConstantsArgs {
    #[command(flatten)]
    model: Model,
    /// Also classify this clique size.
    #[arg(long, short)]
    k: Option<usize>,
    #[arg(long, default_value_t = 0.1)]
    epsilon: f64,
}

fn output_writer(path: Option<&Path>) -> Result<Box<dyn Write>, Error> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).map_err(|e| Error::Io(format!("{}: {e}", p.display())))?,
        )),
        None => Box::new(io::stdout().lock()),
    })
}

fn format_set(set: &[usize]) -> String {
    let items: Vec<String> = set.iter().map(usize::to_string).collect();
    format!("{{{}}}", items.join(", "))
}

fn run(command: Command) -> Result<(), Error> {
    match command {
        Command::Generate(args) => {
            let params = args.model.params()?;
            let count = args.fixed_n.map_or(VertexCount::Poisson, VertexCount::Fixed);
            let graph = sample_instance_with(&params, count, args.seed)?;
            gio::save(&Instance::Graph(graph.clone()), &args.output)?;
            println!(
                "wrote {} vertices, {} edges (r = {}, mu = {}) to {}",
                graph.vertex_count(),
                graph.edge_count(),
                params.radius(),
                params.mu(),
                args.output.display()
            );
        }
        Command::Plant(args) => {
            let instance = gio::load(&args.input)?;
            let planted = plant_clique(instance.graph(), args.k, args.seed)?;
            println!("clique: {}", format_set(planted.clique()));
            println!("planted_edges: {}", planted.planted_edges().len());
            gio::save(&Instance::Planted(planted), &args.output)?;
        }
        Command::RunVd(args) => run_method(Method::Vd, &args)?,
        Command::RunCn(args) => run_method(Method::Cn, &args)?,
        Command::Experiment(args) => {
            let cfg = args.config()?;
            let grid = run_grid(&cfg)?;
            let mut out = output_writer(args.output.as_deref())?;
            grid.write_csv(&mut out)?;
            out.flush()?;
        }
        Command::PhaseDiagram(args) => {
            let mus = log_grid(args.mu_min, args.mu_max, args.mu_count)?;
            let ks = log_grid_int(args.k_min.max(2), args.k_max, args.k_count)?;
            let cfg = ClassifierConfig::with_epsilon(args.epsilon);
            let pd = phase_diagram(args.n, args.dim, &mus, &ks, &cfg)?;
            let mut out = output_writer(args.output.as_deref())?;
            pd.write_csv(&mut out)?;
            out.flush()?;
        }
        Command::Constants(args) => {
            let params = args.model.params()?;
            let d = params.dim();
            println!("n: {}", params.n());
            println!("d: {d}");
            println!("r: {}", params.radius());
            println!("mu: {}", params.mu());
            println!("phi_d: {}", unit_ball_volume(d)?);
            println!("c1_d: {}", blocking_region_fraction(d)?);
            println!("c2_d: {}", touching_lens_fraction(d)?);
            let th = degree_thresholds(&params, &RegimeCuts::default())?;
            println!("alpha: {}", th.alpha);
            println!("regime: {}", th.regime.as_str());
            println!("T(n): {}", th.max_degree);
            println!("t(n): {}", th.min_degree);
            if let Some(k) = args.k {
                let v = classify_regime(&params, k, &ClassifierConfig::with_epsilon(args.epsilon))?;
                println!("vd_verdict: {}", v.vd.as_str());
                println!("cn_verdict: {}", v.cn.as_str());
            }
        }
    }
    Ok(())
}

fn run_method(method: Method, args: &RunArgs) -> Result<(), Error> {
    let instance = gio::load(&args.input)?;
    let k = match (args.k, instance.clique()) {
        (Some(k), _) => k,
        (None, Some(c)) => c.len(),
        (None, None) => return Err(Error::Usage("--k is required for graphs without a planted clique".into())),
    };
    let graph = instance.graph();
    let mut result = match method {
        Method::Vd => vd_recover(graph, k)?,
        Method::Cn => cn_recover(graph, k)?,
    };
    if let Some(truth) = instance.clique() {
        result = evaluate(result, truth);
    }
    println!("method: {method}");
    println!("k: {k}");
    println!("output: {}", format_set(&result.output));
    if let (Some(hit), Some(overlap)) = (result.exact_match, result.overlap) {
        println!("exact_match: {hit}");
        println!("overlap: {overlap}");
    }
    println!("edges_scanned: {}", result.work.edges_scanned);
    println!("clique_checks: {}", result.work.clique_checks);
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            if !e.use_stderr() {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            let text = e.to_string();
            let first = text.lines().next().unwrap_or("invalid arguments");
            eprintln!("error[usage]: {}", first.trim_start_matches("error: "));
            return ExitCode::from(1);
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error[{}]: {e}", e.code());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
