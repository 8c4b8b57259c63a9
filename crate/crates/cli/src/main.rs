//! Command-line pipeline: simulate -> entropy -> mine -> execute ->
//! classify -> check, as individual stages or in one `pipeline` run.
//!
//! Exit codes: 0 success, 2 configuration or input error, 3 when any
//! checked property is FALSE, 4 when none is FALSE but some are UNKNOWN.

use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use topomon::entropy::{
    derivative, persistent_entropy, persistent_entropy_in_base,
    persistent_entropy_of_dim, read_pet, write_derivative, write_pet, Pet,
};
use topomon::filtration::{build_clique_filtration, WeightOrder};
use topomon::graph::{read_snapshots, write_snapshots, WeightedGraph};
use topomon::ltl::{evaluate, read_properties, write_verdicts, Verdict};
use topomon::mining::{
    default_eps_deriv, default_level_tol, detect_steady_segments, mine_pea,
};
use topomon::monitor::{
    classify_trace, read_trace, write_group_counts, write_trace, GroupCounts, MpeaTrace,
};
use topomon::pea::{read_pea, write_pea, Pea, PeaAugmentation};
use topomon::pelts::{
    enumerate_executions, execute, read_execution, write_execution, MpeaExecution,
    DEFAULT_EXECUTION_CAP,
};
use topomon::persistence::compute_persistence;
use topomon::sim::{simulate, snapshot_graphs, SimConfig};

#[derive(Parser)]
#[command(name = "topomon", version, about = "Topological runtime monitoring pipeline")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output directory for artifacts.
    #[arg(long, global = true, default_value = "out")]
    out: PathBuf,
    /// Override the simulation seed.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads for the per-tick entropy stage (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Run the idiotypic-network simulator and write graph snapshots.
    Simulate(SimulateArgs),
    /// Compute per-tick persistent entropy from graph snapshots.
    Entropy(EntropyArgs),
    /// Mine a persistent entropy automaton from an entropy trace.
    Mine(MineArgs),
    /// Execute an entropy trace against an automaton.
    Execute(ExecuteArgs),
    /// Turn execution logs into proposition traces and count groups.
    Classify(ClassifyArgs),
    /// Evaluate bounded LTL properties on traces.
    Check(CheckArgs),
    /// Run every stage in sequence.
    Pipeline(PipelineArgs),
}

#[derive(Args)]
struct SimulateArgs {
    /// Simulator configuration (flat key = value file); defaults apply when
    /// omitted.
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args, Clone)]
struct EntropyArgs {
    /// Snapshot CSV produced by `simulate`.
    #[arg(long)]
    snapshots: PathBuf,
    #[command(flatten)]
    params: EntropyParams,
}

#[derive(Args, Clone)]
struct EntropyParams {
    /// Edge weight ordering for the filtration.
    #[arg(long, value_enum, default_value_t = OrderArg::DescendingRank)]
    order: OrderArg,
    /// Maximal homology dimension.
    #[arg(long, default_value_t = 1)]
    max_dim: usize,
    /// Restrict the entropy to one homology dimension (pooled by default).
    #[arg(long)]
    dim: Option<usize>,
    /// Logarithm base for the entropy (natural log by default).
    #[arg(long)]
    log_base: Option<f64>,
    /// Additionally write plot-ready `time,entropy` data.
    #[arg(long)]
    emit_plot_data: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OrderArg {
    DescendingRank,
    AscendingRank,
    RawWeight,
}

impl From<OrderArg> for WeightOrder {
    fn from(a: OrderArg) -> Self {
        match a {
            OrderArg::DescendingRank => WeightOrder::DescendingRank,
            OrderArg::AscendingRank => WeightOrder::AscendingRank,
            OrderArg::RawWeight => WeightOrder::RawWeight,
        }
    }
}

#[derive(Args, Clone)]
struct MineArgs {
    /// Entropy trace CSV.
    #[arg(long)]
    pet: PathBuf,
    #[command(flatten)]
    params: MineParams,
}

#[derive(Args, Clone)]
struct MineParams {
    /// Derivative tolerance for plateau detection
    /// (default: 1e-6 times the largest entropy).
    #[arg(long)]
    eps_deriv: Option<f64>,
    /// Minimal plateau length in observations.
    #[arg(long, default_value_t = 5)]
    min_len: usize,
    /// Level tolerance for clustering plateaus into states
    /// (default: 5% of the largest entropy).
    #[arg(long)]
    level_tol: Option<f64>,
    /// Equality tolerance written into mined conditions.
    #[arg(long, default_value_t = 1e-6)]
    eps_eq: f64,
    /// Augmentation JSON applied after mining (renames, extra transitions).
    #[arg(long)]
    augment: Option<PathBuf>,
}

#[derive(Args)]
struct ExecuteArgs {
    /// Automaton JSON.
    #[arg(long)]
    pea: PathBuf,
    /// Entropy trace CSV.
    #[arg(long)]
    pet: PathBuf,
    /// Non-determinism policy.
    #[arg(long, value_enum, default_value_t = PolicyArg::FirstDeclared)]
    policy: PolicyArg,
    /// Execution cap for enumerate-all.
    #[arg(long, default_value_t = DEFAULT_EXECUTION_CAP)]
    cap: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PolicyArg {
    FirstDeclared,
    EnumerateAll,
}

#[derive(Args)]
struct ClassifyArgs {
    /// Execution logs to classify.
    #[arg(long, required = true, num_args = 1..)]
    executions: Vec<PathBuf>,
}

#[derive(Args)]
struct CheckArgs {
    /// Trace files (one position per line).
    #[arg(long, required = true, num_args = 1..)]
    traces: Vec<PathBuf>,
    /// Property file, one bounded LTL formula per line.
    #[arg(long)]
    properties: PathBuf,
}

#[derive(Args)]
struct PipelineArgs {
    #[arg(long)]
    config: Option<PathBuf>,
    #[command(flatten)]
    entropy: EntropyParams,
    #[command(flatten)]
    mine: MineParams,
    /// Property file to check at the end of the pipeline.
    #[arg(long)]
    properties: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    std::fs::create_dir_all(&cli.out)
        .with_context(|| format!("creating output directory {}", cli.out.display()))?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.jobs)
        .build()
        .context("building worker pool")?;

    match &cli.command {
        Command::Simulate(args) => {
            cmd_simulate(&cli, args.config.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Entropy(args) => {
            let graphs = read_graphs(&args.snapshots)?;
            pool.install(|| cmd_entropy(&cli, &graphs, &args.params))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Mine(args) => {
            let pet = read_pet_file(&args.pet)?;
            cmd_mine(&cli, &pet, &args.params)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Execute(args) => {
            let pea = read_pea_file(&args.pea)?;
            let pet = read_pet_file(&args.pet)?;
            cmd_execute(&cli, &pea, &pet, args.policy, args.cap)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Classify(args) => {
            let mut executions = Vec::new();
            for path in &args.executions {
                let file = File::open(path)
                    .with_context(|| format!("opening execution log {}", path.display()))?;
                let e = read_execution::<f64>(BufReader::new(file))
                    .with_context(|| format!("reading execution log {}", path.display()))?;
                executions.push((stem_of(path), e));
            }
            cmd_classify(&cli, &executions)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Check(args) => {
            let mut traces = Vec::new();
            for path in &args.traces {
                let file = File::open(path)
                    .with_context(|| format!("opening trace {}", path.display()))?;
                let t = read_trace(BufReader::new(file))
                    .with_context(|| format!("reading trace {}", path.display()))?;
                traces.push((stem_of(path), t));
            }
            let code = cmd_check(&cli, &traces, &args.properties)?;
            Ok(code)
        }
        Command::Pipeline(args) => {
            let graphs = cmd_simulate(&cli, args.config.as_deref())?;
            let pet = pool.install(|| cmd_entropy(&cli, &graphs, &args.entropy))?;
            let pea = cmd_mine(&cli, &pet, &args.mine)?;
            let exec = cmd_execute(&cli, &pea, &pet, PolicyArg::FirstDeclared, 0)?;
            let trace = cmd_classify(&cli, &[("trace".to_string(), exec)])?;
            if let Some(props) = &args.properties {
                let code = cmd_check(&cli, &[("trace".to_string(), trace)], props)?;
                return Ok(code);
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn cmd_simulate(cli: &Cli, config: Option<&Path>) -> Result<Vec<WeightedGraph>> {
    let mut cfg = match config {
        Some(path) => {
            let file = File::open(path)
                .with_context(|| format!("opening config {}", path.display()))?;
            SimConfig::read(BufReader::new(file))
                .with_context(|| format!("reading config {}", path.display()))?
        }
        None => SimConfig::default(),
    };
    if let Some(seed) = cli.seed {
        cfg.seed = seed;
    }
    let run = simulate::<f64>(&cfg).context("running simulation")?;
    let graphs = snapshot_graphs(&run, cfg.min_match).context("building coexistence graphs")?;
    let path = cli.out.join("snapshots.csv");
    let mut w = writer(&path)?;
    write_snapshots(&mut w, &graphs)
        .with_context(|| format!("writing {}", path.display()))?;
    w.flush()?;
    println!(
        "simulate: {} ticks, seed {} -> {}",
        cfg.ticks,
        cfg.seed,
        path.display()
    );
    Ok(graphs)
}

fn cmd_entropy(cli: &Cli, graphs: &[WeightedGraph], params: &EntropyParams) -> Result<Pet<f64>> {
    let order: WeightOrder = params.order.into();
    let observations: Vec<(u64, f64)> = graphs
        .par_iter()
        .map(|g| -> Result<(u64, f64)> {
            let t = g.timestamp();
            let f = build_clique_filtration(g, params.max_dim, order)
                .with_context(|| format!("tick {t}"))?;
            let hom_dim = params.max_dim.min(f.max_dim());
            let b = compute_persistence(&f, hom_dim)
                .with_context(|| format!("tick {t}"))?
                .truncated();
            let h = match (params.dim, params.log_base) {
                (Some(d), None) => persistent_entropy_of_dim(&b, d),
                (None, Some(base)) => persistent_entropy_in_base(&b, base),
                (None, None) => persistent_entropy(&b),
                (Some(d), Some(base)) => {
                    persistent_entropy_of_dim(&b, d).map(|h| h / base.ln())
                }
            }
            .with_context(|| format!("tick {t}"))?;
            Ok((t, h))
        })
        .collect::<Result<_>>()?;

    let pet = Pet::from_observations(observations).context("assembling entropy trace")?;
    let path = cli.out.join("pet.csv");
    let mut w = writer(&path)?;
    write_pet(&mut w, &pet)?;
    w.flush()?;

    let d = derivative(&pet);
    let dpath = cli.out.join("dentropy.csv");
    let mut w = writer(&dpath)?;
    write_derivative(&mut w, &d)?;
    w.flush()?;

    if params.emit_plot_data {
        let ppath = cli.out.join("plot.csv");
        let mut w = writer(&ppath)?;
        write_pet(&mut w, &pet)?;
        w.flush()?;
    }
    println!("entropy: {} observations -> {}", pet.len(), path.display());
    Ok(pet)
}

fn cmd_mine(cli: &Cli, pet: &Pet<f64>, params: &MineParams) -> Result<Pea<f64>> {
    let eps_deriv = params.eps_deriv.unwrap_or_else(|| default_eps_deriv(pet));
    let level_tol = params.level_tol.unwrap_or_else(|| default_level_tol(pet));
    let segments = detect_steady_segments(pet, eps_deriv, params.min_len);
    let mut pea = mine_pea(&segments, level_tol, eps_deriv, params.eps_eq)
        .context("mining automaton")?;
    if let Some(path) = &params.augment {
        let file = File::open(path)
            .with_context(|| format!("opening augmentation {}", path.display()))?;
        let aug = PeaAugmentation::read(BufReader::new(file))
            .with_context(|| format!("reading augmentation {}", path.display()))?;
        pea = pea.augmented(&aug).context("applying augmentation")?;
    }
    let path = cli.out.join("pea.json");
    let mut w = writer(&path)?;
    write_pea(&mut w, &pea)?;
    w.flush()?;
    println!(
        "mine: {} plateaus -> {} states, {} transitions -> {}",
        segments.len(),
        pea.states().len(),
        pea.transitions().len(),
        path.display()
    );
    Ok(pea)
}

fn cmd_execute(
    cli: &Cli,
    pea: &Pea<f64>,
    pet: &Pet<f64>,
    policy: PolicyArg,
    cap: usize,
) -> Result<MpeaExecution<f64>> {
    match policy {
        PolicyArg::FirstDeclared => {
            let e = execute(pea, pet).context("executing trace")?;
            let path = cli.out.join("execution.csv");
            let mut w = writer(&path)?;
            write_execution(&mut w, &e)?;
            w.flush()?;
            println!("execute: {} steps -> {}", e.labels.len(), path.display());
            Ok(e)
        }
        PolicyArg::EnumerateAll => {
            let all = enumerate_executions(pea, pet, cap).context("enumerating executions")?;
            for (k, e) in all.iter().enumerate() {
                let path = cli.out.join(format!("execution_{k:04}.csv"));
                let mut w = writer(&path)?;
                write_execution(&mut w, e)?;
                w.flush()?;
            }
            println!("execute: {} executions -> {}", all.len(), cli.out.display());
            Ok(all.into_iter().next().expect("at least one execution"))
        }
    }
}

fn cmd_classify(
    cli: &Cli,
    executions: &[(String, MpeaExecution<f64>)],
) -> Result<MpeaTrace> {
    let mut counts = GroupCounts::default();
    let mut first_trace = None;
    for (name, e) in executions {
        // natural labeling: each steady position carries the lowercased
        // state name, so no automaton file is needed here
        let trace = MpeaTrace {
            steps: e
                .states
                .iter()
                .map(|s| {
                    if s.steady {
                        topomon::monitor::StepSet::props(&[&s.rho.to_lowercase()])
                    } else {
                        topomon::monitor::StepSet::Omega
                    }
                })
                .collect(),
        };
        let group = classify_trace(&trace);
        counts.add(group);
        let path = cli.out.join(format!("trace_{name}.txt"));
        let mut w = writer(&path)?;
        write_trace(&mut w, &trace)?;
        w.flush()?;
        println!("classify: {name} -> {group}");
        first_trace.get_or_insert(trace);
    }
    let path = cli.out.join("groups.csv");
    let mut w = writer(&path)?;
    write_group_counts(&mut w, &counts)?;
    w.flush()?;
    Ok(first_trace.expect("at least one execution"))
}

fn cmd_check(
    cli: &Cli,
    traces: &[(String, MpeaTrace)],
    properties: &Path,
) -> Result<ExitCode> {
    let file = File::open(properties)
        .with_context(|| format!("opening properties {}", properties.display()))?;
    let props = read_properties(BufReader::new(file))
        .with_context(|| format!("reading properties {}", properties.display()))?;
    if props.is_empty() {
        bail!("property file {} has no formulas", properties.display());
    }
    let mut rows = Vec::new();
    let mut any_false = false;
    let mut any_unknown = false;
    for (trace_id, trace) in traces {
        if trace.is_empty() {
            bail!("trace {trace_id} is empty");
        }
        for (k, (_, f)) in props.iter().enumerate() {
            let v = evaluate(f, trace, 0);
            any_false |= v == Verdict::False;
            any_unknown |= v == Verdict::Unknown;
            println!("check: {trace_id} p{} -> {v}", k + 1);
            rows.push((trace_id.clone(), format!("p{}", k + 1), v));
        }
    }
    let path = cli.out.join("report.csv");
    let mut w = writer(&path)?;
    write_verdicts(&mut w, &rows)?;
    w.flush()?;
    Ok(if any_false {
        ExitCode::from(3)
    } else if any_unknown {
        ExitCode::from(4)
    } else {
        ExitCode::SUCCESS
    })
}

fn read_graphs(path: &Path) -> Result<Vec<WeightedGraph>> {
    let file =
        File::open(path).with_context(|| format!("opening snapshots {}", path.display()))?;
    let graphs = read_snapshots(BufReader::new(file))
        .with_context(|| format!("reading snapshots {}", path.display()))?;
    if graphs.is_empty() {
        bail!("snapshot file {} has no ticks", path.display());
    }
    Ok(graphs)
}

fn read_pet_file(path: &Path) -> Result<Pet<f64>> {
    let file = File::open(path).with_context(|| format!("opening PET {}", path.display()))?;
    read_pet(BufReader::new(file)).with_context(|| format!("reading PET {}", path.display()))
}

fn read_pea_file(path: &Path) -> Result<Pea<f64>> {
    let file =
        File::open(path).with_context(|| format!("opening automaton {}", path.display()))?;
    read_pea(BufReader::new(file))
        .with_context(|| format!("reading automaton {}", path.display()))
}

fn writer(path: &Path) -> Result<BufWriter<File>> {
    let file =
        File::create(path).with_context(|| format!("creating {}", path.display()))?;
    Ok(BufWriter::new(file))
}

fn stem_of(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "trace".to_string())
}
