use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use noisub_core::checks;
use noisub_core::harness::{run_experiment, Contender, ExperimentSpec, InstanceFamily, NoiseModel};
use noisub_core::instance::Instance;
use noisub_core::meta::{meta_solve_detailed, MetaConfig};
use noisub_core::noise::NoiseDistribution;
use noisub_core::solvers::{solve, ContinuousGreedyConfig, Direction, ElementOrder};
use noisub_core::surrogate::{compute_parameters, ParamBudget};
use noisub_core::{Algorithm, Estimator, NoiseSpec, PersistentNoisyOracle, SetFunctionSpec, ValueOracle};

/// Submodular maximization with a persistent noisy value oracle.
#[derive(Parser)]
#[command(name = "noisub", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the quadratic-cost experiment and report mean approximation ratios.
    Simulate(SimulateArgs),
    /// Run one algorithm on an instance file.
    Solve(SolveArgs),
    /// Run the verification suites; exits nonzero if any fails.
    Check(CheckArgs),
    /// Print the smallest (h, t, m) meeting an accuracy target.
    Params(ParamsArgs),
}

#[derive(Args)]
struct SimulateArgs {
    #[arg(long, default_value_t = 50)]
    n: usize,
    #[arg(long, default_value_t = 1000)]
    trials: usize,
    #[arg(long, default_value_t = 20)]
    h: usize,
    #[arg(long, default_value_t = 4)]
    t: usize,
    /// Sample counts for the smoothing meta-algorithm, one contender each.
    #[arg(long, value_delimiter = ',', default_values_t = [50, 200])]
    m: Vec<usize>,
    /// Variance of the Gaussian multiplier.
    #[arg(long, default_value_t = 0.1)]
    sigma2: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Worker threads (default: available parallelism).
    #[arg(long)]
    workers: Option<usize>,
    /// Write per-trial rows and the summary as CSV.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Fill the seconds column (makes the CSV run-dependent).
    #[arg(long)]
    timings: bool,
    #[arg(long, value_enum, default_value_t = NoiseArg::Persistent)]
    noise_model: NoiseArg,
}

#[derive(Clone, Copy, ValueEnum)]
enum NoiseArg {
    Persistent,
    Resampled,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum AlgorithmArg {
    Greedy,
    DoubleGreedy,
    ContinuousGreedy,
    Random,
    Meta,
}

#[derive(Args)]
struct SolveArgs {
    /// TOML instance file.
    instance: PathBuf,
    #[arg(long, value_enum, default_value_t = AlgorithmArg::Meta)]
    algorithm: AlgorithmArg,
    /// Algorithm wrapped by the meta-algorithm.
    #[arg(long, value_enum, default_value_t = AlgorithmArg::DoubleGreedy)]
    inner: AlgorithmArg,
    /// Continuous greedy step size (its inverse must be an integer).
    #[arg(long, default_value_t = 0.01)]
    delta: f64,
    /// Samples per coordinate weight when the extension is estimated.
    #[arg(long, default_value_t = 100)]
    partial_samples: usize,
    /// Compute the extension exactly (at most 20 elements).
    #[arg(long)]
    exact_extension: bool,
    /// Drive continuous greedy by the gradient instead of expected marginals.
    #[arg(long)]
    gradient: bool,
    /// Process double greedy elements in random order.
    #[arg(long)]
    shuffle: bool,
    /// Size of the random baseline (default: half the ground set).
    #[arg(long)]
    size: Option<usize>,
    #[arg(long, default_value_t = 0)]
    h: usize,
    #[arg(long, default_value_t = 0)]
    t: usize,
    #[arg(long, default_value_t = 1)]
    m: usize,
    /// Algorithm randomness.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Seed of the noise world.
    #[arg(long, default_value_t = 0)]
    noise_seed: u64,
}

#[derive(Args)]
struct CheckArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Smaller instance counts for a fast smoke run.
    #[arg(long)]
    quick: bool,
}

#[derive(Args)]
struct ParamsArgs {
    #[arg(long)]
    epsilon: f64,
    #[arg(long)]
    delta: f64,
    #[arg(long, default_value_t = 1.0)]
    f_max: f64,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    rank: Option<usize>,
    /// Noise as `gaussian=<variance>`, `uniform=<half width>` or `exponential=<rate>`.
    #[arg(long, value_parser = parse_noise, default_value = "gaussian=0.1")]
    noise: NoiseSpec,
}

fn parse_noise(s: &str) -> Result<NoiseSpec, String> {
    let (kind, value) = s.split_once('=').ok_or("expected <kind>=<value>")?;
    let v: f64 = value.parse().map_err(|e| format!("{value}: {e}"))?;
    let dist = match kind {
        "gaussian" => NoiseDistribution::Gaussian { variance: v },
        "uniform" => NoiseDistribution::BoundedUniform { half_width: v },
        "exponential" => NoiseDistribution::ShiftedExponential { rate: v },
        other => return Err(format!("unknown noise kind {other}")),
    };
    NoiseSpec::new(dist).map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Simulate(a) => simulate(a),
        Command::Solve(a) => solve_instance(a),
        Command::Check(a) => check(a),
        Command::Params(a) => params(a),
    }
}

fn simulate(a: SimulateArgs) -> Result<ExitCode> {
    let family = InstanceFamily { noise: NoiseSpec::gaussian(a.sigma2)?, ..InstanceFamily::default() };
    let spec = ExperimentSpec {
        n: a.n,
        trials: a.trials,
        family,
        contenders: Contender::standard_lineup(a.n, a.h, a.t, &a.m),
        master_seed: a.seed,
        workers: a.workers,
        noise_model: match a.noise_model {
            NoiseArg::Persistent => NoiseModel::Persistent,
            NoiseArg::Resampled => NoiseModel::Resampled,
        },
    };
    let report = run_experiment(&spec)?;
    if let Some(path) = &a.out {
        std::fs::write(path, report.to_csv(a.timings)).with_context(|| format!("writing {}", path.display()))?;
    }
    println!("n={} trials={} seed={} (std: sample, divisor trials-1)", a.n, a.trials, a.seed);
    print!("{}", report.table());
    Ok(ExitCode::SUCCESS)
}

fn direct_algorithm(a: &SolveArgs, which: AlgorithmArg, n: usize) -> Result<Algorithm> {
    Ok(match which {
        AlgorithmArg::Greedy => Algorithm::Greedy,
        AlgorithmArg::DoubleGreedy => Algorithm::DoubleGreedy {
            order: if a.shuffle { ElementOrder::Shuffled } else { ElementOrder::Ascending },
        },
        AlgorithmArg::ContinuousGreedy => {
            let estimator = if a.exact_extension {
                Estimator::Exact
            } else {
                Estimator::Sampled { samples: a.partial_samples }
            };
            let direction = if a.gradient { Direction::Gradient } else { Direction::ExpectedMarginal };
            Algorithm::MeasuredContinuousGreedy(
                ContinuousGreedyConfig::from_delta(a.delta, estimator)?.with_direction(direction),
            )
        }
        AlgorithmArg::Random => Algorithm::RandomSubset { size: a.size.unwrap_or(n / 2) },
        AlgorithmArg::Meta => bail!("the meta-algorithm cannot wrap itself"),
    })
}

fn solve_instance(a: SolveArgs) -> Result<ExitCode> {
    let inst = Instance::load(&a.instance)?;
    let f: &SetFunctionSpec = &inst.function;
    let matroid = inst.matroid()?;
    let noise = inst.noise.unwrap_or_else(NoiseSpec::none);
    let oracle = PersistentNoisyOracle::new(f, noise, a.noise_seed);
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    let set = if a.algorithm == AlgorithmArg::Meta {
        let cfg = MetaConfig { h: a.h, t: a.t, m: a.m, inner: direct_algorithm(&a, a.inner, f.len())?, matroid };
        let out = meta_solve_detailed(&oracle, &cfg, &mut rng)?;
        println!("smoothing set: {}", out.smoothing);
        println!("added back:    {}", out.added);
        out.set
    } else {
        solve(&oracle, &matroid, &direct_algorithm(&a, a.algorithm, f.len())?, &mut rng)?
    };
    println!("solution:      {set}");
    println!("value:         {}", f.value(&set));
    println!("noisy value:   {}", oracle.value(&set));
    println!("queries:       {}", oracle.query_count() - 1);
    Ok(ExitCode::SUCCESS)
}

fn check(a: CheckArgs) -> Result<ExitCode> {
    let seed = a.seed;
    let results = if a.quick {
        vec![
            checks::double_greedy_guarantee(5, 300, seed)?,
            checks::double_greedy_robustness(5, 300, seed)?,
            checks::continuous_greedy_monotone(3, 1000, seed)?,
            checks::continuous_greedy_nonmonotone(3, seed)?,
            checks::surrogate_submodularity(10, seed)?,
            checks::surrogate_concentration(20, 20, seed)?,
            checks::smoothing_lemma(seed)?,
            checks::removal_lemmas(2, seed)?,
            checks::random_smoothing_lemmas(2, seed)?,
            checks::noise_properties(seed)?,
        ]
    } else {
        checks::run_all(seed)?
    };
    for r in &results {
        println!("{r}");
    }
    let failed = results.iter().filter(|r| !r.passed).count();
    println!("{} of {} suites passed", results.len() - failed, results.len());
    Ok(if failed == 0 { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}

fn params(a: ParamsArgs) -> Result<ExitCode> {
    let budget = ParamBudget { epsilon: a.epsilon, delta: a.delta, f_max: a.f_max, noise: a.noise };
    let p = compute_parameters(&budget, a.n, a.rank)?;
    println!("h = {}", p.h);
    println!("t = {}", p.t);
    println!("m = {}", p.m);
    println!("h <= n: {}", p.fits_ground);
    if let Some(fits) = p.fits_rank {
        println!("h <= rank: {fits}");
    }
    Ok(ExitCode::SUCCESS)
}
