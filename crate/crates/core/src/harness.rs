//! Monte-Carlo experiments on weighted additive functions with quadratic cost.
//!
//! Every trial draws a fresh instance and noise world, runs each contender,
//! and records `f(ALG) / f(O*)` with the exact function and exact optimum.
//! Seeds are derived from `(master_seed, trial)`, so results do not depend on
//! the worker count or on scheduling.

use std::fmt::Write as _;
use std::hash::Hasher;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use siphasher::sip::SipHasher13;

use crate::error::{Error, Result};
use crate::generators::random_nonnegative_quadratic;
use crate::matroid::Matroid;
use crate::meta::{meta_solve, MetaConfig};
use crate::noise::{NoiseSpec, PersistentNoisyOracle, ResampledNoisyOracle};
use crate::set::{ElementSet, GroundSet};
use crate::setfn::{SetFunctionSpec, ValueOracle};
use crate::solvers::{solve, Algorithm};

/// Parameters of the random instance family.
#[derive(Debug, Clone, PartialEq)]
pub struct InstanceFamily {
    pub weight_low: f64,
    pub weight_high: f64,
    /// The cost is `cost_scale / n`.
    pub cost_scale: f64,
    pub noise: NoiseSpec,
    /// Redraws allowed while looking for a non-negative instance.
    pub max_attempts: usize,
}

impl Default for InstanceFamily {
    fn default() -> Self {
        Self {
            weight_low: 0.0,
            weight_high: 20.0,
            cost_scale: 10.0,
            noise: NoiseSpec::gaussian(0.1).expect("valid variance"),
            max_attempts: 10_000,
        }
    }
}

/// How repeated queries of one set behave.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum NoiseModel {
    /// Same answer every time.
    #[default]
    Persistent,
    /// A fresh multiplier per query.
    Resampled,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleAccess {
    Exact,
    Noisy,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ContenderKind {
    /// Run `algorithm` on the exact or raw noisy oracle, unconstrained.
    Direct { algorithm: Algorithm, access: OracleAccess },
    /// The smoothing meta-algorithm on the noisy oracle, unconstrained.
    Meta { h: usize, t: usize, m: usize, inner: Algorithm },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Contender {
    pub name: String,
    pub kind: ContenderKind,
}

impl Contender {
    /// Double greedy with exact and noisy values, a random half, and the
    /// meta-algorithm around double greedy for each `m` in `ms`.
    pub fn standard_lineup(n: usize, h: usize, t: usize, ms: &[usize]) -> Vec<Contender> {
        let mut out = vec![
            Contender {
                name: "DG-exact".into(),
                kind: ContenderKind::Direct { algorithm: Algorithm::double_greedy(), access: OracleAccess::Exact },
            },
            Contender {
                name: "DG-noisy".into(),
                kind: ContenderKind::Direct { algorithm: Algorithm::double_greedy(), access: OracleAccess::Noisy },
            },
            Contender {
                name: "Random".into(),
                kind: ContenderKind::Direct {
                    algorithm: Algorithm::RandomSubset { size: n / 2 },
                    access: OracleAccess::Exact,
                },
            },
        ];
        for &m in ms {
            out.push(Contender {
                name: format!("Ours(m={m})"),
                kind: ContenderKind::Meta { h, t, m, inner: Algorithm::double_greedy() },
            });
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentSpec {
    pub n: usize,
    pub trials: usize,
    pub family: InstanceFamily,
    pub contenders: Vec<Contender>,
    pub master_seed: u64,
    /// Worker threads; `None` uses the available parallelism.
    pub workers: Option<usize>,
    pub noise_model: NoiseModel,
}

impl ExperimentSpec {
    pub fn validate(&self) -> Result<()> {
        GroundSet::new(self.n)?;
        if self.trials == 0 {
            return Err(Error::InvalidParameters("at least one trial is required".into()));
        }
        if self.contenders.is_empty() {
            return Err(Error::InvalidParameters("no algorithms to run".into()));
        }
        if self.workers == Some(0) {
            return Err(Error::InvalidParameters("worker count must be positive".into()));
        }
        let f = &self.family;
        if !(f.weight_low < f.weight_high) || !(f.cost_scale >= 0.0) || f.max_attempts == 0 {
            return Err(Error::InvalidParameters("bad instance family parameters".into()));
        }
        f.noise.validate()?;
        let matroid = Matroid::free(GroundSet::new(self.n)?);
        for c in &self.contenders {
            if let ContenderKind::Meta { h, t, m, inner } = &c.kind {
                MetaConfig { h: *h, t: *t, m: *m, inner: inner.clone(), matroid: matroid.clone() }
                    .validate()?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrialRecord {
    pub trial: usize,
    pub algorithm: String,
    pub ratio: f64,
    pub seconds: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Summary {
    pub algorithm: String,
    pub mean: f64,
    /// Sample standard deviation (divisor `trials - 1`; zero for one trial).
    pub std: f64,
    pub trials: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentReport {
    pub n: usize,
    pub master_seed: u64,
    pub records: Vec<TrialRecord>,
    pub summaries: Vec<Summary>,
}

const INSTANCE_STREAM: u64 = 1;
const NOISE_STREAM: u64 = 2;
const ALGORITHM_STREAM: u64 = 3;

/// Seed for `(master_seed, trial, stream)`.
pub fn derive_seed(master_seed: u64, trial: u64, stream: u64) -> u64 {
    let mut h = SipHasher13::new_with_keys(master_seed, 0x7472_6961_6c73_6565);
    h.write_u64(trial);
    h.write_u64(stream);
    h.finish()
}

/// The trial's function and its persistent noise world.
pub fn generate_instance(
    spec: &ExperimentSpec,
    trial: usize,
) -> Result<(SetFunctionSpec, PersistentNoisyOracle<SetFunctionSpec>)> {
    let f = generate_function(spec, trial)?;
    let noise_seed = derive_seed(spec.master_seed, trial as u64, NOISE_STREAM);
    Ok((f.clone(), PersistentNoisyOracle::new(f, spec.family.noise, noise_seed)))
}

fn generate_function(spec: &ExperimentSpec, trial: usize) -> Result<SetFunctionSpec> {
    let fam = &spec.family;
    let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(spec.master_seed, trial as u64, INSTANCE_STREAM));
    random_nonnegative_quadratic(
        spec.n,
        fam.weight_low,
        fam.weight_high,
        fam.cost_scale / spec.n as f64,
        fam.max_attempts,
        &mut rng,
    )
}

/// Maximizer of a weighted additive function with quadratic cost: since the
/// cost only depends on `|S|`, the best set of each size is the top weights,
/// and the best of those prefixes is optimal. Prefers the shortest prefix on ties.
pub fn optimum_exact(spec: &SetFunctionSpec) -> Result<(ElementSet, f64)> {
    let SetFunctionSpec::WeightedAdditiveQuadratic { weights, cost } = spec else {
        return Err(Error::Unsupported("closed-form optimum needs a weighted additive quadratic function".into()));
    };
    let mut order: Vec<usize> = (0..weights.len()).collect();
    order.sort_by(|&a, &b| weights[b].total_cmp(&weights[a]).then(a.cmp(&b)));
    let (mut best_k, mut best) = (0, 0.0);
    let mut prefix = 0.0;
    for (k, &i) in order.iter().enumerate() {
        prefix += weights[i];
        let kk = (k + 1) as f64;
        let v = prefix - cost * kk * kk;
        if v > best {
            best = v;
            best_k = k + 1;
        }
    }
    let set = ElementSet::from_elements(weights.len(), order[..best_k].iter().copied())?;
    Ok((set, spec.value(&set)))
}

fn run_contender<O: ValueOracle>(
    exact: &SetFunctionSpec,
    noisy: &O,
    contender: &Contender,
    rng: &mut ChaCha8Rng,
) -> Result<ElementSet> {
    let matroid = Matroid::free(exact.ground_set());
    match &contender.kind {
        ContenderKind::Direct { algorithm, access: OracleAccess::Exact } => solve(exact, &matroid, algorithm, rng),
        ContenderKind::Direct { algorithm, access: OracleAccess::Noisy } => solve(noisy, &matroid, algorithm, rng),
        ContenderKind::Meta { h, t, m, inner } => {
            let cfg = MetaConfig { h: *h, t: *t, m: *m, inner: inner.clone(), matroid };
            meta_solve(noisy, &cfg, rng)
        }
    }
}

fn run_trial(spec: &ExperimentSpec, trial: usize) -> Result<Vec<TrialRecord>> {
    let f = generate_function(spec, trial)?;
    let (_, opt) = optimum_exact(&f)?;
    let noise_seed = derive_seed(spec.master_seed, trial as u64, NOISE_STREAM);
    let mut out = Vec::with_capacity(spec.contenders.len());
    for (idx, contender) in spec.contenders.iter().enumerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(spec.master_seed, trial as u64, ALGORITHM_STREAM));
        rng.set_stream(idx as u64);
        let start = Instant::now();
        let set = match spec.noise_model {
            NoiseModel::Persistent => {
                let o = PersistentNoisyOracle::new(&f, spec.family.noise, noise_seed);
                run_contender(&f, &o, contender, &mut rng)?
            }
            NoiseModel::Resampled => {
                let o = ResampledNoisyOracle::new(&f, spec.family.noise, noise_seed);
                run_contender(&f, &o, contender, &mut rng)?
            }
        };
        let seconds = start.elapsed().as_secs_f64();
        let value = f.value(&set);
        let ratio = if opt > 0.0 { value / opt } else { 1.0 };
        out.push(TrialRecord { trial, algorithm: contender.name.clone(), ratio, seconds });
    }
    Ok(out)
}

/// Runs every trial and summarizes the ratios per contender.
pub fn run_experiment(spec: &ExperimentSpec) -> Result<ExperimentReport> {
    spec.validate()?;
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(w) = spec.workers {
        builder = builder.num_threads(w);
    }
    let pool = builder.build().map_err(|e| Error::InvalidParameters(e.to_string()))?;
    let per_trial: Vec<Vec<TrialRecord>> =
        pool.install(|| (0..spec.trials).into_par_iter().map(|t| run_trial(spec, t)).collect::<Result<_>>())?;
    let records: Vec<TrialRecord> = per_trial.into_iter().flatten().collect();
    let summaries = spec
        .contenders
        .iter()
        .map(|c| {
            let ratios: Vec<f64> = records.iter().filter(|r| r.algorithm == c.name).map(|r| r.ratio).collect();
            let (mean, std) = mean_and_std(&ratios);
            Summary { algorithm: c.name.clone(), mean, std, trials: ratios.len() }
        })
        .collect();
    Ok(ExperimentReport { n: spec.n, master_seed: spec.master_seed, records, summaries })
}

/// Mean and sample standard deviation (`n - 1` divisor, zero when `n < 2`).
pub fn mean_and_std(xs: &[f64]) -> (f64, f64) {
    if xs.is_empty() {
        return (f64::NAN, f64::NAN);
    }
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    if xs.len() < 2 {
        return (mean, 0.0);
    }
    let ss: f64 = xs.iter().map(|x| (x - mean).powi(2)).sum();
    (mean, (ss / (n - 1.0)).sqrt())
}

impl ExperimentReport {
    /// Per-trial rows followed by a summary block. The `seconds` column is
    /// left empty unless `timings` is set, so that the default output is
    /// reproducible byte for byte.
    pub fn to_csv(&self, timings: bool) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "# n={} seed={}; std is the sample standard deviation with divisor trials-1",
            self.n, self.master_seed
        );
        s.push_str("algorithm,trial,ratio,seconds\n");
        for r in &self.records {
            if timings {
                let _ = writeln!(s, "{},{},{},{:.6}", r.algorithm, r.trial, r.ratio, r.seconds);
            } else {
                let _ = writeln!(s, "{},{},{},", r.algorithm, r.trial, r.ratio);
            }
        }
        s.push_str("\nsummary,mean,std,trials\n");
        for m in &self.summaries {
            let _ = writeln!(s, "{},{},{},{}", m.algorithm, m.mean, m.std, m.trials);
        }
        s
    }

    /// Aligned plain-text table of the summaries.
    pub fn table(&self) -> String {
        let width = self.summaries.iter().map(|m| m.algorithm.len()).max().unwrap_or(9).max(9);
        let mut s = format!("{:<width$}  {:>8}  {:>8}  {:>6}\n", "algorithm", "mean", "std", "trials");
        for m in &self.summaries {
            let _ = writeln!(s, "{:<width$}  {:>8.3}  {:>8.3}  {:>6}", m.algorithm, m.mean, m.std, m.trials);
        }
        s
    }

    pub fn summary(&self, algorithm: &str) -> Option<&Summary> {
        self.summaries.iter().find(|m| m.algorithm == algorithm)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_spec(workers: usize) -> ExperimentSpec {
        ExperimentSpec {
            n: 12,
            trials: 6,
            family: InstanceFamily::default(),
            contenders: Contender::standard_lineup(12, 4, 1, &[3]),
            master_seed: 42,
            workers: Some(workers),
            noise_model: NoiseModel::Persistent,
        }
    }

    #[test]
    fn closed_form_optimum_examples() {
        let f = SetFunctionSpec::weighted_additive_quadratic(vec![5.0, 5.0], 2.0).unwrap();
        let (s, v) = optimum_exact(&f).unwrap();
        assert_eq!((s.len(), v), (1, 3.0));
        let f = SetFunctionSpec::weighted_additive_quadratic(vec![10.0, 10.0], 5.0).unwrap();
        assert_eq!(optimum_exact(&f).unwrap().1, 5.0);
        assert!(optimum_exact(&SetFunctionSpec::modular(vec![1.0]).unwrap()).is_err());
    }

    #[test]
    fn all_weights_at_maximum() {
        let n = 8;
        let f = SetFunctionSpec::weighted_additive_quadratic(vec![20.0; n], 10.0 / n as f64).unwrap();
        assert!(f.is_nonnegative_certified());
        assert_eq!(f.value(&f.ground_set().full_set()), 10.0 * n as f64);
    }

    #[test]
    fn csv_is_independent_of_worker_count() {
        let a = run_experiment(&small_spec(1)).unwrap().to_csv(false);
        let b = run_experiment(&small_spec(3)).unwrap().to_csv(false);
        assert_eq!(a, b);
        assert_eq!(a.lines().filter(|l| l.starts_with("DG-exact,") && l.ends_with(',')).count(), 6);
    }

    #[test]
    fn exact_ratios_are_at_most_one() {
        let report = run_experiment(&small_spec(2)).unwrap();
        for r in &report.records {
            if r.algorithm == "DG-exact" || r.algorithm == "Random" {
                assert!(r.ratio <= 1.0 + 1e-9);
            }
        }
    }

    #[test]
    fn sample_std() {
        let (m, s) = mean_and_std(&[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(m, 2.5);
        assert!((s - (5.0f64 / 3.0).sqrt()).abs() < 1e-15);
        assert_eq!(mean_and_std(&[7.0]), (7.0, 0.0));
    }
}
