//! Verification suites for the guarantees the algorithms rest on.
//!
//! Each suite builds its own instances from a seed, computes the quantity of
//! interest by exhaustive enumeration where possible, and compares it with the
//! bound the algorithm or lemma promises. All of them are deterministic for a
//! given seed.

use std::cell::{Cell, RefCell};
use std::collections::HashMap;
use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::analysis::{brute_force_opt, check_monotone, first_submodularity_violation, SubsetTable};
use crate::combinatorics::{binomial, k_subsets, random_k_subset};
use crate::error::Result;
use crate::extension::{Estimator, EXACT_EXTENSION_LIMIT};
use crate::generators::{random_coverage, random_cut, random_nonnegative_quadratic, random_submodular};
use crate::harness::{mean_and_std, optimum_exact};
use crate::matroid::Matroid;
use crate::noise::{sample_multiplier, NoiseSpec, PersistentNoisyOracle};
use crate::set::{ElementSet, GroundSet};
use crate::setfn::{FnOracle, SetFunctionSpec, ValueOracle};
use crate::solvers::{double_greedy, measured_continuous_greedy, pipage_round, ContinuousGreedyConfig};
use crate::surrogate::{compute_parameters, surrogate_exact, ParamBudget, SampledSurrogate, SurrogateConfig};

const TOL: f64 = 1e-9;

/// Result of one suite.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "[{tag}] {}: {}", self.name, self.detail)
    }
}

fn outcome(name: &'static str, failures: usize, total: usize, extra: String) -> CheckOutcome {
    CheckOutcome {
        name,
        passed: failures == 0,
        detail: format!("{}/{} cases hold; {extra}", total - failures, total),
    }
}

fn standard_error(values: &[f64]) -> (f64, f64) {
    let (mean, std) = mean_and_std(values);
    (mean, std / (values.len() as f64).sqrt())
}

fn mask_of(s: &ElementSet) -> u64 {
    s.mask()
}

fn popcount(x: u64) -> usize {
    x.count_ones() as usize
}

/// All `k`-subsets of `mask` as masks.
fn mask_subsets_of_size(mask: u64, k: usize) -> Vec<u64> {
    let mut out = Vec::new();
    let mut sub = mask;
    loop {
        if popcount(sub) == k {
            out.push(sub);
        }
        if sub == 0 {
            break;
        }
        sub = (sub - 1) & mask;
    }
    out
}

fn double_greedy_instances(count: usize, seed: u64) -> Result<Vec<(SetFunctionSpec, ElementSet, f64)>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|k| {
            let f = random_submodular(8 + k % 5, &mut rng)?;
            let (opt_set, opt) = brute_force_opt(&f, None)?;
            Ok((f, opt_set, opt))
        })
        .collect()
}

/// Exact-oracle double greedy reaches half the optimum in expectation.
pub fn double_greedy_guarantee(instances: usize, runs: usize, seed: u64) -> Result<CheckOutcome> {
    let mut failures = 0;
    let mut worst = f64::INFINITY;
    for (k, (f, _, opt)) in double_greedy_instances(instances, seed)?.iter().enumerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (k as u64) << 32);
        let values = (0..runs)
            .map(|_| double_greedy(f, f.ground_set(), &mut rng).map(|s| f.value(&s)))
            .collect::<Result<Vec<_>>>()?;
        let (mean, se) = standard_error(&values);
        let slack = mean - (0.5 * opt - 3.0 * se);
        worst = worst.min(slack / opt);
        if slack < -TOL {
            failures += 1;
        }
    }
    Ok(outcome(
        "double greedy reaches half the optimum",
        failures,
        instances,
        format!("{runs} runs each, worst slack {worst:.4} OPT"),
    ))
}

/// Perturbs every value query by `±eps`, choosing the sign that pushes
/// double greedy (ascending order over the full ground set) away from a fixed
/// optimal set. Answers are memoized so repeated queries agree.
pub struct WorstSignOracle<'a> {
    base: &'a SetFunctionSpec,
    eps: f64,
    target: ElementSet,
    queries: Cell<u64>,
    memo: RefCell<HashMap<ElementSet, f64>>,
}

impl<'a> WorstSignOracle<'a> {
    pub fn new(base: &'a SetFunctionSpec, eps: f64, target: ElementSet) -> Self {
        Self { base, eps, target, queries: Cell::new(0), memo: RefCell::new(HashMap::new()) }
    }
}

impl ValueOracle for WorstSignOracle<'_> {
    fn ground(&self) -> GroundSet {
        self.base.ground_set()
    }

    fn value(&self, s: &ElementSet) -> f64 {
        let q = self.queries.get();
        self.queries.set(q + 1);
        if let Some(v) = self.memo.borrow().get(s) {
            return *v;
        }
        // four queries per element: X + u, X, Y - u, Y
        let u = (q / 4) as usize;
        let wanted = self.target.contains(u);
        // positive sign makes adding u look better
        let favour_add = match q % 4 {
            0 | 3 => 1.0,
            _ => -1.0,
        };
        let sign = if wanted { -favour_add } else { favour_add };
        let v = self.base.value(s) + sign * self.eps;
        self.memo.borrow_mut().insert(*s, v);
        v
    }
}

/// Double greedy under a worst-sign `±ε` value perturbation with `ε = 0.01 OPT`.
pub fn double_greedy_robustness(instances: usize, runs: usize, seed: u64) -> Result<CheckOutcome> {
    let mut failures = 0;
    let mut worst = f64::INFINITY;
    for (k, (f, opt_set, opt)) in double_greedy_instances(instances, seed)?.iter().enumerate() {
        let eps = 0.01 * opt;
        let n = f.len() as f64;
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (k as u64) << 32);
        let mut values = Vec::with_capacity(runs);
        for _ in 0..runs {
            let adversary = WorstSignOracle::new(f, eps, *opt_set);
            values.push(f.value(&double_greedy(&adversary, f.ground_set(), &mut rng)?));
        }
        let (mean, se) = standard_error(&values);
        let slack = mean - (0.5 * opt - 1.5 * n * eps - 3.0 * se);
        worst = worst.min(slack / opt);
        if slack < -TOL {
            failures += 1;
        }
    }
    Ok(outcome(
        "double greedy under worst-sign perturbation",
        failures,
        instances,
        format!("{runs} runs each, worst slack {worst:.4} OPT"),
    ))
}

/// Monotone coverage under a cardinality constraint: the fractional point
/// reaches `(1 - 1/e - 0.03) OPT` and rounding does not lose value on average.
pub fn continuous_greedy_monotone(instances: usize, roundings: usize, seed: u64) -> Result<CheckOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cfg = ContinuousGreedyConfig::from_delta(1.0 / 200.0, Estimator::Exact)?;
    let factor = 1.0 - (-1.0f64).exp() - 0.03;
    let (mut failures, mut worst_ratio, mut worst_round) = (0, f64::INFINITY, f64::INFINITY);
    for _ in 0..instances {
        let f = random_coverage(10, 20, 0.2, &mut rng)?;
        let m = Matroid::uniform(f.ground_set(), 3)?;
        let (_, opt) = brute_force_opt(&f, Some(&m))?;
        let x = measured_continuous_greedy(&f, &m, &cfg, &mut rng)?;
        let fx = SubsetTable::build(&f, EXACT_EXTENSION_LIMIT)?.multilinear(x.coords());
        let values = (0..roundings)
            .map(|_| pipage_round(&m, &x, &mut rng).map(|s| f.value(&s)))
            .collect::<Result<Vec<_>>>()?;
        let (mean, se) = standard_error(&values);
        worst_ratio = worst_ratio.min(fx / opt);
        worst_round = worst_round.min((mean - fx + 3.0 * se) / opt);
        if fx < factor * opt - TOL || mean < fx - 3.0 * se - TOL {
            failures += 1;
        }
    }
    Ok(outcome(
        "continuous greedy on monotone coverage",
        failures,
        instances,
        format!("worst F(x)/OPT {worst_ratio:.4} (need {factor:.4}), worst rounding slack {worst_round:.4} OPT"),
    ))
}

fn random_partition<R: Rng + ?Sized>(n: usize, parts: usize, rng: &mut R) -> Result<Matroid> {
    let mut ids: Vec<usize> = (0..n).collect();
    ids.shuffle(rng);
    let chunk = n.div_ceil(parts);
    let groups: Vec<Vec<usize>> = ids.chunks(chunk).map(|c| c.to_vec()).collect();
    let caps = groups.iter().map(|g| rng.random_range(1..=g.len())).collect();
    Matroid::partition(GroundSet::new(n)?, groups, caps)
}

/// Cut functions under a partition constraint reach `(1/e - 0.05) OPT`.
pub fn continuous_greedy_nonmonotone(instances: usize, seed: u64) -> Result<CheckOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cfg = ContinuousGreedyConfig::from_delta(1.0 / 200.0, Estimator::Exact)?;
    let factor = (-1.0f64).exp() - 0.05;
    let (mut failures, mut worst) = (0, f64::INFINITY);
    for _ in 0..instances {
        let f = random_cut(10, 0.4, &mut rng)?;
        let m = random_partition(10, 3, &mut rng)?;
        let (_, opt) = brute_force_opt(&f, Some(&m))?;
        let x = measured_continuous_greedy(&f, &m, &cfg, &mut rng)?;
        let fx = SubsetTable::build(&f, EXACT_EXTENSION_LIMIT)?.multilinear(x.coords());
        if opt > 0.0 {
            worst = worst.min(fx / opt);
        }
        if fx < factor * opt - TOL {
            failures += 1;
        }
    }
    Ok(outcome(
        "continuous greedy on cut functions",
        failures,
        instances,
        format!("worst F(x)/OPT {worst:.4} (need {factor:.4})"),
    ))
}

/// The exhaustive surrogate is submodular for random functions, smoothing sets and `t`.
pub fn surrogate_submodularity(configs: usize, seed: u64) -> Result<CheckOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = 0;
    for _ in 0..configs {
        let n = rng.random_range(5..=12);
        let f = random_submodular(n, &mut rng)?;
        let h = rng.random_range(1..=5.min(n - 1));
        let t = rng.random_range(0..h);
        let hs = random_k_subset(&f.ground_set().full_set(), h, &mut rng)?;
        let subs = k_subsets(&hs, t);
        let surrogate = FnOracle::new(f.ground_set(), |s: &ElementSet| {
            subs.iter().map(|hp| f.value(&s.union(hp))).sum::<f64>() / subs.len() as f64
        });
        let table = SubsetTable::build(&surrogate, 12)?;
        if first_submodularity_violation(&table).is_some() {
            failures += 1;
        }
    }
    Ok(outcome("surrogate is submodular", failures, configs, "exhaustive diminishing-returns check".into()))
}

/// The sampled surrogate stays within `ε = f_max / 4` of the exact surrogate
/// on random sets, except with probability at most `δ = 0.05`.
pub fn surrogate_concentration(worlds: usize, sets: usize, seed: u64) -> Result<CheckOutcome> {
    let (n, h, t, delta) = (30, 14, 5, 0.05);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let f = random_nonnegative_quadratic(n, 0.0, 20.0, 10.0 / n as f64, 10_000, &mut rng)?;
    let (_, f_max) = optimum_exact(&f)?;
    let noise = NoiseSpec::gaussian(0.1)?;
    let eps = f_max / 4.0;
    let params = compute_parameters(&ParamBudget { epsilon: eps, delta, f_max, noise }, n, None)?;
    let m = params.m;
    if binomial(h, t).is_none_or(|c| c < m as u128) {
        return Ok(CheckOutcome {
            name: "sampled surrogate concentration",
            passed: false,
            detail: format!("m = {m} exceeds C({h}, {t})"),
        });
    }
    let mut failed_worlds = 0;
    let mut worst = 0.0f64;
    for _ in 0..worlds {
        let world_seed = rng.random();
        let oracle = PersistentNoisyOracle::new(&f, noise, world_seed);
        let hs = random_k_subset(&f.ground_set().full_set(), h, &mut rng)?;
        let cfg = SurrogateConfig::sample(hs, t, m, &mut rng)?;
        let sampled = SampledSurrogate::new(&oracle, &cfg)?;
        let mut bad = false;
        for _ in 0..sets {
            let mut s = f.ground_set().empty_set();
            for e in 0..n {
                if !hs.contains(e) && rng.random::<bool>() {
                    s.insert(e);
                }
            }
            let err = (sampled.value(&s) - surrogate_exact(&f, &hs, t, &s)?).abs();
            worst = worst.max(err / f_max);
            bad |= err > eps;
        }
        failed_worlds += usize::from(bad);
    }
    let rate = failed_worlds as f64 / worlds as f64;
    Ok(CheckOutcome {
        name: "sampled surrogate concentration",
        passed: rate <= delta,
        detail: format!(
            "m={m}, h={h}, t={t}: failure rate {rate:.3} (allowed {delta}), largest error {worst:.4} f_max"
        ),
    })
}

/// `E_H[max_{S ∈ I_H} F^{H,t}(S)]` against `(1 - h/(r-h) - t/(h-t)) OPT`,
/// and against `(1 - h/(r-h)) OPT` when the function is monotone.
pub fn smoothing_lemma(seed: u64) -> Result<CheckOutcome> {
    let configs = [(10, 8, 2, 0), (10, 8, 2, 1), (12, 10, 2, 0), (12, 10, 3, 1), (12, 12, 3, 1)];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut total, mut failures) = (0, 0);
    let mut worst = f64::INFINITY;
    for &(n, r, h, t) in &configs {
        let family = [
            random_coverage(n, 2 * n, 0.25, &mut rng)?,
            random_cut(n, 0.4, &mut rng)?,
            random_nonnegative_quadratic(n, 0.0, 20.0, 10.0 / n as f64, 10_000, &mut rng)?,
        ];
        for f in &family {
            let m = Matroid::uniform(f.ground_set(), r)?;
            let (_, opt) = brute_force_opt(f, Some(&m))?;
            let table = SubsetTable::build(f, 12)?;
            let full = (1u64 << n) - 1;
            let basis = mask_of(&m.arbitrary_basis());
            let smoothing = mask_subsets_of_size(basis, h);
            let mut acc = 0.0;
            for &hm in &smoothing {
                let subs = mask_subsets_of_size(hm, t);
                let rest = full & !hm;
                let mut best = f64::NEG_INFINITY;
                let mut s = rest;
                loop {
                    if popcount(s) <= r - h {
                        let v = subs.iter().map(|&hp| table.get(s | hp)).sum::<f64>() / subs.len() as f64;
                        best = best.max(v);
                    }
                    if s == 0 {
                        break;
                    }
                    s = (s - 1) & rest;
                }
                acc += best;
            }
            let expected = acc / smoothing.len() as f64;
            let hf = h as f64;
            let general = (1.0 - hf / (r as f64 - hf) - t as f64 / (hf - t as f64)) * opt;
            total += 1;
            worst = worst.min((expected - general) / opt.max(TOL));
            if expected < general - TOL {
                failures += 1;
            }
            if check_monotone(&table) {
                let mono = (1.0 - hf / (r as f64 - hf)) * opt;
                total += 1;
                worst = worst.min((expected - mono) / opt.max(TOL));
                if expected < mono - TOL {
                    failures += 1;
                }
            }
        }
    }
    Ok(outcome("smoothing lemma", failures, total, format!("worst slack {worst:.4} OPT")))
}

/// Exhaustive checks of the three removal/addition inequalities for random
/// non-negative submodular functions on up to ten elements:
///
/// * `E_{x ~ A}[f(S) - f(S - x)] <= f(S) / |A|`
/// * `E_{B ~ A[k]}[f(S \ B)] >= f(S) - k/(|A|-k) max_{S' ⊆ S∩A, |S'| >= |S∩A|-k} f(S')`
/// * `E_{B ~ A[k]}[f(S ∪ B)] >= f(S) - k/(|A|-k) max_{S ⊆ S' ⊆ S∪A} f(S')`
pub fn removal_lemmas(instances: usize, seed: u64) -> Result<CheckOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut total, mut failures) = (0usize, 0usize);
    for k in 0..instances {
        let n = 6 + k % 5;
        let f = random_submodular(n, &mut rng)?;
        let table = SubsetTable::build(&f, 10)?;
        let full = (1u64 << n) - 1;
        let v = |m: u64| table.get(m);
        // g[k][C] = max f(S') over S' ⊆ C with |S'| >= |C| - k
        let mut g = vec![vec![f64::NEG_INFINITY; 1 << n]; 4];
        for c in 0..=full {
            let mut sub = c;
            loop {
                for (kk, row) in g.iter_mut().enumerate() {
                    if popcount(sub) + kk >= popcount(c) {
                        row[c as usize] = row[c as usize].max(v(sub));
                    }
                }
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & c;
            }
        }
        let mut ok = [true; 3];
        for a in 1..=full {
            let size_a = popcount(a);
            let subsets: Vec<Vec<u64>> = (1..=3).map(|kk| mask_subsets_of_size(a, kk)).collect();
            for s in 0..=full {
                let fs = v(s);
                let removal: f64 = (0..n)
                    .filter(|&x| a >> x & 1 == 1 && s >> x & 1 == 1)
                    .map(|x| fs - v(s & !(1 << x)))
                    .sum();
                if removal / size_a as f64 > fs / size_a as f64 + TOL {
                    ok[0] = false;
                }
                // max over S ⊆ S' ⊆ S ∪ A
                let d = a & !s;
                let mut up = f64::NEG_INFINITY;
                let mut sub = d;
                loop {
                    up = up.max(v(s | sub));
                    if sub == 0 {
                        break;
                    }
                    sub = (sub - 1) & d;
                }
                for kk in 1..=3usize.min(size_a.saturating_sub(1)) {
                    let bs = &subsets[kk - 1];
                    let coef = kk as f64 / (size_a - kk) as f64;
                    let down = bs.iter().map(|&b| v(s & !b)).sum::<f64>() / bs.len() as f64;
                    if down < fs - coef * g[kk][(s & a) as usize] - TOL {
                        ok[1] = false;
                    }
                    let add = bs.iter().map(|&b| v(s | b)).sum::<f64>() / bs.len() as f64;
                    if add < fs - coef * up - TOL {
                        ok[2] = false;
                    }
                }
            }
        }
        total += 3;
        failures += ok.iter().filter(|o| !**o).count();
    }
    Ok(outcome(
        "element removal and addition bounds",
        failures,
        total,
        format!("{instances} functions, three inequalities each, all (S, A, k)"),
    ))
}

/// Exhaustive checks, over all `S` and all smoothing sets `H` of size `h`, of
///
/// * `E_H[F^{H,t}(S \ H)] >= E_H[F^{H,t}(S)] - h/(n-h) max_{|S'| <= |S|+h} f(S')`
/// * `E_H[F^{H,t}(S)] >= f(S) - h/(n-h) max_{S ⊆ S', |S'| <= |S|+h} f(S')`
pub fn random_smoothing_lemmas(instances: usize, seed: u64) -> Result<CheckOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut total, mut failures) = (0usize, 0usize);
    for k in 0..instances {
        let n = 6 + k % 5;
        let f = random_submodular(n, &mut rng)?;
        let table = SubsetTable::build(&f, 10)?;
        let full = (1u64 << n) - 1;
        let mut best_upto = vec![f64::NEG_INFINITY; n + 1];
        for s in 0..=full {
            let c = popcount(s);
            best_upto[c] = best_upto[c].max(table.get(s));
        }
        for c in 1..=n {
            best_upto[c] = best_upto[c].max(best_upto[c - 1]);
        }
        for h in 1..=3usize {
            let hsets = mask_subsets_of_size(full, h);
            for t in 0..h.min(3) {
                let coef = h as f64 / (n - h) as f64;
                let inner: Vec<Vec<u64>> = hsets.iter().map(|&hm| mask_subsets_of_size(hm, t)).collect();
                let surrogate = |s: u64, subs: &[u64]| {
                    subs.iter().map(|&hp| table.get(s | hp)).sum::<f64>() / subs.len() as f64
                };
                let mut ok = [true; 2];
                for s in 0..=full {
                    let mut with = 0.0;
                    let mut without = 0.0;
                    for (hm, subs) in hsets.iter().zip(&inner) {
                        with += surrogate(s, subs);
                        without += surrogate(s & !hm, subs);
                    }
                    with /= hsets.len() as f64;
                    without /= hsets.len() as f64;
                    let size = popcount(s);
                    if without < with - coef * best_upto[(size + h).min(n)] - TOL {
                        ok[0] = false;
                    }
                    let rest = full & !s;
                    let mut sup = f64::NEG_INFINITY;
                    let mut sub = rest;
                    loop {
                        if popcount(sub) <= h {
                            sup = sup.max(table.get(s | sub));
                        }
                        if sub == 0 {
                            break;
                        }
                        sub = (sub - 1) & rest;
                    }
                    if with < table.get(s) - coef * sup - TOL {
                        ok[1] = false;
                    }
                }
                total += 2;
                failures += ok.iter().filter(|o| !**o).count();
            }
        }
    }
    Ok(outcome(
        "random smoothing set bounds",
        failures,
        total,
        format!("{instances} functions, h <= 3, t < h, all S"),
    ))
}

/// Persistence, unbiasedness and independence of the noisy oracle.
pub fn noise_properties(seed: u64) -> Result<CheckOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut problems: Vec<String> = Vec::new();
    let n = 40;
    let f = random_nonnegative_quadratic(n, 0.0, 20.0, 10.0 / n as f64, 10_000, &mut rng)?;
    let gauss = NoiseSpec::gaussian(0.1)?;

    // persistence, including across threads
    let oracle = PersistentNoisyOracle::new(&f, gauss, rng.random());
    let sets: Vec<ElementSet> = (0..1000)
        .map(|_| {
            let mut s = f.ground_set().empty_set();
            for e in 0..n {
                if rng.random::<bool>() {
                    s.insert(e);
                }
            }
            s
        })
        .collect();
    let first: Vec<u64> = sets.iter().map(|s| oracle.value(s).to_bits()).collect();
    let again: Vec<u64> = sets.iter().map(|s| oracle.value(s).to_bits()).collect();
    let threaded: Vec<Vec<u64>> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..4)
            .map(|_| scope.spawn(|| sets.iter().map(|s| oracle.value(s).to_bits()).collect::<Vec<u64>>()))
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    });
    if first != again || threaded.iter().any(|t| *t != first) {
        problems.push("repeated queries disagree".into());
    }
    if oracle.query_count() != 6000 {
        problems.push(format!("query counter is {}", oracle.query_count()));
    }

    // zero amplitude reproduces f
    let silent = PersistentNoisyOracle::new(&f, NoiseSpec::bounded_uniform(0.0)?, 3);
    if sets.iter().any(|s| silent.value(s) != f.value(s)) {
        problems.push("zero-amplitude noise changes values".into());
    }

    // unbiasedness over noise worlds
    let s = sets[0];
    let fs = f.value(&s);
    let worlds = 100_000;
    let mean = (0..worlds).map(|_| PersistentNoisyOracle::new(&f, gauss, rng.random()).value(&s)).sum::<f64>()
        / worlds as f64;
    let allowed = 3.0 * gauss.std_dev() * fs / (worlds as f64).sqrt();
    if (mean - fs).abs() > allowed {
        problems.push(format!("mean over worlds {mean} vs f(S) = {fs}"));
    }

    // multiplier moments
    let draws = 1_000_000;
    let g_mean = (0..draws).map(|_| sample_multiplier(&gauss, &mut rng)).sum::<f64>() / draws as f64;
    if (g_mean - 1.0).abs() > 0.002 {
        problems.push(format!("gaussian multiplier mean {g_mean}"));
    }
    let expo = NoiseSpec::shifted_exponential(2.0)?;
    let e_mean = (0..draws).map(|_| sample_multiplier(&expo, &mut rng)).sum::<f64>() / draws as f64;
    if (e_mean - 1.0).abs() > 3.0 * expo.std_dev() / (draws as f64).sqrt() {
        problems.push(format!("shifted exponential multiplier mean {e_mean}"));
    }
    let unif = NoiseSpec::bounded_uniform(0.5)?;
    if (0..10_000).any(|_| !(0.5..=1.5).contains(&sample_multiplier(&unif, &mut rng))) {
        problems.push("bounded multiplier left its support".into());
    }

    // independence proxy: correlation of multipliers of distinct sets
    let pairs = 10_000;
    let world = PersistentNoisyOracle::new(&f, gauss, rng.random());
    let mut xs = Vec::with_capacity(pairs);
    let mut ys = Vec::with_capacity(pairs);
    while xs.len() < pairs {
        let a = ElementSet::from_mask(n, rng.random::<u64>() & ((1 << n) - 1));
        let b = ElementSet::from_mask(n, rng.random::<u64>() & ((1 << n) - 1));
        if a != b {
            xs.push(world.multiplier(&a));
            ys.push(world.multiplier(&b));
        }
    }
    let corr = correlation(&xs, &ys);
    if corr.abs() > 3.0 / (pairs as f64).sqrt() {
        problems.push(format!("multiplier correlation {corr}"));
    }

    // tail of bounded-noise averages against the sub-exponential bound
    let (k, trials) = (100, 100_000);
    let (nu, _) = unif.sub_exponential_params();
    let means: Vec<f64> = (0..trials)
        .map(|_| (0..k).map(|_| sample_multiplier(&unif, &mut rng)).sum::<f64>() / k as f64)
        .collect();
    for dev in [0.05, 0.1, 0.15] {
        let empirical = means.iter().filter(|m| (*m - 1.0).abs() >= dev).count() as f64 / trials as f64;
        let bound = 2.0 * (-(k as f64) * dev * dev / (2.0 * nu * nu)).exp();
        if empirical > 4.0 * bound {
            problems.push(format!("tail at {dev}: {empirical} above 4 x {bound}"));
        }
    }

    Ok(CheckOutcome {
        name: "noise persistence, unbiasedness and independence",
        passed: problems.is_empty(),
        detail: if problems.is_empty() {
            format!("correlation {corr:.4}, mean over worlds {mean:.3} vs {fs:.3}")
        } else {
            problems.join("; ")
        },
    })
}

fn correlation(xs: &[f64], ys: &[f64]) -> f64 {
    let (mx, sx) = mean_and_std(xs);
    let (my, sy) = mean_and_std(ys);
    let cov = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum::<f64>() / (xs.len() - 1) as f64;
    cov / (sx * sy)
}

/// Every suite at its default size.
pub fn run_all(seed: u64) -> Result<Vec<CheckOutcome>> {
    Ok(vec![
        double_greedy_guarantee(30, 2000, seed)?,
        double_greedy_robustness(30, 2000, seed)?,
        continuous_greedy_monotone(20, 10_000, seed)?,
        continuous_greedy_nonmonotone(20, seed)?,
        surrogate_submodularity(50, seed)?,
        surrogate_concentration(200, 50, seed)?,
        smoothing_lemma(seed)?,
        removal_lemmas(5, seed)?,
        random_smoothing_lemmas(5, seed)?,
        noise_properties(seed)?,
    ])
}
