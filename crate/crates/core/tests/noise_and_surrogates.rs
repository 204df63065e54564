use std::collections::HashMap;

use noisub_core::combinatorics::sample_t_subsets_without_replacement;
use noisub_core::generators::{random_nonnegative_quadratic, random_submodular};
use noisub_core::noise::{sample_multiplier, ResampledNoisyOracle};
use noisub_core::surrogate::{compute_parameters, surrogate_exact, surrogate_sampled, ParamBudget, SurrogateConfig};
use noisub_core::{ElementSet, Error, NoiseSpec, PersistentNoisyOracle, SetFunctionSpec, ValueOracle};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn set(n: usize, es: &[usize]) -> ElementSet {
    ElementSet::from_elements(n, es.iter().copied()).unwrap()
}

fn instance(n: usize, seed: u64) -> SetFunctionSpec {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_nonnegative_quadratic(n, 0.0, 20.0, 10.0 / n as f64, 10_000, &mut rng).unwrap()
}

#[test]
fn repeated_queries_are_bit_identical() {
    let f = instance(20, 1);
    let o = PersistentNoisyOracle::new(&f, NoiseSpec::gaussian(0.1).unwrap(), 99);
    let s = set(20, &[1, 4, 9]);
    let a = o.value(&s);
    assert_eq!(a.to_bits(), o.value(&s).to_bits());
    assert_eq!(a, o.noisy_value(&s).unwrap());
    assert_eq!(o.query_count(), 3);
    assert!(o.noisy_value(&set(21, &[1])).is_err());
    // a second oracle with the same seed agrees, a different seed does not
    let same = PersistentNoisyOracle::new(&f, NoiseSpec::gaussian(0.1).unwrap(), 99);
    let other = PersistentNoisyOracle::new(&f, NoiseSpec::gaussian(0.1).unwrap(), 100);
    assert_eq!(same.value(&s), a);
    assert_ne!(other.value(&s), a);
}

#[test]
fn zero_amplitude_is_exact() {
    let f = instance(10, 2);
    let o = PersistentNoisyOracle::new(&f, NoiseSpec::bounded_uniform(0.0).unwrap(), 5);
    for s in f.ground_set().subsets().take(300) {
        assert_eq!(o.value(&s), f.value(&s));
    }
}

#[test]
fn unbiased_over_noise_worlds() {
    let f = instance(15, 3);
    let s = set(15, &[0, 2, 5, 7, 11]);
    let fs = f.value(&s);
    let noise = NoiseSpec::gaussian(0.1).unwrap();
    let worlds = 100_000u64;
    let mean = (0..worlds).map(|w| PersistentNoisyOracle::new(&f, noise, w).value(&s)).sum::<f64>() / worlds as f64;
    assert!((mean - fs).abs() <= 3.0 * 0.1f64.sqrt() * fs / (worlds as f64).sqrt(), "{mean} vs {fs}");
}

#[test]
fn multiplier_distributions() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let unif = NoiseSpec::bounded_uniform(0.5).unwrap();
    assert!((0..100_000).all(|_| (0.5..=1.5).contains(&sample_multiplier(&unif, &mut rng))));
    let draws = 1_000_000;
    let gauss = NoiseSpec::gaussian(0.1).unwrap();
    let m = (0..draws).map(|_| sample_multiplier(&gauss, &mut rng)).sum::<f64>() / draws as f64;
    assert!((m - 1.0).abs() < 0.002);
    let expo = NoiseSpec::shifted_exponential(1.5).unwrap();
    let m = (0..draws).map(|_| sample_multiplier(&expo, &mut rng)).sum::<f64>() / draws as f64;
    assert!((m - 1.0).abs() < 3.0 / 1.5 / (draws as f64).sqrt());
    let clamped = NoiseSpec::gaussian(4.0).unwrap().with_clamp(true);
    assert!((0..10_000).all(|_| sample_multiplier(&clamped, &mut rng) >= 0.0));
}

#[test]
fn noise_parameters() {
    assert_eq!(NoiseSpec::bounded_uniform(0.25).unwrap().sub_exponential_params(), (0.5, 0.0));
    assert_eq!(NoiseSpec::shifted_exponential(2.0).unwrap().sub_exponential_params(), (1.0, 1.0));
    let (nu, alpha) = NoiseSpec::gaussian(0.1).unwrap().sub_exponential_params();
    assert!((nu - 0.1f64.sqrt()).abs() < 1e-15 && alpha == 0.0);
    assert!(NoiseSpec::gaussian(-1.0).is_err());
    assert!(NoiseSpec::bounded_uniform(1.5).is_err());
    assert!(NoiseSpec::shifted_exponential(0.0).is_err());
}

#[test]
fn resampled_oracle_is_not_persistent() {
    let f = instance(10, 5);
    let o = ResampledNoisyOracle::new(&f, NoiseSpec::gaussian(0.1).unwrap(), 1);
    let s = set(10, &[0, 1, 2]);
    let a = o.value(&s);
    assert_ne!(a, o.value(&s));
    assert_eq!(o.query_count(), 2);
}

#[test]
fn surrogate_by_enumeration() {
    let f = instance(10, 6);
    let h = set(10, &[1, 3, 6, 8]);
    let pairs = [[1, 3], [1, 6], [1, 8], [3, 6], [3, 8], [6, 8]];
    for q in [set(10, &[]), set(10, &[0, 2]), set(10, &[3, 9]), set(10, &[0, 1, 2, 3, 4])] {
        let direct = pairs.iter().map(|p| f.value(&q.union(&set(10, p)))).sum::<f64>() / 6.0;
        assert!((surrogate_exact(&f, &h, 2, &q).unwrap() - direct).abs() < 1e-12);
    }
}

#[test]
fn sampled_surrogate_is_persistent() {
    let f = instance(12, 7);
    let o = PersistentNoisyOracle::new(&f, NoiseSpec::gaussian(0.1).unwrap(), 3);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let cfg = SurrogateConfig::sample(set(12, &[0, 1, 2, 3, 4]), 2, 6, &mut rng).unwrap();
    let q = set(12, &[7, 8]);
    let a = surrogate_sampled(&o, &cfg, &q).unwrap();
    assert_eq!(a.to_bits(), surrogate_sampled(&o, &cfg, &q).unwrap().to_bits());
}

#[test]
fn subset_sampling_exhausts_and_is_distinct() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let h = set(10, &[0, 2, 4, 6, 8, 9]);
    let all = sample_t_subsets_without_replacement(&h, 2, 15, &mut rng).unwrap();
    let mut sorted = all.clone();
    sorted.sort();
    sorted.dedup();
    assert_eq!(sorted.len(), 15);
    assert!(all.iter().all(|s| s.len() == 2 && s.is_subset(&h)));
    let three = sample_t_subsets_without_replacement(&set(6, &[0, 1, 2, 3]), 2, 3, &mut rng).unwrap();
    assert_eq!(three.len(), 3);
    assert!(three[0] != three[1] && three[1] != three[2] && three[0] != three[2]);
    assert!(matches!(
        sample_t_subsets_without_replacement(&h, 2, 16, &mut rng),
        Err(Error::TooManySamples { .. })
    ));
    // large family takes the rejection path
    let big = ElementSet::from_elements(40, 0..30).unwrap();
    let drawn = sample_t_subsets_without_replacement(&big, 4, 50, &mut rng).unwrap();
    let mut d = drawn.clone();
    d.sort();
    d.dedup();
    assert_eq!(d.len(), 50);
}

#[test]
fn subset_sampling_is_uniform() {
    // every 2-subset of a 6-set appears with probability 5/15
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let h = set(6, &[0, 1, 2, 3, 4, 5]);
    let reps = 100_000;
    let mut counts: HashMap<ElementSet, usize> = HashMap::new();
    for _ in 0..reps {
        for s in sample_t_subsets_without_replacement(&h, 2, 5, &mut rng).unwrap() {
            *counts.entry(s).or_default() += 1;
        }
    }
    assert_eq!(counts.len(), 15);
    let p = 1.0 / 3.0;
    let sigma = (reps as f64 * p * (1.0 - p)).sqrt();
    for (s, c) in counts {
        assert!((c as f64 - reps as f64 * p).abs() <= 3.0 * sigma, "{s}: {c}");
    }
}

#[test]
fn parameter_examples() {
    let p = compute_parameters(
        &ParamBudget { epsilon: 1.0, delta: 0.04, f_max: 1.0, noise: NoiseSpec::bounded_uniform(0.5).unwrap() },
        10,
        None,
    )
    .unwrap();
    assert_eq!((p.m, p.t, p.h), (117, 9, 81));
    let p = compute_parameters(
        &ParamBudget {
            epsilon: 1.0,
            delta: 4.0 * (-4.0f64).exp(),
            f_max: 1.0,
            noise: NoiseSpec::bounded_uniform(0.25).unwrap(),
        },
        1,
        None,
    )
    .unwrap();
    assert_eq!((p.m, p.t, p.h), (10, 6, 36));
}

/// `C(h, t)` in floating point, enough for a lower-bound comparison.
fn binomial_f64(h: usize, t: usize) -> f64 {
    (0..t).map(|i| (h - i) as f64 / (i + 1) as f64).product()
}

proptest! {
    #[test]
    fn parameters_admit_enough_subsets(
        eps in 0.01f64..2.0,
        delta in 0.001f64..0.5,
        f_max in 0.1f64..10.0,
        a in 0.0f64..1.0,
        n in 1usize..200,
    ) {
        let noise = NoiseSpec::bounded_uniform(a).unwrap();
        let p = compute_parameters(&ParamBudget { epsilon: eps, delta, f_max, noise }, n, None).unwrap();
        prop_assert!(binomial_f64(p.h, p.t) >= p.m as f64);
        prop_assert!((1usize << p.t) >= 4 * p.m);
        prop_assert!(p.t == 0 || (1usize << (p.t - 1)) < 4 * p.m);
        prop_assert_eq!(p.h, p.t * p.t);
    }

    #[test]
    fn surrogate_lies_between_extremes(seed in any::<u64>(), t in 0usize..3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_submodular(9, &mut rng).unwrap();
        let h = set(9, &[0, 3, 5, 8]);
        let q = ElementSet::from_mask(9, rng.random::<u64>() & 0x1ff);
        let v = surrogate_exact(&f, &h, t, &q).unwrap();
        let vals: Vec<f64> = f.ground_set().subsets()
            .filter(|s| s.len() == t && s.is_subset(&h))
            .map(|hp| f.value(&q.union(&hp)))
            .collect();
        let lo = vals.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = vals.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        prop_assert!(v >= lo - 1e-9 && v <= hi + 1e-9);
    }
}
