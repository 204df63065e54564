use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use noisub_core::generators::{random_coverage, random_nonnegative_quadratic};
use noisub_core::solvers::{double_greedy, measured_continuous_greedy, ContinuousGreedyConfig};
use noisub_core::surrogate::{surrogate_sampled, SurrogateConfig};
use noisub_core::{ElementSet, Estimator, Matroid, NoiseSpec, PersistentNoisyOracle, ValueOracle};

fn quadratic(n: usize) -> noisub_core::SetFunctionSpec {
    let mut rng = ChaCha8Rng::seed_from_u64(n as u64);
    random_nonnegative_quadratic(n, 0.0, 20.0, 10.0 / n as f64, 10_000, &mut rng).unwrap()
}

fn bench_double_greedy(c: &mut Criterion) {
    let mut group = c.benchmark_group("double_greedy");
    for n in [50, 100, 200] {
        let f = quadratic(n);
        let noisy = PersistentNoisyOracle::new(&f, NoiseSpec::gaussian(0.1).unwrap(), 1);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        group.bench_with_input(BenchmarkId::new("exact", n), &n, |b, _| {
            b.iter(|| double_greedy(&f, f.ground_set(), &mut rng).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("noisy", n), &n, |b, _| {
            b.iter(|| double_greedy(&noisy, f.ground_set(), &mut rng).unwrap())
        });
    }
    group.finish();
}

fn bench_continuous_greedy(c: &mut Criterion) {
    let mut group = c.benchmark_group("continuous_greedy");
    group.sample_size(10);
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let small = random_coverage(12, 20, 0.25, &mut rng).unwrap();
    let m = Matroid::uniform(small.ground_set(), 4).unwrap();
    let exact = ContinuousGreedyConfig::from_delta(0.02, Estimator::Exact).unwrap();
    group.bench_function("exact_n12", |b| b.iter(|| measured_continuous_greedy(&small, &m, &exact, &mut rng).unwrap()));
    let big = random_coverage(40, 60, 0.1, &mut rng).unwrap();
    let m = Matroid::uniform(big.ground_set(), 8).unwrap();
    let sampled = ContinuousGreedyConfig::from_delta(0.05, Estimator::Sampled { samples: 20 }).unwrap();
    group.bench_function("sampled_n40", |b| b.iter(|| measured_continuous_greedy(&big, &m, &sampled, &mut rng).unwrap()));
    group.finish();
}

fn bench_surrogate(c: &mut Criterion) {
    let f = quadratic(50);
    let noisy = PersistentNoisyOracle::new(&f, NoiseSpec::gaussian(0.1).unwrap(), 3);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let h = ElementSet::from_elements(50, 0..20).unwrap();
    let q = ElementSet::from_elements(50, (20..50).step_by(2)).unwrap();
    let mut group = c.benchmark_group("surrogate_query");
    for m in [50, 200] {
        let cfg = SurrogateConfig::sample(h, 4, m, &mut rng).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(m), &m, |b, _| {
            b.iter(|| surrogate_sampled(&noisy, &cfg, black_box(&q)).unwrap())
        });
    }
    group.finish();
}

fn bench_noisy_query(c: &mut Criterion) {
    let f = quadratic(100);
    let noisy = PersistentNoisyOracle::new(&f, NoiseSpec::gaussian(0.1).unwrap(), 4);
    let s = ElementSet::from_elements(100, (0..100).step_by(3)).unwrap();
    c.bench_function("noisy_query_n100", |b| b.iter(|| noisy.value(black_box(&s))));
    c.bench_function("exact_query_n100", |b| b.iter(|| f.value(black_box(&s))));
}

criterion_group!(benches, bench_double_greedy, bench_continuous_greedy, bench_surrogate, bench_noisy_query);
criterion_main!(benches);
