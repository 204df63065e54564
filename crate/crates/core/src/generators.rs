//! Random instance families used by the experiments and the check suites.

use rand::Rng;

use crate::error::{Error, Result};
use crate::setfn::{Edge, SetFunctionSpec};

/// Each element covers each of `items` items with probability `density`;
/// item weights are uniform on `[0.5, 2]`. Monotone.
pub fn random_coverage<R: Rng + ?Sized>(n: usize, items: usize, density: f64, rng: &mut R) -> Result<SetFunctionSpec> {
    let item_weights: Vec<f64> = (0..items).map(|_| rng.random_range(0.5..2.0)).collect();
    let covers = (0..n)
        .map(|_| (0..items).filter(|_| rng.random::<f64>() < density).collect())
        .collect();
    SetFunctionSpec::coverage(covers, item_weights)
}

/// Erdős–Rényi graph with edge probability `density` and weights uniform on `[0.5, 2]`.
pub fn random_cut<R: Rng + ?Sized>(n: usize, density: f64, rng: &mut R) -> Result<SetFunctionSpec> {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random::<f64>() < density {
                edges.push(Edge { u, v, weight: rng.random_range(0.5..2.0) });
            }
        }
    }
    SetFunctionSpec::cut(n, edges)
}

/// Weighted additive function with quadratic cost: weights uniform on
/// `[low, high)`, cost `c`. The whole weight vector is redrawn until the
/// function is non-negative on every subset.
pub fn random_nonnegative_quadratic<R: Rng + ?Sized>(
    n: usize,
    low: f64,
    high: f64,
    cost: f64,
    max_attempts: usize,
    rng: &mut R,
) -> Result<SetFunctionSpec> {
    if !(low < high) || cost < 0.0 {
        return Err(Error::Generation(format!("bad parameters: weights in [{low}, {high}), cost {cost}")));
    }
    for _ in 0..max_attempts {
        let weights = (0..n).map(|_| rng.random_range(low..high)).collect();
        let spec = SetFunctionSpec::weighted_additive_quadratic(weights, cost)?;
        if spec.is_nonnegative_certified() {
            return Ok(spec);
        }
    }
    Err(Error::Generation(format!("no non-negative instance after {max_attempts} attempts")))
}

/// One of coverage, cut, or non-negative quadratic, chosen uniformly.
pub fn random_submodular<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<SetFunctionSpec> {
    match rng.random_range(0..3) {
        0 => random_coverage(n, 2 * n, 0.25, rng),
        1 => random_cut(n, 0.4, rng),
        _ => random_nonnegative_quadratic(n, 0.0, 20.0, 10.0 / n as f64, 10_000, rng),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::check_submodular;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn families_are_submodular() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in 3..9 {
            let f = random_submodular(n, &mut rng).unwrap();
            assert!(check_submodular(&f).unwrap());
            assert!(f.is_nonnegative_certified());
        }
    }

    #[test]
    fn impossible_certification_fails() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let err = random_nonnegative_quadratic(5, 0.0, 1.0, 10.0, 20, &mut rng).unwrap_err();
        assert!(matches!(err, Error::Generation(_)));
    }
}
