//! Smoothing surrogates.
//!
//! For a smoothing set `H` and size `t`, `F^{H,t}(S)` averages `f(S ∪ H')`
//! over all `t`-subsets `H'` of `H`. The sampled surrogate `F^{H,t,m}` replaces
//! the full average by `m` distinct `t`-subsets drawn once and frozen, queried
//! through the noisy oracle.

use rand::Rng;

use crate::combinatorics::{binomial, k_subsets, sample_t_subsets_without_replacement};
use crate::error::{Error, Result};
use crate::noise::NoiseSpec;
use crate::set::{ElementSet, GroundSet};
use crate::setfn::ValueOracle;

/// Largest smoothing set for which the surrogate is averaged exhaustively.
pub const EXACT_SURROGATE_LIMIT: usize = 24;

/// `H`, `t` and the frozen samples `H_1..H_m`.
#[derive(Debug, Clone, PartialEq)]
pub struct SurrogateConfig {
    smoothing: ElementSet,
    t: usize,
    samples: Vec<ElementSet>,
}

fn check_sizes(h: usize, t: usize) -> Result<()> {
    if !(t < h || (t == 0 && h == 0)) {
        return Err(Error::InvalidParameters(format!("need 0 <= t < h, got h={h}, t={t}")));
    }
    Ok(())
}

impl SurrogateConfig {
    /// Draws `m` distinct `t`-subsets of `smoothing`.
    pub fn sample<R: Rng + ?Sized>(smoothing: ElementSet, t: usize, m: usize, rng: &mut R) -> Result<Self> {
        check_sizes(smoothing.len(), t)?;
        if m == 0 {
            return Err(Error::InvalidParameters("m must be at least 1".into()));
        }
        let samples = sample_t_subsets_without_replacement(&smoothing, t, m, rng)?;
        Ok(Self { smoothing, t, samples })
    }

    /// Uses every `t`-subset of `smoothing` (`m = C(h, t)`).
    pub fn exhaustive(smoothing: ElementSet, t: usize) -> Result<Self> {
        check_sizes(smoothing.len(), t)?;
        if smoothing.len() > EXACT_SURROGATE_LIMIT {
            return Err(Error::EnumerationBudget { n: smoothing.len(), limit: EXACT_SURROGATE_LIMIT });
        }
        Ok(Self { smoothing, t, samples: k_subsets(&smoothing, t) })
    }

    /// `h = t = 0`, `m = 1`: the surrogate is the oracle itself.
    pub fn identity(ground: GroundSet) -> Self {
        Self { smoothing: ground.empty_set(), t: 0, samples: vec![ground.empty_set()] }
    }

    pub fn smoothing_set(&self) -> &ElementSet {
        &self.smoothing
    }

    pub fn h(&self) -> usize {
        self.smoothing.len()
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn m(&self) -> usize {
        self.samples.len()
    }

    pub fn samples(&self) -> &[ElementSet] {
        &self.samples
    }
}

/// `F^{H,t}(S) = C(h,t)^{-1} Σ_{H' ⊆ H, |H'| = t} f(S ∪ H')`.
pub fn surrogate_exact<O: ValueOracle + ?Sized>(
    oracle: &O,
    smoothing: &ElementSet,
    t: usize,
    s: &ElementSet,
) -> Result<f64> {
    let ground = oracle.ground();
    ground.check(smoothing)?;
    ground.check(s)?;
    if smoothing.len() > EXACT_SURROGATE_LIMIT {
        return Err(Error::EnumerationBudget { n: smoothing.len(), limit: EXACT_SURROGATE_LIMIT });
    }
    if t > smoothing.len() {
        return Err(Error::InvalidParameters(format!("t={t} exceeds h={}", smoothing.len())));
    }
    let subsets = k_subsets(smoothing, t);
    let total: f64 = subsets.iter().map(|hp| oracle.value(&s.union(hp))).sum();
    Ok(total / subsets.len() as f64)
}

/// `F^{H,t,m}(S) = m^{-1} Σ_i f~(S ∪ H_i)` as a [`ValueOracle`].
#[derive(Debug, Clone, Copy)]
pub struct SampledSurrogate<'a, O: ?Sized> {
    oracle: &'a O,
    config: &'a SurrogateConfig,
}

impl<'a, O: ValueOracle + ?Sized> SampledSurrogate<'a, O> {
    pub fn new(oracle: &'a O, config: &'a SurrogateConfig) -> Result<Self> {
        oracle.ground().check(config.smoothing_set())?;
        Ok(Self { oracle, config })
    }

    pub fn config(&self) -> &SurrogateConfig {
        self.config
    }
}

impl<O: ValueOracle + ?Sized> ValueOracle for SampledSurrogate<'_, O> {
    fn ground(&self) -> GroundSet {
        self.oracle.ground()
    }

    fn value(&self, s: &ElementSet) -> f64 {
        let samples = self.config.samples();
        let total: f64 = samples.iter().map(|hi| self.oracle.value(&s.union(hi))).sum();
        total / samples.len() as f64
    }
}

/// One evaluation of the sampled surrogate, with ground-set checks.
pub fn surrogate_sampled<O: ValueOracle + ?Sized>(
    oracle: &O,
    config: &SurrogateConfig,
    s: &ElementSet,
) -> Result<f64> {
    oracle.ground().check(s)?;
    Ok(SampledSurrogate::new(oracle, config)?.value(s))
}

/// Accuracy target for the sampled surrogate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParamBudget {
    pub epsilon: f64,
    /// Failure probability.
    pub delta: f64,
    /// Upper bound on `max_S f(S)`.
    pub f_max: f64,
    pub noise: NoiseSpec,
}

/// Output of [`compute_parameters`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SurrogateParams {
    pub h: usize,
    pub t: usize,
    pub m: usize,
    /// `h <= n`.
    pub fits_ground: bool,
    /// `h <= rank`, when a rank was supplied.
    pub fits_rank: Option<bool>,
}

/// Smallest integers with
/// `m >= max(2, 8ν²) (f_max/ε)² (n + ln(4/δ))`, `t >= log2(4m)`, `h = t²`.
pub fn compute_parameters(budget: &ParamBudget, n: usize, rank: Option<usize>) -> Result<SurrogateParams> {
    let ParamBudget { epsilon, delta, f_max, noise } = *budget;
    if !(epsilon > 0.0 && epsilon.is_finite()) {
        return Err(Error::InvalidParameters(format!("epsilon must be positive, got {epsilon}")));
    }
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::InvalidParameters(format!("delta must lie in (0, 1), got {delta}")));
    }
    if !(f_max > 0.0 && f_max.is_finite()) {
        return Err(Error::InvalidParameters(format!("f_max must be positive, got {f_max}")));
    }
    noise.validate()?;
    let (nu, alpha) = noise.sub_exponential_params();
    if alpha > 0.0 && epsilon > 2.0 * nu * nu * f_max / alpha {
        return Err(Error::InvalidParameters(format!(
            "epsilon {epsilon} exceeds the validity range 2ν²f_max/α = {}",
            2.0 * nu * nu * f_max / alpha
        )));
    }
    let coef = f64::max(2.0, 8.0 * nu * nu);
    let bound = coef * (f_max / epsilon).powi(2) * (n as f64 + (4.0 / delta).ln());
    // 1e-9 absorbs round-off when the bound is an integer in exact arithmetic
    let m = (bound - 1e-9).ceil().max(1.0);
    if m > (usize::MAX / 8) as f64 {
        return Err(Error::InvalidParameters(format!("required sample count {bound:.3e} overflows")));
    }
    let m = m as usize;
    let t = (4 * m).next_power_of_two().trailing_zeros() as usize;
    let h = t * t;
    debug_assert!(binomial(h, t).is_none_or(|c| c >= m as u128));
    Ok(SurrogateParams { h, t, m, fits_ground: h <= n, fits_rank: rank.map(|r| h <= r) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::noise::{NoiseSpec, PersistentNoisyOracle};
    use crate::setfn::SetFunctionSpec;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn s(n: usize, es: &[usize]) -> ElementSet {
        ElementSet::from_elements(n, es.iter().copied()).unwrap()
    }

    fn waq() -> SetFunctionSpec {
        SetFunctionSpec::weighted_additive_quadratic(vec![5.0, 2.0, 8.0, 1.0, 6.0, 3.0], 0.4).unwrap()
    }

    #[test]
    fn t_zero_is_the_function() {
        let f = waq();
        let q = s(6, &[1, 4]);
        assert_eq!(surrogate_exact(&f, &s(6, &[0, 2, 3]), 0, &q).unwrap(), f.value(&q));
    }

    #[test]
    fn two_term_average() {
        let f = waq();
        let q = s(6, &[1]);
        let expect = (f.value(&s(6, &[1, 0])) + f.value(&s(6, &[1, 5]))) / 2.0;
        assert_eq!(surrogate_exact(&f, &s(6, &[0, 5]), 1, &q).unwrap(), expect);
    }

    #[test]
    fn config_invariants() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let h = s(6, &[0, 1, 2, 3]);
        assert!(SurrogateConfig::sample(h, 4, 1, &mut rng).is_err());
        assert!(SurrogateConfig::sample(h, 2, 0, &mut rng).is_err());
        assert!(matches!(
            SurrogateConfig::sample(h, 2, 7, &mut rng),
            Err(Error::TooManySamples { .. })
        ));
        let cfg = SurrogateConfig::sample(h, 2, 6, &mut rng).unwrap();
        assert_eq!((cfg.h(), cfg.t(), cfg.m()), (4, 2, 6));
        assert_eq!(SurrogateConfig::exhaustive(h, 2).unwrap().m(), 6);
    }

    #[test]
    fn noiseless_exhaustive_sample_matches_exact() {
        let f = waq();
        let h = s(6, &[0, 2, 3, 5]);
        let cfg = SurrogateConfig::exhaustive(h, 2).unwrap();
        let o = PersistentNoisyOracle::new(f.clone(), NoiseSpec::bounded_uniform(0.0).unwrap(), 9);
        for q in f.ground_set().subsets() {
            let sampled = surrogate_sampled(&o, &cfg, &q).unwrap();
            let exact = surrogate_exact(&f, &h, 2, &q).unwrap();
            assert!((sampled - exact).abs() < 1e-12);
        }
    }

    #[test]
    fn identity_surrogate_is_the_noisy_oracle() {
        let f = waq();
        let o = PersistentNoisyOracle::new(f.clone(), NoiseSpec::gaussian(0.1).unwrap(), 4);
        let cfg = SurrogateConfig::identity(f.ground_set());
        let q = s(6, &[2, 3]);
        assert_eq!(surrogate_sampled(&o, &cfg, &q).unwrap(), o.value(&q));
    }

    #[test]
    fn parameter_examples() {
        let budget = ParamBudget {
            epsilon: 1.0,
            delta: 0.04,
            f_max: 1.0,
            noise: NoiseSpec::bounded_uniform(0.5).unwrap(),
        };
        let p = compute_parameters(&budget, 10, None).unwrap();
        assert_eq!((p.m, p.t, p.h), (117, 9, 81));
        assert!(!p.fits_ground);

        let budget = ParamBudget {
            epsilon: 1.0,
            delta: 4.0 / 4f64.exp(),
            f_max: 1.0,
            noise: NoiseSpec::bounded_uniform(0.25).unwrap(),
        };
        let p = compute_parameters(&budget, 1, Some(100)).unwrap();
        assert_eq!((p.m, p.t, p.h), (10, 6, 36));
        assert_eq!(p.fits_rank, Some(true));
    }

    #[test]
    fn parameter_validity_range() {
        // shifted exponential with rate 1: ν = α = 2, so ε <= 2·4/2·f_max = 4 f_max
        let noise = NoiseSpec::shifted_exponential(1.0).unwrap();
        let ok = ParamBudget { epsilon: 4.0, delta: 0.1, f_max: 1.0, noise };
        assert!(compute_parameters(&ok, 5, None).is_ok());
        let bad = ParamBudget { epsilon: 4.5, ..ok };
        assert!(compute_parameters(&bad, 5, None).is_err());
        assert!(compute_parameters(&ParamBudget { delta: 1.0, ..ok }, 5, None).is_err());
    }
}
