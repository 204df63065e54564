//! Multiplicative noise `f~(S) = ξ_S f(S)`.
//!
//! The persistent oracle never stores anything: `ξ_S` is drawn from a ChaCha
//! stream whose key is the master seed plus a 128-bit SipHash fingerprint of
//! the membership bits of `S`. Re-querying `S` rebuilds the same stream, so
//! values are bit-identical across calls and threads, and distinct sets read
//! from unrelated streams.

use std::hash::Hasher;
use std::sync::atomic::{AtomicU64, Ordering};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp, Normal};
use serde::{Deserialize, Serialize};
use siphasher::sip128::{Hasher128, SipHasher13};

use crate::error::{Error, Result};
use crate::set::{ElementSet, GroundSet};
use crate::setfn::ValueOracle;

/// Mean-one multiplier distributions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "distribution", rename_all = "snake_case")]
pub enum NoiseDistribution {
    /// `Normal(1, variance)`.
    Gaussian { variance: f64 },
    /// `Uniform[1 - half_width, 1 + half_width]`.
    BoundedUniform { half_width: f64 },
    /// `1 - 1/rate + Exp(rate)`; non-negative when `rate >= 1`.
    ShiftedExponential { rate: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NoiseSpec {
    #[serde(flatten)]
    pub distribution: NoiseDistribution,
    /// Map negative draws to zero.
    #[serde(default)]
    pub clamp_negative: bool,
}

impl NoiseSpec {
    pub fn gaussian(variance: f64) -> Result<Self> {
        Self::new(NoiseDistribution::Gaussian { variance })
    }

    pub fn bounded_uniform(half_width: f64) -> Result<Self> {
        Self::new(NoiseDistribution::BoundedUniform { half_width })
    }

    pub fn shifted_exponential(rate: f64) -> Result<Self> {
        Self::new(NoiseDistribution::ShiftedExponential { rate })
    }

    /// `ξ ≡ 1`.
    pub fn none() -> Self {
        Self { distribution: NoiseDistribution::BoundedUniform { half_width: 0.0 }, clamp_negative: false }
    }

    pub fn new(distribution: NoiseDistribution) -> Result<Self> {
        let spec = Self { distribution, clamp_negative: false };
        spec.validate()?;
        Ok(spec)
    }

    pub fn with_clamp(mut self, clamp_negative: bool) -> Self {
        self.clamp_negative = clamp_negative;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let ok = match self.distribution {
            NoiseDistribution::Gaussian { variance } => variance.is_finite() && variance >= 0.0,
            NoiseDistribution::BoundedUniform { half_width } => {
                half_width.is_finite() && (0.0..=1.0).contains(&half_width)
            }
            NoiseDistribution::ShiftedExponential { rate } => rate.is_finite() && rate > 0.0,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidNoise(format!("{:?}", self.distribution)))
        }
    }

    /// `(ν, α)` such that the multiplier is `(ν, α)`-sub-exponential.
    pub fn sub_exponential_params(&self) -> (f64, f64) {
        match self.distribution {
            NoiseDistribution::Gaussian { variance } => (variance.sqrt(), 0.0),
            NoiseDistribution::BoundedUniform { half_width } => (2.0 * half_width, 0.0),
            NoiseDistribution::ShiftedExponential { rate } => (2.0 / rate, 2.0 / rate),
        }
    }

    /// Scale parameter `κ` of the multiplier, taken as `max(ν, α)`.
    pub fn sub_exponential_norm(&self) -> f64 {
        let (nu, alpha) = self.sub_exponential_params();
        nu.max(alpha)
    }

    pub fn std_dev(&self) -> f64 {
        match self.distribution {
            NoiseDistribution::Gaussian { variance } => variance.sqrt(),
            NoiseDistribution::BoundedUniform { half_width } => half_width / 3f64.sqrt(),
            NoiseDistribution::ShiftedExponential { rate } => 1.0 / rate,
        }
    }

    /// True when `ξ` is identically one.
    pub fn is_degenerate(&self) -> bool {
        match self.distribution {
            NoiseDistribution::Gaussian { variance } => variance == 0.0,
            NoiseDistribution::BoundedUniform { half_width } => half_width == 0.0,
            NoiseDistribution::ShiftedExponential { .. } => false,
        }
    }
}

/// One multiplier draw.
pub fn sample_multiplier<R: Rng + ?Sized>(spec: &NoiseSpec, rng: &mut R) -> f64 {
    let xi = match spec.distribution {
        NoiseDistribution::Gaussian { variance } => {
            if variance == 0.0 {
                1.0
            } else {
                Normal::new(1.0, variance.sqrt()).expect("validated variance").sample(rng)
            }
        }
        NoiseDistribution::BoundedUniform { half_width } => {
            if half_width == 0.0 {
                1.0
            } else {
                rng.random_range(1.0 - half_width..=1.0 + half_width)
            }
        }
        NoiseDistribution::ShiftedExponential { rate } => {
            1.0 - 1.0 / rate + Exp::new(rate).expect("validated rate").sample(rng)
        }
    };
    if spec.clamp_negative {
        xi.max(0.0)
    } else {
        xi
    }
}

const FINGERPRINT_KEY: u64 = 0x6e6f_6973_7562_2d66;

/// 128-bit fingerprint of the canonical membership bits.
pub fn fingerprint(s: &ElementSet) -> u128 {
    let mut h = SipHasher13::new_with_keys(FINGERPRINT_KEY, s.ground_len() as u64);
    for w in s.words() {
        h.write_u64(*w);
    }
    h.finish128().as_u128()
}

/// The ChaCha stream keyed by `(master_seed, fingerprint(S))`, on sub-stream `stream`.
pub fn keyed_stream(master_seed: u64, s: &ElementSet, stream: u64) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    key[..16].copy_from_slice(&fingerprint(s).to_le_bytes());
    key[16..24].copy_from_slice(&master_seed.to_le_bytes());
    key[24..].copy_from_slice(b"noise-xi");
    let mut rng = ChaCha8Rng::from_seed(key);
    rng.set_stream(stream);
    rng
}

/// `f~(S) = ξ_S f(S)` with `ξ_S` a pure function of `(master_seed, S)`.
#[derive(Debug)]
pub struct PersistentNoisyOracle<F> {
    base: F,
    noise: NoiseSpec,
    master_seed: u64,
    queries: AtomicU64,
}

impl<F: ValueOracle> PersistentNoisyOracle<F> {
    pub fn new(base: F, noise: NoiseSpec, master_seed: u64) -> Self {
        Self { base, noise, master_seed, queries: AtomicU64::new(0) }
    }

    pub fn base(&self) -> &F {
        &self.base
    }

    pub fn noise(&self) -> &NoiseSpec {
        &self.noise
    }

    pub fn master_seed(&self) -> u64 {
        self.master_seed
    }

    /// Number of value queries answered so far.
    pub fn query_count(&self) -> u64 {
        self.queries.load(Ordering::Relaxed)
    }

    /// `ξ_S`.
    pub fn multiplier(&self, s: &ElementSet) -> f64 {
        if self.noise.is_degenerate() {
            return 1.0;
        }
        sample_multiplier(&self.noise, &mut keyed_stream(self.master_seed, s, 0))
    }

    /// `f~(S)` with a ground-set check.
    pub fn noisy_value(&self, s: &ElementSet) -> Result<f64> {
        self.base.ground().check(s)?;
        Ok(self.value(s))
    }
}

impl<F: ValueOracle> ValueOracle for PersistentNoisyOracle<F> {
    fn ground(&self) -> GroundSet {
        self.base.ground()
    }

    fn value(&self, s: &ElementSet) -> f64 {
        self.queries.fetch_add(1, Ordering::Relaxed);
        let fs = self.base.value(s);
        if fs == 0.0 {
            return 0.0;
        }
        self.multiplier(s) * fs
    }
}

/// Draws a fresh multiplier on every query, so repeated queries of one set
/// are independent. This breaks persistence and exists only to compare
/// against the persistent model in experiments. Draws are keyed by the query
/// index, so results are reproducible when queries are issued sequentially.
#[derive(Debug)]
pub struct ResampledNoisyOracle<F> {
    base: F,
    noise: NoiseSpec,
    master_seed: u64,
    queries: AtomicU64,
}

impl<F: ValueOracle> ResampledNoisyOracle<F> {
    pub fn new(base: F, noise: NoiseSpec, master_seed: u64) -> Self {
        Self { base, noise, master_seed, queries: AtomicU64::new(0) }
    }

    pub fn query_count(&self) -> u64 {
        self.queries.load(Ordering::Relaxed)
    }
}

impl<F: ValueOracle> ValueOracle for ResampledNoisyOracle<F> {
    fn ground(&self) -> GroundSet {
        self.base.ground()
    }

    fn value(&self, s: &ElementSet) -> f64 {
        let q = self.queries.fetch_add(1, Ordering::Relaxed);
        let fs = self.base.value(s);
        if fs == 0.0 || self.noise.is_degenerate() {
            return fs;
        }
        sample_multiplier(&self.noise, &mut keyed_stream(self.master_seed, s, q + 1)) * fs
    }
}
