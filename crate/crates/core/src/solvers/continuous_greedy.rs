//! Measured continuous greedy over the multilinear extension.
//!
//! Starting at `x = 0`, each of `1/δ` steps picks a max-weight independent set
//! `I` for the current weights and moves `x_i += δ (1 - x_i)` for `i ∈ I`.
//! The damping keeps every coordinate at most `1 - (1 - δ)^{1/δ}`.

use rand::Rng;

use crate::analysis::SubsetTable;
use crate::error::{Error, Result};
use crate::extension::{Estimator, FractionalPoint, EXACT_EXTENSION_LIMIT};
use crate::matroid::Matroid;
use crate::setfn::ValueOracle;

/// The per-coordinate weight that drives each step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Direction {
    /// `E[f(R + i) - f(R)]` for `R ~ x`, which equals `(1 - x_i) ∂_i F(x)`.
    #[default]
    ExpectedMarginal,
    /// `∂_i F(x) = E[f(R + i) - f(R - i)]`.
    Gradient,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ContinuousGreedyConfig {
    /// Number of steps, `1/δ`.
    pub steps: usize,
    pub estimator: Estimator,
    pub direction: Direction,
}

impl ContinuousGreedyConfig {
    /// `delta` must be the reciprocal of a positive integer.
    pub fn from_delta(delta: f64, estimator: Estimator) -> Result<Self> {
        if !(delta > 0.0 && delta <= 1.0) {
            return Err(Error::InvalidParameters(format!("step size {delta} is not in (0, 1]")));
        }
        let inv = 1.0 / delta;
        let steps = inv.round();
        if (inv - steps).abs() > 1e-6 * inv {
            return Err(Error::InvalidParameters(format!("1/{delta} is not an integer")));
        }
        let cfg = Self { steps: steps as usize, estimator, direction: Direction::default() };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn with_direction(mut self, direction: Direction) -> Self {
        self.direction = direction;
        self
    }

    pub fn delta(&self) -> f64 {
        1.0 / self.steps as f64
    }

    pub fn validate(&self) -> Result<()> {
        if self.steps == 0 {
            return Err(Error::InvalidParameters("at least one step is required".into()));
        }
        if let Estimator::Sampled { samples: 0 } = self.estimator {
            return Err(Error::InvalidParameters("samples must be at least 1".into()));
        }
        Ok(())
    }
}

/// Runs the continuous phase and returns `x(1)`.
pub fn measured_continuous_greedy<O, R>(
    oracle: &O,
    matroid: &Matroid,
    cfg: &ContinuousGreedyConfig,
    rng: &mut R,
) -> Result<FractionalPoint>
where
    O: ValueOracle + ?Sized,
    R: Rng + ?Sized,
{
    measured_continuous_greedy_with(oracle, matroid, cfg, rng, |_| {})
}

/// Like [`measured_continuous_greedy`], calling `observe` with `x` after every step.
pub fn measured_continuous_greedy_with<O, R, F>(
    oracle: &O,
    matroid: &Matroid,
    cfg: &ContinuousGreedyConfig,
    rng: &mut R,
    mut observe: F,
) -> Result<FractionalPoint>
where
    O: ValueOracle + ?Sized,
    R: Rng + ?Sized,
    F: FnMut(&[f64]),
{
    cfg.validate()?;
    let n = matroid.ground().len();
    oracle.ground().check(&matroid.ground().empty_set())?;
    let table = match cfg.estimator {
        Estimator::Exact => Some(SubsetTable::build(oracle, EXACT_EXTENSION_LIMIT)?),
        Estimator::Sampled { .. } => None,
    };
    let candidates = matroid.available();
    let delta = cfg.delta();
    let mut x = FractionalPoint::zeros(n);
    let mut weights = vec![0.0; n];
    for _ in 0..cfg.steps {
        weights.iter_mut().for_each(|w| *w = 0.0);
        for i in candidates.iter() {
            weights[i] = match (&table, cfg.estimator) {
                (Some(t), _) => match cfg.direction {
                    Direction::ExpectedMarginal => t.expected_marginal(x.coords(), i),
                    Direction::Gradient => t.partial(x.coords(), i),
                },
                (None, Estimator::Sampled { samples }) => {
                    let mut total = 0.0;
                    for _ in 0..samples {
                        let r = x.sample_set(rng);
                        let low = match cfg.direction {
                            Direction::ExpectedMarginal => r,
                            Direction::Gradient => r.without(i),
                        };
                        total += oracle.value(&r.with(i)) - oracle.value(&low);
                    }
                    total / samples as f64
                }
                (None, Estimator::Exact) => unreachable!(),
            };
        }
        let chosen = matroid.max_weight_independent_set(&weights)?;
        let coords = x.coords_mut();
        for i in chosen.iter() {
            coords[i] += delta * (1.0 - coords[i]);
        }
        observe(x.coords());
    }
    Ok(x)
}
