//! Exact-oracle algorithms that the meta-algorithm wraps.

mod baseline;
mod continuous_greedy;
mod double_greedy;
mod greedy;
mod rounding;

pub use baseline::random_subset;
pub use continuous_greedy::{
    measured_continuous_greedy, measured_continuous_greedy_with, ContinuousGreedyConfig, Direction,
};
pub use double_greedy::{
    double_greedy, double_greedy_on, double_greedy_traced, selection_probabilities, DoubleGreedyStep,
    ElementOrder,
};
pub use greedy::greedy;
pub use rounding::{pipage_round, POLYTOPE_TOLERANCE};

use rand::Rng;

use crate::combinatorics::random_k_subset;
use crate::error::{Error, Result};
use crate::matroid::Matroid;
use crate::set::ElementSet;
use crate::setfn::ValueOracle;

/// Which algorithm to run.
#[derive(Debug, Clone, PartialEq)]
pub enum Algorithm {
    /// Best feasible marginal per round.
    Greedy,
    /// Randomized double greedy; only valid when the constraint is vacuous.
    DoubleGreedy { order: ElementOrder },
    /// Measured continuous greedy followed by swap rounding.
    MeasuredContinuousGreedy(ContinuousGreedyConfig),
    /// A uniformly random feasible set of the given size.
    RandomSubset { size: usize },
}

impl Algorithm {
    pub fn double_greedy() -> Self {
        Self::DoubleGreedy { order: ElementOrder::Ascending }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::Greedy => "greedy",
            Self::DoubleGreedy { .. } => "double-greedy",
            Self::MeasuredContinuousGreedy(_) => "continuous-greedy",
            Self::RandomSubset { .. } => "random-subset",
        }
    }
}

/// Runs `algorithm` on `oracle` subject to `matroid`; the result is always independent.
pub fn solve<O, R>(oracle: &O, matroid: &Matroid, algorithm: &Algorithm, rng: &mut R) -> Result<ElementSet>
where
    O: ValueOracle + ?Sized,
    R: Rng + ?Sized,
{
    oracle.ground().check(&matroid.ground().empty_set())?;
    match algorithm {
        Algorithm::Greedy => Ok(greedy(oracle, matroid)),
        Algorithm::DoubleGreedy { order } => {
            if !matroid.is_free() {
                return Err(Error::Unsupported(
                    "double greedy needs an unconstrained problem (free matroid)".into(),
                ));
            }
            double_greedy_on(oracle, &matroid.available(), *order, rng)
        }
        Algorithm::MeasuredContinuousGreedy(cfg) => {
            let x = measured_continuous_greedy(oracle, matroid, cfg, rng)?;
            pipage_round(matroid, &x, rng)
        }
        Algorithm::RandomSubset { size } => {
            let s = random_k_subset(&matroid.available(), *size, rng)?;
            if !matroid.independent(&s) {
                return Err(Error::Unsupported(format!(
                    "a random {size}-subset is not guaranteed to be independent"
                )));
            }
            Ok(s)
        }
    }
}
