//! The smoothing meta-algorithm.
//!
//! Pins a random `h`-subset `H` of a basis, runs an exact-oracle algorithm on
//! the sampled surrogate over the contracted matroid, then adds back a random
//! `t`-subset of `H`.

use rand::Rng;

use crate::combinatorics::{binomial, random_k_subset};
use crate::error::{Error, Result};
use crate::matroid::Matroid;
use crate::set::ElementSet;
use crate::setfn::ValueOracle;
use crate::solvers::{solve, Algorithm};
use crate::surrogate::{SampledSurrogate, SurrogateConfig};

#[derive(Debug, Clone, PartialEq)]
pub struct MetaConfig {
    pub h: usize,
    pub t: usize,
    pub m: usize,
    pub inner: Algorithm,
    pub matroid: Matroid,
}

impl MetaConfig {
    pub fn validate(&self) -> Result<()> {
        let MetaConfig { h, t, m, .. } = *self;
        if h == 0 {
            if t != 0 || m != 1 {
                return Err(Error::InvalidParameters(format!(
                    "with h = 0 the surrogate is the oracle itself and needs t = 0, m = 1 (got t={t}, m={m})"
                )));
            }
            return Ok(());
        }
        if t >= h {
            return Err(Error::InvalidParameters(format!("need t < h, got h={h}, t={t}")));
        }
        let rank = self.matroid.rank();
        if h > rank {
            return Err(Error::InvalidParameters(format!("h = {h} exceeds the matroid rank {rank}")));
        }
        if m == 0 {
            return Err(Error::InvalidParameters("m must be at least 1".into()));
        }
        if binomial(h, t).is_some_and(|c| (m as u128) > c) {
            return Err(Error::TooManySamples { h, t, m });
        }
        Ok(())
    }
}

/// Everything the meta-algorithm drew along the way.
#[derive(Debug, Clone, PartialEq)]
pub struct MetaOutcome {
    /// `S_H ∪ H'`.
    pub set: ElementSet,
    /// `H`.
    pub smoothing: ElementSet,
    /// `S_H`, the inner algorithm's answer on the contracted problem.
    pub inner_solution: ElementSet,
    /// `H'`.
    pub added: ElementSet,
    pub surrogate: SurrogateConfig,
}

pub fn meta_solve<O, R>(oracle: &O, cfg: &MetaConfig, rng: &mut R) -> Result<ElementSet>
where
    O: ValueOracle + ?Sized,
    R: Rng + ?Sized,
{
    meta_solve_detailed(oracle, cfg, rng).map(|o| o.set)
}

pub fn meta_solve_detailed<O, R>(oracle: &O, cfg: &MetaConfig, rng: &mut R) -> Result<MetaOutcome>
where
    O: ValueOracle + ?Sized,
    R: Rng + ?Sized,
{
    cfg.validate()?;
    let ground = cfg.matroid.ground();
    if oracle.ground() != ground {
        return Err(Error::GroundMismatch { expected: ground.len(), actual: oracle.ground().len() });
    }
    let (smoothing, surrogate) = if cfg.h == 0 {
        (ground.empty_set(), SurrogateConfig::identity(ground))
    } else {
        let basis = cfg.matroid.arbitrary_basis();
        let h = random_k_subset(&basis, cfg.h, rng)?;
        let sc = SurrogateConfig::sample(h, cfg.t, cfg.m, rng)?;
        (h, sc)
    };
    let contracted = cfg.matroid.contract(&smoothing)?;
    let inner_solution = {
        let f_hat = SampledSurrogate::new(oracle, &surrogate)?;
        solve(&f_hat, &contracted, &cfg.inner, rng)?
    };
    let added = random_k_subset(&smoothing, cfg.t, rng)?;
    let set = inner_solution.union(&added);
    debug_assert!(cfg.matroid.independent(&set));
    Ok(MetaOutcome { set, smoothing, inner_solution, added, surrogate })
}

/// `f0(S) = |S|^{-1} Σ_{e ∈ S} f~(S - e)`, used to compare candidate sets.
pub fn comparison_surrogate<O: ValueOracle + ?Sized>(oracle: &O, s: &ElementSet) -> Result<f64> {
    oracle.ground().check(s)?;
    if s.is_empty() {
        return Err(Error::InvalidParameters("the comparison value of the empty set is undefined".into()));
    }
    let total: f64 = s.iter().map(|e| oracle.value(&s.without(e))).sum();
    Ok(total / s.len() as f64)
}

/// Runs the meta-algorithm `runs` times and keeps the candidate with the
/// largest comparison value (first one on ties). Empty candidates rank last.
pub fn best_of<O, R>(oracle: &O, cfg: &MetaConfig, runs: usize, rng: &mut R) -> Result<ElementSet>
where
    O: ValueOracle + ?Sized,
    R: Rng + ?Sized,
{
    if runs == 0 {
        return Err(Error::InvalidParameters("at least one run is required".into()));
    }
    let mut best: Option<(ElementSet, f64)> = None;
    for _ in 0..runs {
        let s = meta_solve(oracle, cfg, rng)?;
        let score = if s.is_empty() { f64::NEG_INFINITY } else { comparison_surrogate(oracle, &s)? };
        if best.as_ref().is_none_or(|(_, b)| score > *b) {
            best = Some((s, score));
        }
    }
    Ok(best.expect("runs > 0").0)
}
