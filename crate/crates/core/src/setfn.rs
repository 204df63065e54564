//! Set functions: the [`ValueOracle`] interface and the concrete families
//! used by the experiments and the test suites.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::set::{ElementSet, GroundSet};

/// Anything that can be asked for the value of a set.
///
/// Exact functions, persistent noisy oracles and sampled surrogates all
/// implement this. Callers are expected to pass sets over [`Self::ground`];
/// use [`SetFunctionSpec::evaluate`] when the argument is untrusted.
pub trait ValueOracle {
    fn ground(&self) -> GroundSet;
    fn value(&self, s: &ElementSet) -> f64;
}

impl<T: ValueOracle + ?Sized> ValueOracle for &T {
    fn ground(&self) -> GroundSet {
        (**self).ground()
    }
    fn value(&self, s: &ElementSet) -> f64 {
        (**self).value(s)
    }
}

/// Wraps a closure as an oracle.
pub struct FnOracle<F> {
    ground: GroundSet,
    f: F,
}

impl<F: Fn(&ElementSet) -> f64> FnOracle<F> {
    pub fn new(ground: GroundSet, f: F) -> Self {
        Self { ground, f }
    }
}

impl<F: Fn(&ElementSet) -> f64> ValueOracle for FnOracle<F> {
    fn ground(&self) -> GroundSet {
        self.ground
    }
    fn value(&self, s: &ElementSet) -> f64 {
        (self.f)(s)
    }
}

/// An undirected weighted edge of a cut function.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub weight: f64,
}

/// Closed-form set function families.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SetFunctionSpec {
    /// `f(S) = sum_{i in S} w_i - c |S|^2`.
    WeightedAdditiveQuadratic { weights: Vec<f64>, cost: f64 },
    /// Element `i` covers the items `covers[i]`; `f(S)` is the total weight of covered items.
    Coverage { covers: Vec<Vec<usize>>, item_weights: Vec<f64> },
    /// Total weight of edges with exactly one endpoint in `S`.
    Cut { n: usize, edges: Vec<Edge> },
    /// `f(S) = sum_{i in S} w_i`.
    Modular { weights: Vec<f64> },
}

impl SetFunctionSpec {
    pub fn weighted_additive_quadratic(weights: Vec<f64>, cost: f64) -> Result<Self> {
        let spec = Self::WeightedAdditiveQuadratic { weights, cost };
        spec.validate()?;
        Ok(spec)
    }

    pub fn coverage(covers: Vec<Vec<usize>>, item_weights: Vec<f64>) -> Result<Self> {
        let spec = Self::Coverage { covers, item_weights };
        spec.validate()?;
        Ok(spec)
    }

    pub fn cut(n: usize, edges: Vec<Edge>) -> Result<Self> {
        let spec = Self::Cut { n, edges };
        spec.validate()?;
        Ok(spec)
    }

    pub fn modular(weights: Vec<f64>) -> Result<Self> {
        let spec = Self::Modular { weights };
        spec.validate()?;
        Ok(spec)
    }

    pub fn len(&self) -> usize {
        match self {
            Self::WeightedAdditiveQuadratic { weights, .. } | Self::Modular { weights } => {
                weights.len()
            }
            Self::Coverage { covers, .. } => covers.len(),
            Self::Cut { n, .. } => *n,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Checks structural well-formedness (finite parameters, indices in range).
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidFunction(msg));
        GroundSet::new(self.len()).map_err(|e| Error::InvalidFunction(e.to_string()))?;
        match self {
            Self::WeightedAdditiveQuadratic { weights, cost } => {
                if !cost.is_finite() {
                    return bad(format!("cost {cost} is not finite"));
                }
                if weights.iter().any(|w| !w.is_finite()) {
                    return bad("non-finite weight".into());
                }
            }
            Self::Modular { weights } => {
                if weights.iter().any(|w| !w.is_finite()) {
                    return bad("non-finite weight".into());
                }
            }
            Self::Coverage { covers, item_weights } => {
                if item_weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
                    return bad("item weights must be finite and non-negative".into());
                }
                for (e, items) in covers.iter().enumerate() {
                    if let Some(&it) = items.iter().find(|&&it| it >= item_weights.len()) {
                        return bad(format!("element {e} covers unknown item {it}"));
                    }
                }
            }
            Self::Cut { n, edges } => {
                for edge in edges {
                    if edge.u >= *n || edge.v >= *n || edge.u == edge.v {
                        return bad(format!("bad edge ({}, {})", edge.u, edge.v));
                    }
                    if !edge.weight.is_finite() || edge.weight < 0.0 {
                        return bad(format!("edge weight {} must be non-negative", edge.weight));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn ground_set(&self) -> GroundSet {
        GroundSet::new(self.len()).expect("validated spec has a valid ground set")
    }

    /// `f(S)`, with a ground-set check.
    pub fn evaluate(&self, s: &ElementSet) -> Result<f64> {
        self.ground_set().check(s)?;
        Ok(self.eval_unchecked(s))
    }

    /// `f(S + x) - f(S)`.
    pub fn marginal(&self, s: &ElementSet, x: usize) -> Result<f64> {
        self.ground_set().check(s)?;
        if x >= self.len() {
            return Err(Error::ElementOutOfRange { element: x, n: self.len() });
        }
        if s.contains(x) {
            return Err(Error::ElementPresent(x));
        }
        Ok(self.eval_unchecked(&s.with(x)) - self.eval_unchecked(s))
    }

    fn eval_unchecked(&self, s: &ElementSet) -> f64 {
        match self {
            Self::WeightedAdditiveQuadratic { weights, cost } => {
                let mut sum = 0.0;
                let mut k = 0usize;
                for i in s.iter() {
                    sum += weights[i];
                    k += 1;
                }
                if k == 0 {
                    0.0
                } else {
                    sum - cost * (k * k) as f64
                }
            }
            Self::Modular { weights } => s.iter().map(|i| weights[i]).sum(),
            Self::Coverage { covers, item_weights } => {
                let mut covered = vec![false; item_weights.len()];
                let mut total = 0.0;
                for i in s.iter() {
                    for &it in &covers[i] {
                        if !covered[it] {
                            covered[it] = true;
                            total += item_weights[it];
                        }
                    }
                }
                total
            }
            Self::Cut { edges, .. } => edges
                .iter()
                .filter(|e| s.contains(e.u) != s.contains(e.v))
                .map(|e| e.weight)
                .sum(),
        }
    }

    /// True when the family guarantees submodularity for these parameters.
    pub fn is_submodular_family(&self) -> bool {
        match self {
            Self::WeightedAdditiveQuadratic { cost, .. } => *cost >= 0.0,
            Self::Coverage { .. } | Self::Cut { .. } | Self::Modular { .. } => true,
        }
    }

    /// True when the family guarantees monotonicity for these parameters.
    pub fn is_monotone_family(&self) -> bool {
        match self {
            Self::Coverage { .. } => true,
            Self::Modular { weights } => weights.iter().all(|&w| w >= 0.0),
            Self::WeightedAdditiveQuadratic { weights, cost } => {
                // marginals w_i - c(2k+1) at k = n-1
                let n = weights.len() as f64;
                weights.iter().all(|&w| w - cost * (2.0 * n - 1.0) >= 0.0)
            }
            Self::Cut { edges, .. } => edges.is_empty(),
        }
    }

    /// For the weighted-additive family: `min_k (sum of k smallest weights - c k^2) >= 0`,
    /// which is exactly `f(S) >= 0` for every `S`. Other families are non-negative by
    /// construction except `Modular` with negative weights.
    pub fn is_nonnegative_certified(&self) -> bool {
        match self {
            Self::WeightedAdditiveQuadratic { weights, cost } => {
                let mut sorted = weights.clone();
                sorted.sort_by(f64::total_cmp);
                let mut prefix = 0.0;
                sorted.iter().enumerate().all(|(i, w)| {
                    prefix += w;
                    let k = (i + 1) as f64;
                    prefix - cost * k * k >= 0.0
                })
            }
            Self::Modular { weights } => weights.iter().all(|&w| w >= 0.0),
            Self::Coverage { .. } | Self::Cut { .. } => true,
        }
    }
}

impl ValueOracle for SetFunctionSpec {
    fn ground(&self) -> GroundSet {
        self.ground_set()
    }
    #[inline]
    fn value(&self, s: &ElementSet) -> f64 {
        self.eval_unchecked(s)
    }
}
