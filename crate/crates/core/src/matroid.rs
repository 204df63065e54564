//! Matroid constraints: uniform, partition, and contraction by an independent set.
//!
//! Every supported matroid is a partition matroid in disguise (a uniform
//! matroid is one part; contracting a partition matroid by an independent set
//! lowers capacities and removes the pinned elements). [`PartitionForm`]
//! exposes that view for the polytope checks and the rounding step.

use crate::error::{Error, Result};
use crate::set::{ElementSet, GroundSet};

#[derive(Debug, Clone, PartialEq)]
pub enum Matroid {
    /// `S` is independent iff `|S| <= rank`.
    Uniform { ground: GroundSet, rank: usize },
    /// `S` is independent iff `|S ∩ parts[j]| <= capacities[j]` for every `j`.
    Partition { ground: GroundSet, parts: Vec<ElementSet>, capacities: Vec<usize> },
    /// `S` is independent iff `S ∩ pinned = ∅` and `S ∪ pinned` is independent in `base`.
    Contracted { base: Box<Matroid>, pinned: ElementSet },
}

/// Groups with capacities, plus elements that may never be chosen.
#[derive(Debug, Clone, PartialEq)]
pub struct PartitionForm {
    pub groups: Vec<(ElementSet, usize)>,
    pub excluded: ElementSet,
}

impl Matroid {
    pub fn uniform(ground: GroundSet, rank: usize) -> Result<Self> {
        if rank > ground.len() {
            return Err(Error::InvalidMatroid(format!(
                "rank {rank} exceeds ground set size {}",
                ground.len()
            )));
        }
        Ok(Self::Uniform { ground, rank })
    }

    /// The unconstrained case, `Uniform(r = n)`.
    pub fn free(ground: GroundSet) -> Self {
        Self::Uniform { ground, rank: ground.len() }
    }

    /// Parts must be disjoint and cover the ground set; each capacity is at most its part size.
    pub fn partition(ground: GroundSet, parts: Vec<Vec<usize>>, capacities: Vec<usize>) -> Result<Self> {
        if parts.len() != capacities.len() {
            return Err(Error::InvalidMatroid(format!(
                "{} parts but {} capacities",
                parts.len(),
                capacities.len()
            )));
        }
        let mut seen = ground.empty_set();
        let mut sets = Vec::with_capacity(parts.len());
        for (part, &cap) in parts.iter().zip(&capacities) {
            let s = ground.set_from(part.iter().copied())?;
            if !s.is_disjoint(&seen) {
                return Err(Error::InvalidMatroid("parts overlap".into()));
            }
            if s.len() != part.len() {
                return Err(Error::InvalidMatroid("part lists an element twice".into()));
            }
            if cap > s.len() {
                return Err(Error::InvalidMatroid(format!(
                    "capacity {cap} exceeds part size {}",
                    s.len()
                )));
            }
            seen = seen.union(&s);
            sets.push(s);
        }
        if seen.len() != ground.len() {
            return Err(Error::InvalidMatroid("parts do not cover the ground set".into()));
        }
        Ok(Self::Partition { ground, parts: sets, capacities })
    }

    /// The contraction `I_H = { S ⊆ N \ H : S ∪ H ∈ I }`. `H` must be independent.
    pub fn contract(&self, pinned: &ElementSet) -> Result<Self> {
        self.ground().check(pinned)?;
        if !self.independent(pinned) {
            return Err(Error::InvalidMatroid(format!("contraction set {pinned} is not independent")));
        }
        Ok(Self::Contracted { base: Box::new(self.clone()), pinned: *pinned })
    }

    pub fn ground(&self) -> GroundSet {
        match self {
            Self::Uniform { ground, .. } | Self::Partition { ground, .. } => *ground,
            Self::Contracted { base, .. } => base.ground(),
        }
    }

    /// Independence test with a ground-set check. Sets meeting a contracted
    /// matroid's pinned elements are dependent, not an error.
    pub fn is_independent(&self, s: &ElementSet) -> Result<bool> {
        self.ground().check(s)?;
        Ok(self.independent(s))
    }

    /// Independence test without the ground-set check.
    pub fn independent(&self, s: &ElementSet) -> bool {
        match self {
            Self::Uniform { rank, .. } => s.len() <= *rank,
            Self::Partition { parts, capacities, .. } => parts
                .iter()
                .zip(capacities)
                .all(|(p, &cap)| p.intersection(s).len() <= cap),
            Self::Contracted { base, pinned } => {
                s.is_disjoint(pinned) && base.independent(&s.union(pinned))
            }
        }
    }

    pub fn rank(&self) -> usize {
        match self {
            Self::Uniform { rank, .. } => *rank,
            Self::Partition { capacities, .. } => capacities.iter().sum(),
            Self::Contracted { base, pinned } => base.rank() - pinned.len(),
        }
    }

    /// Greedy basis by ascending element id.
    pub fn arbitrary_basis(&self) -> ElementSet {
        let ground = self.ground();
        let mut basis = ground.empty_set();
        for e in 0..ground.len() {
            let cand = basis.with(e);
            if self.independent(&cand) {
                basis = cand;
            }
        }
        basis
    }

    /// Classic matroid greedy: scan by decreasing weight (ties by id), keep
    /// positive-weight elements that preserve independence.
    pub fn max_weight_independent_set(&self, weights: &[f64]) -> Result<ElementSet> {
        let ground = self.ground();
        if weights.len() != ground.len() {
            return Err(Error::GroundMismatch { expected: ground.len(), actual: weights.len() });
        }
        let mut order: Vec<usize> = (0..weights.len()).filter(|&i| weights[i] > 0.0).collect();
        order.sort_by(|&a, &b| weights[b].total_cmp(&weights[a]).then(a.cmp(&b)));
        let mut s = ground.empty_set();
        for e in order {
            let cand = s.with(e);
            if self.independent(&cand) {
                s = cand;
            }
        }
        Ok(s)
    }

    pub fn partition_form(&self) -> PartitionForm {
        match self {
            Self::Uniform { ground, rank } => PartitionForm {
                groups: vec![(ground.full_set(), *rank)],
                excluded: ground.empty_set(),
            },
            Self::Partition { ground, parts, capacities } => PartitionForm {
                groups: parts.iter().copied().zip(capacities.iter().copied()).collect(),
                excluded: ground.empty_set(),
            },
            Self::Contracted { base, pinned } => {
                let inner = base.partition_form();
                PartitionForm {
                    groups: inner
                        .groups
                        .into_iter()
                        .map(|(g, cap)| (g.difference(pinned), cap - g.intersection(pinned).len()))
                        .collect(),
                    excluded: inner.excluded.union(pinned),
                }
            }
        }
    }

    /// Elements that belong to at least one independent set.
    pub fn available(&self) -> ElementSet {
        let form = self.partition_form();
        let mut out = self.ground().empty_set();
        for (g, cap) in &form.groups {
            if *cap > 0 {
                out = out.union(g);
            }
        }
        out.difference(&form.excluded)
    }

    /// True when every subset of [`Self::available`] is independent, i.e. the
    /// constraint is vacuous on the elements it allows.
    pub fn is_free(&self) -> bool {
        self.independent(&self.available())
    }

    /// Checks `x` against the matroid polytope within `tol` per constraint.
    pub fn check_polytope(&self, x: &[f64], tol: f64) -> Result<()> {
        let n = self.ground().len();
        if x.len() != n {
            return Err(Error::GroundMismatch { expected: n, actual: x.len() });
        }
        if let Some((i, v)) = x.iter().enumerate().find(|(_, v)| !(-tol..=1.0 + tol).contains(*v)) {
            return Err(Error::OutsidePolytope(format!("x[{i}] = {v} is outside [0, 1]")));
        }
        let form = self.partition_form();
        if let Some(i) = form.excluded.iter().find(|&i| x[i] > tol) {
            return Err(Error::OutsidePolytope(format!("x[{i}] = {} on an excluded element", x[i])));
        }
        for (g, cap) in &form.groups {
            let sum: f64 = g.iter().map(|i| x[i]).sum();
            if sum > *cap as f64 + tol {
                return Err(Error::OutsidePolytope(format!(
                    "group {g} has mass {sum} above capacity {cap}"
                )));
            }
        }
        Ok(())
    }
}
