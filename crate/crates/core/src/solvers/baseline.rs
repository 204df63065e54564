use rand::Rng;

use crate::combinatorics::random_k_subset;
use crate::error::Result;
use crate::set::{ElementSet, GroundSet};

/// A uniformly random `k`-subset of the ground set.
pub fn random_subset<R: Rng + ?Sized>(ground: GroundSet, k: usize, rng: &mut R) -> Result<ElementSet> {
    random_k_subset(&ground.full_set(), k, rng)
}
