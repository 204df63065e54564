//! Binomial coefficients, k-subset unranking and uniform subset sampling.

use std::collections::HashSet;

use rand::seq::{index, SliceRandom};
use rand::Rng;

use crate::error::{Error, Result};
use crate::set::ElementSet;

/// `C(n, k)`, or `None` on overflow of `u128`.
pub fn binomial(n: usize, k: usize) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) stays integral at every step
        acc = acc.checked_mul((n - i) as u128)? / (i as u128 + 1);
    }
    Some(acc)
}

/// Unranks `rank` in the colexicographic order of `t`-subsets of `{0, .., h-1}`
/// (the combinatorial number system). Returns positions in ascending order.
pub fn unrank_combination(mut rank: u128, h: usize, t: usize) -> Vec<usize> {
    debug_assert!(rank < binomial(h, t).unwrap_or(u128::MAX));
    let mut out = vec![0; t];
    let mut upper = h;
    for slot in (0..t).rev() {
        let k = slot + 1;
        // largest c < upper with C(c, k) <= rank
        let mut c = upper - 1;
        while binomial(c, k).unwrap_or(u128::MAX) > rank {
            c -= 1;
        }
        rank -= binomial(c, k).unwrap();
        out[slot] = c;
        upper = c;
    }
    out
}

/// All `t`-subsets of `base`, in colexicographic order of positions within `base`.
pub fn k_subsets(base: &ElementSet, t: usize) -> Vec<ElementSet> {
    let members = base.to_vec();
    let h = members.len();
    let total = binomial(h, t).expect("k_subsets called on an enumerable family") as usize;
    (0..total as u128)
        .map(|r| pick(base.ground_len(), &members, &unrank_combination(r, h, t)))
        .collect()
}

fn pick(n: usize, members: &[usize], positions: &[usize]) -> ElementSet {
    let mut s = ElementSet::empty(n);
    for &p in positions {
        s.insert(members[p]);
    }
    s
}

/// A uniformly random `k`-subset of `base`.
pub fn random_k_subset<R: Rng + ?Sized>(base: &ElementSet, k: usize, rng: &mut R) -> Result<ElementSet> {
    let members = base.to_vec();
    if k > members.len() {
        return Err(Error::InvalidParameters(format!(
            "cannot pick {k} elements from a set of size {}",
            members.len()
        )));
    }
    let idx = index::sample(rng, members.len(), k);
    let mut s = ElementSet::empty(base.ground_len());
    for i in idx.iter() {
        s.insert(members[i]);
    }
    Ok(s)
}

/// Draws `m` pairwise-distinct `t`-subsets of `base`, uniformly over all
/// `m`-subsets of the `t`-subset family.
///
/// When the family has at most `4m` members it is enumerated and a partial
/// shuffle keeps `m` of them; otherwise subsets are drawn independently and
/// duplicates rejected.
pub fn sample_t_subsets_without_replacement<R: Rng + ?Sized>(
    base: &ElementSet,
    t: usize,
    m: usize,
    rng: &mut R,
) -> Result<Vec<ElementSet>> {
    let h = base.len();
    let total = binomial(h, t);
    if t > h || total.is_some_and(|c| (m as u128) > c) {
        return Err(Error::TooManySamples { h, t, m });
    }
    let enumerate = total.is_some_and(|c| c <= 4 * m as u128);
    if enumerate {
        let mut all = k_subsets(base, t);
        let (chosen, _) = all.partial_shuffle(rng, m);
        return Ok(chosen.to_vec());
    }
    let mut seen = HashSet::with_capacity(m);
    let mut out = Vec::with_capacity(m);
    while out.len() < m {
        let s = random_k_subset(base, t, rng)?;
        if seen.insert(s) {
            out.push(s);
        }
    }
    Ok(out)
}
