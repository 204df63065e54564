//! Ground sets and canonical subsets.
//!
//! An [`ElementSet`] is a fixed-width bit vector. Two sets over the same
//! ground set are equal exactly when their membership bits are equal, which
//! makes the raw words usable as a noise key.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const WORDS: usize = 4;

/// Largest supported ground set.
pub const MAX_ELEMENTS: usize = WORDS * 64;

/// The ground set `{0, .., n-1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "usize", into = "usize")]
pub struct GroundSet {
    n: usize,
}

impl GroundSet {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_ELEMENTS {
            return Err(Error::GroundSize(n));
        }
        Ok(Self { n })
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.n
    }

    /// Always false; kept for clippy's `len_without_is_empty`.
    #[inline]
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn empty_set(&self) -> ElementSet {
        ElementSet::empty(self.n)
    }

    pub fn full_set(&self) -> ElementSet {
        ElementSet::full(self.n)
    }

    pub fn set_from<I: IntoIterator<Item = usize>>(&self, elements: I) -> Result<ElementSet> {
        ElementSet::from_elements(self.n, elements)
    }

    pub fn check(&self, s: &ElementSet) -> Result<()> {
        if s.ground_len() != self.n {
            return Err(Error::GroundMismatch { expected: self.n, actual: s.ground_len() });
        }
        Ok(())
    }

    /// Iterates over all `2^n` subsets in increasing bit order. Only sensible for small `n`.
    pub fn subsets(&self) -> impl Iterator<Item = ElementSet> + '_ {
        let n = self.n;
        assert!(n < 64, "subset enumeration needs n < 64");
        (0u64..(1u64 << n)).map(move |mask| ElementSet::from_mask(n, mask))
    }
}

impl TryFrom<usize> for GroundSet {
    type Error = Error;
    fn try_from(n: usize) -> Result<Self> {
        Self::new(n)
    }
}

impl From<GroundSet> for usize {
    fn from(g: GroundSet) -> usize {
        g.n
    }
}

/// A subset of a ground set, stored as membership bits.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElementSet {
    n: u16,
    words: [u64; WORDS],
}

impl ElementSet {
    pub fn empty(n: usize) -> Self {
        debug_assert!(n <= MAX_ELEMENTS);
        Self { n: n as u16, words: [0; WORDS] }
    }

    pub fn full(n: usize) -> Self {
        let mut s = Self::empty(n);
        for w in 0..WORDS {
            let lo = w * 64;
            if n >= lo + 64 {
                s.words[w] = u64::MAX;
            } else if n > lo {
                s.words[w] = (1u64 << (n - lo)) - 1;
            }
        }
        s
    }

    pub fn from_elements<I: IntoIterator<Item = usize>>(n: usize, elements: I) -> Result<Self> {
        if n == 0 || n > MAX_ELEMENTS {
            return Err(Error::GroundSize(n));
        }
        let mut s = Self::empty(n);
        for e in elements {
            if e >= n {
                return Err(Error::ElementOutOfRange { element: e, n });
            }
            s.insert(e);
        }
        Ok(s)
    }

    /// Builds a set from the low `n` bits of `mask` (`n <= 64`).
    pub fn from_mask(n: usize, mask: u64) -> Self {
        debug_assert!(n <= 64);
        let mut s = Self::empty(n);
        s.words[0] = if n == 64 { mask } else { mask & ((1u64 << n) - 1) };
        s
    }

    /// The low 64 membership bits.
    #[inline]
    pub fn mask(&self) -> u64 {
        self.words[0]
    }

    #[inline]
    pub fn words(&self) -> &[u64; WORDS] {
        &self.words
    }

    #[inline]
    pub fn ground_len(&self) -> usize {
        self.n as usize
    }

    #[inline]
    pub fn contains(&self, e: usize) -> bool {
        e < self.n as usize && self.words[e / 64] >> (e % 64) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, e: usize) {
        debug_assert!(e < self.n as usize);
        self.words[e / 64] |= 1u64 << (e % 64);
    }

    #[inline]
    pub fn remove(&mut self, e: usize) {
        self.words[e / 64] &= !(1u64 << (e % 64));
    }

    /// `S + x`.
    #[inline]
    pub fn with(mut self, e: usize) -> Self {
        self.insert(e);
        self
    }

    /// `S - x`.
    #[inline]
    pub fn without(mut self, e: usize) -> Self {
        self.remove(e);
        self
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    #[inline]
    pub fn union(&self, other: &Self) -> Self {
        debug_assert_eq!(self.n, other.n);
        let mut out = *self;
        for (a, b) in out.words.iter_mut().zip(other.words.iter()) {
            *a |= b;
        }
        out
    }

    #[inline]
    pub fn intersection(&self, other: &Self) -> Self {
        debug_assert_eq!(self.n, other.n);
        let mut out = *self;
        for (a, b) in out.words.iter_mut().zip(other.words.iter()) {
            *a &= b;
        }
        out
    }

    #[inline]
    pub fn difference(&self, other: &Self) -> Self {
        debug_assert_eq!(self.n, other.n);
        let mut out = *self;
        for (a, b) in out.words.iter_mut().zip(other.words.iter()) {
            *a &= !b;
        }
        out
    }

    pub fn complement(&self) -> Self {
        Self::full(self.n as usize).difference(self)
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.words.iter().zip(other.words.iter()).all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.words.iter().zip(other.words.iter()).all(|(a, b)| a & b == 0)
    }

    /// Elements in ascending order.
    pub fn iter(&self) -> Elements {
        Elements { words: self.words, word: 0 }
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

/// Ascending iterator over the members of an [`ElementSet`].
pub struct Elements {
    words: [u64; WORDS],
    word: usize,
}

impl Iterator for Elements {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        while self.word < WORDS {
            let w = self.words[self.word];
            if w != 0 {
                let bit = w.trailing_zeros() as usize;
                self.words[self.word] &= w - 1;
                return Some(self.word * 64 + bit);
            }
            self.word += 1;
        }
        None
    }
}

impl<'a> IntoIterator for &'a ElementSet {
    type Item = usize;
    type IntoIter = Elements;
    fn into_iter(self) -> Elements {
        self.iter()
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_set_has_n_members() {
        for n in [1, 63, 64, 65, 128, 200, 256] {
            let s = ElementSet::full(n);
            assert_eq!(s.len(), n);
            assert_eq!(s.iter().last(), Some(n - 1));
        }
    }

    #[test]
    fn canonical_equality() {
        let a = ElementSet::from_elements(130, [3, 129, 64]).unwrap();
        let mut b = ElementSet::empty(130);
        for e in [64, 129, 3, 3] {
            b.insert(e);
        }
        assert_eq!(a, b);
        assert_eq!(a.to_vec(), vec![3, 64, 129]);
        assert_ne!(a, ElementSet::from_elements(131, [3, 129, 64]).unwrap());
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(matches!(
            ElementSet::from_elements(4, [4]),
            Err(Error::ElementOutOfRange { element: 4, n: 4 })
        ));
        assert!(GroundSet::new(0).is_err());
        assert!(GroundSet::new(MAX_ELEMENTS + 1).is_err());
    }

    #[test]
    fn set_algebra() {
        let g = GroundSet::new(6).unwrap();
        let a = g.set_from([0, 1, 2]).unwrap();
        let b = g.set_from([2, 3]).unwrap();
        assert_eq!(a.union(&b).to_vec(), vec![0, 1, 2, 3]);
        assert_eq!(a.intersection(&b).to_vec(), vec![2]);
        assert_eq!(a.difference(&b).to_vec(), vec![0, 1]);
        assert_eq!(a.complement().to_vec(), vec![3, 4, 5]);
        assert!(a.intersection(&b).is_subset(&a));
        assert!(!a.is_disjoint(&b));
        assert_eq!(g.subsets().count(), 64);
    }
}
