//! Exhaustive reference computations over all subsets of small ground sets.

use crate::error::{Error, Result};
use crate::matroid::Matroid;
use crate::set::ElementSet;
use crate::setfn::ValueOracle;

/// Enumeration budget of [`brute_force_opt`].
pub const BRUTE_FORCE_LIMIT: usize = 24;
/// Enumeration budget of [`check_submodular`].
pub const SUBMODULARITY_CHECK_LIMIT: usize = 14;
/// Absolute slack used by the structural checkers.
pub const TOLERANCE: f64 = 1e-9;

/// Values of an oracle on every subset, indexed by membership mask.
#[derive(Debug, Clone)]
pub struct SubsetTable {
    n: usize,
    values: Vec<f64>,
}

impl SubsetTable {
    pub fn build<O: ValueOracle + ?Sized>(oracle: &O, limit: usize) -> Result<Self> {
        let n = oracle.ground().len();
        if n > limit {
            return Err(Error::EnumerationBudget { n, limit });
        }
        let values = (0u64..1 << n).map(|m| oracle.value(&ElementSet::from_mask(n, m))).collect();
        Ok(Self { n, values })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, mask: u64) -> f64 {
        self.values[mask as usize]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

/// A feasible set of maximum value. Ties go to the smallest membership mask
/// (the bit vector read as a binary number).
pub fn brute_force_opt<O: ValueOracle + ?Sized>(
    oracle: &O,
    feasible: Option<&Matroid>,
) -> Result<(ElementSet, f64)> {
    let n = oracle.ground().len();
    if n > BRUTE_FORCE_LIMIT {
        return Err(Error::EnumerationBudget { n, limit: BRUTE_FORCE_LIMIT });
    }
    if let Some(m) = feasible {
        oracle.ground().check(&m.ground().empty_set())?;
    }
    let mut best = (ElementSet::empty(n), f64::NEG_INFINITY);
    for mask in 0u64..1 << n {
        let s = ElementSet::from_mask(n, mask);
        if feasible.is_some_and(|m| !m.independent(&s)) {
            continue;
        }
        let v = oracle.value(&s);
        if v > best.1 {
            best = (s, v);
        }
    }
    Ok(best)
}

/// Exhaustive diminishing-returns check: `f_A(x) >= f_B(x) - 1e-9` for all
/// `A ⊆ B` and `x ∉ B`.
pub fn check_submodular<O: ValueOracle + ?Sized>(oracle: &O) -> Result<bool> {
    let table = SubsetTable::build(oracle, SUBMODULARITY_CHECK_LIMIT)?;
    Ok(first_submodularity_violation(&table).is_none())
}

/// The first `(A, B, x)` masks violating diminishing returns, if any.
pub fn first_submodularity_violation(table: &SubsetTable) -> Option<(u64, u64, usize)> {
    let n = table.n();
    let full = (1u64 << n) - 1;
    for b in 0..=full {
        // iterate A over subsets of B
        let mut a = b;
        loop {
            for x in 0..n {
                let bit = 1u64 << x;
                if b & bit != 0 {
                    continue;
                }
                let fa = table.get(a | bit) - table.get(a);
                let fb = table.get(b | bit) - table.get(b);
                if fa < fb - TOLERANCE {
                    return Some((a, b, x));
                }
            }
            if a == 0 {
                break;
            }
            a = (a - 1) & b;
        }
    }
    None
}

/// Exhaustive monotonicity check (`f(S) <= f(S + x)` up to 1e-9).
pub fn check_monotone(table: &SubsetTable) -> bool {
    let n = table.n();
    (0u64..1 << n).all(|s| {
        (0..n).all(|x| s >> x & 1 == 1 || table.get(s | 1 << x) >= table.get(s) - TOLERANCE)
    })
}
