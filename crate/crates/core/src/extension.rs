//! The multilinear extension `F(x) = E[f(R)]`, `R` containing each `i`
//! independently with probability `x_i`.

use rand::Rng;

use crate::analysis::SubsetTable;
use crate::error::{Error, Result};
use crate::set::ElementSet;
use crate::setfn::ValueOracle;

/// Largest `n` for which extensions are computed exactly.
pub const EXACT_EXTENSION_LIMIT: usize = 20;

/// A point of `[0, 1]^n`.
#[derive(Debug, Clone, PartialEq)]
pub struct FractionalPoint(Vec<f64>);

impl FractionalPoint {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if let Some((i, v)) = coords.iter().enumerate().find(|(_, v)| !(0.0..=1.0).contains(*v)) {
            return Err(Error::InvalidParameters(format!("coordinate {i} = {v} is outside [0, 1]")));
        }
        Ok(Self(coords))
    }

    pub fn zeros(n: usize) -> Self {
        Self(vec![0.0; n])
    }

    pub fn indicator(s: &ElementSet) -> Self {
        Self((0..s.ground_len()).map(|i| if s.contains(i) { 1.0 } else { 0.0 }).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub(crate) fn coords_mut(&mut self) -> &mut [f64] {
        &mut self.0
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.0
    }

    /// Draws `R ~ x`.
    pub fn sample_set<R: Rng + ?Sized>(&self, rng: &mut R) -> ElementSet {
        let mut s = ElementSet::empty(self.0.len());
        for (i, &p) in self.0.iter().enumerate() {
            if rng.random::<f64>() < p {
                s.insert(i);
            }
        }
        s
    }
}

impl SubsetTable {
    /// `F(x)` by folding out one coordinate at a time; `O(2^n)`.
    pub fn multilinear(&self, x: &[f64]) -> f64 {
        let n = self.n();
        debug_assert_eq!(x.len(), n);
        if n == 0 {
            return self.get(0);
        }
        let values = self.values();
        let half = values.len() / 2;
        let top = x[n - 1];
        let mut buf: Vec<f64> =
            (0..half).map(|m| (1.0 - top) * values[m] + top * values[m + half]).collect();
        let mut len = half;
        for i in (0..n - 1).rev() {
            let half = len / 2;
            let xi = x[i];
            for m in 0..half {
                buf[m] = (1.0 - xi) * buf[m] + xi * buf[m + half];
            }
            len = half;
        }
        buf[0]
    }

    /// `∂_i F(x) = F(x ∨ 1_i) - F(x ∧ 1_ī)`.
    pub fn partial(&self, x: &[f64], i: usize) -> f64 {
        let mut y = x.to_vec();
        y[i] = 1.0;
        let up = self.multilinear(&y);
        y[i] = 0.0;
        up - self.multilinear(&y)
    }

    /// `E[f(R + i) - f(R)] = F(x ∨ 1_i) - F(x) = (1 - x_i) ∂_i F(x)`.
    pub fn expected_marginal(&self, x: &[f64], i: usize) -> f64 {
        (1.0 - x[i]) * self.partial(x, i)
    }
}

fn check_point<O: ValueOracle + ?Sized>(oracle: &O, x: &FractionalPoint) -> Result<()> {
    let n = oracle.ground().len();
    if x.len() != n {
        return Err(Error::GroundMismatch { expected: n, actual: x.len() });
    }
    Ok(())
}

/// Exact `F(x)`; `n <= 20`.
pub fn multilinear_exact<O: ValueOracle + ?Sized>(oracle: &O, x: &FractionalPoint) -> Result<f64> {
    check_point(oracle, x)?;
    Ok(SubsetTable::build(oracle, EXACT_EXTENSION_LIMIT)?.multilinear(x.coords()))
}

/// How a derivative of the extension is obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Estimator {
    /// Exhaustive over all subsets (`n <= 20`).
    Exact,
    /// Average over independent draws of `R ~ x`.
    Sampled { samples: usize },
}

/// `∂_i F(x)`, exactly or as the average of `f(R + i) - f(R - i)` over sampled `R ~ x`.
pub fn multilinear_partial<O, R>(
    oracle: &O,
    x: &FractionalPoint,
    i: usize,
    estimator: Estimator,
    rng: &mut R,
) -> Result<f64>
where
    O: ValueOracle + ?Sized,
    R: Rng + ?Sized,
{
    check_point(oracle, x)?;
    if i >= x.len() {
        return Err(Error::ElementOutOfRange { element: i, n: x.len() });
    }
    match estimator {
        Estimator::Exact => {
            Ok(SubsetTable::build(oracle, EXACT_EXTENSION_LIMIT)?.partial(x.coords(), i))
        }
        Estimator::Sampled { samples } => {
            if samples == 0 {
                return Err(Error::InvalidParameters("samples must be at least 1".into()));
            }
            let mut total = 0.0;
            for _ in 0..samples {
                let r = x.sample_set(rng);
                total += oracle.value(&r.with(i)) - oracle.value(&r.without(i));
            }
            Ok(total / samples as f64)
        }
    }
}
