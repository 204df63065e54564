//! Randomized double greedy driven by an approximate value oracle.
//!
//! Keeps `X ⊆ Y`, starting from `X = ∅` and `Y = U`. For each element `u` it
//! estimates `a = f(X + u) - f(X)` and `b = f(Y - u) - f(Y)` from the oracle
//! and adds `u` to `X` with probability `p`, otherwise drops it from `Y`:
//!
//! * `a > 0, b > 0`: `p = a / (a + b)`
//! * `a > 0, b <= 0`: `p = 1`
//! * `a <= 0`: `p = 0`

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::Result;
use crate::set::{ElementSet, GroundSet};
use crate::setfn::ValueOracle;

/// Below this, `a + b` is treated as zero and the coin is fair.
const SUM_FLOOR: f64 = 1e-12;

/// Processing order of the elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ElementOrder {
    #[default]
    Ascending,
    /// Uniformly shuffled with the run's rng.
    Shuffled,
}

/// `(p, q)` for estimated marginals `(a, b)`.
pub fn selection_probabilities(a: f64, b: f64) -> (f64, f64) {
    if a > 0.0 && b > 0.0 {
        let sum = a + b;
        if sum < SUM_FLOOR {
            (0.5, 0.5)
        } else {
            (a / sum, b / sum)
        }
    } else if a > 0.0 {
        (1.0, 0.0)
    } else {
        (0.0, 1.0)
    }
}

/// One iteration of double greedy, for inspection.
#[derive(Debug, Clone, PartialEq)]
pub struct DoubleGreedyStep {
    pub element: usize,
    pub a: f64,
    pub b: f64,
    pub p: f64,
    pub q: f64,
    pub added: bool,
    /// `X` and `Y` after the step.
    pub x: ElementSet,
    pub y: ElementSet,
}

/// Double greedy over the whole ground set in ascending order.
pub fn double_greedy<O, R>(oracle: &O, ground: GroundSet, rng: &mut R) -> Result<ElementSet>
where
    O: ValueOracle + ?Sized,
    R: Rng + ?Sized,
{
    ground.check(&oracle.ground().empty_set())?;
    double_greedy_on(oracle, &ground.full_set(), ElementOrder::Ascending, rng)
}

/// Double greedy restricted to `universe` (`Y` starts at `universe`).
pub fn double_greedy_on<O, R>(
    oracle: &O,
    universe: &ElementSet,
    order: ElementOrder,
    rng: &mut R,
) -> Result<ElementSet>
where
    O: ValueOracle + ?Sized,
    R: Rng + ?Sized,
{
    run(oracle, universe, order, rng, |_| {})
}

/// Like [`double_greedy_on`], also returning every step.
pub fn double_greedy_traced<O, R>(
    oracle: &O,
    universe: &ElementSet,
    order: ElementOrder,
    rng: &mut R,
) -> Result<(ElementSet, Vec<DoubleGreedyStep>)>
where
    O: ValueOracle + ?Sized,
    R: Rng + ?Sized,
{
    let mut steps = Vec::with_capacity(universe.len());
    let out = run(oracle, universe, order, rng, |s| steps.push(s))?;
    Ok((out, steps))
}

fn run<O, R, F>(oracle: &O, universe: &ElementSet, order: ElementOrder, rng: &mut R, mut observe: F) -> Result<ElementSet>
where
    O: ValueOracle + ?Sized,
    R: Rng + ?Sized,
    F: FnMut(DoubleGreedyStep),
{
    oracle.ground().check(universe)?;
    let mut elements = universe.to_vec();
    if order == ElementOrder::Shuffled {
        elements.shuffle(rng);
    }
    let mut x = ElementSet::empty(universe.ground_len());
    let mut y = *universe;
    for u in elements {
        // query order: X + u, X, Y - u, Y
        let a = oracle.value(&x.with(u)) - oracle.value(&x);
        let b = oracle.value(&y.without(u)) - oracle.value(&y);
        let (p, q) = selection_probabilities(a, b);
        let added = rng.random::<f64>() < p;
        if added {
            x.insert(u);
        } else {
            y.remove(u);
        }
        observe(DoubleGreedyStep { element: u, a, b, p, q, added, x, y });
    }
    debug_assert_eq!(x, y);
    Ok(x)
}
