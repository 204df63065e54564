//! Dependent rounding of a fractional point onto an independent set.
//!
//! Within each capacity group, two fractional coordinates are moved in
//! opposite directions until one becomes integral; the direction is chosen so
//! the expected change of each coordinate is zero. The group's mass is kept,
//! so the capacity still holds, and each element ends in the set with
//! probability equal to its coordinate. The function being maximized is not
//! consulted.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::extension::FractionalPoint;
use crate::matroid::Matroid;
use crate::set::ElementSet;

/// Slack allowed when checking that the input lies in the polytope.
pub const POLYTOPE_TOLERANCE: f64 = 1e-9;

const INTEGRAL: f64 = 1e-12;

fn is_fractional(v: f64) -> bool {
    v > INTEGRAL && v < 1.0 - INTEGRAL
}

/// Rounds `x` to an independent set `S` with `P[i ∈ S] = x_i`.
pub fn pipage_round<R: Rng + ?Sized>(matroid: &Matroid, x: &FractionalPoint, rng: &mut R) -> Result<ElementSet> {
    matroid.check_polytope(x.coords(), POLYTOPE_TOLERANCE)?;
    let n = x.len();
    let mut y: Vec<f64> = x.coords().iter().map(|v| v.clamp(0.0, 1.0)).collect();
    let form = matroid.partition_form();
    let mut out = ElementSet::empty(n);
    for (group, _) in &form.groups {
        let mut frac: Vec<usize> = group.difference(&form.excluded).iter().filter(|&i| is_fractional(y[i])).collect();
        frac.shuffle(rng);
        while frac.len() >= 2 {
            let (i, j) = (frac[frac.len() - 1], frac[frac.len() - 2]);
            let up = (1.0 - y[i]).min(y[j]);
            let down = y[i].min(1.0 - y[j]);
            if rng.random::<f64>() * (up + down) < down {
                y[i] += up;
                y[j] -= up;
            } else {
                y[i] -= down;
                y[j] += down;
            }
            for k in [i, j] {
                if y[k] <= INTEGRAL {
                    y[k] = 0.0;
                } else if y[k] >= 1.0 - INTEGRAL {
                    y[k] = 1.0;
                }
            }
            frac.retain(|&k| is_fractional(y[k]));
        }
        if let Some(&i) = frac.first() {
            y[i] = if rng.random::<f64>() < y[i] { 1.0 } else { 0.0 };
        }
        for i in group.difference(&form.excluded).iter() {
            if y[i] >= 1.0 - INTEGRAL {
                out.insert(i);
            }
        }
    }
    if !matroid.independent(&out) {
        return Err(Error::OutsidePolytope(format!("rounded set {out} is not independent")));
    }
    Ok(out)
}
