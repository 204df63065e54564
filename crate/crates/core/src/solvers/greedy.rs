use crate::matroid::Matroid;
use crate::set::ElementSet;
use crate::setfn::ValueOracle;

/// Adds the feasible element with the largest positive marginal until none is
/// left. Ties go to the smallest id.
pub fn greedy<O: ValueOracle + ?Sized>(oracle: &O, matroid: &Matroid) -> ElementSet {
    let candidates = matroid.available();
    let mut current = matroid.ground().empty_set();
    let mut value = oracle.value(&current);
    loop {
        let mut best: Option<(usize, f64, f64)> = None;
        for e in candidates.difference(&current).iter() {
            let next = current.with(e);
            if !matroid.independent(&next) {
                continue;
            }
            let v = oracle.value(&next);
            let gain = v - value;
            if gain > 0.0 && best.is_none_or(|(_, g, _)| gain > g) {
                best = Some((e, gain, v));
            }
        }
        match best {
            Some((e, _, v)) => {
                current.insert(e);
                value = v;
            }
            None => return current,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::set::GroundSet;
    use crate::setfn::SetFunctionSpec;

    #[test]
    fn picks_top_weights_under_cardinality() {
        let f = SetFunctionSpec::modular(vec![3.0, 1.0, 2.0]).unwrap();
        let m = Matroid::uniform(GroundSet::new(3).unwrap(), 2).unwrap();
        assert_eq!(greedy(&f, &m).to_vec(), vec![0, 2]);
    }

    #[test]
    fn stops_at_non_positive_marginals() {
        let f = SetFunctionSpec::weighted_additive_quadratic(vec![5.0, 5.0, 1.0], 2.0).unwrap();
        let m = Matroid::free(GroundSet::new(3).unwrap());
        assert_eq!(greedy(&f, &m).to_vec(), vec![0]);
    }
}
