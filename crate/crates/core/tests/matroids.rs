use noisub_core::analysis::brute_force_opt;
use noisub_core::{ElementSet, GroundSet, Matroid, SetFunctionSpec};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn set(n: usize, es: &[usize]) -> ElementSet {
    ElementSet::from_elements(n, es.iter().copied()).unwrap()
}

fn g(n: usize) -> GroundSet {
    GroundSet::new(n).unwrap()
}

fn random_matroids(n: usize, rng: &mut ChaCha8Rng) -> Vec<Matroid> {
    let mut out = vec![Matroid::uniform(g(n), rng.random_range(0..=n)).unwrap()];
    let mut ids: Vec<usize> = (0..n).collect();
    ids.shuffle(rng);
    let cut = rng.random_range(1..n);
    let parts = vec![ids[..cut].to_vec(), ids[cut..].to_vec()];
    let caps = parts.iter().map(|p| rng.random_range(0..=p.len())).collect();
    let p = Matroid::partition(g(n), parts, caps).unwrap();
    let basis = p.arbitrary_basis();
    let pinned: Vec<usize> = basis.iter().filter(|_| rng.random::<bool>()).collect();
    out.push(p.contract(&set(n, &pinned)).unwrap());
    out.push(p);
    out
}

#[test]
fn independence_examples() {
    let u = Matroid::uniform(g(6), 3).unwrap();
    assert!(u.is_independent(&set(6, &[0, 1, 2])).unwrap());
    assert!(!u.is_independent(&set(6, &[0, 1, 2, 3])).unwrap());
    let p = Matroid::partition(g(4), vec![vec![0, 1], vec![2, 3]], vec![1, 1]).unwrap();
    assert!(p.is_independent(&set(4, &[0, 2])).unwrap());
    assert!(!p.is_independent(&set(4, &[0, 1])).unwrap());
    let c = Matroid::uniform(g(6), 3).unwrap().contract(&set(6, &[5])).unwrap();
    assert!(!c.is_independent(&set(6, &[0, 1, 2])).unwrap());
    assert!(c.is_independent(&set(6, &[0, 1])).unwrap());
    assert!(!c.is_independent(&set(6, &[5])).unwrap());
    assert!(u.is_independent(&set(7, &[0])).is_err());
}

#[test]
fn rank_examples() {
    assert_eq!(Matroid::uniform(g(10), 5).unwrap().rank(), 5);
    let p = Matroid::partition(g(5), vec![vec![0, 1], vec![2, 3, 4]], vec![1, 2]).unwrap();
    assert_eq!(p.rank(), 3);
    let c = Matroid::uniform(g(10), 5).unwrap().contract(&set(10, &[1, 7])).unwrap();
    assert_eq!(c.rank(), 3);
}

#[test]
fn basis_examples() {
    assert_eq!(Matroid::uniform(g(4), 2).unwrap().arbitrary_basis().to_vec(), vec![0, 1]);
    let p = Matroid::partition(g(4), vec![vec![0, 1], vec![2, 3]], vec![1, 1]).unwrap();
    assert_eq!(p.arbitrary_basis().to_vec(), vec![0, 2]);
}

#[test]
fn max_weight_examples() {
    let u = Matroid::uniform(g(3), 2).unwrap();
    assert_eq!(u.max_weight_independent_set(&[3.0, 1.0, 2.0]).unwrap().to_vec(), vec![0, 2]);
    let p = Matroid::partition(g(4), vec![vec![0, 1], vec![2, 3]], vec![1, 1]).unwrap();
    assert_eq!(p.max_weight_independent_set(&[5.0, 6.0, 1.0, 2.0]).unwrap().to_vec(), vec![1, 3]);
    assert!(u.max_weight_independent_set(&[1.0]).is_err());
}

#[test]
fn construction_errors() {
    assert!(Matroid::uniform(g(3), 4).is_err());
    assert!(Matroid::partition(g(4), vec![vec![0, 1], vec![1, 2, 3]], vec![1, 1]).is_err());
    assert!(Matroid::partition(g(4), vec![vec![0, 1], vec![2]], vec![1, 1]).is_err());
    assert!(Matroid::partition(g(4), vec![vec![0, 1], vec![2, 3]], vec![3, 1]).is_err());
    let u = Matroid::uniform(g(4), 1).unwrap();
    assert!(u.contract(&set(4, &[0, 1])).is_err());
}

#[test]
fn axioms_hold_exhaustively() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for n in 2..=8 {
        for m in random_matroids(n, &mut rng) {
            let indep: Vec<ElementSet> = g(n).subsets().filter(|s| m.independent(s)).collect();
            assert!(m.independent(&g(n).empty_set()));
            for s in &indep {
                for e in s.iter() {
                    assert!(m.independent(&s.without(e)), "downward closure");
                }
            }
            for a in &indep {
                for b in &indep {
                    if a.len() < b.len() {
                        assert!(b.difference(a).iter().any(|e| m.independent(&a.with(e))), "exchange");
                    }
                }
            }
            let rank = indep.iter().map(|s| s.len()).max().unwrap();
            assert_eq!(m.rank(), rank);
            let basis = m.arbitrary_basis();
            assert!(m.independent(&basis));
            assert_eq!(basis.len(), rank);
        }
    }
}

#[test]
fn contraction_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for n in 3..=10 {
        for m in random_matroids(n, &mut rng) {
            let basis = m.arbitrary_basis();
            let pinned = ElementSet::from_elements(n, basis.iter().filter(|_| rng.random::<bool>())).unwrap();
            let c = m.contract(&pinned).unwrap();
            assert_eq!(c.rank(), m.rank() - pinned.len());
            for s in g(n).subsets() {
                let expect = s.is_disjoint(&pinned) && m.independent(&s.union(&pinned));
                assert_eq!(c.independent(&s), expect);
            }
        }
    }
}

#[test]
fn greedy_weight_matches_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for n in 4..=12 {
        for m in random_matroids(n, &mut rng) {
            let w: Vec<f64> = (0..n).map(|_| rng.random_range(-5.0..10.0)).collect();
            let chosen = m.max_weight_independent_set(&w).unwrap();
            assert!(m.independent(&chosen));
            let total: f64 = chosen.iter().map(|i| w[i]).sum();
            let f = SetFunctionSpec::modular(w).unwrap();
            let (_, best) = brute_force_opt(&f, Some(&m)).unwrap();
            assert!((total - best).abs() < 1e-9, "{total} vs {best}");
        }
    }
}

#[test]
fn polytope_membership() {
    let p = Matroid::partition(g(4), vec![vec![0, 1], vec![2, 3]], vec![1, 1]).unwrap();
    assert!(p.check_polytope(&[0.5, 0.5, 1.0, 0.0], 1e-9).is_ok());
    assert!(p.check_polytope(&[0.6, 0.5, 0.0, 0.0], 1e-9).is_err());
    let c = p.contract(&set(4, &[0])).unwrap();
    assert!(c.check_polytope(&[0.1, 0.0, 0.0, 0.0], 1e-9).is_err());
    assert!(c.check_polytope(&[0.0, 0.0, 0.3, 0.7], 1e-9).is_ok());
}
