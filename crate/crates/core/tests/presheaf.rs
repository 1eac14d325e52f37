use std::sync::Arc;

use flatlab_core::fincat::{families, FinCategory};
use flatlab_core::presheaf::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn shapes() -> Vec<Arc<FinCategory>> {
    families::curated()
        .into_iter()
        .filter(|(_, c)| c.num_objects() <= 4)
        .map(|(_, c)| Arc::new(c))
        .collect()
}

/// A random functor on a random curated category, from a seed.
fn sample(seed: u64, variance: Variance, max_total: usize) -> Option<SetFunctor> {
    let all = shapes();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let c = &all[rng.gen_range(0..all.len())];
    random_functor(c, variance, max_total, &mut rng, 200)
}

fn random_perm(f: &SetFunctor, seed: u64) -> Vec<Vec<usize>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..f.base().num_objects())
        .map(|o| {
            let mut p: Vec<usize> = (0..f.carrier(o)).collect();
            for i in (1..p.len()).rev() {
                p.swap(i, rng.gen_range(0..=i));
            }
            p
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn limits_and_colimits_are_universal(seed in any::<u64>()) {
        if let Some(f) = sample(seed, Variance::Covariant, 8) {
            let lim = limit(&f);
            prop_assert!(cone_is_natural(&f, &lim.cone));
            prop_assert!(verify_limit(&f, &lim, 12).is_verified());
            let colim = colimit(&f);
            prop_assert!(cocone_is_natural(&f, &colim.cocone));
            prop_assert!(verify_colimit(&f, &colim, 12).is_verified());
        }
    }

    #[test]
    fn terminal_weight_gives_the_colimit(seed in any::<u64>()) {
        if let Some(h) = sample(seed, Variance::Covariant, 8) {
            let delta = SetFunctor::terminal(h.base().clone(), Variance::Contravariant);
            prop_assert_eq!(weighted_colimit(&delta, &h).unwrap().size(), colimit(&h).size());
        }
    }

    #[test]
    fn representable_weight_evaluates(seed in any::<u64>()) {
        if let Some(h) = sample(seed, Variance::Covariant, 8) {
            for c in 0..h.base().num_objects() {
                let y = SetFunctor::representable(h.base().clone(), c);
                prop_assert_eq!(weighted_colimit(&y, &h).unwrap().size(), h.carrier(c));
            }
        }
    }

    #[test]
    fn relabeling_transports_limits(seed in any::<u64>(), perm_seed in any::<u64>()) {
        if let Some(f) = sample(seed, Variance::Covariant, 8) {
            let perm = random_perm(&f, perm_seed);
            let g = f.relabel(&perm);
            prop_assert!(presheaf_iso(&f, &g).unwrap().is_some());
            let (lf, lg) = (limit(&f), limit(&g));
            let mut moved: Vec<Vec<usize>> = lf
                .families
                .iter()
                .map(|fam| fam.iter().enumerate().map(|(o, &x)| perm[o][x]).collect())
                .collect();
            moved.sort();
            prop_assert_eq!(moved, lg.families);
            prop_assert_eq!(colimit(&f).size(), colimit(&g).size());
        }
    }

    #[test]
    fn density_presentations_re_evaluate(seed in any::<u64>()) {
        if let Some(p) = sample(seed, Variance::Contravariant, 6) {
            let expr = density_presentation(&p).unwrap();
            let q = expr.evaluate(p.base());
            prop_assert!(presheaf_iso(&p, &q).unwrap().is_some());
        }
    }
}

#[test]
fn elements_of_a_representable_have_an_initial_object() {
    for c in shapes() {
        for o in 0..c.num_objects() {
            let y = SetFunctor::representable(c.clone(), o);
            let el = category_of_elements(&y).unwrap();
            assert!(!el.total.initial_objects().is_empty());
        }
    }
}

#[test]
fn empty_product_is_a_point() {
    let f = SetFunctor::terminal(Arc::new(families::empty()), Variance::Covariant);
    assert_eq!(limit(&f).size(), 1);
    assert_eq!(colimit(&f).size(), 0);
}

#[test]
fn functor_counts_on_the_arrow() {
    // maps 2 → 2: four of them
    let c = Arc::new(families::walking_arrow());
    assert_eq!(functors_with_carriers(&c, Variance::Covariant, &[2, 2]).len(), 4);
    // up to iso with carriers ≤ 2: 0→0, 0→1, 0→2, 1→1, 1→2, 2→1, and two
    // maps 2→2 (a bijection, a constant)
    assert_eq!(functors_up_to_iso(&c, Variance::Covariant, 2).len(), 8);
}
