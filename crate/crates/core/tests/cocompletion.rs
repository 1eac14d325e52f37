use std::sync::Arc;

use flatlab_core::cocompletion::*;
use flatlab_core::doctrine::{SearchConfig, ShapeClass};
use flatlab_core::fincat::{families, FinCategory};
use flatlab_core::presheaf::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn small_categories() -> Vec<Arc<FinCategory>> {
    families::curated()
        .into_iter()
        .filter(|(_, c)| c.num_objects() <= 3)
        .map(|(_, c)| Arc::new(c))
        .collect()
}

fn disconnected_shapes() -> Vec<Arc<FinCategory>> {
    let point = families::terminal();
    vec![
        Arc::new(families::discrete(2)),
        Arc::new(families::discrete(3)),
        Arc::new(families::walking_arrow().coproduct(&point)),
        Arc::new(families::span().coproduct(&point)),
        Arc::new(families::walking_arrow().coproduct(&families::walking_arrow())),
        Arc::new(families::idempotent_monoid().coproduct(&point)),
    ]
}

fn sample(cats: &[Arc<FinCategory>], seed: u64, variance: Variance, max_total: usize) -> Option<SetFunctor> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let c = &cats[rng.gen_range(0..cats.len())];
    random_functor(c, variance, max_total, &mut rng, 200)
}

fn is_iso_to(p: &SetFunctor, q: &SetFunctor, alpha: &[Vec<usize>]) -> bool {
    is_natural(p, q, alpha)
        && alpha.iter().enumerate().all(|(c, a)| {
            let mut img = a.clone();
            img.sort();
            img.dedup();
            img.len() == a.len() && a.len() == q.carrier(c)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn reflexive_presentations_hold(seed in any::<u64>()) {
        if let Some(p) = sample(&small_categories(), seed, Variance::Contravariant, 6) {
            let r = reflexive_presentation(&p).unwrap();
            prop_assert!(r.laws_hold());
            prop_assert!(is_iso_to(&r.presented, &p, &r.iso));
            // both stages are coproducts of representables
            let base = p.base();
            let r0: Vec<usize> = r.r0_summands.iter().map(|&(c, _)| c).collect();
            let r1: Vec<usize> = r.r1_summands.iter().map(|&(f, _)| base.src(f)).collect();
            prop_assert!(presheaf_iso(&r.r0, &coproduct_of_representables(base, &r0)).unwrap().is_some());
            prop_assert!(presheaf_iso(&r.r1, &coproduct_of_representables(base, &r1)).unwrap().is_some());
        }
    }

    #[test]
    fn colimits_split_along_components(seed in any::<u64>()) {
        if let Some(f) = sample(&disconnected_shapes(), seed, Variance::Covariant, 8) {
            let d = coproduct_decomposition(&f).unwrap();
            prop_assert!(d.verified);
            prop_assert_eq!(d.total, colimit(&f).size());
            prop_assert_eq!(d.component_sizes.iter().sum::<usize>(), d.total);
        }
    }
}

#[test]
fn closure_stages_grow() {
    for c in [families::walking_arrow(), families::discrete(2), families::cyclic_group(2)] {
        let c = Arc::new(c);
        let cl = bounded_closure(&c, &ShapeClass::AllFinite(2), &ClosureConfig::new(2, 3)).unwrap();
        assert!(cl.stage_sizes.windows(2).all(|w| w[0] <= w[1]), "{:?}", cl.stage_sizes);
        for m in &cl.members {
            assert!(presheaf_iso(&m.expression.evaluate(&c), &m.presheaf).unwrap().is_some());
        }
    }
}

#[test]
fn discrete_closure_counts_homs_like_coproducts() {
    // Nat(y(a) + y(b), P) = P(a) × P(b)
    let c = Arc::new(families::walking_arrow());
    let cl = bounded_closure(&c, &ShapeClass::FiniteDiscrete(2), &ClosureConfig::new(1, 4)).unwrap();
    let probes = functors_up_to_iso(&c, Variance::Contravariant, 2);
    let sums: Vec<Vec<usize>> = vec![vec![], vec![0], vec![1], vec![0, 0], vec![0, 1], vec![1, 1]];
    for s in &sums {
        let q = coproduct_of_representables(&c, s);
        assert!(closure_contains(&cl, &q), "{s:?}");
        for p in &probes {
            let want: usize = s.iter().map(|&o| p.carrier(o)).product();
            assert_eq!(count_natural_transformations(&q, p).unwrap(), want);
        }
    }
    // and nothing else
    for m in &cl.members {
        let found = sums
            .iter()
            .any(|s| presheaf_iso(&coproduct_of_representables(&c, s), &m.presheaf).unwrap().is_some());
        assert!(found, "{:?}", m.presheaf.carriers());
    }
}

#[test]
fn finite_colimits_present_reflexively_through_coproducts() {
    for c in [families::walking_arrow(), families::cyclic_group(2), families::idempotent_monoid()] {
        let c = Arc::new(c);
        let cl = bounded_closure(&c, &ShapeClass::AllFinite(2), &ClosureConfig::new(1, 3)).unwrap();
        for m in &cl.members {
            let r = reflexive_presentation(&m.presheaf).unwrap();
            assert!(r.laws_hold());
            assert!(is_iso_to(&r.presented, &m.presheaf, &r.iso));
        }
    }
}

#[test]
fn cauchy_weights() {
    let cfg = SearchConfig::default();
    // the point splits the idempotent of {1, e} but is not representable
    let m = Arc::new(families::idempotent_monoid());
    let point = SetFunctor::terminal(m.clone(), Variance::Contravariant);
    assert!(retract_of_representable(&point).unwrap().is_some());
    assert!(is_cauchy_weight(&point, &cfg).unwrap().leaning());
    // two points over the discrete category are not a retract of anything
    let d2 = Arc::new(families::discrete(2));
    let delta = SetFunctor::terminal(d2, Variance::Contravariant);
    assert!(retract_of_representable(&delta).unwrap().is_none());
    assert!(!is_cauchy_weight(&delta, &cfg).unwrap().leaning());
}
