use std::sync::Arc;

use flatlab_core::fincat::*;
use proptest::prelude::*;

/// Subcategories of finite sets generated by one to three random maps.
fn concrete_category() -> impl Strategy<Value = FinCategory> {
    (1usize..=3)
        .prop_flat_map(|n| (prop::collection::vec(1usize..=3, n), Just(n)))
        .prop_flat_map(|(sizes, n)| {
            let gen = (0..n, 0..n).prop_flat_map({
                let sizes = sizes.clone();
                move |(s, t)| (Just(s), Just(t), prop::collection::vec(0..sizes[t], sizes[s]))
            });
            (Just(sizes), prop::collection::vec(gen, 1..=3))
        })
        .prop_filter_map("closure too large", |(sizes, gens)| families::concrete(&sizes, &gens, 16))
}

fn is_category(c: &FinCategory) -> bool {
    let n = c.num_morphisms();
    (0..n).all(|f| c.comp(c.identity(c.tgt(f)), f) == f && c.comp(f, c.identity(c.src(f))) == f)
        && (0..n).all(|f| {
            c.out_of(c.tgt(f)).all(|g| {
                c.out_of(c.tgt(g))
                    .all(|h| c.comp(h, c.comp(g, f)) == c.comp(c.comp(h, g), f))
            })
        })
}

fn sorted_components(c: &FinCategory) -> Vec<Vec<ObjId>> {
    let mut comps: Vec<Vec<ObjId>> = c
        .connected_components()
        .into_iter()
        .map(|mut v| {
            v.sort();
            v
        })
        .collect();
    comps.sort();
    comps
}

proptest! {
    #[test]
    fn generated_tables_are_categories(c in concrete_category()) {
        prop_assert!(is_category(&c));
        prop_assert_eq!(c.to_raw().validate().unwrap(), c);
    }

    #[test]
    fn opposite_is_an_involution(c in concrete_category()) {
        let op = c.opposite();
        prop_assert!(is_category(&op));
        prop_assert_eq!(op.opposite(), c);
    }

    #[test]
    fn components_ignore_direction(c in concrete_category()) {
        prop_assert_eq!(sorted_components(&c), sorted_components(&c.opposite()));
    }

    #[test]
    fn karoubi_embedding_is_fully_faithful(c in concrete_category()) {
        let c = Arc::new(c);
        let (q, embedding) = karoubi_envelope(&c);
        prop_assert!(embedding.is_fully_faithful());
        prop_assert!(idempotents_split(&q));
    }
}

#[test]
fn curated_families_validate() {
    for (name, c) in families::curated() {
        assert!(is_category(&c), "{name}");
        assert_eq!(c.to_raw().validate().as_ref(), Ok(&c), "{name}");
    }
}

#[test]
fn idempotent_splits_only_after_completion() {
    let c = Arc::new(families::idempotent_monoid());
    assert!(!idempotents_split(&c));
    let (q, _) = karoubi_envelope(&c);
    // homs 1→1: {1, e}; 1→e, e→1, e→e: {e}
    assert_eq!((q.num_objects(), q.num_morphisms()), (2, 5));
    assert!(idempotents_split(&q));
    // a category whose idempotents split is its own completion
    let chain = Arc::new(families::chain(3));
    let (q, embedding) = karoubi_envelope(&chain);
    assert!(embedding.is_essentially_surjective());
    assert!(are_equivalent(&q, &chain));
}

#[test]
fn composition_errors_name_the_entry() {
    let mut raw = families::idempotent_monoid().to_raw();
    raw.compose.clear();
    let err = raw.validate().unwrap_err();
    assert!(matches!(err, CategoryError::MissingComposite { .. }), "{err}");
}
