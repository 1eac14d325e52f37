use std::collections::HashMap;
use std::sync::Arc;

use super::{FinCategory, FinFunctor, MorId, Morphism};

/// Idempotent-splitting completion `Q(C)` with its embedding `C → Q(C)`.
///
/// Objects of `Q(C)` are the idempotents of `C` (named like the idempotent);
/// a morphism `e → e'` is an `f` with `f = e' ∘ f ∘ e`, named `[e|f|e']`.
/// The identity at `e` is `e` itself.
pub fn karoubi_envelope(c: &Arc<FinCategory>) -> (FinCategory, FinFunctor) {
    let idempotents: Vec<MorId> = (0..c.num_morphisms()).filter(|&e| c.is_idempotent(e)).collect();
    let objects: Vec<String> = idempotents
        .iter()
        .map(|&e| c.morphism_name(e).to_string())
        .collect();
    let mut morphisms = Vec::new();
    let mut under: Vec<MorId> = Vec::new();
    let mut index: HashMap<(usize, MorId, usize), MorId> = HashMap::new();
    for (i, &e) in idempotents.iter().enumerate() {
        for (j, &e2) in idempotents.iter().enumerate() {
            for &f in c.hom(c.src(e), c.src(e2)) {
                if c.comp(e2, c.comp(f, e)) == f {
                    index.insert((i, f, j), morphisms.len());
                    morphisms.push(Morphism {
                        name: format!("[{}|{}|{}]", objects[i], c.morphism_name(f), objects[j]),
                        src: i,
                        tgt: j,
                    });
                    under.push(f);
                }
            }
        }
    }
    let identity: Vec<MorId> = idempotents
        .iter()
        .enumerate()
        .map(|(i, &e)| index[&(i, e, i)])
        .collect();
    let ends: Vec<(usize, usize)> = morphisms.iter().map(|m| (m.src, m.tgt)).collect();
    let q = FinCategory::from_composition(objects, morphisms, identity, |g, f| {
        index[&(ends[f].0, c.comp(under[g], under[f]), ends[g].1)]
    })
    .expect("idempotent completion of a valid category is valid");

    let obj_pos: HashMap<MorId, usize> = idempotents.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let obj_map: Vec<usize> = (0..c.num_objects()).map(|o| obj_pos[&c.identity(o)]).collect();
    let mor_map: Vec<MorId> = (0..c.num_morphisms())
        .map(|f| index[&(obj_map[c.src(f)], f, obj_map[c.tgt(f)])])
        .collect();
    let q = Arc::new(q);
    let embedding = FinFunctor::new(c.clone(), q.clone(), obj_map, mor_map)
        .expect("embedding into the idempotent completion is a functor");
    (Arc::try_unwrap(q).unwrap_or_else(|a| (*a).clone()), embedding)
}

/// Whether every idempotent `e: x → x` splits as `e = s ∘ r` with `r ∘ s = 1`.
pub fn idempotents_split(c: &FinCategory) -> bool {
    (0..c.num_morphisms()).filter(|&e| c.is_idempotent(e)).all(|e| {
        let x = c.src(e);
        (0..c.num_objects()).any(|y| {
            c.hom(x, y).iter().any(|&r| {
                c.hom(y, x)
                    .iter()
                    .any(|&s| c.comp(s, r) == e && c.comp(r, s) == c.identity(y))
            })
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{are_equivalent, families, find_isomorphism};

    /// Independent enumeration of idempotents and hom-set sizes of the
    /// completion, straight from the composition table.
    fn brute_force_counts(c: &FinCategory) -> (usize, usize) {
        let mut idem = Vec::new();
        for e in 0..c.num_morphisms() {
            if c.src(e) == c.tgt(e) && c.compose(e, e) == Some(e) {
                idem.push(e);
            }
        }
        let mut total = 0;
        for &e in &idem {
            for &e2 in &idem {
                for f in 0..c.num_morphisms() {
                    if c.src(f) == c.src(e) && c.tgt(f) == c.src(e2) {
                        let efe = c.compose(e2, c.compose(f, e).unwrap()).unwrap();
                        if efe == f {
                            total += 1;
                        }
                    }
                }
            }
        }
        (idem.len(), total)
    }

    #[test]
    fn idempotent_monoid_completion() {
        let c = Arc::new(families::idempotent_monoid());
        let (q, emb) = karoubi_envelope(&c);
        assert_eq!(brute_force_counts(&c), (2, 5));
        assert_eq!((q.num_objects(), q.num_morphisms()), (2, 5));
        assert!(emb.is_fully_faithful());
        assert!(idempotents_split(&q));
        assert!(!idempotents_split(&c));
    }

    #[test]
    fn posets_are_already_complete() {
        for c in [families::chain(3), families::diamond(), families::span()] {
            let c = Arc::new(c);
            let (q, _) = karoubi_envelope(&c);
            assert!(find_isomorphism(&q, &c).is_some());
        }
    }

    #[test]
    fn completion_is_idempotent_up_to_equivalence() {
        for (name, c) in families::curated() {
            let c = Arc::new(c);
            let (q, emb) = karoubi_envelope(&c);
            assert_eq!(
                (q.num_objects(), q.num_morphisms()),
                brute_force_counts(&c),
                "{name}"
            );
            assert!(emb.is_fully_faithful(), "{name}");
            assert!(idempotents_split(&q), "{name}");
            let q = Arc::new(q);
            let (qq, emb2) = karoubi_envelope(&q);
            assert!(emb2.is_essentially_surjective(), "{name}");
            assert!(are_equivalent(&qq, &q), "{name}");
        }
    }
}
