use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{is_d_filtered, Bounds, DoctrineError, SearchConfig, ShapeClass, Verdict, Witness};
use crate::fincat::{families, find_isomorphism, FinCategory, MorId, ObjId};
use crate::par;

/// Bumped whenever the corpus recipe changes.
pub const CORPUS_VERSION: u32 = 1;

/// Finite categories with at most `max_objects` objects: the curated
/// families, all preorders, small monoids and their coproducts with a
/// point, and `cfg.corpus_random` seeded random subcategories of finite
/// sets. One per isomorphism class, in generation order.
pub fn category_corpus(max_objects: usize, cfg: &SearchConfig) -> Vec<(String, Arc<FinCategory>)> {
    let mut raw: Vec<(String, FinCategory)> = families::curated();
    for n in 0..=max_objects.min(4) {
        for (i, p) in families::preorders_up_to_iso(n).into_iter().enumerate() {
            raw.push((format!("preorder{n}.{i}"), p));
        }
    }
    let monoids = [
        ("z3", families::cyclic_group(3)),
        ("idempotent", families::idempotent_monoid()),
        ("left-zero", families::left_zero_monoid()),
        ("z2", families::cyclic_group(2)),
    ];
    for (name, m) in monoids {
        raw.push((format!("{name}+1"), m.coproduct(&families::terminal())));
        raw.push((name.to_string(), m));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.corpus_seed);
    let mut drawn = 0;
    let mut attempts = 0;
    while drawn < cfg.corpus_random && attempts < cfg.corpus_random * 20 {
        attempts += 1;
        let n = rng.gen_range(1..=max_objects.clamp(1, 3));
        let sizes: Vec<usize> = (0..n).map(|_| rng.gen_range(1..=3)).collect();
        let gens: Vec<(ObjId, ObjId, Vec<usize>)> = (0..rng.gen_range(1..=3))
            .map(|_| {
                let (s, t) = (rng.gen_range(0..n), rng.gen_range(0..n));
                let table = (0..sizes[s]).map(|_| rng.gen_range(0..sizes[t])).collect();
                (s, t, table)
            })
            .collect();
        if let Some(c) = families::concrete(&sizes, &gens, 12) {
            raw.push((format!("random{drawn}"), c));
            drawn += 1;
        }
    }
    let mut kept: Vec<(String, FinCategory)> = Vec::new();
    for (name, c) in raw {
        if c.num_objects() > max_objects {
            continue;
        }
        let dup = kept.iter().any(|(_, d)| {
            d.num_objects() == c.num_objects()
                && d.num_morphisms() == c.num_morphisms()
                && find_isomorphism(d, &c).is_some()
        });
        if !dup {
            kept.push((name, c));
        }
    }
    kept.into_iter().map(|(n, c)| (n, Arc::new(c))).collect()
}

/// Calls `visit` on every functor `shape → c` as (object map, morphism
/// map). Stops when `visit` returns false.
pub fn for_each_diagram(
    shape: &FinCategory,
    c: &FinCategory,
    visit: &mut dyn FnMut(&[ObjId], &[MorId]) -> bool,
) -> bool {
    let ns = shape.num_objects();
    let mut obj = vec![0; ns];
    let mut mor = vec![usize::MAX; shape.num_morphisms()];
    let nonid: Vec<MorId> = shape.non_identities().collect();
    fn objects(
        shape: &FinCategory,
        c: &FinCategory,
        i: usize,
        obj: &mut Vec<ObjId>,
        mor: &mut Vec<MorId>,
        nonid: &[MorId],
        visit: &mut dyn FnMut(&[ObjId], &[MorId]) -> bool,
    ) -> bool {
        if i == shape.num_objects() {
            for s in 0..shape.num_objects() {
                mor[shape.identity(s)] = c.identity(obj[s]);
            }
            return morphisms(shape, c, 0, obj, mor, nonid, visit);
        }
        for x in 0..c.num_objects() {
            obj[i] = x;
            if !objects(shape, c, i + 1, obj, mor, nonid, visit) {
                return false;
            }
        }
        true
    }
    fn morphisms(
        shape: &FinCategory,
        c: &FinCategory,
        k: usize,
        obj: &[ObjId],
        mor: &mut Vec<MorId>,
        nonid: &[MorId],
        visit: &mut dyn FnMut(&[ObjId], &[MorId]) -> bool,
    ) -> bool {
        if k == nonid.len() {
            return visit(obj, mor);
        }
        let m = nonid[k];
        let cands: Vec<MorId> = c.hom(obj[shape.src(m)], obj[shape.tgt(m)]).to_vec();
        for f in cands {
            mor[m] = f;
            let set = |x: MorId| mor[x] != usize::MAX;
            let ok = (0..shape.num_morphisms()).all(|a| {
                if !set(a) {
                    return true;
                }
                shape.out_of(shape.tgt(a)).all(|b| {
                    let h = shape.comp(b, a);
                    !(set(b) && set(h)) || c.comp(mor[b], mor[a]) == mor[h]
                })
            });
            if ok && !morphisms(shape, c, k + 1, obj, mor, nonid, visit) {
                mor[m] = usize::MAX;
                return false;
            }
        }
        mor[m] = usize::MAX;
        true
    }
    objects(shape, c, 0, &mut obj, &mut mor, &nonid, visit)
}

/// Whether the diagram has a colimit in `c`.
pub fn has_colimit(shape: &FinCategory, c: &FinCategory, obj: &[ObjId], mor: &[MorId]) -> bool {
    let ns = shape.num_objects();
    // all cocones, per apex
    let mut cocones: Vec<(ObjId, Vec<MorId>)> = Vec::new();
    for x in 0..c.num_objects() {
        let mut legs = vec![0; ns];
        fn go(
            shape: &FinCategory,
            c: &FinCategory,
            obj: &[ObjId],
            mor: &[MorId],
            x: ObjId,
            s: usize,
            legs: &mut Vec<MorId>,
            out: &mut Vec<(ObjId, Vec<MorId>)>,
        ) {
            if s == shape.num_objects() {
                out.push((x, legs.clone()));
                return;
            }
            for &f in c.hom(obj[s], x) {
                legs[s] = f;
                let ok = shape.non_identities().all(|m| {
                    let (a, b) = (shape.src(m), shape.tgt(m));
                    a.max(b) != s || c.comp(legs[b], mor[m]) == legs[a]
                });
                if ok {
                    go(shape, c, obj, mor, x, s + 1, legs, out);
                }
            }
        }
        go(shape, c, obj, mor, x, 0, &mut legs, &mut cocones);
    }
    cocones.iter().any(|(x, phi)| {
        cocones.iter().all(|(y, psi)| {
            c.hom(*x, *y)
                .iter()
                .filter(|&&u| (0..ns).all(|s| c.comp(u, phi[s]) == psi[s]))
                .count()
                == 1
        })
    })
}

/// The first shape of `D` with a diagram in `c` lacking a colimit.
pub fn cocompleteness_failure(c: &FinCategory, d: &ShapeClass) -> Option<String> {
    for (name, shape) in d.shapes() {
        let mut ok = true;
        for_each_diagram(&shape, c, &mut |obj, mor| {
            ok = has_colimit(&shape, c, obj, mor);
            ok
        });
        if !ok {
            return Some(name);
        }
    }
    None
}

/// Searches the corpus for a category admitting all `D`-shaped colimits
/// that is not `D`-filtered.
pub fn weak_soundness_search(d: &ShapeClass, cfg: &SearchConfig) -> Result<Verdict, DoctrineError> {
    let corpus = category_corpus(cfg.category_bound, cfg);
    let inner = SearchConfig {
        parallelism: crate::par::Parallelism::Sequential,
        ..cfg.clone()
    };
    let results = par::map(cfg.parallelism, &corpus, |(name, c)| -> Result<_, DoctrineError> {
        if cocompleteness_failure(c, d).is_some() {
            return Ok(None);
        }
        let v = is_d_filtered(c, d, &inner)?;
        Ok(Some((name.clone(), c.clone(), v)))
    });
    let mut tested = 0;
    for r in results {
        let Some((name, c, v)) = r? else { continue };
        tested += 1;
        if !v.leaning() {
            let reason = match &v {
                Verdict::Decided { certificate, .. } => certificate.detail.clone(),
                other => other.label().to_string(),
            };
            return Ok(Verdict::Refuted {
                witness: Box::new(Witness::Category {
                    name,
                    category: c.to_raw(),
                    reason,
                }),
            });
        }
    }
    Ok(Verdict::ConsistentUpTo {
        bounds: Bounds {
            value_bound: cfg.value_bound,
            shape_bound: Some(d.bound()),
            category_bound: Some(cfg.category_bound),
            shapes_tested: d.shapes().len(),
            diagrams_tested: 0,
            categories_tested: Some(tested),
        },
    })
}
