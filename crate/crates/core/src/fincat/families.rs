//! Curated finite categories and generic constructors.

use std::collections::HashMap;

use super::{FinCategory, MorId, Morphism, ObjId};

fn identity_names(objects: &[String]) -> Vec<Morphism> {
    objects
        .iter()
        .enumerate()
        .map(|(i, o)| Morphism {
            name: format!("1_{o}"),
            src: i,
            tgt: i,
        })
        .collect()
}

fn letters(n: usize) -> Vec<String> {
    (0..n)
        .map(|i| {
            if i < 26 {
                ((b'a' + i as u8) as char).to_string()
            } else {
                format!("o{i}")
            }
        })
        .collect()
}

pub fn empty() -> FinCategory {
    FinCategory::from_composition(vec![], vec![], vec![], |_, _| unreachable!()).unwrap()
}

pub fn terminal() -> FinCategory {
    discrete_named(vec!["*".to_string()])
}

pub fn discrete(n: usize) -> FinCategory {
    discrete_named(letters(n))
}

fn discrete_named(objects: Vec<String>) -> FinCategory {
    let morphisms = identity_names(&objects);
    let identity = (0..objects.len()).collect();
    FinCategory::from_composition(objects, morphisms, identity, |g, f| {
        debug_assert_eq!(g, f);
        f
    })
    .unwrap()
}

/// Thin category on `n` objects generated by the relation `pairs`
/// (reflexive-transitive closure). Non-identity morphisms are named `x->y`.
pub fn preorder(names: Vec<String>, pairs: &[(ObjId, ObjId)]) -> FinCategory {
    let n = names.len();
    let mut le = vec![vec![false; n]; n];
    for (i, row) in le.iter_mut().enumerate() {
        row[i] = true;
    }
    for &(a, b) in pairs {
        le[a][b] = true;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if le[i][k] && le[k][j] {
                    le[i][j] = true;
                }
            }
        }
    }
    let mut morphisms = identity_names(&names);
    let mut index = HashMap::new();
    for i in 0..n {
        index.insert((i, i), i);
    }
    for i in 0..n {
        for j in 0..n {
            if i != j && le[i][j] {
                index.insert((i, j), morphisms.len());
                morphisms.push(Morphism {
                    name: format!("{}->{}", names[i], names[j]),
                    src: i,
                    tgt: j,
                });
            }
        }
    }
    let ends: Vec<(ObjId, ObjId)> = morphisms.iter().map(|m| (m.src, m.tgt)).collect();
    FinCategory::from_composition(names, morphisms, (0..n).collect(), |g, f| {
        index[&(ends[f].0, ends[g].1)]
    })
    .unwrap()
}

pub fn chain(n: usize) -> FinCategory {
    let pairs: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    preorder((0..n).map(|i| i.to_string()).collect(), &pairs)
}

pub fn walking_arrow() -> FinCategory {
    let objects = vec!["a".to_string(), "b".to_string()];
    let mut morphisms = identity_names(&objects);
    morphisms.push(Morphism {
        name: "u".into(),
        src: 0,
        tgt: 1,
    });
    FinCategory::from_composition(objects, morphisms, vec![0, 1], |g, f| {
        if g < 2 {
            f
        } else {
            g
        }
    })
    .unwrap()
}

/// `b <- a -> c`.
pub fn span() -> FinCategory {
    preorder(letters(3), &[(0, 1), (0, 2)])
}

/// `a -> c <- b`.
pub fn cospan() -> FinCategory {
    preorder(letters(3), &[(0, 2), (1, 2)])
}

/// `a -> b, a -> c, b -> d, c -> d`.
pub fn diamond() -> FinCategory {
    preorder(letters(4), &[(0, 1), (0, 2), (1, 3), (2, 3)])
}

/// Free category on `k` parallel arrows `a -> b`.
pub fn parallel_arrows(k: usize) -> FinCategory {
    let objects = vec!["a".to_string(), "b".to_string()];
    let mut morphisms = identity_names(&objects);
    for i in 0..k {
        morphisms.push(Morphism {
            name: if k == 2 { ["f", "g"][i].to_string() } else { format!("f{i}") },
            src: 0,
            tgt: 1,
        });
    }
    FinCategory::from_composition(objects, morphisms, vec![0, 1], |g, f| {
        if g < 2 {
            f
        } else {
            g
        }
    })
    .unwrap()
}

/// `f, g: a -> b` with no further relations.
pub fn parallel_pair() -> FinCategory {
    parallel_arrows(2)
}

/// `d0, d1: a -> b` with a common section `s: b -> a`.
pub fn reflexive_pair() -> FinCategory {
    let objects = vec!["a".to_string(), "b".to_string()];
    let mut morphisms = identity_names(&objects);
    let named = [("d0", 0, 1), ("d1", 0, 1), ("s", 1, 0), ("s.d0", 0, 0), ("s.d1", 0, 0)];
    for (name, src, tgt) in named {
        morphisms.push(Morphism {
            name: name.into(),
            src,
            tgt,
        });
    }
    // 0: 1_a, 1: 1_b, 2: d0, 3: d1, 4: s, 5: s∘d0, 6: s∘d1
    FinCategory::from_composition(objects, morphisms, vec![0, 1], |g, f| match (g, f) {
        (0 | 1, f) => f,
        (g, 0 | 1) => g,
        (2 | 3, 4) => 1,
        (4, 2) => 5,
        (4, 3) => 6,
        (2 | 3, 5) => 2,
        (2 | 3, 6) => 3,
        (5 | 6, 4) => 4,
        (5 | 6, e) => e,
        _ => unreachable!("({g}, {f})"),
    })
    .unwrap()
}

/// `f, g: a -> b` followed by `h: b -> c` with `h∘f = h∘g`.
pub fn coequalized_pair() -> FinCategory {
    let objects = letters(3);
    let mut morphisms = identity_names(&objects);
    for (name, src, tgt) in [("f", 0, 1), ("g", 0, 1), ("h", 1, 2), ("hf", 0, 2)] {
        morphisms.push(Morphism {
            name: name.into(),
            src,
            tgt,
        });
    }
    FinCategory::from_composition(objects, morphisms, vec![0, 1, 2], |g, f| match (g, f) {
        (0..=2, f) => f,
        (g, 0..=2) => g,
        (5, 3 | 4) => 6,
        _ => unreachable!(),
    })
    .unwrap()
}

/// One-object category of a finite monoid; element 0 must be the unit and
/// `mult[g][f]` is the composite `g ∘ f`. Returns `None` if the table is not
/// a monoid.
pub fn monoid(names: &[&str], mult: &[Vec<usize>]) -> Option<FinCategory> {
    let objects = vec!["*".to_string()];
    let morphisms = names
        .iter()
        .map(|n| Morphism {
            name: n.to_string(),
            src: 0,
            tgt: 0,
        })
        .collect();
    FinCategory::from_composition(objects, morphisms, vec![0], |g, f| mult[g][f]).ok()
}

/// `{1, e}` with `e ∘ e = e`.
pub fn idempotent_monoid() -> FinCategory {
    monoid(&["1", "e"], &[vec![0, 1], vec![1, 1]]).unwrap()
}

pub fn cyclic_group(n: usize) -> FinCategory {
    let names: Vec<String> = (0..n).map(|i| if i == 0 { "1".into() } else { format!("t{i}") }).collect();
    let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let mult: Vec<Vec<usize>> = (0..n).map(|g| (0..n).map(|f| (g + f) % n).collect()).collect();
    monoid(&refs, &mult).unwrap()
}

/// `{1, x, y}` with `p ∘ q = p` for `p, q ∈ {x, y}`.
pub fn left_zero_monoid() -> FinCategory {
    monoid(
        &["1", "x", "y"],
        &[vec![0, 1, 2], vec![1, 1, 1], vec![2, 2, 2]],
    )
    .unwrap()
}

/// The subcategory of finite sets generated by `generators`
/// `(src, tgt, table)` over objects of the given sizes; `None` if the closure
/// exceeds `max_morphisms`.
pub fn concrete(
    sizes: &[usize],
    generators: &[(ObjId, ObjId, Vec<usize>)],
    max_morphisms: usize,
) -> Option<FinCategory> {
    let objects = letters(sizes.len());
    type Key = (ObjId, ObjId, Vec<usize>);
    let mut keys: Vec<Key> = (0..sizes.len()).map(|o| (o, o, (0..sizes[o]).collect())).collect();
    let mut index: HashMap<Key, MorId> = keys.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();
    let mut names: Vec<String> = objects.iter().map(|o| format!("1_{o}")).collect();
    for (i, g) in generators.iter().enumerate() {
        if !index.contains_key(g) {
            index.insert(g.clone(), keys.len());
            keys.push(g.clone());
            names.push(format!("g{i}"));
        }
    }
    let mut frontier = 0;
    while frontier < keys.len() {
        let cur = frontier;
        frontier += 1;
        for other in 0..keys.len() {
            for (f, g) in [(cur, other), (other, cur)] {
                if keys[f].1 != keys[g].0 {
                    continue;
                }
                let table: Vec<usize> = keys[f].2.iter().map(|&x| keys[g].2[x]).collect();
                let key = (keys[f].0, keys[g].1, table);
                if !index.contains_key(&key) {
                    if keys.len() >= max_morphisms {
                        return None;
                    }
                    index.insert(key.clone(), keys.len());
                    names.push(format!("m{}", keys.len()));
                    keys.push(key);
                }
            }
        }
    }
    let morphisms = keys
        .iter()
        .zip(&names)
        .map(|((s, t, _), name)| Morphism {
            name: name.clone(),
            src: *s,
            tgt: *t,
        })
        .collect();
    FinCategory::from_composition(objects, morphisms, (0..sizes.len()).collect(), |g, f| {
        let table: Vec<usize> = keys[f].2.iter().map(|&x| keys[g].2[x]).collect();
        index[&(keys[f].0, keys[g].1, table)]
    })
    .ok()
}

/// Every preorder on `n` objects, one per isomorphism class, in order of
/// the bitmask of the relation.
pub fn preorders_up_to_iso(n: usize) -> Vec<FinCategory> {
    let pairs: Vec<(ObjId, ObjId)> = (0..n)
        .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
        .collect();
    let mut out: Vec<FinCategory> = Vec::new();
    for mask in 0u64..(1u64 << pairs.len()) {
        let rel: Vec<(ObjId, ObjId)> = pairs
            .iter()
            .enumerate()
            .filter(|(b, _)| mask >> b & 1 == 1)
            .map(|(_, &p)| p)
            .collect();
        let transitive = rel.iter().all(|&(a, b)| {
            rel.iter()
                .filter(|&&(c, _)| c == b)
                .all(|&(_, d)| d == a || rel.contains(&(a, d)))
        });
        if !transitive {
            continue;
        }
        let c = preorder(letters(n), &rel);
        if !out.iter().any(|d| super::find_isomorphism(d, &c).is_some()) {
            out.push(c);
        }
    }
    out
}

/// The named categories used throughout tests and the bundled corpus.
/// All have at most four objects.
pub fn curated() -> Vec<(String, FinCategory)> {
    let arrow = walking_arrow();
    vec![
        ("empty".into(), empty()),
        ("terminal".into(), terminal()),
        ("discrete2".into(), discrete(2)),
        ("discrete3".into(), discrete(3)),
        ("arrow".into(), arrow.clone()),
        ("chain3".into(), chain(3)),
        ("chain4".into(), chain(4)),
        ("span".into(), span()),
        ("cospan".into(), cospan()),
        ("diamond".into(), diamond()),
        ("parallel-pair".into(), parallel_pair()),
        ("reflexive-pair".into(), reflexive_pair()),
        ("coequalized-pair".into(), coequalized_pair()),
        ("idempotent".into(), idempotent_monoid()),
        ("z2".into(), cyclic_group(2)),
        ("left-zero".into(), left_zero_monoid()),
        ("arrow+point".into(), arrow.coproduct(&terminal())),
        ("arrow+arrow".into(), arrow.coproduct(&arrow)),
        ("cospan+point".into(), cospan().coproduct(&terminal())),
        ("arrow*arrow".into(), arrow.product(&arrow)),
        ("z2*arrow".into(), cyclic_group(2).product(&arrow)),
        ("idempotent+terminal".into(), idempotent_monoid().coproduct(&terminal())),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn curated_sizes() {
        for (name, c) in curated() {
            assert!(c.num_objects() <= 4, "{name}");
        }
        assert_eq!(reflexive_pair().num_morphisms(), 7);
        assert_eq!(coequalized_pair().num_morphisms(), 7);
        assert_eq!(diamond().num_morphisms(), 9);
    }

    #[test]
    fn preorder_counts() {
        let counts: Vec<usize> = (0..=4).map(|n| preorders_up_to_iso(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 3, 9, 33]);
    }

    #[test]
    fn concrete_closure() {
        // A single idempotent map on a 2-element set.
        let c = concrete(&[2], &[(0, 0, vec![0, 0])], 10).unwrap();
        assert_eq!(c.num_morphisms(), 2);
        // Swap generates Z/2.
        let c = concrete(&[2], &[(0, 0, vec![1, 0])], 10).unwrap();
        assert_eq!(c.num_morphisms(), 2);
        // All of End({0,1,2}) is too big for the cap.
        assert!(concrete(&[3], &[(0, 0, vec![1, 2, 0]), (0, 0, vec![1, 0, 2]), (0, 0, vec![0, 0, 2])], 10).is_none());
    }
}
