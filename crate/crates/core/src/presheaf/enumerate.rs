use std::collections::HashMap;
use std::sync::Arc;

use rand::Rng;

use super::{invariant_key, presheaf_iso, SetFunctor, Variance};
use crate::fincat::{FinCategory, MorId};

/// Placement plan for enumerating action tables: morphisms that are
/// composites of already-placed ones are forced, the rest are branched on.
pub(crate) struct Plan {
    pub(crate) order: Vec<MorId>,
    /// For forced morphisms, a factorization `(first, second)` in action
    /// order: `F(m) = F(second) ∘ F(first)`.
    pub(crate) forced: Vec<Option<(MorId, MorId)>>,
    /// Relations `(first, second, composite)` checked once all three are
    /// placed, bucketed by the step that places the last of them.
    pub(crate) checks: Vec<Vec<(MorId, MorId, MorId)>>,
}

pub(crate) fn plan(c: &FinCategory, variance: Variance) -> Plan {
    let nm = c.num_morphisms();
    let mut placed: Vec<Option<usize>> = vec![None; nm];
    for &i in c.identities() {
        placed[i] = Some(0);
    }
    let mut order = Vec::new();
    let mut forced = Vec::new();
    let in_action_order = |f: MorId, g: MorId| match variance {
        Variance::Covariant => (f, g),
        Variance::Contravariant => (g, f),
    };
    let mut remaining: Vec<MorId> = c.non_identities().collect();
    while !remaining.is_empty() {
        let mut pick = None;
        'outer: for (i, &m) in remaining.iter().enumerate() {
            for f in c.out_of(c.src(m)) {
                if c.is_identity(f) || placed[f].is_none() {
                    continue;
                }
                for g in c.hom(c.tgt(f), c.tgt(m)) {
                    if !c.is_identity(*g) && placed[*g].is_some() && c.comp(*g, f) == m {
                        pick = Some((i, Some(in_action_order(f, *g))));
                        break 'outer;
                    }
                }
            }
        }
        let (i, fact) = pick.unwrap_or((0, None));
        let m = remaining.remove(i);
        placed[m] = Some(order.len() + 1);
        order.push(m);
        forced.push(fact);
    }
    let mut checks = vec![Vec::new(); order.len() + 1];
    for f in c.non_identities() {
        for g in c.out_of(c.tgt(f)) {
            if c.is_identity(g) {
                continue;
            }
            let h = c.comp(g, f);
            let step = placed[f].unwrap().max(placed[g].unwrap()).max(placed[h].unwrap());
            let (first, second) = in_action_order(f, g);
            checks[step].push((first, second, h));
        }
    }
    Plan {
        order,
        forced,
        checks,
    }
}

/// Calls `visit` on every functor with the given carriers, in
/// lexicographic order of the branched action tables. Stops early when
/// `visit` returns false.
pub fn for_each_functor(
    base: &Arc<FinCategory>,
    variance: Variance,
    carriers: &[usize],
    visit: &mut dyn FnMut(SetFunctor) -> bool,
) -> bool {
    let c = &**base;
    let plan = plan(c, variance);
    let (dom, cod): (Vec<usize>, Vec<usize>) = (0..c.num_morphisms())
        .map(|m| match variance {
            Variance::Covariant => (carriers[c.src(m)], carriers[c.tgt(m)]),
            Variance::Contravariant => (carriers[c.tgt(m)], carriers[c.src(m)]),
        })
        .unzip();
    let mut action: Vec<Vec<usize>> = (0..c.num_morphisms()).map(|m| vec![0; dom[m]]).collect();
    for &i in c.identities() {
        action[i] = (0..dom[i]).collect();
    }
    let ok0 = plan.checks[0]
        .iter()
        .all(|&(a, b, h)| (0..dom[a]).all(|x| action[h][x] == action[b][action[a][x]]));
    if !ok0 {
        return true;
    }
    fn go(
        base: &Arc<FinCategory>,
        variance: Variance,
        carriers: &[usize],
        plan: &Plan,
        dom: &[usize],
        cod: &[usize],
        k: usize,
        action: &mut Vec<Vec<usize>>,
        visit: &mut dyn FnMut(SetFunctor) -> bool,
    ) -> bool {
        if k == plan.order.len() {
            return visit(SetFunctor::new_unchecked(
                base.clone(),
                variance,
                carriers.to_vec(),
                action.clone(),
            ));
        }
        let m = plan.order[k];
        let consistent = |action: &Vec<Vec<usize>>| {
            plan.checks[k + 1]
                .iter()
                .all(|&(a, b, h)| (0..dom[a]).all(|x| action[h][x] == action[b][action[a][x]]))
        };
        if let Some((a, b)) = plan.forced[k] {
            let t: Vec<usize> = (0..dom[m]).map(|x| action[b][action[a][x]]).collect();
            action[m] = t;
            if consistent(action) {
                return go(base, variance, carriers, plan, dom, cod, k + 1, action, visit);
            }
            return true;
        }
        if dom[m] > 0 && cod[m] == 0 {
            return true;
        }
        action[m] = vec![0; dom[m]];
        loop {
            if consistent(action) && !go(base, variance, carriers, plan, dom, cod, k + 1, action, visit) {
                return false;
            }
            let mut i = dom[m];
            loop {
                if i == 0 {
                    return true;
                }
                i -= 1;
                action[m][i] += 1;
                if action[m][i] < cod[m] {
                    break;
                }
                action[m][i] = 0;
            }
        }
    }
    go(base, variance, carriers, &plan, &dom, &cod, 0, &mut action, visit)
}

pub fn functors_with_carriers(base: &Arc<FinCategory>, variance: Variance, carriers: &[usize]) -> Vec<SetFunctor> {
    let mut out = Vec::new();
    for_each_functor(base, variance, carriers, &mut |f| {
        out.push(f);
        true
    });
    out
}

/// All carrier vectors in `{0..=bound}^n`, lexicographically.
pub fn carrier_vectors(n: usize, bound: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..=bound).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

/// Deduplicates up to natural isomorphism, keeping the first
/// representative of each class in input order.
pub fn dedup_up_to_iso(functors: Vec<SetFunctor>) -> Vec<SetFunctor> {
    let mut buckets: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
    let mut kept: Vec<SetFunctor> = Vec::new();
    for f in functors {
        let key = invariant_key(&f);
        let bucket = buckets.entry(key).or_default();
        let dup = bucket
            .iter()
            .any(|&i| matches!(presheaf_iso(&kept[i], &f), Ok(Some(_))));
        if !dup {
            bucket.push(kept.len());
            kept.push(f);
        }
    }
    kept
}

/// Every functor with all carriers at most `bound`, one per isomorphism
/// class, in canonical order.
pub fn functors_up_to_iso(base: &Arc<FinCategory>, variance: Variance, bound: usize) -> Vec<SetFunctor> {
    let mut all = Vec::new();
    for carriers in carrier_vectors(base.num_objects(), bound) {
        for_each_functor(base, variance, &carriers, &mut |f| {
            all.push(f);
            true
        });
    }
    dedup_up_to_iso(all)
}

/// A random functor with total carrier at most `max_total`, by rejection
/// sampling over branched tables. Returns `None` after `attempts` misses.
pub fn random_functor<R: Rng>(
    base: &Arc<FinCategory>,
    variance: Variance,
    max_total: usize,
    rng: &mut R,
    attempts: usize,
) -> Option<SetFunctor> {
    let c = &**base;
    let n = c.num_objects();
    for _ in 0..attempts {
        let mut carriers = vec![0; n];
        let mut budget = rng.gen_range(0..=max_total);
        for o in rng_order(n, rng) {
            let x = rng.gen_range(0..=budget.min(3));
            carriers[o] = x;
            budget -= x;
        }
        let empty_target = c.non_identities().any(|m| match variance {
            Variance::Covariant => carriers[c.src(m)] > 0 && carriers[c.tgt(m)] == 0,
            Variance::Contravariant => carriers[c.tgt(m)] > 0 && carriers[c.src(m)] == 0,
        });
        if empty_target {
            continue;
        }
        let mut action: Vec<Vec<usize>> = (0..c.num_morphisms())
            .map(|m| {
                let (d, e) = match variance {
                    Variance::Covariant => (c.src(m), c.tgt(m)),
                    Variance::Contravariant => (c.tgt(m), c.src(m)),
                };
                if c.is_identity(m) {
                    (0..carriers[d]).collect()
                } else {
                    (0..carriers[d]).map(|_| rng.gen_range(0..carriers[e])).collect()
                }
            })
            .collect();
        // repair composites from random generators where possible
        let p = plan(c, variance);
        for (k, &m) in p.order.iter().enumerate() {
            if let Some((a, b)) = p.forced[k] {
                action[m] = (0..action[a].len()).map(|x| action[b][action[a][x]]).collect();
            }
        }
        if let Ok(f) = SetFunctor::new(base.clone(), variance, carriers, action) {
            return Some(f);
        }
    }
    None
}

fn rng_order<R: Rng>(n: usize, rng: &mut R) -> Vec<usize> {
    use rand::seq::SliceRandom;
    let mut v: Vec<usize> = (0..n).collect();
    v.shuffle(rng);
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::families;

    /// Independent count: all raw tables, filtered by full validation.
    fn brute_force_count(c: &Arc<FinCategory>, variance: Variance, carriers: &[usize]) -> usize {
        let nonid: Vec<MorId> = c.non_identities().collect();
        let dims: Vec<(usize, usize)> = nonid
            .iter()
            .map(|&m| match variance {
                Variance::Covariant => (carriers[c.src(m)], carriers[c.tgt(m)]),
                Variance::Contravariant => (carriers[c.tgt(m)], carriers[c.src(m)]),
            })
            .collect();
        let sizes: Vec<usize> = dims.iter().map(|&(d, e)| e.pow(d as u32)).collect();
        let total: usize = sizes.iter().product();
        let mut count = 0;
        for mut code in 0..total {
            let mut action: Vec<Vec<usize>> = (0..c.num_morphisms())
                .map(|m| {
                    let d = match variance {
                        Variance::Covariant => carriers[c.src(m)],
                        Variance::Contravariant => carriers[c.tgt(m)],
                    };
                    (0..d).collect()
                })
                .collect();
            for (i, &m) in nonid.iter().enumerate() {
                let (d, e) = dims[i];
                let mut t = vec![0; d];
                let mut v = code % sizes[i];
                code /= sizes[i];
                for slot in t.iter_mut() {
                    *slot = v % e.max(1);
                    v /= e.max(1);
                }
                action[m] = t;
            }
            if SetFunctor::new(c.clone(), variance, carriers.to_vec(), action).is_ok() {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn enumeration_matches_brute_force() {
        for name in ["arrow", "idempotent", "z2", "reflexive-pair", "parallel-pair", "span", "left-zero"] {
            let c = Arc::new(families::curated().into_iter().find(|(n, _)| n == name).unwrap().1);
            for carriers in carrier_vectors(c.num_objects(), 2) {
                for v in [Variance::Covariant, Variance::Contravariant] {
                    assert_eq!(
                        functors_with_carriers(&c, v, &carriers).len(),
                        brute_force_count(&c, v, &carriers),
                        "{name} {carriers:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn sets_up_to_iso() {
        let c = Arc::new(families::terminal());
        assert_eq!(functors_up_to_iso(&c, Variance::Contravariant, 3).len(), 4);
        // Z/2-sets of size ≤ 2: ∅, 1, 1+1, Z/2
        let z2 = Arc::new(families::cyclic_group(2));
        assert_eq!(functors_up_to_iso(&z2, Variance::Contravariant, 2).len(), 4);
    }
}
