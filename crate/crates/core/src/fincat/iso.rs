use super::{FinCategory, MorId, ObjId};

/// An isomorphism of categories as a pair of bijections.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CategoryIso {
    pub objects: Vec<ObjId>,
    pub morphisms: Vec<MorId>,
}

/// Backtracking search over object bijections, then morphism bijections.
pub fn find_isomorphism(c: &FinCategory, d: &FinCategory) -> Option<CategoryIso> {
    if c.num_objects() != d.num_objects() || c.num_morphisms() != d.num_morphisms() {
        return None;
    }
    let n = c.num_objects();
    let mut obj = vec![usize::MAX; n];
    let mut used = vec![false; n];
    search_objects(c, d, 0, &mut obj, &mut used)
}

fn search_objects(
    c: &FinCategory,
    d: &FinCategory,
    i: usize,
    obj: &mut Vec<ObjId>,
    used: &mut Vec<bool>,
) -> Option<CategoryIso> {
    let n = c.num_objects();
    if i == n {
        return search_morphisms(c, d, obj);
    }
    for cand in 0..n {
        if used[cand] {
            continue;
        }
        obj[i] = cand;
        let ok = (0..=i).all(|j| {
            c.hom(i, j).len() == d.hom(cand, obj[j]).len()
                && c.hom(j, i).len() == d.hom(obj[j], cand).len()
        });
        if ok {
            used[cand] = true;
            if let Some(iso) = search_objects(c, d, i + 1, obj, used) {
                return Some(iso);
            }
            used[cand] = false;
        }
    }
    obj[i] = usize::MAX;
    None
}

fn search_morphisms(c: &FinCategory, d: &FinCategory, obj: &[ObjId]) -> Option<CategoryIso> {
    let m = c.num_morphisms();
    let mut mor = vec![usize::MAX; m];
    let mut used = vec![false; m];
    for o in 0..c.num_objects() {
        mor[c.identity(o)] = d.identity(obj[o]);
        used[d.identity(obj[o])] = true;
    }
    let order: Vec<MorId> = c.non_identities().collect();
    if assign(c, d, obj, &order, 0, &mut mor, &mut used) {
        Some(CategoryIso {
            objects: obj.to_vec(),
            morphisms: mor,
        })
    } else {
        None
    }
}

fn consistent(c: &FinCategory, d: &FinCategory, f: MorId, mor: &[MorId]) -> bool {
    let assigned = |x: MorId| mor[x] != usize::MAX;
    // f as first factor
    for g in c.out_of(c.tgt(f)) {
        let h = c.comp(g, f);
        if assigned(g) && assigned(h) && d.comp(mor[g], mor[f]) != mor[h] {
            return false;
        }
    }
    // f as second factor
    for g in c.incoming(c.src(f)) {
        let h = c.comp(f, g);
        if assigned(g) && assigned(h) && d.comp(mor[f], mor[g]) != mor[h] {
            return false;
        }
    }
    // f as composite
    for g in c.out_of(c.src(f)) {
        for h in c.out_of(c.tgt(g)) {
            if c.comp(h, g) == f && assigned(g) && assigned(h) && d.comp(mor[h], mor[g]) != mor[f] {
                return false;
            }
        }
    }
    true
}

fn assign(
    c: &FinCategory,
    d: &FinCategory,
    obj: &[ObjId],
    order: &[MorId],
    k: usize,
    mor: &mut Vec<MorId>,
    used: &mut Vec<bool>,
) -> bool {
    if k == order.len() {
        return true;
    }
    let f = order[k];
    let candidates = d.hom(obj[c.src(f)], obj[c.tgt(f)]);
    for &cand in candidates {
        if used[cand] {
            continue;
        }
        mor[f] = cand;
        if consistent(c, d, f, mor) {
            used[cand] = true;
            if assign(c, d, obj, order, k + 1, mor, used) {
                return true;
            }
            used[cand] = false;
        }
    }
    mor[f] = usize::MAX;
    false
}

/// Full subcategory on the least object of each isomorphism class.
pub fn skeleton(c: &FinCategory) -> FinCategory {
    let n = c.num_objects();
    let mut reps: Vec<ObjId> = Vec::new();
    for x in 0..n {
        let has_rep = reps
            .iter()
            .any(|&r| c.hom(r, x).iter().any(|&f| c.inverse(f).is_some()));
        if !has_rep {
            reps.push(x);
        }
    }
    c.full_subcategory(&reps).0
}

/// Equivalence of finite categories, decided by isomorphism of skeleta.
pub fn are_equivalent(c: &FinCategory, d: &FinCategory) -> bool {
    find_isomorphism(&skeleton(c), &skeleton(d)).is_some()
}
