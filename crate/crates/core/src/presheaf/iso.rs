use super::{PresheafError, SetFunctor};
use crate::fincat::{MorId, ObjId};

/// Componentwise map search with forward propagation along actions.
///
/// Assigning `α_d(x) = y` forces `α_e(F(m)x) = G(m)y` for every `m` acting
/// `d → e`; conflicts prune the branch.
struct MapSearch<'a> {
    p: &'a SetFunctor,
    q: &'a SetFunctor,
    injective: bool,
    out: Vec<Vec<MorId>>,
    map: Vec<Vec<usize>>,
    used: Vec<Vec<bool>>,
    trail: Vec<(ObjId, usize)>,
    order: Vec<(ObjId, usize)>,
}

const UNSET: usize = usize::MAX;

impl<'a> MapSearch<'a> {
    fn new(p: &'a SetFunctor, q: &'a SetFunctor, injective: bool) -> Self {
        let c = p.base();
        let n = c.num_objects();
        let mut out = vec![Vec::new(); n];
        for m in c.non_identities() {
            out[p.act_dom(m)].push(m);
        }
        let order = (0..n)
            .flat_map(|o| (0..p.carrier(o)).map(move |x| (o, x)))
            .collect();
        MapSearch {
            p,
            q,
            injective,
            out,
            map: (0..n).map(|o| vec![UNSET; p.carrier(o)]).collect(),
            used: (0..n).map(|o| vec![false; q.carrier(o)]).collect(),
            trail: Vec::new(),
            order,
        }
    }

    fn assign(&mut self, o: ObjId, x: usize, y: usize) -> bool {
        let mut stack = vec![(o, x, y)];
        while let Some((o, x, y)) = stack.pop() {
            let cur = self.map[o][x];
            if cur == y {
                continue;
            }
            if cur != UNSET || (self.injective && self.used[o][y]) {
                return false;
            }
            self.map[o][x] = y;
            if self.injective {
                self.used[o][y] = true;
            }
            self.trail.push((o, x));
            for &m in &self.out[o] {
                stack.push((self.p.act_cod(m), self.p.apply(m, x), self.q.apply(m, y)));
            }
        }
        true
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let (o, x) = self.trail.pop().unwrap();
            if self.injective {
                self.used[o][self.map[o][x]] = false;
            }
            self.map[o][x] = UNSET;
        }
    }

    /// Visits solutions in lexicographic order; stops when `visit` returns
    /// false. Returns false if stopped early.
    fn run(&mut self, k: usize, visit: &mut dyn FnMut(&[Vec<usize>]) -> bool) -> bool {
        let mut k = k;
        while k < self.order.len() && self.map[self.order[k].0][self.order[k].1] != UNSET {
            k += 1;
        }
        if k == self.order.len() {
            return visit(&self.map);
        }
        let (o, x) = self.order[k];
        for y in 0..self.q.carrier(o) {
            let mark = self.trail.len();
            if self.assign(o, x, y) && !self.run(k + 1, visit) {
                self.undo(mark);
                return false;
            }
            self.undo(mark);
        }
        true
    }
}

fn check_compatible(p: &SetFunctor, q: &SetFunctor) -> Result<(), PresheafError> {
    if !p.same_base(q) {
        return Err(PresheafError::BaseMismatch);
    }
    if p.variance() != q.variance() {
        return Err(PresheafError::WrongVariance {
            expected: p.variance(),
        });
    }
    Ok(())
}

/// A natural isomorphism `P ≅ Q` as componentwise bijections, if one exists.
pub fn presheaf_iso(p: &SetFunctor, q: &SetFunctor) -> Result<Option<Vec<Vec<usize>>>, PresheafError> {
    check_compatible(p, q)?;
    if p.carriers() != q.carriers() || invariant_key(p) != invariant_key(q) {
        return Ok(None);
    }
    let mut search = MapSearch::new(p, q, true);
    let mut found = None;
    search.run(0, &mut |m| {
        found = Some(m.to_vec());
        false
    });
    Ok(found)
}

/// All natural transformations `P → Q`, lexicographically, up to `limit`.
pub fn natural_transformations(
    p: &SetFunctor,
    q: &SetFunctor,
    limit: usize,
) -> Result<Vec<Vec<Vec<usize>>>, PresheafError> {
    check_compatible(p, q)?;
    let mut all = Vec::new();
    let mut search = MapSearch::new(p, q, false);
    search.run(0, &mut |m| {
        all.push(m.to_vec());
        all.len() < limit
    });
    Ok(all)
}

pub fn count_natural_transformations(p: &SetFunctor, q: &SetFunctor) -> Result<usize, PresheafError> {
    check_compatible(p, q)?;
    let mut count = 0;
    let mut search = MapSearch::new(p, q, false);
    search.run(0, &mut |_| {
        count += 1;
        true
    });
    Ok(count)
}

pub fn is_natural(p: &SetFunctor, q: &SetFunctor, alpha: &[Vec<usize>]) -> bool {
    let c = p.base();
    (0..c.num_morphisms()).all(|m| {
        let (d, e) = (p.act_dom(m), p.act_cod(m));
        (0..p.carrier(d)).all(|x| alpha[e][p.apply(m, x)] == q.apply(m, alpha[d][x]))
    })
}

/// An isomorphism-invariant fingerprint: carriers, and per morphism the
/// sorted fibre sizes of its action, and per endomorphism its number of
/// fixed points.
pub fn invariant_key(p: &SetFunctor) -> Vec<usize> {
    let c = p.base();
    let mut key = p.carriers().to_vec();
    for m in 0..c.num_morphisms() {
        if c.is_identity(m) {
            continue;
        }
        let mut fibres = vec![0usize; p.carrier(p.act_cod(m))];
        for &y in p.action(m) {
            fibres[y] += 1;
        }
        fibres.sort_unstable();
        key.push(usize::MAX);
        key.extend(fibres);
        if c.src(m) == c.tgt(m) {
            key.push(p.action(m).iter().enumerate().filter(|(x, &y)| *x == y).count());
        }
    }
    key
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::fincat::families;
    use crate::presheaf::Variance;

    #[test]
    fn self_iso_and_relabelling() {
        let c = Arc::new(families::reflexive_pair());
        for o in 0..c.num_objects() {
            let y = SetFunctor::representable(c.clone(), o);
            assert!(presheaf_iso(&y, &y).unwrap().is_some());
            let perm: Vec<Vec<usize>> = y.carriers().iter().map(|&n| (0..n).rev().collect()).collect();
            let z = y.relabel(&perm);
            let w = presheaf_iso(&y, &z).unwrap().unwrap();
            assert!(is_natural(&y, &z, &w));
        }
        let y0 = SetFunctor::representable(c.clone(), 0);
        let y1 = SetFunctor::representable(c.clone(), 1);
        assert!(presheaf_iso(&y0, &y1).unwrap().is_none());
    }

    #[test]
    fn yoneda_counts() {
        // |Nat(y(c), P)| = |P(c)|
        for (name, c) in families::curated() {
            let c = Arc::new(c);
            for a in 0..c.num_objects() {
                let p = SetFunctor::representable(c.clone(), a);
                for o in 0..c.num_objects() {
                    let y = SetFunctor::representable(c.clone(), o);
                    assert_eq!(count_natural_transformations(&y, &p).unwrap(), p.carrier(o), "{name}");
                }
            }
        }
    }

    #[test]
    fn variance_mismatch() {
        let c = Arc::new(families::terminal());
        let p = SetFunctor::terminal(c.clone(), Variance::Covariant);
        let q = SetFunctor::terminal(c, Variance::Contravariant);
        assert!(presheaf_iso(&p, &q).is_err());
    }
}
