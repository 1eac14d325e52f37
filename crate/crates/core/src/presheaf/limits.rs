use serde::{Deserialize, Serialize};

use super::SetFunctor;
use crate::fincat::{MorId, ObjId};
use crate::UnionFind;

/// A cone over a set-valued diagram: `legs[d][i]` is the image of apex
/// element `i` at `d`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cone {
    pub apex: usize,
    pub legs: Vec<Vec<usize>>,
}

/// A cocone under a set-valued diagram: `legs[c][x]` is the apex element
/// receiving `x ∈ F(c)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cocone {
    pub apex: usize,
    pub legs: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Limit {
    /// Compatible families, in lexicographic order.
    pub families: Vec<Vec<usize>>,
    pub cone: Cone,
}

impl Limit {
    pub fn size(&self) -> usize {
        self.families.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Colimit {
    pub cocone: Cocone,
    /// The least `(object, element)` of each class.
    pub representatives: Vec<(ObjId, usize)>,
}

impl Colimit {
    pub fn size(&self) -> usize {
        self.cocone.apex
    }
}

/// Non-identity morphisms whose action domain and codomain both lie in
/// `0..=o`, bucketed by `o`.
fn morphisms_closing_at(f: &SetFunctor) -> Vec<Vec<MorId>> {
    let c = f.base();
    let mut by = vec![Vec::new(); c.num_objects()];
    for m in c.non_identities() {
        by[f.act_dom(m).max(f.act_cod(m))].push(m);
    }
    by
}

/// Limit of a set-valued diagram as the set of compatible families.
///
/// Works for either variance: a contravariant functor is read as a
/// covariant one on the opposite category.
pub fn limit(f: &SetFunctor) -> Limit {
    let n = f.base().num_objects();
    let closing = morphisms_closing_at(f);
    let mut families = Vec::new();
    let mut cur = vec![0usize; n];
    fn go(
        f: &SetFunctor,
        closing: &[Vec<MorId>],
        d: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if d == cur.len() {
            out.push(cur.clone());
            return;
        }
        for x in 0..f.carrier(d) {
            cur[d] = x;
            if closing[d]
                .iter()
                .all(|&m| f.apply(m, cur[f.act_dom(m)]) == cur[f.act_cod(m)])
            {
                go(f, closing, d + 1, cur, out);
            }
        }
    }
    go(f, &closing, 0, &mut cur, &mut families);
    let legs = (0..n)
        .map(|d| families.iter().map(|fam| fam[d]).collect())
        .collect();
    Limit {
        cone: Cone {
            apex: families.len(),
            legs,
        },
        families,
    }
}

/// Colimit as the quotient of the disjoint union by `x ~ F(m)(x)`.
/// Classes are numbered by their least element in object-major order.
pub fn colimit(f: &SetFunctor) -> Colimit {
    let c = f.base();
    let n = c.num_objects();
    let mut offset = vec![0; n + 1];
    for o in 0..n {
        offset[o + 1] = offset[o] + f.carrier(o);
    }
    let mut uf = UnionFind::new(offset[n]);
    for m in c.non_identities() {
        let (d, e) = (f.act_dom(m), f.act_cod(m));
        for x in 0..f.carrier(d) {
            uf.union(offset[d] + x, offset[e] + f.apply(m, x));
        }
    }
    let (class_of, count) = uf.classes();
    let legs: Vec<Vec<usize>> = (0..n)
        .map(|o| (0..f.carrier(o)).map(|x| class_of[offset[o] + x]).collect())
        .collect();
    let mut representatives = vec![(usize::MAX, 0); count];
    for o in 0..n {
        for x in 0..f.carrier(o) {
            let k = legs[o][x];
            if representatives[k].0 == usize::MAX {
                representatives[k] = (o, x);
            }
        }
    }
    Colimit {
        cocone: Cocone { apex: count, legs },
        representatives,
    }
}

/// Outcome of an exhaustive universality check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Universality {
    Verified { cones_checked: usize },
    Failed { reason: String },
    /// Total carrier above the threshold; nothing was checked.
    Skipped { total: usize },
}

impl Universality {
    pub fn is_verified(&self) -> bool {
        matches!(self, Universality::Verified { .. })
    }
}

pub const DEFAULT_UNIVERSALITY_THRESHOLD: usize = 12;

pub fn cone_is_natural(f: &SetFunctor, cone: &Cone) -> bool {
    let c = f.base();
    (0..c.num_morphisms()).all(|m| {
        (0..cone.apex).all(|i| f.apply(m, cone.legs[f.act_dom(m)][i]) == cone.legs[f.act_cod(m)][i])
    })
}

pub fn cocone_is_natural(f: &SetFunctor, cocone: &Cocone) -> bool {
    let c = f.base();
    (0..c.num_morphisms()).all(|m| {
        (0..f.carrier(f.act_dom(m)))
            .all(|x| cocone.legs[f.act_cod(m)][f.apply(m, x)] == cocone.legs[f.act_dom(m)][x])
    })
}

/// Checks the limit against every cone with a one-point apex (every
/// element of the full product), which detects both existence and
/// uniqueness of factorizations.
pub fn verify_limit(f: &SetFunctor, lim: &Limit, threshold: usize) -> Universality {
    let total = f.total_size();
    if total > threshold {
        return Universality::Skipped { total };
    }
    if !cone_is_natural(f, &lim.cone) {
        return Universality::Failed {
            reason: "limit cone is not natural".into(),
        };
    }
    let n = f.base().num_objects();
    let mut checked = 0;
    let mut tuple = vec![0usize; n];
    if (0..n).any(|d| f.carrier(d) == 0) {
        // no families at all; the only cone with nonempty apex is impossible
        return if lim.size() == 0 {
            Universality::Verified { cones_checked: 0 }
        } else {
            Universality::Failed {
                reason: "nonempty limit over an empty carrier".into(),
            }
        };
    }
    loop {
        checked += 1;
        let cone = Cone {
            apex: 1,
            legs: tuple.iter().map(|&x| vec![x]).collect(),
        };
        let natural = cone_is_natural(f, &cone);
        let factorizations = (0..lim.size())
            .filter(|&i| (0..n).all(|d| lim.cone.legs[d][i] == tuple[d]))
            .count();
        match (natural, factorizations) {
            (true, 1) | (false, 0) => {}
            (true, k) => {
                return Universality::Failed {
                    reason: format!("cone {tuple:?} has {k} factorizations"),
                }
            }
            (false, _) => {
                return Universality::Failed {
                    reason: format!("non-compatible family {tuple:?} is in the limit"),
                }
            }
        }
        let mut d = n;
        loop {
            if d == 0 {
                return Universality::Verified { cones_checked: checked };
            }
            d -= 1;
            tuple[d] += 1;
            if tuple[d] < f.carrier(d) {
                break;
            }
            tuple[d] = 0;
        }
    }
}

/// Checks the colimit against every cocone into a set of size at most 2,
/// plus joint surjectivity of the legs.
pub fn verify_colimit(f: &SetFunctor, colim: &Colimit, threshold: usize) -> Universality {
    let total = f.total_size();
    if total > threshold {
        return Universality::Skipped { total };
    }
    let cocone = &colim.cocone;
    if !cocone_is_natural(f, cocone) {
        return Universality::Failed {
            reason: "colimit cocone is not natural".into(),
        };
    }
    let mut hit = vec![false; cocone.apex];
    for legs in &cocone.legs {
        for &k in legs {
            hit[k] = true;
        }
    }
    if hit.iter().any(|h| !h) {
        return Universality::Failed {
            reason: "colimit legs are not jointly surjective".into(),
        };
    }
    let n = f.base().num_objects();
    let positions: Vec<(ObjId, usize)> = (0..n)
        .flat_map(|o| (0..f.carrier(o)).map(move |x| (o, x)))
        .collect();
    let mut checked = 0;
    for t in 1..=2usize {
        let mut values = vec![0usize; positions.len()];
        loop {
            let mut legs: Vec<Vec<usize>> = (0..n).map(|o| vec![0; f.carrier(o)]).collect();
            for (&(o, x), &v) in positions.iter().zip(&values) {
                legs[o][x] = v;
            }
            let candidate = Cocone { apex: t, legs };
            if cocone_is_natural(f, &candidate) {
                checked += 1;
                // a factorization u must satisfy u(leg(x)) = candidate(x)
                let mut u = vec![usize::MAX; cocone.apex];
                for &(o, x) in &positions {
                    let k = cocone.legs[o][x];
                    let v = candidate.legs[o][x];
                    if u[k] == usize::MAX {
                        u[k] = v;
                    } else if u[k] != v {
                        return Universality::Failed {
                            reason: format!("cocone into {t} points does not factor"),
                        };
                    }
                }
            }
            let mut i = positions.len();
            let done = loop {
                if i == 0 {
                    break true;
                }
                i -= 1;
                values[i] += 1;
                if values[i] < t {
                    break false;
                }
                values[i] = 0;
            };
            if done {
                break;
            }
        }
    }
    Universality::Verified { cones_checked: checked }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::fincat::families;
    use crate::presheaf::Variance;

    #[test]
    fn products_and_coproducts() {
        let c = Arc::new(families::discrete(2));
        let f = SetFunctor::new(c, Variance::Covariant, vec![2, 3], vec![vec![0, 1], vec![0, 1, 2]]).unwrap();
        let lim = limit(&f);
        assert_eq!(lim.size(), 6);
        assert!(verify_limit(&f, &lim, 12).is_verified());
        let col = colimit(&f);
        assert_eq!(col.size(), 5);
        assert!(verify_colimit(&f, &col, 12).is_verified());
    }

    #[test]
    fn empty_shape() {
        let f = SetFunctor::terminal(Arc::new(families::empty()), Variance::Covariant);
        assert_eq!(limit(&f).size(), 1);
        assert_eq!(colimit(&f).size(), 0);
    }

    #[test]
    fn identity_and_swap() {
        let c = Arc::new(families::parallel_pair());
        let (a, b) = (c.object_index("a").unwrap(), c.object_index("b").unwrap());
        let mut carriers = vec![0; 2];
        carriers[a] = 2;
        carriers[b] = 2;
        let f = SetFunctor::from_fn(c.clone(), Variance::Covariant, carriers, |m, x| {
            if c.morphism_name(m) == "g" {
                1 - x
            } else {
                x
            }
        })
        .unwrap();
        let lim = limit(&f);
        assert_eq!(lim.size(), 0);
        assert!(verify_limit(&f, &lim, 12).is_verified());
        let col = colimit(&f);
        assert_eq!(col.size(), 1);
        assert!(verify_colimit(&f, &col, 12).is_verified());
    }

    #[test]
    fn wrong_colimit_is_rejected() {
        let c = Arc::new(families::discrete(2));
        let f = SetFunctor::new(c, Variance::Covariant, vec![1, 1], vec![vec![0], vec![0]]).unwrap();
        let bogus = Colimit {
            cocone: Cocone {
                apex: 1,
                legs: vec![vec![0], vec![0]],
            },
            representatives: vec![(0, 0)],
        };
        assert!(!verify_colimit(&f, &bogus, 12).is_verified());
    }
}
