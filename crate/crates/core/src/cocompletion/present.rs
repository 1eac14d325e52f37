use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::colimit_of_presheaves;
use crate::fincat::{families, FinCategory, ObjId};
use crate::presheaf::{colimit, is_natural, presheaf_iso, PresheafError, SetFunctor, Variance};

type Nat = Vec<Vec<usize>>;

/// `⊔ y(c_i)` over the listed objects; the element `(i, f)` at `d`, with
/// `f` the `k`-th morphism of `hom(d, c_i)`, is numbered by summand then `k`.
pub fn coproduct_of_representables(base: &Arc<FinCategory>, summands: &[ObjId]) -> SetFunctor {
    let c = &**base;
    let offsets = |d: ObjId| {
        let mut off = vec![0; summands.len() + 1];
        for (i, &s) in summands.iter().enumerate() {
            off[i + 1] = off[i] + c.hom(d, s).len();
        }
        off
    };
    let all: Vec<Vec<usize>> = (0..c.num_objects()).map(offsets).collect();
    let carriers = all.iter().map(|o| o[summands.len()]).collect();
    SetFunctor::from_fn(base.clone(), Variance::Contravariant, carriers, |g, x| {
        let (d, d2) = (c.tgt(g), c.src(g));
        let i = all[d].partition_point(|&o| o <= x) - 1;
        let f = c.hom(d, summands[i])[x - all[d][i]];
        let fg = c.comp(f, g);
        all[d2][i] + c.hom(d2, summands[i]).iter().position(|&h| h == fg).unwrap()
    })
    .expect("coproducts of representables are presheaves")
}

/// Element of `⊔ y(c_i)` at `d` for summand `i` and `f: d → c_i`.
fn element(base: &FinCategory, summands: &[ObjId], d: ObjId, i: usize, f: usize) -> usize {
    let before: usize = summands[..i].iter().map(|&s| base.hom(d, s).len()).sum();
    before + base.hom(d, summands[i]).iter().position(|&h| h == f).unwrap()
}

/// `P` as the reflexive coequalizer of `d0, d1: R1 → R0` with common
/// section `s`, where `R0` has a summand `y(c)` per element `x ∈ P(c)` and
/// `R1` a summand `y(c')` per pair `(f: c' → c, x ∈ P(c))`.
#[derive(Clone, Debug)]
pub struct ReflexivePresentation {
    /// `(c, x)` per summand of `R0`.
    pub r0_summands: Vec<(ObjId, usize)>,
    /// `(f, x)` per summand of `R1`, summand object `src(f)`.
    pub r1_summands: Vec<(usize, usize)>,
    pub r0: SetFunctor,
    pub r1: SetFunctor,
    pub d0: Nat,
    pub d1: Nat,
    pub s: Nat,
    /// The coequalizer, computed pointwise.
    pub presented: SetFunctor,
    /// An isomorphism from `presented` to the input presheaf.
    pub iso: Nat,
}

impl ReflexivePresentation {
    /// Naturality of `d0, d1, s` and `d0∘s = d1∘s = id`.
    pub fn laws_hold(&self) -> bool {
        let id = |p: &SetFunctor| -> Nat { p.carriers().iter().map(|&n| (0..n).collect()).collect() };
        let after = |b: &Nat, a: &Nat| -> Nat {
            a.iter().zip(b).map(|(ac, bc)| ac.iter().map(|&x| bc[x]).collect()).collect()
        };
        is_natural(&self.r1, &self.r0, &self.d0)
            && is_natural(&self.r1, &self.r0, &self.d1)
            && is_natural(&self.r0, &self.r1, &self.s)
            && after(&self.d0, &self.s) == id(&self.r0)
            && after(&self.d1, &self.s) == id(&self.r0)
    }
}

pub fn reflexive_presentation(p: &SetFunctor) -> Result<ReflexivePresentation, PresheafError> {
    if p.variance() != Variance::Contravariant {
        return Err(PresheafError::WrongVariance {
            expected: Variance::Contravariant,
        });
    }
    let base = p.base();
    let c = &**base;
    let mut r0_summands = Vec::new();
    for o in 0..c.num_objects() {
        for x in 0..p.carrier(o) {
            r0_summands.push((o, x));
        }
    }
    let mut r1_summands = Vec::new();
    for f in 0..c.num_morphisms() {
        for x in 0..p.carrier(c.tgt(f)) {
            r1_summands.push((f, x));
        }
    }
    let r0_objs: Vec<ObjId> = r0_summands.iter().map(|&(o, _)| o).collect();
    let r1_objs: Vec<ObjId> = r1_summands.iter().map(|&(f, _)| c.src(f)).collect();
    let r0 = coproduct_of_representables(base, &r0_objs);
    let r1 = coproduct_of_representables(base, &r1_objs);
    let r0_index = |o: ObjId, x: usize| r0_summands.iter().position(|&s| s == (o, x)).unwrap();

    // a component at d sends (summand, h: d → obj) somewhere
    let d0 = build(c, &r1, &r1_objs, |i, h| {
        let (f, x) = r1_summands[i];
        let j = r0_index(c.tgt(f), x);
        (j, c.comp(f, h))
    }, &r0_objs);
    let d1 = build(c, &r1, &r1_objs, |i, h| {
        let (f, x) = r1_summands[i];
        let j = r0_index(c.src(f), p.apply(f, x));
        (j, h)
    }, &r0_objs);
    let s = build(c, &r0, &r0_objs, |j, h| {
        let (o, x) = r0_summands[j];
        let i = r1_summands.iter().position(|&t| t == (c.identity(o), x)).unwrap();
        (i, h)
    }, &r1_objs);

    // colimit over the walking reflexive pair: 1_a, 1_b, d0, d1, s, s∘d0, s∘d1
    let shape = Arc::new(families::reflexive_pair());
    let after = |b: &Nat, a: &Nat| -> Nat { a.iter().zip(b).map(|(ac, bc)| ac.iter().map(|&x| bc[x]).collect()).collect() };
    let id = |q: &SetFunctor| -> Nat { q.carriers().iter().map(|&n| (0..n).collect()).collect() };
    let edges = vec![id(&r1), id(&r0), d0.clone(), d1.clone(), s.clone(), after(&s, &d0), after(&s, &d1)];
    let presented = colimit_of_presheaves(base, &shape, &[r1.clone(), r0.clone()], &edges);
    let iso = presheaf_iso(&presented, p)?.expect("a presheaf is the coequalizer of its canonical presentation");
    Ok(ReflexivePresentation {
        r0_summands,
        r1_summands,
        r0,
        r1,
        d0,
        d1,
        s,
        presented,
        iso,
    })
}

/// Transformation out of a coproduct of representables given on
/// generators: `(summand, h: d → obj)` goes to `(summand', morphism)`.
fn build(
    c: &FinCategory,
    from: &SetFunctor,
    from_objs: &[ObjId],
    mut image: impl FnMut(usize, usize) -> (usize, usize),
    to_objs: &[ObjId],
) -> Nat {
    (0..c.num_objects())
        .map(|d| {
            let mut comp = Vec::with_capacity(from.carrier(d));
            for (i, &o) in from_objs.iter().enumerate() {
                for &h in c.hom(d, o) {
                    let (j, g) = image(i, h);
                    comp.push(element(c, to_objs, d, j, g));
                }
            }
            comp
        })
        .collect()
}

/// A colimit split along the connected components of its shape.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    pub components: Vec<Vec<ObjId>>,
    pub component_sizes: Vec<usize>,
    pub total: usize,
    /// Class of the whole colimit to (component, class in that component).
    pub bijection: Vec<(usize, usize)>,
    pub verified: bool,
}

pub fn coproduct_decomposition(f: &SetFunctor) -> Result<Decomposition, PresheafError> {
    if f.variance() != Variance::Covariant {
        return Err(PresheafError::WrongVariance {
            expected: Variance::Covariant,
        });
    }
    let shape = f.base();
    let whole = colimit(f);
    let components = shape.connected_components();
    let mut comp_of = vec![0; shape.num_objects()];
    let mut parts = Vec::new();
    for (k, objs) in components.iter().enumerate() {
        for &o in objs {
            comp_of[o] = k;
        }
        let (sub, kept) = shape.full_subcategory(objs);
        parts.push(colimit(&f.restrict(Arc::new(sub), objs, &kept)));
    }
    let pos = |o: ObjId| components[comp_of[o]].iter().position(|&p| p == o).unwrap();
    let bijection: Vec<(usize, usize)> = whole
        .representatives
        .iter()
        .map(|&(o, x)| (comp_of[o], parts[comp_of[o]].cocone.legs[pos(o)][x]))
        .collect();
    // the comparison must respect every leg and hit each class exactly once
    let legs_agree = (0..shape.num_objects()).all(|o| {
        (0..f.carrier(o)).all(|x| bijection[whole.cocone.legs[o][x]] == (comp_of[o], parts[comp_of[o]].cocone.legs[pos(o)][x]))
    });
    let mut sorted = bijection.clone();
    sorted.sort();
    sorted.dedup();
    let component_sizes: Vec<usize> = parts.iter().map(|p| p.size()).collect();
    let verified = legs_agree && sorted.len() == bijection.len() && bijection.len() == component_sizes.iter().sum::<usize>();
    Ok(Decomposition {
        components,
        component_sizes,
        total: whole.size(),
        bijection,
        verified,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::families;
    use crate::presheaf::count_natural_transformations;

    #[test]
    fn coproduct_hom_counting() {
        let c = Arc::new(families::reflexive_pair());
        let r = coproduct_of_representables(&c, &[0, 1, 1]);
        let q = SetFunctor::representable(c.clone(), 0);
        // Nat(y(a) + 2 y(b), Q) = Q(a) · Q(b)²
        let expected = q.carrier(0) * q.carrier(1) * q.carrier(1);
        assert_eq!(count_natural_transformations(&r, &q).unwrap(), expected);
    }

    #[test]
    fn representable_presentations() {
        for (_, c) in families::curated() {
            let c = Arc::new(c);
            for o in 0..c.num_objects() {
                let p = reflexive_presentation(&SetFunctor::representable(c.clone(), o)).unwrap();
                assert!(p.laws_hold());
            }
        }
    }

    #[test]
    fn two_point_set() {
        let one = Arc::new(families::terminal());
        let p = SetFunctor::new(one, Variance::Contravariant, vec![2], vec![vec![0, 1]]).unwrap();
        let r = reflexive_presentation(&p).unwrap();
        assert_eq!(r.r0_summands.len(), 2);
        assert_eq!(r.r0.carriers(), &[2]);
        // only identities relate elements
        assert_eq!(r.r1.carriers(), &[2]);
        assert!(r.laws_hold());
    }

    #[test]
    fn decompositions() {
        let d2 = Arc::new(families::discrete(2));
        let f = SetFunctor::new(d2, Variance::Covariant, vec![2, 3], vec![vec![0, 1], vec![0, 1, 2]]).unwrap();
        let dec = coproduct_decomposition(&f).unwrap();
        assert!(dec.verified);
        assert_eq!(dec.total, 5);

        let arrow = Arc::new(families::walking_arrow());
        let g = SetFunctor::new(arrow, Variance::Covariant, vec![2, 2], vec![vec![0, 1], vec![0, 1], vec![1, 1]]).unwrap();
        let dec = coproduct_decomposition(&g).unwrap();
        assert_eq!(dec.components.len(), 1);
        assert_eq!(dec.total, 2);
        assert!(dec.verified);
    }
}
