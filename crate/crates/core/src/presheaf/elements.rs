use std::collections::HashMap;
use std::sync::Arc;

use super::{colimit, Colimit, PresheafError, SetFunctor, Variance};
use crate::fincat::{FinCategory, FinFunctor, MorId, Morphism, ObjId};

/// `El(M)` for a contravariant `M` on `C`.
///
/// Objects are pairs `(c, x)` with `x ∈ M(c)`, named `c:x`. A morphism
/// `(c, x) → (c', x')` is an `f: c' → c` of `C` with `M(f)(x) = x'`, named
/// `f@x`. With this orientation `El(Δ1) ≅ C^op`.
#[derive(Clone, Debug)]
pub struct ElementsCategory {
    pub total: Arc<FinCategory>,
    /// `El(M) → C^op`.
    pub projection: FinFunctor,
    /// The pair `(c, x)` behind each object.
    pub elements: Vec<(ObjId, usize)>,
    /// The base morphism behind each morphism.
    pub underlying: Vec<MorId>,
}

pub fn category_of_elements(m: &SetFunctor) -> Result<ElementsCategory, PresheafError> {
    if m.variance() != Variance::Contravariant {
        return Err(PresheafError::WrongVariance {
            expected: Variance::Contravariant,
        });
    }
    let c = m.base().clone();
    let mut elements = Vec::new();
    let mut obj_of = HashMap::new();
    for o in 0..c.num_objects() {
        for x in 0..m.carrier(o) {
            obj_of.insert((o, x), elements.len());
            elements.push((o, x));
        }
    }
    let objects: Vec<String> = elements
        .iter()
        .map(|&(o, x)| format!("{}:{x}", c.object_name(o)))
        .collect();
    let mut morphisms = Vec::new();
    let mut underlying = Vec::new();
    let mut mor_of: HashMap<(usize, MorId), MorId> = HashMap::new();
    for (i, &(o, x)) in elements.iter().enumerate() {
        for f in c.incoming(o) {
            let target = obj_of[&(c.src(f), m.apply(f, x))];
            mor_of.insert((i, f), morphisms.len());
            morphisms.push(Morphism {
                name: format!("{}@{x}", c.morphism_name(f)),
                src: i,
                tgt: target,
            });
            underlying.push(f);
        }
    }
    let identity: Vec<MorId> = elements
        .iter()
        .enumerate()
        .map(|(i, &(o, _))| mor_of[&(i, c.identity(o))])
        .collect();
    let srcs: Vec<usize> = morphisms.iter().map(|m| m.src).collect();
    let total = FinCategory::from_composition(objects, morphisms, identity, |psi, phi| {
        // phi = f@x then psi = g@x', composite is (f ∘ g)@x
        mor_of[&(srcs[phi], c.comp(underlying[phi], underlying[psi]))]
    })
    .expect("category of elements is a category");
    let total = Arc::new(total);
    let cop = Arc::new(c.opposite());
    let projection = FinFunctor::new(
        total.clone(),
        cop,
        elements.iter().map(|&(o, _)| o).collect(),
        underlying.clone(),
    )
    .expect("projection of the category of elements is a functor");
    Ok(ElementsCategory {
        total,
        projection,
        elements,
        underlying,
    })
}

#[derive(Clone, Debug)]
pub struct WeightedColimit {
    pub elements: ElementsCategory,
    /// `H` reindexed along `El(M)^op → C`, covariant on `El(M)^op`.
    pub diagram: SetFunctor,
    pub colimit: Colimit,
}

impl WeightedColimit {
    pub fn size(&self) -> usize {
        self.colimit.size()
    }
}

/// `M * H` as the conical colimit of `H` over `El(M)^op`.
pub fn weighted_colimit(m: &SetFunctor, h: &SetFunctor) -> Result<WeightedColimit, PresheafError> {
    if !m.same_base(h) {
        return Err(PresheafError::BaseMismatch);
    }
    if h.variance() != Variance::Covariant {
        return Err(PresheafError::WrongVariance {
            expected: Variance::Covariant,
        });
    }
    let el = category_of_elements(m)?;
    let shape = Arc::new(el.total.opposite());
    let carriers = el.elements.iter().map(|&(o, _)| h.carrier(o)).collect();
    let action = el
        .underlying
        .iter()
        .map(|&f| h.action(f).to_vec())
        .collect();
    let diagram = SetFunctor::new_unchecked(shape, Variance::Covariant, carriers, action);
    let colimit = colimit(&diagram);
    Ok(WeightedColimit {
        elements: el,
        diagram,
        colimit,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{families, find_isomorphism};

    #[test]
    fn elements_of_terminal_is_opposite() {
        for (name, c) in families::curated() {
            let c = Arc::new(c);
            let el = category_of_elements(&SetFunctor::terminal(c.clone(), Variance::Contravariant)).unwrap();
            assert!(find_isomorphism(&el.total, &c.opposite()).is_some(), "{name}");
        }
    }

    #[test]
    fn representable_has_initial_identity_element() {
        for (name, c) in families::curated() {
            let c = Arc::new(c);
            for o in 0..c.num_objects() {
                let y = SetFunctor::representable(c.clone(), o);
                let el = category_of_elements(&y).unwrap();
                assert_eq!(el.total.num_objects(), y.total_size(), "{name}");
                let id_pos = c.hom(o, o).iter().position(|&k| k == c.identity(o)).unwrap();
                let root = el.elements.iter().position(|&e| e == (o, id_pos)).unwrap();
                assert!(el.total.initial_objects().contains(&root), "{name}");
            }
        }
    }

    /// The coend `∫^c M(c) × H(c)` by hand: pairs `(m, h)` at each object,
    /// identified by `(M(f)m, h) ~ (m, H(f)h)`.
    fn coend_size(m: &SetFunctor, h: &SetFunctor) -> usize {
        let c = m.base();
        let mut pairs = Vec::new();
        for o in 0..c.num_objects() {
            for a in 0..m.carrier(o) {
                for b in 0..h.carrier(o) {
                    pairs.push((o, a, b));
                }
            }
        }
        let idx = |p: (usize, usize, usize)| pairs.iter().position(|&q| q == p).unwrap();
        let mut uf = crate::UnionFind::new(pairs.len());
        for f in 0..c.num_morphisms() {
            let (s, t) = (c.src(f), c.tgt(f));
            for a in 0..m.carrier(t) {
                for b in 0..h.carrier(s) {
                    uf.union(idx((s, m.apply(f, a), b)), idx((t, a, h.apply(f, b))));
                }
            }
        }
        uf.classes().1
    }

    #[test]
    fn weighted_colimit_matches_coend() {
        let c = Arc::new(families::walking_arrow());
        let u = c.morphism_index("u").unwrap();
        let (a, b) = (c.src(u), c.tgt(u));
        let mut mc = vec![0; 2];
        mc[a] = 2;
        mc[b] = 1;
        let m = SetFunctor::from_fn(c.clone(), Variance::Contravariant, mc, |f, x| if f == u { 0 } else { x }).unwrap();
        let mut hc = vec![0; 2];
        hc[a] = 1;
        hc[b] = 2;
        let h = SetFunctor::from_fn(c.clone(), Variance::Covariant, hc, |f, x| if f == u { 0 } else { x }).unwrap();
        let w = weighted_colimit(&m, &h).unwrap();
        // (a,1)·0 and the two elements of H(b), with (a,0)·0 glued to (b,0)·0
        assert_eq!(coend_size(&m, &h), 3);
        assert_eq!(w.size(), 3);
    }

    #[test]
    fn calibrations() {
        for (name, c) in families::curated() {
            let c = Arc::new(c);
            let h = SetFunctor::corepresentable(c.clone(), 0);
            if c.num_objects() == 0 {
                continue;
            }
            let one = SetFunctor::terminal(c.clone(), Variance::Contravariant);
            assert_eq!(weighted_colimit(&one, &h).unwrap().size(), colimit(&h).size(), "{name}");
            for o in 0..c.num_objects() {
                let y = SetFunctor::representable(c.clone(), o);
                let w = weighted_colimit(&y, &h).unwrap();
                assert_eq!(w.size(), h.carrier(o), "{name}");
                assert_eq!(w.size(), coend_size(&y, &h), "{name}");
            }
        }
    }

    #[test]
    fn base_mismatch() {
        let m = SetFunctor::terminal(Arc::new(families::terminal()), Variance::Contravariant);
        let h = SetFunctor::terminal(Arc::new(families::walking_arrow()), Variance::Covariant);
        assert_eq!(weighted_colimit(&m, &h).unwrap_err(), PresheafError::BaseMismatch);
    }
}
