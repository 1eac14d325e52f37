use serde::{Deserialize, Serialize};

use super::structure::{decode, encode, power};
use super::{enumerate_models, is_morphism, satisfies, EquationalError, Structure, StructureMorphism, Theory};
use crate::par::Parallelism;
use crate::UnionFind;

/// Colimit of structures computed on carriers, with tables induced from a
/// root object whose leg is onto.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelColimit {
    pub structure: Structure,
    /// Leg from each object into the colimit carrier.
    pub legs: Vec<Vec<usize>>,
    pub is_model: bool,
}

/// `arrows` are `(from, to, map)`; the carrier is the finite-set colimit,
/// classes numbered by least element in object-major order.
pub fn colimit_of_structures(
    e: &Theory,
    objects: &[Structure],
    arrows: &[(usize, usize, Vec<usize>)],
    root: usize,
) -> Result<ModelColimit, EquationalError> {
    let lang = e.language();
    let mut offset = vec![0; objects.len() + 1];
    for (i, o) in objects.iter().enumerate() {
        offset[i + 1] = offset[i] + o.size;
    }
    let mut uf = UnionFind::new(offset[objects.len()]);
    for (from, to, map) in arrows {
        for (x, &y) in map.iter().enumerate() {
            uf.union(offset[*from] + x, offset[*to] + y);
        }
    }
    let (class_of, n) = uf.classes();
    let legs: Vec<Vec<usize>> = objects
        .iter()
        .enumerate()
        .map(|(i, o)| (0..o.size).map(|x| class_of[offset[i] + x]).collect())
        .collect();
    let mut covered = vec![false; n];
    for &c in &legs[root] {
        covered[c] = true;
    }
    if covered.contains(&false) {
        return Err(EquationalError::DescentFailure("the root does not cover the colimit".into()));
    }
    let r = &objects[root];
    let mut tables = Vec::new();
    for (s, sym) in lang.symbols().iter().enumerate() {
        let mut t = vec![usize::MAX; power(n, sym.input)];
        for code in 0..power(r.size, sym.input) {
            let x = decode(code, r.size, sym.input);
            let key = encode(&x.iter().map(|&v| legs[root][v]).collect::<Vec<_>>(), n);
            let val = encode(&r.apply(lang, s, &x).iter().map(|&v| legs[root][v]).collect::<Vec<_>>(), n);
            if t[key] == usize::MAX {
                t[key] = val;
            } else if t[key] != val {
                return Err(EquationalError::DescentFailure(format!(
                    "{} is not well defined on classes",
                    sym.name
                )));
            }
        }
        tables.push(t);
    }
    let structure = Structure { size: n, tables };
    for (i, o) in objects.iter().enumerate() {
        if !is_morphism(lang, o, &structure, &legs[i]) {
            return Err(EquationalError::DescentFailure(format!("leg {i} is not a morphism")));
        }
    }
    Ok(ModelColimit {
        is_model: satisfies(e, &structure),
        structure,
        legs,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReflexiveQuotient {
    pub colimit: ModelColimit,
    /// Models tested against the universal property.
    pub targets_checked: usize,
    pub universal: bool,
}

/// The coequalizer of `d0, d1: A → B` with common section `s`, computed on
/// carriers; the universal property is checked against every model with
/// at most `test_size` elements.
pub fn reflexive_coequalizer_of_models(
    e: &Theory,
    a: &Structure,
    b: &Structure,
    d0: &StructureMorphism,
    d1: &StructureMorphism,
    s: &StructureMorphism,
    test_size: usize,
) -> Result<ReflexiveQuotient, EquationalError> {
    let lang = e.language();
    for (name, (h, from, to)) in [("d0", (d0, a, b)), ("d1", (d1, a, b)), ("s", (s, b, a))] {
        if !is_morphism(lang, from, to, &h.map) {
            return Err(EquationalError::NotAMorphism(name.into()));
        }
    }
    if (0..b.size).any(|y| d0.map[s.map[y]] != y || d1.map[s.map[y]] != y) {
        return Err(EquationalError::NotReflexive("s is not a common section".into()));
    }
    let colimit = colimit_of_structures(e, &[a.clone(), b.clone()], &[(0, 1, d0.map.clone()), (0, 1, d1.map.clone())], 1)?;
    let mut targets = 0;
    let mut universal = true;
    for size in 0..=test_size {
        for c in enumerate_models(e, size, 1 << 22, Parallelism::Sequential)? {
            targets += 1;
            let coequalizing = super::enumerate_morphisms(lang, b, &c)
                .into_iter()
                .filter(|h| (0..a.size).all(|x| h.map[d0.map[x]] == h.map[d1.map[x]]))
                .count();
            let out_of_quotient = super::enumerate_morphisms(lang, &colimit.structure, &c).len();
            // precomposition with the surjection q is injective, so counts decide
            if coequalizing != out_of_quotient {
                universal = false;
            }
        }
    }
    Ok(ReflexiveQuotient {
        colimit,
        targets_checked: targets,
        universal,
    })
}

/// Colimit of `A_0 → A_1 → … → A_k`.
pub fn chain_colimit(e: &Theory, objects: &[Structure], maps: &[StructureMorphism]) -> Result<ModelColimit, EquationalError> {
    if objects.is_empty() || maps.len() + 1 != objects.len() {
        return Err(EquationalError::BadStructure("a chain needs one map between consecutive objects".into()));
    }
    for (i, m) in maps.iter().enumerate() {
        if !is_morphism(e.language(), &objects[i], &objects[i + 1], &m.map) {
            return Err(EquationalError::NotAMorphism(format!("map {i}")));
        }
    }
    let arrows: Vec<(usize, usize, Vec<usize>)> = maps.iter().enumerate().map(|(i, m)| (i, i + 1, m.map.clone())).collect();
    colimit_of_structures(e, objects, &arrows, objects.len() - 1)
}
