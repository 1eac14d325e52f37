use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::structure::{decode, encode, power, search_morphisms};
use super::term::{Node, Typed};
use super::{EquationalError, Language, Structure, StructureMorphism, Theory};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FreeStructure {
    pub structure: Structure,
    /// Element of the carrier for each generator.
    pub insertion: Vec<usize>,
    pub rounds: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "outcome")]
pub enum FreeOutcome {
    Stabilized(FreeStructure),
    /// The carrier outgrew the budget; class counts after each round.
    Unbounded { trace: Vec<usize> },
}

/// Partial structure on term nodes modulo a growing congruence.
struct Partial {
    parent: Vec<usize>,
    /// Per symbol: canonical input tuple to output nodes.
    ops: Vec<BTreeMap<Vec<usize>, Vec<usize>>>,
}

impl Partial {
    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Keeps the older node as representative.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (a, b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        let (lo, hi) = (a.min(b), a.max(b));
        self.parent[hi] = lo;
        true
    }

    fn fresh(&mut self) -> usize {
        self.parent.push(self.parent.len());
        self.parent.len() - 1
    }

    fn classes(&mut self) -> Vec<usize> {
        (0..self.parent.len()).filter(|&x| self.find(x) == x).collect()
    }

    /// Re-keys the tables by current representatives, merging outputs of
    /// inputs that became equal. Returns whether anything merged.
    fn close(&mut self) -> bool {
        let mut merged = false;
        loop {
            let mut changed = false;
            for s in 0..self.ops.len() {
                let old = std::mem::take(&mut self.ops[s]);
                let mut new: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
                for (k, v) in old {
                    let k: Vec<usize> = k.iter().map(|&x| self.find(x)).collect();
                    match new.get(&k).cloned() {
                        Some(w) => {
                            for (a, b) in v.iter().zip(&w) {
                                changed |= self.union(*a, *b);
                            }
                        }
                        None => {
                            new.insert(k, v);
                        }
                    }
                }
                self.ops[s] = new;
            }
            merged |= changed;
            if !changed {
                return merged;
            }
        }
    }

    fn eval(&mut self, t: &Typed, x: &[usize]) -> Option<Vec<usize>> {
        Some(match &t.node {
            Node::Map(images) => images.iter().map(|&i| x[i]).collect(),
            Node::Sym(s) => {
                let key: Vec<usize> = x.iter().map(|&v| self.find(v)).collect();
                let out = self.ops[*s].get(&key)?.clone();
                out.into_iter().map(|v| self.find(v)).collect()
            }
            Node::Pow(inner, z) => {
                let mut out = Vec::new();
                for k in 0..*z {
                    out.extend(self.eval(inner, &x[k * inner.input..(k + 1) * inner.input])?);
                }
                out
            }
            Node::Comp(s, ts) => {
                let mut mid = Vec::new();
                let mut off = 0;
                for tj in ts {
                    mid.extend(self.eval(tj, &x[off..off + tj.input])?);
                    off += tj.input;
                }
                self.eval(s, &mid)?
            }
        })
    }
}

/// The free model on `generators` elements, by alternately closing under
/// the equations and the congruence and applying every symbol to every
/// tuple lacking a value. Reports `Unbounded` once the carrier exceeds
/// `budget` classes.
pub fn free_structure_bounded(e: &Theory, generators: usize, budget: usize) -> Result<FreeOutcome, EquationalError> {
    let lang = e.language();
    let mut p = Partial {
        parent: (0..generators).collect(),
        ops: vec![BTreeMap::new(); lang.symbols().len()],
    };
    let mut trace = Vec::new();
    let mut rounds = 0;
    loop {
        rounds += 1;
        // equations to a fixpoint
        loop {
            let classes = p.classes();
            let mut merged = false;
            for (l, r) in e.typed() {
                let n = classes.len();
                if power(n, l.input) > 10_000_000 {
                    return Err(EquationalError::BudgetExceeded {
                        budget: 10_000_000,
                        needed: power(n, l.input) as u64,
                    });
                }
                for code in 0..power(n, l.input) {
                    let x: Vec<usize> = decode(code, n, l.input).into_iter().map(|i| classes[i]).collect();
                    if let (Some(a), Some(b)) = (p.eval(l, &x), p.eval(r, &x)) {
                        for (u, v) in a.into_iter().zip(b) {
                            merged |= p.union(u, v);
                        }
                    }
                }
            }
            merged |= p.close();
            if !merged {
                break;
            }
        }
        let classes = p.classes();
        trace.push(classes.len());
        if classes.len() > budget {
            return Ok(FreeOutcome::Unbounded { trace });
        }
        let n = classes.len();
        let mut grew = false;
        for (s, sym) in lang.symbols().iter().enumerate() {
            for code in 0..power(n, sym.input) {
                let key: Vec<usize> = decode(code, n, sym.input).into_iter().map(|i| classes[i]).collect();
                if !p.ops[s].contains_key(&key) {
                    let outs = (0..sym.output).map(|_| p.fresh()).collect();
                    p.ops[s].insert(key, outs);
                    grew = true;
                }
            }
        }
        if !grew {
            break;
        }
    }
    let classes = p.classes();
    let n = classes.len();
    let index = |p: &mut Partial, x: usize| {
        let r = p.find(x);
        classes.binary_search(&r).unwrap()
    };
    let mut tables = Vec::new();
    for (s, sym) in lang.symbols().iter().enumerate() {
        let mut t = vec![0; power(n, sym.input)];
        for (code, slot) in t.iter_mut().enumerate() {
            let key: Vec<usize> = decode(code, n, sym.input).into_iter().map(|i| classes[i]).collect();
            let out = p.ops[s][&key].clone();
            let out: Vec<usize> = out.into_iter().map(|v| index(&mut p, v)).collect();
            *slot = encode(&out, n);
        }
        tables.push(t);
    }
    let insertion = (0..generators).map(|g| index(&mut p, g)).collect();
    Ok(FreeOutcome::Stabilized(FreeStructure {
        structure: Structure { size: n, tables },
        insertion,
        rounds,
    }))
}

/// The unique morphism out of a structure generated by `gens` sending them
/// to `images`, if one exists.
pub fn extend_from_generators(
    lang: &Language,
    from: &Structure,
    gens: &[usize],
    to: &Structure,
    images: &[usize],
) -> Option<StructureMorphism> {
    let mut h = vec![usize::MAX; from.size];
    for (&g, &y) in gens.iter().zip(images) {
        if h[g] != usize::MAX && h[g] != y {
            return None;
        }
        h[g] = y;
    }
    let mut found = None;
    search_morphisms(lang, from, to, h, &mut |m| {
        found = Some(StructureMorphism { map: m.to_vec() });
        false
    });
    found
}

/// Whether precomposition with `h: P → W` is a bijection
/// `Hom(W, A) → Hom(P, A)`.
pub fn orthogonality_check(lang: &Language, a: &Structure, p: &Structure, w: &Structure, h: &StructureMorphism) -> bool {
    let from_w = super::enumerate_morphisms(lang, w, a);
    let from_p = super::enumerate_morphisms(lang, p, a);
    if from_w.len() != from_p.len() {
        return false;
    }
    let mut images: Vec<Vec<usize>> = from_w
        .iter()
        .map(|g| h.map.iter().map(|&x| g.map[x]).collect())
        .collect();
    images.sort();
    images.dedup();
    images.len() == from_p.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equational::{satisfies, theories};

    fn stabilized(o: FreeOutcome) -> FreeStructure {
        match o {
            FreeOutcome::Stabilized(f) => f,
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn small_free_structures() {
        let inv = stabilized(free_structure_bounded(&theories::involution(), 1, 10).unwrap());
        assert_eq!(inv.structure.size, 2);
        assert!(satisfies(&theories::involution(), &inv.structure));
        let empty = Theory::new(Language::default(), vec![]).unwrap();
        assert_eq!(stabilized(free_structure_bounded(&empty, 1, 10).unwrap()).structure.size, 1);
        let pointed = stabilized(free_structure_bounded(&theories::pointed_set(), 0, 10).unwrap());
        assert_eq!(pointed.structure.size, 1);
    }

    #[test]
    fn unbounded_growth() {
        let free = theories::unary().free_theory();
        match free_structure_bounded(&free, 1, 5).unwrap() {
            FreeOutcome::Unbounded { trace } => assert!(trace.windows(2).all(|w| w[0] < w[1])),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn orthogonality_examples() {
        let (lang, p, w, h) = theories::involution_quotient_map(4);
        let swap = Structure { size: 2, tables: vec![vec![1, 0]] };
        let constant = Structure { size: 2, tables: vec![vec![0, 0]] };
        assert!(orthogonality_check(&lang, &swap, &p, &w, &h));
        assert!(!orthogonality_check(&lang, &constant, &p, &w, &h));
        let id = StructureMorphism { map: (0..w.size).collect() };
        assert!(orthogonality_check(&lang, &constant, &w, &w, &id));
    }
}
