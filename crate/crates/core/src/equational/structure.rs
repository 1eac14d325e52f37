use serde::{Deserialize, Serialize};

use super::term::{typecheck, Node, Typed};
use super::{EquationalError, Language, Term};
use crate::par::{self, Parallelism};

/// Index of `a ∈ A^X` in lexicographic order, first coordinate most
/// significant.
pub fn encode(a: &[usize], n: usize) -> usize {
    a.iter().fold(0, |acc, &x| acc * n + x)
}

pub fn decode(mut code: usize, n: usize, len: usize) -> Vec<usize> {
    let mut a = vec![0; len];
    for i in (0..len).rev() {
        a[i] = code % n.max(1);
        code /= n.max(1);
    }
    a
}

pub(crate) fn power(n: usize, k: usize) -> usize {
    n.checked_pow(k as u32).unwrap_or(usize::MAX)
}

/// A carrier `{0..size}` with, per symbol `f: (X, Y)`, the table of
/// `f_A: A^X → A^Y` on encoded tuples.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Structure {
    pub size: usize,
    pub tables: Vec<Vec<usize>>,
}

impl Structure {
    pub fn validate(&self, lang: &Language) -> Result<(), EquationalError> {
        if self.tables.len() != lang.symbols().len() {
            return Err(EquationalError::BadStructure(format!(
                "{} tables for {} symbols",
                self.tables.len(),
                lang.symbols().len()
            )));
        }
        for (s, t) in lang.symbols().iter().zip(&self.tables) {
            if t.len() != power(self.size, s.input) {
                return Err(EquationalError::BadStructure(format!("table of {} has the wrong length", s.name)));
            }
            let cod = power(self.size, s.output);
            if t.iter().any(|&v| v >= cod) {
                return Err(EquationalError::BadStructure(format!("table of {} leaves A^{}", s.name, s.output)));
            }
        }
        Ok(())
    }

    /// `f_A` on a tuple.
    pub fn apply(&self, lang: &Language, sym: usize, a: &[usize]) -> Vec<usize> {
        let out = lang.symbols()[sym].output;
        decode(self.tables[sym][encode(a, self.size)], self.size, out)
    }
}

pub(crate) fn eval(t: &Typed, a: &Structure, lang: &Language, x: &[usize]) -> Vec<usize> {
    match &t.node {
        Node::Map(images) => images.iter().map(|&i| x[i]).collect(),
        Node::Sym(i) => a.apply(lang, *i, x),
        Node::Pow(inner, z) => {
            let mut out = Vec::with_capacity(t.output);
            for k in 0..*z {
                out.extend(eval(inner, a, lang, &x[k * inner.input..(k + 1) * inner.input]));
            }
            out
        }
        Node::Comp(s, ts) => {
            let mut mid = Vec::with_capacity(s.input);
            let mut off = 0;
            for tj in ts {
                mid.extend(eval(tj, a, lang, &x[off..off + tj.input]));
                off += tj.input;
            }
            eval(s, a, lang, &mid)
        }
    }
}

/// `t_A: A^X → A^Y` as a table on encoded tuples.
pub fn interpret_term(lang: &Language, t: &Term, a: &Structure) -> Result<Vec<usize>, EquationalError> {
    let t = typecheck(lang, t)?;
    Ok(table(&t, a, lang))
}

fn table(t: &Typed, a: &Structure, lang: &Language) -> Vec<usize> {
    (0..power(a.size, t.input))
        .map(|code| encode(&eval(t, a, lang, &decode(code, a.size, t.input)), a.size))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Equation {
    pub lhs: Term,
    pub rhs: Term,
}

#[derive(Clone, Debug)]
pub struct Theory {
    language: Language,
    equations: Vec<Equation>,
    typed: Vec<(Typed, Typed)>,
}

impl PartialEq for Theory {
    fn eq(&self, other: &Theory) -> bool {
        self.language == other.language && self.equations == other.equations
    }
}

impl Eq for Theory {}

impl Theory {
    pub fn new(language: Language, equations: Vec<Equation>) -> Result<Self, EquationalError> {
        let mut typed = Vec::new();
        for (i, e) in equations.iter().enumerate() {
            let (l, r) = (typecheck(&language, &e.lhs)?, typecheck(&language, &e.rhs)?);
            if (l.input, l.output) != (r.input, r.output) {
                return Err(EquationalError::EquationArity {
                    index: i,
                    lhs: (l.input, l.output),
                    rhs: (r.input, r.output),
                });
            }
            typed.push((l, r));
        }
        Ok(Theory {
            language,
            equations,
            typed,
        })
    }

    pub fn language(&self) -> &Language {
        &self.language
    }

    pub fn equations(&self) -> &[Equation] {
        &self.equations
    }

    pub(crate) fn typed(&self) -> &[(Typed, Typed)] {
        &self.typed
    }

    /// The same language with no equations.
    pub fn free_theory(&self) -> Theory {
        Theory::new(self.language.clone(), Vec::new()).unwrap()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquationFailure {
    pub equation: usize,
    pub point: Vec<usize>,
}

/// The first equation (in order) and point (lexicographically) where the
/// two sides differ.
pub fn first_failure(e: &Theory, a: &Structure) -> Option<EquationFailure> {
    for (i, (l, r)) in e.typed.iter().enumerate() {
        for code in 0..power(a.size, l.input) {
            let x = decode(code, a.size, l.input);
            if eval(l, a, &e.language, &x) != eval(r, a, &e.language, &x) {
                return Some(EquationFailure { equation: i, point: x });
            }
        }
    }
    None
}

pub fn satisfies(e: &Theory, a: &Structure) -> bool {
    first_failure(e, a).is_none()
}

/// All models on `{0..n}`, in lexicographic order of the concatenated
/// tables.
pub fn enumerate_models(e: &Theory, n: usize, budget: u64, mode: Parallelism) -> Result<Vec<Structure>, EquationalError> {
    let syms = e.language.symbols();
    // one slot per table entry, each ranging over A^Y
    let mut slots: Vec<(usize, usize)> = Vec::new();
    let mut space: u128 = 1;
    for (i, s) in syms.iter().enumerate() {
        let (len, cod) = (power(n, s.input), power(n, s.output));
        for _ in 0..len {
            slots.push((i, cod));
            space = space.saturating_mul(cod as u128);
        }
    }
    if space > budget as u128 {
        return Err(EquationalError::BudgetExceeded {
            budget,
            needed: space.min(u64::MAX as u128) as u64,
        });
    }
    if space == 0 {
        return Ok(Vec::new());
    }
    let shape: Vec<usize> = syms.iter().map(|s| power(n, s.input)).collect();
    let build = |values: &[usize]| {
        let mut tables = Vec::with_capacity(shape.len());
        let mut off = 0;
        for &len in &shape {
            tables.push(values[off..off + len].to_vec());
            off += len;
        }
        Structure { size: n, tables }
    };
    let odometer = |prefix: &[usize]| -> Vec<Structure> {
        let mut out = Vec::new();
        let mut values: Vec<usize> = prefix.to_vec();
        values.resize(slots.len(), 0);
        loop {
            let a = build(&values);
            if satisfies(e, &a) {
                out.push(a);
            }
            let mut i = slots.len();
            loop {
                if i == prefix.len() {
                    return out;
                }
                i -= 1;
                values[i] += 1;
                if values[i] < slots[i].1 {
                    break;
                }
                values[i] = 0;
            }
        }
    };
    let prefixes: Vec<Vec<usize>> = match slots.first() {
        Some(&(_, cod)) => (0..cod).map(|v| vec![v]).collect(),
        None => vec![vec![]],
    };
    Ok(par::map(mode, &prefixes, |p| odometer(p)).into_iter().flatten().collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct StructureMorphism {
    pub map: Vec<usize>,
}

/// `h^Y ∘ f_A = f_B ∘ h^X` for every symbol.
pub fn is_morphism(lang: &Language, a: &Structure, b: &Structure, h: &[usize]) -> bool {
    if h.len() != a.size || h.iter().any(|&x| x >= b.size) {
        return false;
    }
    lang.symbols().iter().enumerate().all(|(i, s)| {
        (0..power(a.size, s.input)).all(|code| {
            let x = decode(code, a.size, s.input);
            let hx: Vec<usize> = x.iter().map(|&v| h[v]).collect();
            let lhs: Vec<usize> = a.apply(lang, i, &x).iter().map(|&v| h[v]).collect();
            lhs == b.apply(lang, i, &hx)
        })
    })
}

/// All structure morphisms `A → B` in lexicographic order, by backtracking
/// with propagation along the operation tables.
pub fn enumerate_morphisms(lang: &Language, a: &Structure, b: &Structure) -> Vec<StructureMorphism> {
    let mut out = Vec::new();
    let h = vec![usize::MAX; a.size];
    search_morphisms(lang, a, b, h, &mut |m| {
        out.push(StructureMorphism { map: m.to_vec() });
        true
    });
    out
}

/// Extends a partial map (`usize::MAX` = unassigned) to all morphisms
/// agreeing with it. Stops when `visit` returns false.
pub fn search_morphisms(
    lang: &Language,
    a: &Structure,
    b: &Structure,
    h: Vec<usize>,
    visit: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    let Some(h) = propagate(lang, a, b, h) else {
        return true;
    };
    match h.iter().position(|&x| x == usize::MAX) {
        None => visit(&h),
        Some(i) => {
            for y in 0..b.size {
                let mut next = h.clone();
                next[i] = y;
                if !search_morphisms(lang, a, b, next, visit) {
                    return false;
                }
            }
            true
        }
    }
}

/// Forces values along fully assigned tuples; `None` on a conflict.
fn propagate(lang: &Language, a: &Structure, b: &Structure, mut h: Vec<usize>) -> Option<Vec<usize>> {
    loop {
        let mut changed = false;
        for (i, s) in lang.symbols().iter().enumerate() {
            for code in 0..power(a.size, s.input) {
                let x = decode(code, a.size, s.input);
                if x.iter().any(|&v| h[v] == usize::MAX) {
                    continue;
                }
                let hx: Vec<usize> = x.iter().map(|&v| h[v]).collect();
                let want = b.apply(lang, i, &hx);
                for (o, w) in a.apply(lang, i, &x).into_iter().zip(want) {
                    if h[o] == usize::MAX {
                        h[o] = w;
                        changed = true;
                    } else if h[o] != w {
                        return None;
                    }
                }
            }
        }
        if !changed {
            return Some(h);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equational::theories;

    #[test]
    fn encoding_round_trip() {
        for n in 1..4 {
            for len in 0..4 {
                for code in 0..power(n, len) {
                    assert_eq!(encode(&decode(code, n, len), n), code);
                }
            }
        }
    }

    #[test]
    fn projections_and_identities() {
        let e = theories::involution();
        let a = Structure { size: 2, tables: vec![vec![1, 0]] };
        let proj = Term::Map { images: vec![0], input: 2 };
        assert_eq!(interpret_term(e.language(), &proj, &a).unwrap(), vec![0, 0, 1, 1]);
        assert_eq!(interpret_term(e.language(), &Term::identity(2), &a).unwrap(), vec![0, 1, 2, 3]);
        let ff = Term::comp(Term::sym("f"), vec![Term::sym("f")]);
        assert_eq!(interpret_term(e.language(), &ff, &a).unwrap(), vec![0, 1]);
    }

    #[test]
    fn involution_satisfaction() {
        let e = theories::involution();
        assert!(satisfies(&e, &Structure { size: 2, tables: vec![vec![1, 0]] }));
        let constant = Structure { size: 2, tables: vec![vec![0, 0]] };
        assert_eq!(first_failure(&e, &constant), Some(EquationFailure { equation: 0, point: vec![1] }));
    }

    #[test]
    fn small_counts() {
        let free = theories::unary().free_theory();
        assert_eq!(enumerate_models(&free, 2, 1 << 20, Parallelism::Sequential).unwrap().len(), 4);
        let cd = theories::two_equal_constants();
        assert_eq!(enumerate_models(&cd, 3, 1 << 20, Parallelism::Sequential).unwrap().len(), 3);
        let inv = theories::involution();
        let counts: Vec<usize> = (1..=4)
            .map(|n| enumerate_models(&inv, n, 1 << 20, Parallelism::Parallel).unwrap().len())
            .collect();
        assert_eq!(counts, vec![1, 2, 4, 10]);
    }

    #[test]
    fn morphism_counts() {
        let e = theories::involution();
        let point = Structure { size: 1, tables: vec![vec![0]] };
        let swap = Structure { size: 2, tables: vec![vec![1, 0]] };
        assert_eq!(enumerate_morphisms(e.language(), &point, &point).len(), 1);
        assert_eq!(enumerate_morphisms(e.language(), &swap, &swap).len(), 2);
        assert_eq!(enumerate_morphisms(e.language(), &swap, &point).len(), 1);
        assert_eq!(enumerate_morphisms(e.language(), &point, &swap).len(), 0);
    }
}
