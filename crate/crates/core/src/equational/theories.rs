//! Bundled theories and maps.

use super::free::{extend_from_generators, free_structure_bounded, FreeOutcome};
use super::{Equation, FunctionSymbol, Language, Structure, StructureMorphism, Term, Theory};

fn unary_language() -> Language {
    Language::new(vec![FunctionSymbol {
        name: "f".into(),
        input: 1,
        output: 1,
    }])
    .unwrap()
}

/// `f^k` as a `(1, 1)`-ary term.
pub fn iterate(f: &str, k: usize) -> Term {
    let mut t = Term::identity(1);
    for _ in 0..k {
        t = Term::comp(Term::sym(f), vec![t]);
    }
    t
}

/// One unary symbol, no equations.
pub fn unary() -> Theory {
    Theory::new(unary_language(), vec![]).unwrap()
}

/// `f(f(x)) = x`.
pub fn involution() -> Theory {
    let eq = Equation {
        lhs: Term::comp(Term::sym("f"), vec![Term::sym("f")]),
        rhs: Term::identity(1),
    };
    Theory::new(unary_language(), vec![eq]).unwrap()
}

/// `f^(t + p) = f^t`.
pub fn eventually_periodic(t: usize, p: usize) -> Theory {
    let eq = Equation {
        lhs: iterate("f", t + p),
        rhs: iterate("f", t),
    };
    Theory::new(unary_language(), vec![eq]).unwrap()
}

/// One constant, no equations.
pub fn pointed_set() -> Theory {
    let lang = Language::new(vec![FunctionSymbol {
        name: "c".into(),
        input: 0,
        output: 1,
    }])
    .unwrap();
    Theory::new(lang, vec![]).unwrap()
}

/// Constants `c, d` with `c = d`.
pub fn two_equal_constants() -> Theory {
    let sym = |name: &str| FunctionSymbol {
        name: name.into(),
        input: 0,
        output: 1,
    };
    let lang = Language::new(vec![sym("c"), sym("d")]).unwrap();
    let eq = Equation {
        lhs: Term::sym("c"),
        rhs: Term::sym("d"),
    };
    Theory::new(lang, vec![eq]).unwrap()
}

fn lcm_upto(n: usize) -> usize {
    fn gcd(a: usize, b: usize) -> usize {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    (1..=n).fold(1, |acc, k| acc / gcd(acc, k) * k)
}

/// The quotient `P → W` from the free unary structure on one generator to
/// the free involution on one generator. The free unary structure is
/// infinite; `P` is its quotient by `f^(n + lcm(1..n)) = f^n`, which every
/// unary structure with at most `n` elements satisfies, so `Hom(P, A) ≅ A`
/// for those. On them, orthogonality to this map is being an involution.
/// `n` is raised to 2 so that the period is even and the map to `W` exists.
pub fn involution_quotient_map(n: usize) -> (Language, Structure, Structure, StructureMorphism) {
    let n = n.max(2);
    let lang = unary_language();
    let free = |e: &Theory| match free_structure_bounded(e, 1, 1 << 16).expect("small") {
        FreeOutcome::Stabilized(f) => f,
        FreeOutcome::Unbounded { .. } => unreachable!("eventually periodic unary theories stabilize"),
    };
    let p = free(&eventually_periodic(n, lcm_upto(n)));
    let w = free(&involution());
    let h = extend_from_generators(&lang, &p.structure, &p.insertion, &w.structure, &w.insertion)
        .expect("involutions are eventually periodic");
    (lang, p.structure, w.structure, h)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn periods() {
        assert_eq!(lcm_upto(4), 12);
        let (_, p, w, h) = involution_quotient_map(4);
        assert_eq!(p.size, 16);
        assert_eq!(w.size, 2);
        assert_eq!(h.map.len(), 16);
        for n in 0..=3 {
            let (lang, p, w, h) = involution_quotient_map(n);
            assert!(crate::equational::is_morphism(&lang, &p, &w, &h.map));
        }
    }
}
