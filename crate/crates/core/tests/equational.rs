use flatlab_core::equational::theories::{self, involution_quotient_map};
use flatlab_core::equational::*;
use flatlab_core::par::Parallelism;
use proptest::prelude::*;

const BUDGET: u64 = 10_000_000;

/// `m: 2 → 1` and `d: 1 → 2`.
fn magma_language() -> Language {
    Language::new(vec![
        FunctionSymbol { name: "m".into(), input: 2, output: 1 },
        FunctionSymbol { name: "d".into(), input: 1, output: 2 },
    ])
    .unwrap()
}

fn power(n: usize, k: usize) -> usize {
    n.pow(k as u32)
}

fn structure() -> impl Strategy<Value = Structure> {
    (1usize..=3).prop_flat_map(|n| {
        let m = prop::collection::vec(0..n, power(n, 2));
        let d = prop::collection::vec(0..power(n, 2), n);
        (Just(n), m, d).prop_map(|(size, m, d)| Structure { size, tables: vec![m, d] })
    })
}

/// Evaluates a (X, Y)-ary table on a tuple of length X.
fn run(table: &[usize], n: usize, y: usize, a: &[usize]) -> Vec<usize> {
    decode(table[encode(a, n)], n, y)
}

fn permute(a: &Structure, lang: &Language, sigma: &[usize]) -> Structure {
    let n = a.size;
    let tables = lang
        .symbols()
        .iter()
        .enumerate()
        .map(|(s, sym)| {
            let mut t = vec![0; power(n, sym.input)];
            for (code, &out) in a.tables[s].iter().enumerate() {
                let x: Vec<usize> = decode(code, n, sym.input).iter().map(|&v| sigma[v]).collect();
                let y: Vec<usize> = decode(out, n, sym.output).iter().map(|&v| sigma[v]).collect();
                t[encode(&x, n)] = encode(&y, n);
            }
            t
        })
        .collect();
    Structure { size: n, tables }
}

proptest! {
    #[test]
    fn powers_act_slice_by_slice(a in structure(), z in 0usize..=2) {
        let lang = magma_language();
        for (name, x, y) in [("m", 2, 1), ("d", 1, 2)] {
            let base = interpret_term(&lang, &Term::sym(name), &a).unwrap();
            let pow = interpret_term(&lang, &Term::pow(Term::sym(name), z), &a).unwrap();
            prop_assert_eq!(arity_of_term(&lang, &Term::pow(Term::sym(name), z)).unwrap(), (z * x, z * y));
            for code in 0..power(a.size, z * x) {
                let input = decode(code, a.size, z * x);
                let want: Vec<usize> = input.chunks(x.max(1)).take(z).flat_map(|s| run(&base, a.size, y, s)).collect();
                prop_assert_eq!(run(&pow, a.size, z * y, &input), want);
            }
        }
    }

    #[test]
    fn substitution_is_table_composition(a in structure()) {
        // m ∘ [m, 1] is (2 + 1, 1)-ary: m(m(x0, x1), x2)
        let lang = magma_language();
        let t = Term::comp(Term::sym("m"), vec![Term::sym("m"), Term::identity(1)]);
        prop_assert_eq!(arity_of_term(&lang, &t).unwrap(), (3, 1));
        let table = interpret_term(&lang, &t, &a).unwrap();
        let m = &a.tables[0];
        for code in 0..power(a.size, 3) {
            let x = decode(code, a.size, 3);
            let inner = run(m, a.size, 1, &x[..2])[0];
            prop_assert_eq!(run(&table, a.size, 1, &x), run(m, a.size, 1, &[inner, x[2]]));
        }
    }

    #[test]
    fn satisfaction_is_invariant_under_relabeling(a in structure(), shift in 0usize..3) {
        let lang = magma_language();
        let n = a.size;
        let sigma: Vec<usize> = (0..n).map(|i| (i + shift) % n).collect();
        let b = permute(&a, &lang, &sigma);
        prop_assert!(is_morphism(&lang, &a, &b, &sigma));
        let comm = Theory::new(lang.clone(), vec![Equation {
            lhs: Term::sym("m"),
            rhs: Term::comp(Term::sym("m"), vec![Term::Map { images: vec![1, 0], input: 2 }]),
        }]).unwrap();
        let split = Theory::new(lang.clone(), vec![Equation {
            lhs: Term::comp(Term::sym("m"), vec![Term::sym("d")]),
            rhs: Term::identity(1),
        }]).unwrap();
        for e in [comm, split] {
            prop_assert_eq!(satisfies(&e, &a), satisfies(&e, &b));
        }
    }
}

#[test]
fn free_algebra_on_one_generator_represents_the_carrier() {
    for e in [theories::involution(), theories::pointed_set(), theories::two_equal_constants()] {
        let free = match free_structure_bounded(&e, 1, 1 << 12).unwrap() {
            FreeOutcome::Stabilized(f) => f,
            FreeOutcome::Unbounded { trace } => panic!("free model grew: {trace:?}"),
        };
        for n in 0..=3 {
            for a in enumerate_models(&e, n, BUDGET, Parallelism::Sequential).unwrap() {
                let homs = enumerate_morphisms(e.language(), &free.structure, &a);
                assert_eq!(homs.len(), a.size);
            }
        }
    }
}

#[test]
fn unary_free_model_does_not_stabilize() {
    assert!(matches!(
        free_structure_bounded(&theories::unary(), 1, 64).unwrap(),
        FreeOutcome::Unbounded { .. }
    ));
}

#[test]
fn orthogonality_picks_out_involutions() {
    let unary = theories::unary();
    let involution = theories::involution();
    for n in 0..=3 {
        let (lang, p, w, h) = involution_quotient_map(n);
        for a in enumerate_models(&unary, n, BUDGET, Parallelism::Sequential).unwrap() {
            assert_eq!(orthogonality_check(&lang, &a, &p, &w, &h), satisfies(&involution, &a), "{a:?}");
        }
    }
}

#[test]
fn chains_of_inclusions_stay_models() {
    // an involution grown one fixed point at a time
    let e = theories::involution();
    let objects: Vec<Structure> = (1..=4)
        .map(|n| Structure {
            size: n,
            tables: vec![(0..n).collect()],
        })
        .collect();
    let maps: Vec<StructureMorphism> = (1..4).map(|n| StructureMorphism { map: (0..n).collect() }).collect();
    let colim = chain_colimit(&e, &objects, &maps).unwrap();
    assert!(colim.is_model);
    assert_eq!(colim.structure.size, 4);
}

#[test]
fn maybe_algebras_are_pointed_sets() {
    let t = MonadTable::maybe(6);
    for n in 0..=5 {
        let models = enumerate_models(&theories::pointed_set(), n, BUDGET, Parallelism::Sequential).unwrap();
        assert_eq!(monad_algebra_count(&t, n).unwrap(), models.len());
    }
}
