//! The bundled verification suite behind `verify-paper` and the
//! `acceptance` test target. Each criterion recomputes its expected values
//! with an independent oracle instead of reading them from a table.

use std::sync::Arc;
use std::time::Instant;

use flatlab_core::cocompletion::{bounded_closure, coproduct_decomposition, reflexive_presentation, ClosureConfig};
use flatlab_core::doctrine::{
    category_corpus, characterize_flat_examples, is_d_filtered, DoctrineError, is_flat, is_sifted, recheck_witness,
    shape_universe, weak_soundness_search, weighted_commutation_refute, FlatMode, SearchConfig, ShapeClass,
    ShapeKeyword, Verdict, Witness,
};
use flatlab_core::equational::{
    chain_colimit, enumerate_models, enumerate_morphisms, is_morphism, monad_algebra_count, orthogonality_check,
    reflexive_coequalizer_of_models, satisfies, theories, MonadTable, Structure, StructureMorphism, Theory,
};
use flatlab_core::fincat::{families, FinCategory};
use flatlab_core::par::Parallelism;
use flatlab_core::presheaf::{
    colimit, density_presentation, functors_up_to_iso, is_natural, limit, presheaf_iso, random_functor,
    verify_colimit, verify_limit, SetFunctor, Variance, DEFAULT_UNIVERSALITY_THRESHOLD,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::args::Profile;
use crate::oracles;
use crate::report::strip_timing;

pub const TITLES: [&str; 10] = [
    "limit and colimit universality",
    "terminal weight coherence",
    "two-path flatness agreement",
    "sifted shortcut soundness",
    "flat-class characterizations",
    "soundness searches",
    "reflexive presentations and component decompositions",
    "density presentations",
    "universal algebra suite",
    "determinism",
];

#[derive(Clone, Debug, Serialize)]
pub struct CriterionResult {
    pub id: usize,
    pub title: &'static str,
    pub pass: bool,
    pub summary: String,
    pub detail: Value,
    pub elapsed_ms: u64,
}

impl CriterionResult {
    /// `PASS  3 two-path flatness agreement: ...`
    pub fn line(&self) -> String {
        format!(
            "{} {:>2} {}: {}",
            if self.pass { "PASS" } else { "FAIL" },
            self.id,
            self.title,
            self.summary
        )
    }
}

/// Sizes of the generated inputs.
#[derive(Clone, Copy, Debug)]
struct Knobs {
    diagrams: usize,
    weights: usize,
    presheaves: usize,
    value_bound: usize,
    algebra_size: usize,
    /// Diagrams the direct oracle may try per (category, class) pair.
    pair_budget: u64,
}

fn knobs(profile: Profile) -> Knobs {
    match profile {
        Profile::Desk => Knobs {
            diagrams: 500,
            weights: 200,
            presheaves: 100,
            value_bound: 2,
            algebra_size: 4,
            pair_budget: 200_000,
        },
        Profile::Deep => Knobs {
            diagrams: 2000,
            weights: 400,
            presheaves: 400,
            value_bound: 3,
            algebra_size: 5,
            pair_budget: 20_000_000,
        },
    }
}

fn cfg(value_bound: usize, mode: Parallelism) -> SearchConfig {
    SearchConfig {
        value_bound,
        parallelism: mode,
        ..SearchConfig::default()
    }
}

fn arc(c: FinCategory) -> Arc<FinCategory> {
    Arc::new(c)
}

type Check = (bool, String, Value);

fn run_one(id: usize, profile: Profile, mode: Parallelism) -> CriterionResult {
    let start = Instant::now();
    let k = knobs(profile);
    let (pass, summary, detail) = match id {
        1 => universality(k),
        2 => terminal_weight(k, mode),
        3 => two_paths(k, mode),
        4 => sifted_shortcut(mode),
        5 => characterizations(k, mode),
        6 => soundness(k, mode),
        7 => sharply_less(mode),
        8 => density(k),
        9 => algebra(k, mode),
        10 => determinism(&[], profile, mode),
        _ => (false, format!("no criterion {id}"), Value::Null),
    };
    CriterionResult {
        id,
        title: TITLES.get(id.wrapping_sub(1)).copied().unwrap_or("unknown"),
        pass,
        summary,
        detail,
        elapsed_ms: start.elapsed().as_millis() as u64,
    }
}

/// Runs the selected criteria (all when `only` is empty) in order.
/// Criterion 10 replays 1-9 once and compares against the results of this
/// run, computing any of them that were not selected.
pub fn run_suite(profile: Profile, only: &[usize], mode: Parallelism) -> Vec<CriterionResult> {
    let ids: Vec<usize> = if only.is_empty() { (1..=10).collect() } else { only.to_vec() };
    let mut out: Vec<CriterionResult> = Vec::new();
    for id in ids {
        if id != 10 {
            out.push(run_one(id, profile, mode));
            continue;
        }
        let start = Instant::now();
        let (pass, summary, detail) = determinism(&out, profile, mode);
        out.push(CriterionResult {
            id,
            title: TITLES[9],
            pass,
            summary,
            detail,
            elapsed_ms: start.elapsed().as_millis() as u64,
        });
    }
    out
}

fn universality(k: Knobs) -> Check {
    let shapes: Vec<_> = shape_universe(4)
        .into_iter()
        .filter(|(_, s)| !s.is_empty())
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let (mut diagrams, mut verified, mut size_mismatch) = (0, 0, 0);
    let mut failures = Vec::new();
    let mut i = 0;
    while diagrams < k.diagrams && i < k.diagrams * 10 {
        let (name, shape) = &shapes[i % shapes.len()];
        i += 1;
        let Some(f) = random_functor(shape, Variance::Covariant, 3 * shape.num_objects(), &mut rng, 200) else {
            continue;
        };
        diagrams += 1;
        let (l, c) = (limit(&f), colimit(&f));
        let ul = verify_limit(&f, &l, DEFAULT_UNIVERSALITY_THRESHOLD);
        let uc = verify_colimit(&f, &c, DEFAULT_UNIVERSALITY_THRESHOLD);
        if l.size() != oracles::compatible_families(&f) || c.size() != oracles::colimit_size(&f) {
            size_mismatch += 1;
        }
        if ul.is_verified() && uc.is_verified() {
            verified += 1;
        } else if failures.len() < 5 {
            failures.push(json!({ "shape": name, "limit": ul, "colimit": uc }));
        }
    }
    let pass = diagrams >= k.diagrams && verified == diagrams && size_mismatch == 0;
    (
        pass,
        format!("{verified}/{diagrams} diagrams verified, {size_mismatch} size mismatches"),
        json!({ "diagrams": diagrams, "verified": verified, "size_mismatches": size_mismatch, "failures": failures }),
    )
}

fn terminal_weight(k: Knobs, mode: Parallelism) -> Check {
    let cfg = cfg(k.value_bound, mode);
    let oracle_cfg = SearchConfig {
        budget: k.pair_budget,
        ..cfg.clone()
    };
    let corpus = category_corpus(4, &cfg);
    let (mut pairs, mut refuted_both, mut unrefuted, mut partial) = (0, 0, 0, 0);
    let mut bad = Vec::new();
    let mut bad_unrefuted = Vec::new();
    for (name, c) in &corpus {
        let delta = SetFunctor::terminal(c.clone(), Variance::Contravariant);
        for kw in ShapeKeyword::ALL {
            let d = kw.with_bound(3);
            let filtered = match is_d_filtered(c, &d, &cfg) {
                Ok(v) => v,
                Err(e) => return (false, format!("{name} {d}: {e}"), Value::Null),
            };
            pairs += 1;
            // a search cut off by the budget found no refutation
            let mut flat = match is_flat(&delta, &d, &oracle_cfg, FlatMode::Direct) {
                Ok(v) => Some(v),
                Err(DoctrineError::BudgetExceeded { .. }) => None,
                Err(e) => return (false, format!("{name} {d}: {e}"), Value::Null),
            };
            // negatives get one more value before counting as unrefuted
            if !filtered.leaning() && !flat.as_ref().is_some_and(Verdict::is_refuted) {
                let wider = SearchConfig {
                    value_bound: k.value_bound + 1,
                    ..oracle_cfg.clone()
                };
                match is_flat(&delta, &d, &wider, FlatMode::Direct) {
                    Ok(v) => flat = Some(v),
                    Err(DoctrineError::BudgetExceeded { .. }) => {}
                    Err(e) => return (false, format!("{name} {d}: {e}"), Value::Null),
                }
                if !flat.as_ref().is_some_and(Verdict::is_refuted) {
                    bad_unrefuted.push(json!({ "category": name, "class": d.to_string(), "filtered": filtered.label() }));
                }
            }
            match &flat {
                Some(f) if filtered.contradicts(f) => {
                    bad.push(json!({ "category": name, "class": d.to_string(), "filtered": filtered.label(), "flat": f.label() }));
                }
                Some(f) if !filtered.leaning() && f.is_refuted() => refuted_both += 1,
                _ if !filtered.leaning() => unrefuted += 1,
                None => partial += 1,
                Some(_) => {}
            }
        }
    }
    (
        bad.is_empty() && bad_unrefuted.is_empty(),
        format!(
            "{} categories, {pairs} pairs, {} contradictions ({refuted_both} negatives refuted by the oracle, {unrefuted} unrefuted, {partial} positives searched to the {}-diagram budget)",
            corpus.len(),
            bad.len(),
            k.pair_budget
        ),
        json!({
            "categories": corpus.len(),
            "pairs": pairs,
            "contradictions": bad,
            "negatives_refuted": refuted_both,
            "negatives_unrefuted": unrefuted,
            "unrefuted": bad_unrefuted,
            "positives_partial": partial,
            "pair_budget": k.pair_budget,
        }),
    )
}

/// Contravariant weights over the curated categories with at most three
/// objects, carriers at most 2, one per isomorphism class.
fn weight_corpus(limit: usize) -> Vec<(String, SetFunctor)> {
    let mut out = Vec::new();
    for (name, c) in families::curated() {
        if c.num_objects() > 3 || c.is_empty() {
            continue;
        }
        let c = arc(c);
        for (i, m) in functors_up_to_iso(&c, Variance::Contravariant, 2).into_iter().enumerate() {
            if out.len() == limit {
                return out;
            }
            out.push((format!("{name}#{i}"), m));
        }
    }
    out
}

fn two_paths(k: Knobs, mode: Parallelism) -> Check {
    let cfg = cfg(k.value_bound, mode);
    let weights = weight_corpus(usize::MAX);
    let classes = [
        ShapeClass::FiniteDiscreteNonempty(2),
        ShapeClass::FiniteConnected(2),
        ShapeClass::FiniteNonempty(2),
        ShapeClass::AllFinite(2),
    ];
    let (mut compared, mut contradictions, mut refuted_both) = (0, 0, 0);
    let mut bad = Vec::new();
    for (i, (name, m)) in weights.iter().enumerate() {
        let d = &classes[i % classes.len()];
        let (a, b) = match (
            is_flat(m, d, &cfg, FlatMode::Criterion),
            is_flat(m, d, &cfg, FlatMode::Direct),
        ) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(e), _) | (_, Err(e)) => return (false, format!("{name} {d}: {e}"), Value::Null),
        };
        compared += 1;
        if a.contradicts(&b) {
            contradictions += 1;
            bad.push(json!({ "weight": name, "class": d.to_string(), "criterion": a.label(), "direct": b.label() }));
        }
        if a.is_refuted() && b.is_refuted() || !a.leaning() && b.is_refuted() {
            refuted_both += 1;
        }
    }
    (
        compared >= k.weights && contradictions == 0,
        format!("{compared} weights, {contradictions} contradictions, {refuted_both} non-flat on both paths"),
        json!({ "weights": compared, "contradictions": bad, "non_flat_both": refuted_both }),
    )
}

fn sifted_shortcut(mode: Parallelism) -> Check {
    let corpus = category_corpus(3, &cfg(2, mode));
    let discrete = ShapeClass::FiniteDiscrete(3).shapes();
    let (mut sifted, mut not_sifted, mut failures) = (0, 0, Vec::new());
    for (name, c) in corpus.iter().filter(|(_, c)| c.num_morphisms() <= 8) {
        if is_sifted(c).leaning() {
            sifted += 1;
            match weighted_commutation_refute(c, None, &discrete, &cfg(2, mode)) {
                Ok(Verdict::Refuted { .. }) => failures.push(json!({ "category": name, "problem": "sifted but refuted" })),
                Ok(_) => {}
                Err(e) => failures.push(json!({ "category": name, "problem": e.to_string() })),
            }
        } else {
            not_sifted += 1;
            let refuted = (1..=3).find_map(|vb| match weighted_commutation_refute(c, None, &discrete, &cfg(vb, mode)) {
                Ok(Verdict::Refuted { witness }) => Some((vb, witness)),
                _ => None,
            });
            match refuted {
                Some((_, w)) => {
                    let Witness::Commutation(w) = *w else { unreachable!() };
                    if !matches!(recheck_witness(&w), Ok((_, _, false))) {
                        failures.push(json!({ "category": name, "problem": "witness does not re-validate" }));
                    }
                }
                None => failures.push(json!({ "category": name, "problem": "not sifted but never refuted" })),
            }
        }
    }
    (
        failures.is_empty(),
        format!("{sifted} sifted never refuted, {not_sifted} non-sifted all refuted, {} failures", failures.len()),
        json!({ "sifted": sifted, "not_sifted": not_sifted, "failures": failures }),
    )
}

fn characterizations(k: Knobs, mode: Parallelism) -> Check {
    let cfg = cfg(k.value_bound, mode);
    let weights = weight_corpus(usize::MAX);
    let mut rows = Vec::new();
    let mut pass = true;
    for d in [
        ShapeClass::FiniteConnected(2),
        ShapeClass::FiniteNonempty(2),
        ShapeClass::FiniteDiscreteNonempty(2),
    ] {
        match characterize_flat_examples(&d, &weights, &cfg) {
            Ok(r) => {
                pass &= r.discrepancies == 0;
                let disagreements: Vec<_> = r.rows.iter().filter(|row| !row.agree).collect();
                rows.push(json!({
                    "class": r.class,
                    "agreements": r.agreements,
                    "discrepancies": r.discrepancies,
                    "disagreeing": disagreements,
                }));
            }
            Err(e) => return (false, format!("{d}: {e}"), Value::Null),
        }
    }
    let summary = rows
        .iter()
        .map(|r| format!("{} {}/{}", r["class"].as_str().unwrap_or(""), r["agreements"], weights.len()))
        .collect::<Vec<_>>()
        .join(", ");
    (pass, summary, json!({ "weights": weights.len(), "classes": rows }))
}

fn soundness(k: Knobs, mode: Parallelism) -> Check {
    let cfg = SearchConfig {
        category_bound: 4,
        ..cfg(k.value_bound, mode)
    };
    let mut rows = Vec::new();
    let mut pass = true;
    for d in [
        ShapeClass::TerminalOnly,
        ShapeClass::FiniteDiscreteNonempty(3),
        ShapeClass::FiniteConnected(3),
        ShapeClass::AllFinite(3),
    ] {
        match weak_soundness_search(&d, &cfg) {
            Ok(v) => {
                pass &= matches!(v, Verdict::ConsistentUpTo { .. });
                rows.push(json!({ "class": d.to_string(), "verdict": v }));
            }
            Err(e) => return (false, format!("{d}: {e}"), Value::Null),
        }
    }
    let summary = rows
        .iter()
        .map(|r| format!("{} {}", r["class"].as_str().unwrap_or(""), r["verdict"]["verdict"].as_str().unwrap_or("")))
        .collect::<Vec<_>>()
        .join(", ");
    (pass, summary, json!(rows))
}

fn sharply_less(mode: Parallelism) -> Check {
    let categories = [
        ("terminal", families::terminal()),
        ("discrete2", families::discrete(2)),
        ("arrow", families::walking_arrow()),
        ("z2", families::cyclic_group(2)),
        ("idempotent", families::idempotent_monoid()),
    ];
    let class = ShapeClass::AllFinite(3);
    let ccfg = ClosureConfig {
        parallelism: mode,
        ..ClosureConfig::new(2, 4)
    };
    let (mut members, mut presented) = (0, 0);
    let mut problems = Vec::new();
    let mut per_category = Vec::new();
    for (name, c) in categories {
        let c = arc(c);
        let cl = match bounded_closure(&c, &class, &ccfg) {
            Ok(cl) => cl,
            Err(e) => return (false, format!("closure of {name}: {e}"), Value::Null),
        };
        per_category.push(json!({ "category": name, "members": cl.members.len(), "stage_sizes": cl.stage_sizes }));
        for m in &cl.members {
            members += 1;
            let ok = reflexive_presentation(&m.presheaf).is_ok_and(|r| {
                r.laws_hold()
                    && is_natural(&r.presented, &m.presheaf, &r.iso)
                    && r.iso.iter().all(|comp| {
                        let mut seen = comp.clone();
                        seen.sort();
                        seen.dedup();
                        seen.len() == comp.len()
                    })
            });
            if ok {
                presented += 1;
            } else {
                problems.push(json!({ "category": name, "carriers": m.presheaf.carriers() }));
            }
        }
    }
    let (mut diagrams, mut decomposed) = (0, 0);
    for (name, shape) in shape_universe(4) {
        if shape.is_empty() || shape.is_connected() {
            continue;
        }
        for f in functors_up_to_iso(&shape, Variance::Covariant, 2) {
            diagrams += 1;
            let ok = coproduct_decomposition(&f).is_ok_and(|d| d.verified && d.total == oracles::colimit_size(&f));
            if ok {
                decomposed += 1;
            } else {
                problems.push(json!({ "shape": name, "carriers": f.carriers() }));
            }
        }
    }
    (
        presented == members && decomposed == diagrams && members > 0 && diagrams > 0,
        format!("{presented}/{members} closure members presented, {decomposed}/{diagrams} disconnected diagrams decomposed"),
        json!({
            "closures": per_category,
            "members": members,
            "presented": presented,
            "diagrams": diagrams,
            "decomposed": decomposed,
            "problems": problems,
        }),
    )
}

fn density(k: Knobs) -> Check {
    let bases: Vec<(String, Arc<FinCategory>)> = families::curated()
        .into_iter()
        .filter(|(_, c)| !c.is_empty() && c.num_objects() <= 3)
        .map(|(n, c)| (n, arc(c)))
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let (mut tested, mut iso) = (0, 0);
    let mut problems = Vec::new();
    let mut i = 0;
    while tested < k.presheaves && i < k.presheaves * 10 {
        let (name, base) = &bases[i % bases.len()];
        i += 1;
        let Some(p) = random_functor(base, Variance::Contravariant, 6, &mut rng, 200) else { continue };
        tested += 1;
        let ok = density_presentation(&p)
            .map(|e| e.evaluate(base))
            .is_ok_and(|q| matches!(presheaf_iso(&q, &p), Ok(Some(_))));
        if ok {
            iso += 1;
        } else {
            problems.push(json!({ "base": name, "carriers": p.carriers() }));
        }
    }
    (
        tested >= k.presheaves && iso == tested,
        format!("{iso}/{tested} presheaves re-evaluate isomorphic"),
        json!({ "tested": tested, "isomorphic": iso, "problems": problems }),
    )
}

/// Submodel of `B × B` on pairs identified by `h`, with its projections and
/// diagonal.
fn kernel_pair(lang_theory: &Theory, b: &Structure, h: &[usize]) -> (Structure, StructureMorphism, StructureMorphism, StructureMorphism) {
    let pairs: Vec<(usize, usize)> = (0..b.size)
        .flat_map(|x| (0..b.size).map(move |y| (x, y)))
        .filter(|&(x, y)| h[x] == h[y])
        .collect();
    let index = |p: (usize, usize)| pairs.iter().position(|&q| q == p).unwrap();
    let lang = lang_theory.language();
    // unary languages only: f acts componentwise
    let tables = (0..lang.symbols().len())
        .map(|s| {
            pairs
                .iter()
                .map(|&(x, y)| index((b.apply(lang, s, &[x])[0], b.apply(lang, s, &[y])[0])))
                .collect()
        })
        .collect();
    let a = Structure {
        size: pairs.len(),
        tables,
    };
    let d0 = StructureMorphism { map: pairs.iter().map(|p| p.0).collect() };
    let d1 = StructureMorphism { map: pairs.iter().map(|p| p.1).collect() };
    let s = StructureMorphism { map: (0..b.size).map(|x| index((x, x))).collect() };
    (a, d0, d1, s)
}

fn algebra(k: Knobs, mode: Parallelism) -> Check {
    let mut checks = Vec::new();
    let mut pass = true;
    let mut note = |name: &str, ok: bool, detail: Value| {
        pass &= ok;
        checks.push(json!({ "check": name, "pass": ok, "detail": detail }));
    };

    let inv = theories::involution();
    let counts: Vec<(usize, usize)> = (1..=4)
        .map(|n| {
            let lib = enumerate_models(&inv, n, 1 << 24, mode).map_or(usize::MAX, |m| m.len());
            (lib, oracles::involution_count(n))
        })
        .collect();
    note(
        "involution model counts",
        counts.iter().all(|(a, b)| a == b) && counts.iter().map(|c| c.0).eq([1, 2, 4, 10]),
        json!(counts),
    );

    let (mut pairs, mut good) = (0, 0);
    for e in [theories::involution(), theories::eventually_periodic(1, 1)] {
        let models: Vec<Structure> = (1..=3)
            .flat_map(|n| enumerate_models(&e, n, 1 << 20, mode).unwrap_or_default())
            .collect();
        for b in &models {
            for c in &models {
                for h in enumerate_morphisms(e.language(), b, c) {
                    let (a, d0, d1, s) = kernel_pair(&e, b, &h.map);
                    pairs += 1;
                    let Ok(q) = reflexive_coequalizer_of_models(&e, &a, b, &d0, &d1, &s, 2) else { continue };
                    let oracle = oracles::set_colimit(&[a.size, b.size], &[(0, 1, d0.map.clone()), (0, 1, d1.map.clone())]);
                    let carrier_ok = q.colimit.legs[1] == oracle[a.size..];
                    if q.colimit.is_model && q.universal && carrier_ok && satisfies(&e, &a) {
                        good += 1;
                    }
                }
            }
        }
    }
    note("reflexive coequalizers of models", pairs > 0 && good == pairs, json!({ "pairs": pairs, "good": good }));

    let (mut chains, mut good) = (0, 0);
    for e in [theories::involution(), theories::eventually_periodic(1, 1)] {
        let by_size: Vec<Vec<Structure>> = (1..=4)
            .map(|n| enumerate_models(&e, n, 1 << 20, mode).unwrap_or_default())
            .collect();
        // strictly growing chains of injective morphisms, two to four objects
        let mut stack: Vec<(Vec<Structure>, Vec<StructureMorphism>)> =
            by_size.iter().flatten().map(|s| (vec![s.clone()], vec![])).collect();
        while let Some((objs, maps)) = stack.pop() {
            if objs.len() >= 2 {
                chains += 1;
                let sizes: Vec<usize> = objs.iter().map(|o| o.size).collect();
                let arrows: Vec<(usize, usize, Vec<usize>)> =
                    maps.iter().enumerate().map(|(i, m)| (i, i + 1, m.map.clone())).collect();
                let oracle = oracles::set_colimit(&sizes, &arrows);
                let carrier = oracle.iter().max().map_or(0, |m| m + 1);
                if let Ok(c) = chain_colimit(&e, &objs, &maps) {
                    if c.is_model && c.structure.size == carrier && satisfies(&e, &c.structure) {
                        good += 1;
                    }
                }
            }
            if objs.len() == 4 {
                continue;
            }
            let last = objs.last().unwrap();
            for next in by_size.iter().skip(last.size).flatten() {
                for h in enumerate_morphisms(e.language(), last, next) {
                    let mut image = h.map.clone();
                    image.sort();
                    image.dedup();
                    if image.len() == h.map.len() {
                        let (mut o, mut m) = (objs.clone(), maps.clone());
                        o.push(next.clone());
                        m.push(h);
                        stack.push((o, m));
                    }
                }
            }
        }
    }
    note("chain colimits of models", chains > 0 && good == chains, json!({ "chains": chains, "good": good }));

    let top = k.algebra_size.max(5);
    let maybe = MonadTable::maybe(top + 1);
    let laws = maybe.check_laws(3).is_ok();
    let counts: Vec<(usize, usize)> = (0..=top)
        .map(|n| {
            let algebras = monad_algebra_count(&maybe, n).unwrap_or(usize::MAX);
            let models = enumerate_models(&theories::pointed_set(), n, 1 << 20, mode).map_or(usize::MAX, |m| m.len());
            (algebras, models)
        })
        .collect();
    note(
        "maybe-monad algebras against pointed sets",
        laws && counts.iter().all(|(a, b)| a == b),
        json!(counts),
    );

    let unary = theories::unary();
    let (mut structures, mut agree) = (0, 0);
    for n in 1..=k.algebra_size {
        let (lang, p, w, h) = theories::involution_quotient_map(n);
        let ok_map = is_morphism(&lang, &p, &w, &h.map);
        for a in enumerate_models(&unary, n, 1 << 20, mode).unwrap_or_default() {
            structures += 1;
            if ok_map && orthogonality_check(&lang, &a, &p, &w, &h) == satisfies(&inv, &a) {
                agree += 1;
            }
        }
    }
    note(
        "orthogonality classifies involutions",
        structures > 0 && agree == structures,
        json!({ "structures": structures, "agree": agree }),
    );

    let failed: Vec<&str> = checks
        .iter()
        .filter(|c| c["pass"] == json!(false))
        .filter_map(|c| c["check"].as_str())
        .collect();
    let summary = if failed.is_empty() {
        format!("{} checks pass", checks.len())
    } else {
        format!("failing: {}", failed.join(", "))
    };
    (pass, summary, json!(checks))
}

fn determinism(done: &[CriterionResult], profile: Profile, mode: Parallelism) -> Check {
    let first: Vec<Value> = (1..=9)
        .map(|id| match done.iter().find(|c| c.id == id) {
            Some(c) => strip_timing(&json!(c)),
            None => strip_timing(&json!(run_one(id, profile, mode))),
        })
        .collect();
    let second: Vec<Value> = (1..=9).map(|id| strip_timing(&json!(run_one(id, profile, mode)))).collect();
    let differing: Vec<usize> = (0..9).filter(|&i| first[i] != second[i]).map(|i| i + 1).collect();
    (
        differing.is_empty(),
        if differing.is_empty() {
            "criteria 1-9 replayed byte-identical".to_string()
        } else {
            format!("criteria {differing:?} differ between runs")
        },
        json!({ "differing": differing }),
    )
}
