use std::sync::Arc;

use flatlab_core::cocompletion::{
    bounded_closure, coproduct_decomposition, is_cauchy_weight, reflexive_presentation, ClosureConfig,
};
use flatlab_core::doctrine::{
    cocompleteness_failure, is_d_filtered, is_filtered, is_flat, is_sifted, recheck_witness,
    weak_soundness_search, weighted_commutation_refute, FlatMode, SearchConfig, ShapeClass, ShapeKeyword, Verdict,
    Witness,
};
use flatlab_core::equational::{
    enumerate_models, enumerate_morphisms, free_structure_bounded, monad_algebras, orthogonality_check, satisfies,
    theories, FreeOutcome, Structure, StructureMorphism,
};
use flatlab_core::fincat::FinCategory;
use flatlab_core::par::Parallelism;
use flatlab_core::presheaf::{
    category_of_elements, colimit, limit, verify_colimit, verify_limit, weighted_colimit, SetFunctor, Universality,
    Variance, DEFAULT_UNIVERSALITY_THRESHOLD,
};
use serde::Deserialize;
use serde_json::{json, Value};

use crate::args::{Command, Flags, Mode};
use crate::load::{self, Input, InputDigest};
use crate::report::{CliError, Output, Status};
use crate::verify;

/// Loaded inputs, in command-line order.
#[derive(Default)]
pub struct Inputs {
    pub digests: Vec<InputDigest>,
}

impl Inputs {
    fn read(&mut self, path: &str) -> Result<Input, CliError> {
        let input = load::read(path)?;
        self.digests.push(input.digest.clone());
        Ok(input)
    }

    fn category(&mut self, path: &str) -> Result<Arc<FinCategory>, CliError> {
        let input = self.read(path)?;
        load::category(&input)
    }

    fn functor(&mut self, path: &str, base: &Arc<FinCategory>, variance: Variance) -> Result<SetFunctor, CliError> {
        let input = self.read(path)?;
        let f = load::functor(&input, base)?;
        if f.variance() != variance {
            return Err(CliError::input(path, None, format!("expected a {variance:?} functor").to_lowercase()));
        }
        Ok(f)
    }
}

pub fn search_config(flags: &Flags) -> SearchConfig {
    SearchConfig {
        value_bound: flags.value_bound,
        shape_bound: flags.bound,
        category_bound: flags.category_bound,
        budget: flags.budget,
        parallelism: parallelism(flags),
        ..SearchConfig::default()
    }
}

fn parallelism(flags: &Flags) -> Parallelism {
    if flags.sequential {
        Parallelism::Sequential
    } else {
        Parallelism::Parallel
    }
}

fn shape_class(flags: &Flags, inputs: &mut Inputs) -> Result<ShapeClass, CliError> {
    if let Some(files) = flags.class.strip_prefix("explicit:") {
        let mut shapes = Vec::new();
        for f in files.split(',').filter(|f| !f.is_empty()) {
            shapes.push((f.to_string(), inputs.category(f)?));
        }
        return Ok(ShapeClass::Explicit(shapes));
    }
    let kw: ShapeKeyword = flags.class.parse().map_err(CliError::Usage)?;
    Ok(kw.with_bound(flags.bound))
}

fn verdict_output(question: &str, v: Verdict) -> Output {
    let status = Status::of_verdict(&v);
    Output {
        verdicts: vec![json!({ "question": question, "verdict": v })],
        status: Some(status),
        ..Output::default()
    }
}

/// Re-validates the witnesses of every verdict in `out`.
fn recheck(out: &mut Output, class: Option<&ShapeClass>, cfg: &SearchConfig) -> Result<(), CliError> {
    for v in &out.verdicts {
        let verdict: Verdict = serde_json::from_value(v["verdict"].clone()).map_err(CliError::failed)?;
        let Verdict::Refuted { witness } = verdict else { continue };
        let entry = match *witness {
            Witness::Commutation(w) => {
                let (lhs, rhs, bijective) = recheck_witness(&w).map_err(CliError::failed)?;
                json!({
                    "kind": "commutation",
                    "colim_of_lim": lhs,
                    "lim_of_colim": rhs,
                    "revalidated": !bijective && lhs == w.colim_of_lim && rhs == w.lim_of_colim,
                })
            }
            Witness::Category { name, category, .. } => {
                let c = Arc::new(category.validate().map_err(CliError::failed)?);
                let revalidated = match class {
                    Some(d) => {
                        cocompleteness_failure(&c, d).is_none()
                            && !is_d_filtered(&c, d, cfg).map_err(CliError::failed)?.leaning()
                    }
                    None => false,
                };
                json!({ "kind": "category", "name": name, "revalidated": revalidated })
            }
        };
        out.witnesses.push(entry);
    }
    if out.witnesses.iter().any(|w| w["revalidated"] == json!(false)) {
        return Err(CliError::Failed("a witness did not re-validate".into()));
    }
    Ok(())
}

fn universality(u: &Universality) -> Status {
    match u {
        Universality::Verified { .. } => Status::Verified,
        Universality::Skipped { .. } => Status::ConsistentUpTo,
        Universality::Failed { .. } => Status::Refuted,
    }
}

fn structure_json(s: &Structure) -> Value {
    json!({ "size": s.size, "tables": s.tables })
}

#[derive(Deserialize)]
struct MapFile {
    p: Structure,
    w: Structure,
    h: Vec<usize>,
}

pub fn run(command: &Command, flags: &Flags, inputs: &mut Inputs) -> Result<Output, CliError> {
    let cfg = search_config(flags);
    let bounds = json!({
        "bound": flags.bound,
        "value_bound": flags.value_bound,
        "depth": flags.depth,
        "class": flags.class,
        "budget": flags.budget,
        "category_bound": flags.category_bound,
    });
    let mut out = match command {
        Command::Validate { file } => {
            let input = inputs.read(file)?;
            let summary = if file.ends_with(".thy") {
                let t = load::theory(&input)?;
                json!({ "kind": "theory", "symbols": t.language().symbols().len(), "equations": t.equations().len() })
            } else if file.ends_with(".monad") {
                let m = load::monad(&input)?;
                m.check_laws(m.window().min(3)).map_err(|e| CliError::input(file, None, e.to_string()))?;
                json!({ "kind": "monad", "window": m.window() })
            } else {
                let c = load::category(&input)?;
                json!({ "kind": "category", "objects": c.num_objects(), "morphisms": c.num_morphisms() })
            };
            Output {
                result: summary,
                status: Some(Status::Verified),
                ..Output::default()
            }
        }
        Command::Limit { shape, diagram } | Command::Colimit { shape, diagram } => {
            let c = inputs.category(shape)?;
            let f = inputs.functor(diagram, &c, Variance::Covariant)?;
            let (result, u) = if matches!(command, Command::Limit { .. }) {
                let l = limit(&f);
                let u = verify_limit(&f, &l, DEFAULT_UNIVERSALITY_THRESHOLD);
                (json!({ "size": l.size(), "families": l.families, "legs": l.cone.legs }), u)
            } else {
                let l = colimit(&f);
                let u = verify_colimit(&f, &l, DEFAULT_UNIVERSALITY_THRESHOLD);
                (json!({ "size": l.size(), "legs": l.cocone.legs }), u)
            };
            Output {
                result: json!({ "object": result, "universality": u }),
                status: Some(universality(&u)),
                ..Output::default()
            }
        }
        Command::Wcolim {
            category,
            weight,
            diagram,
        } => {
            let c = inputs.category(category)?;
            let m = inputs.functor(weight, &c, Variance::Contravariant)?;
            let h = inputs.functor(diagram, &c, Variance::Covariant)?;
            let w = weighted_colimit(&m, &h).map_err(CliError::failed)?;
            let u = verify_colimit(&w.diagram, &w.colimit, DEFAULT_UNIVERSALITY_THRESHOLD);
            Output {
                result: json!({
                    "size": w.size(),
                    "elements": w.elements.total.num_objects(),
                    "legs": w.colimit.cocone.legs,
                    "universality": u,
                }),
                status: Some(universality(&u)),
                ..Output::default()
            }
        }
        Command::Elements { category, weight } => {
            let c = inputs.category(category)?;
            let m = inputs.functor(weight, &c, Variance::Contravariant)?;
            let el = category_of_elements(&m).map_err(CliError::failed)?;
            Output {
                result: json!({
                    "category": el.total.to_raw(),
                    "projection": {
                        "objects": el.projection.object_map(),
                        "morphisms": el.projection.morphism_map(),
                    },
                }),
                status: Some(Status::Verified),
                ..Output::default()
            }
        }
        Command::CheckFiltered { category } => verdict_output("filtered", is_filtered(&*inputs.category(category)?)),
        Command::CheckSifted { category } => verdict_output("sifted", is_sifted(&*inputs.category(category)?)),
        Command::CheckFlat { category, weight, mode } => {
            let c = inputs.category(category)?;
            let m = inputs.functor(weight, &c, Variance::Contravariant)?;
            let d = shape_class(flags, inputs)?;
            let mode = match mode {
                Mode::Criterion => FlatMode::Criterion,
                Mode::Direct => FlatMode::Direct,
            };
            let v = is_flat(&m, &d, &cfg, mode).map_err(CliError::failed)?;
            let mut out = verdict_output(&format!("{d}-flat"), v);
            if flags.recheck {
                recheck(&mut out, Some(&d), &cfg)?;
            }
            out
        }
        Command::CheckDfiltered { category } => {
            let c = inputs.category(category)?;
            let d = shape_class(flags, inputs)?;
            let v = is_d_filtered(&c, &d, &cfg).map_err(CliError::failed)?;
            let mut out = verdict_output(&format!("{d}-filtered"), v);
            if flags.recheck {
                recheck(&mut out, Some(&d), &cfg)?;
            }
            out
        }
        Command::CommuteRefute { category, shape, weight } => {
            let c = inputs.category(category)?;
            let m = match weight {
                Some(w) => Some(inputs.functor(w, &c, Variance::Contravariant)?),
                None => None,
            };
            let shapes = match shape {
                Some(s) => vec![(s.clone(), inputs.category(s)?)],
                None => shape_class(flags, inputs)?.shapes(),
            };
            let v = weighted_commutation_refute(&c, m.as_ref(), &shapes, &cfg).map_err(CliError::failed)?;
            let mut out = verdict_output("commutes", v);
            if flags.recheck {
                recheck(&mut out, None, &cfg)?;
            }
            out
        }
        Command::SoundnessSearch => {
            let d = shape_class(flags, inputs)?;
            let v = weak_soundness_search(&d, &cfg).map_err(CliError::failed)?;
            let mut out = verdict_output(&format!("{d} weakly sound"), v);
            if flags.recheck {
                recheck(&mut out, Some(&d), &cfg)?;
            }
            out
        }
        Command::Closure { category } => {
            let c = inputs.category(category)?;
            let d = shape_class(flags, inputs)?;
            let ccfg = ClosureConfig {
                budget: flags.budget,
                parallelism: parallelism(flags),
                ..ClosureConfig::new(flags.depth, flags.value_bound)
            };
            let cl = bounded_closure(&c, &d, &ccfg).map_err(CliError::failed)?;
            let members: Vec<Value> = cl
                .members
                .iter()
                .map(|m| {
                    json!({
                        "stage": m.stage,
                        "carriers": m.presheaf.carriers(),
                        "actions": m.presheaf.actions(),
                        "expression": m.expression.to_json(&c),
                    })
                })
                .collect();
            Output {
                result: json!({
                    "stage_sizes": cl.stage_sizes,
                    "diagrams_tested": cl.diagrams_tested,
                    "members": members,
                }),
                status: Some(Status::Verified),
                ..Output::default()
            }
        }
        Command::PresentReflexive { category, presheaf } => {
            let c = inputs.category(category)?;
            let p = inputs.functor(presheaf, &c, Variance::Contravariant)?;
            let r = reflexive_presentation(&p).map_err(CliError::failed)?;
            let laws = r.laws_hold();
            Output {
                result: json!({
                    "r0_summands": r.r0_summands.iter().map(|&(o, x)| json!([c.object_name(o), x])).collect::<Vec<_>>(),
                    "r1_summands": r.r1_summands.iter().map(|&(f, x)| json!([c.morphism_name(f), x])).collect::<Vec<_>>(),
                    "d0": r.d0,
                    "d1": r.d1,
                    "s": r.s,
                    "iso": r.iso,
                    "laws_hold": laws,
                }),
                status: Some(Status::of_bool(laws)),
                ..Output::default()
            }
        }
        Command::Decompose { category, diagram } => {
            let c = inputs.category(category)?;
            let f = inputs.functor(diagram, &c, Variance::Covariant)?;
            let d = coproduct_decomposition(&f).map_err(CliError::failed)?;
            Output {
                status: Some(Status::of_bool(d.verified)),
                result: serde_json::to_value(&d).map_err(CliError::failed)?,
                ..Output::default()
            }
        }
        Command::Cauchy { category, weight } => {
            let c = inputs.category(category)?;
            let m = inputs.functor(weight, &c, Variance::Contravariant)?;
            let v = is_cauchy_weight(&m, &cfg).map_err(CliError::failed)?;
            let mut out = verdict_output("cauchy", v);
            if flags.recheck {
                recheck(&mut out, None, &cfg)?;
            }
            out
        }
        Command::Models { theory, size } => {
            let t = load::theory(&inputs.read(theory)?)?;
            let models = enumerate_models(&t, *size, flags.budget, parallelism(flags)).map_err(CliError::failed)?;
            Output {
                result: json!({
                    "size": size,
                    "count": models.len(),
                    "models": models.iter().map(structure_json).collect::<Vec<_>>(),
                }),
                status: Some(Status::Verified),
                ..Output::default()
            }
        }
        Command::Morphisms { theory, from, to } => {
            let t = load::theory(&inputs.read(theory)?)?;
            let a = load::structure(&inputs.read(from)?, t.language())?;
            let b = load::structure(&inputs.read(to)?, t.language())?;
            let hs = enumerate_morphisms(t.language(), &a, &b);
            Output {
                result: json!({
                    "count": hs.len(),
                    "morphisms": hs.iter().map(|h| &h.map).collect::<Vec<_>>(),
                    "from_is_model": satisfies(&t, &a),
                    "to_is_model": satisfies(&t, &b),
                }),
                status: Some(Status::Verified),
                ..Output::default()
            }
        }
        Command::Free { theory, generators } => {
            let t = load::theory(&inputs.read(theory)?)?;
            let cap = flags.budget.min(100_000) as usize;
            match free_structure_bounded(&t, *generators, cap).map_err(CliError::failed)? {
                FreeOutcome::Stabilized(f) => Output {
                    result: json!({
                        "outcome": "stabilized",
                        "structure": structure_json(&f.structure),
                        "insertion": f.insertion,
                        "rounds": f.rounds,
                    }),
                    status: Some(Status::Verified),
                    ..Output::default()
                },
                FreeOutcome::Unbounded { trace } => Output {
                    result: json!({ "outcome": "unbounded", "trace": trace }),
                    status: Some(Status::ConsistentUpTo),
                    ..Output::default()
                },
            }
        }
        Command::Orthogonal { theory, structure, map } => {
            let t = load::theory(&inputs.read(theory)?)?;
            let lang = t.language();
            let a = load::structure(&inputs.read(structure)?, lang)?;
            let (p, w, h) = match map {
                Some(path) => {
                    let input = inputs.read(path)?;
                    let m: MapFile = serde_json::from_str(&input.text)
                        .map_err(|e| CliError::input(path, Some(e.line()), e.to_string()))?;
                    (m.p, m.w, StructureMorphism { map: m.h })
                }
                None => {
                    let (bundled, p, w, h) = theories::involution_quotient_map(a.size);
                    if bundled != *lang {
                        return Err(CliError::Usage(
                            "the bundled quotient map is over one unary symbol `f`; pass --map".into(),
                        ));
                    }
                    (p, w, h)
                }
            };
            for (name, s) in [("P", &p), ("W", &w)] {
                s.validate(lang).map_err(|e| CliError::Usage(format!("{name}: {e}")))?;
            }
            let orthogonal = orthogonality_check(lang, &a, &p, &w, &h);
            Output {
                result: json!({
                    "orthogonal": orthogonal,
                    "is_model": satisfies(&t, &a),
                    "p_size": p.size,
                    "w_size": w.size,
                }),
                status: Some(Status::of_bool(orthogonal)),
                ..Output::default()
            }
        }
        Command::MonadAlgebras { monad, size } => {
            let m = load::monad(&inputs.read(monad)?)?;
            m.check_laws(m.window().min(3)).map_err(|e| CliError::input(monad, None, e.to_string()))?;
            let algebras = monad_algebras(&m, *size).map_err(|e| CliError::Usage(e.to_string()))?;
            Output {
                result: json!({ "size": size, "count": algebras.len(), "algebras": algebras }),
                status: Some(Status::Verified),
                ..Output::default()
            }
        }
        Command::VerifyPaper { only } => {
            let suite = verify::run_suite(flags.profile, only, parallelism(flags));
            let ok = suite.iter().all(|c| c.pass);
            Output {
                result: json!({ "profile": format!("{:?}", flags.profile).to_lowercase(), "criteria": suite }),
                status: Some(Status::of_bool(ok)),
                ..Output::default()
            }
        }
    };
    if out.bounds.is_null() {
        out.bounds = bounds;
    }
    Ok(out)
}
