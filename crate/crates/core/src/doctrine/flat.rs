use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::structural::{components_filtered, is_connected, is_filtered, is_sifted, or_empty};
use super::{weighted_commutation_refute, Bounds, DoctrineError, SearchConfig, ShapeClass, Verdict};
use crate::fincat::FinCategory;
use crate::presheaf::{category_of_elements, SetFunctor};

/// The structural decision for `D`-filteredness, when one is known for the
/// class at its bound.
pub fn structural_shortcut(c: &FinCategory, d: &ShapeClass) -> Option<Verdict> {
    let vacuous = || Verdict::decided(true, "vacuous", "the class has no shapes");
    let trivial = || Verdict::decided(true, "trivial", "limits over a point commute with everything");
    Some(match d {
        ShapeClass::TerminalOnly => is_connected(c),
        ShapeClass::FiniteDiscrete(0 | 1) => is_connected(c),
        ShapeClass::FiniteDiscrete(_) => is_sifted(c),
        ShapeClass::FiniteDiscreteNonempty(0) => vacuous(),
        ShapeClass::FiniteDiscreteNonempty(1) => trivial(),
        ShapeClass::FiniteDiscreteNonempty(_) => or_empty(c, is_sifted),
        ShapeClass::FiniteConnected(0) => vacuous(),
        ShapeClass::FiniteConnected(1) => trivial(),
        ShapeClass::FiniteConnected(k) if *k >= 3 => components_filtered(c),
        ShapeClass::FiniteNonempty(0) => vacuous(),
        ShapeClass::FiniteNonempty(1) => trivial(),
        ShapeClass::FiniteNonempty(_) => or_empty(c, is_filtered),
        ShapeClass::AllFinite(0 | 1) => is_connected(c),
        ShapeClass::AllFinite(_) => is_filtered(c),
        _ => return None,
    })
}

/// Whether conical colimits over `C` commute with limits of every shape in
/// `D`: structurally when possible, otherwise by the commutation oracle.
pub fn is_d_filtered(c: &Arc<FinCategory>, d: &ShapeClass, cfg: &SearchConfig) -> Result<Verdict, DoctrineError> {
    match structural_shortcut(c, d) {
        Some(v) => Ok(v),
        None => oracle_verdict(c, None, d, cfg),
    }
}

/// The structural verdict (if any) together with the oracle's verdict.
pub fn is_d_filtered_crosscheck(
    c: &Arc<FinCategory>,
    d: &ShapeClass,
    cfg: &SearchConfig,
) -> Result<(Option<Verdict>, Verdict), DoctrineError> {
    Ok((structural_shortcut(c, d), oracle_verdict(c, None, d, cfg)?))
}

fn oracle_verdict(
    c: &Arc<FinCategory>,
    weight: Option<&SetFunctor>,
    d: &ShapeClass,
    cfg: &SearchConfig,
) -> Result<Verdict, DoctrineError> {
    let shapes = d.shapes();
    let mut v = weighted_commutation_refute(c, weight, &shapes, cfg)?;
    if let Verdict::ConsistentUpTo { bounds } = &mut v {
        *bounds = Bounds {
            shape_bound: Some(d.bound()),
            ..bounds.clone()
        };
    }
    Ok(v)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FlatMode {
    /// `El(M)^op` is `D`-filtered.
    #[default]
    Criterion,
    /// `M`-weighted colimits commute with `D`-limits, by the oracle.
    Direct,
}

pub fn is_flat(m: &SetFunctor, d: &ShapeClass, cfg: &SearchConfig, mode: FlatMode) -> Result<Verdict, DoctrineError> {
    match mode {
        FlatMode::Criterion => {
            let el = category_of_elements(m)?;
            let elop = Arc::new(el.total.opposite());
            is_d_filtered(&elop, d, cfg)
        }
        FlatMode::Direct => oracle_verdict(m.base(), Some(m), d, cfg),
    }
}

/// The structural description of `D`-flat weights in terms of `El(M)^op`.
pub fn flat_predicate(d: &ShapeClass, elop: &FinCategory) -> Option<Verdict> {
    match d {
        ShapeClass::FiniteConnected(_) => Some(components_filtered(elop)),
        ShapeClass::FiniteNonempty(_) => Some(or_empty(elop, is_filtered)),
        ShapeClass::FiniteDiscreteNonempty(_) => Some(or_empty(elop, is_sifted)),
        _ => None,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlatRow {
    pub weight: String,
    pub oracle: String,
    pub predicate: bool,
    pub agree: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlatReport {
    pub class: String,
    pub rows: Vec<FlatRow>,
    pub agreements: usize,
    pub discrepancies: usize,
}

/// Compares the direct flatness verdict with the structural predicate on
/// `El(M)^op` for each weight. When the predicate says "not flat" and the
/// oracle finds nothing at `cfg.value_bound`, the oracle is rerun once with
/// one more value; small counterexamples often need three values.
pub fn characterize_flat_examples(
    d: &ShapeClass,
    corpus: &[(String, SetFunctor)],
    cfg: &SearchConfig,
) -> Result<FlatReport, DoctrineError> {
    let mut rows = Vec::new();
    for (name, m) in corpus {
        let el = category_of_elements(m)?;
        let elop = el.total.opposite();
        let predicate = flat_predicate(d, &elop)
            .ok_or_else(|| DoctrineError::BadWitness(format!("no structural description for {d}")))?
            .leaning();
        let mut oracle = is_flat(m, d, cfg, FlatMode::Direct)?;
        if !predicate && matches!(oracle, Verdict::ConsistentUpTo { .. }) {
            let wider = SearchConfig {
                value_bound: cfg.value_bound + 1,
                ..cfg.clone()
            };
            oracle = is_flat(m, d, &wider, FlatMode::Direct)?;
        }
        let agree = match &oracle {
            Verdict::Refuted { .. } => !predicate,
            Verdict::ConsistentUpTo { .. } => predicate,
            Verdict::Decided { value, .. } => *value == predicate,
        };
        rows.push(FlatRow {
            weight: name.clone(),
            oracle: oracle.label().to_string(),
            predicate,
            agree,
        });
    }
    let agreements = rows.iter().filter(|r| r.agree).count();
    Ok(FlatReport {
        class: d.to_string(),
        discrepancies: rows.len() - agreements,
        agreements,
        rows,
    })
}
