use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::fincat::{families, find_isomorphism, FinCategory};

/// A bounded class of limit shapes.
///
/// Keyword classes enumerate a fixed universe of small shapes (all
/// preorders, a list of small monoids and parallel-arrow shapes, and
/// coproducts of these with points), filtered by the class predicate and by
/// `≤ k` objects and `≤ k²` morphisms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ShapeClass {
    TerminalOnly,
    FiniteDiscrete(usize),
    FiniteDiscreteNonempty(usize),
    FiniteConnected(usize),
    FiniteNonempty(usize),
    AllFinite(usize),
    Explicit(Vec<(String, Arc<FinCategory>)>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ShapeKeyword {
    TerminalOnly,
    FiniteDiscrete,
    FiniteDiscreteNonempty,
    FiniteConnected,
    FiniteNonempty,
    AllFinite,
}

impl ShapeKeyword {
    pub const ALL: [ShapeKeyword; 6] = [
        ShapeKeyword::TerminalOnly,
        ShapeKeyword::FiniteDiscrete,
        ShapeKeyword::FiniteDiscreteNonempty,
        ShapeKeyword::FiniteConnected,
        ShapeKeyword::FiniteNonempty,
        ShapeKeyword::AllFinite,
    ];

    pub fn with_bound(self, k: usize) -> ShapeClass {
        match self {
            ShapeKeyword::TerminalOnly => ShapeClass::TerminalOnly,
            ShapeKeyword::FiniteDiscrete => ShapeClass::FiniteDiscrete(k),
            ShapeKeyword::FiniteDiscreteNonempty => ShapeClass::FiniteDiscreteNonempty(k),
            ShapeKeyword::FiniteConnected => ShapeClass::FiniteConnected(k),
            ShapeKeyword::FiniteNonempty => ShapeClass::FiniteNonempty(k),
            ShapeKeyword::AllFinite => ShapeClass::AllFinite(k),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            ShapeKeyword::TerminalOnly => "terminal-only",
            ShapeKeyword::FiniteDiscrete => "finite-discrete",
            ShapeKeyword::FiniteDiscreteNonempty => "finite-discrete-nonempty",
            ShapeKeyword::FiniteConnected => "finite-connected",
            ShapeKeyword::FiniteNonempty => "finite-nonempty",
            ShapeKeyword::AllFinite => "all-finite",
        }
    }
}

impl FromStr for ShapeKeyword {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ShapeKeyword::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| format!("unknown shape class `{s}`"))
    }
}

impl fmt::Display for ShapeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ShapeClass::Explicit(shapes) => {
                let names: Vec<&str> = shapes.iter().map(|(n, _)| n.as_str()).collect();
                write!(f, "explicit:{}", names.join(","))
            }
            ShapeClass::TerminalOnly => write!(f, "terminal-only"),
            other => write!(f, "{}({})", other.keyword().unwrap().as_str(), other.bound()),
        }
    }
}

/// Generators of the shape universe, before bounding and deduplication.
fn universe_generators(k: usize) -> Vec<(String, FinCategory)> {
    let mut out: Vec<(String, FinCategory)> = Vec::new();
    for n in 0..=k.min(4) {
        for (i, p) in families::preorders_up_to_iso(n).into_iter().enumerate() {
            let name = match (n, i) {
                (0, _) => "empty".to_string(),
                (_, 0) => format!("discrete{n}"),
                _ => format!("preorder{n}.{i}"),
            };
            out.push((name, p));
        }
    }
    let connected_extras: Vec<(&str, FinCategory)> = vec![
        ("z2", families::cyclic_group(2)),
        ("z3", families::cyclic_group(3)),
        ("idempotent", families::idempotent_monoid()),
        ("left-zero", families::left_zero_monoid()),
        ("parallel-pair", families::parallel_pair()),
        ("parallel-triple", families::parallel_arrows(3)),
        ("coequalized-pair", families::coequalized_pair()),
        ("reflexive-pair", families::reflexive_pair()),
        ("z2*arrow", families::cyclic_group(2).product(&families::walking_arrow())),
    ];
    for (name, c) in &connected_extras {
        out.push((name.to_string(), c.clone()));
    }
    for (name, c) in &connected_extras {
        let mut cur = c.clone();
        let mut label = name.to_string();
        for _ in 0..k.saturating_sub(c.num_objects()) {
            cur = cur.coproduct(&families::terminal());
            label.push_str("+1");
            out.push((label.clone(), cur.clone()));
        }
    }
    for i in 0..connected_extras.len() {
        for j in i..connected_extras.len() {
            let (a, b) = (&connected_extras[i], &connected_extras[j]);
            out.push((format!("{}+{}", a.0, b.0), a.1.coproduct(&b.1)));
        }
    }
    out
}

/// All shapes with `≤ k` objects and `≤ k²` morphisms from the universe,
/// one per isomorphism class, ordered by (objects, morphisms, generation).
pub fn shape_universe(k: usize) -> Vec<(String, Arc<FinCategory>)> {
    let mut kept: Vec<(String, FinCategory)> = Vec::new();
    for (name, c) in universe_generators(k) {
        if c.num_objects() > k || c.num_morphisms() > k * k {
            continue;
        }
        if kept
            .iter()
            .any(|(_, d)| d.num_morphisms() == c.num_morphisms() && find_isomorphism(d, &c).is_some())
        {
            continue;
        }
        kept.push((name, c));
    }
    kept.sort_by_key(|(_, c)| (c.num_objects(), c.num_morphisms()));
    kept.into_iter().map(|(n, c)| (n, Arc::new(c))).collect()
}

impl ShapeClass {
    pub fn keyword(&self) -> Option<ShapeKeyword> {
        Some(match self {
            ShapeClass::TerminalOnly => ShapeKeyword::TerminalOnly,
            ShapeClass::FiniteDiscrete(_) => ShapeKeyword::FiniteDiscrete,
            ShapeClass::FiniteDiscreteNonempty(_) => ShapeKeyword::FiniteDiscreteNonempty,
            ShapeClass::FiniteConnected(_) => ShapeKeyword::FiniteConnected,
            ShapeClass::FiniteNonempty(_) => ShapeKeyword::FiniteNonempty,
            ShapeClass::AllFinite(_) => ShapeKeyword::AllFinite,
            ShapeClass::Explicit(_) => return None,
        })
    }

    pub fn bound(&self) -> usize {
        match self {
            ShapeClass::TerminalOnly => 0,
            ShapeClass::FiniteDiscrete(k)
            | ShapeClass::FiniteDiscreteNonempty(k)
            | ShapeClass::FiniteConnected(k)
            | ShapeClass::FiniteNonempty(k)
            | ShapeClass::AllFinite(k) => *k,
            ShapeClass::Explicit(shapes) => shapes.iter().map(|(_, s)| s.num_objects()).max().unwrap_or(0),
        }
    }

    /// The class predicate, ignoring the size bound.
    fn predicate(&self, s: &FinCategory) -> bool {
        let discrete = s.num_morphisms() == s.num_objects();
        match self {
            ShapeClass::TerminalOnly => s.is_empty(),
            ShapeClass::FiniteDiscrete(_) => discrete,
            ShapeClass::FiniteDiscreteNonempty(_) => discrete && !s.is_empty(),
            ShapeClass::FiniteConnected(_) => s.is_connected(),
            ShapeClass::FiniteNonempty(_) => !s.is_empty(),
            ShapeClass::AllFinite(_) => true,
            ShapeClass::Explicit(_) => true,
        }
    }

    pub fn contains(&self, s: &FinCategory) -> bool {
        match self {
            ShapeClass::Explicit(shapes) => shapes.iter().any(|(_, d)| find_isomorphism(d, s).is_some()),
            ShapeClass::TerminalOnly => s.is_empty(),
            _ => {
                let k = self.bound();
                s.num_objects() <= k && s.num_morphisms() <= k * k && self.predicate(s)
            }
        }
    }

    /// Member shapes in canonical order.
    pub fn shapes(&self) -> Vec<(String, Arc<FinCategory>)> {
        match self {
            ShapeClass::Explicit(shapes) => shapes.clone(),
            ShapeClass::TerminalOnly => vec![("empty".into(), Arc::new(families::empty()))],
            _ => shape_universe(self.bound())
                .into_iter()
                .filter(|(_, s)| self.predicate(s))
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumerator_agrees_with_membership() {
        for kw in ShapeKeyword::ALL {
            for k in 0..=3 {
                let class = kw.with_bound(k);
                for (name, s) in class.shapes() {
                    assert!(class.contains(&s), "{class} {name}");
                }
            }
        }
    }

    #[test]
    fn small_universes() {
        let names = |c: ShapeClass| -> Vec<String> { c.shapes().into_iter().map(|(n, _)| n).collect() };
        assert_eq!(names(ShapeClass::TerminalOnly), vec!["empty"]);
        assert_eq!(names(ShapeClass::FiniteDiscrete(3)), vec!["empty", "discrete1", "discrete2", "discrete3"]);
        assert_eq!(names(ShapeClass::FiniteDiscreteNonempty(2)), vec!["discrete1", "discrete2"]);
        let conn2 = names(ShapeClass::FiniteConnected(2));
        assert!(conn2.contains(&"parallel-pair".to_string()));
        assert!(!conn2.contains(&"discrete2".to_string()));
        let all3 = ShapeClass::AllFinite(3).shapes();
        assert!(all3.iter().all(|(_, s)| s.num_objects() <= 3 && s.num_morphisms() <= 9));
        assert!(all3.iter().any(|(_, s)| find_isomorphism(s, &families::cospan()).is_some()));
    }

    #[test]
    fn keywords_round_trip() {
        for kw in ShapeKeyword::ALL {
            assert_eq!(kw.as_str().parse::<ShapeKeyword>().unwrap(), kw);
        }
    }
}
