use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fincat::RawCategory;
use crate::par::Parallelism;
use crate::presheaf::{PresheafError, RawSetFunctor};

/// Answer to a question that is only semi-decidable at finite scale.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "verdict")]
pub enum Verdict {
    Decided { value: bool, certificate: Certificate },
    Refuted { witness: Box<Witness> },
    ConsistentUpTo { bounds: Bounds },
}

impl Verdict {
    pub fn decided(value: bool, tag: &str, detail: impl Into<String>) -> Verdict {
        Verdict::Decided {
            value,
            certificate: Certificate {
                tag: tag.to_string(),
                detail: detail.into(),
            },
        }
    }

    /// `Some(true)` for `Decided(true)` and `ConsistentUpTo`, `Some(false)`
    /// for `Decided(false)` and `Refuted`.
    pub fn leaning(&self) -> bool {
        match self {
            Verdict::Decided { value, .. } => *value,
            Verdict::Refuted { .. } => false,
            Verdict::ConsistentUpTo { .. } => true,
        }
    }

    pub fn is_refuted(&self) -> bool {
        matches!(self, Verdict::Refuted { .. })
    }

    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Decided { value: true, .. } => "decided-true",
            Verdict::Decided { value: false, .. } => "decided-false",
            Verdict::Refuted { .. } => "refuted",
            Verdict::ConsistentUpTo { .. } => "consistent-up-to",
        }
    }

    /// Whether two verdicts on the same question contradict each other:
    /// one says yes for certain and the other refutes, or both are decided
    /// with opposite values.
    pub fn contradicts(&self, other: &Verdict) -> bool {
        use Verdict::*;
        match (self, other) {
            (Decided { value: a, .. }, Decided { value: b, .. }) => a != b,
            (Decided { value: true, .. }, Refuted { .. }) | (Refuted { .. }, Decided { value: true, .. }) => true,
            _ => false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub tag: String,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bounds {
    pub value_bound: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shape_bound: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub category_bound: Option<usize>,
    pub shapes_tested: usize,
    pub diagrams_tested: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub categories_tested: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum Witness {
    /// A diagram `F: shape × C → Set` on which the canonical comparison
    /// `M * lim F → lim (M * F)` is not a bijection.
    Commutation(CommutationWitness),
    /// A category admitting all colimits of the class but failing the
    /// filteredness condition.
    Category {
        name: String,
        category: RawCategory,
        reason: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CommutationWitness {
    pub shape_name: String,
    pub shape: RawCategory,
    pub base: RawCategory,
    /// `None` stands for the terminal weight (conical colimits).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weight: Option<RawSetFunctor>,
    /// Covariant on `shape × base`.
    pub diagram: RawSetFunctor,
    /// `|M * lim F|`.
    pub colim_of_lim: usize,
    /// `|lim (M * F)|`.
    pub lim_of_colim: usize,
    pub failure: ComparisonFailure,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ComparisonFailure {
    NotInjective,
    NotSurjective,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum DoctrineError {
    #[error("iteration budget of {budget} exceeded after {checked} diagrams")]
    BudgetExceeded { budget: u64, checked: u64 },
    #[error(transparent)]
    Presheaf(#[from] PresheafError),
    #[error("invalid witness: {0}")]
    BadWitness(String),
}

/// Search bounds and knobs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct SearchConfig {
    pub value_bound: usize,
    pub shape_bound: usize,
    pub category_bound: usize,
    /// Cap on diagrams compared per call.
    pub budget: u64,
    pub parallelism: Parallelism,
    pub corpus_seed: u64,
    /// Random categories drawn by the corpus generator.
    pub corpus_random: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            value_bound: 2,
            shape_bound: 3,
            category_bound: 4,
            budget: 10_000_000,
            parallelism: Parallelism::default(),
            corpus_seed: 0x5eed,
            corpus_random: 60,
        }
    }
}

impl SearchConfig {
    pub fn with_value_bound(mut self, v: usize) -> Self {
        self.value_bound = v;
        self
    }
}
