use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fincat::{FinCategory, MorId, ObjId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variance {
    Covariant,
    Contravariant,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum PresheafError {
    #[error("functors live over different base categories")]
    BaseMismatch,
    #[error("expected a {expected:?} functor")]
    WrongVariance { expected: Variance },
    #[error("expected {expected} carriers, got {got}")]
    CarrierCount { expected: usize, got: usize },
    #[error("expected {expected} action tables, got {got}")]
    ActionCount { expected: usize, got: usize },
    #[error("action of `{morphism}` has {got} entries, expected {expected}")]
    ActionLength {
        morphism: String,
        expected: usize,
        got: usize,
    },
    #[error("action of `{morphism}` sends {index} to {value}, outside the target carrier")]
    ImageOutOfRange {
        morphism: String,
        index: usize,
        value: usize,
    },
    #[error("identity at `{0}` does not act as the identity function")]
    IdentityNotPreserved(String),
    #[error("composite `{then} ∘ {first}` is not preserved")]
    CompositionNotPreserved { first: String, then: String },
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("unknown morphism `{0}`")]
    UnknownMorphism(String),
    #[error("no carrier given for object `{0}`")]
    MissingCarrier(String),
    #[error("no action given for morphism `{0}`")]
    MissingAction(String),
}

/// A functor from a finite category into finite sets `{0, …, n−1}`.
///
/// For a covariant functor the action of `f: a → b` is a table
/// `F(a) → F(b)`; for a contravariant one it is `F(b) → F(a)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetFunctor {
    base: Arc<FinCategory>,
    variance: Variance,
    carriers: Vec<usize>,
    action: Vec<Vec<usize>>,
}

impl SetFunctor {
    pub fn new(
        base: Arc<FinCategory>,
        variance: Variance,
        carriers: Vec<usize>,
        action: Vec<Vec<usize>>,
    ) -> Result<Self, PresheafError> {
        if carriers.len() != base.num_objects() {
            return Err(PresheafError::CarrierCount {
                expected: base.num_objects(),
                got: carriers.len(),
            });
        }
        if action.len() != base.num_morphisms() {
            return Err(PresheafError::ActionCount {
                expected: base.num_morphisms(),
                got: action.len(),
            });
        }
        let f = SetFunctor {
            base,
            variance,
            carriers,
            action,
        };
        f.check()?;
        Ok(f)
    }

    /// Builds a functor without re-checking the laws. Callers must
    /// guarantee validity (used on hot enumeration paths).
    pub(crate) fn new_unchecked(
        base: Arc<FinCategory>,
        variance: Variance,
        carriers: Vec<usize>,
        action: Vec<Vec<usize>>,
    ) -> Self {
        debug_assert!(SetFunctor {
            base: base.clone(),
            variance,
            carriers: carriers.clone(),
            action: action.clone()
        }
        .check()
        .is_ok());
        SetFunctor {
            base,
            variance,
            carriers,
            action,
        }
    }

    fn check(&self) -> Result<(), PresheafError> {
        let c = &*self.base;
        for m in 0..c.num_morphisms() {
            let (dom, cod) = (self.act_dom(m), self.act_cod(m));
            let table = &self.action[m];
            if table.len() != self.carriers[dom] {
                return Err(PresheafError::ActionLength {
                    morphism: c.morphism_name(m).to_string(),
                    expected: self.carriers[dom],
                    got: table.len(),
                });
            }
            if let Some((i, &v)) = table.iter().enumerate().find(|(_, &v)| v >= self.carriers[cod]) {
                return Err(PresheafError::ImageOutOfRange {
                    morphism: c.morphism_name(m).to_string(),
                    index: i,
                    value: v,
                });
            }
        }
        for o in 0..c.num_objects() {
            if self.action[c.identity(o)].iter().enumerate().any(|(i, &v)| i != v) {
                return Err(PresheafError::IdentityNotPreserved(c.object_name(o).to_string()));
            }
        }
        for f in 0..c.num_morphisms() {
            for g in c.out_of(c.tgt(f)) {
                let h = c.comp(g, f);
                let (first, second) = match self.variance {
                    Variance::Covariant => (f, g),
                    Variance::Contravariant => (g, f),
                };
                let ok = (0..self.carriers[self.act_dom(first)])
                    .all(|x| self.action[h][x] == self.action[second][self.action[first][x]]);
                if !ok {
                    return Err(PresheafError::CompositionNotPreserved {
                        first: c.morphism_name(f).to_string(),
                        then: c.morphism_name(g).to_string(),
                    });
                }
            }
        }
        Ok(())
    }

    pub fn from_fn(
        base: Arc<FinCategory>,
        variance: Variance,
        carriers: Vec<usize>,
        mut act: impl FnMut(MorId, usize) -> usize,
    ) -> Result<Self, PresheafError> {
        let action = (0..base.num_morphisms())
            .map(|m| {
                let dom = match variance {
                    Variance::Covariant => base.src(m),
                    Variance::Contravariant => base.tgt(m),
                };
                (0..carriers[dom]).map(|x| act(m, x)).collect()
            })
            .collect();
        SetFunctor::new(base, variance, carriers, action)
    }

    /// The constant functor at a one-element set.
    pub fn terminal(base: Arc<FinCategory>, variance: Variance) -> Self {
        let carriers = vec![1; base.num_objects()];
        let action = vec![vec![0]; base.num_morphisms()];
        SetFunctor {
            base,
            variance,
            carriers,
            action,
        }
    }

    pub fn empty(base: Arc<FinCategory>, variance: Variance) -> Self {
        let carriers = vec![0; base.num_objects()];
        let action = vec![vec![]; base.num_morphisms()];
        SetFunctor {
            base,
            variance,
            carriers,
            action,
        }
    }

    /// `C(−, c)`; the element `i` at `d` is the `i`-th morphism of `hom(d, c)`.
    pub fn representable(base: Arc<FinCategory>, c: ObjId) -> Self {
        let cat = base.clone();
        let carriers = (0..cat.num_objects()).map(|d| cat.hom(d, c).len()).collect();
        SetFunctor::from_fn(base, Variance::Contravariant, carriers, |g, i| {
            // g: d' → d acts hom(d, c) → hom(d', c) by precomposition
            let h = cat.hom(cat.tgt(g), c)[i];
            let hg = cat.comp(h, g);
            cat.hom(cat.src(g), c).iter().position(|&k| k == hg).unwrap()
        })
        .expect("representables are functors")
    }

    /// `C(c, −)`; the element `i` at `d` is the `i`-th morphism of `hom(c, d)`.
    pub fn corepresentable(base: Arc<FinCategory>, c: ObjId) -> Self {
        let cat = base.clone();
        let carriers = (0..cat.num_objects()).map(|d| cat.hom(c, d).len()).collect();
        SetFunctor::from_fn(base, Variance::Covariant, carriers, |g, i| {
            let h = cat.hom(c, cat.src(g))[i];
            let gh = cat.comp(g, h);
            cat.hom(c, cat.tgt(g)).iter().position(|&k| k == gh).unwrap()
        })
        .expect("corepresentables are functors")
    }

    pub fn base(&self) -> &Arc<FinCategory> {
        &self.base
    }

    pub fn variance(&self) -> Variance {
        self.variance
    }

    pub fn carriers(&self) -> &[usize] {
        &self.carriers
    }

    #[inline]
    pub fn carrier(&self, o: ObjId) -> usize {
        self.carriers[o]
    }

    pub fn total_size(&self) -> usize {
        self.carriers.iter().sum()
    }

    pub fn action(&self, m: MorId) -> &[usize] {
        &self.action[m]
    }

    pub fn actions(&self) -> &[Vec<usize>] {
        &self.action
    }

    #[inline]
    pub fn apply(&self, m: MorId, x: usize) -> usize {
        self.action[m][x]
    }

    /// Object whose carrier is the domain of the action of `m`.
    #[inline]
    pub fn act_dom(&self, m: MorId) -> ObjId {
        match self.variance {
            Variance::Covariant => self.base.src(m),
            Variance::Contravariant => self.base.tgt(m),
        }
    }

    /// Object whose carrier is the codomain of the action of `m`.
    #[inline]
    pub fn act_cod(&self, m: MorId) -> ObjId {
        match self.variance {
            Variance::Covariant => self.base.tgt(m),
            Variance::Contravariant => self.base.src(m),
        }
    }

    pub fn same_base(&self, other: &SetFunctor) -> bool {
        Arc::ptr_eq(&self.base, &other.base) || *self.base == *other.base
    }

    /// Transport of structure: element `x` at `o` becomes `perm[o][x]`.
    pub fn relabel(&self, perm: &[Vec<usize>]) -> SetFunctor {
        let mut action = vec![Vec::new(); self.action.len()];
        for (m, table) in self.action.iter().enumerate() {
            let (dom, cod) = (self.act_dom(m), self.act_cod(m));
            let mut t = vec![0; table.len()];
            for (x, &y) in table.iter().enumerate() {
                t[perm[dom][x]] = perm[cod][y];
            }
            action[m] = t;
        }
        SetFunctor {
            base: self.base.clone(),
            variance: self.variance,
            carriers: self.carriers.clone(),
            action,
        }
    }

    /// The same data regarded as a functor on the opposite category with the
    /// opposite variance.
    pub fn flip(&self, opposite_base: Arc<FinCategory>) -> SetFunctor {
        SetFunctor {
            base: opposite_base,
            variance: match self.variance {
                Variance::Covariant => Variance::Contravariant,
                Variance::Contravariant => Variance::Covariant,
            },
            carriers: self.carriers.clone(),
            action: self.action.clone(),
        }
    }

    /// Restriction along the full subcategory on `objs` (with morphism list
    /// `kept` as returned by [`FinCategory::full_subcategory`]).
    pub fn restrict(&self, sub: Arc<FinCategory>, objs: &[ObjId], kept: &[MorId]) -> SetFunctor {
        SetFunctor {
            base: sub,
            variance: self.variance,
            carriers: objs.iter().map(|&o| self.carriers[o]).collect(),
            action: kept.iter().map(|&m| self.action[m].clone()).collect(),
        }
    }

    pub fn to_raw(&self, category: Option<String>) -> RawSetFunctor {
        let c = &*self.base;
        RawSetFunctor {
            category,
            variance: self.variance,
            carriers: (0..c.num_objects())
                .map(|o| (c.object_name(o).to_string(), self.carriers[o]))
                .collect(),
            actions: c
                .non_identities()
                .map(|m| (c.morphism_name(m).to_string(), self.action[m].clone()))
                .collect(),
        }
    }
}

/// Weight/diagram file schema. Actions of identities may be omitted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawSetFunctor {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub category: Option<String>,
    pub variance: Variance,
    pub carriers: BTreeMap<String, usize>,
    #[serde(default)]
    pub actions: BTreeMap<String, Vec<usize>>,
}

impl RawSetFunctor {
    pub fn validate(&self, base: Arc<FinCategory>) -> Result<SetFunctor, PresheafError> {
        for name in self.carriers.keys() {
            if base.object_index(name).is_none() {
                return Err(PresheafError::UnknownObject(name.clone()));
            }
        }
        for name in self.actions.keys() {
            if base.morphism_index(name).is_none() {
                return Err(PresheafError::UnknownMorphism(name.clone()));
            }
        }
        let carriers = base
            .object_names()
            .iter()
            .map(|o| {
                self.carriers
                    .get(o)
                    .copied()
                    .ok_or_else(|| PresheafError::MissingCarrier(o.clone()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let mut action = Vec::new();
        for m in 0..base.num_morphisms() {
            let name = base.morphism_name(m);
            match self.actions.get(name) {
                Some(t) => action.push(t.clone()),
                None if base.is_identity(m) => {
                    action.push((0..carriers[base.src(m)]).collect())
                }
                None => return Err(PresheafError::MissingAction(name.to_string())),
            }
        }
        SetFunctor::new(base, self.variance, carriers, action)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::families;

    #[test]
    fn representables_have_hom_sized_carriers() {
        let c = Arc::new(families::reflexive_pair());
        for o in 0..2 {
            let y = SetFunctor::representable(c.clone(), o);
            for d in 0..2 {
                assert_eq!(y.carrier(d), c.hom(d, o).len());
            }
            let cy = SetFunctor::corepresentable(c.clone(), o);
            for d in 0..2 {
                assert_eq!(cy.carrier(d), c.hom(o, d).len());
            }
        }
    }

    #[test]
    fn composition_violation_is_caught() {
        let c = Arc::new(families::idempotent_monoid());
        // e acting as swap is not idempotent
        let err = SetFunctor::new(c, Variance::Covariant, vec![2], vec![vec![0, 1], vec![1, 0]]).unwrap_err();
        assert!(matches!(err, PresheafError::CompositionNotPreserved { .. }));
    }

    #[test]
    fn raw_round_trip() {
        let c = Arc::new(families::walking_arrow());
        let f = SetFunctor::new(c.clone(), Variance::Covariant, vec![2, 3], vec![vec![0, 1], vec![0, 1, 2], vec![2, 2]]).unwrap();
        let raw = f.to_raw(None);
        assert_eq!(raw.validate(c.clone()).unwrap(), f);
        let mut bad = raw.clone();
        bad.actions.insert("u".into(), vec![0, 3]);
        assert!(matches!(bad.validate(c), Err(PresheafError::ImageOutOfRange { .. })));
    }
}
