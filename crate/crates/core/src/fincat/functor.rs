use std::sync::Arc;

use thiserror::Error;

use super::{FinCategory, MorId, ObjId};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum FunctorError {
    #[error("object map has {got} entries, domain has {expected} objects")]
    ObjectMapLength { expected: usize, got: usize },
    #[error("morphism map has {got} entries, domain has {expected} morphisms")]
    MorphismMapLength { expected: usize, got: usize },
    #[error("image of `{0}` has the wrong source or target")]
    Endpoints(String),
    #[error("identity of `{0}` is not preserved")]
    Identity(String),
    #[error("composite `{then} ∘ {first}` is not preserved")]
    Composition { first: String, then: String },
}

/// A functor between finite categories, as explicit object and morphism maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinFunctor {
    domain: Arc<FinCategory>,
    codomain: Arc<FinCategory>,
    objects: Vec<ObjId>,
    morphisms: Vec<MorId>,
}

impl FinFunctor {
    pub fn new(
        domain: Arc<FinCategory>,
        codomain: Arc<FinCategory>,
        objects: Vec<ObjId>,
        morphisms: Vec<MorId>,
    ) -> Result<Self, FunctorError> {
        if objects.len() != domain.num_objects() {
            return Err(FunctorError::ObjectMapLength {
                expected: domain.num_objects(),
                got: objects.len(),
            });
        }
        if morphisms.len() != domain.num_morphisms() {
            return Err(FunctorError::MorphismMapLength {
                expected: domain.num_morphisms(),
                got: morphisms.len(),
            });
        }
        let f = FinFunctor {
            domain,
            codomain,
            objects,
            morphisms,
        };
        f.check()?;
        Ok(f)
    }

    fn check(&self) -> Result<(), FunctorError> {
        let (d, c) = (&*self.domain, &*self.codomain);
        for (m, &img) in self.morphisms.iter().enumerate() {
            if c.src(img) != self.objects[d.src(m)] || c.tgt(img) != self.objects[d.tgt(m)] {
                return Err(FunctorError::Endpoints(d.morphism_name(m).to_string()));
            }
        }
        for o in 0..d.num_objects() {
            if self.morphisms[d.identity(o)] != c.identity(self.objects[o]) {
                return Err(FunctorError::Identity(d.object_name(o).to_string()));
            }
        }
        for f in 0..d.num_morphisms() {
            for g in d.out_of(d.tgt(f)) {
                let lhs = self.morphisms[d.comp(g, f)];
                let rhs = c.comp(self.morphisms[g], self.morphisms[f]);
                if lhs != rhs {
                    return Err(FunctorError::Composition {
                        first: d.morphism_name(f).to_string(),
                        then: d.morphism_name(g).to_string(),
                    });
                }
            }
        }
        Ok(())
    }

    pub fn identity(c: Arc<FinCategory>) -> Self {
        let objects = (0..c.num_objects()).collect();
        let morphisms = (0..c.num_morphisms()).collect();
        FinFunctor {
            domain: c.clone(),
            codomain: c,
            objects,
            morphisms,
        }
    }

    pub fn domain(&self) -> &Arc<FinCategory> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<FinCategory> {
        &self.codomain
    }

    #[inline]
    pub fn object(&self, o: ObjId) -> ObjId {
        self.objects[o]
    }

    #[inline]
    pub fn morphism(&self, m: MorId) -> MorId {
        self.morphisms[m]
    }

    pub fn object_map(&self) -> &[ObjId] {
        &self.objects
    }

    pub fn morphism_map(&self) -> &[MorId] {
        &self.morphisms
    }

    /// The same maps viewed as a functor between opposite categories.
    pub fn opposite(&self) -> FinFunctor {
        FinFunctor {
            domain: Arc::new(self.domain.opposite()),
            codomain: Arc::new(self.codomain.opposite()),
            objects: self.objects.clone(),
            morphisms: self.morphisms.clone(),
        }
    }

    /// Whether every hom-set map `D(a, b) → C(Fa, Fb)` is a bijection.
    pub fn is_fully_faithful(&self) -> bool {
        let (d, c) = (&*self.domain, &*self.codomain);
        for a in 0..d.num_objects() {
            for b in 0..d.num_objects() {
                let target = c.hom(self.objects[a], self.objects[b]);
                let mut images: Vec<MorId> =
                    d.hom(a, b).iter().map(|&m| self.morphisms[m]).collect();
                images.sort_unstable();
                images.dedup();
                if images.len() != d.hom(a, b).len() || images.len() != target.len() {
                    return false;
                }
            }
        }
        true
    }

    /// Whether every codomain object is isomorphic to some image object.
    pub fn is_essentially_surjective(&self) -> bool {
        let c = &*self.codomain;
        (0..c.num_objects()).all(|x| {
            self.objects.iter().any(|&y| {
                x == y || c.hom(y, x).iter().any(|&f| c.inverse(f).is_some())
            })
        })
    }
}
