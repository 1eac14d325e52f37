use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::UnionFind;

pub type ObjId = usize;
pub type MorId = usize;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Morphism {
    pub name: String,
    pub src: ObjId,
    pub tgt: ObjId,
}

/// Validation failures, citing offending entries by name.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CategoryError {
    #[error("duplicate object `{0}`")]
    DuplicateObject(String),
    #[error("duplicate morphism `{0}`")]
    DuplicateMorphism(String),
    #[error("{context}: unknown object `{name}`")]
    UnknownObject { context: String, name: String },
    #[error("{context}: unknown morphism `{name}`")]
    UnknownMorphism { context: String, name: String },
    #[error("bad identity at object `{object}`: {reason}")]
    BadIdentity { object: String, reason: String },
    #[error("composite `{then} ∘ {first}`: {reason}")]
    SourceTargetMismatch {
        first: String,
        then: String,
        reason: String,
    },
    #[error("composite `{then} ∘ {first}` given twice with different values")]
    ConflictingComposite { first: String, then: String },
    #[error("missing composite `{then} ∘ {first}`")]
    MissingComposite { first: String, then: String },
    #[error("non-associative triple: ({h} ∘ {g}) ∘ {f} ≠ {h} ∘ ({g} ∘ {f})")]
    NonAssociative { f: String, g: String, h: String },
}

/// A finite category with a fully materialized composition table.
///
/// Objects and morphisms are dense indices; their names are kept so that
/// witnesses can be reported in the caller's vocabulary.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinCategory {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    identity: Vec<MorId>,
    /// `table[f * n + g]` is `g ∘ f` when `tgt f == src g`.
    table: Vec<Option<MorId>>,
    hom: Vec<Vec<MorId>>,
}

impl FinCategory {
    /// Builds and validates a category from a composition function.
    ///
    /// `compose(g, f)` is only called on composable pairs (`tgt f == src g`).
    pub fn from_composition<F>(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        identity: Vec<MorId>,
        mut compose: F,
    ) -> Result<Self, CategoryError>
    where
        F: FnMut(MorId, MorId) -> MorId,
    {
        let n = morphisms.len();
        let mut table = vec![None; n * n];
        for f in 0..n {
            for g in 0..n {
                if morphisms[f].tgt == morphisms[g].src {
                    table[f * n + g] = Some(compose(g, f));
                }
            }
        }
        Self::from_table(objects, morphisms, identity, table)
    }

    pub(crate) fn from_table(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        identity: Vec<MorId>,
        table: Vec<Option<MorId>>,
    ) -> Result<Self, CategoryError> {
        let mut seen = HashMap::new();
        for name in &objects {
            if seen.insert(name.as_str(), ()).is_some() {
                return Err(CategoryError::DuplicateObject(name.clone()));
            }
        }
        let mut seen = HashMap::new();
        for m in &morphisms {
            if seen.insert(m.name.as_str(), ()).is_some() {
                return Err(CategoryError::DuplicateMorphism(m.name.clone()));
            }
        }
        let nobj = objects.len();
        let mut hom = vec![Vec::new(); nobj * nobj];
        for (i, m) in morphisms.iter().enumerate() {
            hom[m.src * nobj + m.tgt].push(i);
        }
        let cat = FinCategory {
            objects,
            morphisms,
            identity,
            table,
            hom,
        };
        cat.check_laws()?;
        Ok(cat)
    }

    fn check_laws(&self) -> Result<(), CategoryError> {
        let n = self.morphisms.len();
        for (c, &id) in self.identity.iter().enumerate() {
            let m = &self.morphisms[id];
            if m.src != c || m.tgt != c {
                return Err(CategoryError::BadIdentity {
                    object: self.objects[c].clone(),
                    reason: format!("`{}` is not an endomorphism of it", m.name),
                });
            }
        }
        for f in 0..n {
            for g in 0..n {
                let composable = self.morphisms[f].tgt == self.morphisms[g].src;
                match (composable, self.table[f * n + g]) {
                    (true, None) => {
                        return Err(CategoryError::MissingComposite {
                            first: self.morphisms[f].name.clone(),
                            then: self.morphisms[g].name.clone(),
                        })
                    }
                    (false, Some(_)) => {
                        return Err(CategoryError::SourceTargetMismatch {
                            first: self.morphisms[f].name.clone(),
                            then: self.morphisms[g].name.clone(),
                            reason: "pair is not composable".into(),
                        })
                    }
                    (true, Some(h)) => {
                        let hm = &self.morphisms[h];
                        if hm.src != self.morphisms[f].src || hm.tgt != self.morphisms[g].tgt {
                            return Err(CategoryError::SourceTargetMismatch {
                                first: self.morphisms[f].name.clone(),
                                then: self.morphisms[g].name.clone(),
                                reason: format!("`{}` has the wrong source or target", hm.name),
                            });
                        }
                    }
                    (false, None) => {}
                }
            }
        }
        for f in 0..n {
            let (s, t) = (self.morphisms[f].src, self.morphisms[f].tgt);
            if self.table[f * n + self.identity[t]] != Some(f) {
                return Err(CategoryError::BadIdentity {
                    object: self.objects[t].clone(),
                    reason: format!("not a left unit for `{}`", self.morphisms[f].name),
                });
            }
            if self.table[self.identity[s] * n + f] != Some(f) {
                return Err(CategoryError::BadIdentity {
                    object: self.objects[s].clone(),
                    reason: format!("not a right unit for `{}`", self.morphisms[f].name),
                });
            }
        }
        for f in 0..n {
            for g in self.out_of(self.morphisms[f].tgt) {
                let gf = self.table[f * n + g].expect("checked");
                for h in self.out_of(self.morphisms[g].tgt) {
                    let hg = self.table[g * n + h].expect("checked");
                    if self.table[gf * n + h] != self.table[f * n + hg] {
                        return Err(CategoryError::NonAssociative {
                            f: self.morphisms[f].name.clone(),
                            g: self.morphisms[g].name.clone(),
                            h: self.morphisms[h].name.clone(),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn num_morphisms(&self) -> usize {
        self.morphisms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    pub fn object_names(&self) -> &[String] {
        &self.objects
    }

    pub fn object_name(&self, c: ObjId) -> &str {
        &self.objects[c]
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }

    pub fn morphism(&self, f: MorId) -> &Morphism {
        &self.morphisms[f]
    }

    pub fn morphism_name(&self, f: MorId) -> &str {
        &self.morphisms[f].name
    }

    #[inline]
    pub fn src(&self, f: MorId) -> ObjId {
        self.morphisms[f].src
    }

    #[inline]
    pub fn tgt(&self, f: MorId) -> ObjId {
        self.morphisms[f].tgt
    }

    #[inline]
    pub fn identity(&self, c: ObjId) -> MorId {
        self.identity[c]
    }

    pub fn identities(&self) -> &[MorId] {
        &self.identity
    }

    #[inline]
    pub fn is_identity(&self, f: MorId) -> bool {
        self.identity[self.morphisms[f].src] == f
    }

    /// `g ∘ f`, or `None` if `tgt f != src g`.
    #[inline]
    pub fn compose(&self, g: MorId, f: MorId) -> Option<MorId> {
        self.table[f * self.morphisms.len() + g]
    }

    /// `g ∘ f` for a pair known to be composable.
    #[inline]
    pub fn comp(&self, g: MorId, f: MorId) -> MorId {
        self.table[f * self.morphisms.len() + g].expect("morphisms are not composable")
    }

    pub fn hom(&self, a: ObjId, b: ObjId) -> &[MorId] {
        &self.hom[a * self.objects.len() + b]
    }

    /// Morphisms with source `a`, in index order.
    pub fn out_of(&self, a: ObjId) -> impl Iterator<Item = MorId> + '_ {
        (0..self.objects.len()).flat_map(move |b| self.hom(a, b).iter().copied())
    }

    /// Morphisms with target `b`, in index order of sources.
    pub fn incoming(&self, b: ObjId) -> impl Iterator<Item = MorId> + '_ {
        (0..self.objects.len()).flat_map(move |a| self.hom(a, b).iter().copied())
    }

    pub fn object_index(&self, name: &str) -> Option<ObjId> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn morphism_index(&self, name: &str) -> Option<MorId> {
        self.morphisms.iter().position(|m| m.name == name)
    }

    /// Non-identity morphisms, in index order.
    pub fn non_identities(&self) -> impl Iterator<Item = MorId> + '_ {
        (0..self.morphisms.len()).filter(move |&f| !self.is_identity(f))
    }

    pub fn is_idempotent(&self, e: MorId) -> bool {
        self.src(e) == self.tgt(e) && self.comp(e, e) == e
    }

    /// Whether `f` is invertible; returns the inverse.
    pub fn inverse(&self, f: MorId) -> Option<MorId> {
        let (a, b) = (self.src(f), self.tgt(f));
        self.hom(b, a).iter().copied().find(|&g| {
            self.comp(g, f) == self.identity(a) && self.comp(f, g) == self.identity(b)
        })
    }

    pub fn opposite(&self) -> FinCategory {
        let n = self.morphisms.len();
        let morphisms: Vec<Morphism> = self
            .morphisms
            .iter()
            .map(|m| Morphism {
                name: m.name.clone(),
                src: m.tgt,
                tgt: m.src,
            })
            .collect();
        let mut table = vec![None; n * n];
        for f in 0..n {
            for g in 0..n {
                // g ∘op f = f ∘ g
                table[f * n + g] = self.table[g * n + f];
            }
        }
        let nobj = self.objects.len();
        let mut hom = vec![Vec::new(); nobj * nobj];
        for (i, m) in morphisms.iter().enumerate() {
            hom[m.src * nobj + m.tgt].push(i);
        }
        FinCategory {
            objects: self.objects.clone(),
            morphisms,
            identity: self.identity.clone(),
            table,
            hom,
        }
    }

    /// Product category; object `(i, j)` has index `i * |D| + j`, and
    /// morphism `(f, g)` has index `f * |mor D| + g`.
    pub fn product(&self, other: &FinCategory) -> FinCategory {
        let (no, mo) = (other.objects.len(), other.morphisms.len());
        let objects: Vec<String> = self
            .objects
            .iter()
            .flat_map(|a| other.objects.iter().map(move |b| format!("({a},{b})")))
            .collect();
        let mut morphisms = Vec::with_capacity(self.morphisms.len() * mo);
        for f in &self.morphisms {
            for g in &other.morphisms {
                morphisms.push(Morphism {
                    name: format!("({},{})", f.name, g.name),
                    src: f.src * no + g.src,
                    tgt: f.tgt * no + g.tgt,
                });
            }
        }
        let identity = (0..self.objects.len())
            .flat_map(|a| (0..no).map(move |b| (a, b)))
            .map(|(a, b)| self.identity[a] * mo + other.identity[b])
            .collect();
        FinCategory::from_composition(objects, morphisms, identity, |x, y| {
            let (x1, x2) = (x / mo, x % mo);
            let (y1, y2) = (y / mo, y % mo);
            self.comp(x1, y1) * mo + other.comp(x2, y2)
        })
        .expect("product of valid categories is valid")
    }

    /// Disjoint union; objects and morphisms of `other` follow those of `self`.
    pub fn coproduct(&self, other: &FinCategory) -> FinCategory {
        let (no, nm) = (self.objects.len(), self.morphisms.len());
        let mut objects = Vec::new();
        let mut names = std::collections::HashSet::new();
        let tag = |name: &str, side: &str, names: &mut std::collections::HashSet<String>| {
            let mut s = name.to_string();
            let mut i = 1;
            while !names.insert(s.clone()) {
                s = if i == 1 { format!("{name}.{side}") } else { format!("{name}.{side}{i}") };
                i += 1;
            }
            s
        };
        for o in &self.objects {
            objects.push(tag(o, "l", &mut names));
        }
        for o in &other.objects {
            objects.push(tag(o, "r", &mut names));
        }
        let mut mnames = std::collections::HashSet::new();
        let mut morphisms = Vec::new();
        for m in &self.morphisms {
            morphisms.push(Morphism {
                name: tag(&m.name, "l", &mut mnames),
                src: m.src,
                tgt: m.tgt,
            });
        }
        for m in &other.morphisms {
            morphisms.push(Morphism {
                name: tag(&m.name, "r", &mut mnames),
                src: m.src + no,
                tgt: m.tgt + no,
            });
        }
        let identity = self
            .identity
            .iter()
            .copied()
            .chain(other.identity.iter().map(|&i| i + nm))
            .collect();
        FinCategory::from_composition(objects, morphisms, identity, |g, f| {
            if f < nm {
                self.comp(g, f)
            } else {
                other.comp(g - nm, f - nm) + nm
            }
        })
        .expect("coproduct of valid categories is valid")
    }

    /// Full subcategory on `objs` (kept in the given order), with the
    /// list of original morphism indices.
    pub fn full_subcategory(&self, objs: &[ObjId]) -> (FinCategory, Vec<MorId>) {
        let mut pos = vec![usize::MAX; self.objects.len()];
        for (i, &o) in objs.iter().enumerate() {
            pos[o] = i;
        }
        let mut kept = Vec::new();
        for (f, m) in self.morphisms.iter().enumerate() {
            if pos[m.src] != usize::MAX && pos[m.tgt] != usize::MAX {
                kept.push(f);
            }
        }
        let mut new_index = vec![usize::MAX; self.morphisms.len()];
        for (i, &f) in kept.iter().enumerate() {
            new_index[f] = i;
        }
        let morphisms = kept
            .iter()
            .map(|&f| Morphism {
                name: self.morphisms[f].name.clone(),
                src: pos[self.morphisms[f].src],
                tgt: pos[self.morphisms[f].tgt],
            })
            .collect();
        let identity = objs.iter().map(|&o| new_index[self.identity[o]]).collect();
        let objects = objs.iter().map(|&o| self.objects[o].clone()).collect();
        let sub = FinCategory::from_composition(objects, morphisms, identity, |g, f| {
            new_index[self.comp(kept[g], kept[f])]
        })
        .expect("full subcategory of a valid category is valid");
        (sub, kept)
    }

    /// Partition of the objects under the equivalence generated by
    /// morphisms. Components are ordered by least object and each is sorted.
    pub fn connected_components(&self) -> Vec<Vec<ObjId>> {
        let mut uf = UnionFind::new(self.objects.len());
        for m in &self.morphisms {
            uf.union(m.src, m.tgt);
        }
        let (class_of, count) = uf.classes();
        let mut comps = vec![Vec::new(); count];
        for (o, &c) in class_of.iter().enumerate() {
            comps[c].push(o);
        }
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() == 1
    }

    /// Objects admitting exactly one morphism to every object.
    pub fn initial_objects(&self) -> Vec<ObjId> {
        let n = self.objects.len();
        (0..n)
            .filter(|&a| (0..n).all(|b| self.hom(a, b).len() == 1))
            .collect()
    }

    pub fn terminal_objects(&self) -> Vec<ObjId> {
        let n = self.objects.len();
        (0..n)
            .filter(|&b| (0..n).all(|a| self.hom(a, b).len() == 1))
            .collect()
    }

    /// Serializable form in the category file schema.
    pub fn to_raw(&self) -> RawCategory {
        let mut compose = Vec::new();
        for f in 0..self.morphisms.len() {
            if self.is_identity(f) {
                continue;
            }
            for g in self.out_of(self.tgt(f)) {
                if self.is_identity(g) {
                    continue;
                }
                compose.push(RawComposite {
                    first: self.morphisms[f].name.clone(),
                    then: self.morphisms[g].name.clone(),
                    equals: self.morphisms[self.comp(g, f)].name.clone(),
                });
            }
        }
        RawCategory {
            objects: self.objects.clone(),
            morphisms: self
                .morphisms
                .iter()
                .map(|m| RawMorphism {
                    name: m.name.clone(),
                    src: self.objects[m.src].clone(),
                    tgt: self.objects[m.tgt].clone(),
                })
                .collect(),
            identities: self
                .identity
                .iter()
                .enumerate()
                .map(|(c, &i)| (self.objects[c].clone(), self.morphisms[i].name.clone()))
                .collect(),
            compose,
        }
    }

    /// Same category with every object and morphism renamed by `rename`.
    pub fn renamed(
        &self,
        mut object: impl FnMut(usize, &str) -> String,
        mut morphism: impl FnMut(usize, &str) -> String,
    ) -> FinCategory {
        let mut c = self.clone();
        for (i, o) in c.objects.iter_mut().enumerate() {
            *o = object(i, o);
        }
        for (i, m) in c.morphisms.iter_mut().enumerate() {
            m.name = morphism(i, &m.name);
        }
        c
    }
}

/// Category file schema.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawCategory {
    pub objects: Vec<String>,
    pub morphisms: Vec<RawMorphism>,
    pub identities: std::collections::BTreeMap<String, String>,
    #[serde(default)]
    pub compose: Vec<RawComposite>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawMorphism {
    pub name: String,
    pub src: String,
    pub tgt: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawComposite {
    pub first: String,
    pub then: String,
    pub equals: String,
}

impl RawCategory {
    /// Validates the raw data. Composites involving an identity may be
    /// omitted; when present they must be correct.
    pub fn validate(&self) -> Result<FinCategory, CategoryError> {
        let mut obj_index = HashMap::new();
        for (i, o) in self.objects.iter().enumerate() {
            if obj_index.insert(o.as_str(), i).is_some() {
                return Err(CategoryError::DuplicateObject(o.clone()));
            }
        }
        let lookup_obj = |context: &str, name: &str| {
            obj_index
                .get(name)
                .copied()
                .ok_or_else(|| CategoryError::UnknownObject {
                    context: context.to_string(),
                    name: name.to_string(),
                })
        };
        let mut morphisms = Vec::new();
        let mut mor_index = HashMap::new();
        for (i, m) in self.morphisms.iter().enumerate() {
            if mor_index.insert(m.name.as_str(), i).is_some() {
                return Err(CategoryError::DuplicateMorphism(m.name.clone()));
            }
            let ctx = format!("morphism `{}`", m.name);
            morphisms.push(Morphism {
                name: m.name.clone(),
                src: lookup_obj(&ctx, &m.src)?,
                tgt: lookup_obj(&ctx, &m.tgt)?,
            });
        }
        let lookup_mor = |context: &str, name: &str| {
            mor_index
                .get(name)
                .copied()
                .ok_or_else(|| CategoryError::UnknownMorphism {
                    context: context.to_string(),
                    name: name.to_string(),
                })
        };
        for key in self.identities.keys() {
            lookup_obj("identities", key)?;
        }
        let mut identity = Vec::new();
        for o in &self.objects {
            let name = self
                .identities
                .get(o)
                .ok_or_else(|| CategoryError::BadIdentity {
                    object: o.clone(),
                    reason: "no identity declared".into(),
                })?;
            let id = lookup_mor(&format!("identity of `{o}`"), name)?;
            let c = obj_index[o.as_str()];
            if morphisms[id].src != c || morphisms[id].tgt != c {
                return Err(CategoryError::BadIdentity {
                    object: o.clone(),
                    reason: format!("`{name}` is not an endomorphism of it"),
                });
            }
            identity.push(id);
        }
        let n = morphisms.len();
        let mut table: Vec<Option<MorId>> = vec![None; n * n];
        for entry in &self.compose {
            let ctx = format!("composite `{} ∘ {}`", entry.then, entry.first);
            let f = lookup_mor(&ctx, &entry.first)?;
            let g = lookup_mor(&ctx, &entry.then)?;
            let h = lookup_mor(&ctx, &entry.equals)?;
            if morphisms[f].tgt != morphisms[g].src {
                return Err(CategoryError::SourceTargetMismatch {
                    first: entry.first.clone(),
                    then: entry.then.clone(),
                    reason: "pair is not composable".into(),
                });
            }
            if morphisms[h].src != morphisms[f].src || morphisms[h].tgt != morphisms[g].tgt {
                return Err(CategoryError::SourceTargetMismatch {
                    first: entry.first.clone(),
                    then: entry.then.clone(),
                    reason: format!("`{}` has the wrong source or target", entry.equals),
                });
            }
            let slot = &mut table[f * n + g];
            match *slot {
                Some(prev) if prev != h => {
                    return Err(CategoryError::ConflictingComposite {
                        first: entry.first.clone(),
                        then: entry.then.clone(),
                    })
                }
                _ => *slot = Some(h),
            }
        }
        // Fill in unit composites; a declared one that disagrees is a bad identity.
        for f in 0..n {
            let (s, t) = (morphisms[f].src, morphisms[f].tgt);
            for (first, then, obj) in [(f, identity[t], t), (identity[s], f, s)] {
                let slot = &mut table[first * n + then];
                match *slot {
                    Some(h) if h != f => {
                        return Err(CategoryError::BadIdentity {
                            object: self.objects[obj].clone(),
                            reason: format!("composite with `{}` is not `{}`", morphisms[f].name, morphisms[f].name),
                        })
                    }
                    _ => *slot = Some(f),
                }
            }
        }
        FinCategory::from_table(self.objects.clone(), morphisms, identity, table)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::families;

    fn raw_arrow() -> RawCategory {
        serde_json::from_str(
            r#"{"objects":["a","b"],
                "morphisms":[{"name":"1a","src":"a","tgt":"a"},{"name":"1b","src":"b","tgt":"b"},{"name":"u","src":"a","tgt":"b"}],
                "identities":{"a":"1a","b":"1b"},
                "compose":[]}"#,
        )
        .unwrap()
    }

    #[test]
    fn terminal_and_arrow_validate() {
        let one = families::terminal();
        assert_eq!((one.num_objects(), one.num_morphisms()), (1, 1));
        let arrow = raw_arrow().validate().unwrap();
        assert_eq!((arrow.num_objects(), arrow.num_morphisms()), (2, 3));
        assert_eq!(arrow.to_raw().validate().unwrap(), arrow);
    }

    #[test]
    fn missing_composite_is_reported() {
        let mut raw = families::chain(3).to_raw();
        raw.compose.clear();
        assert!(matches!(
            raw.validate(),
            Err(CategoryError::MissingComposite { .. })
        ));
    }

    #[test]
    fn bad_identity_is_reported() {
        let mut raw = raw_arrow();
        raw.identities.insert("a".into(), "u".into());
        assert!(matches!(raw.validate(), Err(CategoryError::BadIdentity { object, .. }) if object == "a"));
        let mut raw = raw_arrow();
        raw.compose.push(RawComposite {
            first: "u".into(),
            then: "1b".into(),
            equals: "1a".into(),
        });
        assert!(matches!(
            raw.validate(),
            Err(CategoryError::SourceTargetMismatch { .. })
        ));
    }

    #[test]
    fn non_associative_chain() {
        // One object, morphisms {1, f, g, h}; table chosen so that
        // (h∘g)∘f ≠ h∘(g∘f).
        let raw: RawCategory = serde_json::from_str(
            r#"{"objects":["*"],
                "morphisms":[{"name":"1","src":"*","tgt":"*"},{"name":"f","src":"*","tgt":"*"},
                             {"name":"g","src":"*","tgt":"*"},{"name":"h","src":"*","tgt":"*"}],
                "identities":{"*":"1"},
                "compose":[
                  {"first":"f","then":"f","equals":"f"},{"first":"f","then":"g","equals":"g"},{"first":"f","then":"h","equals":"h"},
                  {"first":"g","then":"f","equals":"f"},{"first":"g","then":"g","equals":"g"},{"first":"g","then":"h","equals":"f"},
                  {"first":"h","then":"f","equals":"h"},{"first":"h","then":"g","equals":"h"},{"first":"h","then":"h","equals":"h"}]}"#,
        )
        .unwrap();
        assert!(matches!(
            raw.validate(),
            Err(CategoryError::NonAssociative { .. })
        ));
    }

    #[test]
    fn unknown_names_cite_the_entry() {
        let mut raw = raw_arrow();
        raw.morphisms[2].tgt = "c".into();
        let err = raw.validate().unwrap_err();
        assert_eq!(
            err,
            CategoryError::UnknownObject {
                context: "morphism `u`".into(),
                name: "c".into()
            }
        );
    }

    #[test]
    fn opposite_is_an_involution() {
        for (_, c) in families::curated() {
            let op = c.opposite();
            assert_eq!(op.num_objects(), c.num_objects());
            assert_eq!(op.num_morphisms(), c.num_morphisms());
            assert_eq!(op.opposite(), c);
        }
        let arrow = families::walking_arrow();
        let op = arrow.opposite();
        let u = op.morphism_index("u").unwrap();
        assert_eq!((op.src(u), op.tgt(u)), (1, 0));
    }

    #[test]
    fn product_counts() {
        let arrow = families::walking_arrow();
        let sq = arrow.product(&arrow);
        assert_eq!((sq.num_objects(), sq.num_morphisms()), (4, 9));
        let curated = families::curated();
        for (_, c) in curated.iter().take(8) {
            for (_, d) in curated.iter().take(8) {
                assert_eq!(c.product(d).num_morphisms(), c.num_morphisms() * d.num_morphisms());
            }
        }
    }

    #[test]
    fn components() {
        assert_eq!(families::discrete(3).connected_components().len(), 3);
        assert_eq!(families::walking_arrow().connected_components().len(), 1);
        assert_eq!(families::empty().connected_components().len(), 0);
        for (_, c) in families::curated() {
            assert_eq!(c.connected_components(), c.opposite().connected_components());
        }
    }
}
