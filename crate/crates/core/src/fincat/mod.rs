//! Finite categories with materialized composition tables, and functors
//! between them.

mod category;
pub mod families;
mod functor;
mod iso;
mod karoubi;

pub use category::{
    CategoryError, FinCategory, MorId, Morphism, ObjId, RawCategory, RawComposite, RawMorphism,
};
pub use functor::{FinFunctor, FunctorError};
pub use iso::{are_equivalent, find_isomorphism, skeleton, CategoryIso};
pub use karoubi::{idempotents_split, karoubi_envelope};

/// Validates candidate category data.
pub fn validate_category(raw: &RawCategory) -> Result<FinCategory, CategoryError> {
    raw.validate()
}
