//! Finite set-valued functors, their limits and colimits, categories of
//! elements and weighted colimits.

mod density;
mod elements;
pub(crate) mod enumerate;
mod functor;
mod iso;
mod limits;

pub use density::density_presentation;
pub use elements::{category_of_elements, weighted_colimit, ElementsCategory, WeightedColimit};
pub use enumerate::{
    carrier_vectors, dedup_up_to_iso, for_each_functor, functors_up_to_iso, functors_with_carriers,
    random_functor,
};
pub use functor::{PresheafError, RawSetFunctor, SetFunctor, Variance};
pub use iso::{count_natural_transformations, invariant_key, is_natural, natural_transformations, presheaf_iso};
pub use limits::{
    cocone_is_natural, colimit, cone_is_natural, limit, verify_colimit, verify_limit, Cocone, Colimit, Cone,
    Limit, Universality, DEFAULT_UNIVERSALITY_THRESHOLD,
};
