//! Bounded free cocompletions inside presheaf categories, reflexive
//! presentations, coproduct decompositions and Cauchy weights.

mod cauchy;
mod closure;
mod expr;
mod present;

pub use cauchy::{is_cauchy_weight, retract_of_representable, Splitting};
pub use closure::{bounded_closure, closure_contains, effective_shapes, Closure, ClosureConfig, ClosureMember};
pub use expr::{colimit_of_presheaves, ColimitExpression};
pub use present::{
    coproduct_decomposition, coproduct_of_representables, reflexive_presentation, Decomposition,
    ReflexivePresentation,
};
