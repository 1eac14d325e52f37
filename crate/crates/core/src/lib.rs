//! Finite-scale laboratory for flat weights, sound classes of limit shapes
//! and finitary universal algebra over `Set`.
//!
//! Every object here is finite and fully materialized: categories carry
//! complete composition tables, set-valued functors carry complete action
//! tables, and structures carry complete operation tables. Questions that
//! are only semi-decidable at this scale (flatness against a class of
//! shapes, soundness of a class) are answered with a three-valued
//! [`doctrine::Verdict`].
//!
//! Modules:
//!
//! - [`fincat`]: finite categories, functors, opposites, products, Karoubi
//!   envelopes, connected components, isomorphism search.
//! - [`presheaf`]: finite set-valued functors, limits, colimits, categories
//!   of elements, weighted colimits, density presentations.
//! - [`doctrine`]: shape classes, filtered/sifted deciders, the commutation
//!   oracle, flatness and weak-soundness searches.
//! - [`cocompletion`]: bounded free cocompletions, reflexive presentations,
//!   coproduct decompositions, Cauchy weights.
//! - [`equational`]: finitary languages, terms, structures, models, free
//!   structures, orthogonality and finite monads.

pub mod cocompletion;
pub mod doctrine;
pub mod equational;
pub mod fincat;
pub mod par;
pub mod presheaf;
mod unionfind;

pub use unionfind::UnionFind;
