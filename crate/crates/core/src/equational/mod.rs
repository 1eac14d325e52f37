//! Finitary languages with multi-sorted-arity symbols `A^n → A^m`, terms,
//! finite structures and models, free structures, colimits of models,
//! orthogonality and monads on finite sets given by tables.
//!
//! A finite set is `{0, …, n−1}`. A tuple in `A^k` is encoded
//! lexicographically with the first coordinate most significant, so an
//! operation `A^n → A^m` is a table of `|A|^n` codes below `|A|^m`.

mod colimits;
mod file;
mod free;
mod monad;
mod structure;
mod term;
pub mod theories;

use thiserror::Error;

pub use colimits::{chain_colimit, colimit_of_structures, reflexive_coequalizer_of_models, ModelColimit, ReflexiveQuotient};
pub use file::{parse_theory, RawEquation, RawTheory};
pub use free::{extend_from_generators, free_structure_bounded, orthogonality_check, FreeOutcome, FreeStructure};
pub use monad::{monad_algebra_count, monad_algebras, MonadTable, RawArrow, RawMonadTable};
pub use structure::{
    decode, encode, enumerate_models, enumerate_morphisms, first_failure, interpret_term, is_morphism, satisfies,
    search_morphisms, Equation, EquationFailure, Structure, StructureMorphism, Theory,
};
pub use term::{arity_of_term, FunctionSymbol, Language, Term};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum EquationalError {
    #[error("unknown function symbol `{0}`")]
    UnknownSymbol(String),
    #[error("arity mismatch: {0}")]
    ArityMismatch(String),
    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },
    #[error("function symbol `{0}` declared twice")]
    DuplicateSymbol(String),
    #[error("equation {index}: left side has arity {lhs:?}, right side {rhs:?}")]
    EquationArity {
        index: usize,
        lhs: (usize, usize),
        rhs: (usize, usize),
    },
    #[error("enumeration needs {needed} candidates, budget is {budget}")]
    BudgetExceeded { budget: u64, needed: u64 },
    #[error("colimit does not descend: {0}")]
    DescentFailure(String),
    #[error("not a reflexive pair: {0}")]
    NotReflexive(String),
    #[error("`{0}` is not a morphism of structures")]
    NotAMorphism(String),
    #[error("bad structure: {0}")]
    BadStructure(String),
    #[error("set of size {n} is outside the monad window {window}")]
    WindowExceeded { n: usize, window: usize },
    #[error("bad monad: {0}")]
    BadMonad(String),
    #[error("line {line}: {message}")]
    File { line: usize, message: String },
}
