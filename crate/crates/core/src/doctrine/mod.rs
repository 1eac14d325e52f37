//! Classes of limit shapes, filtered/sifted deciders, flatness via
//! categories of elements, a bounded commutation oracle and a search for
//! counterexamples to weak soundness.

mod flat;
mod oracle;
mod shapes;
mod soundness;
mod structural;
mod verdict;

pub use flat::{
    characterize_flat_examples, flat_predicate, is_d_filtered, is_d_filtered_crosscheck, is_flat,
    structural_shortcut, FlatMode, FlatReport, FlatRow,
};
pub use oracle::{commutation_refute, recheck_witness, weighted_commutation_refute, Oracle};
pub use shapes::{shape_universe, ShapeClass, ShapeKeyword};
pub use soundness::{
    category_corpus, cocompleteness_failure, for_each_diagram, has_colimit, weak_soundness_search, CORPUS_VERSION,
};
pub use structural::{components_filtered, is_connected, is_filtered, is_sifted};
pub use verdict::{
    Bounds, Certificate, CommutationWitness, ComparisonFailure, DoctrineError, SearchConfig, Verdict, Witness,
};
