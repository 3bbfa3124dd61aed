//! Sorted nominal terms, permutations, substitutions, and the `#` and `≈` judgments.
//!
//! The judgments are decided syntactically and serve as the oracle that every
//! other stage of the pipeline is checked against.

mod general;
mod judge;
mod problem;
mod sig;
mod subst;
mod term;

pub use general::{
    check_more_general, find_equivalence_witness, find_more_general_witness, NominalSolution,
};
pub use judge::{alpha_eq_check, disagreement, fresh_check, FreshnessEnv};
pub use problem::{check_solution, entails, Equation, NominalProblem};
pub use sig::{Arity, Signature, Sort};
pub use subst::{subst_apply, subst_compose, subst_restrict, NominalSubst};
pub use term::{perm_apply, perm_from_map, perm_inverse, Atom, NominalTerm, PermMap, Permutation, Swapping};
