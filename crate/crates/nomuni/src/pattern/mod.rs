//! Unification of higher-order patterns by transformation.
//!
//! Equations are processed leftmost first. While the outer binders of the two sides
//! differ or are unused, the α-rules apply: rename a binder (alpha-1), drop a binder
//! neither side uses (alpha-2), or prune a binder one side cannot use from the free
//! variable that receives it (alpha-3). Once the binders agree, the bodies are compared
//! by their heads: rigid-rigid decomposes, flex-rigid imitates, flex-flex joins two
//! free variables on their common arguments.
//!
//! β-reduction after binding a free variable only ever meets pattern redexes, so it is a
//! renaming of names (see [`crate::lambda::beta_apply`]).

mod state;
mod witness;

pub use state::{Failure, FailureReason, Rule, Step, TraceLine, UnifyConfig, UnifyOutcome, UnifyState};
pub use witness::{check_pattern_more_general, find_pattern_witness};

use crate::error::Error;
use crate::translate::PatternProblem;

/// The most general unifier of `p`, or the reason there is none.
pub fn unify(p: &PatternProblem) -> Result<UnifyOutcome, Error> {
    unify_with(p, &UnifyConfig::default()).map(|(out, _)| out)
}

/// [`unify`] with a chosen fresh-name seed, optionally recording every applied rule.
pub fn unify_with(p: &PatternProblem, config: &UnifyConfig) -> Result<(UnifyOutcome, Vec<TraceLine>), Error> {
    let order: Vec<String> = p.atoms.atoms().iter().map(|a| a.name.clone()).collect();
    let mut state = UnifyState::new(&p.equations, &order, config)?;
    let out = state.run();
    Ok((out, state.take_trace()))
}
