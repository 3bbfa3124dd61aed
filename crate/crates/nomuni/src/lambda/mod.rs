//! Simply-typed λ-terms with named binders, and the operations pattern unification needs.
//!
//! Terms are kept in named form. Binder renaming is done by name swapping, and β-reduction
//! of a pattern redex `(λx⃗.t)(y⃗)` is a single permutation of names rather than a
//! substitution.

mod alpha;
mod beta;
mod eta;
mod pattern;
mod subst;
mod swap;
mod syntax;
mod term;
mod types;

pub use alpha::{alpha_equal, canonical};
pub use beta::{beta_apply, beta_by_substitution, beta_normalize};
pub use eta::eta_long_normalize;
pub use pattern::{eta_contract_var, is_pattern};
pub use subst::PatternSubst;
pub use swap::{pi_n, rename, swap_names, NamePerm};
pub(crate) use syntax::is_ident_char;
pub use syntax::{parse_lambda, LambdaEnv};
pub use term::{type_of, LambdaTerm};
pub use types::LambdaType;
