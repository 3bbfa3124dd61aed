//! Runs the code blocks of the guide in `book/src` as doctests.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/nominal-terms.md")]
pub mod nominal_terms {}
#[doc = include_str!("../../../book/src/freshness.md")]
pub mod freshness {}
#[doc = include_str!("../../../book/src/lambda-terms.md")]
pub mod lambda_terms {}
#[doc = include_str!("../../../book/src/translation.md")]
pub mod translation {}
#[doc = include_str!("../../../book/src/unification.md")]
pub mod unification {}
#[doc = include_str!("../../../book/src/back-translation.md")]
pub mod back_translation {}
#[doc = include_str!("../../../book/src/command-line.md")]
pub mod command_line {}
