//! Nominal unification by reduction to higher-order pattern unification.

pub mod back;
pub mod error;
pub mod freshness;
pub mod lambda;
pub mod nominal;
pub mod pattern;
pub mod solve;
pub mod text;
pub mod translate;

pub use error::Error;
