use std::fmt;

use serde::{Deserialize, Serialize};

/// Simple types `τ ::= base | τ → τ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum LambdaType {
    Base(String),
    Arrow(Box<LambdaType>, Box<LambdaType>),
}

impl LambdaType {
    pub fn base(name: &str) -> Self {
        LambdaType::Base(name.to_string())
    }

    pub fn arrow(from: LambdaType, to: LambdaType) -> Self {
        LambdaType::Arrow(Box::new(from), Box::new(to))
    }

    /// `τ₁ → … → τₙ → result`.
    pub fn arrows<I>(args: I, result: LambdaType) -> Self
    where
        I: IntoIterator<Item = LambdaType>,
        I::IntoIter: DoubleEndedIterator,
    {
        args.into_iter()
            .rev()
            .fold(result, |acc, a| LambdaType::arrow(a, acc))
    }

    /// Argument types and the base result type.
    pub fn split(&self) -> (Vec<&LambdaType>, &LambdaType) {
        let mut args = Vec::new();
        let mut t = self;
        while let LambdaType::Arrow(a, b) = t {
            args.push(a.as_ref());
            t = b;
        }
        (args, t)
    }

    pub fn is_base(&self) -> bool {
        matches!(self, LambdaType::Base(_))
    }

    pub fn base_name(&self) -> Option<&str> {
        match self {
            LambdaType::Base(n) => Some(n),
            LambdaType::Arrow(..) => None,
        }
    }
}

impl fmt::Display for LambdaType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LambdaType::Base(n) => f.write_str(n),
            LambdaType::Arrow(a, b) if a.is_base() => write!(f, "{a} -> {b}"),
            LambdaType::Arrow(a, b) => write!(f, "({a}) -> {b}"),
        }
    }
}
