use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::beta::beta_apply;
use super::term::LambdaTerm;
use crate::error::Error;

/// A substitution on free variables of λ-terms.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternSubst {
    pub bindings: BTreeMap<String, LambdaTerm>,
}

impl PatternSubst {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs<I, S>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (S, LambdaTerm)>,
        S: Into<String>,
    {
        PatternSubst {
            bindings: pairs.into_iter().map(|(x, t)| (x.into(), t)).collect(),
        }
    }

    pub fn insert(&mut self, x: &str, t: LambdaTerm) {
        self.bindings.insert(x.to_string(), t);
    }

    pub fn get(&self, x: &str) -> Option<&LambdaTerm> {
        self.bindings.get(x)
    }

    pub fn dom(&self) -> BTreeSet<String> {
        self.bindings.keys().cloned().collect()
    }

    pub fn is_empty(&self) -> bool {
        self.bindings.is_empty()
    }

    pub fn len(&self) -> usize {
        self.bindings.len()
    }

    /// `σ(t)`, β-reducing the redexes the images create.
    pub fn apply(&self, t: &LambdaTerm) -> Result<LambdaTerm, Error> {
        if self.is_empty() {
            return Ok(t.clone());
        }
        Ok(match t {
            LambdaTerm::Bound(..) | LambdaTerm::Const(..) => t.clone(),
            LambdaTerm::Free(x, _) => self.get(x).cloned().unwrap_or_else(|| t.clone()),
            LambdaTerm::Lam(x, ty, body) => LambdaTerm::Lam(x.clone(), ty.clone(), Box::new(self.apply(body)?)),
            LambdaTerm::App(h, args) => {
                let args = args.iter().map(|a| self.apply(a)).collect::<Result<Vec<_>, _>>()?;
                match h.as_ref() {
                    LambdaTerm::Free(x, _) if self.bindings.contains_key(x) => beta_apply(&self.bindings[x], &args)?,
                    _ => LambdaTerm::App(Box::new(self.apply(h)?), args),
                }
            }
        })
    }

    /// `self ∘ other` on `Dom(self) ∪ Dom(other)`.
    pub fn compose(&self, other: &PatternSubst) -> Result<PatternSubst, Error> {
        let mut out = PatternSubst::new();
        for (x, t) in &other.bindings {
            out.bindings.insert(x.clone(), self.apply(t)?);
        }
        for (x, t) in &self.bindings {
            out.bindings.entry(x.clone()).or_insert_with(|| t.clone());
        }
        Ok(out)
    }

    pub fn restrict(&self, vars: &BTreeSet<String>) -> PatternSubst {
        PatternSubst {
            bindings: self
                .bindings
                .iter()
                .filter(|(x, _)| vars.contains(*x))
                .map(|(x, t)| (x.clone(), t.clone()))
                .collect(),
        }
    }
}

impl fmt::Display for PatternSubst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, (x, t)) in self.bindings.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{x} -> {t}")?;
        }
        f.write_str("]")
    }
}
