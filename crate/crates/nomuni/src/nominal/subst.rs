use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::term::{perm_apply, NominalTerm};

/// A finite substitution. Identity bindings `X ↦ X` are kept and count toward the domain.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct NominalSubst {
    pub bindings: BTreeMap<String, NominalTerm>,
}

impl NominalSubst {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs<I, S>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (S, NominalTerm)>,
        S: Into<String>,
    {
        NominalSubst {
            bindings: pairs.into_iter().map(|(x, t)| (x.into(), t)).collect(),
        }
    }

    pub fn insert(&mut self, x: &str, t: NominalTerm) {
        self.bindings.insert(x.to_string(), t);
    }

    pub fn get(&self, x: &str) -> Option<&NominalTerm> {
        self.bindings.get(x)
    }

    /// `σ(X)`, which is `X` itself outside the domain.
    pub fn image(&self, x: &str) -> NominalTerm {
        self.bindings
            .get(x)
            .cloned()
            .unwrap_or_else(|| NominalTerm::var(x))
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
}

impl fmt::Display for NominalSubst {
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

/// Grafting without renaming: atoms of `σ(X)` may be captured.
pub fn subst_apply(sigma: &NominalSubst, t: &NominalTerm) -> NominalTerm {
    if sigma.is_empty() {
        return t.clone();
    }
    match t {
        NominalTerm::App(f, args) => {
            NominalTerm::App(f.clone(), args.iter().map(|a| subst_apply(sigma, a)).collect())
        }
        NominalTerm::Atom(_) => t.clone(),
        NominalTerm::Abs(a, body) => NominalTerm::Abs(a.clone(), Box::new(subst_apply(sigma, body))),
        NominalTerm::Susp(pi, x) => match sigma.get(x) {
            Some(image) => perm_apply(pi, image),
            None => t.clone(),
        },
    }
}

/// `σ₁∘σ₂ = [X ↦ σ₁(σ₂(X)) | X ∈ Dom(σ₁) ∪ Dom(σ₂)]`.
pub fn subst_compose(s1: &NominalSubst, s2: &NominalSubst) -> NominalSubst {
    let mut out = NominalSubst::new();
    for x in s1.bindings.keys().chain(s2.bindings.keys()) {
        out.bindings
            .entry(x.clone())
            .or_insert_with(|| subst_apply(s1, &s2.image(x)));
    }
    out
}

pub fn subst_restrict(sigma: &NominalSubst, vars: &BTreeSet<String>) -> NominalSubst {
    NominalSubst {
        bindings: sigma
            .bindings
            .iter()
            .filter(|(x, _)| vars.contains(*x))
            .map(|(x, t)| (x.clone(), t.clone()))
            .collect(),
    }
}
