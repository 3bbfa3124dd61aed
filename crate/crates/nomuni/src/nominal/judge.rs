use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::term::{perm_apply, perm_inverse, Atom, NominalTerm, Permutation};

/// A set of freshness constraints `a # X`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FreshnessEnv {
    pub constraints: BTreeSet<(Atom, String)>,
}

impl FreshnessEnv {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs<'a, I>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (Atom, &'a str)>,
    {
        FreshnessEnv {
            constraints: pairs.into_iter().map(|(a, x)| (a, x.to_string())).collect(),
        }
    }

    pub fn insert(&mut self, a: Atom, x: &str) {
        self.constraints.insert((a, x.to_string()));
    }

    pub fn contains(&self, a: &Atom, x: &str) -> bool {
        // BTreeSet lookup on a borrowed tuple needs an owned key.
        self.constraints.contains(&(a.clone(), x.to_string()))
    }

    pub fn is_empty(&self) -> bool {
        self.constraints.is_empty()
    }

    pub fn len(&self) -> usize {
        self.constraints.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = &(Atom, String)> {
        self.constraints.iter()
    }
}

impl fmt::Display for FreshnessEnv {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (a, x)) in self.constraints.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{a} # {x}")?;
        }
        f.write_str("}")
    }
}

/// Decides `∇ ⊢ a # t`.
pub fn fresh_check(nabla: &FreshnessEnv, a: &Atom, t: &NominalTerm) -> bool {
    match t {
        NominalTerm::Atom(b) => a != b,
        NominalTerm::App(_, args) => args.iter().all(|u| fresh_check(nabla, a, u)),
        NominalTerm::Abs(b, body) => a == b || fresh_check(nabla, a, body),
        NominalTerm::Susp(pi, x) => nabla.contains(&perm_inverse(pi).apply_atom(a), x),
    }
}

/// Decides `∇ ⊢ t ≈ u`.
pub fn alpha_eq_check(nabla: &FreshnessEnv, t: &NominalTerm, u: &NominalTerm) -> bool {
    match (t, u) {
        (NominalTerm::Atom(a), NominalTerm::Atom(b)) => a == b,
        (NominalTerm::App(f, ts), NominalTerm::App(g, us)) => {
            f == g
                && ts.len() == us.len()
                && ts.iter().zip(us).all(|(t, u)| alpha_eq_check(nabla, t, u))
        }
        (NominalTerm::Abs(a, t1), NominalTerm::Abs(b, u1)) => {
            if a == b {
                alpha_eq_check(nabla, t1, u1)
            } else {
                a.sort == b.sort
                    && fresh_check(nabla, a, u1)
                    && alpha_eq_check(nabla, t1, &perm_apply(&Permutation::swap(a.clone(), b.clone()), u1))
            }
        }
        (NominalTerm::Susp(p, x), NominalTerm::Susp(q, y)) => {
            x == y && disagreement(p, q).iter().all(|c| nabla.contains(c, x))
        }
        _ => false,
    }
}

/// Atoms on which `p` and `q` differ. Only atoms in either support can differ.
pub fn disagreement(p: &Permutation, q: &Permutation) -> BTreeSet<Atom> {
    let (pm, qm) = (p.to_map(), q.to_map());
    pm.moved()
        .chain(qm.moved())
        .filter(|c| pm.apply(c) != qm.apply(c))
        .cloned()
        .collect()
}
