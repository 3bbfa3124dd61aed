use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::judge::{alpha_eq_check, fresh_check, FreshnessEnv};
use super::sig::{Signature, Sort};
use super::subst::{subst_apply, NominalSubst};
use super::term::{Atom, NominalTerm};
use crate::error::Error;

/// An equality equation `t ≈? u` or a freshness equation `a #? t`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Equation {
    Eq(NominalTerm, NominalTerm),
    Fresh(Atom, NominalTerm),
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Equation::Eq(t, u) => write!(f, "{t} ~ {u}"),
            Equation::Fresh(a, t) => write!(f, "{a} # {t}"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct NominalProblem {
    pub signature: Signature,
    pub equations: Vec<Equation>,
}

impl NominalProblem {
    pub fn new(signature: Signature, equations: Vec<Equation>) -> Self {
        NominalProblem {
            signature,
            equations,
        }
    }

    /// Variables in order of first occurrence.
    pub fn vars(&self) -> Vec<String> {
        let mut out = Vec::new();
        for e in &self.equations {
            match e {
                Equation::Eq(t, u) => {
                    t.collect_vars(&mut out);
                    u.collect_vars(&mut out);
                }
                Equation::Fresh(_, t) => t.collect_vars(&mut out),
            }
        }
        out
    }

    pub fn var_set(&self) -> BTreeSet<String> {
        self.vars().into_iter().collect()
    }

    /// Atoms in order of first textual occurrence.
    pub fn atoms_in_order(&self) -> Vec<Atom> {
        let mut out = Vec::new();
        let mut seen = BTreeSet::new();
        for e in &self.equations {
            match e {
                Equation::Eq(t, u) => {
                    t.collect_atoms(&mut out, &mut seen);
                    u.collect_atoms(&mut out, &mut seen);
                }
                Equation::Fresh(a, t) => {
                    if seen.insert(a.clone()) {
                        out.push(a.clone());
                    }
                    t.collect_atoms(&mut out, &mut seen);
                }
            }
        }
        out
    }

    pub fn is_equational(&self) -> bool {
        self.equations.iter().all(|e| matches!(e, Equation::Eq(..)))
    }

    pub fn size(&self) -> usize {
        self.equations
            .iter()
            .map(|e| match e {
                Equation::Eq(t, u) => t.size() + u.size(),
                Equation::Fresh(_, t) => 1 + t.size(),
            })
            .sum()
    }

    /// Checks the signature and the sorts of every equation.
    pub fn validate(&self) -> Result<(), Error> {
        self.signature.validate()?;
        for e in &self.equations {
            match e {
                Equation::Eq(t, u) => {
                    let (st, su) = (self.signature.sort_of(t)?, self.signature.sort_of(u)?);
                    if st != su {
                        return Err(Error::SortMismatch {
                            expected: st.to_string(),
                            found: su.to_string(),
                            context: format!("equation {e}"),
                        });
                    }
                }
                Equation::Fresh(a, t) => {
                    self.signature.sort_of(&NominalTerm::Atom(a.clone()))?;
                    self.signature.sort_of(t)?;
                }
            }
        }
        Ok(())
    }

    pub fn sort_of_var(&self, x: &str) -> Option<&Sort> {
        self.signature.variable_sorts.get(x)
    }
}

impl fmt::Display for NominalProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, e) in self.equations.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}

/// Whether `⟨∇, σ⟩` solves every equation of `problem`.
pub fn check_solution(problem: &NominalProblem, nabla: &FreshnessEnv, sigma: &NominalSubst) -> bool {
    problem.equations.iter().all(|e| match e {
        Equation::Eq(t, u) => alpha_eq_check(nabla, &subst_apply(sigma, t), &subst_apply(sigma, u)),
        Equation::Fresh(a, t) => fresh_check(nabla, a, &subst_apply(sigma, t)),
    })
}

/// `∇′ ⊢ σ(∇)`: every constraint of `nabla`, instantiated by `sigma`, holds under `nabla_prime`.
pub fn entails(nabla_prime: &FreshnessEnv, sigma: &NominalSubst, nabla: &FreshnessEnv) -> bool {
    nabla
        .iter()
        .all(|(a, x)| fresh_check(nabla_prime, a, &sigma.image(x)))
}
