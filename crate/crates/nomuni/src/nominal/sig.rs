use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::term::{Atom, NominalTerm};
use crate::error::Error;

/// A sort: an atom sort `ν`, a data sort `δ`, or an abstraction sort `⟨ν⟩τ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sort {
    Atom(String),
    Data(String),
    Abs(String, Box<Sort>),
}

impl Sort {
    /// The base sort name for atom and data sorts.
    pub fn base_name(&self) -> Option<&str> {
        match self {
            Sort::Atom(n) | Sort::Data(n) => Some(n),
            Sort::Abs(..) => None,
        }
    }
}

impl fmt::Display for Sort {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sort::Atom(n) | Sort::Data(n) => f.write_str(n),
            Sort::Abs(n, body) => write!(f, "<{n}>{body}"),
        }
    }
}

/// Arity `τ₁×…×τₙ→δ` of a function symbol.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Arity {
    pub args: Vec<Sort>,
    pub result: String,
}

impl fmt::Display for Arity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.args.iter().enumerate() {
            if i > 0 {
                f.write_str(" * ")?;
            }
            write!(f, "{s}")?;
        }
        if !self.args.is_empty() {
            f.write_str(" -> ")?;
        }
        f.write_str(&self.result)
    }
}

/// A sorted nominal signature, together with the declared atoms.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Signature {
    pub atom_sorts: BTreeSet<String>,
    pub data_sorts: BTreeSet<String>,
    pub function_symbols: BTreeMap<String, Arity>,
    pub variable_sorts: BTreeMap<String, Sort>,
    /// Atom name to atom sort.
    pub atoms: BTreeMap<String, String>,
}

impl Signature {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_atom_sort(&mut self, name: &str) -> &mut Self {
        self.atom_sorts.insert(name.to_string());
        self
    }

    pub fn add_data_sort(&mut self, name: &str) -> &mut Self {
        self.data_sorts.insert(name.to_string());
        self
    }

    pub fn add_atom(&mut self, name: &str, sort: &str) -> &mut Self {
        self.atoms.insert(name.to_string(), sort.to_string());
        self
    }

    pub fn add_var(&mut self, name: &str, sort: Sort) -> &mut Self {
        self.variable_sorts.insert(name.to_string(), sort);
        self
    }

    pub fn add_fun(&mut self, name: &str, args: Vec<Sort>, result: &str) -> &mut Self {
        self.function_symbols.insert(
            name.to_string(),
            Arity {
                args,
                result: result.to_string(),
            },
        );
        self
    }

    /// The atom declared under `name`.
    pub fn atom(&self, name: &str) -> Result<Atom, Error> {
        self.atoms
            .get(name)
            .map(|s| Atom::new(name, s))
            .ok_or_else(|| Error::UnknownSymbol(name.to_string()))
    }

    /// Sort of a base sort name, classified as atom or data sort.
    pub fn base_sort(&self, name: &str) -> Result<Sort, Error> {
        if self.atom_sorts.contains(name) {
            Ok(Sort::Atom(name.to_string()))
        } else if self.data_sorts.contains(name) {
            Ok(Sort::Data(name.to_string()))
        } else {
            Err(Error::UndeclaredSort(name.to_string()))
        }
    }

    fn check_sort(&self, s: &Sort) -> Result<(), Error> {
        match s {
            Sort::Atom(n) if self.atom_sorts.contains(n) => Ok(()),
            Sort::Data(n) if self.data_sorts.contains(n) => Ok(()),
            Sort::Abs(n, body) if self.atom_sorts.contains(n) => self.check_sort(body),
            Sort::Atom(n) | Sort::Data(n) | Sort::Abs(n, _) => {
                Err(Error::UndeclaredSort(n.to_string()))
            }
        }
    }

    /// Checks the signature invariants.
    pub fn validate(&self) -> Result<(), Error> {
        if let Some(n) = self.atom_sorts.intersection(&self.data_sorts).next() {
            return Err(Error::IllFormed(format!(
                "sort {n} is declared both as atom sort and data sort"
            )));
        }
        for arity in self.function_symbols.values() {
            for s in &arity.args {
                self.check_sort(s)?;
            }
            if !self.data_sorts.contains(&arity.result) {
                return Err(Error::UndeclaredSort(arity.result.clone()));
            }
        }
        for (x, s) in &self.variable_sorts {
            self.check_sort(s)?;
            if matches!(s, Sort::Abs(..)) {
                return Err(Error::IllFormed(format!(
                    "variable {x} must have an atom or data sort"
                )));
            }
        }
        for s in self.atoms.values() {
            if !self.atom_sorts.contains(s) {
                return Err(Error::UndeclaredSort(s.clone()));
            }
        }
        Ok(())
    }

    /// Infers the sort of `t`, checking that it is well-sorted.
    pub fn sort_of(&self, t: &NominalTerm) -> Result<Sort, Error> {
        match t {
            NominalTerm::Atom(a) => {
                self.check_atom(a)?;
                Ok(Sort::Atom(a.sort.clone()))
            }
            NominalTerm::Abs(a, body) => {
                self.check_atom(a)?;
                Ok(Sort::Abs(a.sort.clone(), Box::new(self.sort_of(body)?)))
            }
            NominalTerm::Susp(pi, x) => {
                for s in &pi.swaps {
                    self.check_atom(&s.left)?;
                    self.check_atom(&s.right)?;
                    if s.left.sort != s.right.sort {
                        return Err(Error::SortMismatch {
                            expected: s.left.sort.clone(),
                            found: s.right.sort.clone(),
                            context: format!("swapping {s}"),
                        });
                    }
                }
                self.variable_sorts
                    .get(x)
                    .cloned()
                    .ok_or_else(|| Error::UnknownSymbol(x.clone()))
            }
            NominalTerm::App(f, args) => {
                let arity = self
                    .function_symbols
                    .get(f)
                    .ok_or_else(|| Error::UnknownSymbol(f.clone()))?;
                if arity.args.len() != args.len() {
                    return Err(Error::ArityMismatch {
                        symbol: f.clone(),
                        expected: arity.args.len(),
                        found: args.len(),
                    });
                }
                for (s, arg) in arity.args.iter().zip(args) {
                    let found = self.sort_of(arg)?;
                    if &found != s {
                        return Err(Error::SortMismatch {
                            expected: s.to_string(),
                            found: found.to_string(),
                            context: format!("argument of {f}"),
                        });
                    }
                }
                Ok(Sort::Data(arity.result.clone()))
            }
        }
    }

    fn check_atom(&self, a: &Atom) -> Result<(), Error> {
        match self.atoms.get(&a.name) {
            Some(s) if *s == a.sort => Ok(()),
            Some(s) => Err(Error::SortMismatch {
                expected: s.clone(),
                found: a.sort.clone(),
                context: format!("atom {}", a.name),
            }),
            None => Err(Error::UnknownSymbol(a.name.clone())),
        }
    }

    /// A name not declared as atom, variable or function symbol, built from `base`.
    pub fn unused_name(&self, base: &str, counter: &mut u64) -> String {
        loop {
            let cand = format!("{base}{counter}");
            *counter += 1;
            if !self.atoms.contains_key(&cand)
                && !self.variable_sorts.contains_key(&cand)
                && !self.function_symbols.contains_key(&cand)
            {
                return cand;
            }
        }
    }
}
