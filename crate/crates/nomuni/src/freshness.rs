//! Removal of freshness equations: `a #? t` becomes `a.b.t ≈? b.b.t` for some
//! atom `b ≠ a` of the same sort.

use std::collections::BTreeMap;

use crate::error::Error;
use crate::nominal::{Atom, Equation, NominalProblem, NominalTerm};

/// Replaces every freshness equation, minting a new atom for a sort that has no second one.
pub fn eliminate_freshness(p: &NominalProblem) -> Result<NominalProblem, Error> {
    eliminate_freshness_with(p, true)
}

/// As [`eliminate_freshness`]; with `mint` false a sort lacking a second atom is an error.
pub fn eliminate_freshness_with(p: &NominalProblem, mint: bool) -> Result<NominalProblem, Error> {
    // Occurring atoms first, then atoms that are declared but unused.
    let mut order = p.atoms_in_order();
    for (name, sort) in &p.signature.atoms {
        let a = Atom::new(name, sort);
        if !order.contains(&a) {
            order.push(a);
        }
    }
    let mut signature = p.signature.clone();
    let mut minted: BTreeMap<String, Atom> = BTreeMap::new();
    let mut counter = 1;
    let mut equations = Vec::with_capacity(p.equations.len());
    for e in &p.equations {
        match e {
            Equation::Eq(..) => equations.push(e.clone()),
            Equation::Fresh(a, t) => {
                let b = match order.iter().find(|b| b.sort == a.sort && *b != a) {
                    Some(b) => b.clone(),
                    None if mint => minted
                        .entry(a.sort.clone())
                        .or_insert_with(|| {
                            let name = signature.unused_name(&a.sort.to_lowercase(), &mut counter);
                            signature.add_atom(&name, &a.sort);
                            Atom::new(&name, &a.sort)
                        })
                        .clone(),
                    None => return Err(Error::NoSecondAtom(a.sort.clone())),
                };
                let lhs = NominalTerm::abs(a, NominalTerm::abs(&b, t.clone()));
                let rhs = NominalTerm::abs(&b, NominalTerm::abs(&b, t.clone()));
                equations.push(Equation::Eq(lhs, rhs));
            }
        }
    }
    Ok(NominalProblem::new(signature, equations))
}
