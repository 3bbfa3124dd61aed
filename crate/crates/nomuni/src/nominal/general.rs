use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::judge::{alpha_eq_check, FreshnessEnv};
use super::problem::entails;
use super::subst::{subst_apply, NominalSubst};
use super::term::{perm_from_map, Atom, NominalTerm, Permutation};

/// A nominal unifier `⟨∇, σ⟩`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct NominalSolution {
    pub nabla: FreshnessEnv,
    pub subst: NominalSubst,
}

impl NominalSolution {
    pub fn new(nabla: FreshnessEnv, subst: NominalSubst) -> Self {
        NominalSolution { nabla, subst }
    }

    /// Variables mentioned anywhere, in a deterministic order.
    fn vars(&self) -> Vec<String> {
        let mut out: Vec<String> = self.subst.bindings.keys().cloned().collect();
        for t in self.subst.bindings.values() {
            t.collect_vars(&mut out);
        }
        for (_, x) in self.nabla.iter() {
            if !out.contains(x) {
                out.push(x.clone());
            }
        }
        out
    }

    fn atoms(&self) -> BTreeSet<Atom> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for t in self.subst.bindings.values() {
            t.collect_atoms(&mut out, &mut seen);
        }
        seen.extend(self.nabla.iter().map(|(a, _)| a.clone()));
        seen
    }
}

impl fmt::Display for NominalSolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}, {}>", self.nabla, self.subst)
    }
}

/// `sol1` is more general than `sol2` via `witness`: `∇₂ ⊢ witness(∇₁)` and
/// `∇₂ ⊢ witness∘σ₁ ≈ σ₂` on `Dom(σ₁) ∪ Dom(σ₂)`.
pub fn check_more_general(
    sol1: &NominalSolution,
    sol2: &NominalSolution,
    witness: &NominalSubst,
) -> bool {
    entails(&sol2.nabla, witness, &sol1.nabla)
        && domain(sol1, sol2).iter().all(|x| {
            alpha_eq_check(
                &sol2.nabla,
                &subst_apply(witness, &sol1.subst.image(x)),
                &sol2.subst.image(x),
            )
        })
}

fn domain(sol1: &NominalSolution, sol2: &NominalSolution) -> BTreeSet<String> {
    sol1.subst.dom().union(&sol2.subst.dom()).cloned().collect()
}

/// Searches a witness of shape `X ↦ π·Z` showing that `sol1` is more general than `sol2`.
pub fn find_more_general_witness(
    sol1: &NominalSolution,
    sol2: &NominalSolution,
) -> Option<NominalSubst> {
    let dom = domain(sol1, sol2);
    let mut needed: Vec<String> = Vec::new();
    for x in &dom {
        sol1.subst.image(x).collect_vars(&mut needed);
    }
    for (_, x) in sol1.nabla.iter() {
        if !needed.contains(x) {
            needed.push(x.clone());
        }
    }
    let mut targets = sol2.vars();
    for x in sol1.vars() {
        if !targets.contains(&x) {
            targets.push(x);
        }
    }
    let mut atoms = sol1.atoms();
    atoms.extend(sol2.atoms());
    let perms = all_permutations(&atoms.into_iter().collect::<Vec<_>>());

    // Each check fires once all variables it mentions are assigned.
    let position: BTreeMap<&String, usize> = needed.iter().enumerate().map(|(i, x)| (x, i)).collect();
    let mut checks: Vec<Vec<Check>> = vec![Vec::new(); needed.len().max(1)];
    for x in &dom {
        let at = sol1
            .subst
            .image(x)
            .vars()
            .iter()
            .map(|v| position[v])
            .max()
            .unwrap_or(0);
        checks[at].push(Check::Binding(x.clone()));
    }
    for (a, x) in sol1.nabla.iter() {
        checks[position[x]].push(Check::Fresh(a.clone(), x.clone()));
    }

    let mut witness = NominalSubst::new();
    let search = Search {
        sol1,
        sol2,
        needed: &needed,
        targets: &targets,
        perms: &perms,
        checks: &checks,
    };
    if needed.is_empty() {
        return check_more_general(sol1, sol2, &witness).then_some(witness);
    }
    search.go(0, &mut witness).then_some(witness)
}

/// A witness for `sol1` being more general than `sol2`, provided the converse also has one.
pub fn find_equivalence_witness(
    sol1: &NominalSolution,
    sol2: &NominalSolution,
) -> Option<NominalSubst> {
    let w = find_more_general_witness(sol1, sol2)?;
    find_more_general_witness(sol2, sol1)?;
    Some(w)
}

#[derive(Clone)]
enum Check {
    Binding(String),
    Fresh(Atom, String),
}

struct Search<'a> {
    sol1: &'a NominalSolution,
    sol2: &'a NominalSolution,
    needed: &'a [String],
    targets: &'a [String],
    perms: &'a [Permutation],
    checks: &'a [Vec<Check>],
}

impl Search<'_> {
    fn go(&self, i: usize, witness: &mut NominalSubst) -> bool {
        if i == self.needed.len() {
            return check_more_general(self.sol1, self.sol2, witness);
        }
        let y = &self.needed[i];
        for z in self.targets {
            for pi in self.perms {
                witness.insert(y, NominalTerm::Susp(pi.clone(), z.clone()));
                if self.checks[i].iter().all(|c| self.holds(c, witness)) && self.go(i + 1, witness) {
                    return true;
                }
            }
        }
        witness.bindings.remove(y);
        false
    }

    fn holds(&self, c: &Check, witness: &NominalSubst) -> bool {
        let nabla2 = &self.sol2.nabla;
        match c {
            Check::Binding(x) => alpha_eq_check(
                nabla2,
                &subst_apply(witness, &self.sol1.subst.image(x)),
                &self.sol2.subst.image(x),
            ),
            Check::Fresh(a, x) => super::judge::fresh_check(nabla2, a, &witness.image(x)),
        }
    }
}

/// Every sort-preserving bijection of `atoms`, identity first.
fn all_permutations(atoms: &[Atom]) -> Vec<Permutation> {
    let mut by_sort: BTreeMap<&str, Vec<Atom>> = BTreeMap::new();
    for a in atoms {
        by_sort.entry(&a.sort).or_default().push(a.clone());
    }
    let mut maps: Vec<BTreeMap<Atom, Atom>> = vec![BTreeMap::new()];
    for group in by_sort.values() {
        let mut next = Vec::new();
        for arrangement in arrangements(group) {
            for m in &maps {
                let mut m = m.clone();
                m.extend(group.iter().cloned().zip(arrangement.iter().cloned()));
                next.push(m);
            }
        }
        maps = next;
    }
    maps.into_iter()
        .map(|m| perm_from_map(atoms, |a| m.get(a).cloned().unwrap_or_else(|| a.clone())))
        .collect()
}

/// All orderings of `items`, starting with the given one.
fn arrangements(items: &[Atom]) -> Vec<Vec<Atom>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut tail in arrangements(&rest) {
            tail.insert(0, head.clone());
            out.push(tail);
        }
    }
    out
}
