//! From pattern unifiers back to nominal unifiers.
//!
//! A λ-term in η-long β-normal form over the atom list reads back as a nominal term when
//! every binder is an atom, bound names never head an application, and every free
//! variable is applied to distinct atoms. The last condition lets `X(c⃗)` be read as
//! `π·X` for a permutation `π` sending the atoms `X` may capture to `c⃗`.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::error::Error;
use crate::lambda::{beta_apply, LambdaTerm, LambdaType, PatternSubst};
use crate::nominal::{perm_from_map, Atom, FreshnessEnv, NominalSubst, NominalTerm, Signature, Sort};
use crate::translate::{atom_term, capturable_atoms, AtomList};

/// `⟦t⟧⁻¹∇`. The permutation of a suspension sends the capturable atoms of `X` to its
/// arguments; the other atoms are paired up in list order, sort by sort.
pub fn back_term(t: &LambdaTerm, nabla: &FreshnessEnv, atoms: &AtomList) -> Result<NominalTerm, Error> {
    let incompatible = || Error::Incompatible(t.to_string());
    match t {
        LambdaTerm::Lam(x, ty, body) => {
            let a = listed_atom(x, ty, atoms).ok_or_else(incompatible)?;
            Ok(NominalTerm::Abs(a, Box::new(back_term(body, nabla, atoms)?)))
        }
        LambdaTerm::Bound(x, ty) => listed_atom(x, ty, atoms)
            .map(NominalTerm::Atom)
            .ok_or_else(incompatible),
        LambdaTerm::Const(f, _) => Ok(NominalTerm::App(f.clone(), Vec::new())),
        LambdaTerm::Free(x, _) => suspension(x, &[], nabla, atoms).ok_or_else(incompatible),
        LambdaTerm::App(h, args) => match h.as_ref() {
            LambdaTerm::Const(f, _) => Ok(NominalTerm::App(
                f.clone(),
                args.iter()
                    .map(|a| back_term(a, nabla, atoms))
                    .collect::<Result<_, _>>()?,
            )),
            LambdaTerm::Free(x, _) => suspension(x, args, nabla, atoms).ok_or_else(incompatible),
            _ => Err(incompatible()),
        },
    }
}

fn listed_atom(x: &str, ty: &LambdaType, atoms: &AtomList) -> Option<Atom> {
    let a = atoms.get(x)?;
    (ty.base_name() == Some(a.sort.as_str())).then(|| a.clone())
}

fn suspension(x: &str, args: &[LambdaTerm], nabla: &FreshnessEnv, atoms: &AtomList) -> Option<NominalTerm> {
    let capt = capturable_atoms(x, nabla, atoms);
    if capt.len() != args.len() {
        return None;
    }
    let mut map: HashMap<&Atom, &Atom> = HashMap::new();
    let mut hit = BTreeSet::new();
    let mut args_atoms = Vec::with_capacity(args.len());
    for (b, c) in capt.iter().zip(args) {
        let LambdaTerm::Bound(n, ty) = c else { return None };
        let c = atoms.get(n).filter(|c| ty.base_name() == Some(c.sort.as_str()))?;
        if c.sort != b.sort || !hit.insert(c) {
            return None;
        }
        args_atoms.push(c);
        map.insert(b, c);
    }
    // Atoms outside the forced part, matched in list order within each sort.
    let mut spare: BTreeMap<&str, Vec<&Atom>> = BTreeMap::new();
    for a in atoms.atoms() {
        if !hit.contains(a) {
            spare.entry(a.sort.as_str()).or_default().push(a);
        }
    }
    let mut next: BTreeMap<&str, usize> = BTreeMap::new();
    for a in atoms.atoms() {
        if !map.contains_key(a) {
            let i = next.entry(a.sort.as_str()).or_default();
            map.insert(a, spare[a.sort.as_str()][*i]);
            *i += 1;
        }
    }
    let pi = perm_from_map(atoms.atoms(), |a| map[a].clone());
    Some(NominalTerm::Susp(pi, x.to_string()))
}

/// Whether `t` reads back under `nabla`.
pub fn is_compatible(t: &LambdaTerm, nabla: &FreshnessEnv, atoms: &AtomList) -> bool {
    back_term(t, nabla, atoms).is_ok()
}

/// `⟦σ⟧⁻¹∇`: each image is applied to the whole atom list, then read back.
pub fn back_subst(sigma: &PatternSubst, nabla: &FreshnessEnv, atoms: &AtomList) -> Result<NominalSubst, Error> {
    back_subst_general(sigma, nabla, &FreshnessEnv::new(), atoms)
}

/// `⟦σ⟧⁻¹_∇^∇′`: the image of `X` is applied to the atoms `X` may capture under `∇′`.
pub fn back_subst_general(
    sigma: &PatternSubst,
    nabla: &FreshnessEnv,
    nabla_prime: &FreshnessEnv,
    atoms: &AtomList,
) -> Result<NominalSubst, Error> {
    let mut out = NominalSubst::new();
    for (x, t) in &sigma.bindings {
        let args: Vec<LambdaTerm> = capturable_atoms(x, nabla_prime, atoms).iter().map(atom_term).collect();
        let body = beta_apply(t, &args)?;
        out.insert(x, back_term(&body, nabla, atoms)?);
    }
    Ok(out)
}

/// Freshness constraints under which every image of `sigma` reads back. Each free
/// variable `Z` of the images is given the leftmost sublist `L_Z` of the atom list
/// matching its argument types, and `a # Z` is added for every other atom.
pub fn build_freshness_env(
    sigma: &PatternSubst,
    atoms: &AtomList,
) -> Result<(FreshnessEnv, BTreeMap<String, Vec<Atom>>), Error> {
    let mut nabla = FreshnessEnv::new();
    let mut choice = BTreeMap::new();
    for t in sigma.bindings.values() {
        for (z, ty) in t.free_vars() {
            if choice.contains_key(&z) {
                continue;
            }
            let (arg_tys, _) = ty.split();
            let mut chosen = Vec::with_capacity(arg_tys.len());
            let mut want = arg_tys.iter().peekable();
            for a in atoms.atoms() {
                if want.peek().is_some_and(|w| w.base_name() == Some(a.sort.as_str())) {
                    want.next();
                    chosen.push(a.clone());
                } else {
                    nabla.insert(a.clone(), &z);
                }
            }
            if want.next().is_some() {
                return Err(Error::NoMatchingSublist(z));
            }
            choice.insert(z, chosen);
        }
    }
    Ok((nabla, choice))
}

/// Declares in `sig` every free variable of the images of `sigma` it does not know yet,
/// with the sort named by the variable's result type.
pub fn declare_image_vars(sig: &mut Signature, sigma: &PatternSubst) {
    for t in sigma.bindings.values() {
        for (z, ty) in t.free_vars() {
            if sig.variable_sorts.contains_key(&z) {
                continue;
            }
            let base = ty.split().1.base_name().expect("result types are base types").to_string();
            let sort = if sig.atom_sorts.contains(&base) {
                Sort::Atom(base)
            } else {
                Sort::Data(base)
            };
            sig.add_var(&z, sort);
        }
    }
}
