use std::collections::HashSet;

use super::pattern::eta_contract_var;
use super::swap::{pi_n_map, rename};
use super::term::LambdaTerm;
use crate::error::Error;

/// `(λx⃗.t)(args)`. When the arguments are pairwise distinct bound names not free in
/// `λx⃗.t`, the result is `Πₙ(x⃗, y⃗)·t`; otherwise it is computed by capture-avoiding
/// substitution followed by β-normalisation.
pub fn beta_apply(abstraction: &LambdaTerm, args: &[LambdaTerm]) -> Result<LambdaTerm, Error> {
    let (binders, _) = abstraction.strip_lams();
    if binders.len() < args.len() {
        return Err(Error::LengthMismatch(binders.len(), args.len()));
    }
    for ((x, ty), a) in binders.iter().zip(args) {
        let at = super::type_of(a)?;
        if at != **ty {
            return Err(Error::IllTyped(format!("argument for {x} has type {at}, expected {ty}")));
        }
    }
    match pattern_names(abstraction, args) {
        Some(ys) => Ok(beta_by_swapping(abstraction, &ys)),
        None => beta_by_substitution(abstraction, args),
    }
}

/// The argument names when the swapping path applies.
fn pattern_names(abstraction: &LambdaTerm, args: &[LambdaTerm]) -> Option<Vec<String>> {
    let mut ys = Vec::with_capacity(args.len());
    let mut seen = HashSet::new();
    for a in args {
        let y = eta_contract_var(a)?;
        if !seen.insert(y.clone()) {
            return None;
        }
        ys.push(y);
    }
    if ys.is_empty() {
        return Some(ys);
    }
    let fv = abstraction.free_bound_names();
    if ys.iter().any(|y| fv.contains(y)) {
        return None;
    }
    Some(ys)
}

/// Strips `ys.len()` binders and renames the body by `Πₙ`.
pub(crate) fn beta_by_swapping(abstraction: &LambdaTerm, ys: &[String]) -> LambdaTerm {
    let mut xs = Vec::with_capacity(ys.len());
    let mut t = abstraction;
    for _ in ys {
        let LambdaTerm::Lam(x, _, body) = t else { unreachable!("binder count checked") };
        xs.push(x.clone());
        t = body;
    }
    let map = pi_n_map(&xs, ys);
    if map.is_empty() {
        t.clone()
    } else {
        rename(&map, t)
    }
}

/// Textbook β-reduction: substitute one argument at a time, renaming binders to avoid capture.
pub fn beta_by_substitution(abstraction: &LambdaTerm, args: &[LambdaTerm]) -> Result<LambdaTerm, Error> {
    let mut t = abstraction.clone();
    for a in args {
        let LambdaTerm::Lam(x, _, body) = t else {
            return Err(Error::LengthMismatch(0, args.len()));
        };
        let mut avoid = body.bound_names();
        avoid.extend(a.bound_names());
        t = subst_bound(&body, &x, a, &mut NameSupply::new(avoid));
    }
    Ok(beta_normalize(&t))
}

/// Generates names `x'`, `x''`, … outside a growing avoid set.
pub(crate) struct NameSupply {
    avoid: std::collections::BTreeSet<String>,
}

impl NameSupply {
    pub(crate) fn new(avoid: std::collections::BTreeSet<String>) -> Self {
        NameSupply { avoid }
    }

    pub(crate) fn fresh(&mut self, base: &str) -> String {
        let mut cand = format!("{base}'");
        while self.avoid.contains(&cand) {
            cand.push('\'');
        }
        self.avoid.insert(cand.clone());
        cand
    }
}

/// Capture-avoiding `[x ↦ s]t`.
pub(crate) fn subst_bound(t: &LambdaTerm, x: &str, s: &LambdaTerm, names: &mut NameSupply) -> LambdaTerm {
    match t {
        LambdaTerm::Bound(y, _) if y == x => s.clone(),
        LambdaTerm::Bound(..) | LambdaTerm::Free(..) | LambdaTerm::Const(..) => t.clone(),
        LambdaTerm::Lam(y, _, _) if y == x => t.clone(),
        LambdaTerm::Lam(y, ty, body) => {
            if !body.has_free_bound(x) {
                return t.clone();
            }
            if s.has_free_bound(y) {
                let z = names.fresh(y);
                let renamed = subst_bound(body, y, &LambdaTerm::Bound(z.clone(), ty.clone()), names);
                LambdaTerm::Lam(z, ty.clone(), Box::new(subst_bound(&renamed, x, s, names)))
            } else {
                LambdaTerm::Lam(y.clone(), ty.clone(), Box::new(subst_bound(body, x, s, names)))
            }
        }
        LambdaTerm::App(h, args) => LambdaTerm::App(
            Box::new(subst_bound(h, x, s, names)),
            args.iter().map(|a| subst_bound(a, x, s, names)).collect(),
        ),
    }
}

/// Full β-normalisation by capture-avoiding substitution, flattening nested spines.
pub fn beta_normalize(t: &LambdaTerm) -> LambdaTerm {
    match t {
        LambdaTerm::Bound(..) | LambdaTerm::Free(..) | LambdaTerm::Const(..) => t.clone(),
        LambdaTerm::Lam(x, ty, body) => LambdaTerm::Lam(x.clone(), ty.clone(), Box::new(beta_normalize(body))),
        LambdaTerm::App(h, args) => {
            let mut head = beta_normalize(h);
            let mut rest: Vec<LambdaTerm> = args.iter().map(beta_normalize).collect();
            rest.reverse();
            while let Some(a) = rest.pop() {
                head = match head {
                    LambdaTerm::Lam(x, _, body) => {
                        let mut avoid = body.bound_names();
                        avoid.extend(a.bound_names());
                        beta_normalize(&subst_bound(&body, &x, &a, &mut NameSupply::new(avoid)))
                    }
                    LambdaTerm::App(h2, mut a2) => {
                        a2.push(a);
                        LambdaTerm::App(h2, a2)
                    }
                    other => LambdaTerm::App(Box::new(other), vec![a]),
                };
            }
            head
        }
    }
}
