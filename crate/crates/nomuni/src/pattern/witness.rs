//! Generality of pattern substitutions: `σ₁ ≤ σ₂` when some `ρ` has `ρ∘σ₁ = σ₂` up to α.

use std::collections::{BTreeSet, HashSet};

use crate::lambda::{
    alpha_equal, beta_apply, canonical, eta_contract_var, eta_long_normalize, type_of, LambdaTerm, PatternSubst,
};

/// The image of `x` under `sigma` in η-long form, `x` itself when unbound.
fn image(sigma: &PatternSubst, x: &str, other: &PatternSubst) -> Option<LambdaTerm> {
    let t = match sigma.get(x) {
        Some(t) => t.clone(),
        None => {
            let ty = type_of(other.get(x)?).ok()?;
            LambdaTerm::Free(x.to_string(), ty)
        }
    };
    eta_long_normalize(&t, &[]).ok()
}

fn domain(a: &PatternSubst, b: &PatternSubst) -> BTreeSet<String> {
    a.dom().union(&b.dom()).cloned().collect()
}

/// Whether `witness ∘ general` and `specific` agree up to α on both domains.
pub fn check_pattern_more_general(general: &PatternSubst, specific: &PatternSubst, witness: &PatternSubst) -> bool {
    domain(general, specific).iter().all(|x| {
        let (Some(g), Some(s)) = (image(general, x, specific), image(specific, x, general)) else {
            return false;
        };
        match witness.apply(&g).and_then(|t| eta_long_normalize(&t, &[])) {
            Ok(t) => alpha_equal(&t, &s),
            Err(_) => false,
        }
    })
}

/// Finds `ρ` with `ρ∘general = specific` by matching the images of `general` against
/// those of `specific`. The variables of `specific` are treated as constants.
pub fn find_pattern_witness(general: &PatternSubst, specific: &PatternSubst) -> Option<PatternSubst> {
    let mut rho = PatternSubst::new();
    for x in domain(general, specific) {
        let g = canonical(&image(general, &x, specific)?);
        let s = canonical(&image(specific, &x, general)?);
        matches(&g, &s, &mut rho)?;
    }
    check_pattern_more_general(general, specific, &rho).then_some(rho)
}

fn matches(p: &LambdaTerm, t: &LambdaTerm, rho: &mut PatternSubst) -> Option<()> {
    if let (LambdaTerm::Free(z, _), args) = p.spine() {
        let names: Vec<String> = args.iter().map(eta_contract_var).collect::<Option<_>>()?;
        if let Some(prev) = rho.get(z) {
            let got = beta_apply(prev, args).ok()?;
            return alpha_equal(&got, t).then_some(());
        }
        let allowed: HashSet<&str> = names.iter().map(String::as_str).collect();
        if allowed.len() != names.len() || !t.free_bound_names().iter().all(|y| allowed.contains(y.as_str())) {
            return None;
        }
        let binders: Vec<_> = names
            .iter()
            .zip(args)
            .map(|(n, a)| Some((n.clone(), type_of(a).ok()?)))
            .collect::<Option<_>>()?;
        rho.insert(z, LambdaTerm::lams(&binders, t.clone()));
        return Some(());
    }
    match (p, t) {
        (LambdaTerm::Lam(x, tx, b), LambdaTerm::Lam(y, ty, c)) if x == y && tx == ty => matches(b, c, rho),
        (LambdaTerm::App(h, xs), LambdaTerm::App(k, ys)) if h == k && xs.len() == ys.len() => {
            xs.iter().zip(ys).try_for_each(|(a, b)| matches(a, b, rho))
        }
        _ => (p == t).then_some(()),
    }
}
