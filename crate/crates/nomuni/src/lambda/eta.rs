use std::collections::{BTreeSet, HashSet};

use super::beta::beta_normalize;
use super::term::{type_of, LambdaTerm};
use super::types::LambdaType;
use crate::error::Error;

/// β-normalises and η-expands `t`. New binders take names from `pool` (first entry of
/// the right type that would not capture anything), and only fall back to fresh names
/// when the pool has none.
pub fn eta_long_normalize(t: &LambdaTerm, pool: &[(String, LambdaType)]) -> Result<LambdaTerm, Error> {
    type_of(t)?;
    let t = beta_normalize(t);
    let mut taken: BTreeSet<String> = t.bound_names();
    taken.extend(t.free_vars().into_iter().map(|(x, _)| x));
    taken.extend(pool.iter().map(|(x, _)| x.clone()));
    let mut ctx = Expander { pool, taken, counter: 0 };
    Ok(ctx.expand(&t))
}

struct Expander<'a> {
    pool: &'a [(String, LambdaType)],
    taken: BTreeSet<String>,
    counter: usize,
}

impl Expander<'_> {
    fn expand(&mut self, t: &LambdaTerm) -> LambdaTerm {
        if let LambdaTerm::Lam(x, ty, body) = t {
            return LambdaTerm::Lam(x.clone(), ty.clone(), Box::new(self.expand(body)));
        }
        let (head, args) = t.spine();
        let args: Vec<LambdaTerm> = args.iter().map(|a| self.expand(a)).collect();
        let head_ty = match head {
            LambdaTerm::Bound(_, ty) | LambdaTerm::Free(_, ty) | LambdaTerm::Const(_, ty) => ty,
            _ => return LambdaTerm::apply(head.clone(), args),
        };
        let (arg_tys, _) = head_ty.split();
        let missing = &arg_tys[args.len()..];
        if missing.is_empty() {
            return LambdaTerm::apply(head.clone(), args);
        }
        let mut avoid: HashSet<String> = t.free_bound_names();
        let mut binders = Vec::with_capacity(missing.len());
        for ty in missing {
            let z = self.pick(ty, &avoid);
            avoid.insert(z.clone());
            binders.push((z, (*ty).clone()));
        }
        let mut all = args;
        for (z, ty) in &binders {
            all.push(self.expand(&LambdaTerm::Bound(z.clone(), ty.clone())));
        }
        LambdaTerm::lams(&binders, LambdaTerm::apply(head.clone(), all))
    }

    fn pick(&mut self, ty: &LambdaType, avoid: &HashSet<String>) -> String {
        if let Some((x, _)) = self.pool.iter().find(|(x, t)| t == ty && !avoid.contains(x)) {
            return x.clone();
        }
        loop {
            self.counter += 1;
            let cand = format!("x{}", self.counter);
            if !self.taken.contains(&cand) && !avoid.contains(&cand) {
                self.taken.insert(cand.clone());
                return cand;
            }
        }
    }
}
