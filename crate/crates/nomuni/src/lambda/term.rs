use std::collections::{BTreeSet, HashMap, HashSet};

use serde::{Deserialize, Serialize};

use super::types::LambdaType;
use crate::error::Error;

/// Simply-typed λ-terms. Bound names and free-variable names live in separate
/// constructors, so the two namespaces never mix.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LambdaTerm {
    Bound(String, LambdaType),
    Free(String, LambdaType),
    Const(String, LambdaType),
    Lam(String, LambdaType, Box<LambdaTerm>),
    App(Box<LambdaTerm>, Vec<LambdaTerm>),
}

impl LambdaTerm {
    pub fn bound(name: &str, ty: LambdaType) -> Self {
        LambdaTerm::Bound(name.to_string(), ty)
    }

    pub fn free(name: &str, ty: LambdaType) -> Self {
        LambdaTerm::Free(name.to_string(), ty)
    }

    pub fn constant(name: &str, ty: LambdaType) -> Self {
        LambdaTerm::Const(name.to_string(), ty)
    }

    pub fn lam(name: &str, ty: LambdaType, body: LambdaTerm) -> Self {
        LambdaTerm::Lam(name.to_string(), ty, Box::new(body))
    }

    /// `λx₁…λxₙ.body`.
    pub fn lams<'a, I>(binders: I, body: LambdaTerm) -> Self
    where
        I: IntoIterator<Item = &'a (String, LambdaType)>,
        I::IntoIter: DoubleEndedIterator,
    {
        binders
            .into_iter()
            .rev()
            .fold(body, |acc, (x, ty)| LambdaTerm::Lam(x.clone(), ty.clone(), Box::new(acc)))
    }

    /// `head(args)`, or `head` itself when `args` is empty.
    pub fn apply(head: LambdaTerm, args: Vec<LambdaTerm>) -> Self {
        if args.is_empty() {
            head
        } else {
            LambdaTerm::App(Box::new(head), args)
        }
    }

    /// Leading binders and the body below them.
    pub fn strip_lams(&self) -> (Vec<(&str, &LambdaType)>, &LambdaTerm) {
        let mut binders = Vec::new();
        let mut t = self;
        while let LambdaTerm::Lam(x, ty, body) = t {
            binders.push((x.as_str(), ty));
            t = body;
        }
        (binders, t)
    }

    /// Head and arguments of an application spine.
    pub fn spine(&self) -> (&LambdaTerm, &[LambdaTerm]) {
        match self {
            LambdaTerm::App(h, args) => (h, args),
            _ => (self, &[]),
        }
    }

    pub fn is_lam(&self) -> bool {
        matches!(self, LambdaTerm::Lam(..))
    }

    /// Bound names occurring free.
    pub fn free_bound_names(&self) -> HashSet<String> {
        let mut out = HashSet::new();
        let mut scope = HashMap::new();
        self.fbn(&mut scope, &mut out);
        out
    }

    fn fbn<'a>(&'a self, scope: &mut HashMap<&'a str, usize>, out: &mut HashSet<String>) {
        match self {
            LambdaTerm::Bound(x, _) => {
                if !scope.contains_key(x.as_str()) {
                    out.insert(x.clone());
                }
            }
            LambdaTerm::Free(..) | LambdaTerm::Const(..) => {}
            LambdaTerm::Lam(x, _, body) => {
                *scope.entry(x).or_insert(0) += 1;
                body.fbn(scope, out);
                let n = scope.get_mut(x.as_str()).expect("pushed above");
                *n -= 1;
                if *n == 0 {
                    scope.remove(x.as_str());
                }
            }
            LambdaTerm::App(h, args) => {
                h.fbn(scope, out);
                for a in args {
                    a.fbn(scope, out);
                }
            }
        }
    }

    /// Whether bound name `x` occurs free.
    pub fn has_free_bound(&self, x: &str) -> bool {
        match self {
            LambdaTerm::Bound(y, _) => x == y,
            LambdaTerm::Free(..) | LambdaTerm::Const(..) => false,
            LambdaTerm::Lam(y, _, body) => x != y && body.has_free_bound(x),
            LambdaTerm::App(h, args) => h.has_free_bound(x) || args.iter().any(|a| a.has_free_bound(x)),
        }
    }

    /// Free variables with their types, in order of first occurrence.
    pub fn free_vars(&self) -> Vec<(String, LambdaType)> {
        let mut out = Vec::new();
        let mut seen = HashSet::new();
        self.collect_free_vars(&mut out, &mut seen);
        out
    }

    pub(crate) fn collect_free_vars(&self, out: &mut Vec<(String, LambdaType)>, seen: &mut HashSet<String>) {
        match self {
            LambdaTerm::Free(x, ty) => {
                if seen.insert(x.clone()) {
                    out.push((x.clone(), ty.clone()));
                }
            }
            LambdaTerm::Bound(..) | LambdaTerm::Const(..) => {}
            LambdaTerm::Lam(_, _, body) => body.collect_free_vars(out, seen),
            LambdaTerm::App(h, args) => {
                h.collect_free_vars(out, seen);
                for a in args {
                    a.collect_free_vars(out, seen);
                }
            }
        }
    }

    pub fn has_free_var(&self, x: &str) -> bool {
        match self {
            LambdaTerm::Free(y, _) => x == y,
            LambdaTerm::Bound(..) | LambdaTerm::Const(..) => false,
            LambdaTerm::Lam(_, _, body) => body.has_free_var(x),
            LambdaTerm::App(h, args) => h.has_free_var(x) || args.iter().any(|a| a.has_free_var(x)),
        }
    }

    /// Every bound name used, as binder or as occurrence.
    pub fn bound_names(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_bound_names(&mut out);
        out
    }

    pub(crate) fn collect_bound_names(&self, out: &mut BTreeSet<String>) {
        match self {
            LambdaTerm::Bound(x, _) => {
                out.insert(x.clone());
            }
            LambdaTerm::Free(..) | LambdaTerm::Const(..) => {}
            LambdaTerm::Lam(x, _, body) => {
                out.insert(x.clone());
                body.collect_bound_names(out);
            }
            LambdaTerm::App(h, args) => {
                h.collect_bound_names(out);
                for a in args {
                    a.collect_bound_names(out);
                }
            }
        }
    }

    /// Bound names with the types they are used at, binders and occurrences alike.
    pub fn bound_name_types(&self, out: &mut Vec<(String, LambdaType)>) {
        match self {
            LambdaTerm::Bound(x, ty) | LambdaTerm::Lam(x, ty, _) => {
                if !out.iter().any(|(y, t)| y == x && t == ty) {
                    out.push((x.clone(), ty.clone()));
                }
                if let LambdaTerm::Lam(_, _, body) = self {
                    body.bound_name_types(out);
                }
            }
            LambdaTerm::Free(..) | LambdaTerm::Const(..) => {}
            LambdaTerm::App(h, args) => {
                h.bound_name_types(out);
                for a in args {
                    a.bound_name_types(out);
                }
            }
        }
    }

    /// Node count.
    pub fn size(&self) -> usize {
        match self {
            LambdaTerm::Bound(..) | LambdaTerm::Free(..) | LambdaTerm::Const(..) => 1,
            LambdaTerm::Lam(_, _, body) => 1 + body.size(),
            LambdaTerm::App(h, args) => h.size() + args.iter().map(|a| a.size()).sum::<usize>(),
        }
    }
}

/// The simple type of `t`. Bound occurrences must agree with their binders.
pub fn type_of(t: &LambdaTerm) -> Result<LambdaType, Error> {
    let mut scope = HashMap::new();
    type_in(t, &mut scope)
}

type Scope<'a> = HashMap<&'a str, Vec<&'a LambdaType>>;

fn type_in<'a>(t: &'a LambdaTerm, scope: &mut Scope<'a>) -> Result<LambdaType, Error> {
    match t {
        LambdaTerm::Bound(x, ty) => match scope.get(x.as_str()).and_then(|s| s.last()) {
            Some(bty) if *bty != ty => Err(Error::IllTyped(format!(
                "bound variable {x} used at type {ty} but bound at {bty}"
            ))),
            _ => Ok(ty.clone()),
        },
        LambdaTerm::Free(_, ty) | LambdaTerm::Const(_, ty) => Ok(ty.clone()),
        LambdaTerm::Lam(x, ty, body) => {
            scope.entry(x).or_default().push(ty);
            let b = type_in(body, scope);
            scope.get_mut(x.as_str()).expect("pushed above").pop();
            Ok(LambdaType::arrow(ty.clone(), b?))
        }
        LambdaTerm::App(h, args) => {
            let mut ty = type_in(h, scope)?;
            for a in args {
                let at = type_in(a, scope)?;
                match ty {
                    LambdaType::Arrow(from, to) if *from == at => ty = *to,
                    other => {
                        return Err(Error::IllTyped(format!(
                            "cannot apply a term of type {other} to an argument of type {at}"
                        )))
                    }
                }
            }
            Ok(ty)
        }
    }
}
