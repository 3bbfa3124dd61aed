use std::collections::HashSet;

use super::term::LambdaTerm;

/// The bound name `y` when `t` is `λz⃗.y(z⃗)` (η-contracting nested arguments too).
pub fn eta_contract_var(t: &LambdaTerm) -> Option<String> {
    let (binders, body) = t.strip_lams();
    let (head, args) = body.spine();
    let LambdaTerm::Bound(y, _) = head else { return None };
    if args.len() != binders.len() || binders.iter().any(|(z, _)| z == y) {
        return None;
    }
    for ((z, _), a) in binders.iter().zip(args) {
        if eta_contract_var(a).as_deref() != Some(*z) {
            return None;
        }
    }
    // λz.λz.y(z,z) is not an η-expansion of y.
    let distinct: HashSet<&str> = binders.iter().map(|(z, _)| *z).collect();
    (distinct.len() == binders.len()).then(|| y.clone())
}

/// Every free-variable occurrence is applied to pairwise distinct bound names.
pub fn is_pattern(t: &LambdaTerm) -> bool {
    match t {
        LambdaTerm::Bound(..) | LambdaTerm::Free(..) | LambdaTerm::Const(..) => true,
        LambdaTerm::Lam(_, _, body) => is_pattern(body),
        LambdaTerm::App(h, args) => match h.as_ref() {
            LambdaTerm::Free(..) => {
                let mut seen = HashSet::new();
                args.iter()
                    .all(|a| eta_contract_var(a).is_some_and(|y| seen.insert(y)))
            }
            LambdaTerm::Lam(..) | LambdaTerm::App(..) => false,
            _ => args.iter().all(is_pattern),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lambda::LambdaType;

    fn n() -> LambdaType {
        LambdaType::base("N")
    }

    fn d() -> LambdaType {
        LambdaType::base("D")
    }

    #[test]
    fn examples() {
        let xv = LambdaTerm::free("X", LambdaType::arrow(n(), d()));
        let yv = LambdaTerm::free("Y", d());
        let f = LambdaTerm::constant("f", LambdaType::arrows([d(), d()], d()));
        let t = LambdaTerm::lam(
            "x",
            n(),
            LambdaTerm::apply(f, vec![LambdaTerm::apply(xv, vec![LambdaTerm::bound("x", n())]), yv]),
        );
        assert!(is_pattern(&t));

        let x2 = LambdaTerm::free("X", LambdaType::arrows([n(), n()], d()));
        let bad = LambdaTerm::lam(
            "x",
            n(),
            LambdaTerm::lam(
                "y",
                n(),
                LambdaTerm::apply(x2, vec![LambdaTerm::bound("x", n()), LambdaTerm::bound("x", n())]),
            ),
        );
        assert!(!is_pattern(&bad));

        // λx y. X(λz.x(z), y)
        let nd = LambdaType::arrow(n(), d());
        let x3 = LambdaTerm::free("X", LambdaType::arrows([nd.clone(), n()], d()));
        let eta = LambdaTerm::lam(
            "z",
            n(),
            LambdaTerm::apply(LambdaTerm::bound("x", nd.clone()), vec![LambdaTerm::bound("z", n())]),
        );
        let ok = LambdaTerm::lam(
            "x",
            nd,
            LambdaTerm::lam("y", n(), LambdaTerm::apply(x3, vec![eta, LambdaTerm::bound("y", n())])),
        );
        assert!(is_pattern(&ok));
    }

    #[test]
    fn contraction() {
        let nd = LambdaType::arrow(n(), d());
        let eta = LambdaTerm::lam(
            "z",
            n(),
            LambdaTerm::apply(LambdaTerm::bound("x", nd.clone()), vec![LambdaTerm::bound("z", n())]),
        );
        assert_eq!(eta_contract_var(&eta).as_deref(), Some("x"));
        let not_eta = LambdaTerm::lam(
            "z",
            n(),
            LambdaTerm::apply(LambdaTerm::bound("z", nd), vec![LambdaTerm::bound("z", n())]),
        );
        assert_eq!(eta_contract_var(&not_eta), None);
    }
}
