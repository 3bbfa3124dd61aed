use super::term::LambdaTerm;

/// Renames every binder to `#d`, `d` its nesting depth. Bound names that occur free keep
/// their names; `#` never appears in a parsed name, so the two cannot clash.
pub fn canonical(t: &LambdaTerm) -> LambdaTerm {
    let mut scope: Vec<&str> = Vec::new();
    canon(t, &mut scope)
}

fn canon<'a>(t: &'a LambdaTerm, scope: &mut Vec<&'a str>) -> LambdaTerm {
    match t {
        LambdaTerm::Bound(x, ty) => match scope.iter().rposition(|y| y == x) {
            Some(level) => LambdaTerm::Bound(format!("#{level}"), ty.clone()),
            None => t.clone(),
        },
        LambdaTerm::Free(..) | LambdaTerm::Const(..) => t.clone(),
        LambdaTerm::Lam(x, ty, body) => {
            let level = scope.len();
            scope.push(x);
            let b = canon(body, scope);
            scope.pop();
            LambdaTerm::Lam(format!("#{level}"), ty.clone(), Box::new(b))
        }
        LambdaTerm::App(h, args) => LambdaTerm::App(
            Box::new(canon(h, scope)),
            args.iter().map(|a| canon(a, scope)).collect(),
        ),
    }
}

/// Equality up to consistent renaming of binders.
pub fn alpha_equal(t: &LambdaTerm, u: &LambdaTerm) -> bool {
    canonical(t) == canonical(u)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lambda::LambdaType;

    fn n() -> LambdaType {
        LambdaType::base("N")
    }

    fn xy(outer: &str, inner: &str, a1: &str, a2: &str) -> LambdaTerm {
        let x = LambdaTerm::free("X", LambdaType::arrows([n(), n()], LambdaType::base("D")));
        LambdaTerm::lam(
            outer,
            n(),
            LambdaTerm::lam(
                inner,
                n(),
                LambdaTerm::apply(x, vec![LambdaTerm::bound(a1, n()), LambdaTerm::bound(a2, n())]),
            ),
        )
    }

    #[test]
    fn examples() {
        let id_x = LambdaTerm::lam("x", n(), LambdaTerm::bound("x", n()));
        let id_y = LambdaTerm::lam("y", n(), LambdaTerm::bound("y", n()));
        assert!(alpha_equal(&id_x, &id_y));
        assert!(alpha_equal(&xy("x", "y", "x", "y"), &xy("y", "x", "y", "x")));
        assert!(!alpha_equal(&xy("x", "y", "x", "y"), &xy("x", "y", "y", "x")));
    }

    #[test]
    fn shadowing_and_free_names() {
        // λx.λx.x vs λx.λy.x
        let a = LambdaTerm::lam("x", n(), LambdaTerm::lam("x", n(), LambdaTerm::bound("x", n())));
        let b = LambdaTerm::lam("x", n(), LambdaTerm::lam("y", n(), LambdaTerm::bound("x", n())));
        assert!(!alpha_equal(&a, &b));
        assert!(!alpha_equal(&LambdaTerm::bound("x", n()), &LambdaTerm::bound("y", n())));
    }
}
