mod common;

use common::*;
use nomuni::lambda::{
    alpha_equal, beta_apply, beta_by_substitution, canonical, eta_long_normalize, is_pattern, swap_names, type_of,
    LambdaTerm, LambdaType,
};
use proptest::prelude::*;
use rand::seq::SliceRandom;

/// Exchanges `x` and `y` at every occurrence, binders included.
fn exchange(x: &str, y: &str, t: &LambdaTerm) -> LambdaTerm {
    let swap = |n: &String| {
        if n == x {
            y.to_string()
        } else if n == y {
            x.to_string()
        } else {
            n.clone()
        }
    };
    match t {
        LambdaTerm::Bound(n, ty) => LambdaTerm::Bound(swap(n), ty.clone()),
        LambdaTerm::Lam(n, ty, body) => LambdaTerm::Lam(swap(n), ty.clone(), Box::new(exchange(x, y, body))),
        LambdaTerm::App(h, args) => {
            LambdaTerm::App(Box::new(exchange(x, y, h)), args.iter().map(|a| exchange(x, y, a)).collect())
        }
        other => other.clone(),
    }
}

fn pool() -> Vec<(String, LambdaType)> {
    POOL.iter().map(|x| (x.to_string(), LambdaType::base("N"))).collect()
}

/// A term closed under `λx⃗`, for operations that need closed input.
fn closed(rng: &mut TestRng, loose: bool) -> LambdaTerm {
    LambdaTerm::lams(&pool(), lambda_body(rng, 4, loose))
}

proptest! {
    #[test]
    fn swapping_is_simultaneous_renaming(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let t = lambda_body(&mut rng, 4, true);
        let two: Vec<&&str> = POOL.choose_multiple(&mut rng, 2).collect();
        let (x, y) = (*two[0], *two[1]);
        let s = swap_names(x, y, &t);
        prop_assert_eq!(&s, &exchange(x, y, &t));
        prop_assert_eq!(swap_names(x, y, &s), t.clone());
        prop_assert_eq!(type_of(&s).unwrap(), type_of(&t).unwrap());
    }

    #[test]
    fn beta_by_swapping_agrees_with_substitution(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let Some((abs, ys)) = pattern_redex(&mut rng) else { return Ok(()) };
        let args: Vec<LambdaTerm> = ys.iter().map(|y| LambdaTerm::bound(y, LambdaType::base("N"))).collect();
        let fast = beta_apply(&abs, &args).unwrap();
        let slow = beta_by_substitution(&abs, &args).unwrap();
        prop_assert!(alpha_equal(&fast, &slow), "{} vs {}", fast, slow);
        let (binders, body) = abs.strip_lams();
        let rest = LambdaTerm::lams(
            &binders[ys.len()..].iter().map(|(x, ty)| (x.to_string(), (*ty).clone())).collect::<Vec<_>>(),
            body.clone(),
        );
        prop_assert_eq!(type_of(&fast).unwrap(), type_of(&rest).unwrap());
    }

    #[test]
    fn eta_long_form_is_idempotent(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let t = closed(&mut rng, true);
        let once = eta_long_normalize(&t, &pool()).unwrap();
        prop_assert_eq!(eta_long_normalize(&once, &pool()).unwrap(), once.clone());
        prop_assert_eq!(type_of(&once).unwrap(), type_of(&t).unwrap());
    }

    #[test]
    fn patterns_are_closed_under_alpha(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let t = closed(&mut rng, true);
        let u = canonical(&t);
        prop_assert!(alpha_equal(&t, &u));
        prop_assert_eq!(is_pattern(&t), is_pattern(&u));
        let two: Vec<&&str> = POOL.choose_multiple(&mut rng, 2).collect();
        let v = swap_names(two[0], two[1], &t);
        prop_assert!(alpha_equal(&t, &v));
        prop_assert_eq!(is_pattern(&t), is_pattern(&v));
    }
}
