mod common;

use common::*;
use nomuni::freshness::eliminate_freshness;
use nomuni::nominal::{
    alpha_eq_check, check_more_general, check_solution, entails, perm_apply, perm_inverse, subst_apply, Equation,
    FreshnessEnv, NominalSolution, NominalSubst,
};
use proptest::prelude::*;

proptest! {
    #[test]
    fn inverse_permutation_undoes(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let sig = signature();
        let t = random_term(&mut rng, &sig, &d(), 4, &PROBLEM_VARS);
        let pi = random_perm(&mut rng, 5);
        // Generated suspensions may carry unreduced swap lists, so compare up to α with no assumptions.
        let empty = FreshnessEnv::new();
        prop_assert!(alpha_eq_check(&empty, &perm_apply(&pi, &perm_apply(&perm_inverse(&pi), &t)), &t));
        prop_assert!(alpha_eq_check(&empty, &perm_apply(&perm_inverse(&pi), &perm_apply(&pi, &t)), &t));
        prop_assert_eq!(perm_apply(&pi.compose(&perm_inverse(&pi)), &t), t);
    }

    #[test]
    fn sorts_are_preserved(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let sig = signature();
        let t = random_term(&mut rng, &sig, &d(), 4, &PROBLEM_VARS);
        let pi = random_perm(&mut rng, 4);
        let sigma = random_subst(&mut rng, &sig, &PROBLEM_VARS, &IMAGE_VARS, 2);
        prop_assert_eq!(sig.sort_of(&perm_apply(&pi, &t)).unwrap(), d());
        prop_assert_eq!(sig.sort_of(&subst_apply(&sigma, &t)).unwrap(), d());
        let a = random_term(&mut rng, &sig, &n(), 2, &PROBLEM_VARS);
        prop_assert_eq!(sig.sort_of(&subst_apply(&sigma, &perm_apply(&pi, &a))).unwrap(), n());
    }

    #[test]
    fn alpha_equivalence_is_reflexive_and_symmetric(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let sig = signature();
        let nabla = random_nabla(&mut rng, &PROBLEM_VARS, 0.4);
        let t = random_term(&mut rng, &sig, &d(), 4, &PROBLEM_VARS);
        let u = partner_term(&mut rng, &sig, &t, &PROBLEM_VARS);
        prop_assert!(alpha_eq_check(&nabla, &t, &t));
        prop_assert_eq!(alpha_eq_check(&nabla, &t, &u), alpha_eq_check(&nabla, &u, &t));
    }

    /// `∇′ ⊢ σ(∇)` and `∇ ⊢ t ≈ u` give `∇′ ⊢ σ(t) ≈ σ(u)`.
    #[test]
    fn instances_stay_equal(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let sig = signature();
        let nabla = random_nabla(&mut rng, &PROBLEM_VARS, 0.3);
        let t = random_term(&mut rng, &sig, &d(), 3, &PROBLEM_VARS);
        let u = alpha_variant(&mut rng, &t);
        let sigma = random_subst(&mut rng, &sig, &PROBLEM_VARS, &IMAGE_VARS, 2);
        let nabla_prime = random_nabla(&mut rng, &IMAGE_VARS, 0.8);
        if alpha_eq_check(&nabla, &t, &u) && entails(&nabla_prime, &sigma, &nabla) {
            prop_assert!(alpha_eq_check(&nabla_prime, &subst_apply(&sigma, &t), &subst_apply(&sigma, &u)));
        }
    }

    #[test]
    fn a_solution_is_more_general_than_itself(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let sig = signature();
        let sol = NominalSolution::new(
            random_nabla(&mut rng, &IMAGE_VARS, 0.3),
            random_subst(&mut rng, &sig, &PROBLEM_VARS, &IMAGE_VARS, 2),
        );
        prop_assert!(check_more_general(&sol, &sol, &NominalSubst::new()));
    }

    #[test]
    fn elimination_is_linear_and_complete(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let p = random_problem(&mut rng, &signature());
        let q = eliminate_freshness(&p).unwrap();
        prop_assert!(q.equations.iter().all(|e| matches!(e, Equation::Eq(..))));
        prop_assert!(q.size() <= 3 * p.size() + 4 * p.equations.len(), "{} -> {}", p.size(), q.size());
    }

    #[test]
    fn elimination_keeps_solutions(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let sig = signature();
        let p = random_problem(&mut rng, &sig);
        let q = eliminate_freshness(&p).unwrap();
        let nabla = random_nabla(&mut rng, &IMAGE_VARS, 0.7);
        let sigma = random_subst(&mut rng, &sig, &PROBLEM_VARS, &IMAGE_VARS, 1);
        prop_assert_eq!(check_solution(&p, &nabla, &sigma), check_solution(&q, &nabla, &sigma));
        let empty = FreshnessEnv::new();
        let id = NominalSubst::new();
        prop_assert_eq!(check_solution(&p, &empty, &id), check_solution(&q, &empty, &id));
    }
}
