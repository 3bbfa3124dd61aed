mod common;

use common::*;
use nomuni::lambda::{alpha_equal, is_pattern, PatternSubst};
use nomuni::nominal::{
    alpha_eq_check, check_solution, entails, fresh_check, subst_apply, FreshnessEnv, NominalProblem, NominalSubst,
    Signature,
};
use nomuni::solve::{solve_with, SolveOptions};
use nomuni::translate::{translate_problem, translate_subst, translate_subst_general, translate_term, PatternProblem};
use proptest::prelude::*;

fn unifies(sigma: &PatternSubst, p: &PatternProblem) -> bool {
    p.equations
        .iter()
        .all(|(t, u)| alpha_equal(&sigma.apply(t).unwrap(), &sigma.apply(u).unwrap()))
}

/// `check_solution` and the translated check agree on `⟨∇, σ⟩`.
fn agree(sig: &Signature, p: &NominalProblem, nabla: &FreshnessEnv, sigma: &NominalSubst) -> Result<bool, TestCaseError> {
    let atoms = atom_list(&p.signature);
    let tp = translate_problem(p, &atoms).unwrap();
    let ls = translate_subst(sig, sigma, nabla, &atoms).unwrap();
    let nominal = check_solution(p, nabla, sigma);
    prop_assert_eq!(nominal, unifies(&ls, &tp), "{:?} with <{}, {}>", p.equations, nabla, sigma);
    Ok(nominal)
}

proptest! {
    #[test]
    fn freshness_is_a_free_occurrence_test(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let sig = signature();
        let atoms = atom_list(&sig);
        let nabla = random_nabla(&mut rng, &PROBLEM_VARS, 0.4);
        let t = random_term(&mut rng, &sig, &d(), 4, &PROBLEM_VARS);
        let lt = translate_term(&sig, &t, &nabla, &atoms).unwrap();
        for a in N_ATOMS.iter().chain(&M_ATOMS) {
            let a = atom(a);
            prop_assert_eq!(fresh_check(&nabla, &a, &t), !lt.has_free_bound(&a.name));
        }
    }

    #[test]
    fn alpha_equivalence_is_alpha_equality(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let sig = signature();
        let atoms = atom_list(&sig);
        let nabla = random_nabla(&mut rng, &PROBLEM_VARS, 0.4);
        let t = random_term(&mut rng, &sig, &d(), 4, &PROBLEM_VARS);
        let u = partner_term(&mut rng, &sig, &t, &PROBLEM_VARS);
        let (lt, lu) = (
            translate_term(&sig, &t, &nabla, &atoms).unwrap(),
            translate_term(&sig, &u, &nabla, &atoms).unwrap(),
        );
        prop_assert_eq!(alpha_eq_check(&nabla, &t, &u), alpha_equal(&lt, &lu));
    }

    #[test]
    fn translation_commutes_with_substitution(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let sig = signature();
        let atoms = atom_list(&sig);
        let t = random_term(&mut rng, &sig, &d(), 4, &PROBLEM_VARS);
        let sigma = random_subst(&mut rng, &sig, &PROBLEM_VARS, &IMAGE_VARS, 2);
        let nabla1 = random_nabla(&mut rng, &PROBLEM_VARS, 0.2);
        let nabla2 = random_nabla(&mut rng, &IMAGE_VARS, 0.7);
        let st = translate_term(&sig, &subst_apply(&sigma, &t), &nabla2, &atoms).unwrap();
        if entails(&nabla2, &sigma, &nabla1) {
            let ls = translate_subst_general(&sig, &sigma, &nabla2, &nabla1, &atoms).unwrap();
            let lt = translate_term(&sig, &t, &nabla1, &atoms).unwrap();
            prop_assert!(alpha_equal(&ls.apply(&lt).unwrap(), &st));
        }
        let ls = translate_subst(&sig, &sigma, &nabla2, &atoms).unwrap();
        let lt = translate_term(&sig, &t, &FreshnessEnv::new(), &atoms).unwrap();
        prop_assert!(alpha_equal(&ls.apply(&lt).unwrap(), &st));
    }

    #[test]
    fn translated_problems_are_patterns(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let p = solvable_problem(&mut rng, &signature());
        let tp = translate_problem(&p, &atom_list(&p.signature)).unwrap();
        for (t, u) in &tp.equations {
            prop_assert!(is_pattern(t) && is_pattern(u));
        }
    }

    #[test]
    fn solutions_translate_to_unifiers(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let sig = signature();
        let (p, known) = solvable_problem_with_solution(&mut rng, &sig);
        prop_assert!(agree(&sig, &p, &FreshnessEnv::new(), &known)?);

        let q = random_problem(&mut rng, &sig);
        let q = nomuni::freshness::eliminate_freshness(&q).unwrap();
        let nabla = random_nabla(&mut rng, &IMAGE_VARS, 0.5);
        let sigma = random_subst(&mut rng, &sig, &PROBLEM_VARS, &IMAGE_VARS, 1);
        agree(&sig, &q, &nabla, &sigma)?;

        let opts = SolveOptions { atoms: Some(vec!["a".into(), "m".into(), "b".into(), "c".into(), "n".into(), "d".into()]), ..SolveOptions::default() };
        let report = solve_with(&p, &opts).unwrap();
        let sol = report.solution.expect("solvable by construction");
        prop_assert!(agree(&report.signature, &p, &sol.nabla, &sol.subst)?);
    }
}
