mod common;

use common::*;
use nomuni::nominal::NominalSolution;
use nomuni::text::{format_problem, format_solution, parse_problem, parse_solution_json, Format};
use proptest::prelude::*;

proptest! {
    #[test]
    fn problems_survive_printing(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let p = random_problem(&mut rng, &signature());
        let printed = format_problem(&p);
        prop_assert_eq!(parse_problem(&printed).unwrap(), p, "{}", printed);
    }

    #[test]
    fn solutions_survive_json(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let sig = signature();
        let sol = NominalSolution::new(
            random_nabla(&mut rng, &IMAGE_VARS, 0.3),
            random_subst(&mut rng, &sig, &PROBLEM_VARS, &IMAGE_VARS, 3),
        );
        prop_assert_eq!(parse_solution_json(&format_solution(&sol, Format::Json)).unwrap(), sol);
    }
}
