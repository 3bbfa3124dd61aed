//! The whole pipeline: eliminate freshness, translate, unify, read back, verify.

use std::collections::HashSet;

use crate::back::{back_subst, build_freshness_env, declare_image_vars};
use crate::error::Error;
use crate::freshness::eliminate_freshness;
use crate::lambda::{LambdaTerm, PatternSubst};
use crate::nominal::{check_solution, Atom, NominalProblem, NominalSolution, Signature};
use crate::pattern::{unify_with, TraceLine, UnifyConfig, UnifyOutcome};
use crate::translate::{translate_problem, var_type, AtomList, PatternProblem};

#[derive(Clone, Debug)]
pub struct SolveOptions {
    /// Atom list order; atoms the problem uses but the list omits are appended.
    pub atoms: Option<Vec<String>>,
    pub seed: u64,
    pub trace: bool,
    pub verify: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            atoms: None,
            seed: 0,
            trace: false,
            verify: true,
        }
    }
}

/// Every intermediate result of one run of [`solve_with`].
#[derive(Clone, Debug)]
pub struct SolveReport {
    /// The problem after freshness elimination, which may have declared new atoms.
    pub equational: NominalProblem,
    pub atoms: AtomList,
    pub pattern: PatternProblem,
    pub outcome: UnifyOutcome,
    pub trace: Vec<TraceLine>,
    /// The pattern unifier, with identity bindings for the problem variables it leaves alone.
    pub pattern_unifier: Option<PatternSubst>,
    pub solution: Option<NominalSolution>,
    /// The signature extended with the variables the solution introduces.
    pub signature: Signature,
    /// Whether the solution passed [`check_solution`] on the original problem.
    pub verified: bool,
}

/// A most general unifier of `p`, or `None` when it has no unifier.
pub fn solve_nominal(p: &NominalProblem) -> Result<Option<NominalSolution>, Error> {
    solve_with(p, &SolveOptions::default()).map(|r| r.solution)
}

/// Runs the pipeline and keeps every stage. With `verify` set, a solution that fails
/// [`check_solution`] on `p` is an error.
pub fn solve_with(p: &NominalProblem, opts: &SolveOptions) -> Result<SolveReport, Error> {
    p.validate()?;
    let equational = eliminate_freshness(p)?;
    let atoms = atom_list(&equational, opts.atoms.as_deref())?;
    let pattern = translate_problem(&equational, &atoms)?;
    let sig = &equational.signature;
    let config = UnifyConfig {
        seed: opts.seed,
        trace: opts.trace,
        reserved: sig
            .variable_sorts
            .keys()
            .chain(sig.atoms.keys())
            .chain(sig.function_symbols.keys())
            .cloned()
            .collect::<HashSet<_>>(),
    };
    let (outcome, trace) = unify_with(&pattern, &config)?;
    let mut report = SolveReport {
        atoms,
        pattern,
        outcome,
        trace,
        pattern_unifier: None,
        solution: None,
        signature: sig.clone(),
        verified: false,
        equational,
    };
    let Some(unifier) = report.outcome.unifier() else {
        return Ok(report);
    };
    let mut sigma = unifier.clone();
    let none = Default::default();
    for x in report.equational.vars() {
        if sigma.get(&x).is_none() {
            let ty = var_type(&report.signature, &x, &none, &report.atoms)?;
            let body = LambdaTerm::apply(LambdaTerm::Free(x.clone(), ty), report.atoms.bound_vars());
            sigma.insert(&x, LambdaTerm::lams(&report.atoms.prefix(), body));
        }
    }
    let (nabla, _) = build_freshness_env(&sigma, &report.atoms)?;
    let subst = back_subst(&sigma, &nabla, &report.atoms)?;
    declare_image_vars(&mut report.signature, &sigma);
    let solution = NominalSolution::new(nabla, subst);
    report.verified = check_solution(p, &solution.nabla, &solution.subst);
    if opts.verify && !report.verified {
        return Err(Error::Unverified(solution.to_string()));
    }
    report.pattern_unifier = Some(sigma);
    report.solution = Some(solution);
    Ok(report)
}

fn atom_list(p: &NominalProblem, order: Option<&[String]>) -> Result<AtomList, Error> {
    let mut atoms: Vec<Atom> = match order {
        Some(names) => names.iter().map(|n| p.signature.atom(n)).collect::<Result<_, _>>()?,
        None => Vec::new(),
    };
    for a in p.atoms_in_order() {
        if !atoms.contains(&a) {
            atoms.push(a);
        }
    }
    AtomList::new(atoms)
}
