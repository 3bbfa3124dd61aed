//! Seeded generators shared by the integration tests.
#![allow(dead_code)]

use nomuni::nominal::{
    Atom, Equation, FreshnessEnv, NominalProblem, NominalSubst, NominalTerm, Permutation, Signature, Sort, Swapping,
};
use nomuni::lambda::{LambdaTerm, LambdaType};
use nomuni::translate::AtomList;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub const N_ATOMS: [&str; 4] = ["a", "b", "c", "d"];
pub const M_ATOMS: [&str; 2] = ["m", "n"];
/// Variables the problems mention.
pub const PROBLEM_VARS: [&str; 4] = ["X", "Y", "W", "U"];
/// Variables substitution images mention.
pub const IMAGE_VARS: [&str; 3] = ["Z1", "Z2", "V1"];
/// Spare variables, used when a generated problem generalises a subterm.
pub const GEN_D: [&str; 6] = ["G0", "G1", "G2", "G3", "G4", "G5"];
pub const GEN_N: [&str; 3] = ["H0", "H1", "H2"];

pub fn n() -> Sort {
    Sort::Atom("N".into())
}

pub fn m() -> Sort {
    Sort::Atom("M".into())
}

pub fn d() -> Sort {
    Sort::Data("D".into())
}

/// Two atom sorts, one data sort, and symbols of every argument shape.
pub fn signature() -> Signature {
    let mut s = Signature::new();
    s.add_atom_sort("N").add_atom_sort("M").add_data_sort("D");
    for a in N_ATOMS {
        s.add_atom(a, "N");
    }
    for a in M_ATOMS {
        s.add_atom(a, "M");
    }
    s.add_fun("f", vec![d(), d()], "D");
    s.add_fun("g", vec![n(), d()], "D");
    s.add_fun("h", vec![Sort::Abs("N".into(), Box::new(d()))], "D");
    s.add_fun("k", vec![], "D");
    s.add_fun("p", vec![n()], "D");
    s.add_fun("q", vec![Sort::Abs("M".into(), Box::new(d()))], "D");
    s.add_fun("r", vec![m(), d()], "D");
    for x in ["X", "Y", "W", "Z1", "Z2"].iter().chain(&GEN_D) {
        s.add_var(x, d());
    }
    for x in ["U", "V1"].iter().chain(&GEN_N) {
        s.add_var(x, n());
    }
    s
}

/// Atom list interleaving the two sorts.
pub fn atom_list(sig: &Signature) -> AtomList {
    AtomList::from_names(sig, &["a", "m", "b", "c", "n", "d"]).unwrap()
}

pub fn atom(name: &str) -> Atom {
    let sort = if M_ATOMS.contains(&name) { "M" } else { "N" };
    Atom::new(name, sort)
}

fn atoms_of(sort: &str) -> &'static [&'static str] {
    if sort == "M" {
        &M_ATOMS
    } else {
        &N_ATOMS
    }
}

pub fn random_atom(rng: &mut TestRng, sort: &str) -> Atom {
    Atom::new(atoms_of(sort).choose(rng).unwrap(), sort)
}

/// Up to `max` swappings, each within one sort; identity swaps included.
pub fn random_perm(rng: &mut TestRng, max: usize) -> Permutation {
    let len = rng.gen_range(0..=max);
    let swaps = (0..len)
        .map(|_| {
            let sort = if rng.gen_bool(0.8) { "N" } else { "M" };
            Swapping::new(random_atom(rng, sort), random_atom(rng, sort))
        })
        .collect();
    Permutation::from_swaps(swaps)
}

fn var_sort(sig: &Signature, x: &str) -> Sort {
    sig.variable_sorts[x].clone()
}

/// A random term of sort `sort` whose variables come from `vars`.
pub fn random_term(rng: &mut TestRng, sig: &Signature, sort: &Sort, depth: usize, vars: &[&str]) -> NominalTerm {
    let candidates: Vec<&str> = vars.iter().copied().filter(|x| var_sort(sig, x) == *sort).collect();
    let susp = |rng: &mut TestRng, candidates: &[&str]| {
        NominalTerm::Susp(random_perm(rng, 3), candidates.choose(rng).unwrap().to_string())
    };
    match sort {
        Sort::Atom(s) => {
            if !candidates.is_empty() && rng.gen_bool(0.3) {
                susp(rng, &candidates)
            } else {
                NominalTerm::Atom(random_atom(rng, s))
            }
        }
        Sort::Abs(s, body) => NominalTerm::abs(&random_atom(rng, s), random_term(rng, sig, body, depth, vars)),
        Sort::Data(_) => {
            let leaf = depth == 0;
            let choice = rng.gen_range(0..if leaf { 3 } else { 8 });
            let sub = |rng: &mut TestRng, s: &Sort| random_term(rng, sig, s, depth.saturating_sub(1), vars);
            match choice {
                0 if !candidates.is_empty() => susp(rng, &candidates),
                0 | 1 => NominalTerm::app("k", vec![]),
                2 => NominalTerm::app("p", vec![sub(rng, &n())]),
                3 => NominalTerm::app("f", vec![sub(rng, &d()), sub(rng, &d())]),
                4 => NominalTerm::app("g", vec![sub(rng, &n()), sub(rng, &d())]),
                5 => NominalTerm::app("h", vec![sub(rng, &Sort::Abs("N".into(), Box::new(d())))]),
                6 => NominalTerm::app("q", vec![sub(rng, &Sort::Abs("M".into(), Box::new(d())))]),
                _ if !candidates.is_empty() && rng.gen_bool(0.5) => susp(rng, &candidates),
                _ => NominalTerm::app("r", vec![sub(rng, &m()), sub(rng, &d())]),
            }
        }
    }
}

/// Each pair `a # X` with `X ∈ vars` is included with probability `density`.
pub fn random_nabla(rng: &mut TestRng, vars: &[&str], density: f64) -> FreshnessEnv {
    let mut nabla = FreshnessEnv::new();
    for x in vars {
        for a in N_ATOMS.iter().chain(&M_ATOMS) {
            if rng.gen_bool(density) {
                nabla.insert(atom(a), x);
            }
        }
    }
    nabla
}

/// A substitution with domain `dom` whose images mention only `image_vars`.
pub fn random_subst(rng: &mut TestRng, sig: &Signature, dom: &[&str], image_vars: &[&str], depth: usize) -> NominalSubst {
    let mut sigma = NominalSubst::new();
    for x in dom {
        let s = var_sort(sig, x);
        sigma.insert(x, random_term(rng, sig, &s, depth, image_vars));
    }
    sigma
}

/// `t` with some binders renamed: `a.s` becomes `b.(a b)·s`, which is α-equivalent
/// exactly when `b # s`.
pub fn alpha_variant(rng: &mut TestRng, t: &NominalTerm) -> NominalTerm {
    match t {
        NominalTerm::Abs(a, body) => {
            let body = alpha_variant(rng, body);
            if rng.gen_bool(0.5) {
                let b = random_atom(rng, &a.sort);
                let pi = Permutation::swap(a.clone(), b.clone());
                NominalTerm::abs(&b, nomuni::nominal::perm_apply(&pi, &body))
            } else {
                NominalTerm::abs(a, body)
            }
        }
        NominalTerm::App(f, args) => NominalTerm::app(f, args.iter().map(|a| alpha_variant(rng, a)).collect()),
        other => other.clone(),
    }
}

/// A second term for comparisons against `t`: an α-variant, a permuted copy, or an
/// unrelated term.
pub fn partner_term(rng: &mut TestRng, sig: &Signature, t: &NominalTerm, vars: &[&str]) -> NominalTerm {
    match rng.gen_range(0..4) {
        0 | 1 => alpha_variant(rng, t),
        2 => nomuni::nominal::perm_apply(&random_perm(rng, 2), t),
        _ => random_term(rng, sig, &d(), 2, vars),
    }
}

/// Replaces random data and atom-sorted subterms of `t` by suspensions of spare
/// variables. Returns the generalised term and a substitution mapping it back to `t`.
pub fn generalise(
    rng: &mut TestRng,
    sig: &Signature,
    t: &NominalTerm,
    spare_d: &mut Vec<&'static str>,
    spare_n: &mut Vec<&'static str>,
    back: &mut NominalSubst,
) -> NominalTerm {
    let sort = sig.sort_of(t).ok();
    let spare = match sort {
        Some(Sort::Data(_)) => Some(&mut *spare_d),
        Some(Sort::Atom(ref s)) if s == "N" => Some(&mut *spare_n),
        _ => None,
    };
    if let Some(spare) = spare {
        if !spare.is_empty() && rng.gen_bool(0.25) {
            let g = spare.pop().unwrap();
            let pi = random_perm(rng, 2);
            let inv = nomuni::nominal::perm_inverse(&pi);
            back.insert(g, nomuni::nominal::perm_apply(&inv, t));
            return NominalTerm::Susp(pi, g.to_string());
        }
    }
    match t {
        NominalTerm::Abs(a, body) => NominalTerm::abs(a, generalise(rng, sig, body, spare_d, spare_n, back)),
        NominalTerm::App(f, args) => NominalTerm::app(
            f,
            args.iter().map(|a| generalise(rng, sig, a, spare_d, spare_n, back)).collect(),
        ),
        other => other.clone(),
    }
}

/// A problem known to be solvable: each equation relates a term to a generalisation of
/// it, possibly under a common abstraction and permutation, with sides swapped at random.
pub fn solvable_problem(rng: &mut TestRng, sig: &Signature) -> NominalProblem {
    solvable_problem_with_solution(rng, sig).0
}

/// [`solvable_problem`] together with a solution whose domain covers every variable.
pub fn solvable_problem_with_solution(rng: &mut TestRng, sig: &Signature) -> (NominalProblem, NominalSubst) {
    let mut spare_d: Vec<&'static str> = GEN_D.to_vec();
    let mut spare_n: Vec<&'static str> = GEN_N.to_vec();
    spare_d.shuffle(rng);
    let mut back = NominalSubst::new();
    let mut equations = Vec::new();
    for _ in 0..rng.gen_range(1..=3) {
        let t = random_term(rng, sig, &d(), 3, &PROBLEM_VARS);
        let mut u = generalise(rng, sig, &t, &mut spare_d, &mut spare_n, &mut back);
        let mut t = t;
        if rng.gen_bool(0.5) {
            let pi = random_perm(rng, 2);
            t = nomuni::nominal::perm_apply(&pi, &t);
            u = nomuni::nominal::perm_apply(&pi, &u);
        }
        if rng.gen_bool(0.3) {
            let a = random_atom(rng, "N");
            t = NominalTerm::app("h", vec![NominalTerm::abs(&a, t)]);
            u = NominalTerm::app("h", vec![NominalTerm::abs(&a, u)]);
        }
        if rng.gen_bool(0.5) {
            std::mem::swap(&mut t, &mut u);
        }
        equations.push(Equation::Eq(t, u));
    }
    let p = NominalProblem::new(sig.clone(), equations);
    for x in p.vars() {
        if back.get(&x).is_none() {
            back.insert(&x, NominalTerm::var(&x));
        }
    }
    (p, back)
}

/// A problem with no solvability guarantee, freshness equations included.
pub fn random_problem(rng: &mut TestRng, sig: &Signature) -> NominalProblem {
    let mut equations = Vec::new();
    for _ in 0..rng.gen_range(1..=3) {
        let t = random_term(rng, sig, &d(), 2, &PROBLEM_VARS);
        if rng.gen_bool(0.3) {
            equations.push(Equation::Fresh(random_atom(rng, "N"), t));
        } else {
            let u = partner_term(rng, sig, &t, &PROBLEM_VARS);
            equations.push(Equation::Eq(t, u));
        }
    }
    NominalProblem::new(sig.clone(), equations)
}

pub const POOL: [&str; 5] = ["x", "y", "z", "w", "v"];

fn ln() -> LambdaType {
    LambdaType::base("N")
}

fn ld() -> LambdaType {
    LambdaType::base("D")
}

/// A λ-term of type `D` over bound names from `POOL`. With `loose`, it may contain
/// η-short subterms and non-pattern applications.
pub fn lambda_body(rng: &mut TestRng, depth: usize, loose: bool) -> LambdaTerm {
    let name = |rng: &mut TestRng| LambdaTerm::bound(POOL.choose(rng).unwrap(), ln());
    let y = LambdaTerm::free("Y", LambdaType::arrows([ln(), ln()], ld()));
    let h = LambdaTerm::constant("h", LambdaType::arrow(LambdaType::arrow(ln(), ld()), ld()));
    let cases = match (depth, loose) {
        (0, _) => 2,
        (_, false) => 4,
        (_, true) => 6,
    };
    match rng.gen_range(0..cases) {
        0 => LambdaTerm::constant("k", ld()),
        1 => {
            let args = if loose {
                vec![name(rng), name(rng)]
            } else {
                POOL.choose_multiple(rng, 2).map(|p| LambdaTerm::bound(p, ln())).collect()
            };
            LambdaTerm::apply(y, args)
        }
        2 => {
            let g = LambdaTerm::constant("g", LambdaType::arrows([ln(), ld()], ld()));
            let x = name(rng);
            LambdaTerm::apply(g, vec![x, lambda_body(rng, depth - 1, loose)])
        }
        3 => {
            let x = POOL.choose(rng).unwrap();
            LambdaTerm::apply(h, vec![LambdaTerm::lam(x, ln(), lambda_body(rng, depth - 1, loose))])
        }
        4 => LambdaTerm::apply(h, vec![LambdaTerm::constant("p", LambdaType::arrow(ln(), ld()))]),
        _ => {
            let x = name(rng);
            LambdaTerm::apply(h, vec![LambdaTerm::apply(y, vec![x])])
        }
    }
}

/// A redex `(λx⃗.t)(y⃗)` with `y⃗` distinct names not free in `λx⃗.t`.
pub fn pattern_redex(rng: &mut TestRng) -> Option<(LambdaTerm, Vec<String>)> {
    let arity = rng.gen_range(1..=3);
    let xs: Vec<&str> = (0..arity).map(|_| *POOL.choose(rng).unwrap()).collect();
    let abs = xs
        .iter()
        .rev()
        .fold(lambda_body(rng, 4, false), |acc, x| LambdaTerm::lam(x, ln(), acc));
    let free = abs.free_bound_names();
    let mut candidates: Vec<&str> = POOL.iter().copied().filter(|y| !free.contains(*y)).collect();
    if candidates.len() < arity {
        return None;
    }
    candidates.shuffle(rng);
    Some((abs, candidates[..arity].iter().map(|s| s.to_string()).collect()))
}
