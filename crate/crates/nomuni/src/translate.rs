//! From nominal terms, problems and substitutions to simply-typed λ-terms.
//!
//! Atoms become bound variables, so every translated term lives under the binder prefix
//! `λa₁…λaₙ` of a fixed atom list. A suspension `π·X` becomes `X` applied to the images
//! under `π` of the atoms that `X` may capture.

use std::collections::HashMap;
use std::fmt;

use crate::error::Error;
use crate::lambda::{LambdaTerm, LambdaType};
use crate::nominal::{
    entails, Atom, Equation, FreshnessEnv, NominalProblem, NominalSubst, NominalTerm, Signature, Sort,
};

/// The fixed, ordered list of distinct atoms a translation is relative to.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AtomList {
    atoms: Vec<Atom>,
    index: HashMap<String, usize>,
}

impl AtomList {
    pub fn new(atoms: Vec<Atom>) -> Result<Self, Error> {
        let mut index = HashMap::with_capacity(atoms.len());
        for (i, a) in atoms.iter().enumerate() {
            if index.insert(a.name.clone(), i).is_some() {
                return Err(Error::IllFormed(format!("atom `{a}` listed twice")));
            }
        }
        Ok(AtomList { atoms, index })
    }

    /// The atoms of `p` in order of first occurrence.
    pub fn from_problem(p: &NominalProblem) -> Self {
        AtomList::new(p.atoms_in_order()).expect("first-occurrence atoms are distinct")
    }

    /// Looks the names up in `sig`.
    pub fn from_names<S: AsRef<str>>(sig: &Signature, names: &[S]) -> Result<Self, Error> {
        let atoms = names
            .iter()
            .map(|n| sig.atom(n.as_ref()))
            .collect::<Result<Vec<_>, _>>()?;
        AtomList::new(atoms)
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn position(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn contains(&self, a: &Atom) -> bool {
        self.position(&a.name).is_some_and(|i| self.atoms[i] == *a)
    }

    /// The atom called `name`, if listed.
    pub fn get(&self, name: &str) -> Option<&Atom> {
        self.position(name).map(|i| &self.atoms[i])
    }

    /// The binders `λa₁…λaₙ`.
    pub fn prefix(&self) -> Vec<(String, LambdaType)> {
        self.atoms.iter().map(|a| (a.name.clone(), atom_type(a))).collect()
    }

    /// Every listed atom as a bound variable, in order.
    pub fn bound_vars(&self) -> Vec<LambdaTerm> {
        self.atoms.iter().map(atom_term).collect()
    }
}

impl fmt::Display for AtomList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.atoms.iter().map(|a| a.name.as_str()).collect();
        write!(f, "<{}>", names.join(", "))
    }
}

/// A pattern unification problem together with the atom list it was built over.
#[derive(Clone, Debug, PartialEq)]
pub struct PatternProblem {
    pub equations: Vec<(LambdaTerm, LambdaTerm)>,
    pub atoms: AtomList,
}

impl PatternProblem {
    pub fn new(equations: Vec<(LambdaTerm, LambdaTerm)>, atoms: AtomList) -> Self {
        PatternProblem { equations, atoms }
    }

    /// Free variables in order of first occurrence.
    pub fn free_vars(&self) -> Vec<(String, LambdaType)> {
        let mut out = Vec::new();
        let mut seen = std::collections::HashSet::new();
        for (t, u) in &self.equations {
            for (x, ty) in t.free_vars().into_iter().chain(u.free_vars()) {
                if seen.insert(x.clone()) {
                    out.push((x, ty));
                }
            }
        }
        out
    }

    pub fn size(&self) -> usize {
        self.equations.iter().map(|(t, u)| t.size() + u.size()).sum()
    }
}

impl fmt::Display for PatternProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (t, u)) in self.equations.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{t} = {u}")?;
        }
        Ok(())
    }
}

pub(crate) fn atom_type(a: &Atom) -> LambdaType {
    LambdaType::Base(a.sort.clone())
}

pub(crate) fn atom_term(a: &Atom) -> LambdaTerm {
    LambdaTerm::Bound(a.name.clone(), atom_type(a))
}

/// `⟦τ⟧`: base sorts keep their name, `⟨ν⟩τ` becomes `ν → ⟦τ⟧`.
pub fn translate_sort(sig: &Signature, s: &Sort) -> Result<LambdaType, Error> {
    match s {
        Sort::Atom(n) if sig.atom_sorts.contains(n) => Ok(LambdaType::base(n)),
        Sort::Data(n) if sig.data_sorts.contains(n) => Ok(LambdaType::base(n)),
        Sort::Abs(n, body) if sig.atom_sorts.contains(n) => {
            Ok(LambdaType::arrow(LambdaType::base(n), translate_sort(sig, body)?))
        }
        Sort::Atom(n) | Sort::Data(n) | Sort::Abs(n, _) => Err(Error::UndeclaredSort(n.clone())),
    }
}

/// Type of the constant standing for function symbol `f`.
pub fn symbol_type(sig: &Signature, f: &str) -> Result<LambdaType, Error> {
    let arity = sig
        .function_symbols
        .get(f)
        .ok_or_else(|| Error::UnknownSymbol(f.to_string()))?;
    let args = arity
        .args
        .iter()
        .map(|s| translate_sort(sig, s))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(LambdaType::arrows(args, LambdaType::base(&arity.result)))
}

/// The atoms of the list that are not declared fresh for `x`, in list order.
pub fn capturable_atoms(x: &str, nabla: &FreshnessEnv, atoms: &AtomList) -> Vec<Atom> {
    if nabla.is_empty() {
        return atoms.atoms.clone();
    }
    atoms.atoms.iter().filter(|a| !nabla.contains(a, x)).cloned().collect()
}

/// Type of the free variable `X` under `nabla`: one argument per capturable atom.
pub fn var_type(sig: &Signature, x: &str, nabla: &FreshnessEnv, atoms: &AtomList) -> Result<LambdaType, Error> {
    Ok(LambdaType::arrows(
        capturable_atoms(x, nabla, atoms).iter().map(atom_type),
        var_result_type(sig, x)?,
    ))
}

fn var_result_type(sig: &Signature, x: &str) -> Result<LambdaType, Error> {
    match sig.variable_sorts.get(x) {
        Some(s @ (Sort::Atom(_) | Sort::Data(_))) => translate_sort(sig, s),
        Some(s) => Err(Error::IllFormed(format!("variable {x} has abstraction sort {s}"))),
        None => Err(Error::UnknownSymbol(x.to_string())),
    }
}

/// `⟦t⟧∇`.
pub fn translate_term(
    sig: &Signature,
    t: &NominalTerm,
    nabla: &FreshnessEnv,
    atoms: &AtomList,
) -> Result<LambdaTerm, Error> {
    let mut tr = Translator {
        sig,
        nabla,
        atoms,
        symbols: HashMap::new(),
        vars: HashMap::new(),
    };
    tr.term(t)
}

/// Caches the per-symbol and per-variable data, which would otherwise be recomputed at
/// every occurrence.
struct Translator<'a> {
    sig: &'a Signature,
    nabla: &'a FreshnessEnv,
    atoms: &'a AtomList,
    symbols: HashMap<String, LambdaType>,
    vars: HashMap<String, (Vec<Atom>, LambdaType)>,
}

impl Translator<'_> {
    fn atom(&self, a: &Atom) -> Result<LambdaTerm, Error> {
        if self.atoms.contains(a) {
            Ok(atom_term(a))
        } else {
            Err(Error::AtomNotInList(a.name.clone()))
        }
    }

    fn term(&mut self, t: &NominalTerm) -> Result<LambdaTerm, Error> {
        match t {
            NominalTerm::Atom(a) => self.atom(a),
            NominalTerm::Abs(a, body) => {
                if !self.atoms.contains(a) {
                    return Err(Error::AtomNotInList(a.name.clone()));
                }
                Ok(LambdaTerm::Lam(a.name.clone(), atom_type(a), Box::new(self.term(body)?)))
            }
            NominalTerm::App(f, args) => {
                if !self.symbols.contains_key(f) {
                    let ty = symbol_type(self.sig, f)?;
                    self.symbols.insert(f.clone(), ty);
                }
                let head = LambdaTerm::Const(f.clone(), self.symbols[f].clone());
                let args = args.iter().map(|a| self.term(a)).collect::<Result<Vec<_>, _>>()?;
                Ok(LambdaTerm::apply(head, args))
            }
            NominalTerm::Susp(pi, x) => {
                if !self.vars.contains_key(x) {
                    let capt = capturable_atoms(x, self.nabla, self.atoms);
                    let ty = LambdaType::arrows(capt.iter().map(atom_type), var_result_type(self.sig, x)?);
                    self.vars.insert(x.clone(), (capt, ty));
                }
                let (capt, ty) = &self.vars[x];
                let map = pi.to_map();
                let args = capt
                    .iter()
                    .map(|b| self.atom(map.apply(b)))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(LambdaTerm::apply(LambdaTerm::Free(x.clone(), ty.clone()), args))
            }
        }
    }
}

/// `⟦P⟧`: every equation `t ≈ u` becomes `λa⃗.⟦t⟧∅ = λa⃗.⟦u⟧∅`.
pub fn translate_problem(p: &NominalProblem, atoms: &AtomList) -> Result<PatternProblem, Error> {
    if !p.is_equational() {
        return Err(Error::NotEquational);
    }
    let nabla = FreshnessEnv::new();
    let prefix = atoms.prefix();
    let mut tr = Translator {
        sig: &p.signature,
        nabla: &nabla,
        atoms,
        symbols: HashMap::new(),
        vars: HashMap::new(),
    };
    let mut equations = Vec::with_capacity(p.equations.len());
    for e in &p.equations {
        let Equation::Eq(t, u) = e else { unreachable!() };
        let lhs = LambdaTerm::lams(&prefix, tr.term(t)?);
        let rhs = LambdaTerm::lams(&prefix, tr.term(u)?);
        equations.push((lhs, rhs));
    }
    Ok(PatternProblem::new(equations, atoms.clone()))
}

/// `⟦σ⟧∇`: every binding wrapped in the full binder prefix.
pub fn translate_subst(
    sig: &Signature,
    sigma: &NominalSubst,
    nabla: &FreshnessEnv,
    atoms: &AtomList,
) -> Result<crate::lambda::PatternSubst, Error> {
    translate_subst_general(sig, sigma, nabla, &FreshnessEnv::new(), atoms)
}

/// `⟦σ⟧_∇^∇′`: the binding for `X` abstracts only the atoms capturable by `X` under `∇′`.
/// Requires `∇ ⊢ σ(∇′)`.
pub fn translate_subst_general(
    sig: &Signature,
    sigma: &NominalSubst,
    nabla: &FreshnessEnv,
    nabla_prime: &FreshnessEnv,
    atoms: &AtomList,
) -> Result<crate::lambda::PatternSubst, Error> {
    if !entails(nabla, sigma, nabla_prime) {
        return Err(Error::Precondition(format!(
            "{nabla} does not entail the instance of {nabla_prime}"
        )));
    }
    let mut tr = Translator {
        sig,
        nabla,
        atoms,
        symbols: HashMap::new(),
        vars: HashMap::new(),
    };
    let mut out = crate::lambda::PatternSubst::new();
    for (x, t) in &sigma.bindings {
        let binders: Vec<(String, LambdaType)> = capturable_atoms(x, nabla_prime, atoms)
            .iter()
            .map(|a| (a.name.clone(), atom_type(a)))
            .collect();
        out.insert(x, LambdaTerm::lams(&binders, tr.term(t)?));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nominal::Permutation;

    fn sig() -> Signature {
        let mut s = Signature::new();
        s.add_atom_sort("N").add_data_sort("D");
        s.add_atom("a", "N").add_atom("b", "N").add_atom("c", "N");
        s.add_var("X", Sort::Data("D".into())).add_var("Y", Sort::Data("D".into()));
        s.add_fun("f", vec![Sort::Data("D".into()), Sort::Data("D".into())], "D");
        s
    }

    fn a(n: &str) -> Atom {
        Atom::new(n, "N")
    }

    fn ab() -> AtomList {
        AtomList::new(vec![a("a"), a("b")]).unwrap()
    }

    fn susp(pairs: &[(&str, &str)], x: &str) -> NominalTerm {
        let mut pi = Permutation::identity();
        for (l, r) in pairs {
            pi = pi.compose(&Permutation::swap(a(l), a(r)));
        }
        NominalTerm::Susp(pi, x.to_string())
    }

    #[test]
    fn sorts() {
        let s = sig();
        let nd = Sort::Abs("N".into(), Box::new(Sort::Data("D".into())));
        assert_eq!(translate_sort(&s, &nd).unwrap().to_string(), "N -> D");
        assert_eq!(translate_sort(&s, &Sort::Atom("N".into())).unwrap(), LambdaType::base("N"));
        let mut s2 = s.clone();
        s2.add_fun("g", vec![Sort::Atom("N".into()), nd], "D");
        assert_eq!(symbol_type(&s2, "g").unwrap().to_string(), "N -> (N -> D) -> D");
        assert!(translate_sort(&s, &Sort::Data("E".into())).is_err());
    }

    #[test]
    fn capturable() {
        let atoms = ab();
        assert_eq!(capturable_atoms("X", &FreshnessEnv::new(), &atoms), vec![a("a"), a("b")]);
        let nabla = FreshnessEnv::from_pairs([(a("a"), "Y")]);
        assert_eq!(capturable_atoms("Y", &nabla, &atoms), vec![a("b")]);
        let both = FreshnessEnv::from_pairs([(a("a"), "Z"), (a("b"), "Z")]);
        assert!(capturable_atoms("Z", &both, &atoms).is_empty());
    }

    #[test]
    fn terms() {
        let s = sig();
        let t = NominalTerm::app("f", vec![susp(&[("a", "b")], "X"), susp(&[("a", "b")], "Y")]);
        let got = translate_term(&s, &t, &FreshnessEnv::new(), &ab()).unwrap();
        assert_eq!(got.to_string(), "f (X b a) (Y b a)");
        let y = translate_term(&s, &susp(&[("a", "b")], "Y"), &FreshnessEnv::from_pairs([(a("b"), "Y")]), &ab());
        assert_eq!(y.unwrap().to_string(), "Y b");
        assert_eq!(
            translate_term(&s, &NominalTerm::atom(&a("c")), &FreshnessEnv::new(), &ab()),
            Err(Error::AtomNotInList("c".into()))
        );
    }

    #[test]
    fn problem_p1() {
        let s = sig();
        let p = NominalProblem::new(
            s,
            vec![Equation::Eq(
                NominalTerm::abs(&a("a"), NominalTerm::var("X")),
                NominalTerm::abs(&a("b"), NominalTerm::var("Y")),
            )],
        );
        let pp = translate_problem(&p, &ab()).unwrap();
        assert_eq!(pp.to_string(), "\\a b a. X a b = \\a b b. Y a b");
        assert!(translate_problem(&NominalProblem::new(sig(), vec![]), &ab()).unwrap().equations.is_empty());
    }

    #[test]
    fn substitutions() {
        let s = sig();
        let nabla = FreshnessEnv::from_pairs([(a("a"), "Y")]);
        let sigma = NominalSubst::from_pairs([("X", susp(&[("a", "b")], "Y")), ("Y", NominalTerm::var("Y"))]);
        let got = translate_subst(&s, &sigma, &nabla, &ab()).unwrap();
        assert_eq!(got.to_string(), "[X -> \\a b. Y a, Y -> \\a b. Y b]");

        let nabla = FreshnessEnv::from_pairs([(a("b"), "Y")]);
        let sigma = NominalSubst::from_pairs([
            ("X", NominalTerm::abs(&a("b"), NominalTerm::atom(&a("a")))),
            ("Y", NominalTerm::var("Y")),
        ]);
        let got = translate_subst(&s, &sigma, &nabla, &ab()).unwrap();
        assert_eq!(got.to_string(), "[X -> \\a b b. a, Y -> \\a b. Y a]");
        assert!(translate_subst(&s, &NominalSubst::new(), &nabla, &ab()).unwrap().is_empty());
    }

    #[test]
    fn generalized() {
        let s = sig();
        let atoms = ab();
        let sigma = NominalSubst::from_pairs([("X", NominalTerm::atom(&a("a")))]);
        let got = translate_subst_general(&s, &sigma, &FreshnessEnv::new(), &FreshnessEnv::from_pairs([(a("b"), "X")]), &atoms);
        assert_eq!(got.unwrap().to_string(), "[X -> \\a. a]");

        let ax = FreshnessEnv::from_pairs([(a("a"), "X")]);
        let id = NominalSubst::from_pairs([("X", NominalTerm::var("X"))]);
        let got = translate_subst_general(&s, &id, &ax, &ax, &atoms).unwrap();
        assert_eq!(got.to_string(), "[X -> \\b. X b]");

        // ∅ does not entail a # X
        assert!(translate_subst_general(&s, &id, &FreshnessEnv::new(), &ax, &atoms).is_err());
    }
}
