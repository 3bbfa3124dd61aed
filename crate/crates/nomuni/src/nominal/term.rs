use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

/// A sorted atom.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Atom {
    pub name: String,
    pub sort: String,
}

impl Atom {
    pub fn new(name: &str, sort: &str) -> Self {
        Atom {
            name: name.to_string(),
            sort: sort.to_string(),
        }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

/// A swapping `(a b)` of two atoms of the same sort.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Swapping {
    pub left: Atom,
    pub right: Atom,
}

impl Swapping {
    pub fn new(left: Atom, right: Atom) -> Self {
        Swapping { left, right }
    }

    pub fn apply(&self, a: &Atom) -> Atom {
        if *a == self.left {
            self.right.clone()
        } else if *a == self.right {
            self.left.clone()
        } else {
            a.clone()
        }
    }
}

impl fmt::Display for Swapping {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} {})", self.left, self.right)
    }
}

/// A list of swappings. The rightmost swapping acts first.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Permutation {
    pub swaps: Vec<Swapping>,
}

impl Permutation {
    pub fn identity() -> Self {
        Permutation { swaps: Vec::new() }
    }

    pub fn swap(a: Atom, b: Atom) -> Self {
        Permutation {
            swaps: vec![Swapping::new(a, b)],
        }
    }

    pub fn from_swaps(swaps: Vec<Swapping>) -> Self {
        Permutation { swaps }
    }

    pub fn is_empty(&self) -> bool {
        self.swaps.is_empty()
    }

    pub fn apply_atom(&self, a: &Atom) -> Atom {
        self.swaps.iter().rev().fold(a.clone(), |acc, s| s.apply(&acc))
    }

    /// `self` after `other`: the swap lists concatenated, cancelling identical swappings
    /// that meet at the junction. Hence `π∘π⁻¹` is the empty list.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        let mut swaps = self.swaps.clone();
        let mut rest = other.swaps.iter();
        for s in rest.by_ref() {
            match swaps.last() {
                Some(top) if top == s => {
                    swaps.pop();
                }
                _ => {
                    swaps.push(s.clone());
                    break;
                }
            }
        }
        swaps.extend(rest.cloned());
        Permutation { swaps }
    }

    /// Atoms mentioned by some swapping.
    pub fn support(&self) -> BTreeSet<Atom> {
        self.swaps
            .iter()
            .flat_map(|s| [s.left.clone(), s.right.clone()])
            .collect()
    }

    /// The induced atom map, restricted to the atoms it moves.
    pub fn to_map(&self) -> PermMap {
        let mut fwd: HashMap<Atom, Atom> = HashMap::new();
        let mut inv: HashMap<Atom, Atom> = HashMap::new();
        for s in self.swaps.iter().rev() {
            let pa = inv.get(&s.left).cloned().unwrap_or_else(|| s.left.clone());
            let pb = inv.get(&s.right).cloned().unwrap_or_else(|| s.right.clone());
            fwd.insert(pa.clone(), s.right.clone());
            fwd.insert(pb.clone(), s.left.clone());
            inv.insert(s.right.clone(), pa);
            inv.insert(s.left.clone(), pb);
        }
        fwd.retain(|k, v| k != v);
        PermMap { map: fwd }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.swaps {
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

/// A permutation evaluated to a finite atom map.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PermMap {
    map: HashMap<Atom, Atom>,
}

impl PermMap {
    pub fn apply<'a>(&'a self, a: &'a Atom) -> &'a Atom {
        self.map.get(a).unwrap_or(a)
    }

    /// Atoms that are not fixed points.
    pub fn moved(&self) -> impl Iterator<Item = &Atom> {
        self.map.keys()
    }
}

/// Cycle decomposition of a bijection on `order`, each cycle `c₁→c₂→…→cₖ`
/// written as `(c₁ c₂)(c₂ c₃)…(cₖ₋₁ cₖ)`. Cycles start at their first atom in `order`.
pub fn perm_from_map<F>(order: &[Atom], image: F) -> Permutation
where
    F: Fn(&Atom) -> Atom,
{
    let mut seen = BTreeSet::new();
    let mut swaps = Vec::new();
    for start in order {
        if seen.contains(start) {
            continue;
        }
        let mut cycle = vec![start.clone()];
        seen.insert(start.clone());
        let mut next = image(start);
        while next != *start {
            seen.insert(next.clone());
            cycle.push(next.clone());
            next = image(&next);
        }
        for w in cycle.windows(2) {
            swaps.push(Swapping::new(w[0].clone(), w[1].clone()));
        }
    }
    Permutation { swaps }
}

/// Nominal terms `f(t₁,…,tₙ) | a | a.t | π·X`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum NominalTerm {
    App(String, Vec<NominalTerm>),
    Atom(Atom),
    Abs(Atom, Box<NominalTerm>),
    Susp(Permutation, String),
}

impl NominalTerm {
    pub fn var(x: &str) -> Self {
        NominalTerm::Susp(Permutation::identity(), x.to_string())
    }

    pub fn atom(a: &Atom) -> Self {
        NominalTerm::Atom(a.clone())
    }

    pub fn abs(a: &Atom, body: NominalTerm) -> Self {
        NominalTerm::Abs(a.clone(), Box::new(body))
    }

    pub fn app(f: &str, args: Vec<NominalTerm>) -> Self {
        NominalTerm::App(f.to_string(), args)
    }

    /// Variables in order of first occurrence.
    pub fn vars(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out
    }

    pub(crate) fn collect_vars(&self, out: &mut Vec<String>) {
        match self {
            NominalTerm::App(_, args) => args.iter().for_each(|a| a.collect_vars(out)),
            NominalTerm::Atom(_) => {}
            NominalTerm::Abs(_, body) => body.collect_vars(out),
            NominalTerm::Susp(_, x) => {
                if !out.contains(x) {
                    out.push(x.clone());
                }
            }
        }
    }

    /// Atoms in order of first occurrence, including those in permutations.
    pub(crate) fn collect_atoms(&self, out: &mut Vec<Atom>, seen: &mut BTreeSet<Atom>) {
        fn push(a: &Atom, out: &mut Vec<Atom>, seen: &mut BTreeSet<Atom>) {
            if seen.insert(a.clone()) {
                out.push(a.clone());
            }
        }
        match self {
            NominalTerm::App(_, args) => {
                for t in args {
                    t.collect_atoms(out, seen);
                }
            }
            NominalTerm::Atom(a) => push(a, out, seen),
            NominalTerm::Abs(a, body) => {
                push(a, out, seen);
                body.collect_atoms(out, seen);
            }
            NominalTerm::Susp(pi, _) => {
                for s in &pi.swaps {
                    push(&s.left, out, seen);
                    push(&s.right, out, seen);
                }
            }
        }
    }

    /// Symbol count: one per constructor, plus one per atom in a permutation.
    pub fn size(&self) -> usize {
        match self {
            NominalTerm::App(_, args) => 1 + args.iter().map(|a| a.size()).sum::<usize>(),
            NominalTerm::Atom(_) => 1,
            NominalTerm::Abs(_, body) => 1 + body.size(),
            NominalTerm::Susp(pi, _) => 1 + 2 * pi.swaps.len(),
        }
    }
}

impl fmt::Display for NominalTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NominalTerm::App(g, args) if args.is_empty() => f.write_str(g),
            NominalTerm::App(g, args) => {
                write!(f, "{g}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{a}")?;
                }
                f.write_str(")")
            }
            NominalTerm::Atom(a) => write!(f, "{a}"),
            NominalTerm::Abs(a, body) => write!(f, "{a}.{body}"),
            NominalTerm::Susp(pi, x) if pi.is_empty() => f.write_str(x),
            NominalTerm::Susp(pi, x) => write!(f, "{pi}.{x}"),
        }
    }
}

/// Pushes `pi` through `t`. Suspensions absorb it on the left of their own permutation.
pub fn perm_apply(pi: &Permutation, t: &NominalTerm) -> NominalTerm {
    if pi.is_empty() {
        return t.clone();
    }
    let map = pi.to_map();
    apply_map(pi, &map, t)
}

fn apply_map(pi: &Permutation, map: &PermMap, t: &NominalTerm) -> NominalTerm {
    match t {
        NominalTerm::App(f, args) => NominalTerm::App(
            f.clone(),
            args.iter().map(|a| apply_map(pi, map, a)).collect(),
        ),
        NominalTerm::Atom(a) => NominalTerm::Atom(map.apply(a).clone()),
        NominalTerm::Abs(a, body) => {
            NominalTerm::Abs(map.apply(a).clone(), Box::new(apply_map(pi, map, body)))
        }
        NominalTerm::Susp(p, x) => NominalTerm::Susp(pi.compose(p), x.clone()),
    }
}

/// The reversed swap list.
pub fn perm_inverse(pi: &Permutation) -> Permutation {
    Permutation {
        swaps: pi.swaps.iter().rev().cloned().collect(),
    }
}
