use std::collections::HashMap;
use std::fmt;

use super::term::LambdaTerm;
use crate::error::Error;

/// A list of name swappings; the rightmost acts first.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NamePerm {
    pub swaps: Vec<(String, String)>,
}

impl NamePerm {
    pub fn apply(&self, name: &str) -> String {
        let mut n = name.to_string();
        for (x, y) in self.swaps.iter().rev() {
            if n == *x {
                n = y.clone();
            } else if n == *y {
                n = x.clone();
            }
        }
        n
    }

    /// The induced map on the names it moves.
    pub fn to_map(&self) -> HashMap<String, String> {
        let mut c = Composite::default();
        for (x, y) in self.swaps.iter().rev() {
            c.then_swap(x, y);
        }
        c.into_map()
    }
}

impl fmt::Display for NamePerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (x, y) in &self.swaps {
            write!(f, "({x} {y})")?;
        }
        Ok(())
    }
}

/// A name permutation built by post-composing swaps, with O(1) updates.
#[derive(Default)]
struct Composite {
    fwd: HashMap<String, String>,
    inv: HashMap<String, String>,
}

impl Composite {
    fn image(&self, x: &str) -> String {
        self.fwd.get(x).cloned().unwrap_or_else(|| x.to_string())
    }

    fn then_swap(&mut self, a: &str, b: &str) {
        let pa = self.inv.get(a).cloned().unwrap_or_else(|| a.to_string());
        let pb = self.inv.get(b).cloned().unwrap_or_else(|| b.to_string());
        self.fwd.insert(pa.clone(), b.to_string());
        self.fwd.insert(pb.clone(), a.to_string());
        self.inv.insert(b.to_string(), pa);
        self.inv.insert(a.to_string(), pb);
    }

    fn into_map(mut self) -> HashMap<String, String> {
        self.fwd.retain(|k, v| k != v);
        self.fwd
    }
}

/// `(x y)·t`, exchanging the names everywhere, binders included.
pub fn swap_names(x: &str, y: &str, t: &LambdaTerm) -> LambdaTerm {
    if x == y {
        return t.clone();
    }
    let map = HashMap::from([(x.to_string(), y.to_string()), (y.to_string(), x.to_string())]);
    rename(&map, t)
}

/// Applies a name permutation, given as a map on moved names, to every bound name.
pub fn rename(map: &HashMap<String, String>, t: &LambdaTerm) -> LambdaTerm {
    let m = |x: &String| map.get(x).cloned().unwrap_or_else(|| x.clone());
    match t {
        LambdaTerm::Bound(x, ty) => LambdaTerm::Bound(m(x), ty.clone()),
        LambdaTerm::Free(..) | LambdaTerm::Const(..) => t.clone(),
        LambdaTerm::Lam(x, ty, body) => LambdaTerm::Lam(m(x), ty.clone(), Box::new(rename(map, body))),
        LambdaTerm::App(h, args) => {
            LambdaTerm::App(Box::new(rename(map, h)), args.iter().map(|a| rename(map, a)).collect())
        }
    }
}

/// `Πₙ(x⃗, y⃗)`: `Π₁(⟨x⟩,⟨y⟩) = (x y)` and
/// `Πₙ(x⃗, y⃗) = Πₙ₋₁(⟨(x₁ y₁)·x₂,…⟩, ⟨y₂,…⟩)·(x₁ y₁)`.
pub fn pi_n(xs: &[String], ys: &[String]) -> Result<NamePerm, Error> {
    if xs.len() != ys.len() {
        return Err(Error::LengthMismatch(xs.len(), ys.len()));
    }
    let mut c = Composite::default();
    let mut swaps = Vec::with_capacity(xs.len());
    for (x, y) in xs.iter().zip(ys) {
        // The earlier swaps have already acted on x.
        let x = c.image(x);
        c.then_swap(&x, y);
        swaps.push((x, y.clone()));
    }
    swaps.reverse();
    Ok(NamePerm { swaps })
}

/// `pi_n` as a map on the names it moves.
pub(crate) fn pi_n_map(xs: &[String], ys: &[String]) -> HashMap<String, String> {
    let mut c = Composite::default();
    for (x, y) in xs.iter().zip(ys) {
        let x = c.image(x);
        c.then_swap(&x, y);
    }
    c.into_map()
}
