//! Problem and solution formats.
//!
//! A problem is a sequence of statements, each ending in `.`:
//!
//! ```text
//! atom a b : N.            // atoms and their atom sort
//! sort D.                  // a data sort (optional, any unknown sort is one)
//! var X Y : D.
//! fun f : N * <N>D -> D.   // `fun c : D.` declares a constant
//! eq a.f(a, X) ~ b.f(b, (a b).Y).
//! fresh a # X.
//! ```
//!
//! `a.t` is an abstraction, `(a b)(b c).X` a suspension; the rightmost swapping acts first.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use crate::error::Error;
use crate::lambda::is_ident_char;
use crate::nominal::{
    Atom, Equation, NominalProblem, NominalSolution, NominalTerm, Permutation, Signature, Sort, Swapping,
};

const KEYWORDS: [&str; 6] = ["atom", "sort", "var", "fun", "eq", "fresh"];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Pos {
    line: usize,
    col: usize,
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Dot,
    Colon,
    Tilde,
    Hash,
    LParen,
    RParen,
    Lt,
    Gt,
    Star,
    Comma,
    Arrow,
}

fn err(pos: Pos, msg: impl Into<String>) -> Error {
    Error::Parse {
        line: pos.line,
        col: pos.col,
        msg: msg.into(),
    }
}

fn lex(src: &str) -> Result<Vec<(Tok, Pos)>, Error> {
    let mut out = Vec::new();
    for (l, line) in src.lines().enumerate() {
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let pos = Pos { line: l + 1, col: i + 1 };
            if c.is_whitespace() {
                i += 1;
                continue;
            }
            if c == '/' && chars.get(i + 1) == Some(&'/') {
                break;
            }
            let tok = match c {
                '.' => Tok::Dot,
                ':' => Tok::Colon,
                '~' => Tok::Tilde,
                '#' => Tok::Hash,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                '<' => Tok::Lt,
                '>' => Tok::Gt,
                '*' => Tok::Star,
                ',' => Tok::Comma,
                '-' if chars.get(i + 1) == Some(&'>') => {
                    i += 1;
                    Tok::Arrow
                }
                c if is_ident_char(c) => {
                    let start = i;
                    while i + 1 < chars.len() && is_ident_char(chars[i + 1]) {
                        i += 1;
                    }
                    Tok::Ident(chars[start..=i].iter().collect())
                }
                other => return Err(err(pos, format!("unexpected character `{other}`"))),
            };
            out.push((tok, pos));
            i += 1;
        }
    }
    Ok(out)
}

/// A sort as written, before atom and data sorts are told apart.
#[derive(Clone, Debug)]
enum RawSort {
    Base(String),
    Abs(String, Box<RawSort>),
}

#[derive(Clone, Debug)]
enum RawTerm {
    Name(String, Pos),
    Call(String, Vec<RawTerm>, Pos),
    Abs(String, Pos, Box<RawTerm>),
    Susp(Vec<(String, String)>, String, Pos),
}

enum Stmt {
    Atom(Vec<String>, String),
    Sort(Vec<String>),
    Var(Vec<String>, RawSort, Pos),
    Fun(String, Vec<RawSort>, String, Pos),
    Eq(RawTerm, RawTerm, Pos),
    Fresh(String, Pos, RawTerm, Pos),
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    pos: usize,
    end: Pos,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn peek_at(&self, k: usize) -> Option<&Tok> {
        self.toks.get(self.pos + k).map(|(t, _)| t)
    }

    fn here(&self) -> Pos {
        self.toks.get(self.pos).map_or(self.end, |(_, p)| *p)
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<(), Error> {
        if self.peek() == Some(&t) {
            self.pos += 1;
            Ok(())
        } else {
            Err(err(self.here(), format!("expected {what}")))
        }
    }

    fn name(&mut self) -> Result<(String, Pos), Error> {
        let pos = self.here();
        match self.peek() {
            Some(Tok::Ident(x)) if !KEYWORDS.contains(&x.as_str()) => {
                let x = x.clone();
                self.pos += 1;
                Ok((x, pos))
            }
            _ => Err(err(pos, "expected a name")),
        }
    }

    fn names(&mut self) -> Result<Vec<String>, Error> {
        let mut out = vec![self.name()?.0];
        while matches!(self.peek(), Some(Tok::Ident(x)) if !KEYWORDS.contains(&x.as_str())) {
            out.push(self.name()?.0);
        }
        Ok(out)
    }

    fn sort(&mut self) -> Result<RawSort, Error> {
        if self.peek() == Some(&Tok::Lt) {
            self.pos += 1;
            let (n, _) = self.name()?;
            self.expect(Tok::Gt, "`>`")?;
            return Ok(RawSort::Abs(n, Box::new(self.sort()?)));
        }
        Ok(RawSort::Base(self.name()?.0))
    }

    fn starts_term(&self, k: usize) -> bool {
        match self.peek_at(k) {
            Some(Tok::Ident(x)) => !KEYWORDS.contains(&x.as_str()),
            Some(Tok::LParen) => true,
            _ => false,
        }
    }

    fn term(&mut self) -> Result<RawTerm, Error> {
        let pos = self.here();
        if self.peek() == Some(&Tok::LParen) {
            let mut swaps = Vec::new();
            while self.peek() == Some(&Tok::LParen) {
                self.pos += 1;
                let (l, _) = self.name()?;
                let (r, _) = self.name()?;
                self.expect(Tok::RParen, "`)`")?;
                swaps.push((l, r));
            }
            self.expect(Tok::Dot, "`.` after a permutation")?;
            let (x, _) = self.name()?;
            return Ok(RawTerm::Susp(swaps, x, pos));
        }
        let (x, _) = self.name()?;
        match self.peek() {
            Some(Tok::LParen) => {
                self.pos += 1;
                let mut args = Vec::new();
                if self.peek() != Some(&Tok::RParen) {
                    args.push(self.term()?);
                    while self.peek() == Some(&Tok::Comma) {
                        self.pos += 1;
                        args.push(self.term()?);
                    }
                }
                self.expect(Tok::RParen, "`,` or `)`")?;
                Ok(RawTerm::Call(x, args, pos))
            }
            // A dot followed by something that cannot start a term ends the statement.
            Some(Tok::Dot) if self.starts_term(1) => {
                self.pos += 1;
                Ok(RawTerm::Abs(x, pos, Box::new(self.term()?)))
            }
            _ => Ok(RawTerm::Name(x, pos)),
        }
    }

    fn statement(&mut self) -> Result<Stmt, Error> {
        let pos = self.here();
        let kw = match self.peek() {
            Some(Tok::Ident(k)) if KEYWORDS.contains(&k.as_str()) => k.clone(),
            _ => return Err(err(pos, "expected one of atom, sort, var, fun, eq, fresh")),
        };
        self.pos += 1;
        let stmt = match kw.as_str() {
            "atom" => {
                let names = self.names()?;
                self.expect(Tok::Colon, "`:`")?;
                Stmt::Atom(names, self.name()?.0)
            }
            "sort" => Stmt::Sort(self.names()?),
            "var" => {
                let names = self.names()?;
                self.expect(Tok::Colon, "`:`")?;
                let spos = self.here();
                Stmt::Var(names, self.sort()?, spos)
            }
            "fun" => {
                let (f, _) = self.name()?;
                self.expect(Tok::Colon, "`:`")?;
                let mut sorts = vec![self.sort()?];
                while matches!(self.peek(), Some(Tok::Star | Tok::Comma)) {
                    self.pos += 1;
                    sorts.push(self.sort()?);
                }
                let rpos = self.here();
                if self.peek() == Some(&Tok::Arrow) {
                    self.pos += 1;
                    let rpos = self.here();
                    Stmt::Fun(f, sorts, self.name()?.0, rpos)
                } else if let [RawSort::Base(result)] = sorts.as_slice() {
                    Stmt::Fun(f, Vec::new(), result.clone(), rpos)
                } else {
                    return Err(err(rpos, "expected `->`"));
                }
            }
            "eq" => {
                let t = self.term()?;
                self.expect(Tok::Tilde, "`~`")?;
                Stmt::Eq(t, self.term()?, pos)
            }
            _ => {
                let (a, apos) = self.name()?;
                self.expect(Tok::Hash, "`#`")?;
                Stmt::Fresh(a, apos, self.term()?, pos)
            }
        };
        self.expect(Tok::Dot, "`.` at the end of the statement")?;
        Ok(stmt)
    }
}

struct Resolver<'a> {
    sig: &'a Signature,
}

impl Resolver<'_> {
    fn sort(&self, s: &RawSort, pos: Pos) -> Result<Sort, Error> {
        match s {
            RawSort::Base(n) => Ok(self.base(n)),
            RawSort::Abs(n, body) if self.sig.atom_sorts.contains(n) => {
                Ok(Sort::Abs(n.clone(), Box::new(self.sort(body, pos)?)))
            }
            RawSort::Abs(n, _) => Err(err(pos, format!("`{n}` is not an atom sort"))),
        }
    }

    fn base(&self, n: &str) -> Sort {
        if self.sig.atom_sorts.contains(n) {
            Sort::Atom(n.to_string())
        } else {
            Sort::Data(n.to_string())
        }
    }

    fn atom(&self, a: &str, pos: Pos) -> Result<Atom, Error> {
        self.sig.atom(a).map_err(|_| err(pos, format!("`{a}` is not a declared atom")))
    }

    fn term(&self, t: &RawTerm) -> Result<NominalTerm, Error> {
        match t {
            RawTerm::Name(x, pos) => {
                if self.sig.atoms.contains_key(x) {
                    Ok(NominalTerm::Atom(self.atom(x, *pos)?))
                } else if self.sig.variable_sorts.contains_key(x) {
                    Ok(NominalTerm::var(x))
                } else if self.sig.function_symbols.contains_key(x) {
                    Ok(NominalTerm::app(x, Vec::new()))
                } else {
                    Err(err(*pos, format!("unknown name `{x}`")))
                }
            }
            RawTerm::Call(f, args, pos) => {
                if !self.sig.function_symbols.contains_key(f) {
                    return Err(err(*pos, format!("unknown function symbol `{f}`")));
                }
                let args = args.iter().map(|a| self.term(a)).collect::<Result<_, _>>()?;
                Ok(NominalTerm::App(f.clone(), args))
            }
            RawTerm::Abs(a, pos, body) => Ok(NominalTerm::Abs(self.atom(a, *pos)?, Box::new(self.term(body)?))),
            RawTerm::Susp(swaps, x, pos) => {
                if !self.sig.variable_sorts.contains_key(x) {
                    return Err(err(*pos, format!("unknown variable `{x}`")));
                }
                let swaps = swaps
                    .iter()
                    .map(|(l, r)| Ok(Swapping::new(self.atom(l, *pos)?, self.atom(r, *pos)?)))
                    .collect::<Result<_, Error>>()?;
                Ok(NominalTerm::Susp(Permutation::from_swaps(swaps), x.clone()))
            }
        }
    }
}

/// Parses a problem, checking declarations and the sorts of every equation.
pub fn parse_problem(src: &str) -> Result<NominalProblem, Error> {
    let toks = lex(src)?;
    let end = Pos {
        line: src.lines().count().max(1),
        col: src.lines().last().map_or(1, |l| l.chars().count() + 1),
    };
    let mut parser = Parser { toks, pos: 0, end };
    let mut stmts = Vec::new();
    while parser.peek().is_some() {
        stmts.push(parser.statement()?);
    }

    let mut sig = Signature::new();
    for s in &stmts {
        if let Stmt::Atom(names, sort) = s {
            sig.add_atom_sort(sort);
            for a in names {
                sig.add_atom(a, sort);
            }
        }
    }
    let mut data: BTreeSet<String> = BTreeSet::new();
    fn collect(s: &RawSort, sig: &Signature, data: &mut BTreeSet<String>) {
        match s {
            RawSort::Base(n) if !sig.atom_sorts.contains(n) => {
                data.insert(n.clone());
            }
            RawSort::Base(_) => {}
            RawSort::Abs(_, body) => collect(body, sig, data),
        }
    }
    for s in &stmts {
        match s {
            Stmt::Sort(names) => data.extend(names.iter().cloned()),
            Stmt::Var(_, sort, _) => collect(sort, &sig, &mut data),
            Stmt::Fun(_, args, result, _) => {
                args.iter().for_each(|a| collect(a, &sig, &mut data));
                data.insert(result.clone());
            }
            _ => {}
        }
    }
    for d in &data {
        sig.add_data_sort(d);
    }
    let mut declared: BTreeMap<String, Pos> = BTreeMap::new();
    for s in &stmts {
        let r = Resolver { sig: &sig };
        let (names, pos): (Vec<&String>, Pos) = match s {
            Stmt::Var(names, sort, pos) => {
                let sort = r.sort(sort, *pos)?;
                if matches!(sort, Sort::Abs(..)) {
                    return Err(err(*pos, "variables must have an atom or data sort"));
                }
                for x in names {
                    sig.add_var(x, sort.clone());
                }
                (names.iter().collect(), *pos)
            }
            Stmt::Fun(f, args, result, pos) => {
                if sig.atom_sorts.contains(result) {
                    return Err(err(*pos, format!("result sort `{result}` is an atom sort")));
                }
                let args = args.iter().map(|a| r.sort(a, *pos)).collect::<Result<_, _>>()?;
                sig.add_fun(f, args, result);
                (vec![f], *pos)
            }
            _ => continue,
        };
        for n in names {
            if sig.atoms.contains_key(n) || declared.insert(n.clone(), pos).is_some() {
                return Err(err(pos, format!("`{n}` is declared twice")));
            }
        }
    }
    sig.validate()?;

    let r = Resolver { sig: &sig };
    let mut equations = Vec::new();
    for s in &stmts {
        let (e, pos) = match s {
            Stmt::Eq(t, u, pos) => (Equation::Eq(r.term(t)?, r.term(u)?), *pos),
            Stmt::Fresh(a, apos, t, pos) => (Equation::Fresh(r.atom(a, *apos)?, r.term(t)?), *pos),
            _ => continue,
        };
        let single = NominalProblem::new(sig.clone(), vec![e.clone()]);
        single.validate().map_err(|e| err(pos, e.to_string()))?;
        equations.push(e);
    }
    Ok(NominalProblem::new(sig, equations))
}

/// Renders a problem in the format [`parse_problem`] reads.
pub fn format_problem(p: &NominalProblem) -> String {
    let sig = &p.signature;
    let mut out = String::new();
    let mut by_sort: BTreeMap<&str, Vec<&str>> = BTreeMap::new();
    for (a, s) in &sig.atoms {
        by_sort.entry(s).or_default().push(a);
    }
    for (s, atoms) in by_sort {
        let _ = writeln!(out, "atom {} : {s}.", atoms.join(" "));
    }
    if !sig.data_sorts.is_empty() {
        let names: Vec<&str> = sig.data_sorts.iter().map(String::as_str).collect();
        let _ = writeln!(out, "sort {}.", names.join(" "));
    }
    let mut vars: BTreeMap<String, Vec<&str>> = BTreeMap::new();
    for (x, s) in &sig.variable_sorts {
        vars.entry(s.to_string()).or_default().push(x);
    }
    for (s, xs) in vars {
        let _ = writeln!(out, "var {} : {s}.", xs.join(" "));
    }
    for (f, arity) in &sig.function_symbols {
        let _ = writeln!(out, "fun {f} : {arity}.");
    }
    for e in &p.equations {
        let _ = writeln!(out, "{}.", match e {
            Equation::Eq(..) => format!("eq {e}"),
            Equation::Fresh(..) => format!("fresh {e}"),
        });
    }
    out
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Format {
    #[default]
    Text,
    Json,
}

/// `nabla: …` and `subst: …` lines, or the JSON encoding read by [`parse_solution_json`].
pub fn format_solution(sol: &NominalSolution, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(sol).expect("solutions serialise"),
        Format::Text => {
            let nabla = if sol.nabla.is_empty() {
                "(empty)".to_string()
            } else {
                let cs: Vec<String> = sol.nabla.iter().map(|(a, x)| format!("{a} # {x}")).collect();
                cs.join(", ")
            };
            let subst = if sol.subst.is_empty() {
                "(identity)".to_string()
            } else {
                let bs: Vec<String> = sol.subst.bindings.iter().map(|(x, t)| format!("{x} -> {t}")).collect();
                bs.join(" ; ")
            };
            format!("nabla: {nabla}\nsubst: {subst}")
        }
    }
}

pub fn parse_solution_json(src: &str) -> Result<NominalSolution, Error> {
    serde_json::from_str(src).map_err(|e| Error::Parse {
        line: e.line(),
        col: e.column(),
        msg: e.to_string(),
    })
}
