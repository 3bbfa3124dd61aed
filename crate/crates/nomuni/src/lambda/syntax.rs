//! Text syntax for λ-terms: `\a b. f (X a b) b`.
//!
//! Binders may carry a type, `\a:N f:(N -> D). t`; without one the type comes from
//! [`LambdaEnv::binder_types`].

use std::collections::BTreeMap;
use std::fmt;

use super::term::LambdaTerm;
use super::types::LambdaType;
use crate::error::Error;

impl fmt::Display for LambdaTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LambdaTerm::Bound(x, _) | LambdaTerm::Free(x, _) | LambdaTerm::Const(x, _) => f.write_str(x),
            LambdaTerm::Lam(..) => {
                let (binders, body) = self.strip_lams();
                f.write_str("\\")?;
                for (i, (x, _)) in binders.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" ")?;
                    }
                    f.write_str(x)?;
                }
                write!(f, ". {body}")
            }
            LambdaTerm::App(h, args) => {
                write_operand(f, h)?;
                for a in args {
                    f.write_str(" ")?;
                    write_operand(f, a)?;
                }
                Ok(())
            }
        }
    }
}

fn write_operand(f: &mut fmt::Formatter<'_>, t: &LambdaTerm) -> fmt::Result {
    match t {
        LambdaTerm::Lam(..) | LambdaTerm::App(..) => write!(f, "({t})"),
        _ => write!(f, "{t}"),
    }
}

/// Names known to the parser.
#[derive(Clone, Debug, Default)]
pub struct LambdaEnv {
    pub consts: BTreeMap<String, LambdaType>,
    pub free: BTreeMap<String, LambdaType>,
    /// Default types for binders written without annotation.
    pub binder_types: BTreeMap<String, LambdaType>,
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Lambda,
    Dot,
    Colon,
    Arrow,
    LParen,
    RParen,
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>, Error> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let tok = match c {
            '\\' | 'λ' => Tok::Lambda,
            '.' => Tok::Dot,
            ':' => Tok::Colon,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '-' if chars.get(i + 1) == Some(&'>') => {
                i += 1;
                Tok::Arrow
            }
            c if is_ident_char(c) => {
                while i + 1 < chars.len() && is_ident_char(chars[i + 1]) {
                    i += 1;
                }
                Tok::Ident(chars[start..=i].iter().collect())
            }
            other => {
                return Err(Error::Parse {
                    line: 1,
                    col: start + 1,
                    msg: format!("unexpected character `{other}`"),
                })
            }
        };
        out.push((tok, start + 1));
        i += 1;
    }
    Ok(out)
}

pub(crate) fn is_ident_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\''
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    env: &'a LambdaEnv,
    scope: Vec<(String, LambdaType)>,
}

impl Parser<'_> {
    fn err(&self, msg: impl Into<String>) -> Error {
        let col = self.toks.get(self.pos).map_or(0, |(_, c)| *c);
        Error::Parse {
            line: 1,
            col,
            msg: msg.into(),
        }
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn expect(&mut self, t: Tok) -> Result<(), Error> {
        if self.peek() == Some(&t) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(format!("expected {t:?}")))
        }
    }

    fn ident(&mut self) -> Result<String, Error> {
        match self.peek() {
            Some(Tok::Ident(x)) => {
                let x = x.clone();
                self.pos += 1;
                Ok(x)
            }
            _ => Err(self.err("expected a name")),
        }
    }

    fn ty(&mut self) -> Result<LambdaType, Error> {
        let from = match self.peek() {
            Some(Tok::LParen) => {
                self.pos += 1;
                let t = self.ty()?;
                self.expect(Tok::RParen)?;
                t
            }
            _ => LambdaType::Base(self.ident()?),
        };
        if self.peek() == Some(&Tok::Arrow) {
            self.pos += 1;
            Ok(LambdaType::arrow(from, self.ty()?))
        } else {
            Ok(from)
        }
    }

    fn binder_ty(&mut self) -> Result<LambdaType, Error> {
        match self.peek() {
            Some(Tok::LParen) => {
                self.pos += 1;
                let t = self.ty()?;
                self.expect(Tok::RParen)?;
                Ok(t)
            }
            _ => Ok(LambdaType::Base(self.ident()?)),
        }
    }

    fn term(&mut self) -> Result<LambdaTerm, Error> {
        if self.peek() == Some(&Tok::Lambda) {
            self.pos += 1;
            let mut binders = Vec::new();
            while let Some(Tok::Ident(_)) = self.peek() {
                let x = self.ident()?;
                let ty = if self.peek() == Some(&Tok::Colon) {
                    self.pos += 1;
                    self.binder_ty()?
                } else {
                    self.env
                        .binder_types
                        .get(&x)
                        .cloned()
                        .ok_or_else(|| self.err(format!("no type known for binder `{x}`")))?
                };
                binders.push((x, ty));
            }
            if binders.is_empty() {
                return Err(self.err("expected a binder"));
            }
            self.expect(Tok::Dot)?;
            let depth = self.scope.len();
            self.scope.extend(binders.iter().cloned());
            let body = self.term();
            self.scope.truncate(depth);
            return Ok(LambdaTerm::lams(&binders, body?));
        }
        let head = self.operand()?;
        let mut args = Vec::new();
        while matches!(self.peek(), Some(Tok::Ident(_)) | Some(Tok::LParen) | Some(Tok::Lambda)) {
            if self.peek() == Some(&Tok::Lambda) {
                args.push(self.term()?);
                break;
            }
            args.push(self.operand()?);
        }
        Ok(LambdaTerm::apply(head, args))
    }

    fn operand(&mut self) -> Result<LambdaTerm, Error> {
        match self.peek() {
            Some(Tok::LParen) => {
                self.pos += 1;
                let t = self.term()?;
                self.expect(Tok::RParen)?;
                Ok(t)
            }
            Some(Tok::Ident(_)) => {
                let x = self.ident()?;
                if let Some((_, ty)) = self.scope.iter().rev().find(|(y, _)| *y == x) {
                    Ok(LambdaTerm::Bound(x, ty.clone()))
                } else if let Some(ty) = self.env.consts.get(&x) {
                    Ok(LambdaTerm::Const(x, ty.clone()))
                } else if let Some(ty) = self.env.free.get(&x) {
                    Ok(LambdaTerm::Free(x, ty.clone()))
                } else {
                    self.pos -= 1;
                    Err(self.err(format!("unknown name `{x}`")))
                }
            }
            _ => Err(self.err("expected a term")),
        }
    }
}

/// Parses a λ-term and checks that it is well-typed.
pub fn parse_lambda(src: &str, env: &LambdaEnv) -> Result<LambdaTerm, Error> {
    let mut p = Parser {
        toks: lex(src)?,
        pos: 0,
        env,
        scope: Vec::new(),
    };
    let t = p.term()?;
    if p.pos != p.toks.len() {
        return Err(p.err("trailing input"));
    }
    super::type_of(&t)?;
    Ok(t)
}
