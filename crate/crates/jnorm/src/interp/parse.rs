//! S-expression reader for formulas.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::ast::{Binder, Formula, Sort, Term, VTerm};
use super::{InterpError, Language};
use crate::field::{BigInt, Rational};

const RESERVED: &[&str] = &[
    "S", "plus", "times", "minus", "mu", "nu", "not", "and", "or", "imp", "forall", "exists", "norm", "vplus",
    "vminus", "scale", "K", "V",
];

#[derive(Debug)]
enum Sexp<'a> {
    Atom(&'a str, usize),
    List(Vec<Sexp<'a>>, usize),
}

impl Sexp<'_> {
    fn pos(&self) -> usize {
        match self {
            Sexp::Atom(_, p) | Sexp::List(_, p) => *p,
        }
    }
}

fn syntax(pos: usize, msg: impl Into<String>) -> InterpError {
    InterpError::Syntax { pos, msg: msg.into() }
}

fn read(text: &str) -> Result<Sexp<'_>, InterpError> {
    let mut reader = Reader { text, pos: 0 };
    let sexp = reader.sexp()?;
    reader.skip_space();
    if reader.pos < text.len() {
        return Err(syntax(reader.pos, "unexpected trailing input"));
    }
    Ok(sexp)
}

struct Reader<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Reader<'a> {
    fn peek(&self) -> Option<u8> {
        self.text.as_bytes().get(self.pos).copied()
    }

    fn skip_space(&mut self) {
        while let Some(c) = self.peek() {
            if c == b';' {
                while self.peek().is_some_and(|c| c != b'\n') {
                    self.pos += 1;
                }
            } else if c.is_ascii_whitespace() {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    fn sexp(&mut self) -> Result<Sexp<'a>, InterpError> {
        self.skip_space();
        let start = self.pos;
        match self.peek() {
            None => Err(syntax(start, "unexpected end of input")),
            Some(b')') => Err(syntax(start, "unexpected ')'")),
            Some(b'(') => {
                self.pos += 1;
                let mut items = Vec::new();
                loop {
                    self.skip_space();
                    match self.peek() {
                        None => return Err(syntax(start, "unclosed '('")),
                        Some(b')') => {
                            self.pos += 1;
                            return Ok(Sexp::List(items, start));
                        }
                        Some(_) => items.push(self.sexp()?),
                    }
                }
            }
            Some(_) => {
                while self.peek().is_some_and(|c| !c.is_ascii_whitespace() && c != b'(' && c != b')' && c != b';') {
                    self.pos += 1;
                }
                Ok(Sexp::Atom(&self.text[start..self.pos], start))
            }
        }
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    chars.next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
        && !RESERVED.contains(&s)
}

fn parse_rational(s: &str, pos: usize) -> Result<Rational, InterpError> {
    let bad = || syntax(pos, format!("expected a rational constant, found '{s}'"));
    let (num, den) = s.split_once('/').unwrap_or((s, "1"));
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den == BigInt::from(0) || den < BigInt::from(0) {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

struct Converter {
    lang: Language,
    // innermost last
    scope: Vec<(String, Sort)>,
}

impl Converter {
    fn lookup(&self, name: &str) -> Option<Sort> {
        self.scope.iter().rev().find(|(n, _)| n == name).map(|(_, s)| *s)
    }

    fn allow(&self, ok: bool, pos: usize, what: &str) -> Result<(), InterpError> {
        if ok {
            Ok(())
        } else {
            Err(InterpError::Language {
                pos,
                msg: format!("{what} is not part of the {} language", self.lang),
            })
        }
    }

    fn head<'s, 'a>(&self, items: &'s [Sexp<'a>], pos: usize) -> Result<(&'a str, &'s [Sexp<'a>]), InterpError> {
        match items.split_first() {
            Some((Sexp::Atom(h, _), rest)) => Ok((h, rest)),
            Some((other, _)) => Err(syntax(other.pos(), "expected an operator name")),
            None => Err(syntax(pos, "empty form")),
        }
    }

    fn arity(&self, op: &str, args: &[Sexp], n: usize, pos: usize) -> Result<(), InterpError> {
        if args.len() == n {
            Ok(())
        } else {
            Err(syntax(pos, format!("'{op}' takes {n} argument(s), found {}", args.len())))
        }
    }

    fn formula(&mut self, s: &Sexp) -> Result<Formula, InterpError> {
        let (items, pos) = match s {
            Sexp::List(items, pos) => (items, *pos),
            Sexp::Atom(a, pos) => return Err(syntax(*pos, format!("expected a formula, found '{a}'"))),
        };
        let (op, args) = self.head(items, pos)?;
        let lang = self.lang;
        match op {
            "=" => {
                self.arity(op, args, 2, pos)?;
                if self.is_vector(&args[0]) || self.is_vector(&args[1]) {
                    Ok(Formula::VEq(self.vterm(&args[0])?, self.vterm(&args[1])?))
                } else {
                    Ok(Formula::Eq(self.term(&args[0])?, self.term(&args[1])?))
                }
            }
            "<" => {
                self.allow(lang != Language::Pa, pos, "'<'")?;
                self.arity(op, args, 2, pos)?;
                Ok(Formula::Lt(self.term(&args[0])?, self.term(&args[1])?))
            }
            "mu" => {
                self.allow(lang == Language::K, pos, "'mu'")?;
                self.arity(op, args, 3, pos)?;
                Ok(Formula::Mu(self.term(&args[0])?, self.term(&args[1])?, self.term(&args[2])?))
            }
            "nu" => {
                self.allow(lang == Language::K, pos, "'nu'")?;
                self.arity(op, args, 1, pos)?;
                Ok(Formula::Nu(self.term(&args[0])?))
            }
            "not" => {
                self.arity(op, args, 1, pos)?;
                Ok(self.formula(&args[0])?.not())
            }
            "and" | "or" => {
                let parts = args.iter().map(|a| self.formula(a)).collect::<Result<Vec<_>, _>>()?;
                Ok(if op == "and" { Formula::And(parts) } else { Formula::Or(parts) })
            }
            "imp" => {
                self.arity(op, args, 2, pos)?;
                Ok(self.formula(&args[0])?.imp(self.formula(&args[1])?))
            }
            "forall" | "exists" => {
                self.arity(op, args, 2, pos)?;
                let binder = self.binder(&args[0])?;
                self.scope.push((binder.name.clone(), binder.sort.unwrap_or(Sort::K)));
                let body = self.formula(&args[1]);
                self.scope.pop();
                let body = Box::new(body?);
                Ok(if op == "forall" { Formula::Forall(binder, body) } else { Formula::Exists(binder, body) })
            }
            _ => Err(syntax(pos, format!("unknown formula operator '{op}'"))),
        }
    }

    fn binder(&self, s: &Sexp) -> Result<Binder, InterpError> {
        match s {
            Sexp::Atom(name, pos) => {
                self.allow(self.lang == Language::Pa, *pos, "an unsorted binder")?;
                self.identifier(name, *pos)?;
                Ok(Binder::untyped(*name))
            }
            Sexp::List(items, pos) => {
                self.allow(self.lang != Language::Pa, *pos, "a sorted binder")?;
                let [Sexp::Atom(name, npos), Sexp::Atom(sort, spos)] = items.as_slice() else {
                    return Err(syntax(*pos, "expected a binder '(name K)' or '(name V)'"));
                };
                self.identifier(name, *npos)?;
                let sort = match *sort {
                    "K" => Sort::K,
                    "V" => {
                        self.allow(self.lang == Language::Ns, *spos, "sort V")?;
                        Sort::V
                    }
                    other => return Err(syntax(*spos, format!("unknown sort '{other}'"))),
                };
                Ok(Binder { name: name.to_string(), sort: Some(sort) })
            }
        }
    }

    fn identifier(&self, name: &str, pos: usize) -> Result<(), InterpError> {
        if is_identifier(name) {
            Ok(())
        } else {
            Err(syntax(pos, format!("'{name}' is not a variable name")))
        }
    }

    fn is_vector(&self, s: &Sexp) -> bool {
        match s {
            Sexp::Atom(a, _) => self.lookup(a) == Some(Sort::V),
            Sexp::List(items, _) => matches!(items.first(), Some(Sexp::Atom("vplus" | "vminus" | "scale", _))),
        }
    }

    fn variable(&self, name: &str, pos: usize, want: Sort) -> Result<String, InterpError> {
        self.identifier(name, pos)?;
        match self.lookup(name) {
            None => Err(InterpError::Unbound { pos, name: name.to_string() }),
            Some(s) if s == want => Ok(name.to_string()),
            Some(s) => Err(syntax(pos, format!("'{name}' has sort {s}, expected {want}"))),
        }
    }

    fn term(&mut self, s: &Sexp) -> Result<Term, InterpError> {
        let lang = self.lang;
        let (items, pos) = match s {
            Sexp::Atom("0", _) => return Ok(Term::Zero),
            Sexp::Atom("1", pos) => {
                self.allow(lang != Language::Pa, *pos, "the constant 1")?;
                return Ok(Term::One);
            }
            Sexp::Atom(a, pos) => return Ok(Term::Var(self.variable(a, *pos, Sort::K)?)),
            Sexp::List(items, pos) => (items, *pos),
        };
        let (op, args) = self.head(items, pos)?;
        match op {
            "S" => {
                self.allow(lang == Language::Pa, pos, "'S'")?;
                self.arity(op, args, 1, pos)?;
                Ok(self.term(&args[0])?.succ())
            }
            "plus" | "times" | "minus" => {
                self.allow(op != "times" || lang == Language::Pa, pos, "'times'")?;
                self.allow(op != "minus" || lang != Language::Pa, pos, "'minus'")?;
                self.arity(op, args, 2, pos)?;
                let (a, b) = (self.term(&args[0])?, self.term(&args[1])?);
                Ok(match op {
                    "plus" => a.plus(b),
                    "times" => a.times(b),
                    _ => a.minus(b),
                })
            }
            "norm" => {
                self.allow(lang == Language::Ns, pos, "'norm'")?;
                self.arity(op, args, 1, pos)?;
                Ok(self.vterm(&args[0])?.norm())
            }
            _ => Err(syntax(pos, format!("unknown term operator '{op}'"))),
        }
    }

    fn vterm(&mut self, s: &Sexp) -> Result<VTerm, InterpError> {
        let (items, pos) = match s {
            Sexp::Atom(a, pos) => {
                self.allow(self.lang == Language::Ns, *pos, "a vector term")?;
                return Ok(VTerm::Var(self.variable(a, *pos, Sort::V)?));
            }
            Sexp::List(items, pos) => (items, *pos),
        };
        self.allow(self.lang == Language::Ns, pos, "a vector term")?;
        let (op, args) = self.head(items, pos)?;
        match op {
            "vplus" | "vminus" => {
                self.arity(op, args, 2, pos)?;
                let (a, b) = (self.vterm(&args[0])?, self.vterm(&args[1])?);
                Ok(if op == "vplus" { a.plus(b) } else { a.minus(b) })
            }
            "scale" => {
                self.arity(op, args, 2, pos)?;
                let c = match &args[0] {
                    Sexp::Atom(c, cpos) => parse_rational(c, *cpos)?,
                    other => return Err(syntax(other.pos(), "expected a rational constant")),
                };
                Ok(self.vterm(&args[1])?.scale(c))
            }
            _ => Err(syntax(pos, format!("unknown vector operator '{op}'"))),
        }
    }
}

/// Parses a sentence of `lang`.
pub fn parse(text: &str, lang: Language) -> Result<Formula, InterpError> {
    parse_with(text, lang, &[])
}

/// Parses a formula whose free variables are among `free`.
pub fn parse_with(text: &str, lang: Language, free: &[(&str, Sort)]) -> Result<Formula, InterpError> {
    let sexp = read(text)?;
    let mut conv = Converter {
        lang,
        scope: free.iter().map(|(n, s)| (n.to_string(), *s)).collect(),
    };
    conv.formula(&sexp)
}
