//! Interpreting Robinson arithmetic in normed spaces.
//!
//! Formulas are s-expressions over three nested languages: arithmetic
//! sentences ([`Language::Pa`]), the scalar language with the
//! multiplication-graph predicate `mu` and its domain `nu`
//! ([`Language::K`]), and the purely additive language of normed spaces
//! with vector sort `V` ([`Language::Ns`]). [`translate`] maps the first
//! into the second, [`expand_mu`] the second into the third, and
//! [`eval_bounded`] checks scalar sentences against `J` on a finite sample.

mod ast;
pub mod builtin;
mod eval;
mod expand;
mod parse;
mod translate;

pub use ast::{alpha_eq, var, vvar, Binder, Formula, Sort, Term, VTerm};
pub use eval::{counterexample, default_extras, eval_bounded, eval_default, samples};
pub use expand::{expand_mu, numeral};
pub use parse::{parse, parse_with};
pub use translate::{eliminate_succ, introduce_mu, label_sorts, relativize, translate, unnest, Fresh};

use alloc::format;
use alloc::string::String;
use core::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Language {
    /// `0`, `S`, `plus`, `times`, `=`; unsorted binders.
    Pa,
    /// `0`, `1`, `plus`, `minus`, `=`, `<`, `mu`, `nu`; binders of sort `K`.
    K,
    /// `0`, `1`, `plus`, `minus`, `norm`, `vplus`, `vminus`, `scale`, `=`,
    /// `<`; binders of sorts `K` and `V`.
    Ns,
}

impl fmt::Display for Language {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Language::Pa => "arithmetic",
            Language::K => "scalar",
            Language::Ns => "normed-space",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InterpError {
    Syntax { pos: usize, msg: String },
    Unbound { pos: usize, name: String },
    Language { pos: usize, msg: String },
    /// A sentence was expected; the name is free.
    Open(String),
    Unsupported(&'static str),
}

impl fmt::Display for InterpError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InterpError::Syntax { pos, msg } => write!(f, "syntax error at offset {pos}: {msg}"),
            InterpError::Unbound { pos, name } => write!(f, "unbound variable '{name}' at offset {pos}"),
            InterpError::Language { pos, msg } => write!(f, "at offset {pos}: {msg}"),
            InterpError::Open(name) => write!(f, "expected a sentence, but '{name}' is free"),
            InterpError::Unsupported(what) => {
                write!(f, "bounded evaluation does not support {what}; only scalar sentences over mu and nu are checked")
            }
        }
    }
}

/// Checks that `f` uses only the constructs of `lang`, naming the first
/// offending one.
pub fn check_language(f: &Formula, lang: Language) -> Result<(), String> {
    let bad = |what: &str| Err(format!("{what} is not part of the {lang} language"));
    match f {
        Formula::Eq(a, b) => check_term(a, lang).and(check_term(b, lang)),
        Formula::Lt(a, b) if lang != Language::Pa => check_term(a, lang).and(check_term(b, lang)),
        Formula::Lt(..) => bad("'<'"),
        Formula::VEq(a, b) if lang == Language::Ns => check_vterm(a).and(check_vterm(b)),
        Formula::VEq(..) => bad("vector equality"),
        Formula::Mu(a, b, c) if lang == Language::K => {
            check_term(a, lang).and(check_term(b, lang)).and(check_term(c, lang))
        }
        Formula::Mu(..) => bad("'mu'"),
        Formula::Nu(a) if lang == Language::K => check_term(a, lang),
        Formula::Nu(..) => bad("'nu'"),
        Formula::Not(g) => check_language(g, lang),
        Formula::And(gs) | Formula::Or(gs) => gs.iter().try_for_each(|g| check_language(g, lang)),
        Formula::Imp(a, b) => check_language(a, lang).and(check_language(b, lang)),
        Formula::Forall(b, g) | Formula::Exists(b, g) => {
            match (lang, b.sort) {
                (Language::Pa, None) | (Language::K, Some(Sort::K)) | (Language::Ns, Some(_)) => {}
                (_, None) => return bad("an unsorted binder"),
                (_, Some(s)) => return bad(&format!("a binder of sort {s}")),
            }
            check_language(g, lang)
        }
    }
}

fn check_term(t: &Term, lang: Language) -> Result<(), String> {
    let bad = |what: &str| Err(format!("{what} is not part of the {lang} language"));
    match t {
        Term::Zero | Term::Var(_) => Ok(()),
        Term::One if lang == Language::Pa => bad("the constant 1"),
        Term::One => Ok(()),
        Term::Succ(a) if lang == Language::Pa => check_term(a, lang),
        Term::Succ(_) => bad("'S'"),
        Term::Times(a, b) if lang == Language::Pa => check_term(a, lang).and(check_term(b, lang)),
        Term::Times(..) => bad("'times'"),
        Term::Plus(a, b) => check_term(a, lang).and(check_term(b, lang)),
        Term::Minus(a, b) if lang != Language::Pa => check_term(a, lang).and(check_term(b, lang)),
        Term::Minus(..) => bad("'minus'"),
        Term::Norm(v) if lang == Language::Ns => check_vterm(v),
        Term::Norm(_) => bad("'norm'"),
    }
}

fn check_vterm(v: &VTerm) -> Result<(), String> {
    match v {
        VTerm::Var(_) => Ok(()),
        VTerm::Plus(a, b) | VTerm::Minus(a, b) => check_vterm(a).and(check_vterm(b)),
        VTerm::Scale(_, a) => check_vterm(a),
    }
}

/// Every quantifier of `f` is guarded by `nu` of its variable.
pub fn is_relativized(f: &Formula) -> bool {
    match f {
        Formula::Forall(b, g) => match &**g {
            Formula::Imp(guard, rest) => is_guard(guard, &b.name) && is_relativized(rest),
            _ => false,
        },
        Formula::Exists(b, g) => match &**g {
            Formula::And(parts) if !parts.is_empty() => {
                is_guard(&parts[0], &b.name) && parts[1..].iter().all(is_relativized)
            }
            _ => false,
        },
        Formula::Not(g) => is_relativized(g),
        Formula::And(gs) | Formula::Or(gs) => gs.iter().all(is_relativized),
        Formula::Imp(a, b) => is_relativized(a) && is_relativized(b),
        _ => true,
    }
}

fn is_guard(f: &Formula, name: &str) -> bool {
    matches!(f, Formula::Nu(Term::Var(x)) if x == name)
}
