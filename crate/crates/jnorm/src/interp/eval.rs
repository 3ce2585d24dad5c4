//! Bounded evaluation of scalar sentences in `J`, with `mu` and `nu` read
//! as the multiplication graph on the naturals of the field.
//!
//! A universal quantifier ranges over `{0, 1, ..., bound}` plus a few
//! non-natural samples. An existential quantifier whose body forces the
//! value of its variable, through a conjunct `mu(a, b, z)` or `z = t` with
//! `a`, `b`, `t` not depending on variables bound inside the body, is
//! decided at that single value, which may lie beyond the bound. Other
//! existentials range over the sample set.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::ast::{Formula, Sort, Term};
use super::InterpError;
use crate::field::{ratio, OrderedField, Rational};
use crate::predicates::mult_graph_holds;

/// `-1`, `1/2` and `7/3`: a negative number and two non-integers.
pub fn default_extras<F: OrderedField>() -> Vec<F> {
    [ratio(-1, 1), ratio(1, 2), ratio(7, 3)].iter().map(F::from_rational).collect()
}

/// The sample set `{0, ..., bound}` followed by `extras`.
pub fn samples<F: OrderedField>(bound: u32, extras: &[F]) -> Vec<F> {
    (0..=bound).map(|n| F::from_int(n.into())).chain(extras.iter().cloned()).collect()
}

pub fn eval_bounded<F: OrderedField>(f: &Formula, bound: u32, extras: &[F]) -> Result<bool, InterpError> {
    Evaluator::new(bound, extras).formula(f)
}

/// The first assignment to the leading universal variables (descending
/// through guards that hold) under which `f` fails, if any.
pub fn counterexample<F: OrderedField>(
    f: &Formula,
    bound: u32,
    extras: &[F],
) -> Result<Option<Vec<(String, F)>>, InterpError> {
    let mut ev = Evaluator::new(bound, extras);
    if ev.formula(f)? {
        return Ok(None);
    }
    let mut current = f;
    loop {
        match current {
            Formula::Forall(b, body) => {
                ev.scalar_binder(b)?;
                let mut found = None;
                for s in ev.samples.clone() {
                    ev.env.push((&b.name, s));
                    if !ev.formula(body)? {
                        found = Some(body);
                        break;
                    }
                    ev.env.pop();
                }
                current = found.expect("a failing universal has a failing instance");
            }
            Formula::Imp(a, b) if ev.formula(a)? => current = b,
            _ => return Ok(Some(ev.env.into_iter().map(|(n, v)| (n.to_string(), v)).collect())),
        }
    }
}

struct Evaluator<'a, F> {
    samples: Vec<F>,
    env: Vec<(&'a str, F)>,
}

impl<'a, F: OrderedField> Evaluator<'a, F> {
    fn new(bound: u32, extras: &[F]) -> Self {
        Evaluator {
            samples: samples(bound, extras),
            env: Vec::new(),
        }
    }

    fn lookup(&self, name: &str) -> Result<F, InterpError> {
        self.env
            .iter()
            .rev()
            .find(|(n, _)| *n == name)
            .map(|(_, v)| v.clone())
            .ok_or_else(|| InterpError::Open(name.to_string()))
    }

    fn term(&self, t: &Term) -> Result<F, InterpError> {
        Ok(match t {
            Term::Zero => F::zero(),
            Term::One => F::one(),
            Term::Var(x) => self.lookup(x)?,
            Term::Plus(a, b) => self.term(a)? + self.term(b)?,
            Term::Minus(a, b) => self.term(a)? - self.term(b)?,
            Term::Succ(_) => return Err(InterpError::Unsupported("'S' (translate first)")),
            Term::Times(..) => return Err(InterpError::Unsupported("'times' (translate first)")),
            Term::Norm(_) => return Err(InterpError::Unsupported("vector terms")),
        })
    }

    fn scalar_binder(&self, b: &super::ast::Binder) -> Result<(), InterpError> {
        if b.sort == Some(Sort::V) {
            Err(InterpError::Unsupported("vector quantifiers"))
        } else {
            Ok(())
        }
    }

    fn formula(&mut self, f: &'a Formula) -> Result<bool, InterpError> {
        Ok(match f {
            Formula::Eq(a, b) => self.term(a)? == self.term(b)?,
            Formula::Lt(a, b) => self.term(a)? < self.term(b)?,
            Formula::Mu(a, b, c) => mult_graph_holds(&self.term(a)?, &self.term(b)?, &self.term(c)?),
            Formula::Nu(a) => mult_graph_holds(&self.term(a)?, &F::zero(), &F::zero()),
            Formula::VEq(..) => return Err(InterpError::Unsupported("vector equations")),
            Formula::Not(g) => !self.formula(g)?,
            Formula::And(gs) => {
                for g in gs {
                    if !self.formula(g)? {
                        return Ok(false);
                    }
                }
                true
            }
            Formula::Or(gs) => {
                for g in gs {
                    if self.formula(g)? {
                        return Ok(true);
                    }
                }
                false
            }
            Formula::Imp(a, b) => !self.formula(a)? || self.formula(b)?,
            Formula::Forall(b, body) => {
                self.scalar_binder(b)?;
                for i in 0..self.samples.len() {
                    let s = self.samples[i].clone();
                    if !self.with(&b.name, s, body)? {
                        return Ok(false);
                    }
                }
                true
            }
            Formula::Exists(b, body) => {
                self.scalar_binder(b)?;
                if let Some(v) = self.forced(&b.name, body, &mut Vec::new()) {
                    return self.with(&b.name, v, body);
                }
                for i in 0..self.samples.len() {
                    let s = self.samples[i].clone();
                    if self.with(&b.name, s, body)? {
                        return Ok(true);
                    }
                }
                false
            }
        })
    }

    fn with(&mut self, name: &'a str, value: F, body: &'a Formula) -> Result<bool, InterpError> {
        self.env.push((name, value));
        let out = self.formula(body);
        self.env.pop();
        out
    }

    // the only value of `name` that can satisfy `f`, if a conjunct pins it
    fn forced(&self, name: &str, f: &'a Formula, inner: &mut Vec<&'a str>) -> Option<F> {
        let free_of = |t: &Term, inner: &[&str]| !mentions(t, name) && inner.iter().all(|x| !mentions(t, x));
        match f {
            Formula::And(gs) => gs.iter().find_map(|g| self.forced(name, g, inner)),
            Formula::Exists(b, g) if b.name != name => {
                inner.push(&b.name);
                let out = self.forced(name, g, inner);
                inner.pop();
                out
            }
            Formula::Mu(a, b, Term::Var(z)) if z == name && free_of(a, inner) && free_of(b, inner) => {
                Some(self.term(a).ok()? * self.term(b).ok()?)
            }
            Formula::Eq(Term::Var(z), t) | Formula::Eq(t, Term::Var(z)) if z == name && free_of(t, inner) => {
                self.term(t).ok()
            }
            _ => None,
        }
    }
}

fn mentions(t: &Term, name: &str) -> bool {
    match t {
        Term::Var(x) => x == name,
        Term::Zero | Term::One | Term::Norm(_) => false,
        Term::Succ(a) => mentions(a, name),
        Term::Plus(a, b) | Term::Times(a, b) | Term::Minus(a, b) => mentions(a, name) || mentions(b, name),
    }
}

/// Evaluates with the default extra samples over the rationals.
pub fn eval_default(f: &Formula, bound: u32) -> Result<bool, InterpError> {
    eval_bounded::<Rational>(f, bound, &default_extras())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{rat, RatFunc};
    use crate::interp::{builtin, parse, translate, Language};

    fn k(text: &str) -> Formula {
        parse(text, Language::K).unwrap()
    }

    #[test]
    fn small_sentences() {
        assert!(eval_default(&k("(nu 0)"), 5).unwrap());
        assert!(!eval_default(&k("(nu (minus 0 1))"), 5).unwrap());
        assert!(eval_default(&k("(forall (x K) (imp (nu x) (mu x 1 x)))"), 10).unwrap());
        let f = k("(forall (x K) (imp (nu x) (mu x 1 0)))");
        assert!(!eval_default(&f, 25).unwrap());
        let cx = counterexample::<Rational>(&f, 25, &default_extras()).unwrap().unwrap();
        assert_eq!(cx, [("x".to_string(), rat(1))]);
    }

    #[test]
    fn forced_witnesses_reach_past_the_bound() {
        let f = k("(exists (z K) (and (nu z) (mu (plus 1 1) (plus (plus 1 1) 1) z)))");
        assert!(eval_default(&f, 3).unwrap());
        let g = k("(exists (z K) (and (nu z) (= z (plus (plus 1 1) (plus 1 1)))))");
        assert!(eval_default(&g, 2).unwrap());
    }

    #[test]
    fn translated_q5() {
        let f = translate(&builtin::q(5)).unwrap();
        assert!(eval_default(&f, 25).unwrap());
    }

    #[test]
    fn unsupported_atoms() {
        let v = parse("(forall (v V) (= v v))", Language::Ns).unwrap();
        assert_eq!(eval_default(&v, 3), Err(InterpError::Unsupported("vector quantifiers")));
        let raw = builtin::q(6);
        assert!(matches!(eval_default(&raw, 3), Err(InterpError::Unsupported(_))));
    }

    #[test]
    fn non_archimedean_samples() {
        let extras = alloc::vec![RatFunc::epsilon(), RatFunc::from_int(3) - RatFunc::epsilon()];
        let f = translate(&builtin::q(4)).unwrap();
        assert!(eval_bounded(&f, 6, &extras).unwrap());
        assert!(!eval_bounded(&k("(forall (x K) (nu x))"), 2, &extras).unwrap());
    }
}
