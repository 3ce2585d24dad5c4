use alloc::boxed::Box;
use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::field::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sort {
    /// Scalars.
    K,
    /// Vectors.
    V,
}

/// A quantified variable; arithmetic sentences leave the sort unstated.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Binder {
    pub name: String,
    pub sort: Option<Sort>,
}

impl Binder {
    pub fn untyped(name: impl Into<String>) -> Binder {
        Binder { name: name.into(), sort: None }
    }

    pub fn scalar(name: impl Into<String>) -> Binder {
        Binder { name: name.into(), sort: Some(Sort::K) }
    }

    pub fn vector(name: impl Into<String>) -> Binder {
        Binder { name: name.into(), sort: Some(Sort::V) }
    }

    pub fn is_vector(&self) -> bool {
        self.sort == Some(Sort::V)
    }
}

/// Scalar terms.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Zero,
    One,
    Var(String),
    Succ(Box<Term>),
    Plus(Box<Term>, Box<Term>),
    Times(Box<Term>, Box<Term>),
    Minus(Box<Term>, Box<Term>),
    Norm(Box<VTerm>),
}

/// Vector terms.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum VTerm {
    Var(String),
    Plus(Box<VTerm>, Box<VTerm>),
    Minus(Box<VTerm>, Box<VTerm>),
    /// Multiplication by a rational constant.
    Scale(Rational, Box<VTerm>),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    Eq(Term, Term),
    Lt(Term, Term),
    VEq(VTerm, VTerm),
    Mu(Term, Term, Term),
    Nu(Term),
    Not(Box<Formula>),
    And(Vec<Formula>),
    Or(Vec<Formula>),
    Imp(Box<Formula>, Box<Formula>),
    Forall(Binder, Box<Formula>),
    Exists(Binder, Box<Formula>),
}

pub fn var(name: &str) -> Term {
    Term::Var(name.into())
}

pub fn vvar(name: &str) -> VTerm {
    VTerm::Var(name.into())
}

impl Term {
    pub fn succ(self) -> Term {
        Term::Succ(Box::new(self))
    }

    pub fn plus(self, rhs: Term) -> Term {
        Term::Plus(Box::new(self), Box::new(rhs))
    }

    pub fn times(self, rhs: Term) -> Term {
        Term::Times(Box::new(self), Box::new(rhs))
    }

    pub fn minus(self, rhs: Term) -> Term {
        Term::Minus(Box::new(self), Box::new(rhs))
    }

    pub fn has_times(&self) -> bool {
        match self {
            Term::Times(..) => true,
            Term::Succ(t) => t.has_times(),
            Term::Plus(a, b) | Term::Minus(a, b) => a.has_times() || b.has_times(),
            Term::Zero | Term::One | Term::Var(_) | Term::Norm(_) => false,
        }
    }

    fn vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Zero | Term::One => {}
            Term::Var(x) => {
                out.insert(x.clone());
            }
            Term::Succ(t) => t.vars(out),
            Term::Plus(a, b) | Term::Times(a, b) | Term::Minus(a, b) => {
                a.vars(out);
                b.vars(out);
            }
            Term::Norm(v) => v.vars(out),
        }
    }
}

impl VTerm {
    pub fn plus(self, rhs: VTerm) -> VTerm {
        VTerm::Plus(Box::new(self), Box::new(rhs))
    }

    pub fn minus(self, rhs: VTerm) -> VTerm {
        VTerm::Minus(Box::new(self), Box::new(rhs))
    }

    pub fn scale(self, c: Rational) -> VTerm {
        VTerm::Scale(c, Box::new(self))
    }

    pub fn norm(self) -> Term {
        Term::Norm(Box::new(self))
    }

    fn vars(&self, out: &mut BTreeSet<String>) {
        match self {
            VTerm::Var(x) => {
                out.insert(x.clone());
            }
            VTerm::Plus(a, b) | VTerm::Minus(a, b) => {
                a.vars(out);
                b.vars(out);
            }
            VTerm::Scale(_, v) => v.vars(out),
        }
    }
}

impl Formula {
    #[allow(clippy::should_implement_trait)]
    pub fn not(self) -> Formula {
        Formula::Not(Box::new(self))
    }

    pub fn imp(self, rhs: Formula) -> Formula {
        Formula::Imp(Box::new(self), Box::new(rhs))
    }

    pub fn forall(binder: Binder, body: Formula) -> Formula {
        Formula::Forall(binder, Box::new(body))
    }

    pub fn exists(binder: Binder, body: Formula) -> Formula {
        Formula::Exists(binder, Box::new(body))
    }

    /// Conjunction, flattening nested conjunctions and dropping the
    /// wrapper for a single conjunct.
    pub fn and(parts: impl IntoIterator<Item = Formula>) -> Formula {
        let mut out = Vec::new();
        for p in parts {
            match p {
                Formula::And(inner) => out.extend(inner),
                other => out.push(other),
            }
        }
        if out.len() == 1 {
            out.pop().unwrap()
        } else {
            Formula::And(out)
        }
    }

    /// Every variable name occurring in the formula, bound or free.
    pub fn all_names(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_names(&mut out);
        out
    }

    fn collect_names(&self, out: &mut BTreeSet<String>) {
        let mut vout = BTreeSet::new();
        self.for_each_term(&mut |t| t.vars(out), &mut |v| v.vars(&mut vout));
        out.extend(vout);
        self.for_each_binder(&mut |b| {
            out.insert(b.name.clone());
        });
    }

    fn for_each_binder(&self, f: &mut impl FnMut(&Binder)) {
        match self {
            Formula::Not(g) => g.for_each_binder(f),
            Formula::And(gs) | Formula::Or(gs) => gs.iter().for_each(|g| g.for_each_binder(f)),
            Formula::Imp(a, b) => {
                a.for_each_binder(f);
                b.for_each_binder(f);
            }
            Formula::Forall(b, g) | Formula::Exists(b, g) => {
                f(b);
                g.for_each_binder(f);
            }
            _ => {}
        }
    }

    /// Visits the top-level terms of every atom.
    pub fn for_each_term(&self, t: &mut impl FnMut(&Term), v: &mut impl FnMut(&VTerm)) {
        match self {
            Formula::Eq(a, b) | Formula::Lt(a, b) => {
                t(a);
                t(b);
            }
            Formula::VEq(a, b) => {
                v(a);
                v(b);
            }
            Formula::Mu(a, b, c) => {
                t(a);
                t(b);
                t(c);
            }
            Formula::Nu(a) => t(a),
            Formula::Not(g) => g.for_each_term(t, v),
            Formula::And(gs) | Formula::Or(gs) => gs.iter().for_each(|g| g.for_each_term(t, v)),
            Formula::Imp(a, b) => {
                a.for_each_term(t, v);
                b.for_each_term(t, v);
            }
            Formula::Forall(_, g) | Formula::Exists(_, g) => g.for_each_term(t, v),
        }
    }

    /// Variables occurring free.
    pub fn free_vars(&self) -> BTreeSet<String> {
        match self {
            Formula::Not(g) => g.free_vars(),
            Formula::And(gs) | Formula::Or(gs) => gs.iter().flat_map(|g| g.free_vars()).collect(),
            Formula::Imp(a, b) => {
                let mut out = a.free_vars();
                out.extend(b.free_vars());
                out
            }
            Formula::Forall(b, g) | Formula::Exists(b, g) => {
                let mut out = g.free_vars();
                out.remove(&b.name);
                out
            }
            atom => {
                let (mut out, mut vout) = (BTreeSet::new(), BTreeSet::new());
                atom.for_each_term(&mut |t| t.vars(&mut out), &mut |v| v.vars(&mut vout));
                out.extend(vout);
                out
            }
        }
    }

    pub fn is_sentence(&self) -> bool {
        self.free_vars().is_empty()
    }

    /// Number of nodes, counting atoms, connectives and quantifiers.
    pub fn size(&self) -> usize {
        match self {
            Formula::Not(g) | Formula::Forall(_, g) | Formula::Exists(_, g) => 1 + g.size(),
            Formula::And(gs) | Formula::Or(gs) => 1 + gs.iter().map(Formula::size).sum::<usize>(),
            Formula::Imp(a, b) => 1 + a.size() + b.size(),
            _ => 1,
        }
    }
}

impl fmt::Display for Sort {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sort::K => "K",
            Sort::V => "V",
        })
    }
}

impl fmt::Display for Binder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.sort {
            None => f.write_str(&self.name),
            Some(s) => write!(f, "({} {s})", self.name),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Zero => f.write_str("0"),
            Term::One => f.write_str("1"),
            Term::Var(x) => f.write_str(x),
            Term::Succ(t) => write!(f, "(S {t})"),
            Term::Plus(a, b) => write!(f, "(plus {a} {b})"),
            Term::Times(a, b) => write!(f, "(times {a} {b})"),
            Term::Minus(a, b) => write!(f, "(minus {a} {b})"),
            Term::Norm(v) => write!(f, "(norm {v})"),
        }
    }
}

impl fmt::Display for VTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VTerm::Var(x) => f.write_str(x),
            VTerm::Plus(a, b) => write!(f, "(vplus {a} {b})"),
            VTerm::Minus(a, b) => write!(f, "(vminus {a} {b})"),
            VTerm::Scale(c, v) => write!(f, "(scale {c} {v})"),
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Eq(a, b) => write!(f, "(= {a} {b})"),
            Formula::Lt(a, b) => write!(f, "(< {a} {b})"),
            Formula::VEq(a, b) => write!(f, "(= {a} {b})"),
            Formula::Mu(a, b, c) => write!(f, "(mu {a} {b} {c})"),
            Formula::Nu(a) => write!(f, "(nu {a})"),
            Formula::Not(g) => write!(f, "(not {g})"),
            Formula::And(gs) | Formula::Or(gs) => {
                f.write_str(if matches!(self, Formula::And(_)) { "(and" } else { "(or" })?;
                for g in gs {
                    write!(f, " {g}")?;
                }
                f.write_str(")")
            }
            Formula::Imp(a, b) => write!(f, "(imp {a} {b})"),
            Formula::Forall(b, g) => write!(f, "(forall {b} {g})"),
            Formula::Exists(b, g) => write!(f, "(exists {b} {g})"),
        }
    }
}

/// Equality up to renaming of bound variables.
pub fn alpha_eq(f: &Formula, g: &Formula) -> bool {
    AlphaEnv::default().formula(f, g)
}

#[derive(Default, Clone)]
struct AlphaEnv {
    // bound names, innermost last, paired across the two formulas
    left: Vec<String>,
    right: Vec<String>,
}

impl AlphaEnv {
    fn same_var(&self, a: &str, b: &str) -> bool {
        let i = self.left.iter().rposition(|x| x == a);
        let j = self.right.iter().rposition(|x| x == b);
        match (i, j) {
            (Some(i), Some(j)) => i == j,
            (None, None) => a == b,
            _ => false,
        }
    }

    fn term(&self, a: &Term, b: &Term) -> bool {
        match (a, b) {
            (Term::Zero, Term::Zero) | (Term::One, Term::One) => true,
            (Term::Var(x), Term::Var(y)) => self.same_var(x, y),
            (Term::Succ(x), Term::Succ(y)) => self.term(x, y),
            (Term::Plus(a1, a2), Term::Plus(b1, b2))
            | (Term::Times(a1, a2), Term::Times(b1, b2))
            | (Term::Minus(a1, a2), Term::Minus(b1, b2)) => self.term(a1, b1) && self.term(a2, b2),
            (Term::Norm(x), Term::Norm(y)) => self.vterm(x, y),
            _ => false,
        }
    }

    fn vterm(&self, a: &VTerm, b: &VTerm) -> bool {
        match (a, b) {
            (VTerm::Var(x), VTerm::Var(y)) => self.same_var(x, y),
            (VTerm::Plus(a1, a2), VTerm::Plus(b1, b2)) | (VTerm::Minus(a1, a2), VTerm::Minus(b1, b2)) => {
                self.vterm(a1, b1) && self.vterm(a2, b2)
            }
            (VTerm::Scale(c, x), VTerm::Scale(d, y)) => c == d && self.vterm(x, y),
            _ => false,
        }
    }

    fn formula(&mut self, f: &Formula, g: &Formula) -> bool {
        match (f, g) {
            (Formula::Eq(a1, a2), Formula::Eq(b1, b2)) | (Formula::Lt(a1, a2), Formula::Lt(b1, b2)) => {
                self.term(a1, b1) && self.term(a2, b2)
            }
            (Formula::VEq(a1, a2), Formula::VEq(b1, b2)) => self.vterm(a1, b1) && self.vterm(a2, b2),
            (Formula::Mu(a1, a2, a3), Formula::Mu(b1, b2, b3)) => {
                self.term(a1, b1) && self.term(a2, b2) && self.term(a3, b3)
            }
            (Formula::Nu(a), Formula::Nu(b)) => self.term(a, b),
            (Formula::Not(a), Formula::Not(b)) => self.formula(a, b),
            (Formula::And(xs), Formula::And(ys)) | (Formula::Or(xs), Formula::Or(ys)) => {
                xs.len() == ys.len() && xs.iter().zip(ys).all(|(x, y)| self.formula(x, y))
            }
            (Formula::Imp(a1, a2), Formula::Imp(b1, b2)) => self.formula(a1, b1) && self.formula(a2, b2),
            (Formula::Forall(x, a), Formula::Forall(y, b)) | (Formula::Exists(x, a), Formula::Exists(y, b)) => {
                if x.sort != y.sort {
                    return false;
                }
                self.left.push(x.name.clone());
                self.right.push(y.name.clone());
                let ok = self.formula(a, b);
                self.left.pop();
                self.right.pop();
                ok
            }
            _ => false,
        }
    }
}
