//! Macro expansion of `mu` and `nu` into the purely additive language of
//! normed spaces.
//!
//! ```text
//! nu(x)          := mu(x, 0, 0)
//! mu(x, y, z)    := MGI(x + 2, y + 2, 4 + 2x + 2y + z)
//! MGI(x, y, z)   := exists u. HPL(1, x, z, y, u) and 1 < x < z > y > u < 1
//! HPL(x1..xn)    := exists p1..p(n+1). HPV(p1..p(n+1)) and x_i = |p(i+1) - p_i|
//! HPV(p1..pn)    := ADS(p_i, p(i+1)) for all i, and p_i != p_j for i < j
//! ADS(p, q)      := SEP(p) and SEP(q) and p != q and |p| = |q| = |(p + q)/2|
//! SEP(p)         := EP(p) and exists u w. EP(u) and EP(w) and |u| = |w| = |p|
//!                   and 0 != |p - u| != |p - w| != 0
//! EP(p)          := forall u w. |u| = |p| = |w| and p = (u + w)/2 => u = p = w
//! ```
//!
//! Integer constants become sums of `1`, `2x` becomes `x + x`, and zero
//! summands are dropped. Every quantifier introduced gets a fresh name
//! (`_s0, _s1, ...` for scalars, `_v0, _v1, ...` for vectors) not used
//! anywhere in the input, so no variable of the input is captured.

use alloc::boxed::Box;
use alloc::vec::Vec;

use super::ast::{Binder, Formula, Term, VTerm};
use super::translate::Fresh;
use crate::field::{BigInt, Rational};

pub fn expand_mu(f: &Formula) -> Formula {
    let names = f.all_names();
    let mut ex = Expander {
        scalars: Fresh::new("_s", names.clone()),
        vectors: Fresh::new("_v", names),
    };
    ex.formula(f)
}

/// `n` as `1 + 1 + ... + 1`.
pub fn numeral(n: u32) -> Term {
    match n {
        0 => Term::Zero,
        _ => (1..n).fold(Term::One, |t, _| t.plus(Term::One)),
    }
}

fn sum(terms: impl IntoIterator<Item = Term>) -> Term {
    terms
        .into_iter()
        .filter(|t| *t != Term::Zero)
        .reduce(|a, b| a.plus(b))
        .unwrap_or(Term::Zero)
}

fn twice(t: &Term) -> Term {
    match t {
        Term::Zero => Term::Zero,
        t => t.clone().plus(t.clone()),
    }
}

fn half() -> Rational {
    Rational::new(BigInt::from(1), BigInt::from(2))
}

fn neq(a: Term, b: Term) -> Formula {
    Formula::Eq(a, b).not()
}

/// Equalities between consecutive terms.
fn chain_eq(terms: &[Term]) -> Formula {
    Formula::and(terms.windows(2).map(|w| Formula::Eq(w[0].clone(), w[1].clone())))
}

struct Expander {
    scalars: Fresh,
    vectors: Fresh,
}

impl Expander {
    fn formula(&mut self, f: &Formula) -> Formula {
        match f {
            Formula::Nu(x) => self.mu(x, &Term::Zero, &Term::Zero),
            Formula::Mu(x, y, z) => self.mu(x, y, z),
            Formula::Not(g) => self.formula(g).not(),
            Formula::And(gs) => Formula::And(gs.iter().map(|g| self.formula(g)).collect()),
            Formula::Or(gs) => Formula::Or(gs.iter().map(|g| self.formula(g)).collect()),
            Formula::Imp(a, b) => self.formula(a).imp(self.formula(b)),
            Formula::Forall(b, g) => Formula::Forall(b.clone(), Box::new(self.formula(g))),
            Formula::Exists(b, g) => Formula::Exists(b.clone(), Box::new(self.formula(g))),
            atom => atom.clone(),
        }
    }

    fn mu(&mut self, x: &Term, y: &Term, z: &Term) -> Formula {
        let two = || numeral(2);
        let x2 = sum([x.clone(), two()]);
        let y2 = sum([y.clone(), two()]);
        let z2 = sum([numeral(4), twice(x), twice(y), z.clone()]);
        self.mgi(&x2, &y2, &z2)
    }

    fn mgi(&mut self, x: &Term, y: &Term, z: &Term) -> Formula {
        let u = self.scalars.name();
        let ut = Term::Var(u.clone());
        let hpl = self.hpl(&[Term::One, x.clone(), z.clone(), y.clone(), ut.clone()]);
        let order = [
            Formula::Lt(Term::One, x.clone()),
            Formula::Lt(x.clone(), z.clone()),
            Formula::Lt(y.clone(), z.clone()),
            Formula::Lt(ut.clone(), y.clone()),
            Formula::Lt(ut, Term::One),
        ];
        Formula::exists(Binder::scalar(u), Formula::and(core::iter::once(hpl).chain(order)))
    }

    fn hpl(&mut self, lengths: &[Term]) -> Formula {
        let names: Vec<_> = (0..=lengths.len()).map(|_| self.vectors.name()).collect();
        let points: Vec<VTerm> = names.iter().map(|n| VTerm::Var(n.clone())).collect();
        let mut body = Formula::and(core::iter::once(self.hpv(&points)).chain(lengths.iter().enumerate().map(
            |(i, x)| Formula::Eq(x.clone(), points[i + 1].clone().minus(points[i].clone()).norm()),
        )));
        for n in names.into_iter().rev() {
            body = Formula::exists(Binder::vector(n), body);
        }
        body
    }

    fn hpv(&mut self, points: &[VTerm]) -> Formula {
        let mut parts: Vec<Formula> = points.windows(2).map(|w| self.ads(&w[0], &w[1])).collect();
        for i in 0..points.len() {
            for j in i + 1..points.len() {
                parts.push(Formula::VEq(points[i].clone(), points[j].clone()).not());
            }
        }
        Formula::and(parts)
    }

    fn ads(&mut self, p: &VTerm, q: &VTerm) -> Formula {
        let mid = p.clone().plus(q.clone()).scale(half());
        Formula::and([
            self.sep(p),
            self.sep(q),
            Formula::VEq(p.clone(), q.clone()).not(),
            chain_eq(&[p.clone().norm(), q.clone().norm(), mid.norm()]),
        ])
    }

    fn sep(&mut self, p: &VTerm) -> Formula {
        let ep = self.ep(p);
        let (u, w) = (self.vectors.name(), self.vectors.name());
        let (ut, wt) = (VTerm::Var(u.clone()), VTerm::Var(w.clone()));
        let pu = p.clone().minus(ut.clone()).norm();
        let pw = p.clone().minus(wt.clone()).norm();
        let body = Formula::and([
            self.ep(&ut),
            self.ep(&wt),
            chain_eq(&[ut.clone().norm(), wt.clone().norm(), p.clone().norm()]),
            neq(Term::Zero, pu.clone()),
            neq(pu, pw.clone()),
            neq(pw, Term::Zero),
        ]);
        let exists = Formula::exists(Binder::vector(u), Formula::exists(Binder::vector(w), body));
        Formula::and([ep, exists])
    }

    fn ep(&mut self, p: &VTerm) -> Formula {
        let (u, w) = (self.vectors.name(), self.vectors.name());
        let (ut, wt) = (VTerm::Var(u.clone()), VTerm::Var(w.clone()));
        let premise = Formula::and([
            chain_eq(&[ut.clone().norm(), p.clone().norm(), wt.clone().norm()]),
            Formula::VEq(p.clone(), ut.clone().plus(wt.clone()).scale(half())),
        ]);
        let conclusion = Formula::and([Formula::VEq(ut, p.clone()), Formula::VEq(p.clone(), wt)]);
        Formula::forall(Binder::vector(u), Formula::forall(Binder::vector(w), premise.imp(conclusion)))
    }
}
