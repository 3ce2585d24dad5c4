//! Translation of arithmetic sentences into the language with `mu` and
//! `nu`, in five passes:
//!
//! 1. every binder gets sort `K`;
//! 2. products are unnested so that `times` only occurs in atoms
//!    `z = x * y` with `x`, `y`, `z` product-free;
//! 3. quantifiers are relativized to `nu`;
//! 4. `S(t)` becomes `t + 1`;
//! 5. `z = x * y` becomes `mu(x, y, z)`.
//!
//! Unnesting names the products of an atom `_t0`, `_t1`, ... in
//! left-to-right post-order, skipping names already used in the sentence,
//! and wraps the atom as `exists _t0 exists _t1 ... (_t0 = a0 * b0 and ...
//! and atom')`, innermost around the atom.

use alloc::boxed::Box;
use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::ast::{Binder, Formula, Sort, Term};
use super::InterpError;

/// Fresh names with a fixed prefix, avoiding a set of taken names.
#[derive(Debug, Clone)]
pub struct Fresh {
    prefix: &'static str,
    next: usize,
    taken: BTreeSet<String>,
}

impl Fresh {
    pub fn new(prefix: &'static str, taken: BTreeSet<String>) -> Fresh {
        Fresh { prefix, next: 0, taken }
    }

    pub fn name(&mut self) -> String {
        loop {
            let name = format!("{}{}", self.prefix, self.next);
            self.next += 1;
            if self.taken.insert(name.clone()) {
                return name;
            }
        }
    }
}

/// Runs all five passes.
pub fn translate(f: &Formula) -> Result<Formula, InterpError> {
    if let Some(name) = f.free_vars().into_iter().next() {
        return Err(InterpError::Open(name));
    }
    let f = label_sorts(f);
    let f = unnest(&f);
    let f = relativize(&f);
    let f = eliminate_succ(&f);
    Ok(introduce_mu(&f))
}

fn map_formula(f: &Formula, atom: &mut impl FnMut(&Formula) -> Formula, binder: &mut impl FnMut(&Binder) -> Binder) -> Formula {
    match f {
        Formula::Not(g) => map_formula(g, atom, binder).not(),
        Formula::And(gs) => Formula::And(gs.iter().map(|g| map_formula(g, atom, binder)).collect()),
        Formula::Or(gs) => Formula::Or(gs.iter().map(|g| map_formula(g, atom, binder)).collect()),
        Formula::Imp(a, b) => map_formula(a, atom, binder).imp(map_formula(b, atom, binder)),
        Formula::Forall(b, g) => Formula::Forall(binder(b), Box::new(map_formula(g, atom, binder))),
        Formula::Exists(b, g) => Formula::Exists(binder(b), Box::new(map_formula(g, atom, binder))),
        a => atom(a),
    }
}

/// Pass (i).
pub fn label_sorts(f: &Formula) -> Formula {
    map_formula(f, &mut Formula::clone, &mut |b| Binder {
        name: b.name.clone(),
        sort: Some(b.sort.unwrap_or(Sort::K)),
    })
}

fn is_flat_product(t: &Term) -> bool {
    matches!(t, Term::Times(a, b) if !a.has_times() && !b.has_times())
}

/// Pass (ii).
pub fn unnest(f: &Formula) -> Formula {
    let mut fresh = Fresh::new("_t", f.all_names());
    map_formula(f, &mut |a| unnest_atom(a, &mut fresh), &mut Binder::clone)
}

fn unnest_atom(atom: &Formula, fresh: &mut Fresh) -> Formula {
    let Formula::Eq(lhs, rhs) = atom else {
        return atom.clone();
    };
    let already_flat = (is_flat_product(rhs) && !lhs.has_times()) || (is_flat_product(lhs) && !rhs.has_times());
    if !(lhs.has_times() || rhs.has_times()) || already_flat {
        return atom.clone();
    }
    let mut defs = Vec::new();
    let lhs = name_products(lhs, fresh, &mut defs);
    let rhs = name_products(rhs, fresh, &mut defs);
    let mut body = Formula::and(
        defs.iter()
            .map(|(name, product)| Formula::Eq(Term::Var(name.clone()), product.clone()))
            .chain([Formula::Eq(lhs, rhs)]),
    );
    for (name, _) in defs.iter().rev() {
        body = Formula::exists(Binder::scalar(name.clone()), body);
    }
    body
}

// replaces every product by a fresh variable, children first
fn name_products(t: &Term, fresh: &mut Fresh, defs: &mut Vec<(String, Term)>) -> Term {
    match t {
        Term::Times(a, b) => {
            let a = name_products(a, fresh, defs);
            let b = name_products(b, fresh, defs);
            let name = fresh.name();
            defs.push((name.clone(), a.times(b)));
            Term::Var(name)
        }
        Term::Succ(a) => name_products(a, fresh, defs).succ(),
        Term::Plus(a, b) => name_products(a, fresh, defs).plus(name_products(b, fresh, defs)),
        Term::Minus(a, b) => name_products(a, fresh, defs).minus(name_products(b, fresh, defs)),
        other => other.clone(),
    }
}

/// Pass (iii).
pub fn relativize(f: &Formula) -> Formula {
    match f {
        Formula::Not(g) => relativize(g).not(),
        Formula::And(gs) => Formula::And(gs.iter().map(relativize).collect()),
        Formula::Or(gs) => Formula::Or(gs.iter().map(relativize).collect()),
        Formula::Imp(a, b) => relativize(a).imp(relativize(b)),
        Formula::Forall(b, g) => Formula::forall(b.clone(), guard(b).imp(relativize(g))),
        Formula::Exists(b, g) => Formula::exists(b.clone(), Formula::And(alloc::vec![guard(b), relativize(g)])),
        atom => atom.clone(),
    }
}

fn guard(b: &Binder) -> Formula {
    Formula::Nu(Term::Var(b.name.clone()))
}

fn map_terms(f: &Formula, t: &impl Fn(&Term) -> Term) -> Formula {
    map_formula(
        f,
        &mut |a| match a {
            Formula::Eq(x, y) => Formula::Eq(t(x), t(y)),
            Formula::Lt(x, y) => Formula::Lt(t(x), t(y)),
            Formula::Mu(x, y, z) => Formula::Mu(t(x), t(y), t(z)),
            Formula::Nu(x) => Formula::Nu(t(x)),
            other => other.clone(),
        },
        &mut Binder::clone,
    )
}

/// Pass (iv).
pub fn eliminate_succ(f: &Formula) -> Formula {
    fn term(t: &Term) -> Term {
        match t {
            Term::Succ(a) => term(a).plus(Term::One),
            Term::Plus(a, b) => term(a).plus(term(b)),
            Term::Times(a, b) => term(a).times(term(b)),
            Term::Minus(a, b) => term(a).minus(term(b)),
            other => other.clone(),
        }
    }
    map_terms(f, &term)
}

/// Pass (v).
pub fn introduce_mu(f: &Formula) -> Formula {
    map_formula(
        f,
        &mut |a| match a {
            Formula::Eq(z, Term::Times(x, y)) | Formula::Eq(Term::Times(x, y), z) => {
                Formula::Mu((**x).clone(), (**y).clone(), z.clone())
            }
            other => other.clone(),
        },
        &mut Binder::clone,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use crate::interp::{builtin, parse, Language};

    fn tr(text: &str) -> String {
        translate(&parse(text, Language::Pa).unwrap()).unwrap().to_string()
    }

    #[test]
    fn q6_is_the_guarded_tautology() {
        assert_eq!(tr("(forall x (= (times x 0) 0))"), "(forall (x K) (imp (nu x) (mu x 0 0)))");
    }

    #[test]
    fn q2_has_no_products() {
        assert_eq!(
            translate(&builtin::q(2)).unwrap().to_string(),
            "(forall (x K) (imp (nu x) (not (= 0 (plus x 1)))))"
        );
    }

    #[test]
    fn q7_unnests_both_products() {
        assert_eq!(
            translate(&builtin::q(7)).unwrap().to_string(),
            "(forall (x K) (imp (nu x) (forall (y K) (imp (nu y) \
             (exists (_t0 K) (and (nu _t0) (exists (_t1 K) (and (nu _t1) \
             (and (mu x (plus y 1) _t0) (mu x y _t1) (= _t0 (plus _t1 x)))))))))))"
        );
    }

    #[test]
    fn products_nested_inside_products() {
        let s = tr("(forall a (= (times (times a a) a) a))");
        assert_eq!(
            s,
            "(forall (a K) (imp (nu a) (exists (_t0 K) (and (nu _t0) (exists (_t1 K) (and (nu _t1) \
             (and (mu a a _t0) (mu _t0 a _t1) (= _t1 a))))))))"
        );
    }

    #[test]
    fn fresh_names_avoid_existing_ones() {
        let s = tr("(forall _t0 (= (plus (times _t0 _t0) 0) 0))");
        assert!(s.contains("(exists (_t1 K)"), "{s}");
    }

    #[test]
    fn open_formulas_are_rejected() {
        let open = Formula::Eq(Term::Var("x".into()), Term::Zero);
        assert_eq!(translate(&open), Err(InterpError::Open("x".into())));
    }
}
