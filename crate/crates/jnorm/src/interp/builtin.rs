//! The axioms of Robinson arithmetic and the sentence `OK` guaranteeing
//! that `mu` behaves like multiplication on the naturals picked out by `nu`.

use alloc::vec::Vec;

use super::ast::Formula;
use super::{parse, Language};

const Q: [&str; 7] = [
    "(forall x (forall y (imp (= (S x) (S y)) (= x y))))",
    "(forall x (not (= 0 (S x))))",
    "(forall x (imp (not (= x 0)) (exists y (= x (S y)))))",
    "(forall x (= (plus x 0) x))",
    "(forall x (forall y (= (plus x (S y)) (S (plus x y)))))",
    "(forall x (= (times x 0) 0))",
    "(forall x (forall y (= (times x (S y)) (plus (times x y) x))))",
];

// x >= 0 is written (not (< x 0)); exists-unique z is written out
const OK: [&str; 6] = [
    "(nu 0)",
    "(forall (x K) (imp (nu x) (and (not (< x 0)) (nu (plus x 1)))))",
    "(forall (x K) (imp (and (nu x) (< 0 x)) (nu (minus x 1))))",
    "(forall (x K) (forall (y K) (imp (and (nu x) (nu y)) \
     (exists (z K) (and (mu x y z) (forall (u K) (imp (mu x y u) (= u z))))))))",
    "(forall (x K) (forall (y K) (forall (z K) (imp (mu x y z) (and (nu x) (nu y) (nu z))))))",
    "(forall (x K) (forall (y K) (forall (w K) (forall (z K) \
     (imp (and (mu x (plus y 1) w) (mu x y z)) (= w (plus z x)))))))",
];

/// Deliberately wrong variants of Q4, Q5, Q6 and Q7.
const MUTATED: [(&str, &str); 4] = [
    ("Q4", "(forall x (= (plus x 0) (S x)))"),
    ("Q5", "(forall x (forall y (= (plus x (S y)) (plus x y))))"),
    ("Q6", "(forall x (= (times x 0) x))"),
    ("Q7", "(forall x (forall y (= (times x (S y)) (plus (times x y) y))))"),
];

fn pa(text: &str) -> Formula {
    parse(text, Language::Pa).expect("built-in sentence parses")
}

fn k(text: &str) -> Formula {
    parse(text, Language::K).expect("built-in sentence parses")
}

/// Axiom `Qi`, `1 <= i <= 7`.
pub fn q(i: usize) -> Formula {
    pa(Q[i - 1])
}

pub fn q_all() -> Vec<Formula> {
    (1..=7).map(q).collect()
}

/// Conjunct `OK_i`, `1 <= i <= 6`.
pub fn ok_conjunct(i: usize) -> Formula {
    k(OK[i - 1])
}

pub fn ok() -> Formula {
    Formula::And((1..=6).map(ok_conjunct).collect())
}

/// `nu(x) := mu(x, 0, 0)`, as a formula in the free variable `x`.
pub fn nu_def() -> Formula {
    super::parse_with("(mu x 0 0)", Language::K, &[("x", super::Sort::K)]).expect("built-in formula parses")
}

/// The corrupted axioms with the name of the axiom each one corrupts.
pub fn mutated() -> Vec<(&'static str, Formula)> {
    MUTATED.iter().map(|(name, text)| (*name, pa(text))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn canonical_text() {
        assert_eq!(ok_conjunct(1).to_string(), "(nu 0)");
        assert_eq!(q(3).to_string(), Q[2]);
        assert_eq!(nu_def().to_string(), "(mu x 0 0)");
        assert!(ok().is_sentence());
        for f in q_all() {
            assert!(f.is_sentence());
        }
        assert_eq!(mutated().len(), 4);
    }
}
