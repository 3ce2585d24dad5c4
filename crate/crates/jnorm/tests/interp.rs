use std::collections::BTreeSet;
use std::fs;
use std::path::PathBuf;

use jnorm::field::RatFunc;
use jnorm::interp::{
    alpha_eq, builtin, check_language, counterexample, default_extras, eval_bounded, eval_default, expand_mu,
    is_relativized, parse, parse_with, translate, Binder, Formula, InterpError, Language, Sort, Term,
};
use proptest::prelude::*;

fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

// JNORM_BLESS=1 rewrites the files from the current output
fn golden(name: &str, actual: &str) {
    let path = golden_path(name);
    if std::env::var_os("JNORM_BLESS").is_some() {
        fs::write(&path, format!("{actual}\n")).unwrap();
        return;
    }
    let expected = fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert_eq!(expected.trim_end(), actual, "golden file {name}");
}

#[test]
fn translated_axioms_match_golden_files() {
    for i in 1..=7 {
        let t = translate(&builtin::q(i)).unwrap();
        let text = t.to_string();
        golden(&format!("q{i}.k"), &text);
        assert_eq!(parse(&text, Language::K).unwrap(), t);
    }
}

#[test]
fn ok_conjuncts_match_golden_files() {
    for i in 1..=6 {
        let f = builtin::ok_conjunct(i);
        let text = f.to_string();
        golden(&format!("ok{i}.k"), &text);
        assert_eq!(parse(&text, Language::K).unwrap(), f);
    }
    assert_eq!(builtin::ok_conjunct(1).to_string(), "(nu 0)");
}

#[test]
fn nu_expansion_matches_golden_file() {
    let f = parse_with("(nu x)", Language::K, &[("x", Sort::K)]).unwrap();
    let e = expand_mu(&f);
    let text = e.to_string();
    golden("nu_x.ns", &text);
    assert_eq!(parse_with(&text, Language::Ns, &[("x", Sort::K)]).unwrap(), e);
}

#[test]
fn raw_axioms_print_canonically() {
    assert_eq!(builtin::q(4).to_string(), "(forall x (= (plus x 0) x))");
    assert_eq!(builtin::q(3).to_string(), "(forall x (imp (not (= x 0)) (exists y (= x (S y)))))");
    assert!(parse("(= 0 (S 0))", Language::Pa).unwrap().is_sentence());
}

#[test]
fn parse_errors() {
    assert!(matches!(parse("(forall x (= x))", Language::Pa), Err(InterpError::Syntax { .. })));
    assert!(matches!(parse("(forall x (= x y))", Language::Pa), Err(InterpError::Unbound { .. })));
    assert!(matches!(parse("(nu 0)", Language::Pa), Err(InterpError::Language { .. })));
    assert!(matches!(parse("(forall (v V) (= v v))", Language::K), Err(InterpError::Language { .. })));
    assert!(matches!(parse("(= 0 0", Language::Pa), Err(InterpError::Syntax { .. })));
}

#[test]
fn sorts_are_printed() {
    let f = parse("(forall (x K) (forall (v V) (= (norm v) x)))", Language::Ns).unwrap();
    assert_eq!(f.to_string(), "(forall (x K) (forall (v V) (= (norm v) x)))");
}

#[test]
fn translations_hold_and_mutations_fail() {
    for i in 1..=7 {
        let t = translate(&builtin::q(i)).unwrap();
        assert_eq!(eval_default(&t, 12), Ok(true), "Q{i}");
    }
    for (name, f) in builtin::mutated() {
        let t = translate(&f).unwrap();
        assert_eq!(eval_default(&t, 12), Ok(false), "mutated {name}");
        assert!(counterexample(&t, 12, &default_extras::<jnorm::field::Rational>()).unwrap().is_some());
    }
}

#[test]
fn ok_holds_over_both_fields() {
    assert_eq!(eval_default(&builtin::ok(), 8), Ok(true));
    let e = RatFunc::epsilon();
    let mut extras = default_extras::<RatFunc>();
    extras.push(e.clone());
    extras.push(RatFunc::from(jnorm::field::rat(2)) + e);
    assert_eq!(eval_bounded(&builtin::ok(), 6, &extras), Ok(true));
}

#[test]
fn bounded_counterexample() {
    let f = parse("(forall (x K) (imp (nu x) (mu x 1 0)))", Language::K).unwrap();
    assert_eq!(eval_default(&f, 25), Ok(false));
    let cx = counterexample(&f, 25, &default_extras::<jnorm::field::Rational>()).unwrap().unwrap();
    assert_eq!(cx, [("x".to_string(), jnorm::field::rat(1))]);
}

#[test]
fn vector_sentences_are_refused() {
    let f = parse("(exists (v V) (= (norm v) 1))", Language::Ns).unwrap();
    assert!(matches!(eval_default(&f, 3), Err(InterpError::Unsupported(_))));
}

const NAMES: [&str; 6] = ["x", "y", "z", "_t0", "_s0", "_v1"];

fn term(depth: u32) -> BoxedStrategy<Term> {
    let leaf = prop_oneof![Just(Term::Zero), (0..NAMES.len()).prop_map(|i| Term::Var(NAMES[i].into()))];
    if depth == 0 {
        return leaf.boxed();
    }
    prop_oneof![
        2 => leaf,
        1 => term(depth - 1).prop_map(Term::succ),
        1 => (term(depth - 1), term(depth - 1)).prop_map(|(a, b)| a.plus(b)),
        1 => (term(depth - 1), term(depth - 1)).prop_map(|(a, b)| a.times(b)),
    ]
    .boxed()
}

fn pa_body(depth: u32) -> BoxedStrategy<Formula> {
    let atom = (term(2), term(2)).prop_map(|(a, b)| Formula::Eq(a, b));
    if depth == 0 {
        return atom.boxed();
    }
    let sub = || pa_body(depth - 1);
    prop_oneof![
        2 => atom,
        1 => sub().prop_map(Formula::not),
        1 => (sub(), sub()).prop_map(|(a, b)| Formula::And(vec![a, b])),
        1 => (sub(), sub()).prop_map(|(a, b)| Formula::Or(vec![a, b])),
        1 => (sub(), sub()).prop_map(|(a, b)| a.imp(b)),
        1 => (0..NAMES.len(), sub()).prop_map(|(i, f)| Formula::exists(Binder::untyped(NAMES[i]), f)),
        1 => (0..NAMES.len(), sub()).prop_map(|(i, f)| Formula::forall(Binder::untyped(NAMES[i]), f)),
    ]
    .boxed()
}

fn close(f: Formula) -> Formula {
    f.free_vars().into_iter().fold(f, |g, x| Formula::forall(Binder::untyped(x), g))
}

fn pa_sentence() -> impl Strategy<Value = Formula> {
    pa_body(3).prop_map(close)
}

// renames every bound variable to a fresh name from `pool`
fn rename(f: &Formula, pool: &mut impl Iterator<Item = String>, env: &mut Vec<(String, String)>) -> Formula {
    fn t(t: &Term, env: &[(String, String)]) -> Term {
        match t {
            Term::Var(x) => Term::Var(env.iter().rev().find(|(a, _)| a == x).map_or(x.clone(), |(_, b)| b.clone())),
            Term::Succ(a) => t_(a, env).succ(),
            Term::Plus(a, b) => t_(a, env).plus(t_(b, env)),
            Term::Times(a, b) => t_(a, env).times(t_(b, env)),
            Term::Minus(a, b) => t_(a, env).minus(t_(b, env)),
            other => other.clone(),
        }
    }
    fn t_(a: &Term, env: &[(String, String)]) -> Term {
        t(a, env)
    }
    match f {
        Formula::Eq(a, b) => Formula::Eq(t(a, env), t(b, env)),
        Formula::Not(g) => rename(g, pool, env).not(),
        Formula::And(gs) => Formula::And(gs.iter().map(|g| rename(g, pool, env)).collect()),
        Formula::Or(gs) => Formula::Or(gs.iter().map(|g| rename(g, pool, env)).collect()),
        Formula::Imp(a, b) => rename(a, pool, env).imp(rename(b, pool, env)),
        Formula::Forall(b, g) | Formula::Exists(b, g) => {
            let name = pool.next().unwrap();
            env.push((b.name.clone(), name.clone()));
            let body = rename(g, pool, env);
            env.pop();
            let nb = Binder { name, sort: b.sort };
            if matches!(f, Formula::Forall(..)) {
                Formula::forall(nb, body)
            } else {
                Formula::exists(nb, body)
            }
        }
        other => other.clone(),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn print_parse_round_trip(f in pa_sentence()) {
        let text = f.to_string();
        prop_assert_eq!(parse(&text, Language::Pa).unwrap(), f.clone());
        let t = translate(&f).unwrap();
        prop_assert_eq!(parse(&t.to_string(), Language::K).unwrap(), t);
    }

    #[test]
    fn translation_is_relativized(f in pa_sentence()) {
        let t = translate(&f).unwrap();
        prop_assert!(t.is_sentence());
        prop_assert!(is_relativized(&t), "{}", t);
        prop_assert_eq!(check_language(&t, Language::K), Ok(()));
        let text = t.to_string();
        prop_assert!(!text.contains("times") && !text.contains("(S "));
    }

    #[test]
    fn translation_commutes_with_renaming(f in pa_sentence(), salt in 0usize..3) {
        // the pool reuses the reserved prefixes to provoke capture
        let prefixes = ["_t", "_s", "w"];
        let mut pool = (0..).map(move |i| format!("{}{}", prefixes[(i + salt) % 3], i));
        let g = rename(&f, &mut pool, &mut Vec::new());
        prop_assert!(alpha_eq(&f, &g));
        prop_assert!(alpha_eq(&translate(&f).unwrap(), &translate(&g).unwrap()));
    }

    #[test]
    fn expansion_never_captures(f in pa_sentence(), free in proptest::sample::subsequence(vec!["_s0", "_v0", "_v3", "x"], 0..4)) {
        let t = translate(&f).unwrap();
        // a free scalar sharing the expander's reserved names
        let extra: Formula = free.iter().fold(t, |g, name| {
            Formula::And(vec![g, Formula::Nu(Term::Var(name.to_string()))])
        });
        let e = expand_mu(&extra);
        let want: BTreeSet<String> = free.iter().map(|s| s.to_string()).collect();
        prop_assert_eq!(e.free_vars(), want);
        prop_assert_eq!(check_language(&e, Language::Ns), Ok(()));
        let text = e.to_string();
        prop_assert!(!text.contains("(mu ") && !text.contains("(nu "));
    }
}
