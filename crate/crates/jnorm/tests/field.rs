use jnorm::field::{parse_scalar, ratio, FieldDesc, FieldElem, OrderedField, RatFunc, Rational};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-200i64..=200, 1i64..=60).prop_map(|(n, d)| ratio(n, d))
}

// (c0 + c1 e + c2 e^2) / (d0 + d1 e) with d0 != 0
fn ratfunc() -> impl Strategy<Value = RatFunc> {
    (rational(), rational(), rational(), rational().prop_filter("d0", |d| *d != ratio(0, 1)), rational()).prop_map(
        |(c0, c1, c2, d0, d1)| {
            let e = RatFunc::epsilon();
            let r = |x: &Rational| RatFunc::from_rational(x);
            let num = r(&c0) + r(&c1) * e.clone() + r(&c2) * e.clone() * e.clone();
            num / (r(&d0) + r(&d1) * e)
        },
    )
}

fn axioms<F: OrderedField>(a: F, b: F, c: F) {
    assert_eq!((a.clone() + b.clone()) + c.clone(), a.clone() + (b.clone() + c.clone()));
    assert_eq!((a.clone() * b.clone()) * c.clone(), a.clone() * (b.clone() * c.clone()));
    assert_eq!(a.clone() * (b.clone() + c.clone()), a.clone() * b.clone() + a.clone() * c.clone());
    assert_eq!(a.clone() + b.clone(), b.clone() + a.clone());
    if a < b {
        assert!(a.clone() + c.clone() < b.clone() + c.clone());
        if c.is_positive() {
            assert!(a.clone() * c.clone() < b.clone() * c.clone());
        }
    }
    if !a.is_zero() {
        assert_eq!(a.clone() * (F::one() / a.clone()), F::one());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn rational_field_axioms(a in rational(), b in rational(), c in rational()) {
        axioms(a, b, c);
    }

    #[test]
    fn ratfunc_field_axioms(a in ratfunc(), b in ratfunc(), c in ratfunc()) {
        axioms(a, b, c);
    }
}

proptest! {
    #[test]
    fn epsilon_powers_are_infinitesimal(q in rational().prop_filter("positive", |q| q.is_positive()), n in 1u32..6) {
        let en = RatFunc::epsilon().pow(n);
        prop_assert!(en.is_positive());
        prop_assert!(en < RatFunc::from_rational(&q));
    }

    #[test]
    fn standard_part_is_additive(a in ratfunc(), b in ratfunc()) {
        if let (Some(sa), Some(sb)) = (a.standard_part(), b.standard_part()) {
            prop_assert_eq!((a + b).standard_part(), Some(sa + sb));
        }
    }

    #[test]
    fn text_round_trip(a in ratfunc()) {
        let back: RatFunc = parse_scalar(&a.to_string()).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn canonical_denominator(a in ratfunc()) {
        let lowest = a.denominator().iter().find(|c| **c != 0.into()).unwrap();
        prop_assert!(*lowest > 0.into());
    }
}

#[test]
fn tagged_elements() {
    let e = FieldElem::parse("e", FieldDesc::RATIONAL_FUNCTIONS).unwrap();
    let tiny = FieldElem::parse("1/1000000000", FieldDesc::RATIONAL_FUNCTIONS).unwrap();
    assert!(e.compare(&tiny).unwrap().is_lt());
    let q = FieldElem::parse("13/40", FieldDesc::RATIONALS).unwrap();
    assert!(q.compare(&e).is_err());
    assert_eq!(FieldElem::parse("1/e", FieldDesc::RATIONAL_FUNCTIONS).unwrap().standard_part(), None);
}
