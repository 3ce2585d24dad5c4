use num_bigint::BigInt;

use super::{FieldDesc, OrderedField, Rational};

/// Integer as a rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `n / d` reduced. Panics if `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

impl OrderedField for Rational {
    const DESC: FieldDesc = FieldDesc::RATIONALS;

    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }

    fn as_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }

    fn standard_part(&self) -> Option<Rational> {
        Some(self.clone())
    }

    fn epsilon() -> Option<Self> {
        None
    }
}
