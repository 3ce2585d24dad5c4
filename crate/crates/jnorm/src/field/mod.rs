//! Exact ordered fields.
//!
//! Two scalar fields are supported: the rationals and the field `Q(e)` of
//! rational functions in a single positive infinitesimal `e`. Geometry and
//! predicates are generic over [`OrderedField`]; [`FieldElem`] is the
//! dynamically-tagged form used at text boundaries, where mixing the two
//! fields has to be reported rather than ruled out by the type system.

mod parse;
mod ratfunc;
mod rational;

use alloc::string::String;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

pub use num_bigint::{BigInt, BigUint};
pub use num_traits::{One, Zero};
pub use num_rational::BigRational as Rational;
pub use parse::parse_scalar;
pub use ratfunc::RatFunc;
pub use rational::{rat, ratio};

/// Which scalar field a value lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldKind {
    Rationals,
    RationalFunctions,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldDesc {
    pub kind: FieldKind,
    pub archimedean: bool,
}

impl FieldDesc {
    pub const RATIONALS: FieldDesc = FieldDesc {
        kind: FieldKind::Rationals,
        archimedean: true,
    };
    pub const RATIONAL_FUNCTIONS: FieldDesc = FieldDesc {
        kind: FieldKind::RationalFunctions,
        archimedean: false,
    };
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FieldError {
    DivisionByZero,
    MixedFields,
    MissingOperand,
    Parse { pos: usize, msg: String },
}

impl fmt::Display for FieldError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldError::DivisionByZero => f.write_str("division by zero"),
            FieldError::MixedFields => f.write_str("operands belong to different fields"),
            FieldError::MissingOperand => f.write_str("binary operation needs a second operand"),
            FieldError::Parse { pos, msg } => write!(f, "parse error at offset {pos}: {msg}"),
        }
    }
}

/// An ordered field with exact arithmetic.
///
/// The operator impls panic on division by zero, like the integer types;
/// use [`OrderedField::checked_div`] where the divisor is not known to be
/// nonzero.
pub trait OrderedField:
    Clone
    + Ord
    + fmt::Debug
    + fmt::Display
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Zero
    + One
{
    const DESC: FieldDesc;

    fn from_rational(r: &Rational) -> Self;

    /// The exact rational value, if the element lies in the prime field.
    fn as_rational(&self) -> Option<Rational>;

    /// The unique rational infinitely close to `self`, or `None` if `self`
    /// is infinite.
    fn standard_part(&self) -> Option<Rational>;

    /// The distinguished positive infinitesimal, if the field has one.
    fn epsilon() -> Option<Self>;

    fn checked_div(&self, rhs: &Self) -> Result<Self, FieldError> {
        if rhs.is_zero() {
            Err(FieldError::DivisionByZero)
        } else {
            Ok(self.clone() / rhs.clone())
        }
    }

    fn from_int(n: i64) -> Self {
        Self::from_rational(&Rational::from_integer(BigInt::from(n)))
    }

    fn signum(&self) -> Ordering {
        self.cmp(&Self::zero())
    }

    fn is_positive(&self) -> bool {
        self.signum() == Ordering::Greater
    }

    fn is_negative(&self) -> bool {
        self.signum() == Ordering::Less
    }

    fn abs(&self) -> Self {
        if self.is_negative() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    /// The integer value, if the element is a (standard) integer.
    fn as_integer(&self) -> Option<BigInt> {
        self.as_rational()
            .filter(|r| r.is_integer())
            .map(|r| r.to_integer())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
    Neg,
    Abs,
}

/// A scalar tagged with its field.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FieldElem {
    Rat(Rational),
    Eps(RatFunc),
}

impl FieldElem {
    pub fn desc(&self) -> FieldDesc {
        match self {
            FieldElem::Rat(_) => FieldDesc::RATIONALS,
            FieldElem::Eps(_) => FieldDesc::RATIONAL_FUNCTIONS,
        }
    }

    pub fn parse(text: &str, field: FieldDesc) -> Result<FieldElem, FieldError> {
        match field.kind {
            FieldKind::Rationals => parse_scalar::<Rational>(text).map(FieldElem::Rat),
            FieldKind::RationalFunctions => parse_scalar::<RatFunc>(text).map(FieldElem::Eps),
        }
    }

    /// Applies `op`; the unary operations ignore `rhs`.
    pub fn apply(op: ArithOp, lhs: &FieldElem, rhs: Option<&FieldElem>) -> Result<FieldElem, FieldError> {
        match op {
            ArithOp::Neg => return Ok(lhs.map(|a| -a.clone(), |a| -a.clone())),
            ArithOp::Abs => return Ok(lhs.map(|a| a.abs(), |a| a.abs())),
            _ => {}
        }
        let rhs = rhs.ok_or(FieldError::MissingOperand)?;
        match (lhs, rhs) {
            (FieldElem::Rat(a), FieldElem::Rat(b)) => binary(op, a, b).map(FieldElem::Rat),
            (FieldElem::Eps(a), FieldElem::Eps(b)) => binary(op, a, b).map(FieldElem::Eps),
            _ => Err(FieldError::MixedFields),
        }
    }

    pub fn compare(&self, other: &FieldElem) -> Result<Ordering, FieldError> {
        match (self, other) {
            (FieldElem::Rat(a), FieldElem::Rat(b)) => Ok(a.cmp(b)),
            (FieldElem::Eps(a), FieldElem::Eps(b)) => Ok(a.cmp(b)),
            _ => Err(FieldError::MixedFields),
        }
    }

    pub fn standard_part(&self) -> Option<Rational> {
        match self {
            FieldElem::Rat(a) => a.standard_part(),
            FieldElem::Eps(a) => a.standard_part(),
        }
    }

    fn map(&self, f: impl Fn(&Rational) -> Rational, g: impl Fn(&RatFunc) -> RatFunc) -> FieldElem {
        match self {
            FieldElem::Rat(a) => FieldElem::Rat(f(a)),
            FieldElem::Eps(a) => FieldElem::Eps(g(a)),
        }
    }
}

fn binary<F: OrderedField>(op: ArithOp, a: &F, b: &F) -> Result<F, FieldError> {
    Ok(match op {
        ArithOp::Add => a.clone() + b.clone(),
        ArithOp::Sub => a.clone() - b.clone(),
        ArithOp::Mul => a.clone() * b.clone(),
        ArithOp::Div => a.checked_div(b)?,
        ArithOp::Neg | ArithOp::Abs => unreachable!("unary operations handled by caller"),
    })
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElem::Rat(a) => fmt::Display::fmt(a, f),
            FieldElem::Eps(a) => fmt::Display::fmt(a, f),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(text: &str) -> FieldElem {
        FieldElem::parse(text, FieldDesc::RATIONALS).unwrap()
    }

    fn e(text: &str) -> FieldElem {
        FieldElem::parse(text, FieldDesc::RATIONAL_FUNCTIONS).unwrap()
    }

    #[test]
    fn tagged_arithmetic() {
        assert_eq!(FieldElem::apply(ArithOp::Add, &q("1/3"), Some(&q("1/6"))).unwrap(), q("1/2"));
        assert_eq!(FieldElem::apply(ArithOp::Mul, &e("1+e"), Some(&e("1-e"))).unwrap(), e("1 - e^2"));
        assert_eq!(FieldElem::apply(ArithOp::Abs, &q("-7/5"), None).unwrap(), q("7/5"));
        assert_eq!(FieldElem::apply(ArithOp::Neg, &e("e"), None).unwrap(), e("-e"));
    }

    #[test]
    fn tagged_errors() {
        assert_eq!(
            FieldElem::apply(ArithOp::Div, &q("1"), Some(&q("0"))),
            Err(FieldError::DivisionByZero)
        );
        assert_eq!(
            FieldElem::apply(ArithOp::Add, &q("1"), Some(&e("1"))),
            Err(FieldError::MixedFields)
        );
        assert_eq!(q("1").compare(&e("e")), Err(FieldError::MixedFields));
        assert_eq!(FieldElem::apply(ArithOp::Sub, &q("1"), None), Err(FieldError::MissingOperand));
    }

    #[test]
    fn tagged_order() {
        assert_eq!(e("e").compare(&e("0")).unwrap(), Ordering::Greater);
        assert_eq!(e("e").compare(&e("1/1000000000")).unwrap(), Ordering::Less);
        assert_eq!(q("13/40").compare(&q("1")).unwrap(), Ordering::Less);
    }

    #[test]
    fn standard_parts() {
        assert_eq!(e("3/2 + e").standard_part(), Some(ratio(3, 2)));
        assert_eq!(q("7/5").standard_part(), Some(ratio(7, 5)));
        assert_eq!(e("1/e").standard_part(), None);
    }
}
