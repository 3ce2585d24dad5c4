//! The field `Q(e)` ordered so that `e` is a positive infinitesimal.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{FieldDesc, FieldError, OrderedField, Rational};

/// A reduced quotient of polynomials in `e`.
///
/// Canonical form: numerator and denominator are coprime integer
/// polynomials whose coefficients have no common factor, and the lowest
/// nonzero coefficient of the denominator is positive. Structural equality
/// is therefore field equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    // coefficient vectors, lowest degree first, no trailing zeros
    num: Vec<BigInt>,
    den: Vec<BigInt>,
}

fn trim<T: Zero>(p: &mut Vec<T>) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

fn order<T: Zero>(p: &[T]) -> Option<usize> {
    p.iter().position(|c| !c.is_zero())
}

fn content(p: &[BigInt]) -> BigInt {
    p.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
}

fn primitive(mut p: Vec<BigInt>) -> Vec<BigInt> {
    let c = content(&p);
    if !c.is_zero() && !c.is_one() {
        for x in &mut p {
            *x /= &c;
        }
    }
    p
}

// primitive part of the pseudo-remainder of `a` by `b`
fn prem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    let lb = b.last().expect("nonzero divisor");
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let lr = r.last().unwrap().clone();
        for x in &mut r {
            *x *= lb;
        }
        for (j, y) in b.iter().enumerate() {
            r[shift + j] -= &lr * y;
        }
        r.pop();
        trim(&mut r);
    }
    primitive(r)
}

/// Primitive gcd of two nonzero integer polynomials.
fn int_gcd(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let (mut x, mut y) = (primitive(a.to_vec()), primitive(b.to_vec()));
    if x.len() < y.len() {
        core::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        let r = prem(&x, &y);
        x = y;
        y = r;
    }
    x
}

/// `a / g` for a primitive `g` dividing `a`; exact over the integers.
fn int_divexact(a: &[BigInt], g: &[BigInt]) -> Vec<BigInt> {
    let mut rem = a.to_vec();
    let lead = g.last().unwrap();
    let mut quot = vec![BigInt::zero(); rem.len() + 1 - g.len()];
    while rem.len() >= g.len() {
        let shift = rem.len() - g.len();
        let c = rem.last().unwrap() / lead;
        for (j, y) in g.iter().enumerate() {
            rem[shift + j] -= &c * y;
        }
        quot[shift] = c;
        rem.pop();
        trim(&mut rem);
    }
    debug_assert!(rem.is_empty());
    trim(&mut quot);
    quot
}

fn int_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

fn int_add(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out: Vec<BigInt> = (0..a.len().max(b.len()))
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_default();
            match b.get(i) {
                Some(y) => x + y,
                None => x,
            }
        })
        .collect();
    trim(&mut out);
    out
}

fn int_sub(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out: Vec<BigInt> = (0..a.len().max(b.len()))
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_default();
            match b.get(i) {
                Some(y) => x - y,
                None => x,
            }
        })
        .collect();
    trim(&mut out);
    out
}

impl RatFunc {
    fn from_ints(mut num: Vec<BigInt>, mut den: Vec<BigInt>) -> Result<RatFunc, FieldError> {
        trim(&mut num);
        trim(&mut den);
        let Some(d) = order(&den) else {
            return Err(FieldError::DivisionByZero);
        };
        let Some(n) = order(&num) else {
            return Ok(RatFunc::zero());
        };
        // common powers of e
        let k = n.min(d);
        num.drain(..k);
        den.drain(..k);
        // a monomial in e shares no factor with a polynomial of nonzero
        // constant term, so the gcd is only needed when neither side is one
        let monomial = |p: &[BigInt]| p.iter().filter(|c| !c.is_zero()).count() == 1;
        if !monomial(&num) && !monomial(&den) {
            let g = int_gcd(&num, &den);
            if g.len() > 1 {
                num = int_divexact(&num, &g);
                den = int_divexact(&den, &g);
            }
        }
        let content = content(&num).gcd(&content(&den));
        let negate = den[order(&den).unwrap()].is_negative();
        for c in num.iter_mut().chain(den.iter_mut()) {
            *c /= &content;
            if negate {
                *c = -&*c;
            }
        }
        Ok(RatFunc { num, den })
    }

    pub fn epsilon() -> RatFunc {
        RatFunc {
            num: vec![BigInt::zero(), BigInt::one()],
            den: vec![BigInt::one()],
        }
    }

    /// Integer coefficients of the numerator, lowest degree first.
    pub fn numerator(&self) -> &[BigInt] {
        &self.num
    }

    /// Integer coefficients of the denominator, lowest degree first.
    pub fn denominator(&self) -> &[BigInt] {
        &self.den
    }

    pub fn pow(&self, exp: u32) -> RatFunc {
        (0..exp).fold(RatFunc::one(), |acc, _| acc * self.clone())
    }
}

impl OrderedField for RatFunc {
    const DESC: FieldDesc = FieldDesc::RATIONAL_FUNCTIONS;

    fn from_rational(r: &Rational) -> Self {
        if r.is_zero() {
            return RatFunc::zero();
        }
        // already reduced, and BigRational keeps the denominator positive
        RatFunc {
            num: vec![r.numer().clone()],
            den: vec![r.denom().clone()],
        }
    }

    fn as_rational(&self) -> Option<Rational> {
        match (self.num.as_slice(), self.den.as_slice()) {
            ([], _) => Some(Rational::zero()),
            ([n], [d]) => Some(Rational::new(n.clone(), d.clone())),
            _ => None,
        }
    }

    fn standard_part(&self) -> Option<Rational> {
        let Some(n) = order(&self.num) else {
            return Some(Rational::zero());
        };
        let d = order(&self.den).unwrap();
        match n.cmp(&d) {
            Ordering::Greater => Some(Rational::zero()),
            Ordering::Equal => Some(Rational::new(self.num[n].clone(), self.den[d].clone())),
            Ordering::Less => None,
        }
    }

    fn epsilon() -> Option<Self> {
        Some(RatFunc::epsilon())
    }
}

impl Zero for RatFunc {
    fn zero() -> Self {
        RatFunc {
            num: Vec::new(),
            den: vec![BigInt::one()],
        }
    }

    fn is_zero(&self) -> bool {
        self.num.is_empty()
    }
}

impl One for RatFunc {
    fn one() -> Self {
        RatFunc::from_rational(&Rational::one())
    }
}

impl Ord for RatFunc {
    fn cmp(&self, other: &Self) -> Ordering {
        // both denominators have positive lowest coefficients, so the sign
        // of the difference is the sign of the cross-multiplied numerator
        let cross = int_sub(&int_mul(&self.num, &other.den), &int_mul(&other.num, &self.den));
        match order(&cross) {
            None => Ordering::Equal,
            Some(i) => cross[i].sign().cmp(&num_bigint::Sign::NoSign),
        }
    }
}

impl PartialOrd for RatFunc {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: RatFunc) -> RatFunc {
        if self.den == rhs.den {
            return RatFunc::from_ints(int_add(&self.num, &rhs.num), self.den).unwrap();
        }
        let num = int_add(&int_mul(&self.num, &rhs.den), &int_mul(&rhs.num, &self.den));
        RatFunc::from_ints(num, int_mul(&self.den, &rhs.den)).unwrap()
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: self.num.into_iter().map(|c| -c).collect(),
            den: self.den,
        }
    }
}

impl Sub for RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: RatFunc) -> RatFunc {
        self + (-rhs)
    }
}

impl Mul for RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: RatFunc) -> RatFunc {
        RatFunc::from_ints(int_mul(&self.num, &rhs.num), int_mul(&self.den, &rhs.den)).unwrap()
    }
}

impl Div for RatFunc {
    type Output = RatFunc;
    fn div(self, rhs: RatFunc) -> RatFunc {
        RatFunc::from_ints(int_mul(&self.num, &rhs.den), int_mul(&self.den, &rhs.num))
            .expect("division by zero")
    }
}

impl From<Rational> for RatFunc {
    fn from(r: Rational) -> Self {
        RatFunc::from_rational(&r)
    }
}

fn write_poly(f: &mut fmt::Formatter<'_>, p: &[BigInt]) -> fmt::Result {
    if p.is_empty() {
        return f.write_str("0");
    }
    let mut first = true;
    for (k, c) in p.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
        let mag = c.abs();
        if first {
            if c.is_negative() {
                f.write_str("-")?;
            }
        } else {
            f.write_str(if c.is_negative() { " - " } else { " + " })?;
        }
        first = false;
        match k {
            0 => write!(f, "{mag}")?,
            _ => {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                f.write_str("e")?;
                if k > 1 {
                    write!(f, "^{k}")?;
                }
            }
        }
    }
    Ok(())
}

fn terms(p: &[BigInt]) -> usize {
    p.iter().filter(|c| !c.is_zero()).count()
}

/// Prints e.g. `(1 - 2*e + e^2)/(3 + e)`; constants print as `n/d`.
impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.as_rational() {
            return write!(f, "{r}");
        }
        if self.den.len() == 1 && self.den[0].is_one() {
            return write_poly(f, &self.num);
        }
        let multi_num = terms(&self.num) > 1;
        if multi_num {
            f.write_str("(")?;
        }
        write_poly(f, &self.num)?;
        if multi_num {
            f.write_str(")")?;
        }
        if self.den.len() == 1 {
            return write!(f, "/{}", self.den[0]);
        }
        f.write_str("/(")?;
        write_poly(f, &self.den)?;
        f.write_str(")")
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({self})")
    }
}
