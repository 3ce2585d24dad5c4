//! Definable predicates of `J^d`: special extreme points, adjacency, runs of
//! adjacent special extreme points, and the multiplication graph.
//!
//! The multiplication predicate is decided analytically: `MGI(x, y, z)`
//! holds exactly when `x`, `y`, `z` are integers above 1 with `z = xy`.
//! Positive answers can be backed by a [`Witness`], a run of six chain
//! vertices on the sphere of radius `p^m q^n` whose edge lengths read
//! `(1, x, z, y, u)` with `u < 1`. Negative answers can be cross-checked by
//! [`MgiOracle`], which enumerates runs directly.

mod runs;

pub use runs::{enumerate_runs, AdjacencyGraph, MgiOracle, OracleMatch, Run};

use alloc::vec::Vec;
use core::fmt;

use crate::field::{BigInt, OrderedField, Rational};
use crate::geometry::{ExtremeKind, GeometryError, JSpace, Sign, SphereClass, VecD};

/// Witness pairs are only searched below this key size, in bits. The pair
/// index grows with the square of the bit length, and building a witness
/// needs every vertex up to it.
pub const WITNESS_KEY_BITS: u64 = 80;

pub fn is_special_extreme<F: OrderedField>(space: &JSpace, r: &F, v: &VecD<F>) -> Result<bool, GeometryError> {
    Ok(matches!(space.extreme_classify(r, v)?, SphereClass::Extreme(k) if k.is_special()))
}

/// Both points are special extreme points of `S_r` and their midpoint is
/// on `S_r`.
pub fn adjacent_special<F: OrderedField>(space: &JSpace, r: &F, u: &VecD<F>, w: &VecD<F>) -> Result<bool, GeometryError> {
    if !is_special_extreme(space, r, u)? || !is_special_extreme(space, r, w)? || u == w {
        return Ok(false);
    }
    Ok(space.norm(&u.add(w).half()) == *r)
}

/// The value as an integer greater than 1.
fn above_one<F: OrderedField>(x: &F) -> Option<BigInt> {
    x.as_integer().filter(|n| *n > BigInt::from(1))
}

/// `MGI(x, y, z)`.
pub fn mgi_holds<F: OrderedField>(x: &F, y: &F, z: &F) -> bool {
    match (above_one(x), above_one(y), above_one(z)) {
        (Some(x), Some(y), Some(z)) => x * y == z,
        _ => false,
    }
}

/// `M(x, y, z) = MGI(x + 2, y + 2, 4 + 2x + 2y + z)`, which holds exactly on
/// the graph of multiplication of the field's natural numbers.
pub fn mult_graph_holds<F: OrderedField>(x: &F, y: &F, z: &F) -> bool {
    let two = F::from_int(2);
    let z2 = F::from_int(4) + two.clone() * x.clone() + two.clone() * y.clone() + z.clone();
    mgi_holds(&(x.clone() + two.clone()), &(y.clone() + two), &z2)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WitnessError {
    NotAProduct,
    /// The pair `(x, y)` is too far out in the enumeration.
    OutOfRange,
    Check(&'static str),
}

impl fmt::Display for WitnessError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WitnessError::NotAProduct => f.write_str("no witness: the triple is not a product"),
            WitnessError::OutOfRange => f.write_str("no witness within the supported key range"),
            WitnessError::Check(what) => write!(f, "witness check failed: {what}"),
        }
    }
}

/// A checked run certifying `MGI(x, y, xy)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    /// Position of `(m, n) = (x, y)` in the pair enumeration.
    pub index: usize,
    pub radius: Rational,
    /// `+v_{4i+1}, ..., +v_{4i+6}`.
    pub nodes: Vec<ExtremeKind>,
    /// `(1, x, z, y, u)`.
    pub lengths: Vec<Rational>,
}

impl Witness {
    /// Builds the run at radius `p^x q^y` and checks every condition of the
    /// pattern with exact norms.
    pub fn certify(space: &JSpace, x: &Rational, y: &Rational, z: &Rational) -> Result<Witness, WitnessError> {
        if !mgi_holds(x, y, z) {
            return Err(WitnessError::NotAProduct);
        }
        let (m, n) = match (small(x), small(y)) {
            (Some(m), Some(n)) => (m, n),
            _ => return Err(WitnessError::OutOfRange),
        };
        let params = space.disc().params();
        let key = BigInt::from(params.p()).pow(m) * BigInt::from(params.q()).pow(n);
        if key.bits() > WITNESS_KEY_BITS {
            return Err(WitnessError::OutOfRange);
        }
        let index = space
            .disc()
            .with_sequences(|s| s.pairs().index_of(m, n))
            .ok_or(WitnessError::OutOfRange)?;
        let radius = Rational::from_integer(key);
        let nodes: Vec<ExtremeKind> = (4 * index + 1..=4 * index + 6)
            .map(|k| ExtremeKind::ChainVertex { k, sign: Sign::Plus })
            .collect();
        let points: Vec<VecD<Rational>> =
            nodes.iter().map(|kind| kind.unit_point::<Rational>(space.disc()).scale(&radius)).collect();

        let check = |ok: bool, what| if ok { Ok(()) } else { Err(WitnessError::Check(what)) };
        for p in &points {
            check(is_special_extreme(space, &radius, p) == Ok(true), "node is not a special extreme point")?;
        }
        for (i, p) in points.iter().enumerate() {
            check(points[i + 1..].iter().all(|q| q != p), "nodes repeat")?;
        }
        for w in points.windows(2) {
            check(adjacent_special(space, &radius, &w[0], &w[1]) == Ok(true), "nodes are not adjacent")?;
        }
        let lengths: Vec<Rational> = points.windows(2).map(|w| space.norm(&w[1].sub(&w[0]))).collect();
        check(run_pattern(&lengths) == Some((x.clone(), y.clone(), z.clone())), "edge lengths")?;
        Ok(Witness { index, radius, nodes, lengths })
    }
}

fn small(x: &Rational) -> Option<u32> {
    u32::try_from(x.to_integer()).ok()
}

/// Reads `(x, y, z)` off edge lengths `(1, x, z, y, u)` when they follow
/// the pattern `1 < x < z > y > u < 1`.
pub fn run_pattern<F: OrderedField>(lengths: &[F]) -> Option<(F, F, F)> {
    let [first, x, z, y, u] = lengths else {
        return None;
    };
    let one = F::one();
    let ok = *first == one && one < *x && x < z && z > y && y > u && *u < one;
    ok.then(|| (x.clone(), y.clone(), z.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::Params;
    use crate::field::{rat, ratio, RatFunc};
    use crate::geometry::{Dimension, Vec2};

    fn plane() -> JSpace {
        JSpace::plane(Params::default())
    }

    fn point(space: &JSpace, k: usize) -> VecD<Rational> {
        VecD::new(space.disc().vertex(k))
    }

    #[test]
    fn special_points() {
        let s = plane();
        assert_eq!(is_special_extreme(&s, &rat(1), &VecD::new(Vec2::e2())), Ok(true));
        let mid = VecD::new((s.disc().vertex(1) + s.disc().vertex(2)).half());
        assert_eq!(is_special_extreme(&s, &rat(1), &mid), Ok(false));
        let s4 = JSpace::new(Params::default(), Dimension::Finite(4)).unwrap();
        assert_eq!(is_special_extreme(&s4, &rat(1), &VecD::basis(1, rat(1))), Ok(false));
        assert!(is_special_extreme(&s, &rat(0), &VecD::new(Vec2::e2())).is_err());
    }

    #[test]
    fn adjacency() {
        let s = plane();
        let one = rat(1);
        assert_eq!(adjacent_special(&s, &one, &point(&s, 1), &point(&s, 2)), Ok(true));
        assert_eq!(adjacent_special(&s, &one, &point(&s, 1), &point(&s, 3)), Ok(false));
        let lim = VecD::new(s.disc().limit_point().clone());
        assert_eq!(adjacent_special(&s, &one, &lim, &VecD::new(Vec2::e2())), Ok(true));
        assert_eq!(adjacent_special(&s, &one, &point(&s, 1), &point(&s, 1)), Ok(false));
    }

    #[test]
    fn analytic_rule() {
        assert!(mgi_holds(&rat(2), &rat(2), &rat(4)));
        assert!(!mgi_holds(&rat(2), &rat(2), &rat(5)));
        assert!(!mgi_holds(&rat(1), &rat(4), &rat(4)));
        assert!(mult_graph_holds(&rat(0), &rat(7), &rat(0)));
        assert!(mult_graph_holds(&rat(3), &rat(4), &rat(12)));
        assert!(!mult_graph_holds(&ratio(1, 2), &rat(2), &rat(1)));
        let e = RatFunc::epsilon();
        assert!(!mgi_holds(&(RatFunc::from_int(2) + e), &RatFunc::from_int(2), &RatFunc::from_int(4)));
        assert!(mgi_holds(&RatFunc::from_int(3), &RatFunc::from_int(2), &RatFunc::from_int(6)));
    }

    #[test]
    fn witnesses() {
        let s = plane();
        let w = Witness::certify(&s, &rat(2), &rat(2), &rat(4)).unwrap();
        assert_eq!(w.radius, rat(100));
        assert_eq!(w.lengths, [rat(1), rat(2), rat(4), rat(2), ratio(1, 2)]);
        let w = Witness::certify(&s, &rat(2), &rat(3), &rat(6)).unwrap();
        assert_eq!((w.index, w.radius.clone()), (3, rat(500)));
        assert_eq!(w.lengths[4], ratio(5, 8));
        assert_eq!(Witness::certify(&s, &rat(2), &rat(2), &rat(5)), Err(WitnessError::NotAProduct));
        assert_eq!(
            Witness::certify(&s, &rat(200), &rat(2), &rat(400)),
            Err(WitnessError::OutOfRange)
        );
    }

    #[test]
    fn pattern_shape() {
        let l = |v: &[i64]| v.iter().map(|&x| rat(x)).collect::<Vec<_>>();
        assert_eq!(run_pattern(&l(&[1, 2, 4, 2, 0])), Some((rat(2), rat(2), rat(4))));
        assert_eq!(run_pattern(&l(&[1, 2, 4, 2, 1])), None);
        assert_eq!(run_pattern(&l(&[2, 3, 4, 2, 0])), None);
        assert_eq!(run_pattern(&l(&[1, 2, 4, 2])), None);
    }
}
