//! The 1-sum `J^d = J x W`, where `W` carries the 1-norm with respect to a
//! basis `b_1, b_2, ...` of dimension `d - 2` (or countably many for
//! `d = inf`).

use alloc::collections::BTreeMap;
use core::fmt;

use super::{FacetKind, GeometryError, RayCase, UnitDisc, Vec2};
use crate::constants::Params;
use crate::field::{OrderedField, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Dimension {
    Finite(usize),
    Infinite,
}

impl Dimension {
    /// Number of W-coordinates, `None` when unbounded.
    pub fn w_dims(self) -> Option<usize> {
        match self {
            Dimension::Finite(d) => Some(d - 2),
            Dimension::Infinite => None,
        }
    }
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dimension::Finite(d) => write!(f, "{d}"),
            Dimension::Infinite => f.write_str("inf"),
        }
    }
}

/// A vector of `J^d`: a `J` part and finitely many nonzero W-coordinates,
/// indexed from 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VecD<F> {
    j: Vec2<F>,
    w: BTreeMap<usize, F>,
}

impl<F: OrderedField> VecD<F> {
    pub fn new(j: Vec2<F>) -> Self {
        VecD { j, w: BTreeMap::new() }
    }

    /// Builds a vector, dropping zero W-coordinates.
    pub fn from_parts(j: Vec2<F>, w: impl IntoIterator<Item = (usize, F)>) -> Self {
        let mut v = VecD::new(j);
        for (i, c) in w {
            v.set_w(i, c);
        }
        v
    }

    /// `c * b_index`.
    pub fn basis(index: usize, c: F) -> Self {
        VecD::from_parts(Vec2::zero(), [(index, c)])
    }

    pub fn j_part(&self) -> &Vec2<F> {
        &self.j
    }

    pub fn w_part(&self) -> &BTreeMap<usize, F> {
        &self.w
    }

    pub fn set_w(&mut self, index: usize, c: F) {
        if c.is_zero() {
            self.w.remove(&index);
        } else {
            self.w.insert(index, c);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.j.is_zero() && self.w.is_empty()
    }

    pub fn scale(&self, c: &F) -> Self {
        VecD::from_parts(
            self.j.scale(c),
            self.w.iter().map(|(&i, x)| (i, x.clone() * c.clone())),
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = VecD::new(self.j.clone() + other.j.clone());
        out.w = self.w.clone();
        for (&i, c) in &other.w {
            let sum = out.w.get(&i).cloned().unwrap_or_else(F::zero) + c.clone();
            out.set_w(i, sum);
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&-F::one())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn half(&self) -> Self {
        self.scale(&(F::one() / F::from_int(2)))
    }
}

impl<F: fmt::Display> fmt::Display for VecD<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}", self.j.x, self.j.y)?;
        for (i, c) in &self.w {
            write!(f, "; b{i}: {c}")?;
        }
        f.write_str(")")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn apply<F: OrderedField>(self, x: F) -> F {
        match self {
            Sign::Plus => x,
            Sign::Minus => -x,
        }
    }
}

/// The extreme points of a sphere `S_r`, up to the factor `r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExtremeKind {
    /// `+-v_k`.
    ChainVertex { k: usize, sign: Sign },
    /// `+-v_inf`; extreme over the rationals only.
    Limit { sign: Sign },
    /// `+-e2`.
    North { sign: Sign },
    /// `+-b_index`.
    WBasis { index: usize, sign: Sign },
}

impl ExtremeKind {
    /// The extreme points of `J` are special; those of `W` are equidistant
    /// from every other extreme point and are not.
    pub fn is_special(&self) -> bool {
        !matches!(self, ExtremeKind::WBasis { .. })
    }

    pub fn sign(&self) -> Sign {
        match *self {
            ExtremeKind::ChainVertex { sign, .. }
            | ExtremeKind::Limit { sign }
            | ExtremeKind::North { sign }
            | ExtremeKind::WBasis { sign, .. } => sign,
        }
    }

    /// The point of the unit sphere this kind names.
    pub fn unit_point<F: OrderedField>(&self, disc: &UnitDisc) -> VecD<F> {
        let (j, sign) = match *self {
            ExtremeKind::ChainVertex { k, sign } => (Vec2::from_rational(&disc.vertex(k)), sign),
            ExtremeKind::Limit { sign } => (Vec2::from_rational(disc.limit_point()), sign),
            ExtremeKind::North { sign } => (Vec2::e2(), sign),
            ExtremeKind::WBasis { index, sign } => return VecD::basis(index, sign.apply(F::one())),
        };
        VecD::new(match sign {
            Sign::Plus => j,
            Sign::Minus => -j,
        })
    }
}

impl fmt::Display for ExtremeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self.sign() {
            Sign::Plus => "+",
            Sign::Minus => "-",
        };
        match self {
            ExtremeKind::ChainVertex { k, .. } => write!(f, "{s}v{k}"),
            ExtremeKind::Limit { .. } => write!(f, "{s}v_inf"),
            ExtremeKind::North { .. } => write!(f, "{s}e2"),
            ExtremeKind::WBasis { index, .. } => write!(f, "{s}b{index}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SphereClass {
    NotOnSphere,
    OnSphereNotExtreme,
    Extreme(ExtremeKind),
}

/// `J^d` for fixed parameters and dimension.
#[derive(Debug)]
pub struct JSpace {
    disc: UnitDisc,
    dim: Dimension,
}

impl JSpace {
    pub fn new(params: Params, dim: Dimension) -> Result<JSpace, GeometryError> {
        if let Dimension::Finite(d) = dim {
            if d < 2 {
                return Err(GeometryError::Dimension(d));
            }
        }
        Ok(JSpace {
            disc: UnitDisc::new(params),
            dim,
        })
    }

    /// The plane itself, `d = 2`.
    pub fn plane(params: Params) -> JSpace {
        JSpace {
            disc: UnitDisc::new(params),
            dim: Dimension::Finite(2),
        }
    }

    pub fn disc(&self) -> &UnitDisc {
        &self.disc
    }

    pub fn dimension(&self) -> Dimension {
        self.dim
    }

    /// Rejects W-coordinates outside the space.
    pub fn check<F: OrderedField>(&self, v: &VecD<F>) -> Result<(), GeometryError> {
        let limit = self.dim.w_dims();
        match v.w.keys().find(|&&i| i == 0 || limit.is_some_and(|n| i > n)) {
            Some(&i) => Err(GeometryError::WIndex(i)),
            None => Ok(()),
        }
    }

    /// `||j||_J + sum |w_i|`.
    pub fn norm<F: OrderedField>(&self, v: &VecD<F>) -> F {
        v.w.values().fold(self.disc.norm(&v.j), |acc, c| acc + c.abs())
    }

    pub fn extreme_classify<F: OrderedField>(&self, r: &F, v: &VecD<F>) -> Result<SphereClass, GeometryError> {
        if !r.is_positive() {
            return Err(GeometryError::NonPositiveRadius);
        }
        if self.norm(v) != *r {
            return Ok(SphereClass::NotOnSphere);
        }
        let u = v.scale(&(F::one() / r.clone()));
        let kind = if u.w.is_empty() {
            self.plane_extreme(&u.j)
        } else if u.j.is_zero() && u.w.len() == 1 {
            let (&index, c) = u.w.iter().next().unwrap();
            let sign = if c.is_positive() { Sign::Plus } else { Sign::Minus };
            Some(ExtremeKind::WBasis { index, sign })
        } else {
            None
        };
        Ok(kind.map_or(SphereClass::OnSphereNotExtreme, SphereClass::Extreme))
    }

    // `u` is a unit vector of J
    fn plane_extreme<F: OrderedField>(&self, u: &Vec2<F>) -> Option<ExtremeKind> {
        let class = self.disc.classify_ray(u).ok()?;
        let sign = if class.facet.mirrored { Sign::Minus } else { Sign::Plus };
        let w = if class.facet.mirrored { -u.clone() } else { u.clone() };
        match class.case {
            // e1 = -v_0
            RayCase::Axis => Some(ExtremeKind::ChainVertex { k: 0, sign: sign.flip() }),
            RayCase::NorthEast => w.x.is_zero().then_some(ExtremeKind::North { sign }),
            RayCase::EastLimit => {
                (F::DESC.archimedean && self.disc.is_limit_ray(&w)).then_some(ExtremeKind::Limit { sign })
            }
            RayCase::Chain => {
                let FacetKind::ChainSegment(k) = class.facet.kind else {
                    unreachable!("chain case carries a chain facet")
                };
                self.disc
                    .ray_cmp(&w, k + 1)
                    .is_eq()
                    .then_some(ExtremeKind::ChainVertex { k: k + 1, sign })
            }
        }
    }

    /// Extreme, with a nonzero `J` part.
    pub fn is_special_extreme<F: OrderedField>(&self, r: &F, v: &VecD<F>) -> bool {
        matches!(self.extreme_classify(r, v), Ok(SphereClass::Extreme(k)) if k.is_special())
    }
}

/// Shorthand used by tests and the CLI.
pub fn rational_point(x: Rational, y: Rational) -> VecD<Rational> {
    VecD::new(Vec2::new(x, y))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{rat, ratio, One, RatFunc};

    fn space(d: usize) -> JSpace {
        JSpace::new(Params::default(), Dimension::Finite(d)).unwrap()
    }

    #[test]
    fn one_sum_norms() {
        let s = space(4);
        assert_eq!(s.norm(&VecD::basis(1, rat(3))), rat(3));
        let v = VecD::from_parts(Vec2::new(rat(1), rat(1)), [(1, rat(-2))]);
        assert_eq!(s.norm(&v), rat(4));
        let step = VecD::new(s.disc().vertex(2) - s.disc().vertex(1));
        assert_eq!(s.norm(&step), ratio(1, 100));
    }

    #[test]
    fn index_checks() {
        let s = space(4);
        assert!(s.check(&VecD::basis(2, rat(1))).is_ok());
        assert_eq!(s.check(&VecD::basis(3, rat(1))), Err(GeometryError::WIndex(3)));
        assert_eq!(s.check(&VecD::basis(0, rat(1))), Err(GeometryError::WIndex(0)));
        let inf = JSpace::new(Params::default(), Dimension::Infinite).unwrap();
        assert!(inf.check(&VecD::basis(1000, rat(1))).is_ok());
        assert!(JSpace::new(Params::default(), Dimension::Finite(1)).is_err());
    }

    #[test]
    fn extreme_points_of_the_plane() {
        let s = space(2);
        let e2 = VecD::new(Vec2::e2());
        assert_eq!(
            s.extreme_classify(&rat(1), &e2),
            Ok(SphereClass::Extreme(ExtremeKind::North { sign: Sign::Plus }))
        );
        let mid = VecD::new((s.disc().vertex(1) + s.disc().vertex(2)).half());
        assert_eq!(s.extreme_classify(&rat(1), &mid), Ok(SphereClass::OnSphereNotExtreme));
        let v3 = VecD::new(s.disc().vertex(3).scale(&rat(100)));
        assert_eq!(
            s.extreme_classify(&rat(100), &v3),
            Ok(SphereClass::Extreme(ExtremeKind::ChainVertex { k: 3, sign: Sign::Plus }))
        );
        assert_eq!(
            s.extreme_classify(&rat(1), &VecD::new(Vec2::e1())),
            Ok(SphereClass::Extreme(ExtremeKind::ChainVertex { k: 0, sign: Sign::Minus }))
        );
        let lim = VecD::new(-s.disc().limit_point().clone());
        assert_eq!(
            s.extreme_classify(&rat(1), &lim),
            Ok(SphereClass::Extreme(ExtremeKind::Limit { sign: Sign::Minus }))
        );
        assert_eq!(s.extreme_classify(&rat(2), &e2), Ok(SphereClass::NotOnSphere));
        assert_eq!(s.extreme_classify(&rat(0), &e2), Err(GeometryError::NonPositiveRadius));
        let ne = VecD::new(Vec2::new(ratio(1, 2), ratio(1, 2)));
        assert_eq!(s.extreme_classify(&rat(1), &ne), Ok(SphereClass::OnSphereNotExtreme));
    }

    #[test]
    fn limit_point_is_not_extreme_with_infinitesimals() {
        let s = space(2);
        let lim: VecD<RatFunc> = VecD::new(Vec2::from_rational(s.disc().limit_point()));
        assert_eq!(s.extreme_classify(&RatFunc::one(), &lim), Ok(SphereClass::OnSphereNotExtreme));
        let v5: VecD<RatFunc> = VecD::new(Vec2::from_rational(&s.disc().vertex(5)));
        let r = RatFunc::epsilon();
        assert_eq!(
            s.extreme_classify(&r, &v5.scale(&r)),
            Ok(SphereClass::Extreme(ExtremeKind::ChainVertex { k: 5, sign: Sign::Plus }))
        );
    }

    #[test]
    fn w_basis_points_are_extreme_but_not_special() {
        let s = space(4);
        let b = VecD::basis(1, rat(-2));
        assert_eq!(
            s.extreme_classify(&rat(2), &b),
            Ok(SphereClass::Extreme(ExtremeKind::WBasis { index: 1, sign: Sign::Minus }))
        );
        assert!(!s.is_special_extreme(&rat(2), &b));
        let mixed = VecD::from_parts(Vec2::new(rat(0), ratio(1, 2)), [(1, ratio(1, 2))]);
        assert_eq!(s.extreme_classify(&rat(1), &mixed), Ok(SphereClass::OnSphereNotExtreme));
        assert!(s.is_special_extreme(&rat(1), &VecD::new(Vec2::e2())));
    }
}
