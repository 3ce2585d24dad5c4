//! The normed plane `J` and its 1-sums `J^d`.
//!
//! The unit disc `D` is cut out by the lines through consecutive vertices
//! `v_k` of a convex chain in the north-west quadrant, the lines `y = 1`
//! and `x + y = 1`, and their reflections through the origin. The chain
//! starts at `v_0 = -e1`, climbs vertically to `v_1 = (-1, 1 - b)` and then
//! follows steps `((1 - b_k) a_k, b_k a_k)`, accumulating at
//! `v_inf = (a - b - 1, 1)`.
//!
//! Norms are evaluated analytically. A nonzero vector is reflected into the
//! closed upper half plane and the ray through it is classified by its
//! gradient against the vertex ray gradients `h_k = y_k / x_k`:
//!
//! * on the x-axis the norm is `|x|`;
//! * in the north-east quadrant it is the 1-norm `x + y`;
//! * beyond every vertex ray (east of `v_inf` on `y = 1`, or
//!   infinitesimally west of it) it is `y`;
//! * otherwise the ray crosses exactly one chain segment and the norm is
//!   that segment's supporting functional.

mod jd;

pub use jd::{rational_point, Dimension, ExtremeKind, JSpace, Sign, SphereClass, VecD};

use alloc::vec;
use alloc::vec::Vec;
use core::cell::RefCell;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Neg, Sub};

use crate::constants::{Params, Sequences};
use crate::field::{rat, OrderedField, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GeometryError {
    ZeroVector,
    NonPositiveRadius,
    Dimension(usize),
    /// A W-coordinate index outside `1..=d-2`.
    WIndex(usize),
}

impl fmt::Display for GeometryError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeometryError::ZeroVector => f.write_str("the zero vector spans no ray"),
            GeometryError::NonPositiveRadius => f.write_str("sphere radius must be positive"),
            GeometryError::Dimension(d) => write!(f, "dimension {d} is below 2"),
            GeometryError::WIndex(i) => write!(f, "W-coordinate index {i} is out of range"),
        }
    }
}

/// Coordinates with respect to `e1`, `e2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Vec2<F> {
    pub x: F,
    pub y: F,
}

impl<F: OrderedField> Vec2<F> {
    pub fn new(x: F, y: F) -> Self {
        Vec2 { x, y }
    }

    pub fn zero() -> Self {
        Vec2::new(F::zero(), F::zero())
    }

    pub fn e1() -> Self {
        Vec2::new(F::one(), F::zero())
    }

    pub fn e2() -> Self {
        Vec2::new(F::zero(), F::one())
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn scale(&self, c: &F) -> Self {
        Vec2::new(self.x.clone() * c.clone(), self.y.clone() * c.clone())
    }

    pub fn from_rational(v: &Vec2<Rational>) -> Self {
        Vec2::new(F::from_rational(&v.x), F::from_rational(&v.y))
    }

    /// `self / 2`.
    pub fn half(&self) -> Self {
        let two = F::from_int(2);
        Vec2::new(self.x.clone() / two.clone(), self.y.clone() / two)
    }
}

impl<F: OrderedField> Add for Vec2<F> {
    type Output = Vec2<F>;
    fn add(self, rhs: Self) -> Self {
        Vec2::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl<F: OrderedField> Sub for Vec2<F> {
    type Output = Vec2<F>;
    fn sub(self, rhs: Self) -> Self {
        Vec2::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl<F: OrderedField> Neg for Vec2<F> {
    type Output = Vec2<F>;
    fn neg(self) -> Self {
        Vec2::new(-self.x, -self.y)
    }
}

impl<F: fmt::Display> fmt::Display for Vec2<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// A face of the upper half of the unit circle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FacetKind {
    /// The segment `[v_k, v_{k+1}]`.
    ChainSegment(usize),
    /// The part of `y = 1` east of every vertex.
    EastLimit,
    /// The segment `[e1, e2]`.
    NorthEastEdge,
    /// The x-axis vertex `e1`, shared by `[e1, e2]` and `-[v_0, v_1]`.
    SouthAxisPoint,
}

/// A face of the unit circle; `mirrored` faces are reflections through the
/// origin of faces in the upper half.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Facet {
    pub kind: FacetKind,
    pub mirrored: bool,
}

/// Which branch of the ray analysis applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RayCase {
    /// `h_k > g >= h_{k+1}`.
    Chain,
    /// `g < h_k` for every `k`.
    EastLimit,
    /// `g >= 0` or vertical.
    NorthEast,
    /// On the x-axis.
    Axis,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RayClass {
    pub facet: Facet,
    pub case: RayCase,
}

/// A defining half-plane of `D` or its reflection.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HalfPlane {
    Chain(usize),
    /// `y <= 1`.
    A,
    /// `x + y <= 1`.
    B,
}

/// Endpoints and supporting functional of one upper-half face; points `w`
/// of the face satisfy `support.x * w.x + support.y * w.y = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FacetInfo {
    pub kind: FacetKind,
    pub from: Vec2<Rational>,
    pub to: Vec2<Rational>,
    pub support: Vec2<Rational>,
    /// `None` for vertical faces.
    pub gradient: Option<Rational>,
}

#[derive(Debug, Default)]
struct Chain {
    vertices: Vec<Vec2<Rational>>,
    // h_k
    ray_slopes: Vec<Rational>,
    // supporting functional of [v_k, v_{k+1}]
    supports: Vec<Vec2<Rational>>,
}

/// The unit disc of `J` with lazily extended vertex data.
///
/// Vertex data grows behind a `RefCell`, so a disc is confined to one
/// thread; computed prefixes never change.
#[derive(Debug)]
pub struct UnitDisc {
    params: Params,
    seq: RefCell<Sequences>,
    chain: RefCell<Chain>,
    limit: Vec2<Rational>,
    limit_slope: Rational,
}

impl UnitDisc {
    pub fn new(params: Params) -> UnitDisc {
        let one = rat(1);
        let limit = Vec2::new(params.a() - params.b() - &one, one.clone());
        let limit_slope = limit.x.recip();
        let chain = Chain {
            vertices: vec![
                Vec2::new(-one.clone(), rat(0)),
                Vec2::new(-one.clone(), &one - params.b()),
            ],
            ..Chain::default()
        };
        UnitDisc {
            seq: RefCell::new(Sequences::new(params.clone())),
            params,
            chain: RefCell::new(chain),
            limit,
            limit_slope,
        }
    }

    pub fn params(&self) -> &Params {
        &self.params
    }

    /// Runs `f` on the memoized sequences, extending them as needed.
    pub fn with_sequences<R>(&self, f: impl FnOnce(&mut Sequences) -> R) -> R {
        f(&mut self.seq.borrow_mut())
    }

    fn ensure_vertices(&self, k: usize) {
        let mut chain = self.chain.borrow_mut();
        let mut seq = self.seq.borrow_mut();
        while chain.vertices.len() <= k {
            let j = chain.vertices.len() - 1;
            let a = seq.a(j);
            let b = seq.b(j);
            let last = chain.vertices.last().unwrap();
            let next = Vec2::new(&last.x + (rat(1) - &b) * &a, &last.y + &b * &a);
            chain.vertices.push(next);
        }
    }

    fn ensure_slopes(&self, k: usize) {
        self.ensure_vertices(k + 1);
        let mut chain = self.chain.borrow_mut();
        while chain.ray_slopes.len() <= k {
            let j = chain.ray_slopes.len();
            let v = &chain.vertices[j];
            let h = &v.y / &v.x;
            let (from, to) = (&chain.vertices[j], &chain.vertices[j + 1]);
            let (dx, dy) = (&to.x - &from.x, &to.y - &from.y);
            let c = &dy * &from.x - &dx * &from.y;
            let support = Vec2::new(&dy / &c, -(&dx / &c));
            chain.ray_slopes.push(h);
            chain.supports.push(support);
        }
    }

    /// `v_k`.
    pub fn vertex(&self, k: usize) -> Vec2<Rational> {
        self.ensure_vertices(k);
        self.chain.borrow().vertices[k].clone()
    }

    /// Gradient `h_k` of the ray through `v_k`.
    pub fn ray_slope(&self, k: usize) -> Rational {
        self.ensure_slopes(k);
        self.chain.borrow().ray_slopes[k].clone()
    }

    /// Supporting functional of the segment `[v_k, v_{k+1}]`.
    pub fn support(&self, k: usize) -> Vec2<Rational> {
        self.ensure_slopes(k);
        self.chain.borrow().supports[k].clone()
    }

    /// Gradient `g_k` of the segment `[v_k, v_{k+1}]`; `None` for the
    /// vertical segment `k = 0`.
    pub fn chord_slope(&self, k: usize) -> Option<Rational> {
        if k == 0 {
            return None;
        }
        let b = self.seq.borrow_mut().b(k);
        Some(&b / (rat(1) - &b))
    }

    /// `v_inf = (a - b - 1, 1)`.
    pub fn limit_point(&self) -> &Vec2<Rational> {
        &self.limit
    }

    /// `h_inf = 1 / (a - b - 1)`.
    pub fn limit_slope(&self) -> &Rational {
        &self.limit_slope
    }

    /// Index `k` with `h_k > g >= h_{k+1}`. Requires `g < 0` and `g - h_inf`
    /// to have positive standard part, so that some `h_j` falls below `g`.
    fn find_segment<F: OrderedField>(&self, g: &F) -> usize {
        let below = |j: usize| F::from_rational(&self.ray_slope(j)) <= *g;
        let mut lo = 0;
        let mut hi = 1;
        while !below(hi) {
            lo = hi;
            hi *= 2;
        }
        // h_lo > g >= h_hi
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            if below(mid) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        lo
    }

    /// Classifies the ray through `v`.
    pub fn classify_ray<F: OrderedField>(&self, v: &Vec2<F>) -> Result<RayClass, GeometryError> {
        if v.is_zero() {
            return Err(GeometryError::ZeroVector);
        }
        let mirrored = v.y.is_negative() || (v.y.is_zero() && v.x.is_negative());
        let u = if mirrored { -v.clone() } else { v.clone() };
        let (kind, case) = self.classify_upper(&u);
        Ok(RayClass {
            facet: Facet { kind, mirrored },
            case,
        })
    }

    // `u` is nonzero with y > 0, or y = 0 and x > 0
    fn classify_upper<F: OrderedField>(&self, u: &Vec2<F>) -> (FacetKind, RayCase) {
        if u.y.is_zero() {
            return (FacetKind::SouthAxisPoint, RayCase::Axis);
        }
        if !u.x.is_negative() {
            return (FacetKind::NorthEastEdge, RayCase::NorthEast);
        }
        let g = u.y.clone() / u.x.clone();
        if self.beyond_chain(&g) {
            return (FacetKind::EastLimit, RayCase::EastLimit);
        }
        (FacetKind::ChainSegment(self.find_segment(&g)), RayCase::Chain)
    }

    // g < h_k for all k: either g <= h_inf, or g exceeds h_inf by an
    // infinitesimal (h_k - h_inf is a positive rational for every k)
    fn beyond_chain<F: OrderedField>(&self, g: &F) -> bool {
        let d = g.clone() - F::from_rational(&self.limit_slope);
        if !d.is_positive() {
            return true;
        }
        d.standard_part().is_some_and(|s| s == rat(0))
    }

    /// The gauge `||v||` of `D`.
    pub fn norm<F: OrderedField>(&self, v: &Vec2<F>) -> F {
        let Ok(class) = self.classify_ray(v) else {
            return F::zero();
        };
        let u = if class.facet.mirrored { -v.clone() } else { v.clone() };
        match class.facet.kind {
            FacetKind::SouthAxisPoint => u.x,
            FacetKind::NorthEastEdge => u.x + u.y,
            FacetKind::EastLimit => u.y,
            FacetKind::ChainSegment(k) => apply(&self.support(k), &u),
        }
    }

    pub fn contains<F: OrderedField>(&self, v: &Vec2<F>) -> bool {
        self.norm(v) <= F::one()
    }

    /// Checks `v` against the defining half-planes `H_0..=H_depth`, `A`,
    /// `B` and their reflections directly, returning the first violated
    /// one. For points of `D` this is always `None`; for points outside
    /// `D` a violation appears once `depth` is large enough.
    pub fn truncated_violation<F: OrderedField>(&self, v: &Vec2<F>, depth: usize) -> Option<(HalfPlane, bool)> {
        let one = F::one();
        let check = |value: F, plane: HalfPlane| -> Option<(HalfPlane, bool)> {
            if value > one {
                Some((plane, false))
            } else if -value > one {
                Some((plane, true))
            } else {
                None
            }
        };
        check(v.y.clone(), HalfPlane::A)
            .or_else(|| check(v.x.clone() + v.y.clone(), HalfPlane::B))
            .or_else(|| (0..=depth).find_map(|k| check(apply(&self.support(k), v), HalfPlane::Chain(k))))
    }

    /// The first `count` chain facets followed by the east-limit and
    /// north-east faces.
    pub fn facets(&self, count: usize) -> Vec<FacetInfo> {
        let mut out: Vec<FacetInfo> = (0..count)
            .map(|k| FacetInfo {
                kind: FacetKind::ChainSegment(k),
                from: self.vertex(k),
                to: self.vertex(k + 1),
                support: self.support(k),
                gradient: self.chord_slope(k),
            })
            .collect();
        out.push(FacetInfo {
            kind: FacetKind::EastLimit,
            from: self.limit.clone(),
            to: Vec2::e2(),
            support: Vec2::new(rat(0), rat(1)),
            gradient: Some(rat(0)),
        });
        out.push(FacetInfo {
            kind: FacetKind::NorthEastEdge,
            from: Vec2::e1(),
            to: Vec2::e2(),
            support: Vec2::new(rat(1), rat(1)),
            gradient: Some(rat(-1)),
        });
        out
    }

    /// Compares the gradient of the ray through `u` (upper half, `x < 0`)
    /// with `h_k`.
    pub(crate) fn ray_cmp<F: OrderedField>(&self, u: &Vec2<F>, k: usize) -> Ordering {
        let g = u.y.clone() / u.x.clone();
        g.cmp(&F::from_rational(&self.ray_slope(k)))
    }

    pub(crate) fn is_limit_ray<F: OrderedField>(&self, u: &Vec2<F>) -> bool {
        let g = u.y.clone() / u.x.clone();
        g == F::from_rational(&self.limit_slope)
    }
}

fn apply<F: OrderedField>(functional: &Vec2<Rational>, v: &Vec2<F>) -> F {
    F::from_rational(&functional.x) * v.x.clone() + F::from_rational(&functional.y) * v.y.clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{ratio, One, RatFunc};

    fn disc() -> UnitDisc {
        UnitDisc::new(Params::default())
    }

    fn q(x: i64, y: i64) -> Vec2<Rational> {
        Vec2::new(rat(x), rat(y))
    }

    #[test]
    fn first_vertices() {
        let d = disc();
        assert_eq!(d.vertex(0), q(-1, 0));
        assert_eq!(d.vertex(1), Vec2::new(rat(-1), ratio(51767, 51840)));
        for k in 1..40 {
            let (u, w) = (d.vertex(k), d.vertex(k + 1));
            assert!(w.x > u.x && w.y > u.y);
        }
    }

    #[test]
    fn slopes_decrease_to_limit() {
        let d = disc();
        assert_eq!(d.ray_slope(0), rat(0));
        for k in 0..60 {
            assert!(d.ray_slope(k) > d.ray_slope(k + 1));
            assert!(d.ray_slope(k + 1) > *d.limit_slope());
        }
        for k in 1..60 {
            assert!(d.chord_slope(k).unwrap() > d.chord_slope(k + 1).unwrap());
            assert!(d.chord_slope(k + 1).unwrap() > rat(0));
        }
    }

    #[test]
    fn ray_cases() {
        let d = disc();
        let c = d.classify_ray(&q(1, 1)).unwrap();
        assert_eq!(c.case, RayCase::NorthEast);
        assert_eq!(c.facet, Facet { kind: FacetKind::NorthEastEdge, mirrored: false });

        let c = d.classify_ray(d.limit_point()).unwrap();
        assert_eq!(c.case, RayCase::EastLimit);

        let mid = d.vertex(1) + d.vertex(2);
        let c = d.classify_ray(&mid).unwrap();
        assert_eq!(c.facet.kind, FacetKind::ChainSegment(1));

        let c = d.classify_ray(&-mid).unwrap();
        assert_eq!(c.facet, Facet { kind: FacetKind::ChainSegment(1), mirrored: true });

        assert_eq!(d.classify_ray(&q(0, 0)), Err(GeometryError::ZeroVector));
        assert_eq!(d.classify_ray(&q(-3, 0)).unwrap().facet, Facet { kind: FacetKind::SouthAxisPoint, mirrored: true });
    }

    #[test]
    fn vertex_rays_belong_to_the_segment_ending_there() {
        let d = disc();
        for k in 1..30 {
            let c = d.classify_ray(&d.vertex(k)).unwrap();
            assert_eq!(c.facet.kind, FacetKind::ChainSegment(k - 1), "vertex {k}");
        }
    }

    #[test]
    fn basic_norms() {
        let d = disc();
        assert_eq!(d.norm(&q(0, 0)), rat(0));
        assert_eq!(d.norm(&q(1, 1)), rat(2));
        assert_eq!(d.norm(&q(-3, 0)), rat(3));
        assert_eq!(d.norm(&q(0, -5)), rat(5));
        assert!(d.norm(&q(-1, 1)) > rat(1));
        for k in 1..50 {
            let step = d.vertex(k + 1) - d.vertex(k);
            assert_eq!(d.norm(&step), d.with_sequences(|s| s.a(k)));
            assert_eq!(d.norm(&d.vertex(k)), rat(1));
        }
        assert_eq!(d.norm(d.limit_point()), rat(1));
    }

    #[test]
    fn membership() {
        let d = disc();
        assert!(d.contains(&q(0, 0)));
        assert!(!d.contains(&q(-1, 1)));
        assert!(d.contains(&Vec2::new(ratio(-1, 10), rat(1))));
        assert!(!d.contains(&Vec2::new(ratio(-1, 10), ratio(11, 10))));
    }

    #[test]
    fn infinitesimally_west_of_the_limit_point() {
        let d = disc();
        let eps = RatFunc::epsilon();
        let west = Vec2::new(RatFunc::from_rational(&d.limit_point().x) - eps, RatFunc::one());
        assert_eq!(d.classify_ray(&west).unwrap().case, RayCase::EastLimit);
        assert!(d.contains(&west));
        let far_west = Vec2::new(d.limit_point().x.clone() - ratio(1, 1000), rat(1));
        assert!(!d.contains(&far_west));
    }

    #[test]
    fn truncated_check_agrees_on_small_vectors() {
        let d = disc();
        for (x, y) in [(0, 0), (1, 0), (-1, 1), (1, 1), (2, -1), (-1, -1)] {
            let v = Vec2::new(ratio(x, 2), ratio(y, 2));
            assert_eq!(d.contains(&v), d.truncated_violation(&v, 40).is_none(), "{v}");
        }
    }

    #[test]
    fn facet_dump() {
        let d = disc();
        let facets = d.facets(3);
        assert_eq!(facets.len(), 5);
        assert_eq!(facets[0].support, Vec2::new(rat(-1), rat(0)));
        assert_eq!(facets[0].gradient, None);
        for f in &facets[..3] {
            assert_eq!(apply(&f.support, &f.from), rat(1));
            assert_eq!(apply(&f.support, &f.to), rat(1));
        }
    }
}
