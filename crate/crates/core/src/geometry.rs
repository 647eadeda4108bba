//! Exact planar primitives shared by the lattice and tropical modules.
//!
//! Everything here works over integers or `Ratio<i128>`; nothing in a
//! validation path touches floating point.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_rational::Ratio;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

/// Exact rational scalar used for vertex positions and sweep heights.
pub type Rational = Ratio<i128>;

/// An integer vector in the plane (lattice point or momentum).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "[i64; 2]", into = "[i64; 2]")]
pub struct Vec2 {
    pub x: i64,
    pub y: i64,
}

impl Vec2 {
    pub const ZERO: Vec2 = Vec2 { x: 0, y: 0 };

    pub const fn new(x: i64, y: i64) -> Self {
        Vec2 { x, y }
    }

    pub fn cross(self, other: Vec2) -> i128 {
        self.x as i128 * other.y as i128 - self.y as i128 * other.x as i128
    }

    pub fn dot(self, other: Vec2) -> i128 {
        self.x as i128 * other.x as i128 + self.y as i128 * other.y as i128
    }

    pub fn is_zero(self) -> bool {
        self.x == 0 && self.y == 0
    }

    /// Quarter turn clockwise: `(x, y) -> (y, -x)`.
    pub fn rotate_cw(self) -> Vec2 {
        Vec2::new(self.y, -self.x)
    }

    /// Both vectors nonzero and pointing the same way.
    pub fn positively_parallel(self, other: Vec2) -> bool {
        !self.is_zero() && !other.is_zero() && self.cross(other) == 0 && self.dot(other) > 0
    }

    pub fn to_point(self) -> Point {
        Point::from_ints(self.x, self.y)
    }
}

impl From<[i64; 2]> for Vec2 {
    fn from(v: [i64; 2]) -> Self {
        Vec2::new(v[0], v[1])
    }
}

impl From<Vec2> for [i64; 2] {
    fn from(v: Vec2) -> Self {
        [v.x, v.y]
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    fn add(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    fn sub(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x - o.x, self.y - o.y)
    }
}

impl Neg for Vec2 {
    type Output = Vec2;
    fn neg(self) -> Vec2 {
        Vec2::new(-self.x, -self.y)
    }
}

impl fmt::Display for Vec2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

/// A point with exact rational coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub x: Rational,
    pub y: Rational,
}

impl Point {
    pub fn new(x: Rational, y: Rational) -> Self {
        Point { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Point::new(Rational::from_integer(x as i128), Rational::from_integer(y as i128))
    }

    pub fn offset(self, d: Vec2, t: Rational) -> Point {
        Point::new(
            self.x + t * Rational::from_integer(d.x as i128),
            self.y + t * Rational::from_integer(d.y as i128),
        )
    }

    /// `direction . self` as an exact rational.
    pub fn project(self, direction: Vec2) -> Rational {
        self.x * Rational::from_integer(direction.x as i128)
            + self.y * Rational::from_integer(direction.y as i128)
    }

    pub fn to_f64(self) -> (f64, f64) {
        (ratio_to_f64(self.x), ratio_to_f64(self.y))
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

/// Display-only conversion.
pub fn ratio_to_f64(r: Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

fn sub(a: Point, b: Point) -> (Rational, Rational) {
    (a.x - b.x, a.y - b.y)
}

fn cross_r(a: (Rational, Rational), b: (Rational, Rational)) -> Rational {
    a.0 * b.1 - a.1 * b.0
}

/// Sign of the turn `a -> b -> c` (positive = counterclockwise).
pub fn orient(a: Point, b: Point, c: Point) -> Ordering {
    cross_r(sub(b, a), sub(c, a)).cmp(&Rational::zero())
}

/// Twice the signed area of an integer triangle.
pub fn det3(a: Vec2, b: Vec2, c: Vec2) -> i128 {
    (b - a).cross(c - a)
}

/// A segment (`ray == false`, parameter in `[0,1]`) or a ray (`ray == true`,
/// parameter in `[0, inf)`) starting at `origin` with direction `dir`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Piece {
    pub origin: Point,
    pub dir: (Rational, Rational),
    pub ray: bool,
}

impl Piece {
    pub fn segment(a: Point, b: Point) -> Self {
        Piece { origin: a, dir: sub(b, a), ray: false }
    }

    pub fn ray(origin: Point, d: Vec2) -> Self {
        Piece {
            origin,
            dir: (Rational::from_integer(d.x as i128), Rational::from_integer(d.y as i128)),
            ray: true,
        }
    }

    fn at(&self, t: Rational) -> Point {
        Point::new(self.origin.x + t * self.dir.0, self.origin.y + t * self.dir.1)
    }

    fn contains_param(&self, t: Rational) -> bool {
        t >= Rational::zero() && (self.ray || t <= Rational::from_integer(1))
    }
}

/// Intersection of two pieces: nothing, one point, or a collinear overlap of
/// positive length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Meet {
    Disjoint,
    Point(Point),
    Overlap,
}

/// Exact intersection of two segments/rays.
pub fn intersect(p: &Piece, q: &Piece) -> Meet {
    let zero = Rational::zero();
    let denom = cross_r(p.dir, q.dir);
    let w = sub(q.origin, p.origin);
    if !denom.is_zero() {
        let t = cross_r(w, q.dir) / denom;
        let s = cross_r(w, p.dir) / denom;
        if p.contains_param(t) && q.contains_param(s) {
            return Meet::Point(p.at(t));
        }
        return Meet::Disjoint;
    }
    if !cross_r(w, p.dir).is_zero() {
        return Meet::Disjoint;
    }
    // Collinear: project q's extent onto p's parameter line.
    let len2 = p.dir.0 * p.dir.0 + p.dir.1 * p.dir.1;
    let param = |pt: Point| {
        let d = sub(pt, p.origin);
        (d.0 * p.dir.0 + d.1 * p.dir.1) / len2
    };
    let s0 = param(q.origin);
    let same_way = (q.dir.0 * p.dir.0 + q.dir.1 * p.dir.1) > zero;
    let (qlo, qhi): (Rational, Option<Rational>) = if q.ray {
        if same_way {
            (s0, None)
        } else {
            // extends to -inf
            return overlap_with_lower_unbounded(p, s0);
        }
    } else {
        let s1 = param(q.at(Rational::from_integer(1)));
        (s0.min(s1), Some(s0.max(s1)))
    };
    let plo = zero;
    let phi = if p.ray { None } else { Some(Rational::from_integer(1)) };
    let lo = plo.max(qlo);
    let hi = match (phi, qhi) {
        (None, None) => None,
        (Some(a), None) | (None, Some(a)) => Some(a),
        (Some(a), Some(b)) => Some(a.min(b)),
    };
    match hi {
        None => Meet::Overlap,
        Some(h) if h > lo => Meet::Overlap,
        Some(h) if h == lo => Meet::Point(p.at(lo)),
        _ => Meet::Disjoint,
    }
}

fn overlap_with_lower_unbounded(p: &Piece, s_hi: Rational) -> Meet {
    // q covers (-inf, s_hi] of p's line; p covers [0, 1] or [0, inf).
    let zero = Rational::zero();
    if s_hi > zero {
        Meet::Overlap
    } else if s_hi == zero {
        Meet::Point(p.origin)
    } else {
        Meet::Disjoint
    }
}

/// Angular comparison of nonzero integer directions, counterclockwise
/// starting from the positive x axis.
pub fn angle_cmp(a: Vec2, b: Vec2) -> Ordering {
    fn half(v: Vec2) -> u8 {
        if v.y > 0 || (v.y == 0 && v.x > 0) {
            0
        } else {
            1
        }
    }
    half(a).cmp(&half(b)).then_with(|| 0.cmp(&a.cross(b)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: i64, y: i64) -> Point {
        Point::from_ints(x, y)
    }

    #[test]
    fn crossing_segments() {
        let a = Piece::segment(p(0, 0), p(2, 2));
        let b = Piece::segment(p(0, 2), p(2, 0));
        assert_eq!(intersect(&a, &b), Meet::Point(p(1, 1)));
    }

    #[test]
    fn parallel_disjoint_and_overlap() {
        let a = Piece::segment(p(0, 0), p(2, 0));
        let b = Piece::segment(p(0, 1), p(2, 1));
        assert_eq!(intersect(&a, &b), Meet::Disjoint);
        let c = Piece::segment(p(1, 0), p(3, 0));
        assert_eq!(intersect(&a, &c), Meet::Overlap);
        let d = Piece::segment(p(2, 0), p(3, 0));
        assert_eq!(intersect(&a, &d), Meet::Point(p(2, 0)));
    }

    #[test]
    fn rays() {
        let r1 = Piece::ray(p(0, 0), Vec2::new(1, 0));
        let r2 = Piece::ray(p(5, -1), Vec2::new(0, 1));
        assert_eq!(intersect(&r1, &r2), Meet::Point(p(5, 0)));
        let r3 = Piece::ray(p(5, 1), Vec2::new(0, 1));
        assert_eq!(intersect(&r1, &r3), Meet::Disjoint);
        let back = Piece::ray(p(3, 0), Vec2::new(-1, 0));
        assert_eq!(intersect(&r1, &back), Meet::Overlap);
        let away = Piece::ray(p(-1, 0), Vec2::new(-1, 0));
        assert_eq!(intersect(&r1, &away), Meet::Disjoint);
        let touch = Piece::ray(p(0, 0), Vec2::new(-1, 0));
        assert_eq!(intersect(&r1, &touch), Meet::Point(p(0, 0)));
    }

    #[test]
    fn angular_order() {
        let mut dirs = vec![
            Vec2::new(0, -1),
            Vec2::new(-1, 0),
            Vec2::new(1, 1),
            Vec2::new(1, 0),
            Vec2::new(1, -1),
        ];
        dirs.sort_by(|a, b| angle_cmp(*a, *b));
        assert_eq!(
            dirs,
            vec![
                Vec2::new(1, 0),
                Vec2::new(1, 1),
                Vec2::new(-1, 0),
                Vec2::new(0, -1),
                Vec2::new(1, -1)
            ]
        );
    }
}
