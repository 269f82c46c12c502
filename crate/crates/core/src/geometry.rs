//! Exact rational coordinates and integer geometric predicates.
//!
//! Drawings carry [`Rational`] coordinates. Before checking, a verifier maps
//! every coordinate onto a common integer grid (multiplying by the least
//! common multiple of all denominators); predicates then run on `i128` when
//! the grid fits in 60 bits and on `BigInt` otherwise.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

pub type Rational = BigRational;

/// `n / d` as an exact rational.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Canonical `p/q` text (denominator always present and positive).
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn parse_rational(s: &str) -> Result<Rational, Error> {
    let bad = || Error::BadRational(s.to_string());
    let t = s.trim();
    let (n, d) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let n = BigInt::from_str(n).map_err(|_| bad())?;
    let d = BigInt::from_str(d).map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

/// An exact point in the plane.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub x: Rational,
    pub y: Rational,
}

impl Point {
    pub fn new(x: Rational, y: Rational) -> Self {
        Point { x, y }
    }

    pub fn ints(x: i64, y: i64) -> Self {
        Point::new(int(x), int(y))
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (
            self.x.to_f64().unwrap_or(f64::NAN),
            self.y.to_f64().unwrap_or(f64::NAN),
        )
    }

    /// Point at L∞-distance `step` from `self` towards `target`.
    pub fn step_towards(&self, target: &Point, step: &Rational) -> Point {
        let dx = &target.x - &self.x;
        let dy = &target.y - &self.y;
        let norm = dx.abs().max(dy.abs());
        if norm.is_zero() {
            return self.clone();
        }
        let k = step / norm;
        Point::new(&self.x + &dx * &k, &self.y + &dy * &k)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl Serialize for Point {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [format_rational(&self.x), format_rational(&self.y)].serialize(s)
    }
}

impl<'de> Deserialize<'de> for Point {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let [x, y] = <[String; 2]>::deserialize(d)?;
        let x = parse_rational(&x).map_err(serde::de::Error::custom)?;
        let y = parse_rational(&y).map_err(serde::de::Error::custom)?;
        Ok(Point { x, y })
    }
}

/// Axis-parallel rectangle with `xmin < xmax`, `ymin < ymax`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rect {
    pub xmin: Rational,
    pub xmax: Rational,
    pub ymin: Rational,
    pub ymax: Rational,
}

impl Rect {
    pub fn is_proper(&self) -> bool {
        self.xmin < self.xmax && self.ymin < self.ymax
    }

    /// Bounding box of a non-empty point set, grown by `margin` on each side.
    pub fn around<'a>(
        points: impl IntoIterator<Item = &'a Point>,
        margin: &Rational,
    ) -> Option<Rect> {
        let mut it = points.into_iter();
        let first = it.next()?;
        let mut r = Rect {
            xmin: first.x.clone(),
            xmax: first.x.clone(),
            ymin: first.y.clone(),
            ymax: first.y.clone(),
        };
        for p in it {
            if p.x < r.xmin {
                r.xmin = p.x.clone();
            }
            if p.x > r.xmax {
                r.xmax = p.x.clone();
            }
            if p.y < r.ymin {
                r.ymin = p.y.clone();
            }
            if p.y > r.ymax {
                r.ymax = p.y.clone();
            }
        }
        r.xmin -= margin;
        r.xmax += margin;
        r.ymin -= margin;
        r.ymax += margin;
        Some(r)
    }

    pub fn contains_strictly(&self, p: &Point) -> bool {
        self.xmin < p.x && p.x < self.xmax && self.ymin < p.y && p.y < self.ymax
    }

    pub fn mirrored_x(&self, axis_sum: &Rational) -> Rect {
        Rect {
            xmin: axis_sum - &self.xmax,
            xmax: axis_sum - &self.xmin,
            ymin: self.ymin.clone(),
            ymax: self.ymax.clone(),
        }
    }
}

impl Serialize for Rect {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [
            format_rational(&self.xmin),
            format_rational(&self.xmax),
            format_rational(&self.ymin),
            format_rational(&self.ymax),
        ]
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Rect {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = <[String; 4]>::deserialize(d)?;
        let p = |s: &String| parse_rational(s).map_err(serde::de::Error::custom);
        Ok(Rect {
            xmin: p(&v[0])?,
            xmax: p(&v[1])?,
            ymin: p(&v[2])?,
            ymax: p(&v[3])?,
        })
    }
}

/// Integer coordinate type used by the predicates.
pub trait Coord:
    Clone + Ord + Zero + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Send + Sync
{
}

impl Coord for i128 {}
impl Coord for BigInt {}

pub type IPoint<T> = [T; 2];

/// Sign of the cross product `(b - a) × (c - a)`.
pub fn orient<T: Coord>(a: &IPoint<T>, b: &IPoint<T>, c: &IPoint<T>) -> Ordering {
    let l = (b[0].clone() - a[0].clone()) * (c[1].clone() - a[1].clone());
    let r = (b[1].clone() - a[1].clone()) * (c[0].clone() - a[0].clone());
    l.cmp(&r)
}

/// For `p` collinear with `a`-`b`: whether it lies on the closed segment.
fn within_box<T: Coord>(p: &IPoint<T>, a: &IPoint<T>, b: &IPoint<T>) -> bool {
    (0..2).all(|k| {
        let (lo, hi) = if a[k] <= b[k] {
            (&a[k], &b[k])
        } else {
            (&b[k], &a[k])
        };
        lo <= &p[k] && &p[k] <= hi
    })
}

pub fn on_closed_segment<T: Coord>(p: &IPoint<T>, a: &IPoint<T>, b: &IPoint<T>) -> bool {
    orient(a, b, p) == Ordering::Equal && within_box(p, a, b)
}

/// Whether closed segments `ab` and `cd` share at least one point.
pub fn segments_intersect<T: Coord>(
    a: &IPoint<T>,
    b: &IPoint<T>,
    c: &IPoint<T>,
    d: &IPoint<T>,
) -> bool {
    let o1 = orient(a, b, c);
    let o2 = orient(a, b, d);
    let o3 = orient(c, d, a);
    let o4 = orient(c, d, b);
    if o1 != o2
        && o3 != o4
        && o1 != Ordering::Equal
        && o2 != Ordering::Equal
        && o3 != Ordering::Equal
        && o4 != Ordering::Equal
    {
        return true;
    }
    (o1 == Ordering::Equal && within_box(c, a, b))
        || (o2 == Ordering::Equal && within_box(d, a, b))
        || (o3 == Ordering::Equal && within_box(a, c, d))
        || (o4 == Ordering::Equal && within_box(b, c, d))
}

/// Two segments `p-q1` and `p-q2` sharing endpoint `p` meet elsewhere iff
/// they are collinear and point the same way.
pub fn overlap_at_shared_endpoint<T: Coord>(p: &IPoint<T>, q1: &IPoint<T>, q2: &IPoint<T>) -> bool {
    if orient(p, q1, q2) != Ordering::Equal {
        return false;
    }
    let dot = (q1[0].clone() - p[0].clone()) * (q2[0].clone() - p[0].clone())
        + (q1[1].clone() - p[1].clone()) * (q2[1].clone() - p[1].clone());
    dot > T::zero()
}

/// Integer rectangle `[xmin, xmax, ymin, ymax]`.
pub type IRect<T> = [T; 4];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Inside,
    Boundary,
    Outside,
}

pub fn locate<T: Coord>(p: &IPoint<T>, r: &IRect<T>) -> Side {
    let inside_x = r[0] < p[0] && p[0] < r[1];
    let inside_y = r[2] < p[1] && p[1] < r[3];
    if inside_x && inside_y {
        return Side::Inside;
    }
    let closed = r[0] <= p[0] && p[0] <= r[1] && r[2] <= p[1] && p[1] <= r[3];
    if closed {
        Side::Boundary
    } else {
        Side::Outside
    }
}

pub fn rect_corners<T: Coord>(r: &IRect<T>) -> [IPoint<T>; 4] {
    [
        [r[0].clone(), r[2].clone()],
        [r[1].clone(), r[2].clone()],
        [r[1].clone(), r[3].clone()],
        [r[0].clone(), r[3].clone()],
    ]
}

/// Whether a segment meets the closed rectangle.
pub fn segment_meets_rect<T: Coord>(a: &IPoint<T>, b: &IPoint<T>, r: &IRect<T>) -> bool {
    if locate(a, r) != Side::Outside || locate(b, r) != Side::Outside {
        return true;
    }
    let c = rect_corners(r);
    (0..4).any(|k| segments_intersect(a, b, &c[k], &c[(k + 1) % 4]))
}

/// `inner` lies in the open interior of `outer`.
pub fn rect_strictly_inside<T: Coord>(inner: &IRect<T>, outer: &IRect<T>) -> bool {
    outer[0] < inner[0] && inner[1] < outer[1] && outer[2] < inner[2] && inner[3] < outer[3]
}

/// Closed rectangles share no point.
pub fn rects_disjoint<T: Coord>(a: &IRect<T>, b: &IRect<T>) -> bool {
    a[1] < b[0] || b[1] < a[0] || a[3] < b[2] || b[3] < a[2]
}

/// Common integer grid for a set of rationals.
#[derive(Clone, Debug)]
pub struct Grid {
    scale: BigInt,
}

impl Grid {
    pub fn for_values<'a>(values: impl IntoIterator<Item = &'a Rational>) -> Grid {
        let mut scale = BigInt::one();
        for v in values {
            scale = scale.lcm(v.denom());
        }
        Grid { scale }
    }

    pub fn scale(&self, v: &Rational) -> BigInt {
        v.numer() * (&self.scale / v.denom())
    }
}

/// Converts scaled coordinates to `i128` when all fit in 60 bits.
pub fn narrow(values: &[BigInt]) -> Option<Vec<i128>> {
    let limit = BigInt::from(1i64 << 60);
    values
        .iter()
        .map(|v| if v.abs() < limit { v.to_i128() } else { None })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: i128, y: i128) -> IPoint<i128> {
        [x, y]
    }

    #[test]
    fn rational_text_roundtrip() {
        let r = rat(-6, 4);
        assert_eq!(format_rational(&r), "-3/2");
        assert_eq!(parse_rational("-3/2").unwrap(), r);
        assert_eq!(parse_rational("5").unwrap(), int(5));
        assert_eq!(format_rational(&int(5)), "5/1");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn proper_crossing() {
        assert!(segments_intersect(&p(0, 0), &p(2, 2), &p(0, 2), &p(2, 0)));
        assert!(!segments_intersect(&p(0, 0), &p(1, 0), &p(0, 1), &p(1, 1)));
    }

    #[test]
    fn touching_and_collinear() {
        assert!(segments_intersect(&p(0, 0), &p(2, 0), &p(1, 0), &p(1, 5)));
        assert!(segments_intersect(&p(0, 0), &p(2, 0), &p(1, 0), &p(3, 0)));
        assert!(!segments_intersect(&p(0, 0), &p(1, 0), &p(2, 0), &p(3, 0)));
        assert!(overlap_at_shared_endpoint(&p(0, 0), &p(2, 0), &p(1, 0)));
        assert!(!overlap_at_shared_endpoint(&p(0, 0), &p(2, 0), &p(-1, 0)));
        assert!(!overlap_at_shared_endpoint(&p(0, 0), &p(2, 0), &p(0, 1)));
    }

    #[test]
    fn rect_relations() {
        let outer = [0i128, 10, 0, 10];
        let inner = [1i128, 9, 1, 9];
        assert!(rect_strictly_inside(&inner, &outer));
        assert!(!rect_strictly_inside(&outer, &inner));
        assert!(!rects_disjoint(&inner, &outer));
        assert!(rects_disjoint(&[0i128, 1, 0, 1], &[2, 3, 0, 1]));
        assert!(!rects_disjoint(&[0i128, 1, 0, 1], &[1, 3, 0, 1]));
        assert_eq!(locate(&p(5, 5), &outer), Side::Inside);
        assert_eq!(locate(&p(0, 5), &outer), Side::Boundary);
        assert_eq!(locate(&p(-1, 5), &outer), Side::Outside);
        assert!(segment_meets_rect(&p(-1, 5), &p(11, 5), &outer));
        assert!(!segment_meets_rect(&p(-1, 11), &p(11, 12), &outer));
    }

    #[test]
    fn big_and_small_predicates_agree() {
        let pts = [(0, 0), (3, 7), (-2, 5), (4, -1)];
        let small: Vec<IPoint<i128>> = pts.iter().map(|&(x, y)| [x, y]).collect();
        let big: Vec<IPoint<BigInt>> = pts
            .iter()
            .map(|&(x, y)| [BigInt::from(x), BigInt::from(y)])
            .collect();
        assert_eq!(
            segments_intersect(&small[0], &small[1], &small[2], &small[3]),
            segments_intersect(&big[0], &big[1], &big[2], &big[3])
        );
        assert_eq!(
            orient(&small[0], &small[1], &small[2]),
            orient(&big[0], &big[1], &big[2])
        );
    }

    #[test]
    fn grid_scaling() {
        let vals = [rat(1, 2), rat(1, 3), int(2)];
        let g = Grid::for_values(vals.iter());
        let scaled: Vec<BigInt> = vals.iter().map(|v| g.scale(v)).collect();
        assert_eq!(narrow(&scaled).unwrap(), vec![3, 2, 12]);
    }

    #[test]
    fn step_is_linf_normalised() {
        let a = Point::ints(0, 0);
        let b = Point::ints(4, -2);
        let s = a.step_towards(&b, &rat(1, 8));
        assert_eq!(s, Point::new(rat(1, 8), rat(-1, 16)));
    }
}
