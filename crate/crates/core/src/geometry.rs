//! Exact arithmetic over ℚ[√3] and the geometric predicates built on it.
//!
//! Every coordinate that appears in the hexagonal lattice (√3/2, √3/4, 3/4,
//! and their rational multiples) is of the form `a + b·√3` with rational
//! `a`, `b`. The field is closed under `+ - × ÷`, and the sign of an element
//! is decidable with rational arithmetic only, so all predicates here are
//! exact.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};

pub const SQRT3: f64 = 1.732_050_807_568_877_2;

/// An element `a + b·√3` of ℚ[√3].
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ExactScalar {
    a: BigRational,
    b: BigRational,
}

impl ExactScalar {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        ExactScalar { a, b }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(n.into()))
    }

    pub fn from_rational(a: BigRational) -> Self {
        ExactScalar {
            a,
            b: BigRational::zero(),
        }
    }

    /// `num/den` as a rational scalar. Panics on a zero denominator.
    pub fn ratio(num: i64, den: i64) -> Self {
        Self::from_rational(BigRational::new(num.into(), den.into()))
    }

    /// `(num/den)·√3`.
    pub fn sqrt3_ratio(num: i64, den: i64) -> Self {
        ExactScalar {
            a: BigRational::zero(),
            b: BigRational::new(num.into(), den.into()),
        }
    }

    pub fn sqrt3() -> Self {
        Self::sqrt3_ratio(1, 1)
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    pub fn sqrt3_part(&self) -> &BigRational {
        &self.b
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// Exact sign of `a + b√3`.
    pub fn signum(&self) -> Ordering {
        let sa = self.a.cmp(&BigRational::zero());
        let sb = self.b.cmp(&BigRational::zero());
        match (sa, sb) {
            (s, Ordering::Equal) => s,
            (Ordering::Equal, s) => s,
            (x, y) if x == y => x,
            _ => {
                // opposite signs: compare a² with 3b²; equality is impossible
                let a2 = &self.a * &self.a;
                let b2 = &self.b * &self.b * BigRational::from_integer(3.into());
                if a2 > b2 {
                    sa
                } else {
                    sb
                }
            }
        }
    }

    pub fn abs(&self) -> Self {
        if self.signum() == Ordering::Less {
            -self
        } else {
            self.clone()
        }
    }

    pub fn square(&self) -> Self {
        self * self
    }

    /// Multiplicative inverse: `1/(a + b√3) = (a − b√3)/(a² − 3b²)`.
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let norm = &self.a * &self.a - &self.b * &self.b * BigRational::from_integer(3.into());
        Ok(ExactScalar {
            a: &self.a / &norm,
            b: -(&self.b / &norm),
        })
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        ExactScalar {
            a: &self.a * r,
            b: &self.b * r,
        }
    }

    pub fn to_f64(&self) -> f64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        a + b * SQRT3
    }

    /// Exact floor.
    pub fn floor(&self) -> BigInt {
        let guess = self.to_f64().floor();
        let mut n = BigInt::from(guess as i64);
        // the float estimate is off by at most one unit for any sane magnitude
        loop {
            let lo = ExactScalar::from_rational(BigRational::from_integer(n.clone()));
            if lo > *self {
                n -= 1;
                continue;
            }
            let hi = ExactScalar::from_rational(BigRational::from_integer(&n + 1));
            if hi <= *self {
                n += 1;
                continue;
            }
            return n;
        }
    }

    /// Exact ceiling.
    pub fn ceil(&self) -> BigInt {
        -(-self).floor()
    }

    /// Decimal rendering of the numeric value with `digits` fractional digits.
    pub fn to_decimal(&self, digits: usize) -> String {
        format!("{:.*}", digits, self.to_f64())
    }
}

/// Exact three-way comparison.
pub fn cmp(x: &ExactScalar, y: &ExactScalar) -> Ordering {
    (x - y).signum()
}

impl PartialOrd for ExactScalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExactScalar {
    fn cmp(&self, other: &Self) -> Ordering {
        cmp(self, other)
    }
}

impl fmt::Debug for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", self.a),
            (true, false) => write!(f, "{}*sqrt3", self.b),
            (false, false) => write!(f, "{} + {}*sqrt3", self.a, self.b),
        }
    }
}

/// Exact decimal text for terminating rationals (`-12.0625`), `n/d` otherwise.
pub fn format_rational(r: &BigRational) -> String {
    let (n, d) = (r.numer().clone(), r.denom().clone());
    let mut rest = d.clone();
    let (mut twos, mut fives) = (0usize, 0usize);
    let two = BigInt::from(2);
    let five = BigInt::from(5);
    while (&rest % &two).is_zero() {
        rest /= &two;
        twos += 1;
    }
    while (&rest % &five).is_zero() {
        rest /= &five;
        fives += 1;
    }
    if rest != BigInt::from(1) {
        return format!("{}/{}", n, d);
    }
    let digits = twos.max(fives);
    if digits == 0 {
        return n.to_string();
    }
    let scaled = &n * num_traits::pow(BigInt::from(10), digits) / &d;
    let neg = scaled < BigInt::zero();
    let mut body = scaled.magnitude().to_string();
    if body.len() <= digits {
        body = format!("{}{}", "0".repeat(digits + 1 - body.len()), body);
    }
    let (int, frac) = body.split_at(body.len() - digits);
    format!("{}{}.{}", if neg { "-" } else { "" }, int, frac)
}

/// Parses an exact decimal (`-12.0625`), an integer or a fraction (`7/3`).
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let err = || Error::Parse(s.to_string());
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| err())?;
        let d: BigInt = d.trim().parse().map_err(|_| err())?;
        if d.is_zero() {
            return Err(err());
        }
        return Ok(BigRational::new(n, d));
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if (int.is_empty() && frac.is_empty())
        || !int.chars().all(|c| c.is_ascii_digit())
        || !frac.chars().all(|c| c.is_ascii_digit())
    {
        return Err(err());
    }
    let digits = format!("{}{}", int, frac);
    let num: BigInt = digits.parse().map_err(|_| err())?;
    let den = num_traits::pow(BigInt::from(10), frac.len());
    let r = BigRational::new(num, den);
    Ok(if neg { -r } else { r })
}

impl FromStr for ExactScalar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_rational(s).map(ExactScalar::from_rational)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl<'a> $tr<&'a ExactScalar> for &'a ExactScalar {
            type Output = ExactScalar;
            fn $m(self, rhs: &'a ExactScalar) -> ExactScalar {
                let f: fn(&ExactScalar, &ExactScalar) -> ExactScalar = $body;
                f(self, rhs)
            }
        }
        impl $tr<ExactScalar> for ExactScalar {
            type Output = ExactScalar;
            fn $m(self, rhs: ExactScalar) -> ExactScalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a ExactScalar> for ExactScalar {
            type Output = ExactScalar;
            fn $m(self, rhs: &'a ExactScalar) -> ExactScalar {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<ExactScalar> for &'a ExactScalar {
            type Output = ExactScalar;
            fn $m(self, rhs: ExactScalar) -> ExactScalar {
                self.$m(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, |x, y| ExactScalar {
    a: &x.a + &y.a,
    b: &x.b + &y.b
});
forward_binop!(Sub, sub, |x, y| ExactScalar {
    a: &x.a - &y.a,
    b: &x.b - &y.b
});
forward_binop!(Mul, mul, |x, y| ExactScalar {
    a: &x.a * &y.a + &x.b * &y.b * BigRational::from_integer(3.into()),
    b: &x.a * &y.b + &x.b * &y.a
});
forward_binop!(Div, div, |x, y| x
    * y.inverse().expect("division by zero in ExactScalar"));

impl Neg for ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar {
            a: -self.a,
            b: -self.b,
        }
    }
}

impl Neg for &ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar {
            a: -&self.a,
            b: -&self.b,
        }
    }
}

/// A point of the plane; the unit is the smallest disk diameter.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Point {
    pub x: ExactScalar,
    pub y: ExactScalar,
}

impl Point {
    pub fn new(x: ExactScalar, y: ExactScalar) -> Self {
        Point { x, y }
    }

    pub fn from_rationals(x: BigRational, y: BigRational) -> Self {
        Point::new(ExactScalar::from_rational(x), ExactScalar::from_rational(y))
    }

    pub fn parse(x: &str, y: &str) -> Result<Self> {
        Ok(Point::new(x.parse()?, y.parse()?))
    }

    pub fn origin() -> Self {
        Point::default()
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        Point::new(self.x.scale(r), self.y.scale(r))
    }

    pub fn dot(&self, other: &Point) -> ExactScalar {
        &self.x * &other.x + &self.y * &other.y
    }

    pub fn approx(&self) -> (f64, f64) {
        (self.x.to_f64(), self.y.to_f64())
    }
}

impl<'a> Add<&'a Point> for &'a Point {
    type Output = Point;
    fn add(self, o: &'a Point) -> Point {
        Point::new(&self.x + &o.x, &self.y + &o.y)
    }
}

impl<'a> Sub<&'a Point> for &'a Point {
    type Output = Point;
    fn sub(self, o: &'a Point) -> Point {
        Point::new(&self.x - &o.x, &self.y - &o.y)
    }
}

/// A closed disk given by center and diameter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Disk {
    pub center: Point,
    pub diameter: ExactScalar,
}

impl Disk {
    pub fn new(center: Point, diameter: ExactScalar) -> Self {
        Disk { center, diameter }
    }

    /// Ingestion check: `1 ≤ diameter ≤ sigma`.
    pub fn check_sigma(&self, sigma: &ExactScalar) -> Result<()> {
        if self.diameter < ExactScalar::one() || &self.diameter > sigma {
            return Err(Error::DiameterOutOfRange {
                diameter: self.diameter.to_string(),
                sigma: sigma.to_string(),
            });
        }
        Ok(())
    }

    pub fn approx(&self) -> ApproxDisk {
        let (x, y) = self.center.approx();
        ApproxDisk {
            x,
            y,
            d: self.diameter.to_f64(),
        }
    }
}

/// Floating-point shadow of a [`Disk`], used only to filter exact predicates.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ApproxDisk {
    pub x: f64,
    pub y: f64,
    pub d: f64,
}

pub fn sq_dist(p: &Point, q: &Point) -> ExactScalar {
    let dx = &p.x - &q.x;
    let dy = &p.y - &q.y;
    dx.square() + dy.square()
}

/// Closed disks: tangency counts as intersection.
pub fn disks_intersect(d1: &Disk, d2: &Disk) -> bool {
    let reach = (&d1.diameter + &d2.diameter).scale(&BigRational::new(1.into(), 2.into()));
    sq_dist(&d1.center, &d2.center) <= reach.square()
}

/// Whether two disks can become second neighbors once further σ-disks arrive.
pub fn second_neighbor_possible(d1: &Disk, d2: &Disk, sigma: &ExactScalar) -> bool {
    let reach =
        (&d1.diameter + &d2.diameter).scale(&BigRational::new(1.into(), 2.into())) + sigma;
    sq_dist(&d1.center, &d2.center) <= reach.square()
}

/// Relative slack used by floating-point filters before falling back to
/// exact arithmetic.
const FILTER_EPS: f64 = 1e-9;

/// [`disks_intersect`] with a floating-point filter; the answer is exact.
pub fn disks_intersect_filtered(d1: &Disk, a1: &ApproxDisk, d2: &Disk, a2: &ApproxDisk) -> bool {
    let dx = a1.x - a2.x;
    let dy = a1.y - a2.y;
    let dist2 = dx * dx + dy * dy;
    let reach = 0.5 * (a1.d + a2.d);
    let reach2 = reach * reach;
    let slack = FILTER_EPS * (1.0 + dist2 + reach2 + a1.x.abs() + a2.x.abs() + a1.y.abs() + a2.y.abs());
    if dist2 > reach2 + slack {
        false
    } else if dist2 < reach2 - slack {
        true
    } else {
        disks_intersect(d1, d2)
    }
}

/// Squared distance from `p` to the closed segment `[a, b]`.
pub fn point_segment_sq_dist(p: &Point, a: &Point, b: &Point) -> ExactScalar {
    let d = b - a;
    let w = p - a;
    let dd = d.dot(&d);
    if dd.is_zero() {
        return w.dot(&w);
    }
    let wd = w.dot(&d);
    if wd.signum() != Ordering::Greater {
        return w.dot(&w);
    }
    if wd >= dd {
        return sq_dist(p, b);
    }
    w.dot(&w) - wd.square() / dd
}

fn orient(a: &Point, b: &Point, c: &Point) -> Ordering {
    let ab = b - a;
    let ac = c - a;
    (&ab.x * &ac.y - &ab.y * &ac.x).signum()
}

/// Checks that `poly` is a strictly convex counterclockwise polygon.
pub fn check_convex_ccw(poly: &[Point]) -> Result<()> {
    if poly.len() < 3 {
        return Err(Error::DegeneratePolygon(poly.len()));
    }
    let n = poly.len();
    for i in 0..n {
        if orient(&poly[i], &poly[(i + 1) % n], &poly[(i + 2) % n]) != Ordering::Greater {
            return Err(Error::NotConvex);
        }
    }
    Ok(())
}

/// Largest separation along any edge normal in floating point (negative
/// when every axis overlaps), with a tolerance for rounding.
fn sat_gap_f64(p1: &[(f64, f64)], p2: &[(f64, f64)]) -> (f64, f64) {
    let mut gap = f64::NEG_INFINITY;
    let mut scale: f64 = 1.0;
    for poly in [p1, p2] {
        let n = poly.len();
        for i in 0..n {
            let (a, b) = (poly[i], poly[(i + 1) % n]);
            let axis = (a.1 - b.1, b.0 - a.0);
            let proj = |p: &[(f64, f64)]| {
                p.iter().map(|v| v.0 * axis.0 + v.1 * axis.1).fold(
                    (f64::INFINITY, f64::NEG_INFINITY),
                    |(lo, hi), x| (lo.min(x), hi.max(x)),
                )
            };
            let (lo1, hi1) = proj(p1);
            let (lo2, hi2) = proj(p2);
            gap = gap.max(lo2 - hi1).max(lo1 - hi2);
            scale = scale.max(lo1.abs()).max(hi1.abs()).max(lo2.abs()).max(hi2.abs());
        }
    }
    (gap, scale * 1e-9)
}

/// Separating-axis test for closed convex polygons.
pub fn convex_polygons_intersect(p1: &[Point], p2: &[Point]) -> bool {
    let a1: Vec<_> = p1.iter().map(Point::approx).collect();
    let a2: Vec<_> = p2.iter().map(Point::approx).collect();
    let (gap, tol) = sat_gap_f64(&a1, &a2);
    if gap > tol {
        return false;
    }
    if gap < -tol {
        return true;
    }
    for poly in [p1, p2] {
        let n = poly.len();
        for i in 0..n {
            let e = &poly[(i + 1) % n] - &poly[i];
            let axis = Point::new(-&e.y, e.x.clone());
            let (lo1, hi1) = project(p1, &axis);
            let (lo2, hi2) = project(p2, &axis);
            if hi1 < lo2 || hi2 < lo1 {
                return false;
            }
        }
    }
    true
}

fn project(poly: &[Point], axis: &Point) -> (ExactScalar, ExactScalar) {
    let mut it = poly.iter().map(|v| v.dot(axis));
    let first = it.next().expect("non-empty polygon");
    it.fold((first.clone(), first), |(lo, hi), v| {
        let lo = if v < lo { v.clone() } else { lo };
        let hi = if v > hi { v } else { hi };
        (lo, hi)
    })
}

/// Minimum squared distance between two closed convex polygons (0 when they
/// touch or overlap).
pub fn polygon_min_sq_dist(p1: &[Point], p2: &[Point]) -> Result<ExactScalar> {
    for poly in [p1, p2] {
        if poly.len() < 3 {
            return Err(Error::DegeneratePolygon(poly.len()));
        }
    }
    if convex_polygons_intersect(p1, p2) {
        return Ok(ExactScalar::zero());
    }
    let mut best: Option<ExactScalar> = None;
    for (a, b) in [(p1, p2), (p2, p1)] {
        let n = b.len();
        for v in a {
            for i in 0..n {
                let d = point_segment_sq_dist(v, &b[i], &b[(i + 1) % n]);
                if best.as_ref().is_none_or(|cur| d < *cur) {
                    best = Some(d);
                }
            }
        }
    }
    Ok(best.expect("polygons are non-empty"))
}

/// Floating-point twin of [`polygon_min_sq_dist`], for filtering only.
pub fn polygon_min_sq_dist_f64(p1: &[(f64, f64)], p2: &[(f64, f64)]) -> f64 {
    fn seg(p: (f64, f64), a: (f64, f64), b: (f64, f64)) -> f64 {
        let (dx, dy) = (b.0 - a.0, b.1 - a.1);
        let (wx, wy) = (p.0 - a.0, p.1 - a.1);
        let dd = dx * dx + dy * dy;
        let t = if dd == 0.0 {
            0.0
        } else {
            ((wx * dx + wy * dy) / dd).clamp(0.0, 1.0)
        };
        let (ex, ey) = (wx - t * dx, wy - t * dy);
        ex * ex + ey * ey
    }
    fn separated(p1: &[(f64, f64)], p2: &[(f64, f64)]) -> bool {
        for poly in [p1, p2] {
            let n = poly.len();
            for i in 0..n {
                let (a, b) = (poly[i], poly[(i + 1) % n]);
                let axis = (a.1 - b.1, b.0 - a.0);
                let proj = |p: &[(f64, f64)]| {
                    p.iter().map(|v| v.0 * axis.0 + v.1 * axis.1).fold(
                        (f64::INFINITY, f64::NEG_INFINITY),
                        |(lo, hi), x| (lo.min(x), hi.max(x)),
                    )
                };
                let (lo1, hi1) = proj(p1);
                let (lo2, hi2) = proj(p2);
                if hi1 < lo2 || hi2 < lo1 {
                    return true;
                }
            }
        }
        false
    }
    if !separated(p1, p2) {
        return 0.0;
    }
    let mut best = f64::INFINITY;
    for (a, b) in [(p1, p2), (p2, p1)] {
        for &v in a {
            for i in 0..b.len() {
                best = best.min(seg(v, b[i], b[(i + 1) % b.len()]));
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> ExactScalar {
        s.parse().unwrap()
    }

    fn disk(x: &str, y: &str, d: &str) -> Disk {
        Disk::new(Point::parse(x, y).unwrap(), q(d))
    }

    #[test]
    fn sq_dist_examples() {
        let o = Point::origin();
        assert_eq!(sq_dist(&o, &o), ExactScalar::zero());
        let s1 = Point::new(ExactScalar::sqrt3_ratio(1, 2), ExactScalar::zero());
        assert_eq!(sq_dist(&o, &s1), ExactScalar::ratio(3, 4));
        let s2 = Point::new(ExactScalar::sqrt3_ratio(1, 4), ExactScalar::ratio(-3, 4));
        assert_eq!(sq_dist(&o, &s2), ExactScalar::ratio(3, 4));
    }

    #[test]
    fn cmp_examples() {
        assert_eq!(cmp(&ExactScalar::from_int(2), &ExactScalar::sqrt3()), Ordering::Greater);
        assert_eq!(cmp(&ExactScalar::sqrt3(), &q("1.732")), Ordering::Greater);
        assert_eq!(cmp(&ExactScalar::sqrt3(), &ExactScalar::ratio(433, 250)), Ordering::Greater);
        assert_eq!(cmp(&ExactScalar::zero(), &ExactScalar::zero()), Ordering::Equal);
        // 1.7320508075688772 < √3 < 1.7320508075688773
        assert_eq!(cmp(&ExactScalar::sqrt3(), &q("1.7320508075688773")), Ordering::Less);
        assert_eq!(cmp(&ExactScalar::sqrt3(), &q("1.7320508075688772")), Ordering::Greater);
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!("1.2.3".parse::<ExactScalar>().is_err());
        assert!("abc".parse::<ExactScalar>().is_err());
        assert!("".parse::<ExactScalar>().is_err());
        assert_eq!(q("-0.25"), ExactScalar::ratio(-1, 4));
        assert_eq!(q("7/3"), ExactScalar::ratio(7, 3));
        assert_eq!(q(".5"), ExactScalar::ratio(1, 2));
    }

    #[test]
    fn floor_and_ceil() {
        let x = ExactScalar::sqrt3_ratio(2, 3) + ExactScalar::one(); // 2.1547
        assert_eq!(x.floor(), BigInt::from(2));
        assert_eq!(x.ceil(), BigInt::from(3));
        assert_eq!(ExactScalar::from_int(-3).floor(), BigInt::from(-3));
        assert_eq!((-ExactScalar::sqrt3()).floor(), BigInt::from(-2));
        assert_eq!(ExactScalar::from_int(4).ceil(), BigInt::from(4));
    }

    #[test]
    fn inverse_roundtrip() {
        let x = q("2") + ExactScalar::sqrt3_ratio(-5, 7);
        assert_eq!(&x * &x.inverse().unwrap(), ExactScalar::one());
        assert!(ExactScalar::zero().inverse().is_err());
    }

    #[test]
    fn disk_intersection_examples() {
        assert!(disks_intersect(&disk("0", "0", "1"), &disk("1", "0", "1")));
        assert!(!disks_intersect(&disk("0", "0", "1"), &disk("1.01", "0", "1")));
        assert!(disks_intersect(&disk("0", "0", "1"), &disk("0", "1.5", "2")));
    }

    #[test]
    fn second_neighbor_examples() {
        let one = ExactScalar::one();
        assert!(second_neighbor_possible(&disk("0", "0", "1"), &disk("2", "0", "1"), &one));
        assert!(!second_neighbor_possible(&disk("0", "0", "1"), &disk("2.1", "0", "1"), &one));
        assert!(second_neighbor_possible(
            &disk("0", "0", "1"),
            &disk("0", "3", "2"),
            &ExactScalar::from_int(2)
        ));
    }

    fn hexagon(cx: ExactScalar, cy: ExactScalar) -> Vec<Point> {
        let v = [
            (ExactScalar::zero(), ExactScalar::ratio(-1, 2)),
            (ExactScalar::sqrt3_ratio(1, 4), ExactScalar::ratio(-1, 4)),
            (ExactScalar::sqrt3_ratio(1, 4), ExactScalar::ratio(1, 4)),
            (ExactScalar::zero(), ExactScalar::ratio(1, 2)),
            (ExactScalar::sqrt3_ratio(-1, 4), ExactScalar::ratio(1, 4)),
            (ExactScalar::sqrt3_ratio(-1, 4), ExactScalar::ratio(-1, 4)),
        ];
        v.iter()
            .map(|(x, y)| Point::new(x + &cx, y + &cy))
            .collect()
    }

    fn square(x0: i64, y0: i64) -> Vec<Point> {
        [(0, 0), (1, 0), (1, 1), (0, 1)]
            .iter()
            .map(|&(dx, dy)| Point::new(ExactScalar::from_int(x0 + dx), ExactScalar::from_int(y0 + dy)))
            .collect()
    }

    #[test]
    fn polygon_distance_examples() {
        let h0 = hexagon(ExactScalar::zero(), ExactScalar::zero());
        let h1 = hexagon(ExactScalar::sqrt3_ratio(1, 2), ExactScalar::zero());
        assert_eq!(polygon_min_sq_dist(&h0, &h1).unwrap(), ExactScalar::zero());
        let h2 = hexagon(ExactScalar::sqrt3(), ExactScalar::zero());
        assert_eq!(polygon_min_sq_dist(&h0, &h2).unwrap(), ExactScalar::ratio(3, 4));
        assert_eq!(
            polygon_min_sq_dist(&square(0, 0), &square(3, 0)).unwrap(),
            ExactScalar::from_int(4)
        );
        assert_eq!(
            polygon_min_sq_dist(&square(0, 0), &square(0, 0)[..2]),
            Err(Error::DegeneratePolygon(2))
        );
    }

    #[test]
    fn convexity_check() {
        assert!(check_convex_ccw(&square(0, 0)).is_ok());
        let mut cw = square(0, 0);
        cw.reverse();
        assert_eq!(check_convex_ccw(&cw), Err(Error::NotConvex));
    }
}
