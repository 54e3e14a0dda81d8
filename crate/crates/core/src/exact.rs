//! Exact integer primitives shared by every other module.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Arbitrary precision signed integer.
pub type Int = BigInt;

/// Machine-sized lattice point used on the hot enumeration paths.
pub type Point = [i64; 2];

/// Largest admissible box bound after flooring. Keeps every product formed
/// by the counting kernels inside `i128`.
pub const MAX_BOX_BOUND: i64 = 1 << 24;

/// An integer vector in Z².
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Vec2 {
    pub v1: Int,
    pub v2: Int,
}

impl Vec2 {
    pub fn new(v1: impl Into<Int>, v2: impl Into<Int>) -> Self {
        Self {
            v1: v1.into(),
            v2: v2.into(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.v1.is_zero() && self.v2.is_zero()
    }

    /// Divides out the content and makes the first nonzero coordinate positive.
    /// The zero vector is returned unchanged.
    pub fn normalized(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let g = self.v1.gcd(&self.v2);
        let (mut a, mut b) = (&self.v1 / &g, &self.v2 / &g);
        if a.is_negative() || (a.is_zero() && b.is_negative()) {
            a = -a;
            b = -b;
        }
        Self { v1: a, v2: b }
    }

    pub fn to_point(&self) -> Option<Point> {
        Some([self.v1.to_i64()?, self.v2.to_i64()?])
    }
}

impl From<Point> for Vec2 {
    fn from(p: Point) -> Self {
        Self::new(p[0], p[1])
    }
}

impl fmt::Display for Vec2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.v1, self.v2)
    }
}

/// Axis-aligned box `|v1| <= b1, |v2| <= b2` with real bounds `>= 1`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Box2 {
    b1: f64,
    b2: f64,
}

impl Box2 {
    pub fn new(b1: f64, b2: f64) -> Result<Self> {
        for b in [b1, b2] {
            if !b.is_finite() || b < 1.0 {
                return Err(Error::InvalidBox(b));
            }
            if b.floor() > MAX_BOX_BOUND as f64 {
                return Err(Error::OutOfRange(format!(
                    "box bound {b} exceeds {MAX_BOX_BOUND}"
                )));
            }
        }
        Ok(Self { b1, b2 })
    }

    /// Square box with both bounds equal to `b`.
    pub fn square(b: f64) -> Result<Self> {
        Self::new(b, b)
    }

    pub fn b1(&self) -> f64 {
        self.b1
    }

    pub fn b2(&self) -> f64 {
        self.b2
    }

    /// Integer bounds used for iteration (floors of the real bounds).
    pub fn int_bounds(&self) -> [i64; 2] {
        [self.b1.floor() as i64, self.b2.floor() as i64]
    }

    /// The product `b1 * b2`.
    pub fn area(&self) -> f64 {
        self.b1 * self.b2
    }

    pub fn contains(&self, p: Point) -> bool {
        let [n1, n2] = self.int_bounds();
        p[0].abs() <= n1 && p[1].abs() <= n2
    }
}

impl fmt::Display for Box2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.b1, self.b2)
    }
}

/// gcd of the absolute values; zero iff every entry is zero.
pub fn content(values: &[Int]) -> Result<Int> {
    if values.is_empty() {
        return Err(Error::EmptyList);
    }
    Ok(values.iter().fold(Int::zero(), |g, v| g.gcd(v)))
}

/// A vector is primitive when its coordinates have gcd exactly one.
pub fn is_primitive(v: &Vec2) -> bool {
    v.v1.gcd(&v.v2).is_one()
}

pub(crate) fn gcd_i64(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}

pub(crate) fn is_primitive_point(p: Point) -> bool {
    gcd_i64(p[0], p[1]) == 1
}

/// Positive divisors of `|n|` in increasing order, by trial division.
pub fn positive_divisors(n: &Int) -> Result<Vec<Int>> {
    if n.is_zero() {
        return Err(Error::ZeroArgument);
    }
    let n = n.abs();
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = Int::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            let other = &n / &d;
            if other != d {
                large.push(other);
            }
            small.push(d.clone());
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    Ok(small)
}

/// Number of positive divisors of `|n|`.
pub fn divisor_count(n: &Int) -> Result<u64> {
    Ok(positive_divisors(n)?.len() as u64)
}

/// All signed pairs `(q, q')` with `q * q' = -delta`.
///
/// Both signs of `q` are produced, so the list has `2 d(|delta|)` entries,
/// ordered by `|q|` and then positive before negative.
pub fn signed_divisor_pairs(delta: &Int) -> Result<Vec<(Int, Int)>> {
    let target = -delta;
    let divisors = positive_divisors(delta)?;
    let mut pairs = Vec::with_capacity(2 * divisors.len());
    for d in divisors {
        let neg = -&d;
        pairs.push((d.clone(), &target / &d));
        pairs.push((neg.clone(), &target / &neg));
    }
    Ok(pairs)
}

/// Primitive points of a box, `v1` outer and `v2` inner, both ascending.
pub(crate) fn primitive_points(b: &Box2) -> impl Iterator<Item = Point> {
    let [n1, n2] = b.int_bounds();
    (-n1..=n1).flat_map(move |a| {
        (-n2..=n2)
            .filter(move |&c| gcd_i64(a, c) == 1)
            .map(move |c| [a, c])
    })
}

/// Every primitive vector of the box exactly once, in a fixed order.
pub fn primitive_vectors_in_box(b: &Box2) -> impl Iterator<Item = Vec2> {
    primitive_points(b).map(Vec2::from)
}

/// Number of primitive vectors in a box.
pub fn count_primitive_in_box(b: &Box2) -> u64 {
    primitive_points(b).count() as u64
}
