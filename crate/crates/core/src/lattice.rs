//! Two-dimensional lattices: congruence lattices, Gauss reduction and
//! primitive lattice points in origin-centred axis-aligned ellipses.

use std::f64::consts::PI;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::{content, gcd_i64, Box2, Int, Point, Vec2};

pub type Rat = BigRational;

fn rat(n: impl Into<BigInt>) -> Rat {
    Rat::from_integer(n.into())
}

/// A full-rank lattice in Q² given by two basis columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice2 {
    b1: [Rat; 2],
    b2: [Rat; 2],
}

impl Lattice2 {
    pub fn new(b1: [Rat; 2], b2: [Rat; 2]) -> Result<Self> {
        let l = Self { b1, b2 };
        if l.signed_det().is_zero() {
            return Err(Error::Precondition(
                "basis vectors are linearly dependent".into(),
            ));
        }
        Ok(l)
    }

    /// Lattice spanned by integer columns.
    pub fn from_int_columns(b1: [i64; 2], b2: [i64; 2]) -> Result<Self> {
        Self::new(b1.map(rat), b2.map(rat))
    }

    pub fn integer_lattice() -> Self {
        Self::from_int_columns([1, 0], [0, 1]).expect("independent")
    }

    pub fn basis(&self) -> (&[Rat; 2], &[Rat; 2]) {
        (&self.b1, &self.b2)
    }

    fn signed_det(&self) -> Rat {
        &self.b1[0] * &self.b2[1] - &self.b2[0] * &self.b1[1]
    }

    /// `|b1 ∧ b2|`.
    pub fn det(&self) -> Rat {
        self.signed_det().abs()
    }

    pub fn is_integral(&self) -> bool {
        self.b1.iter().chain(self.b2.iter()).all(|e| e.is_integer())
    }

    /// Basis as machine integers, if integral and small enough.
    pub fn int_basis(&self) -> Option<([i64; 2], [i64; 2])> {
        let conv = |v: &[Rat; 2]| -> Option<[i64; 2]> {
            if !v[0].is_integer() || !v[1].is_integer() {
                return None;
            }
            Some([v[0].to_integer().to_i64()?, v[1].to_integer().to_i64()?])
        };
        Some((conv(&self.b1)?, conv(&self.b2)?))
    }

    /// Membership of an integer point, by solving for the coordinates.
    pub fn contains(&self, v: &Vec2) -> bool {
        let d = self.signed_det();
        let (p, q) = (rat(v.v1.clone()), rat(v.v2.clone()));
        let l1 = (&p * &self.b2[1] - &q * &self.b2[0]) / &d;
        let l2 = (&q * &self.b1[0] - &p * &self.b1[1]) / &d;
        l1.is_integer() && l2.is_integer()
    }

    /// Whether the two lattices are equal (each basis lies in the other lattice).
    pub fn same_lattice(&self, other: &Lattice2) -> bool {
        let inside = |l: &Lattice2, v: &[Rat; 2]| -> bool {
            let d = l.signed_det();
            let l1 = (&v[0] * &l.b2[1] - &v[1] * &l.b2[0]) / &d;
            let l2 = (&v[1] * &l.b1[0] - &v[0] * &l.b1[1]) / &d;
            l1.is_integer() && l2.is_integer()
        };
        inside(self, &other.b1)
            && inside(self, &other.b2)
            && inside(other, &self.b1)
            && inside(other, &self.b2)
    }
}

impl fmt::Display for Lattice2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[({}, {}), ({}, {})]",
            self.b1[0], self.b1[1], self.b2[0], self.b2[1]
        )
    }
}

/// Column Hermite normal form `(d1, 0), (t, d2)` with `d1, d2 > 0`, `0 <= t < d1`.
fn hermite_columns(b1: [Int; 2], b2: [Int; 2]) -> ([Int; 2], [Int; 2]) {
    let (p, r) = (&b1[1], &b2[1]);
    let (c1, mut c2) = if r.is_zero() {
        (b2.clone(), b1.clone())
    } else if p.is_zero() {
        (b1.clone(), b2.clone())
    } else {
        let e = p.extended_gcd(r);
        let g = e.gcd;
        let c2 = [&e.x * &b1[0] + &e.y * &b2[0], &e.x * &b1[1] + &e.y * &b2[1]];
        let (u, w) = (r / &g, p / &g);
        let c1 = [&u * &b1[0] - &w * &b2[0], &u * &b1[1] - &w * &b2[1]];
        (c1, c2)
    };
    debug_assert!(c1[1].is_zero());
    let d1 = c1[0].abs();
    if c2[1].is_negative() {
        c2 = [-&c2[0], -&c2[1]];
    }
    let t = c2[0].mod_floor(&d1);
    ([d1, Int::zero()], [t, c2[1].clone()])
}

/// Basis of `{v ∈ Z² : q | M v}` for an `m × 2` integer matrix.
///
/// Requires that `q` divides every 2×2 minor of `M` and that no prime
/// dividing `q` divides every entry; under those hypotheses the lattice has
/// determinant `|q|`. The basis is returned in column Hermite form.
pub fn congruence_lattice(m: &[[Int; 2]], q: &Int) -> Result<Lattice2> {
    if q.is_zero() {
        return Err(Error::Precondition("modulus q must be nonzero".into()));
    }
    if m.is_empty() {
        return Err(Error::Precondition("matrix needs at least one row".into()));
    }
    for i in 0..m.len() {
        for j in (i + 1)..m.len() {
            let minor = &m[i][0] * &m[j][1] - &m[i][1] * &m[j][0];
            if !(&minor % q).is_zero() {
                return Err(Error::Precondition(format!(
                    "q = {q} does not divide the minor {minor} of rows {i} and {j}"
                )));
            }
        }
    }
    let entries: Vec<Int> = m.iter().flat_map(|r| r.iter().cloned()).collect();
    let g = content(&entries)?.gcd(q);
    if !g.is_one() {
        return Err(Error::Precondition(format!(
            "the primes of {g} divide q = {q} and every entry of the matrix"
        )));
    }
    let qa = q.abs();
    let (mut b1, mut b2) = ([Int::one(), Int::zero()], [Int::zero(), Int::one()]);
    for row in m {
        // restrict to the solutions of row·v ≡ 0 (mod q) inside the current lattice
        let c1 = &row[0] * &b1[0] + &row[1] * &b1[1];
        let c2 = &row[0] * &b2[0] + &row[1] * &b2[1];
        if c1.is_zero() && c2.is_zero() {
            continue;
        }
        let e = c1.extended_gcd(&c2);
        let h = e.gcd;
        let step = &qa / h.gcd(&qa);
        let u1 = [&e.x * &b1[0] + &e.y * &b2[0], &e.x * &b1[1] + &e.y * &b2[1]];
        let (s, t) = (&c2 / &h, &c1 / &h);
        let u2 = [&t * &b2[0] - &s * &b1[0], &t * &b2[1] - &s * &b1[1]];
        let u1 = [&u1[0] * &step, &u1[1] * &step];
        (b1, b2) = hermite_columns(u1, u2);
    }
    let (b1, b2) = hermite_columns(b1, b2);
    Lattice2::new(b1.map(Rat::from_integer), b2.map(Rat::from_integer))
}

/// Origin-centred ellipse `(v1/s1)² + (v2/s2)² <= 1`, stored through the
/// exact squared semi-axes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ellipse2 {
    s1_sq: Rat,
    s2_sq: Rat,
}

impl Ellipse2 {
    /// Semi-axes given as reals; the conversion to rationals is exact.
    pub fn new(s1: f64, s2: f64) -> Result<Self> {
        let conv = |s: f64| -> Result<Rat> {
            if !s.is_finite() || s <= 0.0 {
                return Err(Error::InvalidEllipse(s));
            }
            let r = Rat::from_float(s).ok_or(Error::InvalidEllipse(s))?;
            Ok(&r * &r)
        };
        Ok(Self {
            s1_sq: conv(s1)?,
            s2_sq: conv(s2)?,
        })
    }

    pub fn from_squared(s1_sq: Rat, s2_sq: Rat) -> Result<Self> {
        for s in [&s1_sq, &s2_sq] {
            if !s.is_positive() {
                return Err(Error::InvalidEllipse(s.to_f64().unwrap_or(f64::NAN)));
            }
        }
        Ok(Self { s1_sq, s2_sq })
    }

    pub fn disc(r: f64) -> Result<Self> {
        Self::new(r, r)
    }

    /// `(v1/(√2 b1))² + (v2/(√2 b2))² <= 1`, which contains the box.
    pub fn enclosing_box(b: &Box2) -> Self {
        let two = rat(2);
        let sq = |x: f64| {
            let r = Rat::from_float(x).expect("finite box bound");
            &two * &r * &r
        };
        Self {
            s1_sq: sq(b.b1()),
            s2_sq: sq(b.b2()),
        }
    }

    pub fn squared_axes(&self) -> (&Rat, &Rat) {
        (&self.s1_sq, &self.s2_sq)
    }

    /// `π s1 s2`.
    pub fn area(&self) -> f64 {
        PI * (self.s1_sq.to_f64().unwrap() * self.s2_sq.to_f64().unwrap()).sqrt()
    }

    /// Squared norm in the metric where the ellipse is the unit disc.
    fn norm_sq(&self, v: &[Rat; 2]) -> Rat {
        &v[0] * &v[0] / &self.s1_sq + &v[1] * &v[1] / &self.s2_sq
    }

    fn inner(&self, u: &[Rat; 2], v: &[Rat; 2]) -> Rat {
        &u[0] * &v[0] / &self.s1_sq + &u[1] * &v[1] / &self.s2_sq
    }

    pub fn contains(&self, v: &[Rat; 2]) -> bool {
        self.norm_sq(v) <= Rat::one()
    }

    pub(crate) fn point_test(&self) -> PointTest {
        PointTest::new(self)
    }
}

/// Exact membership test for integer points.
pub(crate) enum PointTest {
    Small { k1: i128, k2: i128, k: i128 },
    Big { k1: BigInt, k2: BigInt, k: BigInt },
}

impl PointTest {
    fn new(e: &Ellipse2) -> Self {
        // v1² d1 n2 + v2² d2 n1 <= n1 n2 with s_i² = n_i / d_i
        let (n1, d1) = (e.s1_sq.numer(), e.s1_sq.denom());
        let (n2, d2) = (e.s2_sq.numer(), e.s2_sq.denom());
        let (k1, k2, k) = (d1 * n2, d2 * n1, n1 * n2);
        let limit = BigInt::from(1i64 << 60);
        if k1 < limit && k2 < limit && k < limit {
            PointTest::Small {
                k1: k1.to_i128().unwrap(),
                k2: k2.to_i128().unwrap(),
                k: k.to_i128().unwrap(),
            }
        } else {
            PointTest::Big { k1, k2, k }
        }
    }

    pub(crate) fn contains(&self, p: Point) -> bool {
        match self {
            PointTest::Small { k1, k2, k } => {
                let (a, b) = (p[0] as i128, p[1] as i128);
                a * a * k1 + b * b * k2 <= *k
            }
            PointTest::Big { k1, k2, k } => {
                let (a, b) = (BigInt::from(p[0]), BigInt::from(p[1]));
                &a * &a * k1 + &b * &b * k2 <= *k
            }
        }
    }
}

fn round_half_up(r: &Rat) -> Int {
    (r + Rat::new(Int::one(), Int::from(2)))
        .floor()
        .to_integer()
}

fn sub_scaled(v: &[Rat; 2], m: &Int, w: &[Rat; 2]) -> [Rat; 2] {
    let m = rat(m.clone());
    [&v[0] - &m * &w[0], &v[1] - &m * &w[1]]
}

/// Lagrange–Gauss reduction with respect to `norm`/`inner`.
fn reduce_with(
    mut b1: [Rat; 2],
    mut b2: [Rat; 2],
    norm: impl Fn(&[Rat; 2]) -> Rat,
    inner: impl Fn(&[Rat; 2], &[Rat; 2]) -> Rat,
) -> ([Rat; 2], [Rat; 2]) {
    if norm(&b2) < norm(&b1) {
        std::mem::swap(&mut b1, &mut b2);
    }
    loop {
        let mu = round_half_up(&(inner(&b1, &b2) / norm(&b1)));
        b2 = sub_scaled(&b2, &mu, &b1);
        if norm(&b2) < norm(&b1) {
            std::mem::swap(&mut b1, &mut b2);
        } else {
            return (b1, b2);
        }
    }
}

/// Gauss-reduced basis in the Euclidean metric: `|b1| <= |b2|` and
/// `|b1·b2| <= |b1|²/2`.
pub fn gauss_reduce(l: &Lattice2) -> Lattice2 {
    let norm = |v: &[Rat; 2]| &v[0] * &v[0] + &v[1] * &v[1];
    let inner = |u: &[Rat; 2], v: &[Rat; 2]| &u[0] * &v[0] + &u[1] * &v[1];
    let (b1, b2) = reduce_with(l.b1.clone(), l.b2.clone(), norm, inner);
    Lattice2 { b1, b2 }
}

/// Basis `b1, b2` and `alpha` such that any lattice point
/// `λ1 b1 + λ2 b2` of the ellipse has `|λ1| <= alpha` and
/// `|λ2| <= area / (alpha · det)`.
#[derive(Clone, Debug)]
pub struct ReducedBasisCertificate {
    pub b1: [Rat; 2],
    pub b2: [Rat; 2],
    pub alpha: f64,
    pub area: f64,
    pub det: Rat,
}

impl ReducedBasisCertificate {
    /// `area / (alpha · det)`.
    pub fn lambda2_bound(&self) -> f64 {
        self.area / (self.alpha * self.det.to_f64().unwrap())
    }

    /// Integer ranges `|λ1| <= n1`, `|λ2| <= n2` implied by the bounds.
    pub fn lambda_ranges(&self) -> (i64, i64) {
        (
            self.alpha.floor() as i64,
            self.lambda2_bound().floor() as i64,
        )
    }

    pub fn lattice(&self) -> Lattice2 {
        Lattice2 {
            b1: self.b1.clone(),
            b2: self.b2.clone(),
        }
    }
}

/// Reduces `l` in the metric where `e` is the unit disc.
///
/// With `b1` shortest and `|μ| <= 1/2`, the Gram–Schmidt vector `b2*`
/// satisfies `|b2*|² >= 3/4 |b1|²`, which gives
/// `|λ1| <= (1 + 1/√3)/|b1|` and `|λ2| <= 1/|b2*| <= area/(alpha det)`.
pub fn hb_certificate(l: &Lattice2, e: &Ellipse2) -> ReducedBasisCertificate {
    let (b1, b2) = reduce_with(
        l.b1.clone(),
        l.b2.clone(),
        |v| e.norm_sq(v),
        |u, v| e.inner(u, v),
    );
    let n1 = e.norm_sq(&b1).to_f64().unwrap();
    // widened by a relative 1e-12 to absorb rounding in the square root
    let alpha = (1.0 + 1.0 / 3f64.sqrt()) / n1.sqrt() * (1.0 + 1e-12);
    ReducedBasisCertificate {
        b1,
        b2,
        alpha,
        area: e.area(),
        det: l.det(),
    }
}

/// Calls `visit` on every point of an integer lattice inside the ellipse,
/// walking the certificate's coefficient ranges.
pub(crate) fn for_each_lattice_point(
    cert: &ReducedBasisCertificate,
    e: &Ellipse2,
    mut visit: impl FnMut(Point),
) -> Result<()> {
    let lat = cert.lattice();
    let (b1, b2) = lat
        .int_basis()
        .ok_or_else(|| Error::OutOfRange("lattice basis is not a small integer basis".into()))?;
    let (n1, n2) = cert.lambda_ranges();
    let test = e.point_test();
    for l2 in -n2..=n2 {
        let base = [l2 as i128 * b2[0] as i128, l2 as i128 * b2[1] as i128];
        for l1 in -n1..=n1 {
            let p = [
                base[0] + l1 as i128 * b1[0] as i128,
                base[1] + l1 as i128 * b1[1] as i128,
            ];
            let (Ok(a), Ok(b)) = (i64::try_from(p[0]), i64::try_from(p[1])) else {
                continue;
            };
            if a.unsigned_abs() > 1 << 31 || b.unsigned_abs() > 1 << 31 {
                continue;
            }
            if test.contains([a, b]) {
                visit([a, b]);
            }
        }
    }
    Ok(())
}

/// Primitive points of Z² that lie in the integer lattice `l` and in `e`.
pub fn primitive_points_in_ellipse(l: &Lattice2, e: &Ellipse2) -> Result<Vec<Vec2>> {
    if !l.is_integral() {
        return Err(Error::Precondition("lattice must be integral".into()));
    }
    let cert = hb_certificate(l, e);
    let mut out = Vec::new();
    for_each_lattice_point(&cert, e, |p| {
        if gcd_i64(p[0], p[1]) == 1 {
            out.push(p);
        }
    })?;
    out.sort_unstable();
    Ok(out.into_iter().map(Vec2::from).collect())
}

/// `4 (area/det + 1)`.
pub fn primitive_count_bound(l: &Lattice2, e: &Ellipse2) -> f64 {
    4.0 * (e.area() / l.det().to_f64().unwrap() + 1.0)
}
