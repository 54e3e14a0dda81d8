//! Solution counters for bilinear and trilinear equations in boxes of
//! primitive vectors, and the numeric bound expressions they are compared to.
//!
//! Every counter has a brute-force twin that enumerates the box product
//! directly. The fast bilinear path splits solutions into the degenerate
//! ones (`x1 x2 L1(y) L2(y) = 0`) and, for each signed divisor `q` of the
//! determinant, the primitive `y` of the congruence lattice `q | Ay` inside
//! an ellipse around the box, from which `x` is recovered.

use std::collections::{BTreeMap, BTreeSet};

use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{
    count_primitive_in_box, divisor_count, gcd_i64, is_primitive_point, positive_divisors,
    primitive_points, Box2, Int, Point, Vec2,
};
use crate::forms::{Axis, BilinearForm, Hypermatrix, PairAxis};
use crate::lattice::{congruence_lattice, for_each_lattice_point, hb_certificate, Ellipse2};

/// Coefficients handed to the machine-integer kernels must be below this.
pub const COEFF_LIMIT: i64 = 1 << 31;

/// One solution; `z` is present for trilinear equations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Solution {
    pub x: Point,
    pub y: Point,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub z: Option<Point>,
}

/// Exact solution counts.
///
/// Bilinear counters fill `degenerate` and `per_divisor`; trilinear
/// counters fill the `s_zero` / `s_nonzero` strata. Equality ignores the
/// diagnostic fields `content_divisions` and `singular_slices`.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct SolutionCensus {
    pub total: u64,
    pub degenerate: u64,
    pub per_divisor: BTreeMap<i64, u64>,
    pub s_zero: u64,
    pub s_nonzero: u64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub solutions: Option<Vec<Solution>>,
    /// Content `g > 1` of a slice form divided out, with the number of outer
    /// vectors where it occurred.
    #[serde(skip)]
    pub content_divisions: BTreeMap<i64, u64>,
    /// Solutions whose outer vector makes the slice form singular (a subset
    /// of `s_zero`); depends on the outer axis.
    #[serde(skip)]
    pub singular_slices: u64,
}

impl PartialEq for SolutionCensus {
    fn eq(&self, o: &Self) -> bool {
        (self.total, self.degenerate, self.s_zero, self.s_nonzero)
            == (o.total, o.degenerate, o.s_zero, o.s_nonzero)
            && self.per_divisor == o.per_divisor
            && self.solutions == o.solutions
    }
}

impl Eq for SolutionCensus {}

impl SolutionCensus {
    fn with_solutions(keep: bool) -> Self {
        Self {
            solutions: keep.then(Vec::new),
            ..Self::default()
        }
    }

    /// Adds the counts of `other`; associative and commutative up to the
    /// order of the solution list, which [`Self::finish`] sorts.
    pub fn merge(mut self, other: Self) -> Self {
        self.total += other.total;
        self.degenerate += other.degenerate;
        self.s_zero += other.s_zero;
        self.s_nonzero += other.s_nonzero;
        self.singular_slices += other.singular_slices;
        for (q, c) in other.per_divisor {
            *self.per_divisor.entry(q).or_default() += c;
        }
        for (g, c) in other.content_divisions {
            *self.content_divisions.entry(g).or_default() += c;
        }
        self.solutions = match (self.solutions, other.solutions) {
            (Some(mut a), Some(b)) => {
                a.extend(b);
                Some(a)
            }
            (a, b) => a.or(b),
        };
        self
    }

    fn finish(mut self) -> Self {
        if let Some(s) = self.solutions.as_mut() {
            s.sort_unstable();
        }
        self
    }

    fn push(&mut self, s: Solution) {
        if let Some(list) = self.solutions.as_mut() {
            list.push(s);
        }
    }

    /// `total = degenerate + Σ per_divisor`.
    pub fn check_bilinear(&self) -> Result<()> {
        let sum: u64 = self.degenerate + self.per_divisor.values().sum::<u64>();
        if sum != self.total {
            return Err(Error::Invariant(format!(
                "bilinear census total {} != degenerate + per-divisor sum {sum}",
                self.total
            )));
        }
        self.check_list()
    }

    /// `total = s_zero + s_nonzero`.
    pub fn check_trilinear(&self) -> Result<()> {
        if self.s_zero + self.s_nonzero != self.total {
            return Err(Error::Invariant(format!(
                "trilinear census total {} != s_zero {} + s_nonzero {}",
                self.total, self.s_zero, self.s_nonzero
            )));
        }
        self.check_list()
    }

    fn check_list(&self) -> Result<()> {
        match &self.solutions {
            Some(list) if list.len() as u64 != self.total => Err(Error::Invariant(format!(
                "solution list has {} entries, total is {}",
                list.len(),
                self.total
            ))),
            _ => Ok(()),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("census serializes")
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct CountOptions {
    /// Outer axis for trilinear counting; `None` picks the smallest box.
    pub axis: Option<Axis>,
    pub keep_solutions: bool,
}

fn small(v: &Int, what: &str) -> Result<i64> {
    v.to_i64()
        .filter(|x| x.unsigned_abs() < COEFF_LIMIT as u64)
        .ok_or_else(|| Error::OutOfRange(format!("{what} {v} exceeds 2^31 in absolute value")))
}

fn small_bilinear(f: &BilinearForm) -> Result<[i64; 4]> {
    let e = f.entries();
    Ok([
        small(e[0], "coefficient")?,
        small(e[1], "coefficient")?,
        small(e[2], "coefficient")?,
        small(e[3], "coefficient")?,
    ])
}

fn small_hyper(h: &Hypermatrix) -> Result<[i64; 8]> {
    let lex = h.lex();
    let mut out = [0i64; 8];
    for (o, v) in out.iter_mut().zip(lex.iter()) {
        *o = small(v, "entry")?;
    }
    Ok(out)
}

#[inline]
fn lin(r0: i64, r1: i64, y: Point) -> i128 {
    r0 as i128 * y[0] as i128 + r1 as i128 * y[1] as i128
}

fn box_contains_wide(b: &Box2, p: [i128; 2]) -> Option<Point> {
    let [n1, n2] = b.int_bounds();
    (p[0].abs() <= n1 as i128 && p[1].abs() <= n2 as i128).then(|| [p[0] as i64, p[1] as i64])
}

/// Counts every pair of primitive `x ∈ bx`, `y ∈ by` with `f(x, y) = 0`.
pub fn count_bilinear_brute(f: &BilinearForm, bx: &Box2, by: &Box2) -> Result<SolutionCensus> {
    count_bilinear_brute_with(f, bx, by, &CountOptions::default())
}

pub fn count_bilinear_brute_with(
    f: &BilinearForm,
    bx: &Box2,
    by: &Box2,
    opts: &CountOptions,
) -> Result<SolutionCensus> {
    let a = small_bilinear(f)?;
    let xs: Vec<Point> = primitive_points(bx).collect();
    let ys: Vec<Point> = primitive_points(by).collect();
    let census = ys
        .par_iter()
        .map(|&y| {
            let mut c = SolutionCensus::with_solutions(opts.keep_solutions);
            let (l1, l2) = (lin(a[0], a[1], y), lin(a[2], a[3], y));
            for &x in &xs {
                if x[0] as i128 * l1 + x[1] as i128 * l2 != 0 {
                    continue;
                }
                c.total += 1;
                if x[0] == 0 || x[1] == 0 || l1 == 0 || l2 == 0 {
                    c.degenerate += 1;
                } else {
                    *c.per_divisor.entry((l1 / x[1] as i128) as i64).or_default() += 1;
                }
                c.push(Solution { x, y, z: None });
            }
            c
        })
        .reduce(
            || SolutionCensus::with_solutions(opts.keep_solutions),
            SolutionCensus::merge,
        );
    Ok(census.finish())
}

/// Divisor/lattice counter for forms with nonzero determinant and content 1.
///
/// Reports the same census as [`count_bilinear_brute`].
pub fn count_bilinear_fast(f: &BilinearForm, bx: &Box2, by: &Box2) -> Result<SolutionCensus> {
    count_bilinear_fast_with(f, bx, by, &CountOptions::default())
}

pub fn count_bilinear_fast_with(
    f: &BilinearForm,
    bx: &Box2,
    by: &Box2,
    opts: &CountOptions,
) -> Result<SolutionCensus> {
    if f.det().is_zero() {
        return Err(Error::Precondition(
            "determinant is zero; the form is reducible (classify it and count the linear factors)"
                .into(),
        ));
    }
    let g = f.content();
    if g != Int::from(1) {
        return Err(Error::Precondition(format!(
            "content is {g}; divide the form by its content first"
        )));
    }
    let a = small_bilinear(f)?;
    let mut census = SolutionCensus::with_solutions(opts.keep_solutions);
    fast_kernel(a, bx, by, &Ellipse2::enclosing_box(by), |x, y, q| {
        census.total += 1;
        match q {
            None => census.degenerate += 1,
            Some(q) => *census.per_divisor.entry(q).or_default() += 1,
        }
        census.push(Solution { x, y, z: None });
    })?;
    Ok(census.finish())
}

/// Calls `visit(x, y, q)` once per solution; `q` is `None` for degenerate
/// solutions and the divisor with `q x2 = L1(y)` otherwise.
///
/// `a` must have nonzero determinant, content 1 and entries below
/// [`COEFF_LIMIT`]; `ey` must contain the box `by`.
fn fast_kernel(
    a: [i64; 4],
    bx: &Box2,
    by: &Box2,
    ey: &Ellipse2,
    mut visit: impl FnMut(Point, Point, Option<i64>),
) -> Result<()> {
    let det = a[0] as i128 * a[3] as i128 - a[1] as i128 * a[2] as i128;
    debug_assert!(det != 0);

    // L1(y) = 0 forces x = (±1, 0); L2(y) = 0 forces x = (0, ±1).
    let mut degenerate = BTreeSet::new();
    for (row, x) in [([a[0], a[1]], [1i64, 0]), ([a[2], a[3]], [0, 1])] {
        let g = gcd_i64(row[0], row[1]);
        let y0 = [row[1] / g, -row[0] / g];
        for sy in [1, -1] {
            let y = [sy * y0[0], sy * y0[1]];
            if by.contains(y) {
                for sx in [1, -1] {
                    degenerate.insert(([sx * x[0], sx * x[1]], y));
                }
            }
        }
    }
    for (x, y) in degenerate {
        visit(x, y, None);
    }

    let rows = vec![
        [Int::from(a[0]), Int::from(a[1])],
        [Int::from(a[2]), Int::from(a[3])],
    ];
    for d in positive_divisors(&Int::from(det))? {
        let d64 = d
            .to_i64()
            .ok_or_else(|| Error::OutOfRange(format!("divisor {d} exceeds 64 bits")))?;
        let lat = congruence_lattice(&rows, &d)?;
        let cert = hb_certificate(&lat, ey);
        let dd = d64 as i128;
        for_each_lattice_point(&cert, ey, |y| {
            if !by.contains(y) || !is_primitive_point(y) {
                return;
            }
            let (l1, l2) = (lin(a[0], a[1], y), lin(a[2], a[3], y));
            if l1 == 0 || l2 == 0 || l1 % dd != 0 || l2 % dd != 0 {
                return;
            }
            let Some(x) = box_contains_wide(bx, [-l2 / dd, l1 / dd]) else {
                return;
            };
            if !is_primitive_point(x) {
                return;
            }
            for (q, x) in [(d64, x), (-d64, [-x[0], -x[1]])] {
                debug_assert_eq!(x[0] as i128 * l1 + x[1] as i128 * l2, 0);
                visit(x, y, Some(q));
            }
        })?;
    }
    Ok(())
}

fn slot(a: Axis) -> usize {
    match a {
        Axis::X => 0,
        Axis::Y => 1,
        Axis::Z => 2,
    }
}

/// The axis with the smallest box area, ties resolved towards `z`, then `y`.
pub fn default_axis(bx: &Box2, by: &Box2, bz: &Box2) -> Axis {
    let mut best = (Axis::Z, bz.area());
    for (axis, b) in [(Axis::Y, by), (Axis::X, bx)] {
        if b.area() < best.1 {
            best = (axis, b.area());
        }
    }
    best.0
}

/// Binary quadratic form with `i128` coefficients.
#[derive(Clone, Copy)]
struct Quad([i128; 3]);

impl Quad {
    fn of(h: &Hypermatrix, variable: Axis) -> Result<Self> {
        let q = h.delta_form(PairAxis::for_variable(variable));
        let c = |v: &Int| {
            v.to_i128()
                .filter(|x| x.unsigned_abs() < 1 << 64)
                .ok_or_else(|| Error::OutOfRange(format!("slice form coefficient {v}")))
        };
        Ok(Quad([c(&q.a)?, c(&q.b)?, c(&q.c)?]))
    }

    #[inline]
    fn is_zero_at(&self, v: Point) -> bool {
        let (a, b) = (v[0] as i128, v[1] as i128);
        self.0[0] * a * a + self.0[1] * a * b + self.0[2] * b * b == 0
    }
}

fn place(axis: Axis, w: Point, ua: Axis, u: Point, va: Axis, v: Point) -> Solution {
    let mut p = [[0i64; 2]; 3];
    p[slot(axis)] = w;
    p[slot(ua)] = u;
    p[slot(va)] = v;
    Solution {
        x: p[0],
        y: p[1],
        z: Some(p[2]),
    }
}

/// Counts primitive triples with `f(x, y, z) = 0`, split by whether
/// `s = Δ_xy(z) Δ_yz(x) Δ_zx(y)` vanishes.
///
/// The outer loop runs over the primitive vectors of one axis; on each the
/// slice form is either zero, singular (a product of two linear forms) or
/// is divided by its content and handed to the divisor/lattice kernel.
pub fn count_trilinear(h: &Hypermatrix, bx: &Box2, by: &Box2, bz: &Box2) -> Result<SolutionCensus> {
    count_trilinear_with(h, bx, by, bz, &CountOptions::default())
}

pub fn count_trilinear_with(
    h: &Hypermatrix,
    bx: &Box2,
    by: &Box2,
    bz: &Box2,
    opts: &CountOptions,
) -> Result<SolutionCensus> {
    let boxes = [*bx, *by, *bz];
    let axis = opts.axis.unwrap_or_else(|| default_axis(bx, by, bz));
    let (ua, va) = axis.pencil_pair();
    let (bw, bu, bv) = (boxes[slot(axis)], boxes[slot(ua)], boxes[slot(va)]);

    let norm = small(&h.norm(), "entry")?;
    let [w1, w2] = bw.int_bounds();
    if (norm as i128) * (w1 as i128 + w2 as i128) >= COEFF_LIMIT as i128 {
        return Err(Error::OutOfRange(
            "slice coefficients would exceed 2^31; shrink the outer box or the entries".into(),
        ));
    }
    let p0 = small_bilinear(&h.pencil(axis, &Vec2::new(1, 0)))?;
    let p1 = small_bilinear(&h.pencil(axis, &Vec2::new(0, 1)))?;
    let (qu, qv) = (Quad::of(h, ua)?, Quad::of(h, va)?);
    let hyperdet = h.hyperdet();
    let (nu, nv) = (count_primitive_in_box(&bu), count_primitive_in_box(&bv));
    let ev = Ellipse2::enclosing_box(&bv);
    let keep = opts.keep_solutions;

    let ws: Vec<Point> = primitive_points(&bw).collect();
    let census = ws
        .par_iter()
        .map(|&w| -> Result<SolutionCensus> {
            let mut c = SolutionCensus::with_solutions(keep);
            let coef: [i64; 4] = std::array::from_fn(|n| w[0] * p0[n] + w[1] * p1[n]);
            if coef.iter().all(|&e| e == 0) {
                let n = nu * nv;
                c.total += n;
                c.s_zero += n;
                c.singular_slices += n;
                if keep {
                    for u in primitive_points(&bu) {
                        for v in primitive_points(&bv) {
                            c.push(place(axis, w, ua, u, va, v));
                        }
                    }
                }
                return Ok(c);
            }
            let det = coef[0] as i128 * coef[3] as i128 - coef[1] as i128 * coef[2] as i128;
            if det == 0 {
                rank_one(coef, &bu, &bv, nu, nv, &mut c, |u, v| {
                    place(axis, w, ua, u, va, v)
                });
                return Ok(c);
            }
            let g = coef.iter().fold(0i64, |g, &e| gcd_i64(g, e));
            if g > 1 {
                let g2 = Int::from(g) * Int::from(g);
                if !(&hyperdet % &g2).is_zero() {
                    return Err(Error::Invariant(format!(
                        "slice content {g} at {w:?}: {g}^2 does not divide D = {hyperdet}"
                    )));
                }
                *c.content_divisions.entry(g).or_default() += 1;
            }
            let reduced = coef.map(|e| e / g);
            fast_kernel(reduced, &bu, &bv, &ev, |u, v, _| {
                c.total += 1;
                if qu.is_zero_at(u) || qv.is_zero_at(v) {
                    c.s_zero += 1;
                } else {
                    c.s_nonzero += 1;
                }
                c.push(place(axis, w, ua, u, va, v));
            })?;
            Ok(c)
        })
        .try_reduce(
            || SolutionCensus::with_solutions(keep),
            |a, b| Ok(a.merge(b)),
        )?;
    Ok(census.finish())
}

/// Solutions of `uᵀ M v = 0` for a nonzero rank-one `M`: `uᵀM = 0` or `Mv = 0`.
fn rank_one(
    m: [i64; 4],
    bu: &Box2,
    bv: &Box2,
    nu: u64,
    nv: u64,
    c: &mut SolutionCensus,
    make: impl Fn(Point, Point) -> Solution,
) {
    let kernel = |p: [i64; 2]| -> [i64; 2] {
        let g = gcd_i64(p[0], p[1]);
        [p[1] / g, -p[0] / g]
    };
    let col = if m[0] != 0 || m[2] != 0 {
        [m[0], m[2]]
    } else {
        [m[1], m[3]]
    };
    let row = if m[0] != 0 || m[1] != 0 {
        [m[0], m[1]]
    } else {
        [m[2], m[3]]
    };
    let ku = kernel(col);
    let kv = kernel(row);
    let zeros = |k: [i64; 2], b: &Box2| -> Vec<Point> {
        [k, [-k[0], -k[1]]]
            .into_iter()
            .filter(|&p| b.contains(p))
            .collect()
    };
    let (zu, zv) = (zeros(ku, bu), zeros(kv, bv));
    let n = zu.len() as u64 * nv + nu * zv.len() as u64 - (zu.len() * zv.len()) as u64;
    c.total += n;
    c.s_zero += n;
    c.singular_slices += n;
    if c.solutions.is_some() {
        for &u in &zu {
            for v in primitive_points(bv) {
                c.push(make(u, v));
            }
        }
        for u in primitive_points(bu) {
            if zu.contains(&u) {
                continue;
            }
            for &v in &zv {
                c.push(make(u, v));
            }
        }
    }
}

/// Triple loop over primitive vectors; the strata use the exact `s` value.
pub fn count_trilinear_brute(
    h: &Hypermatrix,
    bx: &Box2,
    by: &Box2,
    bz: &Box2,
) -> Result<SolutionCensus> {
    count_trilinear_brute_with(h, bx, by, bz, &CountOptions::default())
}

pub fn count_trilinear_brute_with(
    h: &Hypermatrix,
    bx: &Box2,
    by: &Box2,
    bz: &Box2,
    opts: &CountOptions,
) -> Result<SolutionCensus> {
    let e = small_hyper(h)?.map(|v| v as i128);
    let xs: Vec<Point> = primitive_points(bx).collect();
    let ys: Vec<Point> = primitive_points(by).collect();
    let zs: Vec<Point> = primitive_points(bz).collect();
    let keep = opts.keep_solutions;
    let census = xs
        .par_iter()
        .map(|&x| {
            let mut c = SolutionCensus::with_solutions(keep);
            let (x0, x1) = (x[0] as i128, x[1] as i128);
            // coefficient of y_j z_k after fixing x
            let m: [i128; 4] = std::array::from_fn(|jk| x0 * e[jk] + x1 * e[4 + jk]);
            for &y in &ys {
                let (y0, y1) = (y[0] as i128, y[1] as i128);
                let l = [y0 * m[0] + y1 * m[2], y0 * m[1] + y1 * m[3]];
                for &z in &zs {
                    if l[0] * z[0] as i128 + l[1] * z[1] as i128 != 0 {
                        continue;
                    }
                    c.total += 1;
                    if h.s_value(&Vec2::from(x), &Vec2::from(y), &Vec2::from(z))
                        .is_zero()
                    {
                        c.s_zero += 1;
                    } else {
                        c.s_nonzero += 1;
                    }
                    c.push(Solution { x, y, z: Some(z) });
                }
            }
            c
        })
        .reduce(
            || SolutionCensus::with_solutions(keep),
            SolutionCensus::merge,
        );
    Ok(census.finish())
}

/// `min{X1X2, Y1Y2, d(Δ)(√(X1X2Y1Y2/|Δ|) + 1)}` with implied constant 1.
pub fn theorem1_bound(f: &BilinearForm, bx: &Box2, by: &Box2) -> Result<f64> {
    let delta = f.det();
    if delta.is_zero() {
        return Err(Error::Precondition(
            "bilinear bound needs a nonzero determinant".into(),
        ));
    }
    let d = divisor_count(&delta)? as f64;
    let (x, y) = (bx.area(), by.area());
    let abs = delta.abs().to_f64().unwrap_or(f64::INFINITY);
    Ok(x.min(y).min(d * ((x * y / abs).sqrt() + 1.0)))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Theorem2Bound {
    /// `T^ε(√(XYZ)/|D|^{1/4} + √(XY) + Z)` with `X = X1X2` etc.
    pub value: f64,
    /// Minimum of the expression over the three choices of the last axis.
    pub permuted_min: f64,
    /// `T = ‖f‖ X1X2 Y1Y2 Z1Z2`.
    pub t: f64,
}

pub fn theorem2_bound(
    h: &Hypermatrix,
    bx: &Box2,
    by: &Box2,
    bz: &Box2,
    epsilon: f64,
) -> Result<Theorem2Bound> {
    let d = h.hyperdet();
    if d.is_zero() {
        return Err(Error::Precondition("trilinear bound needs D != 0".into()));
    }
    let d4 = d.abs().to_f64().unwrap_or(f64::INFINITY).powf(0.25);
    let (x, y, z) = (bx.area(), by.area(), bz.area());
    let t = h.norm().to_f64().unwrap() * x * y * z;
    let scale = t.powf(epsilon);
    let main = (x * y * z).sqrt() / d4;
    let expr = |p: f64, q: f64, last: f64| scale * (main + (p * q).sqrt() + last);
    let value = expr(x, y, z);
    let permuted_min = value.min(expr(y, z, x)).min(expr(z, x, y));
    Ok(Theorem2Bound {
        value,
        permuted_min,
        t,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AqtReport {
    pub count: u64,
    pub bound: f64,
    /// `Z1Z2/q + 1`.
    pub box_term: f64,
    /// `(t/(q|D|^{1/2}) + 1)(Tt)^ε` with `T = ‖f‖ Z1Z2`.
    pub value_term: f64,
}

/// Primitive `z` in `bz` with `q` dividing every coefficient of the slice
/// form `f_z` and `1 <= |Δ_xy(z)| <= t`, with the bound
/// `min{Z1Z2/q + 1, (t/(q|D|^{1/2}) + 1)(Tt)^ε}`.
pub fn aqt_count(h: &Hypermatrix, q: &Int, t: f64, bz: &Box2, epsilon: f64) -> Result<AqtReport> {
    let d = h.hyperdet();
    if d.is_zero() {
        return Err(Error::Precondition("A_q(t) needs D != 0".into()));
    }
    if q.is_zero() || !(&d % (q * q)).is_zero() {
        return Err(Error::Precondition(format!(
            "q^2 must divide D = {d}, got q = {q}"
        )));
    }
    if !t.is_finite() {
        return Err(Error::Precondition("t must be finite".into()));
    }
    let lines = h.coefficient_lines(Axis::Z);
    let delta = h.delta_form(PairAxis::Xy);
    let qa = q.abs();
    let mut count = 0u64;
    for z in primitive_points(bz) {
        let v = Vec2::from(z);
        if !lines.iter().all(|l| l.eval(&v).is_multiple_of(&qa)) {
            continue;
        }
        let val = delta.eval(&v).abs();
        if !val.is_zero() && val.to_f64().unwrap_or(f64::INFINITY) <= t {
            count += 1;
        }
    }
    let qf = qa.to_f64().unwrap();
    let box_term = bz.area() / qf + 1.0;
    let tt = h.norm().to_f64().unwrap() * bz.area() * t.max(1.0);
    let value_term =
        (t.max(0.0) / (qf * d.abs().to_f64().unwrap().sqrt()) + 1.0) * tt.powf(epsilon);
    Ok(AqtReport {
        count,
        bound: box_term.min(value_term),
        box_term,
        value_term,
    })
}

/// One row of a bound-verification report.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundReport {
    pub family: String,
    pub form: String,
    pub delta_or_d: String,
    pub boxes: String,
    pub measured: u64,
    pub bound: f64,
    pub ratio: f64,
    pub divisor_count: Option<u64>,
    pub epsilon: Option<f64>,
}

impl BoundReport {
    pub const CSV_HEADER: [&'static str; 6] =
        ["form", "delta_or_D", "box", "measured", "bound", "ratio"];

    pub fn new(
        family: &str,
        form: String,
        delta_or_d: String,
        boxes: String,
        measured: u64,
        bound: f64,
    ) -> Self {
        let ratio = if bound > 0.0 {
            measured as f64 / bound
        } else {
            0.0
        };
        Self {
            family: family.to_string(),
            form,
            delta_or_d,
            boxes,
            measured,
            bound,
            ratio,
            divisor_count: None,
            epsilon: None,
        }
    }

    pub fn csv_record(&self) -> [String; 6] {
        [
            self.form.clone(),
            self.delta_or_d.clone(),
            self.boxes.clone(),
            self.measured.to_string(),
            self.bound.to_string(),
            self.ratio.to_string(),
        ]
    }
}
