//! Bilinear forms on Z² × Z² and trilinear forms given by 2×2×2 hypermatrices.
//!
//! A [`Hypermatrix`] `a[i][j][k]` defines `f(x, y, z) = Σ a_ijk x_i y_j z_k`.
//! Indices are stored zero-based; the lexicographic text format lists
//! `a111 a112 a121 a122 a211 a212 a221 a222`.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{content, Int, Vec2};

/// One of the three variable blocks `x`, `y`, `z`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

    /// The two remaining blocks, in the order used by the pencil forms:
    /// `X -> (Y, Z)`, `Y -> (Z, X)`, `Z -> (X, Y)`.
    pub fn pencil_pair(self) -> (Axis, Axis) {
        match self {
            Axis::X => (Axis::Y, Axis::Z),
            Axis::Y => (Axis::Z, Axis::X),
            Axis::Z => (Axis::X, Axis::Y),
        }
    }

    /// The two remaining blocks in natural order (`X -> (Y, Z)`, `Y -> (X, Z)`, `Z -> (X, Y)`).
    pub fn factor_pair(self) -> (Axis, Axis) {
        match self {
            Axis::X => (Axis::Y, Axis::Z),
            Axis::Y => (Axis::X, Axis::Z),
            Axis::Z => (Axis::X, Axis::Y),
        }
    }

    fn slot(self) -> usize {
        match self {
            Axis::X => 0,
            Axis::Y => 1,
            Axis::Z => 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Axis::X => "x",
            Axis::Y => "y",
            Axis::Z => "z",
        }
    }
}

impl FromStr for Axis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "x" | "X" => Ok(Axis::X),
            "y" | "Y" => Ok(Axis::Y),
            "z" | "Z" => Ok(Axis::Z),
            other => Err(Error::Parse(format!(
                "unknown axis {other:?}, expected x, y or z"
            ))),
        }
    }
}

/// Names one of the slice determinants `Δ_xy(z)`, `Δ_yz(x)`, `Δ_zx(y)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PairAxis {
    Xy,
    Yz,
    Zx,
}

impl PairAxis {
    pub const ALL: [PairAxis; 3] = [PairAxis::Xy, PairAxis::Yz, PairAxis::Zx];

    /// The block the quadratic form is evaluated on.
    pub fn variable(self) -> Axis {
        match self {
            PairAxis::Xy => Axis::Z,
            PairAxis::Yz => Axis::X,
            PairAxis::Zx => Axis::Y,
        }
    }

    pub fn for_variable(axis: Axis) -> Self {
        match axis {
            Axis::Z => PairAxis::Xy,
            Axis::X => PairAxis::Yz,
            Axis::Y => PairAxis::Zx,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            PairAxis::Xy => "xy",
            PairAxis::Yz => "yz",
            PairAxis::Zx => "zx",
        }
    }
}

fn parse_ints(text: &str, expected: usize, what: &str) -> Result<Vec<Int>> {
    let parts: Vec<&str> = text
        .split(|c: char| c.is_whitespace() || c == ',')
        .filter(|s| !s.is_empty())
        .collect();
    if parts.len() != expected {
        return Err(Error::Parse(format!(
            "{what} needs {expected} integers separated by whitespace or commas, got {}",
            parts.len()
        )));
    }
    parts
        .iter()
        .map(|p| {
            p.parse::<Int>()
                .map_err(|_| Error::Parse(format!("{p:?} is not an integer")))
        })
        .collect()
}

/// `L(v) = c1 v1 + c2 v2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LinearForm2 {
    pub c1: Int,
    pub c2: Int,
}

impl LinearForm2 {
    pub fn new(c1: impl Into<Int>, c2: impl Into<Int>) -> Self {
        Self {
            c1: c1.into(),
            c2: c2.into(),
        }
    }

    pub fn eval(&self, v: &Vec2) -> Int {
        &self.c1 * &v.v1 + &self.c2 * &v.v2
    }

    pub fn is_zero(&self) -> bool {
        self.c1.is_zero() && self.c2.is_zero()
    }

    pub fn content(&self) -> Int {
        self.c1.gcd(&self.c2)
    }

    fn as_vec(&self) -> Vec2 {
        Vec2 {
            v1: self.c1.clone(),
            v2: self.c2.clone(),
        }
    }

    /// Coprime coefficients with the first nonzero one positive.
    pub fn normalized(&self) -> Self {
        let v = self.as_vec().normalized();
        Self { c1: v.v1, c2: v.v2 }
    }

    /// The primitive vector spanning the kernel, sign-normalized.
    /// `None` for the zero form.
    pub fn zero_point(&self) -> Option<Vec2> {
        if self.is_zero() {
            return None;
        }
        Some(
            Vec2 {
                v1: self.c2.clone(),
                v2: -&self.c1,
            }
            .normalized(),
        )
    }

    /// Human readable form in the variable `var`, e.g. `x1 + 2x2`.
    pub fn render(&self, var: &str) -> String {
        let mut out = String::new();
        for (c, idx) in [(&self.c1, 1), (&self.c2, 2)] {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let coef = if mag.is_one() {
                String::new()
            } else {
                mag.to_string()
            };
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(if c.is_negative() { " - " } else { " + " });
            }
            out.push_str(&format!("{coef}{var}{idx}"));
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

/// `f(x, y) = xᵀ A y` for a 2×2 integer matrix `A`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BilinearForm {
    pub a11: Int,
    pub a12: Int,
    pub a21: Int,
    pub a22: Int,
}

/// Result of [`BilinearForm::classify`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BilinearClass {
    /// Every coefficient is zero.
    Zero,
    Irreducible {
        delta: Int,
    },
    /// `xᵀAy = scale · lx(x) · ly(y)` with `lx`, `ly` primitive and
    /// sign-normalized. `scale` is always an integer here: a rank-one integer
    /// matrix is its content times the outer product of two primitive vectors.
    Reducible {
        lx: LinearForm2,
        ly: LinearForm2,
        scale: Int,
    },
}

impl BilinearForm {
    pub fn new(
        a11: impl Into<Int>,
        a12: impl Into<Int>,
        a21: impl Into<Int>,
        a22: impl Into<Int>,
    ) -> Self {
        Self {
            a11: a11.into(),
            a12: a12.into(),
            a21: a21.into(),
            a22: a22.into(),
        }
    }

    pub fn from_rows(rows: [[i64; 2]; 2]) -> Self {
        Self::new(rows[0][0], rows[0][1], rows[1][0], rows[1][1])
    }

    pub fn entries(&self) -> [&Int; 4] {
        [&self.a11, &self.a12, &self.a21, &self.a22]
    }

    /// `a11 a22 - a12 a21`.
    pub fn det(&self) -> Int {
        &self.a11 * &self.a22 - &self.a12 * &self.a21
    }

    pub fn content(&self) -> Int {
        content(&self.entries().map(Clone::clone)).expect("nonempty")
    }

    pub fn is_zero(&self) -> bool {
        self.entries().iter().all(|a| a.is_zero())
    }

    /// Row forms `L1(y) = a11 y1 + a12 y2` and `L2(y) = a21 y1 + a22 y2`.
    pub fn rows(&self) -> [LinearForm2; 2] {
        [
            LinearForm2::new(self.a11.clone(), self.a12.clone()),
            LinearForm2::new(self.a21.clone(), self.a22.clone()),
        ]
    }

    pub fn eval(&self, x: &Vec2, y: &Vec2) -> Int {
        let [l1, l2] = self.rows();
        &x.v1 * l1.eval(y) + &x.v2 * l2.eval(y)
    }

    pub fn transpose(&self) -> Self {
        Self::new(
            self.a11.clone(),
            self.a21.clone(),
            self.a12.clone(),
            self.a22.clone(),
        )
    }

    pub fn scaled(&self, s: &Int) -> Self {
        Self::new(&self.a11 * s, &self.a12 * s, &self.a21 * s, &self.a22 * s)
    }

    /// Exact division of every coefficient by `d`.
    pub fn divided(&self, d: &Int) -> Self {
        Self::new(&self.a11 / d, &self.a12 / d, &self.a21 / d, &self.a22 / d)
    }

    pub fn outer(lx: &LinearForm2, ly: &LinearForm2, scale: &Int) -> Self {
        Self::new(
            scale * &lx.c1 * &ly.c1,
            scale * &lx.c1 * &ly.c2,
            scale * &lx.c2 * &ly.c1,
            scale * &lx.c2 * &ly.c2,
        )
    }

    pub fn classify(&self) -> BilinearClass {
        if self.is_zero() {
            return BilinearClass::Zero;
        }
        let delta = self.det();
        if !delta.is_zero() {
            return BilinearClass::Irreducible { delta };
        }
        let [r1, r2] = self.rows();
        let pivot = if r1.is_zero() { &r2 } else { &r1 };
        let ly = pivot.normalized();
        // each row is an integer multiple of the primitive ly
        let coeff = |r: &LinearForm2| -> Int {
            if !ly.c1.is_zero() {
                &r.c1 / &ly.c1
            } else {
                &r.c2 / &ly.c2
            }
        };
        let raw = LinearForm2::new(coeff(&r1), coeff(&r2));
        let lx = raw.normalized();
        let scale = if !lx.c1.is_zero() {
            &raw.c1 / &lx.c1
        } else {
            &raw.c2 / &lx.c2
        };
        BilinearClass::Reducible { lx, ly, scale }
    }
}

impl FromStr for BilinearForm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let v = parse_ints(s, 4, "bilinear form")?;
        let [a11, a12, a21, a22]: [Int; 4] = v.try_into().expect("length checked");
        Ok(Self { a11, a12, a21, a22 })
    }
}

impl fmt::Display for BilinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {} {}", self.a11, self.a12, self.a21, self.a22)
    }
}

/// `Q(v) = a v1² + b v1 v2 + c v2²`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BinaryQuadForm {
    pub a: Int,
    pub b: Int,
    pub c: Int,
}

impl BinaryQuadForm {
    pub fn new(a: impl Into<Int>, b: impl Into<Int>, c: impl Into<Int>) -> Self {
        Self {
            a: a.into(),
            b: b.into(),
            c: c.into(),
        }
    }

    /// `b² - 4ac`.
    pub fn discriminant(&self) -> Int {
        &self.b * &self.b - Int::from(4) * &self.a * &self.c
    }

    pub fn eval(&self, v: &Vec2) -> Int {
        &self.a * &v.v1 * &v.v1 + &self.b * &v.v1 * &v.v2 + &self.c * &v.v2 * &v.v2
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.c.is_zero()
    }

    /// Writes a form of discriminant zero as `C · L²` with `L` primitive.
    ///
    /// `C` is always integral. For `C = 0` the linear form is `(1, 0)`;
    /// otherwise the first nonzero coefficient of `L` is positive.
    pub fn square_decompose(&self) -> Result<(Int, LinearForm2)> {
        if !self.discriminant().is_zero() {
            return Err(Error::Precondition(format!(
                "square decomposition needs discriminant 0, got {}",
                self.discriminant()
            )));
        }
        if self.is_zero() {
            return Ok((Int::zero(), LinearForm2::new(1, 0)));
        }
        // b² = 4ac: for a != 0, Q = a (v1 + b/(2a) v2)², i.e. L ∝ (2a, b).
        let l = if !self.a.is_zero() {
            LinearForm2::new(Int::from(2) * &self.a, self.b.clone())
        } else {
            LinearForm2::new(0, 1)
        }
        .normalized();
        let c = if !l.c1.is_zero() {
            &self.a / (&l.c1 * &l.c1)
        } else {
            &self.c / (&l.c2 * &l.c2)
        };
        Ok((c, l))
    }
}

impl fmt::Display for BinaryQuadForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.c)
    }
}

/// Which slice determinants vanish identically.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VanishingPattern {
    pub xy: bool,
    pub yz: bool,
    pub zx: bool,
}

impl VanishingPattern {
    pub fn count(&self) -> usize {
        [self.xy, self.yz, self.zx].iter().filter(|&&b| b).count()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TrilinearKind {
    ZeroForm,
    /// `f = scale · lx(x) · ly(y) · lz(z)` with primitive linear forms.
    TripleLinear {
        lx: LinearForm2,
        ly: LinearForm2,
        lz: LinearForm2,
        scale: Int,
    },
    /// `f = linear(w) · bilinear(u, v)` where `w` is `axis` and `(u, v)` is
    /// [`Axis::factor_pair`] of it. `linear` is primitive.
    LinearTimesBilinear {
        axis: Axis,
        linear: LinearForm2,
        bilinear: BilinearForm,
    },
    NoLinearFactor,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrilinearClass {
    pub kind: TrilinearKind,
    pub hyperdet: Int,
    pub vanishing: VanishingPattern,
}

/// A 2×2×2 integer hypermatrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Hypermatrix {
    a: [[[Int; 2]; 2]; 2],
}

impl Hypermatrix {
    /// Entries in lexicographic `(i, j, k)` order.
    pub fn from_lex<T: Into<Int> + Clone>(v: [T; 8]) -> Self {
        Self::from_fn(|i, j, k| v[4 * i + 2 * j + k].clone().into())
    }

    /// Builds from a zero-based entry function `(i, j, k) -> a_ijk`.
    pub fn from_fn(mut f: impl FnMut(usize, usize, usize) -> Int) -> Self {
        let a =
            std::array::from_fn(|i| std::array::from_fn(|j| std::array::from_fn(|k| f(i, j, k))));
        Self { a }
    }

    pub fn zero() -> Self {
        Self::from_fn(|_, _, _| Int::zero())
    }

    /// `f = linear(w) · bilinear(u, v)` for `w = axis`, `(u, v) = axis.factor_pair()`.
    pub fn from_linear_times_bilinear(
        axis: Axis,
        linear: &LinearForm2,
        bilinear: &BilinearForm,
    ) -> Self {
        let l = [&linear.c1, &linear.c2];
        let b = [
            [&bilinear.a11, &bilinear.a12],
            [&bilinear.a21, &bilinear.a22],
        ];
        Self::from_fn(|i, j, k| {
            let idx = [i, j, k];
            let (u, v) = axis.factor_pair();
            l[idx[axis.slot()]] * b[idx[u.slot()]][idx[v.slot()]]
        })
    }

    pub fn from_triple(lx: &LinearForm2, ly: &LinearForm2, lz: &LinearForm2, scale: &Int) -> Self {
        let c = |l: &LinearForm2, i: usize| if i == 0 { l.c1.clone() } else { l.c2.clone() };
        Self::from_fn(|i, j, k| scale * c(lx, i) * c(ly, j) * c(lz, k))
    }

    /// Zero-based entry access.
    pub fn get(&self, i: usize, j: usize, k: usize) -> &Int {
        &self.a[i][j][k]
    }

    pub fn lex(&self) -> [Int; 8] {
        std::array::from_fn(|n| self.a[n / 4][(n / 2) % 2][n % 2].clone())
    }

    pub fn is_zero(&self) -> bool {
        self.lex().iter().all(|v| v.is_zero())
    }

    /// `max |a_ijk|`.
    pub fn norm(&self) -> Int {
        self.lex().iter().map(|v| v.abs()).max().expect("8 entries")
    }

    pub fn content(&self) -> Int {
        content(&self.lex()).expect("nonempty")
    }

    pub fn eval(&self, x: &Vec2, y: &Vec2, z: &Vec2) -> Int {
        self.slice_matrix(Axis::Z, z).eval(x, y)
    }

    /// Entry with the three indices given per block.
    fn at_axes(&self, idx: [usize; 3]) -> &Int {
        &self.a[idx[0]][idx[1]][idx[2]]
    }

    /// Contraction with `v` along `axis`, laid out exactly as the classical
    /// slice displays:
    ///
    /// - `Z`: `M_xy(z)[i][j] = Σ_k a_ijk z_k`, so `f = xᵀ M_xy(z) y`.
    /// - `X`: `M_yz(x) = x1 [[a122, a121], [a112, a111]] + x2 [[a222, a221], [a212, a211]]`,
    ///   the reversed layout; `f(x, y, z) = (Ry)ᵀ M_yz(x) (Rz)` with `R` the
    ///   coordinate swap.
    /// - `Y`: `M_zx(y) = y1 [[a111, a112], [a211, a212]] + y2 [[a121, a122], [a221, a222]]`,
    ///   rows indexed by `x`, so `f = xᵀ M_zx(y) z`.
    ///
    /// The determinant of each is the matching slice quadratic form.
    pub fn slice_matrix(&self, axis: Axis, v: &Vec2) -> BilinearForm {
        let w = [&v.v1, &v.v2];
        let a = &self.a;
        let comb = |e: [(usize, usize, usize); 2]| {
            w[0] * &a[e[0].0][e[0].1][e[0].2] + w[1] * &a[e[1].0][e[1].1][e[1].2]
        };
        match axis {
            Axis::Z => BilinearForm::new(
                comb([(0, 0, 0), (0, 0, 1)]),
                comb([(0, 1, 0), (0, 1, 1)]),
                comb([(1, 0, 0), (1, 0, 1)]),
                comb([(1, 1, 0), (1, 1, 1)]),
            ),
            Axis::X => BilinearForm::new(
                comb([(0, 1, 1), (1, 1, 1)]),
                comb([(0, 1, 0), (1, 1, 0)]),
                comb([(0, 0, 1), (1, 0, 1)]),
                comb([(0, 0, 0), (1, 0, 0)]),
            ),
            Axis::Y => BilinearForm::new(
                comb([(0, 0, 0), (0, 1, 0)]),
                comb([(0, 0, 1), (0, 1, 1)]),
                comb([(1, 0, 0), (1, 1, 0)]),
                comb([(1, 0, 1), (1, 1, 1)]),
            ),
        }
    }

    /// The bilinear form `f_w(u, v) = f` with `w = v` fixed on `axis`, where
    /// `(u, v)` is [`Axis::pencil_pair`]: `f_z(x, y)`, `f_x(y, z)`, `f_y(z, x)`.
    /// Its determinant is the slice form `Δ` evaluated at `v`.
    pub fn pencil(&self, axis: Axis, v: &Vec2) -> BilinearForm {
        let w = [&v.v1, &v.v2];
        let (ru, rv) = axis.pencil_pair();
        let entry = |r: usize, c: usize| {
            (0..2)
                .map(|t| {
                    let mut idx = [0; 3];
                    idx[axis.slot()] = t;
                    idx[ru.slot()] = r;
                    idx[rv.slot()] = c;
                    w[t] * self.at_axes(idx)
                })
                .sum::<Int>()
        };
        BilinearForm::new(entry(0, 0), entry(0, 1), entry(1, 0), entry(1, 1))
    }

    /// Slice determinant forms, coefficient by coefficient.
    pub fn delta_form(&self, pair: PairAxis) -> BinaryQuadForm {
        let a = |i: usize, j: usize, k: usize| &self.a[i - 1][j - 1][k - 1];
        match pair {
            PairAxis::Xy => BinaryQuadForm::new(
                a(1, 1, 1) * a(2, 2, 1) - a(1, 2, 1) * a(2, 1, 1),
                a(1, 1, 1) * a(2, 2, 2) + a(1, 1, 2) * a(2, 2, 1)
                    - a(2, 1, 2) * a(1, 2, 1)
                    - a(2, 1, 1) * a(1, 2, 2),
                a(1, 1, 2) * a(2, 2, 2) - a(1, 2, 2) * a(2, 1, 2),
            ),
            PairAxis::Yz => BinaryQuadForm::new(
                a(1, 1, 1) * a(1, 2, 2) - a(1, 1, 2) * a(1, 2, 1),
                a(1, 1, 1) * a(2, 2, 2) + a(2, 1, 1) * a(1, 2, 2)
                    - a(1, 1, 2) * a(2, 2, 1)
                    - a(2, 1, 2) * a(1, 2, 1),
                a(2, 1, 1) * a(2, 2, 2) - a(2, 1, 2) * a(2, 2, 1),
            ),
            PairAxis::Zx => BinaryQuadForm::new(
                a(1, 1, 1) * a(2, 1, 2) - a(1, 1, 2) * a(2, 1, 1),
                a(1, 1, 1) * a(2, 2, 2) + a(2, 1, 2) * a(1, 2, 1)
                    - a(1, 1, 2) * a(2, 2, 1)
                    - a(2, 1, 1) * a(1, 2, 2),
                a(1, 2, 1) * a(2, 2, 2) - a(1, 2, 2) * a(2, 2, 1),
            ),
        }
    }

    /// Cayley's hyperdeterminant of the 2×2×2 array.
    pub fn hyperdet(&self) -> Int {
        let a = |i: usize, j: usize, k: usize| &self.a[i - 1][j - 1][k - 1];
        let sq = |x: &Int, y: &Int| x * x * y * y;
        let quad = |p: &Int, q: &Int, r: &Int, s: &Int| p * q * r * s;
        let two = Int::from(2);
        let four = Int::from(4);
        sq(a(1, 2, 2), a(2, 1, 1))
            + sq(a(1, 1, 1), a(2, 2, 2))
            + sq(a(2, 1, 2), a(1, 2, 1))
            + sq(a(1, 1, 2), a(2, 2, 1))
            - &two * quad(a(1, 1, 1), a(1, 2, 2), a(2, 1, 1), a(2, 2, 2))
            - &two * quad(a(2, 1, 1), a(1, 2, 2), a(1, 1, 2), a(2, 2, 1))
            - &two * quad(a(2, 1, 1), a(1, 2, 2), a(2, 1, 2), a(1, 2, 1))
            - &two * quad(a(2, 2, 2), a(1, 1, 1), a(2, 1, 2), a(1, 2, 1))
            - &two * quad(a(2, 2, 2), a(1, 1, 1), a(1, 1, 2), a(2, 2, 1))
            - &two * quad(a(1, 1, 2), a(1, 2, 1), a(2, 1, 2), a(2, 2, 1))
            + &four * quad(a(1, 1, 2), a(1, 2, 1), a(2, 1, 1), a(2, 2, 2))
            + &four * quad(a(1, 1, 1), a(1, 2, 2), a(2, 1, 2), a(2, 2, 1))
    }

    /// The linear forms in the `axis` block that multiply each monomial of
    /// the other two blocks.
    ///
    /// For `Z` the slots are `x1y1, x1y2, x2y1, x2y2` and the line of slot
    /// `x_i y_j` is `(a_ij1, a_ij2)`. For `X` the slots run over `y_j z_k`,
    /// for `Y` over `x_i z_k`.
    pub fn coefficient_lines(&self, axis: Axis) -> [LinearForm2; 4] {
        let (u, v) = axis.factor_pair();
        std::array::from_fn(|slot| {
            let (r, c) = (slot / 2, slot % 2);
            let coef = |t: usize| {
                let mut idx = [0; 3];
                idx[axis.slot()] = t;
                idx[u.slot()] = r;
                idx[v.slot()] = c;
                self.at_axes(idx).clone()
            };
            LinearForm2::new(coef(0), coef(1))
        })
    }

    /// gcd of the six 2×2 minors of the 4×2 matrix of coefficient lines.
    pub fn minor_gcd(&self, axis: Axis) -> Int {
        let lines = self.coefficient_lines(axis);
        let mut g = Int::zero();
        for i in 0..4 {
            for j in (i + 1)..4 {
                let m = &lines[i].c1 * &lines[j].c2 - &lines[i].c2 * &lines[j].c1;
                g = g.gcd(&m);
            }
        }
        g
    }

    /// Splits off a linear factor in the `axis` block when the two slices
    /// along that block are rationally dependent. Returns `(L, B)` with
    /// `f = L(w) · B(u, v)` (`(u, v) = axis.factor_pair()`) and `L` primitive.
    pub fn linear_factor(&self, axis: Axis) -> Option<(LinearForm2, BilinearForm)> {
        let (u, v) = axis.factor_pair();
        let slice = |t: usize| -> [Int; 4] {
            std::array::from_fn(|n| {
                let mut idx = [0; 3];
                idx[axis.slot()] = t;
                idx[u.slot()] = n / 2;
                idx[v.slot()] = n % 2;
                self.at_axes(idx).clone()
            })
        };
        let (s1, s2) = (slice(0), slice(1));
        for p in 0..4 {
            for q in (p + 1)..4 {
                if &s1[p] * &s2[q] != &s1[q] * &s2[p] {
                    return None;
                }
            }
        }
        let pivot = if s1.iter().all(Zero::is_zero) {
            &s2
        } else {
            &s1
        };
        if pivot.iter().all(Zero::is_zero) {
            return None;
        }
        let g = content(pivot).expect("nonempty");
        let base: Vec<Int> = pivot.iter().map(|e| e / &g).collect();
        let n = base
            .iter()
            .position(|e| !e.is_zero())
            .expect("nonzero pivot");
        let raw = LinearForm2::new(&s1[n] / &base[n], &s2[n] / &base[n]);
        let linear = raw.normalized();
        let scale = if !linear.c1.is_zero() {
            &raw.c1 / &linear.c1
        } else {
            &raw.c2 / &linear.c2
        };
        let bilinear = BilinearForm::new(
            &base[0] * &scale,
            &base[1] * &scale,
            &base[2] * &scale,
            &base[3] * &scale,
        );
        Some((linear, bilinear))
    }

    pub fn vanishing_pattern(&self) -> VanishingPattern {
        VanishingPattern {
            xy: self.delta_form(PairAxis::Xy).is_zero(),
            yz: self.delta_form(PairAxis::Yz).is_zero(),
            zx: self.delta_form(PairAxis::Zx).is_zero(),
        }
    }

    pub fn classify(&self) -> TrilinearClass {
        let hyperdet = self.hyperdet();
        let vanishing = self.vanishing_pattern();
        let kind = if self.is_zero() {
            TrilinearKind::ZeroForm
        } else {
            match Axis::ALL
                .iter()
                .find_map(|&ax| self.linear_factor(ax).map(|f| (ax, f)))
            {
                None => TrilinearKind::NoLinearFactor,
                Some((axis, (linear, bilinear))) => match bilinear.classify() {
                    BilinearClass::Reducible { lx, ly, scale } => {
                        let (u, v) = axis.factor_pair();
                        let mut forms = [None, None, None];
                        forms[axis.slot()] = Some(linear);
                        forms[u.slot()] = Some(lx);
                        forms[v.slot()] = Some(ly);
                        let [lx, ly, lz] = forms.map(|f| f.expect("all slots filled"));
                        TrilinearKind::TripleLinear { lx, ly, lz, scale }
                    }
                    _ => TrilinearKind::LinearTimesBilinear {
                        axis,
                        linear,
                        bilinear,
                    },
                },
            }
        };
        TrilinearClass {
            kind,
            hyperdet,
            vanishing,
        }
    }

    /// Partial derivatives `[∂x1, ∂x2, ∂y1, ∂y2, ∂z1, ∂z2]` at a point.
    pub fn gradient(&self, x: &Vec2, y: &Vec2, z: &Vec2) -> [Int; 6] {
        let v = [[&x.v1, &x.v2], [&y.v1, &y.v2], [&z.v1, &z.v2]];
        std::array::from_fn(|n| {
            let (blk, t) = (n / 2, n % 2);
            let mut acc = Int::zero();
            for r in 0..2 {
                for c in 0..2 {
                    let idx = match blk {
                        0 => [t, r, c],
                        1 => [r, t, c],
                        _ => [r, c, t],
                    };
                    let (p, q) = match blk {
                        0 => (v[1][r], v[2][c]),
                        1 => (v[0][r], v[2][c]),
                        _ => (v[0][r], v[1][c]),
                    };
                    acc += self.at_axes(idx) * p * q;
                }
            }
            acc
        })
    }

    /// Euler's identity for the degree-3 form: `Σ v ∂f/∂v = 3 f`.
    pub fn euler_check(&self, x: &Vec2, y: &Vec2, z: &Vec2) -> bool {
        let g = self.gradient(x, y, z);
        let coords = [&x.v1, &x.v2, &y.v1, &y.v2, &z.v1, &z.v2];
        let lhs: Int = coords.iter().zip(g.iter()).map(|(c, d)| *c * d).sum();
        lhs == Int::from(3) * self.eval(x, y, z)
    }

    /// `s = Δ_xy(z) Δ_yz(x) Δ_zx(y)`.
    pub fn s_value(&self, x: &Vec2, y: &Vec2, z: &Vec2) -> Int {
        self.delta_form(PairAxis::Xy).eval(z)
            * self.delta_form(PairAxis::Yz).eval(x)
            * self.delta_form(PairAxis::Zx).eval(y)
    }

    /// A point of `(P¹)³` where all six partial derivatives vanish, for a
    /// nonzero form with vanishing hyperdeterminant. Coordinates are primitive
    /// with the first nonzero entry positive.
    pub fn singular_point(&self) -> Result<[Vec2; 3]> {
        if self.is_zero() {
            return Err(Error::Precondition(
                "the zero form has no isolated singular point".into(),
            ));
        }
        let d = self.hyperdet();
        if !d.is_zero() {
            return Err(Error::Precondition(format!(
                "hyperdeterminant is {d}, a singular point needs D = 0"
            )));
        }
        let point = if let Some((axis, (linear, bilinear))) = Axis::ALL
            .iter()
            .find_map(|&ax| self.linear_factor(ax).map(|f| (ax, f)))
        {
            // L(w) = 0 and B(u, v) = 0 kill every partial.
            let w = linear.zero_point().expect("primitive factor is nonzero");
            let u = Vec2::new(1, 0);
            let [row1, _] = bilinear.rows();
            let v = row1.zero_point().unwrap_or_else(|| Vec2::new(1, 0));
            let (pu, pv) = axis.factor_pair();
            let mut slots = [None, None, None];
            slots[axis.slot()] = Some(w);
            slots[pu.slot()] = Some(u);
            slots[pv.slot()] = Some(v);
            slots.map(|s| s.expect("all slots filled"))
        } else {
            // Each slice form is C·L² with C ≠ 0; the zeros of the three L's
            // form the singular point.
            let root = |pair: PairAxis| -> Result<Vec2> {
                let (c, l) = self.delta_form(pair).square_decompose()?;
                if c.is_zero() {
                    return Err(Error::Invariant(format!(
                        "Δ_{} vanishes identically without a linear factor",
                        pair.name()
                    )));
                }
                Ok(l.zero_point().expect("primitive form"))
            };
            [
                root(PairAxis::Yz)?,
                root(PairAxis::Zx)?,
                root(PairAxis::Xy)?,
            ]
        };
        let [x, y, z] = point;
        if self.gradient(&x, &y, &z).iter().any(|g| !g.is_zero()) {
            return Err(Error::Invariant(format!(
                "constructed point {x}, {y}, {z} is not singular"
            )));
        }
        Ok([x, y, z])
    }

    /// Exhaustive search for a common zero of all partials among primitive
    /// vectors with entries in `[-bound, bound]`.
    pub fn search_singular_point(&self, bound: i64) -> Result<Option<[Vec2; 3]>> {
        let e = self.small_entries()?;
        let pts: Vec<[i128; 2]> =
            crate::exact::primitive_points(&crate::exact::Box2::square(bound as f64)?)
                .map(|p| [p[0] as i128, p[1] as i128])
                .collect();
        for y in &pts {
            for z in &pts {
                let dx = |i: usize| -> i128 {
                    (0..2)
                        .flat_map(|j| (0..2).map(move |k| (j, k)))
                        .map(|(j, k)| e[i][j][k] * y[j] * z[k])
                        .sum()
                };
                if dx(0) != 0 || dx(1) != 0 {
                    continue;
                }
                for x in &pts {
                    let dy = |j: usize| -> i128 {
                        (0..2)
                            .flat_map(|i| (0..2).map(move |k| (i, k)))
                            .map(|(i, k)| e[i][j][k] * x[i] * z[k])
                            .sum()
                    };
                    let dz = |k: usize| -> i128 {
                        (0..2)
                            .flat_map(|i| (0..2).map(move |j| (i, j)))
                            .map(|(i, j)| e[i][j][k] * x[i] * y[j])
                            .sum()
                    };
                    if dy(0) == 0 && dy(1) == 0 && dz(0) == 0 && dz(1) == 0 {
                        let v = |p: &[i128; 2]| Vec2::new(p[0] as i64, p[1] as i64);
                        return Ok(Some([v(x), v(y), v(z)]));
                    }
                }
            }
        }
        Ok(None)
    }

    /// Entries as `i128`, requiring `|a_ijk| < 2^40` so cubic products of
    /// small vectors stay exact.
    fn small_entries(&self) -> Result<[[[i128; 2]; 2]; 2]> {
        let mut out = [[[0i128; 2]; 2]; 2];
        for (i, plane) in self.a.iter().enumerate() {
            for (j, row) in plane.iter().enumerate() {
                for (k, v) in row.iter().enumerate() {
                    out[i][j][k] = v
                        .to_i64()
                        .filter(|x| x.unsigned_abs() < (1u64 << 40))
                        .ok_or_else(|| Error::OutOfRange(format!("entry {v} too large")))?
                        as i128;
                }
            }
        }
        Ok(out)
    }
}

impl FromStr for Hypermatrix {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let v = parse_ints(s, 8, "hypermatrix")?;
        let arr: [Int; 8] = v.try_into().expect("length checked");
        Ok(Self::from_lex(arr))
    }
}

impl fmt::Display for Hypermatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.lex().iter().map(|v| v.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}
