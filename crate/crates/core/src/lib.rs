//! Exact counting of primitive integer points on bilinear and trilinear forms.
//!
//! The crate is organised bottom-up:
//!
//! - [`exact`]: gcd/content, primitivity, divisor enumeration and box iteration.
//! - [`forms`]: 2×2 bilinear forms and 2×2×2 hypermatrices, the Cayley
//!   hyperdeterminant, slice determinants, classification and singular points.
//! - [`lattice`]: congruence lattices in Z², Gauss reduction and primitive
//!   lattice points inside ellipses.
//! - [`counting`]: brute-force and divisor/lattice solution counters,
//!   the `s = 0` stratification and the bound expressions.
//! - [`harness`]: seeded random instances, verification suites and reports.
//!
//! Runnable walkthroughs for each capability live in the crate's
//! `examples/` directory (`cargo run --example <name>`).

pub mod counting;
pub mod error;
pub mod exact;
pub mod forms;
pub mod harness;
pub mod lattice;

pub use counting::{
    aqt_count, count_bilinear_brute, count_bilinear_fast, count_trilinear, count_trilinear_brute,
    theorem1_bound, theorem2_bound, AqtReport, BoundReport, CountOptions, Solution, SolutionCensus,
    Theorem2Bound,
};
pub use error::{Error, Result};
pub use exact::{
    content, divisor_count, is_primitive, primitive_vectors_in_box, signed_divisor_pairs, Box2,
    Int, Vec2,
};
pub use forms::{
    Axis, BilinearClass, BilinearForm, BinaryQuadForm, Hypermatrix, LinearForm2, PairAxis,
    TrilinearClass, TrilinearKind, VanishingPattern,
};
pub use lattice::{Ellipse2, Lattice2, ReducedBasisCertificate};
