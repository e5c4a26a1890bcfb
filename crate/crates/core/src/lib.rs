//! Exact arithmetic for number fields: defining-polynomial parsing, maximal
//! orders, prime splitting, ramification invariants, quadratic forms over the
//! p-adic integers, and local analysis of the integral trace form.

pub mod arith;
pub mod equivalence;
pub mod error;
pub mod field;
pub mod invariants;
mod linalg;
pub mod matrix;
pub mod modpoly;
mod order;
pub mod parse;
pub mod place;
pub mod poly;
pub mod qform;
pub mod splitting;
mod sturm;
pub mod symbols;
pub mod trace;

pub use equivalence::{
    alpha_fingerprint, compare_fields, AlphaFingerprint, CompareReport, Verdict,
};
pub use error::{Error, Result};
pub use field::NumberField;
pub use invariants::{
    alpha, beta, classify, invariants, nonresidue_unit, nu, AForm, RamFlags, SquareClass,
};
pub use matrix::IntMatrix;
pub use modpoly::ModPoly;
pub use parse::{parse_poly, render_poly};
pub use place::Place;
pub use poly::IntPoly;
pub use qform::{
    det_square_class, hasse_witt, hyperbolic_sum, isometric_zp, jordan_decompose, DetClass,
    GramMatrix, Isometry, PAdicForm,
};
pub use splitting::{dedekind_index_divides, split_prime, SplittingType};
pub use trace::{
    local_trace_shape, predicted_local_trace, trace_genus_equal, trace_gram, verify_local_trace,
    TraceVerdict,
};
