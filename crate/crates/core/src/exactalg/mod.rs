//! Exact arithmetic: finite fields, cyclotomic numbers, the reduction between
//! them, polynomials over finite fields, linear algebra and Smith normal form.

mod cyclotomic;
mod field;
mod galois;
mod lift;
mod linalg;
mod poly;
mod snf;

pub use cyclotomic::{CycValue, CyclotomicField};
pub use field::{Field, Rationals};
pub use galois::{multiplicative_order, Fq, GaloisField, MAX_FIELD_ORDER};
pub use lift::BrauerLift;
pub use linalg::{
    determinant, inverse, kernel, left_kernel, linear_solve, rank, rref, LinearSolution, Matrix, Subspace,
};
pub use poly::{char_poly, factor_poly, Poly, PolyRing};
pub use snf::smith_normal_form;
