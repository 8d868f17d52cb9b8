//! Exact coefficient arithmetic.
//!
//! Scalars are [`BigRational`]. Polynomials are sparse Laurent polynomials over
//! the fixed alphabet `q, z, t, u, v, T, α₁, …, α₁₀`, and rational functions are
//! kept in a canonical fully reduced form so that equality is structural.

mod gcd;
mod monomial;
mod parse;
mod poly;
mod ratfunc;

pub use gcd::poly_gcd;
pub use monomial::{Monomial, Variable, MAX_GENUS, NVARS};
pub use poly::{even_total_degree_part, exact_poly_divide, LaurentPoly};
pub use ratfunc::{ratfunc_arith, RatFunc, RatOp, Substitution};

pub use num_bigint::BigInt;
pub use num_rational::BigRational;
