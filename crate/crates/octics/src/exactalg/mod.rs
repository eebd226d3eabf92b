//! Exact arithmetic kernel: arbitrary-precision rationals, sparse
//! multivariate polynomials, rational functions, GCDs, resultants, square
//! extraction, formal square roots, cross-ratios and Möbius transforms.
//!
//! All values are immutable after construction; operations are pure.

pub mod gcd;
pub mod mobius;
pub mod parse;
pub mod poly;
pub mod ratfunc;
pub mod resultant;
pub mod sqrt;
pub mod square;
pub mod symbol;

pub use gcd::{gcd, gcd_many};
pub use mobius::{cross_ratio, cross_ratio_orbit, mobius_from_pairs, same_cross_ratio_orbit, Mobius, P1};
pub use parse::{parse_poly, parse_ratfunc};
pub use poly::{Mono, MultiPoly};
pub use ratfunc::{substitute, substitute_poly, RatFunc};
pub use resultant::{bareiss_det, discriminant, resultant};
pub use sqrt::SqrtScalar;
pub use square::{extract_square, rational_square_part, squarefree_part, Factored};
pub use symbol::{Symbol, Vars};

/// Arbitrary-precision rational scalar (reduced, positive denominator).
pub type BigRat = num_rational::BigRational;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("division by zero: {0}")]
    DivisionByZero(String),
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("degenerate quadruple: {0}")]
    DegenerateQuadruple(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
