//! Exact tools for octic plane arrangements in ℙ³.
//!
//! Everything runs over exact rational arithmetic. The crate models an
//! arrangement of eight planes (possibly with symbolic parameters), finds
//! its incidence structure, builds the elliptic and K3 fibrations attached
//! to high-multiplicity points and to double/triple lines of the branch
//! divisor, computes Weierstrass invariants and Kodaira fiber types, and
//! constructs and certifies rational maps between the associated double
//! covers.

pub mod arrangement;
pub mod bimap;
pub mod cli;
pub mod elliptic;
pub mod exactalg;
pub mod k3fib;
