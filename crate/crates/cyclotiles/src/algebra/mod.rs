//! Exact arithmetic: rationals, cyclotomic fields, polynomials, resultants.

pub mod cyclotomic;
pub mod galois;
pub mod intpoly;
pub mod modular;
pub mod parse;
pub mod resultant;
pub mod roots;
pub mod sparse;
pub mod univariate;

pub use cyclotomic::{cyclotomic_polynomial, totient, CyclotomicElement};
pub use galois::{galois_conjugate, rationalize};
pub use intpoly::IntPoly;
pub use num_rational::BigRational as Rational;
pub use parse::parse_polynomial;
pub use resultant::resultant_eliminate;
pub use roots::RootOfUnity;
pub use sparse::{Exponent, SparsePoly, MAX_VARS};
pub use univariate::UniPoly;

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

/// Monic gcd of univariate polynomials over a cyclotomic field.
pub fn poly_gcd_univariate(f: &UniPoly, g: &UniPoly) -> UniPoly {
    f.gcd(g)
}

/// Exact value of P at a point whose coordinates are roots of unity.
pub fn evaluate_at_point(p: &SparsePoly, point: &[RootOfUnity]) -> CyclotomicElement {
    p.evaluate_at_roots(point)
}
