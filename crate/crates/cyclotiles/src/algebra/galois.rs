//! Galois conjugation and rationalization by the field norm.

use super::sparse::SparsePoly;
use num_integer::Integer;

/// Apply zeta_n -> zeta_n^k to every coefficient.
pub fn galois_conjugate(p: &SparsePoly, k: i64) -> SparsePoly {
    p.conjugate(k)
}

/// Units of Z/n other than 1.
pub fn nontrivial_units(n: u64) -> Vec<i64> {
    (2..n)
        .filter(|k| k.gcd(&n) == 1)
        .map(|k| k as i64)
        .collect()
}

/// Product of all Galois conjugates of P over the smallest cyclotomic field
/// containing its coefficients. The result has rational coefficients and
/// vanishes on every conjugate of every zero of P.
pub fn rationalize(p: &SparsePoly) -> SparsePoly {
    let n = p.coefficient_order();
    if n == 1 {
        return p.clone();
    }
    let mut acc = p.clone();
    for k in nontrivial_units(n) {
        acc = acc.mul(&p.conjugate(k));
    }
    debug_assert!(acc.is_rational());
    acc
}
