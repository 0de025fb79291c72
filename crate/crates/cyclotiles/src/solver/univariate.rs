//! Roots of unity of univariate polynomials.

use super::SolverError;
use crate::algebra::cyclotomic::{
    cyclotomic_coeffs, cyclotomic_polynomial, totient, CyclotomicElement,
};
use crate::algebra::intpoly::IntPoly;
use crate::algebra::modular::{self, bigint_mod};
use crate::algebra::resultant::resultant_eliminate;
use crate::algebra::sparse::{SparsePoly, MAX_VARS};
use crate::algebra::{RootOfUnity, UniPoly};
use num_bigint::BigInt;
use num_traits::Zero;
use std::collections::BTreeSet;

/// Largest gcd(g, op(g)) descent: the roots kept are those whose image under
/// the root map stays among the roots.
fn descend_fixpoint(f: &IntPoly, op: impl Fn(&IntPoly) -> IntPoly) -> IntPoly {
    let mut g = f.clone();
    loop {
        if g.deg() == 0 {
            return g;
        }
        let h = g.gcd(&op(&g));
        if h.deg() == g.deg() {
            return g;
        }
        g = h;
    }
}

/// Orders n with Phi_n | g, for g a product of distinct cyclotomic polynomials.
fn split_cyclotomic(g: &IntPoly) -> Result<Vec<u64>, SolverError> {
    let mut rest = g.primitive();
    let mut remaining = rest.deg() as u64;
    let mut out = Vec::new();
    let p = modular::primes()[7];
    let mut n = 1u64;
    while remaining > 0 {
        if n > 6 * g.deg() as u64 + 30 {
            return Err(SolverError::Internal(format!(
                "polynomial {} is not a product of cyclotomic factors",
                g
            )));
        }
        let phi = totient(n);
        if phi <= remaining && divides_mod(&rest, n, p) {
            if let Some(q) = rest.div_exact(&cyclotomic_polynomial(n)) {
                rest = q;
                remaining -= phi;
                out.push(n);
                continue;
            }
        }
        n += 1;
    }
    Ok(out)
}

/// Phi_n | f modulo p (necessary condition for divisibility over Z).
fn divides_mod(f: &IntPoly, n: u64, p: u64) -> bool {
    let phi = cyclotomic_coeffs(n);
    let mut r = f.reduce_mod(p);
    if r.len() < phi.len() {
        return r.is_empty();
    }
    let b: Vec<u64> = phi
        .iter()
        .map(|&c| bigint_mod(&BigInt::from(c), p))
        .collect();
    r = modular::poly_rem(&r, &b, p);
    r.is_empty()
}

/// Orders n >= 1 such that Phi_n divides f (f over Z, nonzero).
///
/// Recursive gcd scheme: roots closed under squaring, under x -> -x^2, and
/// roots paired with their negatives (handled through f(x) = h(x^2)).
pub fn cyclotomic_orders(f: &IntPoly) -> Result<Vec<u64>, SolverError> {
    if f.is_zero() {
        return Err(SolverError::IdenticallyZero);
    }
    let (_, f) = f.strip_x();
    if f.deg() == 0 {
        return Ok(vec![]);
    }
    let f = f.squarefree();
    let mut orders = BTreeSet::new();

    let odd = descend_fixpoint(&f, |g| g.compose_pow(2));
    orders.extend(split_cyclotomic(&odd)?);
    let twice_odd = descend_fixpoint(&f, |g| g.compose_pow(2).neg_var_after_square());
    orders.extend(split_cyclotomic(&twice_odd)?);

    let paired = f.gcd(&f.negate_var());
    if paired.deg() > 0 {
        let h = paired
            .even_part_root()
            .ok_or_else(|| SolverError::Internal("gcd(f(x), f(-x)) is not even".into()))?;
        for m in cyclotomic_orders(&h)? {
            orders.insert(2 * m);
            if m % 2 == 1 {
                orders.insert(m);
            }
        }
    }
    let orders: Vec<u64> = orders.into_iter().collect();
    for &n in &orders {
        debug_assert!(f.div_exact(&cyclotomic_polynomial(n)).is_some());
    }
    Ok(orders)
}

trait NegAfterSquare {
    fn neg_var_after_square(&self) -> Self;
}

impl NegAfterSquare for IntPoly {
    /// Given g(x^2), produce g(-x^2).
    fn neg_var_after_square(&self) -> Self {
        IntPoly::new(
            self.coeffs()
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 4 == 2 { -c } else { c.clone() })
                .collect(),
        )
    }
}

pub fn roots_of_orders(orders: &[u64]) -> Vec<RootOfUnity> {
    let mut out = Vec::new();
    for &n in orders {
        for k in 0..n {
            if num_integer::gcd(k, n) == 1 {
                out.push(RootOfUnity::new(k as i64, n));
            }
        }
    }
    out.sort();
    out
}

/// All roots of unity that are zeros of a rational univariate polynomial.
pub fn cyclotomic_roots_univariate(f: &UniPoly) -> Result<Vec<RootOfUnity>, SolverError> {
    let ip = f
        .to_intpoly()
        .ok_or_else(|| SolverError::Precondition("coefficients must be rational".into()))?;
    Ok(roots_of_orders(&cyclotomic_orders(&ip)?))
}

/// Roots of unity of a univariate polynomial with cyclotomic coefficients:
/// rationalize by the norm, solve, keep exact zeros.
pub fn cyclotomic_roots_any(f: &UniPoly) -> Result<Vec<RootOfUnity>, SolverError> {
    if f.is_zero() {
        return Err(SolverError::IdenticallyZero);
    }
    if f.is_rational() {
        return cyclotomic_roots_univariate(f);
    }
    let n = f
        .coeffs()
        .iter()
        .fold(1, |a, c| crate::algebra::cyclotomic::lcm(a, c.order()));
    // G(x, t) with zeta_n -> t, then Res_t(Phi_n(t), G).
    let mut g = SparsePoly::zero(2);
    for (i, c) in f.coeffs().iter().enumerate() {
        for (j, q) in c.embed(n).iter().enumerate() {
            if !q.is_zero() {
                let mut e = [0; MAX_VARS];
                e[0] = i as i64;
                e[1] = j as i64;
                g.add_term(
                    e,
                    &CyclotomicElement::from_rational(&num_rational::BigRational::new(
                        q.clone(),
                        c.denominator().clone(),
                    )),
                );
            }
        }
    }
    let phi = SparsePoly::from_terms(
        2,
        cyclotomic_coeffs(n)
            .iter()
            .enumerate()
            .map(|(j, &c)| ([0, j as i64, 0], CyclotomicElement::from_int(c))),
    );
    let norm = resultant_eliminate(&phi, &g, 1).map_err(SolverError::Algebra)?;
    let nu = UniPoly::from_sparse(&norm, 0)
        .ok_or_else(|| SolverError::Internal("norm is not univariate".into()))?;
    let cands = cyclotomic_roots_univariate(&nu)?;
    Ok(cands
        .into_iter()
        .filter(|r| f.eval(&r.to_element()).is_zero())
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn orders(c: &[i64]) -> Vec<u64> {
        cyclotomic_orders(&IntPoly::from_i64(c)).unwrap()
    }

    #[test]
    fn single_cyclotomic_polynomials() {
        for n in 1..60u64 {
            assert_eq!(
                cyclotomic_orders(&cyclotomic_polynomial(n)).unwrap(),
                vec![n],
                "n = {}",
                n
            );
        }
    }

    #[test]
    fn mixed_with_noncyclotomic_factors() {
        // (x^2 - x - 1)(x^4 - x^2 + 1)(x + 1)^2 (2x - 1)
        let f = IntPoly::from_i64(&[-1, -1, 1])
            .mul(&cyclotomic_polynomial(12))
            .mul(&IntPoly::from_i64(&[1, 1]))
            .mul(&IntPoly::from_i64(&[1, 1]))
            .mul(&IntPoly::from_i64(&[-1, 2]));
        assert_eq!(cyclotomic_orders(&f).unwrap(), vec![2, 12]);
        // Salem-like and Lehmer polynomial have no roots of unity
        assert!(orders(&[1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1]).is_empty());
        // x^2 - 2 and x^4 - 2 are paired under x -> -x but not cyclotomic
        assert!(orders(&[-2, 0, 0, 0, 1]).is_empty());
    }

    #[test]
    fn norm_route_for_cyclotomic_coefficients() {
        // (x - zeta_12)(x + 3)
        let z = CyclotomicElement::zeta_pow(12, 1);
        let f = UniPoly::new(0, vec![z.neg(), CyclotomicElement::one()])
            .mul(&UniPoly::from_int(0, &[3, 1]));
        assert_eq!(
            cyclotomic_roots_any(&f).unwrap(),
            vec![RootOfUnity::new(1, 12)]
        );
    }
}
