//! Dense univariate polynomials over cyclotomic fields.

use super::cyclotomic::CyclotomicElement;
use super::intpoly::IntPoly;
use super::sparse::{SparsePoly, MAX_VARS};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::One;
use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct UniPoly {
    /// Index of the variable this polynomial is written in.
    pub var: usize,
    coeffs: Vec<CyclotomicElement>,
}

impl UniPoly {
    pub fn new(var: usize, mut coeffs: Vec<CyclotomicElement>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { var, coeffs }
    }

    pub fn zero(var: usize) -> Self {
        UniPoly {
            var,
            coeffs: vec![],
        }
    }

    pub fn from_int(var: usize, c: &[i64]) -> Self {
        Self::new(
            var,
            c.iter().map(|&k| CyclotomicElement::from_int(k)).collect(),
        )
    }

    pub fn from_intpoly(var: usize, p: &IntPoly) -> Self {
        Self::new(
            var,
            p.coeffs()
                .iter()
                .map(|c| CyclotomicElement::from_bigint(c.clone()))
                .collect(),
        )
    }

    /// Read a sparse polynomial that only involves `var` with nonnegative exponents.
    pub fn from_sparse(p: &SparsePoly, var: usize) -> Option<Self> {
        let mut coeffs = vec![CyclotomicElement::zero(); p.max_degree(var).max(0) as usize + 1];
        for (e, c) in p.terms() {
            if (0..MAX_VARS).any(|i| i != var && e[i] != 0) || e[var] < 0 {
                return None;
            }
            coeffs[e[var] as usize] = c.clone();
        }
        Some(Self::new(var, coeffs))
    }

    pub fn to_sparse(&self, nvars: usize) -> SparsePoly {
        SparsePoly::from_terms(
            nvars,
            self.coeffs.iter().enumerate().map(|(i, c)| {
                let mut e = [0; MAX_VARS];
                e[self.var] = i as i64;
                (e, c.clone())
            }),
        )
    }

    pub fn coeffs(&self) -> &[CyclotomicElement] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lc(&self) -> CyclotomicElement {
        self.coeffs
            .last()
            .cloned()
            .unwrap_or_else(CyclotomicElement::zero)
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_rational())
    }

    /// Clear denominators of a rational polynomial.
    pub fn to_intpoly(&self) -> Option<IntPoly> {
        let mut den = BigInt::one();
        for c in &self.coeffs {
            den = den.lcm(c.to_rational()?.denom());
        }
        Some(IntPoly::new(
            self.coeffs
                .iter()
                .map(|c| {
                    let q = c.to_rational().unwrap();
                    q.numer() * (&den / q.denom())
                })
                .collect(),
        ))
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let z = CyclotomicElement::zero();
        Self::new(
            self.var,
            (0..n)
                .map(|i| {
                    self.coeffs
                        .get(i)
                        .unwrap_or(&z)
                        .add(o.coeffs.get(i).unwrap_or(&z))
                })
                .collect(),
        )
    }

    pub fn neg(&self) -> Self {
        Self::new(self.var, self.coeffs.iter().map(|c| c.neg()).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero(self.var);
        }
        let mut out = vec![CyclotomicElement::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Self::new(self.var, out)
    }

    pub fn scale(&self, c: &CyclotomicElement) -> Self {
        Self::new(self.var, self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.lc().inv().unwrap())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.var,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.scale(&BigRational::from_integer(BigInt::from(i))))
                .collect(),
        )
    }

    /// Quotient and remainder over the coefficient field.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let dd = d.coeffs.len() - 1;
        let inv = d.lc().inv().unwrap();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Self::zero(self.var), self.clone());
        }
        let mut q = vec![CyclotomicElement::zero(); r.len() - dd];
        for k in (dd..r.len()).rev() {
            if r[k].is_zero() {
                continue;
            }
            let c = r[k].mul(&inv);
            for (i, di) in d.coeffs.iter().enumerate() {
                r[k - dd + i] = r[k - dd + i].sub(&c.mul(di));
            }
            q[k - dd] = c;
        }
        r.truncate(dd);
        (Self::new(self.var, q), Self::new(self.var, r))
    }

    /// Monic gcd over the coefficient field.
    pub fn gcd(&self, o: &Self) -> Self {
        if self.is_rational() && o.is_rational() {
            let a = self.to_intpoly().unwrap();
            let b = o.to_intpoly().unwrap();
            return Self::from_intpoly(self.var, &a.gcd(&b)).monic();
        }
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn eval(&self, x: &CyclotomicElement) -> CyclotomicElement {
        self.coeffs
            .iter()
            .rev()
            .fold(CyclotomicElement::zero(), |acc, c| acc.mul(x).add(c))
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let nvars = self.var + 1;
        write!(f, "{}", self.to_sparse(nvars))
    }
}
