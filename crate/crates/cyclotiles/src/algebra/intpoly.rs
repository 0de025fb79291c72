//! Dense univariate polynomials over Z.

use super::modular::{self, bigint_mod, Crt};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Coefficients lowest degree first; no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "IntPoly{:?}",
            self.coeffs
                .iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
        )
    }
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Self::from_i64(&[1])
    }

    /// x^n - 1
    pub fn x_pow_minus_one(n: usize) -> Self {
        let mut c = vec![BigInt::zero(); n + 1];
        c[0] = BigInt::from(-1);
        c[n] = BigInt::one();
        Self::new(c)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with the zero polynomial reported as `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn lc(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut g = self.content();
        if self.lc().is_negative() {
            g = -g;
        }
        Self::new(self.coeffs.iter().map(|c| c / &g).collect())
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![BigInt::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            out[i] += c;
        }
        Self::new(out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// f(-x)
    pub fn negate_var(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    /// f(x^k)
    pub fn compose_pow(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); (self.coeffs.len() - 1) * k + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i * k] = c.clone();
        }
        Self::new(out)
    }

    /// If f(x) = g(x^2), return g.
    pub fn even_part_root(&self) -> Option<Self> {
        if self.coeffs.iter().skip(1).step_by(2).any(|c| !c.is_zero()) {
            return None;
        }
        Some(Self::new(self.coeffs.iter().step_by(2).cloned().collect()))
    }

    /// Strip the largest power of x dividing f; returns (multiplicity, quotient).
    pub fn strip_x(&self) -> (usize, Self) {
        let k = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        (
            k,
            Self::new(self.coeffs[k.min(self.coeffs.len())..].to_vec()),
        )
    }

    pub fn eval_mod(&self, x: u64, p: u64) -> u64 {
        self.coeffs.iter().rev().fold(0, |acc, c| {
            modular::add_mod(modular::mul_mod(acc, x, p), bigint_mod(c, p), p)
        })
    }

    pub fn reduce_mod(&self, p: u64) -> Vec<u64> {
        let mut v: Vec<u64> = self.coeffs.iter().map(|c| bigint_mod(c, p)).collect();
        modular::trim(&mut v);
        v
    }

    /// Exact quotient over Z, or `None` if `d` does not divide `self` in Z[x].
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(Self::zero());
        }
        let dd = d.coeffs.len() - 1;
        if self.coeffs.len() - 1 < dd {
            return None;
        }
        let lc = d.lc();
        let mut r = self.coeffs.clone();
        let mut q = vec![BigInt::zero(); r.len() - dd];
        for k in (dd..r.len()).rev() {
            if r[k].is_zero() {
                continue;
            }
            let (c, rem) = r[k].div_rem(&lc);
            if !rem.is_zero() {
                return None;
            }
            let off = k - dd;
            for (i, di) in d.coeffs.iter().enumerate() {
                r[off + i] -= &c * di;
            }
            q[off] = c;
        }
        if r.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Self::new(q))
    }

    /// Pseudo-remainder: lc(d)^(deg f - deg d + 1) f mod d.
    pub fn prem(&self, d: &Self) -> Self {
        let dd = d.deg();
        if self.is_zero() || self.deg() < dd {
            return self.clone();
        }
        let lc = d.lc();
        let mut r = self.coeffs.clone();
        let mut steps = self.deg() - dd + 1;
        while r.len() > dd && !r.is_empty() {
            let k = r.len() - 1;
            let c = r[k].clone();
            for x in r.iter_mut() {
                *x *= &lc;
            }
            let off = k - dd;
            for (i, di) in d.coeffs.iter().enumerate() {
                r[off + i] -= &c * di;
            }
            steps -= 1;
            r.pop();
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        let f = num_traits::pow(lc, steps);
        Self::new(r.into_iter().map(|x| x * &f).collect())
    }

    /// Gcd over Q, returned primitive with positive leading coefficient.
    /// Multi-modular with exact divisibility verification; primitive PRS fallback.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.primitive();
        }
        if other.is_zero() {
            return self.primitive();
        }
        let a = self.primitive();
        let b = other.primitive();
        if a.deg() == 0 || b.deg() == 0 {
            return Self::one();
        }
        if let Some(g) = modular_gcd(&a, &b) {
            return g;
        }
        a.gcd_prs(&b)
    }

    fn gcd_prs(&self, other: &Self) -> Self {
        let (mut x, mut y) = if self.deg() >= other.deg() {
            (self.primitive(), other.primitive())
        } else {
            (other.primitive(), self.primitive())
        };
        while !y.is_zero() {
            let r = x.prem(&y);
            x = y;
            y = r.primitive();
        }
        x.primitive()
    }

    /// Square-free part over Q (primitive).
    pub fn squarefree(&self) -> Self {
        if self.deg() == 0 {
            return self.primitive();
        }
        let g = self.gcd(&self.derivative());
        self.primitive()
            .div_exact(&g)
            .expect("gcd divides")
            .primitive()
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        use num_traits::ToPrimitive;
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }
}

fn modular_gcd(a: &IntPoly, b: &IntPoly) -> Option<IntPoly> {
    let lc_gcd = a.lc().gcd(&b.lc());
    let mut best_deg = usize::MAX;
    let mut crt: Option<Crt> = None;
    let mut last: Option<IntPoly> = None;
    for &p in modular::primes().iter().take(2000) {
        if bigint_mod(&a.lc(), p) == 0 || bigint_mod(&b.lc(), p) == 0 {
            continue;
        }
        let g = modular::poly_gcd(&a.reduce_mod(p), &b.reduce_mod(p), p);
        let d = g.len() - 1;
        if d == 0 {
            return Some(IntPoly::one());
        }
        if d > best_deg {
            continue;
        }
        if d < best_deg {
            best_deg = d;
            crt = Some(Crt::new(d + 1));
            last = None;
        }
        let scale = bigint_mod(&lc_gcd, p);
        let img: Vec<u64> = g.iter().map(|&c| modular::mul_mod(c, scale, p)).collect();
        let c = crt.as_mut().unwrap();
        c.add(&img, p);
        let cand = IntPoly::new(c.symmetric()).primitive();
        if last.as_ref() == Some(&cand) {
            if a.div_exact(&cand).is_some() && b.div_exact(&cand).is_some() {
                return Some(cand);
            }
        }
        last = Some(cand);
    }
    None
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{}", mag)?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{}*x", mag)?,
                (_, true) => write!(f, "x^{}", i)?,
                (_, false) => write!(f, "{}*x^{}", mag, i)?,
            }
        }
        Ok(())
    }
}
