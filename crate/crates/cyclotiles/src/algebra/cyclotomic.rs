//! Elements of cyclotomic fields Q(zeta_n) in the power basis modulo Phi_n.

use super::intpoly::IntPoly;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

pub fn totient(n: u64) -> u64 {
    let mut result = n;
    for p in prime_factors(n) {
        result = result / p * (p - 1);
    }
    result
}

/// Distinct prime factors in increasing order.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a / a.gcd(&b) * b
}

fn phi_cache() -> &'static RwLock<HashMap<u64, Arc<Vec<i64>>>> {
    static CACHE: OnceLock<RwLock<HashMap<u64, Arc<Vec<i64>>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Coefficients of Phi_n, lowest degree first.
pub fn cyclotomic_coeffs(n: u64) -> Arc<Vec<i64>> {
    assert!(n >= 1, "cyclotomic polynomial order must be positive");
    if let Some(c) = phi_cache().read().unwrap().get(&n) {
        return c.clone();
    }
    // x^n - 1 divided by Phi_d for proper divisors d.
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in divisors(n) {
        if d == n {
            continue;
        }
        let den = cyclotomic_coeffs(d);
        num = div_monic_i64(&num, &den);
    }
    let arc = Arc::new(num);
    phi_cache().write().unwrap().insert(n, arc.clone());
    arc
}

fn div_monic_i64(a: &[i64], b: &[i64]) -> Vec<i64> {
    let db = b.len() - 1;
    let mut r = a.to_vec();
    let mut q = vec![0i64; a.len() - db];
    for k in (db..a.len()).rev() {
        let c = r[k];
        if c == 0 {
            continue;
        }
        q[k - db] = c;
        for (i, &bi) in b.iter().enumerate() {
            r[k - db + i] -= c * bi;
        }
    }
    debug_assert!(r.iter().all(|&x| x == 0));
    q
}

/// Phi_n as an integer polynomial.
pub fn cyclotomic_polynomial(n: u64) -> IntPoly {
    IntPoly::from_i64(&cyclotomic_coeffs(n))
}

fn power_table_cache() -> &'static RwLock<HashMap<u64, Arc<Vec<Vec<i64>>>>> {
    static CACHE: OnceLock<RwLock<HashMap<u64, Arc<Vec<Vec<i64>>>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Row i holds zeta_n^i reduced to the power basis, for 0 <= i < n.
fn power_table(n: u64) -> Arc<Vec<Vec<i64>>> {
    if let Some(t) = power_table_cache().read().unwrap().get(&n) {
        return t.clone();
    }
    let phi = cyclotomic_coeffs(n);
    let d = phi.len() - 1;
    let mut rows = Vec::with_capacity(n as usize);
    let mut cur = vec![0i64; d];
    cur[0] = 1;
    for _ in 0..n {
        rows.push(cur.clone());
        // multiply by x
        let top = cur[d - 1];
        for i in (1..d).rev() {
            cur[i] = cur[i - 1];
        }
        cur[0] = 0;
        if top != 0 {
            for i in 0..d {
                cur[i] -= top * phi[i];
            }
        }
    }
    let arc = Arc::new(rows);
    power_table_cache().write().unwrap().insert(n, arc.clone());
    arc
}

/// Reduce a coefficient vector (exponents taken mod n) into the power basis of Q(zeta_n).
pub fn reduce_exponent_vector(n: u64, v: &[BigInt]) -> Vec<BigInt> {
    let d = totient(n) as usize;
    let nn = n as usize;
    let mut w = vec![BigInt::zero(); nn.max(d)];
    for (e, c) in v.iter().enumerate() {
        if !c.is_zero() {
            w[e % nn] += c;
        }
    }
    let phi = cyclotomic_coeffs(n);
    for k in (d..nn).rev() {
        if w[k].is_zero() {
            continue;
        }
        let c = std::mem::take(&mut w[k]);
        for (i, &pi) in phi.iter().take(d).enumerate() {
            if pi != 0 {
                w[k - d + i] -= &c * pi;
            }
        }
    }
    w.truncate(d);
    w
}

const POWER_TABLE_LIMIT: u64 = 2048;

/// zeta_n^i in the power basis, as small integers.
fn power_row(n: u64, i: u64) -> Vec<i64> {
    if n <= POWER_TABLE_LIMIT {
        return power_table(n)[(i % n) as usize].clone();
    }
    let mut v = vec![BigInt::zero(); (i % n) as usize + 1];
    v[(i % n) as usize] = BigInt::one();
    reduce_exponent_vector(n, &v)
        .iter()
        .map(|c| c.to_i64().expect("small power basis coefficient"))
        .collect()
}

/// Element of Q(zeta_order), stored as num / den over the power basis,
/// always at the minimal order of a field containing it.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CyclotomicElement {
    order: u64,
    num: Vec<BigInt>,
    den: BigInt,
}

impl CyclotomicElement {
    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(k: i64) -> Self {
        CyclotomicElement {
            order: 1,
            num: vec![BigInt::from(k)],
            den: BigInt::one(),
        }
    }

    pub fn from_bigint(k: BigInt) -> Self {
        CyclotomicElement {
            order: 1,
            num: vec![k],
            den: BigInt::one(),
        }
    }

    pub fn from_rational(q: &BigRational) -> Self {
        CyclotomicElement {
            order: 1,
            num: vec![q.numer().clone()],
            den: q.denom().clone(),
        }
        .normalized()
    }

    /// zeta_n^k
    pub fn zeta_pow(n: u64, k: i64) -> Self {
        assert!(n >= 1);
        let e = k.rem_euclid(n as i64) as u64;
        let num = power_row(n, e).into_iter().map(BigInt::from).collect();
        Self::from_parts(n, num, BigInt::one())
    }

    /// Build from power-basis coefficients at order `n`; canonicalizes.
    pub fn from_parts(n: u64, num: Vec<BigInt>, den: BigInt) -> Self {
        assert_eq!(
            num.len() as u64,
            totient(n),
            "coefficient count must be phi(n)"
        );
        assert!(!den.is_zero());
        CyclotomicElement { order: n, num, den }.normalized()
    }

    /// Build from coefficients of zeta_n^e for arbitrary exponents e (taken mod n).
    pub fn from_exponent_vector(n: u64, v: &[BigInt], den: BigInt) -> Self {
        Self::from_parts(n, reduce_exponent_vector(n, v), den)
    }

    pub fn from_rational_coeffs(n: u64, coeffs: &[BigRational]) -> Self {
        let mut den = BigInt::one();
        for c in coeffs {
            den = den.lcm(c.denom());
        }
        let num = coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        Self::from_parts(n, num, den)
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn numerators(&self) -> &[BigInt] {
        &self.num
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    pub fn coeffs(&self) -> Vec<BigRational> {
        self.num
            .iter()
            .map(|c| BigRational::new(c.clone(), self.den.clone()))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.order == 1 && self.num[0] == self.den
    }

    pub fn is_rational(&self) -> bool {
        self.order == 1
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        if self.order == 1 {
            Some(BigRational::new(self.num[0].clone(), self.den.clone()))
        } else {
            None
        }
    }

    fn normalized(mut self) -> Self {
        if self.den.is_negative() {
            self.den = -self.den;
            for c in self.num.iter_mut() {
                *c = -&*c;
            }
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if g.is_one() {
                break;
            }
            g = g.gcd(c);
        }
        if self.num.iter().all(|c| c.is_zero()) {
            return Self::zero();
        }
        if !g.is_one() {
            self.den /= &g;
            for c in self.num.iter_mut() {
                *c /= &g;
            }
        }
        self.descend()
    }

    /// Move to the smallest order whose field contains the element.
    fn descend(mut self) -> Self {
        loop {
            let n = self.order;
            if n == 1 {
                return self;
            }
            let mut moved = false;
            for p in prime_factors(n) {
                if let Some(num) = descend_once(n, p, &self.num) {
                    self.order = n / p;
                    self.num = num;
                    moved = true;
                    break;
                }
            }
            if !moved {
                return self;
            }
        }
    }

    /// Coefficients over the power basis of Q(zeta_n) for a multiple n of the order.
    pub fn embed(&self, n: u64) -> Vec<BigInt> {
        assert!(n % self.order == 0, "target order must be a multiple");
        let step = (n / self.order) as usize;
        let mut v = vec![BigInt::zero(); n as usize];
        for (i, c) in self.num.iter().enumerate() {
            v[i * step] = c.clone();
        }
        reduce_exponent_vector(n, &v)
    }

    fn binary(
        &self,
        other: &Self,
        f: impl Fn(&[BigInt], &[BigInt], u64) -> Vec<BigInt>,
        den: BigInt,
    ) -> Self {
        let n = lcm(self.order, other.order);
        let a = self.embed(n);
        let b = other.embed(n);
        Self::from_parts(n, f(&a, &b, n), den)
    }

    pub fn add(&self, other: &Self) -> Self {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return other.clone();
        }
        let den = self.den.lcm(&other.den);
        let fa = &den / &self.den;
        let fb = &den / &other.den;
        self.binary(
            other,
            |a, b, _| a.iter().zip(b).map(|(x, y)| x * &fa + y * &fb).collect(),
            den.clone(),
        )
    }

    pub fn neg(&self) -> Self {
        CyclotomicElement {
            order: self.order,
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if self.order == 1 {
            return other.scale_int(&self.num[0], &self.den);
        }
        if other.order == 1 {
            return self.scale_int(&other.num[0], &other.den);
        }
        let den = &self.den * &other.den;
        self.binary(
            other,
            |a, b, n| {
                let mut prod = vec![BigInt::zero(); a.len() + b.len() - 1];
                for (i, x) in a.iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    for (j, y) in b.iter().enumerate() {
                        if !y.is_zero() {
                            prod[i + j] += x * y;
                        }
                    }
                }
                reduce_exponent_vector(n, &prod)
            },
            den,
        )
    }

    fn scale_int(&self, num: &BigInt, den: &BigInt) -> Self {
        Self::from_parts(
            self.order,
            self.num.iter().map(|c| c * num).collect(),
            &self.den * den,
        )
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        self.scale_int(q.numer(), q.denom())
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Galois action zeta_m -> zeta_m^k for every m; k must be coprime to the order.
    pub fn conjugate(&self, k: i64) -> Self {
        let n = self.order;
        if n == 1 {
            return self.clone();
        }
        let kk = k.rem_euclid(n as i64) as u64;
        assert_eq!(
            kk.gcd(&n),
            1,
            "Galois exponent must be a unit modulo the order"
        );
        let mut v = vec![BigInt::zero(); n as usize];
        for (i, c) in self.num.iter().enumerate() {
            let e = (i as u64 * kk % n) as usize;
            v[e] += c;
        }
        Self::from_exponent_vector(n, &v, self.den.clone())
    }

    /// Product of all Galois conjugates.
    pub fn norm(&self) -> BigRational {
        let n = self.order;
        let mut acc = self.clone();
        for k in 2..n {
            if k.gcd(&n) == 1 {
                acc = acc.mul(&self.conjugate(k as i64));
            }
        }
        acc.to_rational().expect("norm is rational")
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if self.order == 1 {
            return Some(Self::from_rational(&BigRational::new(
                self.den.clone(),
                self.num[0].clone(),
            )));
        }
        let n = self.order;
        let mut others = Self::one();
        for k in 2..n {
            if k.gcd(&n) == 1 {
                others = others.mul(&self.conjugate(k as i64));
            }
        }
        let nrm = self.mul(&others).to_rational().expect("norm is rational");
        Some(others.scale(&nrm.recip()))
    }

    pub fn div(&self, other: &Self) -> Option<Self> {
        other.inv().map(|i| self.mul(&i))
    }

    /// Complex value, for diagnostics and numeric prefilters only.
    pub fn to_complex(&self) -> (f64, f64) {
        let n = self.order as f64;
        let d = self.den.to_f64().unwrap_or(f64::NAN);
        let mut re = 0.0;
        let mut im = 0.0;
        for (i, c) in self.num.iter().enumerate() {
            let c = c.to_f64().unwrap_or(f64::NAN) / d;
            let t = 2.0 * std::f64::consts::PI * i as f64 / n;
            re += c * t.cos();
            im += c * t.sin();
        }
        (re, im)
    }
}

/// Coefficients at order n/p if the element lies in Q(zeta_{n/p}).
fn descend_once(n: u64, p: u64, num: &[BigInt]) -> Option<Vec<BigInt>> {
    let m = n / p;
    if m % p == 0 {
        // Phi_n(x) = Phi_m(x^p): only exponents divisible by p may occur.
        if num
            .iter()
            .enumerate()
            .any(|(i, c)| i as u64 % p != 0 && !c.is_zero())
        {
            return None;
        }
        return Some(num.iter().step_by(p as usize).cloned().collect());
    }
    // Q(zeta_n) = Q(zeta_m) (x) Q(zeta_p) with zeta_n = zeta_m^u zeta_p^v.
    let u = if m == 1 { 0 } else { mod_inverse(p % m, m) };
    let v = mod_inverse(m % p, p);
    let phim = totient(m) as usize;
    let width = (p - 1) as usize;
    let mut t = vec![vec![BigInt::zero(); width]; phim];
    for (k, c) in num.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let k = k as u64;
        let row = power_row(m, k * u % m);
        let j = (k * v % p) as usize;
        for (i, &r) in row.iter().enumerate() {
            if r == 0 {
                continue;
            }
            let term = c * r;
            if j < width {
                t[i][j] += &term;
            } else {
                for cell in t[i].iter_mut() {
                    *cell -= &term;
                }
            }
        }
    }
    if t.iter().any(|row| row.iter().skip(1).any(|c| !c.is_zero())) {
        return None;
    }
    Some(
        t.into_iter()
            .map(|row| row.into_iter().next().unwrap())
            .collect(),
    )
}

fn mod_inverse(a: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let e = i64::extended_gcd(&(a as i64), &(m as i64));
    e.x.rem_euclid(m as i64) as u64
}

impl fmt::Debug for CyclotomicElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for CyclotomicElement {
    /// Written in the polynomial text format, e.g. `-1/2 + 3*zeta(12)^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let q = BigRational::new(c.clone(), self.den.clone());
            let neg = q.is_negative();
            let mag = q.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let z = match i {
                0 => String::new(),
                1 => format!("zeta({})", self.order),
                _ => format!("zeta({})^{}", self.order, i),
            };
            if z.is_empty() {
                write!(f, "{}", mag)?;
            } else if mag.is_one() {
                write!(f, "{}", z)?;
            } else {
                write!(f, "{}*{}", mag, z)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u64, k: i64) -> CyclotomicElement {
        CyclotomicElement::zeta_pow(n, k)
    }

    #[test]
    fn phi_small_values() {
        assert_eq!(*cyclotomic_coeffs(1), vec![-1, 1]);
        assert_eq!(*cyclotomic_coeffs(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(*cyclotomic_coeffs(6), vec![1, -1, 1]);
        let c105 = cyclotomic_coeffs(105);
        assert_eq!(c105.len(), 49);
        assert!(c105.contains(&-2));
    }

    #[test]
    fn minimal_order_reduction() {
        // zeta_6 lives in Q(zeta_3)
        assert_eq!(z(6, 1).order(), 3);
        // zeta_12^3 = i
        assert_eq!(z(12, 3), z(4, 1));
        assert_eq!(z(12, 4).order(), 3);
        // zeta_8 + zeta_8^-1 = sqrt 2 stays at order 8
        assert_eq!(z(8, 1).add(&z(8, -1)).order(), 8);
        // zeta_5 + zeta_5^-1 + ... sums to -1
        let s = (1..5).fold(CyclotomicElement::zero(), |a, k| a.add(&z(5, k)));
        assert_eq!(s, CyclotomicElement::from_int(-1));
        // zeta_15^5 is a primitive cube root
        assert_eq!(z(15, 5), z(3, 1));
        assert_eq!(z(15, 3), z(5, 1));
    }

    #[test]
    fn inverse_and_norm() {
        let a = z(12, 1).add(&CyclotomicElement::from_int(2));
        let inv = a.inv().unwrap();
        assert!(a.mul(&inv).is_one());
        // N(1 - zeta_p) = p
        let b = CyclotomicElement::one().sub(&z(7, 1));
        assert_eq!(b.norm(), BigRational::from_integer(7.into()));
    }

    #[test]
    fn conjugation_is_field_automorphism() {
        let a = z(9, 2).add(&z(9, 1).scale(&BigRational::new(3.into(), 2.into())));
        let b = z(9, 4).sub(&CyclotomicElement::from_int(5));
        for k in [2, 4, 5, 7, 8] {
            assert_eq!(a.mul(&b).conjugate(k), a.conjugate(k).mul(&b.conjugate(k)));
        }
        assert_eq!(z(9, 1).conjugate(2), z(9, 2));
    }

    #[test]
    fn display_format() {
        assert_eq!(z(12, 1).to_string(), "zeta(12)");
        assert_eq!(CyclotomicElement::from_int(-3).to_string(), "-3");
    }
}
