//! Sparse Laurent polynomials in up to three variables over cyclotomic fields.

use super::cyclotomic::{lcm, reduce_exponent_vector, CyclotomicElement};
use super::roots::RootOfUnity;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;

pub const MAX_VARS: usize = 3;
pub const VAR_NAMES: [&str; MAX_VARS] = ["x", "y", "z"];

pub type Exponent = [i64; MAX_VARS];

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SparsePoly {
    nvars: usize,
    terms: BTreeMap<Exponent, CyclotomicElement>,
}

impl SparsePoly {
    pub fn zero(nvars: usize) -> Self {
        assert!(
            (1..=MAX_VARS).contains(&nvars),
            "between one and three variables"
        );
        SparsePoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: CyclotomicElement) -> Self {
        Self::monomial(nvars, [0; MAX_VARS], c)
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, CyclotomicElement::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = [0; MAX_VARS];
        e[i] = 1;
        Self::monomial(nvars, e, CyclotomicElement::one())
    }

    pub fn monomial(nvars: usize, e: Exponent, c: CyclotomicElement) -> Self {
        let mut p = Self::zero(nvars);
        debug_assert!(e[nvars..].iter().all(|&x| x == 0));
        if !c.is_zero() {
            p.terms.insert(e, c);
        }
        p
    }

    /// Build from (exponent, coefficient) pairs, merging duplicates.
    pub fn from_terms(
        nvars: usize,
        terms: impl IntoIterator<Item = (Exponent, CyclotomicElement)>,
    ) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            p.add_term(e, &c);
        }
        p
    }

    /// Integer coefficients, convenient for tests and fixtures.
    pub fn from_int_terms(nvars: usize, terms: &[(Exponent, i64)]) -> Self {
        Self::from_terms(
            nvars,
            terms
                .iter()
                .map(|&(e, c)| (e, CyclotomicElement::from_int(c))),
        )
    }

    pub fn add_term(&mut self, e: Exponent, c: &CyclotomicElement) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(old) => {
                let s = old.add(c);
                if s.is_zero() {
                    self.terms.remove(&e);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(e, c.clone());
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn with_nvars(&self, nvars: usize) -> Self {
        assert!(self
            .terms
            .keys()
            .all(|e| e[nvars..].iter().all(|&x| x == 0)));
        SparsePoly {
            nvars,
            terms: self.terms.clone(),
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &CyclotomicElement)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| *e == [0; MAX_VARS])
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn coeff(&self, e: &Exponent) -> CyclotomicElement {
        self.terms
            .get(e)
            .cloned()
            .unwrap_or_else(CyclotomicElement::zero)
    }

    pub fn constant_value(&self) -> Option<CyclotomicElement> {
        if self.is_constant() {
            Some(self.coeff(&[0; MAX_VARS]))
        } else {
            None
        }
    }

    pub fn is_rational(&self) -> bool {
        self.terms.values().all(|c| c.is_rational())
    }

    /// Least common order of the coefficient fields.
    pub fn coefficient_order(&self) -> u64 {
        self.terms.values().fold(1, |a, c| lcm(a, c.order()))
    }

    pub fn uses_var(&self, v: usize) -> bool {
        self.terms.keys().any(|e| e[v] != 0)
    }

    pub fn max_degree(&self, v: usize) -> i64 {
        self.terms.keys().map(|e| e[v]).max().unwrap_or(0)
    }

    pub fn min_degree(&self, v: usize) -> i64 {
        self.terms.keys().map(|e| e[v]).min().unwrap_or(0)
    }

    /// Degree span in variable v.
    pub fn degree(&self, v: usize) -> i64 {
        self.max_degree(v) - self.min_degree(v)
    }

    pub fn total_degree(&self) -> i64 {
        self.terms
            .keys()
            .map(|e| e.iter().sum::<i64>())
            .max()
            .unwrap_or(0)
    }

    /// Divide out the largest monomial, leaving nonnegative exponents with
    /// a nonzero term free of each variable. Returns the monomial removed.
    pub fn strip_monomial(&self) -> (Exponent, Self) {
        let mut m = [0; MAX_VARS];
        for (v, slot) in m.iter_mut().enumerate().take(self.nvars) {
            *slot = self.min_degree(v);
        }
        (m, self.shift(&m.map(|x| -x)))
    }

    pub fn shift(&self, by: &Exponent) -> Self {
        SparsePoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut f = *e;
                    for i in 0..MAX_VARS {
                        f[i] += by[i];
                    }
                    (f, c.clone())
                })
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        SparsePoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (*e, c.neg())).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.nvars = self.nvars.max(other.nvars);
        for (e, c) in &other.terms {
            out.add_term(*e, c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let nvars = self.nvars.max(other.nvars);
        if self.is_rational() && other.is_rational() {
            return self.mul_rational(other, nvars);
        }
        let mut out = Self::zero(nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let mut e = *ea;
                for i in 0..MAX_VARS {
                    e[i] += eb[i];
                }
                out.add_term(e, &ca.mul(cb));
            }
        }
        out
    }

    fn mul_rational(&self, other: &Self, nvars: usize) -> Self {
        let mut acc: BTreeMap<Exponent, BigRational> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            let qa = ca.to_rational().unwrap();
            for (eb, cb) in &other.terms {
                let mut e = *ea;
                for i in 0..MAX_VARS {
                    e[i] += eb[i];
                }
                let prod = &qa * cb.to_rational().unwrap();
                *acc.entry(e).or_insert_with(BigRational::zero) += prod;
            }
        }
        SparsePoly {
            nvars,
            terms: acc
                .into_iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|(e, c)| (e, CyclotomicElement::from_rational(&c)))
                .collect(),
        }
    }

    pub fn scale(&self, c: &CyclotomicElement) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        SparsePoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, d)| (*e, d.mul(c))).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.nvars);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn map_coeffs(&self, f: impl Fn(&CyclotomicElement) -> CyclotomicElement) -> Self {
        Self::from_terms(self.nvars, self.terms.iter().map(|(e, c)| (*e, f(c))))
    }

    /// Apply the Galois automorphism zeta -> zeta^k to every coefficient.
    pub fn conjugate(&self, k: i64) -> Self {
        self.map_coeffs(|c| c.conjugate(k))
    }

    /// Replace each variable x_i by sign_i * x_i^power.
    pub fn sign_power_variant(&self, signs: &[i64], power: i64) -> Self {
        Self::from_terms(
            self.nvars,
            self.terms.iter().map(|(e, c)| {
                let mut f = *e;
                let mut neg = false;
                for i in 0..self.nvars {
                    f[i] = e[i] * power;
                    if signs[i] < 0 && e[i].rem_euclid(2) == 1 {
                        neg = !neg;
                    }
                }
                (f, if neg { c.neg() } else { c.clone() })
            }),
        )
    }

    /// Substitute x_i = prod_j y_j^{m[i][j]}: exponent row vector e maps to e * m.
    /// The result has `new_nvars` variables.
    pub fn monomial_substitute(&self, m: &[Vec<i64>], new_nvars: usize) -> Self {
        Self::from_terms(
            new_nvars,
            self.terms.iter().map(|(e, c)| {
                let mut f = [0; MAX_VARS];
                for (i, row) in m.iter().enumerate() {
                    for (j, &mij) in row.iter().enumerate() {
                        f[j] += e[i] * mij;
                    }
                }
                (f, c.clone())
            }),
        )
    }

    /// Substitute a constant for variable v; the variable remains but is absent.
    pub fn substitute_value(&self, v: usize, value: &CyclotomicElement) -> Self {
        let mut pows: BTreeMap<i64, CyclotomicElement> = BTreeMap::new();
        let inv = value.inv();
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let k = e[v];
            let pw = pows
                .entry(k)
                .or_insert_with(|| {
                    if k >= 0 {
                        value.pow(k as u64)
                    } else {
                        inv.as_ref()
                            .expect("negative power of zero")
                            .pow((-k) as u64)
                    }
                })
                .clone();
            let mut f = *e;
            f[v] = 0;
            out.add_term(f, &c.mul(&pw));
        }
        out
    }

    /// Substitute a root of unity for variable v.
    pub fn substitute_root(&self, v: usize, r: &RootOfUnity) -> Self {
        self.substitute_value(v, &r.to_element())
    }

    /// Exact value at a point whose coordinates are roots of unity.
    pub fn evaluate_at_roots(&self, point: &[RootOfUnity]) -> CyclotomicElement {
        assert!(point.len() >= self.nvars, "point has too few coordinates");
        let mut n = self.coefficient_order();
        for r in &point[..self.nvars] {
            n = lcm(n, r.order());
        }
        let mut den = BigInt::one();
        for c in self.terms.values() {
            den = den.lcm(c.denominator());
        }
        let nn = n as i64;
        let mut acc = vec![BigInt::zero(); n as usize];
        for (e, c) in &self.terms {
            let mut shift: i64 = 0;
            for (i, r) in point[..self.nvars].iter().enumerate() {
                let step = (n / r.order()) as i64 * r.numerator() as i64 % nn;
                shift = (shift + (e[i].rem_euclid(nn)) * step) % nn;
            }
            let stride = (n / c.order()) as i64;
            let f = &den / c.denominator();
            for (j, cj) in c.numerators().iter().enumerate() {
                if cj.is_zero() {
                    continue;
                }
                let idx = ((j as i64 * stride + shift) % nn) as usize;
                acc[idx] += cj * &f;
            }
        }
        CyclotomicElement::from_parts(n, reduce_exponent_vector(n, &acc), den)
    }

    pub fn vanishes_at(&self, point: &[RootOfUnity]) -> bool {
        self.evaluate_at_roots(point).is_zero()
    }

    /// Floating point value at a root-of-unity point.
    pub fn evaluate_f64(&self, point: &[(f64, f64)]) -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        for (e, c) in &self.terms {
            let (mut tr, mut ti) = c.to_complex();
            for (i, &(pr, pi)) in point[..self.nvars].iter().enumerate() {
                let k = e[i];
                let (mut br, mut bi) = (pr, pi);
                if k < 0 {
                    let m = pr * pr + pi * pi;
                    br = pr / m;
                    bi = -pi / m;
                }
                for _ in 0..k.unsigned_abs() {
                    let nr = tr * br - ti * bi;
                    ti = tr * bi + ti * br;
                    tr = nr;
                }
            }
            re += tr;
            im += ti;
        }
        (re, im)
    }

    /// Coefficients as a polynomial in variable v: map from degree to coefficient.
    pub fn coefficients_in(&self, v: usize) -> BTreeMap<i64, SparsePoly> {
        let mut out: BTreeMap<i64, SparsePoly> = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut f = *e;
            f[v] = 0;
            out.entry(e[v])
                .or_insert_with(|| SparsePoly::zero(self.nvars))
                .add_term(f, c);
        }
        out
    }

    /// Leading term in lex order.
    pub fn leading(&self) -> Option<(&Exponent, &CyclotomicElement)> {
        self.terms.iter().next_back()
    }

    /// Exact quotient in the Laurent ring, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        assert!(!d.is_zero(), "division by zero polynomial");
        let nvars = self.nvars.max(d.nvars);
        if self.is_zero() {
            return Some(Self::zero(nvars));
        }
        let (ms, s) = self.strip_monomial();
        let (md, dd) = d.strip_monomial();
        let (ed, cd) = dd.leading().unwrap();
        let ed = *ed;
        let inv = cd.inv().expect("nonzero leading coefficient");
        let mut r = s;
        let mut q = Self::zero(nvars);
        while let Some((er, cr)) = r.leading() {
            let mut e = [0; MAX_VARS];
            for i in 0..MAX_VARS {
                e[i] = er[i] - ed[i];
            }
            if e.iter().any(|&x| x < 0) {
                return None;
            }
            let t = Self::monomial(nvars, e, cr.mul(&inv));
            r = r.sub(&t.mul(&dd));
            q = q.add(&t);
        }
        let mut shift = [0; MAX_VARS];
        for i in 0..MAX_VARS {
            shift[i] = ms[i] - md[i];
        }
        Some(q.shift(&shift))
    }

    /// Make the leading coefficient one.
    pub fn monic(&self) -> Self {
        match self.leading() {
            Some((_, c)) => self.scale(&c.inv().unwrap()),
            None => self.clone(),
        }
    }

    /// Multiply by the least common denominator of all rational coordinates and
    /// divide by the content, so the coefficients become coprime integers
    /// over the power basis. Leading coefficient sign made positive when rational.
    pub fn primitive_integral(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut den = BigInt::one();
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            den = den.lcm(c.denominator());
        }
        for c in self.terms.values() {
            let f = &den / c.denominator();
            for n in c.numerators() {
                g = g.gcd(&(n * &f));
            }
        }
        let mut s = BigRational::new(den, g);
        if let Some((_, lc)) = self.leading() {
            if let Some(q) = lc.to_rational() {
                if q < BigRational::zero() {
                    s = -s;
                }
            }
        }
        self.scale(&CyclotomicElement::from_rational(&s))
    }
}

impl fmt::Debug for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for SparsePoly {
    /// Written in the polynomial text format, highest lex term first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let mono: Vec<String> = (0..self.nvars)
                .filter(|&i| e[i] != 0)
                .map(|i| match e[i] {
                    1 => VAR_NAMES[i].to_string(),
                    k if k < 0 => format!("{}^({})", VAR_NAMES[i], k),
                    k => format!("{}^{}", VAR_NAMES[i], k),
                })
                .collect();
            let cs = c.to_string();
            let simple = c.is_rational();
            let (neg, mag) = if simple && cs.starts_with('-') {
                (true, cs[1..].to_string())
            } else {
                (false, cs)
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let coeff = if simple { mag } else { format!("({})", mag) };
            if mono.is_empty() {
                write!(f, "{}", coeff)?;
            } else if simple && coeff == "1" {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{}*{}", coeff, mono.join("*"))?;
            }
        }
        Ok(())
    }
}

pub fn rational(n: i64, d: i64) -> CyclotomicElement {
    CyclotomicElement::from_rational(&BigRational::new(n.into(), d.into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn evaluate_matches_substitution() {
        // P = x^2 y - zeta_12 x + 3 y^-1
        let p = SparsePoly::from_terms(
            2,
            vec![
                ([2, 1, 0], CyclotomicElement::one()),
                ([1, 0, 0], CyclotomicElement::zeta_pow(12, 1).neg()),
                ([0, -1, 0], CyclotomicElement::from_int(3)),
            ],
        );
        let pt = [RootOfUnity::new(1, 5), RootOfUnity::new(3, 8)];
        let v1 = p.evaluate_at_roots(&pt);
        let v2 = p
            .substitute_root(0, &pt[0])
            .substitute_root(1, &pt[1])
            .constant_value()
            .unwrap();
        assert_eq!(v1, v2);
        let (re, im) = v1.to_complex();
        let (fr, fi) = p.evaluate_f64(&[pt[0].to_complex(), pt[1].to_complex()]);
        assert!((re - fr).abs() < 1e-9 && (im - fi).abs() < 1e-9);
    }

    #[test]
    fn exact_division() {
        let a = SparsePoly::from_int_terms(2, &[([1, 0, 0], 1), ([0, 1, 0], -1)]);
        let b = SparsePoly::from_int_terms(2, &[([1, 1, 0], 1), ([0, 0, 0], 2)]);
        let prod = a.mul(&b);
        assert_eq!(prod.div_exact(&a), Some(b.clone()));
        assert_eq!(prod.div_exact(&b), Some(a.clone()));
        let c = SparsePoly::from_int_terms(2, &[([1, 0, 0], 1), ([0, 0, 0], 1)]);
        assert_eq!(prod.div_exact(&c), None);
    }

    #[test]
    fn sign_power_variant() {
        let p = SparsePoly::from_int_terms(2, &[([1, 2, 0], 1), ([0, 1, 0], 1)]);
        let q = p.sign_power_variant(&[-1, -1], 2);
        assert_eq!(
            q,
            SparsePoly::from_int_terms(2, &[([2, 4, 0], -1), ([0, 2, 0], -1)])
        );
    }
}
