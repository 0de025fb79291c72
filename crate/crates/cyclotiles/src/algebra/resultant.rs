//! Resultants.
//!
//! Convention: Res(P, Q) is the determinant of the Sylvester matrix whose
//! top rows hold the coefficients of P.

use super::cyclotomic::CyclotomicElement;
use super::intpoly::IntPoly;
use super::modular::{self, bigint_mod, Crt};
use super::sparse::{Exponent, SparsePoly, MAX_VARS};
use super::AlgebraError;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Commutative ring with exact division, enough for the subresultant PRS.
pub trait RingElem: Clone + PartialEq {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Exact division; the divisor is known to divide.
    fn div_exact(&self, o: &Self) -> Self;

    fn pow(&self, mut e: usize) -> Self {
        let mut acc = self.one_like();
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(&b);
            }
        }
        acc
    }
}

impl RingElem for SparsePoly {
    fn zero_like(&self) -> Self {
        SparsePoly::zero(self.nvars())
    }
    fn one_like(&self) -> Self {
        SparsePoly::one(self.nvars())
    }
    fn is_zero(&self) -> bool {
        SparsePoly::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        SparsePoly::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        SparsePoly::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        SparsePoly::mul(self, o)
    }
    fn neg(&self) -> Self {
        SparsePoly::neg(self)
    }
    fn div_exact(&self, o: &Self) -> Self {
        SparsePoly::div_exact(self, o).expect("subresultant division must be exact")
    }
}

impl RingElem for CyclotomicElement {
    fn zero_like(&self) -> Self {
        CyclotomicElement::zero()
    }
    fn one_like(&self) -> Self {
        CyclotomicElement::one()
    }
    fn is_zero(&self) -> bool {
        CyclotomicElement::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        CyclotomicElement::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        CyclotomicElement::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        CyclotomicElement::mul(self, o)
    }
    fn neg(&self) -> Self {
        CyclotomicElement::neg(self)
    }
    fn div_exact(&self, o: &Self) -> Self {
        self.div(o).expect("nonzero divisor")
    }
}

impl RingElem for BigInt {
    fn zero_like(&self) -> Self {
        BigInt::zero()
    }
    fn one_like(&self) -> Self {
        BigInt::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div_exact(&self, o: &Self) -> Self {
        let (q, r) = self.div_rem(o);
        assert!(Zero::is_zero(&r), "inexact integer division");
        q
    }
}

fn trim<R: RingElem>(v: &mut Vec<R>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

pub(crate) fn prem<R: RingElem>(a: &[R], b: &[R]) -> Vec<R> {
    let db = b.len() - 1;
    let lc = b[db].clone();
    let mut r = a.to_vec();
    let mut steps = (a.len() - 1 + 1).saturating_sub(db);
    while r.len() > db && !r.is_empty() {
        let k = r.len() - 1;
        let c = r[k].clone();
        for x in r.iter_mut() {
            *x = x.mul(&lc);
        }
        let off = k - db;
        for (i, bi) in b.iter().enumerate() {
            r[off + i] = r[off + i].sub(&c.mul(bi));
        }
        steps -= 1;
        r.pop();
        trim(&mut r);
    }
    if steps > 0 && !r.is_empty() {
        let f = lc.pow(steps);
        for x in r.iter_mut() {
            *x = x.mul(&f);
        }
    }
    r
}

/// Resultant of two dense polynomials (lowest degree first, trimmed, nonzero)
/// by the subresultant pseudo-remainder sequence.
pub fn subresultant<R: RingElem>(a: &[R], b: &[R]) -> R {
    assert!(
        !a.is_empty() && !b.is_empty(),
        "resultant of zero polynomial"
    );
    let proto = a[0].clone();
    let (mut x, mut y, mut s) = (a.to_vec(), b.to_vec(), proto.one_like());
    let (m, n) = (x.len() - 1, y.len() - 1);
    if m < n {
        std::mem::swap(&mut x, &mut y);
        if m % 2 == 1 && n % 2 == 1 {
            s = s.neg();
        }
    }
    if y.len() == 1 {
        return s.mul(&y[0].pow(x.len() - 1));
    }
    let mut g = proto.one_like();
    let mut h = proto.one_like();
    loop {
        let da = x.len() - 1;
        let db = y.len() - 1;
        let delta = da - db;
        if da % 2 == 1 && db % 2 == 1 {
            s = s.neg();
        }
        let r = prem(&x, &y);
        if r.is_empty() {
            return proto.zero_like();
        }
        x = y;
        let div = g.mul(&h.pow(delta));
        y = r.iter().map(|c| c.div_exact(&div)).collect();
        g = x[x.len() - 1].clone();
        h = match delta {
            0 => h,
            1 => g.clone(),
            _ => g.pow(delta).div_exact(&h.pow(delta - 1)),
        };
        if y.len() == 1 {
            let da = x.len() - 1;
            let lcb = y[0].clone();
            let res = if da == 0 {
                proto.one_like()
            } else {
                lcb.pow(da).div_exact(&h.pow(da - 1))
            };
            return s.mul(&res);
        }
    }
}

/// Resultant with respect to `var`, a polynomial in the remaining variables
/// (same arity, `var` absent). Laurent inputs are first cleared of monomial factors.
pub fn resultant_eliminate(
    p: &SparsePoly,
    q: &SparsePoly,
    var: usize,
) -> Result<SparsePoly, AlgebraError> {
    if p.is_zero() || q.is_zero() {
        return Err(AlgebraError::Degenerate(
            "resultant of the zero polynomial".into(),
        ));
    }
    let nvars = p.nvars().max(q.nvars());
    if var >= nvars {
        return Err(AlgebraError::Degenerate(format!(
            "variable index {} out of range",
            var
        )));
    }
    let (_, p) = p.strip_monomial();
    let (_, q) = q.strip_monomial();
    if !p.uses_var(var) && !q.uses_var(var) {
        return Err(AlgebraError::Degenerate(
            "variable absent from both polynomials".into(),
        ));
    }
    let others: Vec<usize> = (0..nvars)
        .filter(|&v| v != var && (p.uses_var(v) || q.uses_var(v)))
        .collect();
    if p.is_rational() && q.is_rational() && others.len() <= 1 {
        let other = others.first().copied();
        return Ok(modular_resultant(&p, &q, var, other, nvars));
    }
    Ok(subresultant_eliminate(&p, &q, var))
}

pub(crate) fn dense_in(p: &SparsePoly, var: usize) -> Vec<SparsePoly> {
    let coeffs = p.coefficients_in(var);
    let deg = p.max_degree(var) as usize;
    let mut out = vec![SparsePoly::zero(p.nvars()); deg + 1];
    for (k, c) in coeffs {
        out[k as usize] = c;
    }
    out
}

/// Subresultant elimination over the coefficient ring in the other variables.
pub fn subresultant_eliminate(p: &SparsePoly, q: &SparsePoly, var: usize) -> SparsePoly {
    let a = dense_in(p, var);
    let b = dense_in(q, var);
    subresultant(&a, &b)
}

fn to_integer_terms(
    p: &SparsePoly,
    var: usize,
    other: Option<usize>,
) -> (Vec<(usize, usize, BigInt)>, BigInt) {
    let mut den = BigInt::one();
    for (_, c) in p.terms() {
        den = den.lcm(c.to_rational().unwrap().denom());
    }
    let terms = p
        .terms()
        .map(|(e, c)| {
            let q = c.to_rational().unwrap();
            let j = other.map(|o| e[o] as usize).unwrap_or(0);
            (e[var] as usize, j, q.numer() * (&den / q.denom()))
        })
        .collect();
    (terms, den)
}

/// Resultant of two integer polynomials in (x, y) with respect to x, as a
/// polynomial in y. Terms are (deg_x, deg_y, coefficient).
pub fn resultant_xy_integer(a: &[(usize, usize, BigInt)], b: &[(usize, usize, BigInt)]) -> IntPoly {
    let da = a.iter().map(|t| t.0).max().unwrap();
    let db = b.iter().map(|t| t.0).max().unwrap();
    let ya = a.iter().map(|t| t.1).max().unwrap();
    let yb = b.iter().map(|t| t.1).max().unwrap();
    let deg = da * yb + db * ya;
    let norm1 = |t: &[(usize, usize, BigInt)]| t.iter().fold(BigInt::zero(), |s, x| s + x.2.abs());
    let bound_bits =
        db as u64 * modular::bits(&norm1(a)) + da as u64 * modular::bits(&norm1(b)) + 2;
    let mut crt = Crt::new(deg + 1);
    for (pi, &p) in modular::primes().iter().enumerate() {
        let am: Vec<(usize, usize, u64)> = a
            .iter()
            .map(|(i, j, c)| (*i, *j, bigint_mod(c, p)))
            .collect();
        let bm: Vec<(usize, usize, u64)> = b
            .iter()
            .map(|(i, j, c)| (*i, *j, bigint_mod(c, p)))
            .collect();
        let maxy = ya.max(yb);
        let mut xs = Vec::with_capacity(deg + 1);
        let mut vals = Vec::with_capacity(deg + 1);
        let mut y0 = 1 + (pi as u64) * 7919;
        while xs.len() < deg + 1 {
            y0 += 1;
            let mut pw = vec![1u64; maxy + 1];
            for k in 1..=maxy {
                pw[k] = modular::mul_mod(pw[k - 1], y0, p);
            }
            let mut pa = vec![0u64; da + 1];
            for &(i, j, c) in &am {
                pa[i] = modular::add_mod(pa[i], modular::mul_mod(c, pw[j], p), p);
            }
            let mut pb = vec![0u64; db + 1];
            for &(i, j, c) in &bm {
                pb[i] = modular::add_mod(pb[i], modular::mul_mod(c, pw[j], p), p);
            }
            if let Some(r) = modular::poly_resultant(&pa, &pb, da, db, p) {
                xs.push(y0);
                vals.push(r);
            }
        }
        let coeffs = interpolate_batch(&xs, &vals, p);
        crt.add(&coeffs, p);
        if modular::bits(&crt.modulus) > bound_bits {
            break;
        }
    }
    IntPoly::new(crt.symmetric())
}

/// Newton interpolation with batched inversions.
pub fn interpolate_batch(xs: &[u64], ys: &[u64], p: u64) -> Vec<u64> {
    let n = xs.len();
    let mut coef = ys.to_vec();
    let mut dens = vec![0u64; n];
    let mut prefix = vec![0u64; n];
    for j in 1..n {
        let cnt = n - j;
        for t in 0..cnt {
            let i = j + t;
            dens[t] = modular::sub_mod(xs[i], xs[i - j], p);
        }
        // batch inversion
        let mut acc = 1u64;
        for t in 0..cnt {
            prefix[t] = acc;
            acc = modular::mul_mod(acc, dens[t], p);
        }
        let mut inv = modular::inv_mod(acc, p);
        for t in (0..cnt).rev() {
            let di = modular::mul_mod(inv, prefix[t], p);
            inv = modular::mul_mod(inv, dens[t], p);
            dens[t] = di;
        }
        for i in (j..n).rev() {
            let num = modular::sub_mod(coef[i], coef[i - 1], p);
            coef[i] = modular::mul_mod(num, dens[i - j], p);
        }
    }
    let mut out = vec![0u64; n];
    for i in (0..n).rev() {
        // out = out * (x - xs[i]) + coef[i]
        let xi = xs[i];
        let top = (n - 1 - i).min(n - 1);
        for k in (1..=top).rev() {
            out[k] = modular::sub_mod(out[k - 1], modular::mul_mod(out[k], xi, p), p);
        }
        out[0] = modular::sub_mod(coef[i], modular::mul_mod(out[0], xi, p), p);
    }
    out
}

fn modular_resultant(
    p: &SparsePoly,
    q: &SparsePoly,
    var: usize,
    other: Option<usize>,
    nvars: usize,
) -> SparsePoly {
    let (ta, da) = to_integer_terms(p, var, other);
    let (tb, db) = to_integer_terms(q, var, other);
    let dxa = p.max_degree(var) as usize;
    let dxb = q.max_degree(var) as usize;
    let r = resultant_xy_integer(&ta, &tb);
    // Undo the scaling: Res(cP, dQ) = c^deg Q d^deg P Res(P, Q).
    let scale = BigRational::new(
        BigInt::one(),
        num_traits::pow(da, dxb) * num_traits::pow(db, dxa),
    );
    SparsePoly::from_terms(
        nvars,
        r.coeffs().iter().enumerate().map(|(k, c)| {
            let mut e: Exponent = [0; MAX_VARS];
            if let Some(o) = other {
                e[o] = k as i64;
            }
            (
                e,
                CyclotomicElement::from_rational(&(BigRational::from_integer(c.clone()) * &scale)),
            )
        }),
    )
}
