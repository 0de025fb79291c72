//! Word-sized prime field arithmetic used to accelerate exact computations.
//!
//! Everything here is a pure helper: results computed modulo primes are
//! always lifted back with CRT and verified by exact arithmetic by the callers.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::sync::OnceLock;

#[inline]
pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

#[inline]
pub fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
pub fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

pub fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

pub fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0);
    pow_mod(a, p - 2, p)
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % q == 0 {
            return n == q;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Large primes below 2^62, in decreasing order.
pub fn primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let mut out = Vec::with_capacity(4096);
        let mut n = (1u64 << 62) - 1;
        while out.len() < 4096 {
            if is_prime_u64(n) {
                out.push(n);
            }
            n -= 2;
        }
        out
    })
}

pub fn bigint_mod(a: &BigInt, p: u64) -> u64 {
    let m = BigInt::from(p);
    let r = a.mod_floor(&m);
    let (_, digits) = r.to_u64_digits();
    digits.first().copied().unwrap_or(0)
}

/// Incremental Chinese remaindering of integer vectors.
#[derive(Debug, Clone)]
pub struct Crt {
    pub modulus: BigInt,
    pub residues: Vec<BigInt>,
}

impl Crt {
    pub fn new(len: usize) -> Self {
        Crt {
            modulus: BigInt::one(),
            residues: vec![BigInt::zero(); len],
        }
    }

    /// Fold in images modulo a fresh prime `p`.
    pub fn add(&mut self, images: &[u64], p: u64) {
        assert_eq!(images.len(), self.residues.len());
        let m_mod_p = bigint_mod(&self.modulus, p);
        let inv = inv_mod(m_mod_p, p);
        for (r, &img) in self.residues.iter_mut().zip(images) {
            let cur = bigint_mod(r, p);
            let t = mul_mod(sub_mod(img, cur, p), inv, p);
            if t != 0 {
                *r += &self.modulus * BigInt::from(t);
            }
        }
        self.modulus *= BigInt::from(p);
    }

    /// Residues mapped into the symmetric range around zero.
    pub fn symmetric(&self) -> Vec<BigInt> {
        let half = &self.modulus >> 1usize;
        self.residues
            .iter()
            .map(|r| {
                if r > &half {
                    r - &self.modulus
                } else {
                    r.clone()
                }
            })
            .collect()
    }
}

pub fn bits(a: &BigInt) -> u64 {
    if a.sign() == Sign::NoSign {
        0
    } else {
        a.abs().bits()
    }
}

// ---- dense polynomials over F_p, lowest degree first ----

pub fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

pub fn poly_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    let inv = inv_mod(b[db], p);
    while r.len() > db {
        let k = r.len() - 1;
        let c = mul_mod(r[k], inv, p);
        if c != 0 {
            let off = k - db;
            for (i, &bi) in b.iter().enumerate() {
                r[off + i] = sub_mod(r[off + i], mul_mod(c, bi, p), p);
            }
        }
        r.pop();
        trim(&mut r);
    }
    r
}

/// Monic gcd over F_p.
pub fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = poly_rem(&x, &y, p);
        x = y;
        y = r;
    }
    if let Some(&lc) = x.last() {
        let inv = inv_mod(lc, p);
        for c in x.iter_mut() {
            *c = mul_mod(*c, inv, p);
        }
    }
    x
}

/// Resultant over F_p of polynomials with the given formal degrees.
/// Returns `None` when a leading coefficient vanishes.
pub fn poly_resultant(a: &[u64], b: &[u64], da: usize, db: usize, p: u64) -> Option<u64> {
    let lead = |v: &[u64], d: usize| v.get(d).copied().unwrap_or(0);
    if lead(a, da) == 0 || lead(b, db) == 0 {
        return None;
    }
    let mut x: Vec<u64> = a[..=da].to_vec();
    let mut y: Vec<u64> = b[..=db].to_vec();
    let mut acc = 1u64;
    loop {
        let m = x.len() - 1;
        let n = y.len() - 1;
        if n == 0 {
            return Some(mul_mod(acc, pow_mod(y[0], m as u64, p), p));
        }
        let r = poly_rem(&x, &y, p);
        if r.is_empty() {
            return Some(0);
        }
        let k = r.len() - 1;
        if (m * n) % 2 == 1 {
            acc = sub_mod(0, acc, p);
        }
        acc = mul_mod(acc, pow_mod(y[n], (m - k) as u64, p), p);
        x = y;
        y = r;
    }
}

/// Interpolate through points (xs[i], ys[i]) with distinct xs.
pub fn interpolate(xs: &[u64], ys: &[u64], p: u64) -> Vec<u64> {
    let n = xs.len();
    // Newton divided differences.
    let mut coef = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            let num = sub_mod(coef[i], coef[i - 1], p);
            let den = sub_mod(xs[i], xs[i - j], p);
            coef[i] = mul_mod(num, inv_mod(den, p), p);
        }
    }
    let mut out = vec![0u64; n];
    for i in (0..n).rev() {
        // out = out * (x - xs[i]) + coef[i]
        let mut next = vec![0u64; n];
        for k in 0..n {
            if out[k] == 0 {
                continue;
            }
            if k + 1 < n {
                next[k + 1] = add_mod(next[k + 1], out[k], p);
            }
            next[k] = sub_mod(next[k], mul_mod(out[k], xs[i], p), p);
        }
        next[0] = add_mod(next[0], coef[i], p);
        out = next;
    }
    out
}
