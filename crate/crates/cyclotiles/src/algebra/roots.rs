use super::cyclotomic::{lcm, CyclotomicElement};
use num_integer::Integer;
use num_rational::Rational64;
use serde::{Deserialize, Serialize};
use std::fmt;

/// exp(2 pi i k / n) with gcd(k, n) = 1 and 0 <= k < n.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RootOfUnity {
    k: u64,
    n: u64,
}

impl RootOfUnity {
    pub fn new(k: i64, n: u64) -> Self {
        assert!(n >= 1, "root of unity order must be positive");
        let k = k.rem_euclid(n as i64) as u64;
        let g = k.gcd(&n);
        let g = if g == 0 { n } else { g };
        RootOfUnity { k: k / g, n: n / g }
    }

    pub fn one() -> Self {
        RootOfUnity { k: 0, n: 1 }
    }

    pub fn minus_one() -> Self {
        RootOfUnity { k: 1, n: 2 }
    }

    /// exp(i pi q) for a rational q.
    pub fn from_half_turns(q: Rational64) -> Self {
        Self::new(*q.numer(), 2 * *q.denom() as u64)
    }

    pub fn numerator(&self) -> u64 {
        self.k
    }

    /// Multiplicative order.
    pub fn order(&self) -> u64 {
        self.n
    }

    /// Argument as a fraction of a full turn in [0, 1).
    pub fn turns(&self) -> Rational64 {
        Rational64::new(self.k as i64, self.n as i64)
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = lcm(self.n, o.n);
        Self::new((self.k * (n / self.n) + o.k * (n / o.n)) as i64, n)
    }

    pub fn inv(&self) -> Self {
        Self::new(-(self.k as i64), self.n)
    }

    pub fn pow(&self, e: i64) -> Self {
        let k = (self.k as i128 * e as i128).rem_euclid(self.n as i128) as i64;
        Self::new(k, self.n)
    }

    pub fn to_element(&self) -> CyclotomicElement {
        CyclotomicElement::zeta_pow(self.n, self.k as i64)
    }

    pub fn to_complex(&self) -> (f64, f64) {
        let t = 2.0 * std::f64::consts::PI * self.k as f64 / self.n as f64;
        (t.cos(), t.sin())
    }
}

impl fmt::Debug for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.k, self.n) {
            (0, 1) => write!(f, "1"),
            (1, 2) => write!(f, "-1"),
            (k, n) => write!(f, "e(2pi*{}/{})", k, n),
        }
    }
}
