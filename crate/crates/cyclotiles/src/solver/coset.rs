//! Torsion cosets: sets {x : x^{a_i} = w_i} with roots of unity w_i.

use super::lattice::{
    complete_unimodular, hnf_with_transform, inverse_unimodular, monomial_value as monomial, smith,
    solve_in_hnf, IntMatrix,
};
use crate::algebra::sparse::{SparsePoly, MAX_VARS};
use crate::algebra::{CyclotomicElement, RootOfUnity};
use std::fmt;

/// A torsion coset in k variables. Rows are a saturated lattice in Hermite
/// form; rank k means a single point.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coset {
    pub nvars: usize,
    pub rows: IntMatrix,
    pub chars: Vec<RootOfUnity>,
}

fn char_combination(chars: &[RootOfUnity], coeffs: &[i64]) -> RootOfUnity {
    chars
        .iter()
        .zip(coeffs)
        .fold(RootOfUnity::one(), |acc, (w, &c)| acc.mul(&w.pow(c)))
}

impl Coset {
    pub fn point(coords: &[RootOfUnity]) -> Self {
        let k = coords.len();
        Coset {
            nvars: k,
            rows: (0..k)
                .map(|i| (0..k).map(|j| (i == j) as i64).collect())
                .collect(),
            chars: coords.to_vec(),
        }
    }

    pub fn whole(nvars: usize) -> Self {
        Coset {
            nvars,
            rows: vec![],
            chars: vec![],
        }
    }

    /// Relations with independent rows; the lattice they span must be saturated.
    pub fn from_saturated(nvars: usize, rows: IntMatrix, chars: Vec<RootOfUnity>) -> Self {
        let (h, u) = hnf_with_transform(&rows, nvars);
        assert_eq!(h.len(), rows.len(), "relations are not independent");
        let chars = u.iter().map(|c| char_combination(&chars, c)).collect();
        Coset {
            nvars,
            rows: h,
            chars,
        }
    }

    /// All saturated cosets whose union is {x : x^{a_i} = w_i} for independent rows a_i.
    pub fn split(nvars: usize, rows: &IntMatrix, chars: &[RootOfUnity]) -> Vec<Coset> {
        if rows.is_empty() {
            return vec![Coset::whole(nvars)];
        }
        let (p, d, qinv) = smith(rows, nvars);
        let r = rows.len();
        let eta: Vec<RootOfUnity> = p.iter().map(|prow| char_combination(chars, prow)).collect();
        let total: i64 = d.iter().product();
        let mut out = Vec::with_capacity(total as usize);
        for idx in 0..total {
            let mut t = idx;
            let mut cs = Vec::with_capacity(r);
            for l in 0..r {
                let j = t % d[l];
                t /= d[l];
                let e = eta[l];
                let n = e.order() as i64;
                cs.push(RootOfUnity::new(
                    e.numerator() as i64 + j * n,
                    (n * d[l]) as u64,
                ));
            }
            out.push(Coset::from_saturated(nvars, qinv[..r].to_vec(), cs));
        }
        out
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_point(&self) -> bool {
        self.rank() == self.nvars
    }

    /// Coordinates of a rank-k coset.
    pub fn coords(&self) -> Option<Vec<RootOfUnity>> {
        self.is_point().then(|| self.chars.clone())
    }

    pub fn contains_point(&self, x: &[RootOfUnity]) -> bool {
        self.rows
            .iter()
            .zip(&self.chars)
            .all(|(a, w)| monomial(a, x) == *w)
    }

    /// Whether `other` is a subset of `self`.
    pub fn contains(&self, other: &Coset) -> bool {
        self.rows
            .iter()
            .zip(&self.chars)
            .all(|(a, w)| match solve_in_hnf(&other.rows, a) {
                Some(c) => char_combination(&other.chars, &c) == *w,
                None => false,
            })
    }

    /// Unimodular W whose first rows are the relations: s = x^W puts the coset
    /// at s_i = w_i for i < rank with the remaining s free.
    pub fn frame(&self) -> IntMatrix {
        if self.rows.is_empty() {
            return (0..self.nvars)
                .map(|i| (0..self.nvars).map(|j| (i == j) as i64).collect())
                .collect();
        }
        complete_unimodular(&self.rows, self.nvars).expect("coset relations are saturated")
    }

    /// Restrict P to the coset: a polynomial in the nvars - rank free coordinates,
    /// together with the frame used.
    pub fn restrict(&self, p: &SparsePoly) -> (SparsePoly, IntMatrix) {
        let k = self.nvars;
        let r = self.rank();
        let w = self.frame();
        let winv = inverse_unimodular(&w);
        let mut q = p.monomial_substitute(&winv, k);
        for (i, c) in self.chars.iter().enumerate() {
            q = q.substitute_root(i, c);
        }
        let shift: IntMatrix = (0..k)
            .map(|i| (0..k - r).map(|j| (i == j + r) as i64).collect())
            .collect();
        let m = k - r;
        let q = if m == 0 {
            SparsePoly::constant(
                1,
                q.constant_value().unwrap_or_else(CyclotomicElement::zero),
            )
        } else {
            q.monomial_substitute(&shift, m)
        };
        (q, w)
    }

    /// Lift a coset found in the free coordinates of `self` (frame `w`) back to x.
    pub fn lift(&self, w: &IntMatrix, sub: &Coset) -> Coset {
        let k = self.nvars;
        let r = self.rank();
        let mut rows = Vec::new();
        let mut chars = Vec::new();
        for (i, c) in self.chars.iter().enumerate() {
            rows.push(w[i].clone());
            chars.push(*c);
        }
        for (rho, c) in sub.rows.iter().zip(&sub.chars) {
            let mut s = vec![0i64; k];
            s[r..].copy_from_slice(rho);
            rows.push(
                (0..k)
                    .map(|j| (0..k).map(|i| s[i] * w[i][j]).sum())
                    .collect(),
            );
            chars.push(*c);
        }
        Coset::from_saturated(k, rows, chars)
    }

    /// A member of the coset with the free coordinates set to `free` (length nvars - rank).
    pub fn member(&self, free: &[RootOfUnity]) -> Vec<RootOfUnity> {
        let w = self.frame();
        let winv = inverse_unimodular(&w);
        let s: Vec<RootOfUnity> = self.chars.iter().chain(free).copied().collect();
        (0..self.nvars).map(|j| monomial(&winv[j], &s)).collect()
    }

    /// The relations in Laurent form x^a - w, as polynomials.
    pub fn binomials(&self) -> Vec<SparsePoly> {
        self.rows
            .iter()
            .zip(&self.chars)
            .map(|(a, w)| {
                let mut e = [0; MAX_VARS];
                e[..a.len()].copy_from_slice(a);
                SparsePoly::monomial(self.nvars, e, CyclotomicElement::one())
                    .sub(&SparsePoly::constant(self.nvars, w.to_element()))
            })
            .collect()
    }
}

fn fmt_relation(f: &mut fmt::Formatter<'_>, a: &[i64]) -> fmt::Result {
    let names = crate::algebra::sparse::VAR_NAMES;
    let mut first = true;
    for (i, &e) in a.iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !first {
            write!(f, "*")?;
        }
        first = false;
        match e {
            1 => write!(f, "{}", names[i])?,
            _ => write!(f, "{}^{}", names[i], e)?,
        }
    }
    if first {
        write!(f, "1")?;
    }
    Ok(())
}

impl fmt::Display for Coset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rows.is_empty() {
            return write!(f, "(all)");
        }
        for (i, (a, w)) in self.rows.iter().zip(&self.chars).enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            fmt_relation(f, a)?;
            write!(f, " = {}", w)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Coset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn split_counts_and_membership() {
        // x^2 y^2 = -1, y^4 = 1 -> index 8
        let rows = vec![vec![2, 2], vec![0, 4]];
        let chars = [RootOfUnity::minus_one(), RootOfUnity::one()];
        let pts = Coset::split(2, &rows, &chars);
        assert_eq!(pts.len(), 8);
        for c in &pts {
            let x = c.coords().unwrap();
            assert_eq!(monomial(&[2, 2], &x), RootOfUnity::minus_one());
            assert_eq!(monomial(&[0, 4], &x), RootOfUnity::one());
        }
        let mut sorted = pts.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), 8);
    }

    #[test]
    fn restrict_and_lift_family() {
        // family y^3 z = 1 in three variables
        let fam = Coset::from_saturated(3, vec![vec![0, 3, 1]], vec![RootOfUnity::one()]);
        let member = fam.member(&[RootOfUnity::new(1, 7), RootOfUnity::new(2, 5)]);
        assert!(fam.contains_point(&member));
        let p = SparsePoly::from_int_terms(3, &[([0, 3, 1], 1), ([0, 0, 0], -1)]);
        let (q, _) = fam.restrict(&p);
        assert!(q.is_zero());
        let pt = Coset::point(&member);
        assert!(fam.contains(&pt));
        assert!(!pt.contains(&fam));
    }
}
