//! Integer lattices of exponent vectors and monomial changes of variables.

use crate::algebra::sparse::{Exponent, SparsePoly, MAX_VARS};
use crate::algebra::RootOfUnity;
use num_integer::Integer;
use serde::Serialize;

pub type IntMatrix = Vec<Vec<i64>>;

/// Row-style Hermite normal form with the unimodular transform:
/// returns (H, U) with H = U * A, zero rows dropped from H.
pub fn hnf_with_transform(a: &IntMatrix, ncols: usize) -> (IntMatrix, IntMatrix) {
    let m = a.len();
    let mut h: Vec<Vec<i128>> = a
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let mut u: Vec<Vec<i128>> = (0..m)
        .map(|i| (0..m).map(|j| (i == j) as i128).collect())
        .collect();
    let mut row = 0;
    for col in 0..ncols {
        if row >= m {
            break;
        }
        // Euclid on column entries at and below `row`.
        loop {
            let piv = (row..m)
                .filter(|&r| h[r][col] != 0)
                .min_by_key(|&r| h[r][col].abs());
            let Some(piv) = piv else { break };
            h.swap(row, piv);
            u.swap(row, piv);
            let mut done = true;
            for r in row + 1..m {
                if h[r][col] != 0 {
                    let q = Integer::div_floor(&h[r][col], &h[row][col]);
                    for c in 0..ncols {
                        h[r][c] -= q * h[row][c];
                    }
                    for c in 0..m {
                        u[r][c] -= q * u[row][c];
                    }
                    if h[r][col] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if h[row][col] == 0 {
            continue;
        }
        if h[row][col] < 0 {
            for c in 0..ncols {
                h[row][c] = -h[row][c];
            }
            for c in 0..m {
                u[row][c] = -u[row][c];
            }
        }
        for r in 0..row {
            let q = Integer::div_floor(&h[r][col], &h[row][col]);
            if q != 0 {
                for c in 0..ncols {
                    h[r][c] -= q * h[row][c];
                }
                for c in 0..m {
                    u[r][c] -= q * u[row][c];
                }
            }
        }
        row += 1;
    }
    let conv = |v: &Vec<i128>| {
        v.iter()
            .map(|&x| i64::try_from(x).expect("lattice entry overflow"))
            .collect()
    };
    let hh: IntMatrix = h.iter().take(row).map(conv).collect();
    let uu: IntMatrix = u.iter().take(row).map(conv).collect();
    (hh, uu)
}

pub fn hnf(a: &IntMatrix, ncols: usize) -> IntMatrix {
    hnf_with_transform(a, ncols).0
}

/// Basis of the lattice generated by the exponent differences of P.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LatticeBasis {
    /// HNF rows.
    pub basis: IntMatrix,
    pub rank: usize,
    /// Index in Z^k when of full rank, 0 otherwise.
    pub index: i64,
    pub full: bool,
}

pub fn det(m: &IntMatrix) -> i64 {
    match m.len() {
        0 => 1,
        1 => m[0][0],
        2 => m[0][0] * m[1][1] - m[0][1] * m[1][0],
        3 => {
            m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
                - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
                + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
        }
        _ => panic!("determinant only for size <= 3"),
    }
}

/// Inverse of a unimodular matrix (size <= 3).
pub fn inverse_unimodular(m: &IntMatrix) -> IntMatrix {
    let n = m.len();
    let d = det(m);
    assert!(d == 1 || d == -1, "matrix is not unimodular");
    let minor = |r: usize, c: usize| -> i64 {
        let sub: IntMatrix = (0..n)
            .filter(|&i| i != r)
            .map(|i| (0..n).filter(|&j| j != c).map(|j| m[i][j]).collect())
            .collect();
        det(&sub)
    };
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
                    sign * minor(j, i) * d
                })
                .collect()
        })
        .collect()
}

pub fn exponent_differences(p: &SparsePoly) -> IntMatrix {
    let k = p.nvars();
    let mut it = p.terms().map(|(e, _)| *e);
    let Some(e0) = it.next() else { return vec![] };
    it.map(|e| (0..k).map(|i| e[i] - e0[i]).collect()).collect()
}

/// HNF of the exponent-difference lattice; full iff it is all of Z^k.
pub fn lattice_fullness(p: &SparsePoly) -> LatticeBasis {
    let k = p.nvars();
    let basis = hnf(&exponent_differences(p), k);
    let rank = basis.len();
    let index = if rank == k { det(&basis).abs() } else { 0 };
    LatticeBasis {
        full: index == 1,
        basis,
        rank,
        index,
    }
}

/// Complete independent rows spanning a saturated lattice to a unimodular matrix.
pub fn complete_unimodular(rows: &IntMatrix, k: usize) -> Option<IntMatrix> {
    let r = rows.len();
    if r == 0 {
        return Some(
            (0..k)
                .map(|i| (0..k).map(|j| (i == j) as i64).collect())
                .collect(),
        );
    }
    // Column HNF of rows: rows * V = [H 0] via row HNF of the transpose.
    let t: IntMatrix = (0..k)
        .map(|c| rows.iter().map(|row| row[c]).collect())
        .collect();
    let (full_h, full_u) = full_transform(&t, r);
    // full_u * t = [H; 0], so t^T * full_u^T = [H^T 0] and V = full_u^T.
    let v: IntMatrix = (0..k)
        .map(|i| (0..k).map(|j| full_u[j][i]).collect())
        .collect();
    if full_h
        .iter()
        .take(r)
        .enumerate()
        .any(|(i, row)| row[i].abs() != 1)
    {
        return None;
    }
    let vinv = inverse_unimodular(&v);
    let mut out = rows.clone();
    for row in vinv.iter().skip(r) {
        out.push(row.clone());
    }
    if det(&out).abs() == 1 {
        Some(out)
    } else {
        None
    }
}

/// Row HNF keeping all k rows of the transform (zero rows included).
fn full_transform(t: &IntMatrix, ncols: usize) -> (IntMatrix, IntMatrix) {
    let m = t.len();
    let mut h = t.clone();
    let mut u: IntMatrix = (0..m)
        .map(|i| (0..m).map(|j| (i == j) as i64).collect())
        .collect();
    let mut row = 0;
    for col in 0..ncols {
        loop {
            let piv = (row..m)
                .filter(|&r| h[r][col] != 0)
                .min_by_key(|&r| h[r][col].abs());
            let Some(piv) = piv else { break };
            h.swap(row, piv);
            u.swap(row, piv);
            let mut done = true;
            for r in row + 1..m {
                if h[r][col] != 0 {
                    let q = Integer::div_floor(&h[r][col], &h[row][col]);
                    for c in 0..ncols {
                        h[r][c] -= q * h[row][c];
                    }
                    for c in 0..m {
                        u[r][c] -= q * u[row][c];
                    }
                    if h[r][col] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if row < m && h[row][col] != 0 {
            row += 1;
        }
    }
    (h, u)
}

/// Rewrite P in coordinates of its exponent lattice: P = x^{e0} L(x^{b_1}, ..., x^{b_k})
/// where b_j are the rows of the returned basis. Requires full rank.
pub fn reduce_to_lattice(p: &SparsePoly) -> Option<(SparsePoly, IntMatrix)> {
    let k = p.nvars();
    let lb = lattice_fullness(p);
    if lb.rank < k {
        return None;
    }
    let b = lb.basis;
    let e0 = *p.terms().next()?.0;
    let mut out = SparsePoly::zero(k);
    for (e, c) in p.terms() {
        let d: Vec<i64> = (0..k).map(|i| e[i] - e0[i]).collect();
        // Solve lambda * B = d; B is upper triangular with pivots on the diagonal.
        let mut lam = vec![0i64; k];
        let mut rem = d.clone();
        for j in 0..k {
            let piv = b[j][j];
            assert!(rem[j] % piv == 0, "exponent difference outside lattice");
            lam[j] = rem[j] / piv;
            for c2 in 0..k {
                rem[c2] -= lam[j] * b[j][c2];
            }
        }
        let mut f: Exponent = [0; MAX_VARS];
        f[..k].copy_from_slice(&lam);
        out.add_term(f, c);
    }
    let (_, out) = out.strip_monomial();
    Some((out, b))
}

/// All points x of roots of unity with x^{b_j} = u_j for the rows b_j of B (nonsingular).
pub fn monomial_preimages(b: &IntMatrix, u: &[RootOfUnity]) -> Vec<Vec<RootOfUnity>> {
    let k = b.len();
    let d = det(b).abs();
    assert!(d > 0, "singular monomial map");
    // Write x_i = exp(2 pi i s_i); B s = w (mod Z^k), s = adj(B) (w + m) / det.
    let adj: IntMatrix = if k == 1 {
        vec![vec![1]]
    } else {
        let minor = |r: usize, c: usize| -> i64 {
            let sub: IntMatrix = (0..k)
                .filter(|&i| i != r)
                .map(|i| (0..k).filter(|&j| j != c).map(|j| b[i][j]).collect())
                .collect();
            det(&sub)
        };
        (0..k)
            .map(|i| {
                (0..k)
                    .map(|j| {
                        if (i + j) % 2 == 0 {
                            minor(j, i)
                        } else {
                            -minor(j, i)
                        }
                    })
                    .collect()
            })
            .collect()
    };
    let sd = det(b);
    let denom = u.iter().fold(1u64, |a, r| a.lcm(&r.order())) as i64;
    // w_j = num_j / denom
    let w: Vec<i64> = u
        .iter()
        .map(|r| r.numerator() as i64 * (denom / r.order() as i64))
        .collect();
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    let ranges: Vec<i64> = (0..k).map(|_| d).collect();
    let total: i64 = ranges.iter().product();
    for idx in 0..total {
        let mut m = vec![0i64; k];
        let mut t = idx;
        for slot in m.iter_mut() {
            *slot = t % d;
            t /= d;
        }
        let pt: Vec<RootOfUnity> = (0..k)
            .map(|i| {
                let mut num: i64 = 0;
                for j in 0..k {
                    num += adj[i][j] * (w[j] + m[j] * denom);
                }
                RootOfUnity::new(num * sd.signum(), (denom * d) as u64)
            })
            .collect();
        if seen.insert(pt.clone()) {
            out.push(pt);
        }
        if out.len() as i64 == d {
            break;
        }
    }
    out
}

/// Smith form of a matrix with independent rows: returns (P, d, Qinv) with
/// P * A * Q = [diag(d) 0], P and Q unimodular, d_i > 0 dividing d_{i+1}.
pub fn smith(a: &IntMatrix, ncols: usize) -> (IntMatrix, Vec<i64>, IntMatrix) {
    let r = a.len();
    let mut m: Vec<Vec<i128>> = a
        .iter()
        .map(|row| row.iter().map(|&x| x as i128).collect())
        .collect();
    let mut p: Vec<Vec<i128>> = (0..r)
        .map(|i| (0..r).map(|j| (i == j) as i128).collect())
        .collect();
    let mut q: Vec<Vec<i128>> = (0..ncols)
        .map(|i| (0..ncols).map(|j| (i == j) as i128).collect())
        .collect();
    for t in 0..r {
        loop {
            // smallest nonzero entry of the trailing block to (t, t)
            let mut best: Option<(usize, usize)> = None;
            for i in t..r {
                for j in t..ncols {
                    if m[i][j] != 0 && best.is_none_or(|(bi, bj)| m[i][j].abs() < m[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else {
                panic!("smith form requires independent rows");
            };
            m.swap(t, bi);
            p.swap(t, bi);
            for row in m.iter_mut() {
                row.swap(t, bj);
            }
            for row in q.iter_mut() {
                row.swap(t, bj);
            }
            let piv = m[t][t];
            let mut clean = true;
            for i in t + 1..r {
                let k = Integer::div_floor(&m[i][t], &piv);
                if k != 0 {
                    for j in 0..ncols {
                        m[i][j] -= k * m[t][j];
                    }
                    for j in 0..r {
                        p[i][j] -= k * p[t][j];
                    }
                }
                clean &= m[i][t] == 0;
            }
            for j in t + 1..ncols {
                let k = Integer::div_floor(&m[t][j], &piv);
                if k != 0 {
                    for row in m.iter_mut() {
                        row[j] -= k * row[t];
                    }
                    for row in q.iter_mut() {
                        row[j] -= k * row[t];
                    }
                }
                clean &= m[t][j] == 0;
            }
            if !clean {
                continue;
            }
            // divisibility of the remaining block
            let bad = (t + 1..r)
                .flat_map(|i| (t + 1..ncols).map(move |j| (i, j)))
                .find(|&(i, j)| m[i][j] % piv != 0);
            match bad {
                Some((i, _)) => {
                    for j in 0..ncols {
                        m[t][j] += m[i][j];
                    }
                    for j in 0..r {
                        p[t][j] += p[i][j];
                    }
                }
                None => break,
            }
        }
        if m[t][t] < 0 {
            for j in 0..ncols {
                m[t][j] = -m[t][j];
            }
            for j in 0..r {
                p[t][j] = -p[t][j];
            }
        }
    }
    let conv = |v: &Vec<i128>| -> Vec<i64> {
        v.iter()
            .map(|&x| i64::try_from(x).expect("lattice entry overflow"))
            .collect()
    };
    let d = (0..r).map(|i| m[i][i] as i64).collect();
    let q: IntMatrix = q.iter().map(conv).collect();
    (p.iter().map(conv).collect(), d, inverse_unimodular(&q))
}

/// Coefficients c with c * H = v for H in Hermite form, if they exist.
pub fn solve_in_hnf(h: &IntMatrix, v: &[i64]) -> Option<Vec<i64>> {
    let mut rem = v.to_vec();
    let mut out = Vec::with_capacity(h.len());
    for row in h {
        let piv = row.iter().position(|&x| x != 0)?;
        if rem[piv] % row[piv] != 0 {
            return None;
        }
        let c = rem[piv] / row[piv];
        for (r, x) in rem.iter_mut().zip(row) {
            *r -= c * x;
        }
        out.push(c);
    }
    rem.iter().all(|&x| x == 0).then_some(out)
}

/// x^e for a point of roots of unity.
pub fn monomial_value(e: &[i64], x: &[RootOfUnity]) -> RootOfUnity {
    e.iter()
        .zip(x)
        .fold(RootOfUnity::one(), |acc, (&k, r)| acc.mul(&r.pow(k)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hnf_basic() {
        let a = vec![vec![2, 4], vec![0, 6], vec![4, 2]];
        let (h, u) = hnf_with_transform(&a, 2);
        assert_eq!(h, vec![vec![2, 4], vec![0, 6]]);
        for (i, row) in h.iter().enumerate() {
            for c in 0..2 {
                let s: i64 = (0..3).map(|j| u[i][j] * a[j][c]).sum();
                assert_eq!(s, row[c]);
            }
        }
    }

    #[test]
    fn fullness_and_reduction() {
        // x^2 + y^2 + 1 has index 4
        let p = SparsePoly::from_int_terms(2, &[([2, 0, 0], 1), ([0, 2, 0], 1), ([0, 0, 0], 1)]);
        let lb = lattice_fullness(&p);
        assert!(!lb.full);
        assert_eq!(lb.index, 4);
        let (l, b) = reduce_to_lattice(&p).unwrap();
        assert_eq!(b, vec![vec![2, 0], vec![0, 2]]);
        assert!(lattice_fullness(&l).full);
        assert_eq!(l.num_terms(), 3);
    }

    #[test]
    fn completion_is_unimodular() {
        let w = complete_unimodular(&vec![vec![0, 3, 2]], 3).unwrap();
        assert_eq!(w[0], vec![0, 3, 2]);
        assert_eq!(det(&w).abs(), 1);
        let w2 = complete_unimodular(&vec![vec![0, 1, 0], vec![1, 0, 3]], 3).unwrap();
        assert_eq!(det(&w2).abs(), 1);
        assert!(complete_unimodular(&vec![vec![2, 0]], 2).is_none());
    }

    #[test]
    fn preimages_cover_fibre() {
        let b = vec![vec![2, 1], vec![0, 3]];
        let u = [RootOfUnity::new(1, 5), RootOfUnity::new(1, 4)];
        let pts = monomial_preimages(&b, &u);
        assert_eq!(pts.len(), 6);
        for x in &pts {
            for (j, row) in b.iter().enumerate() {
                assert_eq!(monomial_value(row, x), u[j]);
            }
        }
    }
}
