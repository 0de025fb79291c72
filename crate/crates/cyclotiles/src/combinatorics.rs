//! Vertex types of a tile and counting arguments on tilings by f copies of it.

use crate::tiling::angle::{common_denominator, VertexType, Q};
use serde::Serialize;
use std::collections::HashSet;
use std::fmt;

/// All vertex types with angle sum 2, an even number of α and δ, and degree
/// between 3 and `max_degree` (default: the largest degree the smallest angle allows).
pub fn enumerate_vertex_types(angles: &[Q; 4], max_degree: Option<u32>) -> Vec<VertexType> {
    let c = common_denominator(angles);
    let (p, target) = ([c[0], c[1], c[2], c[3]], 2 * c[4]);
    if p.iter().any(|&x| x <= 0) {
        return vec![];
    }
    let min = *p.iter().min().unwrap();
    let bound = max_degree.unwrap_or(((target + min - 1) / min) as u32);
    let mut out = Vec::new();
    let mut n = [0u32; 4];
    fn rec(
        i: usize,
        rest: i64,
        p: &[i64; 4],
        n: &mut [u32; 4],
        bound: u32,
        out: &mut Vec<VertexType>,
    ) {
        if i == 4 {
            let v = VertexType(*n);
            if rest == 0 && v.degree() >= 3 && v.degree() <= bound && (n[0] + n[3]) % 2 == 0 {
                out.push(v);
            }
            return;
        }
        let mut k = 0;
        while k as i64 * p[i] <= rest {
            n[i] = k;
            rec(i + 1, rest - k as i64 * p[i], p, n, bound, out);
            k += 1;
        }
        n[i] = 0;
    }
    rec(0, target, &p, &mut n, bound, &mut out);
    out.sort();
    out
}

/// Multiplicities of vertex types in a tiling by f tiles.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VertexSpectrum {
    pub f: i64,
    pub counts: Vec<(VertexType, u64)>,
}

impl VertexSpectrum {
    /// Total number of each angle over all vertices.
    pub fn angle_totals(&self) -> [u64; 4] {
        let mut t = [0u64; 4];
        for (v, m) in &self.counts {
            for i in 0..4 {
                t[i] += v.0[i] as u64 * m;
            }
        }
        t
    }

    pub fn vertices_of_degree(&self, k: u32) -> u64 {
        self.counts
            .iter()
            .filter(|(v, _)| v.degree() == k)
            .map(|(_, m)| m)
            .sum()
    }

    /// Balance (each angle f times) and both Euler counts.
    pub fn is_consistent(&self) -> bool {
        let f = self.f as u64;
        if self.angle_totals() != [f; 4] {
            return false;
        }
        let max = self
            .counts
            .iter()
            .map(|(v, _)| v.degree())
            .max()
            .unwrap_or(3);
        let excess4: u64 = (4..=max)
            .map(|k| (k as u64 - 3) * self.vertices_of_degree(k))
            .sum();
        let excess5: u64 = (5..=max)
            .map(|k| (k as u64 - 4) * self.vertices_of_degree(k))
            .sum();
        f == 6 + excess4 && self.vertices_of_degree(3) == 8 + excess5
    }
}

impl fmt::Display for VertexSpectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .counts
            .iter()
            .map(|(v, m)| format!("{}{}", m, v.greek()))
            .collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Outcome of the counting test.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Balance {
    Feasible(VertexSpectrum),
    /// Weights w on (#α, #β, #γ, #δ, #vertices) with w·(n_v, 1) <= 0 for every
    /// vertex type but w·(f, f, f, f, f+2) > 0 (less any required vertices).
    Certificate([i64; 5]),
    /// Exhaustive search found no spectrum, but no short certificate exists.
    Exhausted,
    /// Search budget exceeded.
    Unknown,
}

impl Balance {
    pub fn feasible(&self) -> Option<bool> {
        match self {
            Balance::Feasible(_) => Some(true),
            Balance::Certificate(_) | Balance::Exhausted => Some(false),
            Balance::Unknown => None,
        }
    }
}

fn certificate(types: &[VertexType], target: [i64; 5]) -> Option<[i64; 5]> {
    const R: i64 = 2;
    let mut w = [-R; 5];
    loop {
        let ok = types
            .iter()
            .all(|v| (0..4).map(|i| w[i] * v.0[i] as i64).sum::<i64>() + w[4] <= 0);
        if ok && (0..5).map(|i| w[i] * target[i]).sum::<i64>() > 0 {
            return Some(w);
        }
        let mut i = 0;
        loop {
            if i == 5 {
                return None;
            }
            w[i] += 1;
            if w[i] <= R {
                break;
            }
            w[i] = -R;
            i += 1;
        }
    }
}

struct Search<'a> {
    types: &'a [VertexType],
    nodes: u64,
    budget: u64,
    failed: HashSet<(usize, [i64; 5])>,
}

impl Search<'_> {
    /// Some(true) found, Some(false) none, None budget exhausted.
    fn run(&mut self, i: usize, rest: [i64; 5], m: &mut Vec<u64>) -> Option<bool> {
        if rest.iter().all(|&r| r == 0) {
            return Some(true);
        }
        if i == self.types.len() || self.failed.contains(&(i, rest)) {
            return Some(false);
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            return None;
        }
        // every remaining angle needs a remaining type containing it
        let tail = &self.types[i..];
        for a in 0..4 {
            if rest[a] > 0 && !tail.iter().any(|v| v.0[a] > 0) {
                self.failed.insert((i, rest));
                return Some(false);
            }
        }
        let total: i64 = rest[..4].iter().sum();
        let (dmin, dmax) = tail.iter().fold((u32::MAX, 0), |(lo, hi), v| {
            (lo.min(v.degree()), hi.max(v.degree()))
        });
        if total < dmin as i64 * rest[4] || total > dmax as i64 * rest[4] {
            self.failed.insert((i, rest));
            return Some(false);
        }
        let v = self.types[i];
        let mut kmax = rest[4];
        for a in 0..4 {
            if v.0[a] > 0 {
                kmax = kmax.min(rest[a] / v.0[a] as i64);
            }
        }
        for k in (0..=kmax).rev() {
            let mut r = rest;
            for a in 0..4 {
                r[a] -= k * v.0[a] as i64;
            }
            r[4] -= k;
            m[i] = k as u64;
            match self.run(i + 1, r, m) {
                Some(true) => return Some(true),
                Some(false) => {}
                None => return None,
            }
        }
        m[i] = 0;
        self.failed.insert((i, rest));
        Some(false)
    }
}

/// Whether nonnegative multiplicities exist with every angle appearing f times
/// and f + 2 vertices in total (which gives both Euler counts).
pub fn balance_feasible(angles: &[Q; 4], f: i64) -> Balance {
    let types = enumerate_vertex_types(angles, None);
    balance_with_types(&types, f)
}

pub fn balance_with_types(types: &[VertexType], f: i64) -> Balance {
    balance_with_required(types, f, &[])
}

/// As [`balance_with_types`], with each type in `required` used at least once.
pub fn balance_with_required(types: &[VertexType], f: i64, required: &[VertexType]) -> Balance {
    let mut target = [f, f, f, f, f + 2];
    for v in required {
        if !types.contains(v) {
            return Balance::Exhausted;
        }
        for a in 0..4 {
            target[a] -= v.0[a] as i64;
        }
        target[4] -= 1;
    }
    if target.iter().any(|&t| t < 0) {
        return Balance::Exhausted;
    }
    if let Some(w) = certificate(types, target) {
        return Balance::Certificate(w);
    }
    // low degree first: witnesses use many small vertices
    let mut order = types.to_vec();
    order.sort_by_key(|v| (v.degree(), std::cmp::Reverse(*v)));
    let mut s = Search {
        types: &order,
        nodes: 0,
        budget: 2_000_000,
        failed: HashSet::new(),
    };
    let mut m = vec![0u64; order.len()];
    match s.run(0, target, &mut m) {
        Some(true) => {
            for v in required {
                let i = order.iter().position(|u| u == v).unwrap();
                m[i] += 1;
            }
            let mut counts: Vec<(VertexType, u64)> = order
                .iter()
                .zip(&m)
                .filter(|(_, &k)| k > 0)
                .map(|(v, &k)| (*v, k))
                .collect();
            counts.sort();
            Balance::Feasible(VertexSpectrum { f, counts })
        }
        Some(false) => Balance::Exhausted,
        None => Balance::Unknown,
    }
}

/// Whether the given multiplicities are a valid spectrum for f using only the listed types.
pub fn spectrum_feasible(spectrum: &VertexSpectrum, types: &[VertexType]) -> bool {
    spectrum.counts.iter().all(|(v, _)| types.contains(v)) && spectrum.is_consistent()
}

fn is_a2b(v: &VertexType) -> bool {
    v.degree() == 3 && v.ab_angles() == 2
}

const ABD: VertexType = VertexType([1, 1, 0, 1]);
const ACD: VertexType = VertexType([1, 0, 1, 1]);

/// Allowed pairs of a²b-vertices.
const A2B_PAIRS: [[&str; 2]; 3] = [["abd", "cd2"], ["acd", "a2b"], ["a2b", "cd2"]];

/// Allowed pairs of degree 3 types when neither αβδ nor αγδ is present; closed under mirroring below.
const DEGREE3_PAIRS: [[&str; 2]; 7] = [
    ["a2b", "b3"],
    ["a2b", "b2c"],
    ["a2b", "c3"],
    ["a2b", "cd2"],
    ["b2c", "bd2"],
    ["bc2", "bd2"],
    ["bd2", "c3"],
];

fn pair_allowed(list: &[[&str; 2]], set: &[VertexType]) -> bool {
    if set.len() != 2 {
        return false;
    }
    list.iter().any(|pair| {
        let p: Vec<VertexType> = pair.iter().map(|s| VertexType::parse(s).unwrap()).collect();
        let m: Vec<VertexType> = p.iter().map(|v| v.mirror()).collect();
        [p, m]
            .iter()
            .any(|q| q.contains(&set[0]) && q.contains(&set[1]))
    })
}

/// Whether a set of degree 3 vertex types can occur together in a tiling.
pub fn degree3_set_allowed(set: &[VertexType]) -> bool {
    let mut set: Vec<VertexType> = set.iter().filter(|v| v.degree() == 3).copied().collect();
    set.sort();
    set.dedup();
    let a2b: Vec<VertexType> = set.iter().filter(|v| is_a2b(v)).copied().collect();
    if a2b.len() >= 3 || (a2b.len() == 2 && !pair_allowed(&A2B_PAIRS, &a2b)) {
        return false;
    }
    if set.contains(&ABD) || set.contains(&ACD) {
        return true;
    }
    set.len() < 2 || pair_allowed(&DEGREE3_PAIRS, &set)
}

/// Whether the degree 3 types available to the angles form an allowed set.
/// A false result does not rule out a tiling that avoids some of them.
pub fn degree3_constraint_check(angles: &[Q; 4]) -> bool {
    degree3_set_allowed(&enumerate_vertex_types(angles, Some(3)))
}
