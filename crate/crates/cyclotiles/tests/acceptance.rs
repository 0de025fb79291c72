//! Acceptance run. Prints one line per criterion and exits non-zero if any fails.

use cyclotiles::algebra::cyclotomic::CyclotomicElement;
use cyclotiles::algebra::galois::rationalize;
use cyclotiles::algebra::{
    parse_polynomial, resultant_eliminate, RootOfUnity, SparsePoly, UniPoly,
};
use cyclotiles::combinatorics::{
    balance_feasible, enumerate_vertex_types, spectrum_feasible, Balance, VertexSpectrum,
};
use cyclotiles::geometry::solve_edge_lengths;
use cyclotiles::solver::{
    self, backsolve_variable, companion_resultants, cyclotomic_roots_univariate, squarefree_part,
    Pattern,
};
use cyclotiles::tiling::angle::{mirror_angles, parse_angles, render_angles, VertexType, Q};
use cyclotiles::tiling::cases::{case_by_id, enumerate_cases, CaseGroup};
use cyclotiles::tiling::filter::verify_exact;
use cyclotiles::tiling::merge::{merge_into_families, Classification};
use cyclotiles::tiling::solve::{solve_case, CaseOutcome};
use cyclotiles::tiling::solve_cases;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::{BTreeMap, BTreeSet};
use std::process::ExitCode;

const F_MAX: i64 = 200;

struct Verdict {
    pass: bool,
    detail: String,
}

struct Run {
    outcomes: BTreeMap<String, CaseOutcome>,
    classification: Classification,
}

fn full_run() -> Run {
    let cases = enumerate_cases();
    let mut outcomes = BTreeMap::new();
    for (case, r) in cases.iter().zip(solve_cases(&cases, F_MAX)) {
        let out = r.unwrap_or_else(|e| panic!("case {} failed: {}", case.id, e));
        outcomes.insert(case.id.clone(), out);
    }
    let all: Vec<CaseOutcome> = cases.iter().map(|c| outcomes[&c.id].clone()).collect();
    let classification = merge_into_families(&all, F_MAX).expect("merge");
    Run {
        outcomes,
        classification,
    }
}

fn poly(s: &str, nvars: usize) -> SparsePoly {
    parse_polynomial(s, nvars).unwrap_or_else(|e| panic!("{}: {}", s, e))
}

fn product(factors: &[&str], nvars: usize) -> SparsePoly {
    factors
        .iter()
        .fold(SparsePoly::one(nvars), |acc, f| acc.mul(&poly(f, nvars)))
}

/// a = c * b for some nonzero constant c.
fn proportional(a: &SparsePoly, b: &SparsePoly) -> bool {
    let Some((e, ca)) = a.leading() else {
        return b.is_zero();
    };
    let cb = b.coeff(e);
    match ca.div(&cb) {
        Some(c) if !cb.is_zero() => *a == b.scale(&c),
        _ => false,
    }
}

fn ang(s: &str) -> [Q; 4] {
    parse_angles(s).unwrap_or_else(|| panic!("bad angles {}", s))
}

fn canonical(a: &[Q; 4]) -> [Q; 4] {
    (*a).min(mirror_angles(a))
}

fn label(a: &[Q; 4], f: i64) -> String {
    format!("{} f={}", render_angles(a), f)
}

/// Good solutions of a case: accepted candidates plus every admissible family member.
fn case_solutions(out: &CaseOutcome) -> BTreeSet<([Q; 4], i64)> {
    let mut s: BTreeSet<([Q; 4], i64)> = out.accepted().map(|c| (c.angles, c.f)).collect();
    for fam in &out.families {
        for &f in &fam.admissible {
            s.insert((fam.at(f), f));
        }
    }
    s
}

// Reference data.

const TABLE3_SPORADIC: [(&str, i64); 12] = [
    ("(6,3,4,3)/6", 6),
    ("(1,8,4,3)/6", 6),
    ("(12,4,6,2)/9", 6),
    ("(2,10,3,6)/9", 12),
    ("(1,21,5,8)/15", 12),
    ("(4,9,5,17)/15", 12),
    ("(9,28,10,23)/30", 12),
    ("(3,16,10,41)/30", 12),
    ("(3,20,4,13)/18", 18),
    ("(5,32,6,23)/30", 20),
    ("(1,16,6,43)/30", 20),
    ("(1,42,4,17)/30", 30),
];

const FAMILIES: [(&str, i64); 3] = [
    ("(4,f-4,4,f)/f", 10),
    ("(6,4f-4,12,2f-2)/3f", 6),
    ("(6,2f-4,12,4f-2)/3f", 10),
];

/// Family members as (numerators as affine in f, denominator as multiple of f).
const FAMILY_FORMS: [([(i64, i64); 4], i64); 3] = [
    ([(0, 4), (1, -4), (0, 4), (1, 0)], 1),
    ([(0, 6), (4, -4), (0, 12), (2, -2)], 3),
    ([(0, 6), (2, -4), (0, 12), (4, -2)], 3),
];

fn family_member(k: usize, f: i64) -> [Q; 4] {
    let (nums, d) = FAMILY_FORMS[k];
    nums.map(|(a, b)| Q::new(a * f + b, d * f))
}

fn in_table3(a: &[Q; 4], f: i64) -> bool {
    let c = canonical(a);
    TABLE3_SPORADIC
        .iter()
        .any(|&(s, g)| g == f && canonical(&ang(s)) == c)
        || (0..3).any(|k| f >= 6 && canonical(&family_member(k, f)) == c)
}

/// The family the two-variable case bc2+a3d carries beyond the printed tables.
fn extra_family(f: i64) -> [Q; 4] {
    [7 * f - 12, 4 * f + 48, 10 * f - 24, 3 * f + 36].map(|n| Q::new(n, 12 * f))
}

fn in_extra_family(a: &[Q; 4], f: i64) -> bool {
    canonical(a) == canonical(&extra_family(f))
}

/// (angles, a, b, f, spectrum) rows of the sporadic table. Rational a, b are given as "p/q".
const TABLE1: [(&str, &str, &str, i64, &[(&str, u64)]); 15] = [
    ("(6,3,4,3)/6", "1/2", "1/6", 6, &[("abd", 6), ("c3", 2)]),
    ("(1,8,4,3)/6", "0.391", "1", 6, &[("abd", 6), ("c3", 2)]),
    (
        "(12,4,6,2)/9",
        "0.567",
        "0.174",
        6,
        &[("abd", 6), ("c3", 2)],
    ),
    (
        "(2,10,3,6)/9",
        "0.339",
        "0.532",
        12,
        &[("abd", 12), ("c6", 2)],
    ),
    (
        "(1,21,5,8)/15",
        "0.424",
        "0.741",
        12,
        &[("abd", 12), ("c6", 2)],
    ),
    (
        "(4,9,5,17)/15",
        "0.424",
        "0.165",
        12,
        &[("abd", 12), ("c6", 2)],
    ),
    (
        "(9,28,10,23)/30",
        "0.335",
        "0.415",
        12,
        &[("abd", 12), ("c6", 2)],
    ),
    (
        "(3,16,10,41)/30",
        "0.469",
        "0.146",
        12,
        &[("abd", 12), ("c6", 2)],
    ),
    (
        "(5,32,6,23)/30",
        "0.335",
        "0.415",
        20,
        &[("abd", 20), ("c10", 2)],
    ),
    (
        "(1,16,6,43)/30",
        "0.469",
        "0.273",
        20,
        &[("abd", 20), ("c10", 2)],
    ),
    (
        "(1,42,4,17)/30",
        "0.424",
        "0.549",
        30,
        &[("abd", 30), ("c15", 2)],
    ),
    (
        "(3,20,4,13)/18",
        "0.339",
        "0.452",
        18,
        &[("abd", 18), ("c9", 2)],
    ),
    (
        "(1,4,2,2)/4",
        "1/4",
        "1/2",
        16,
        &[("bd2", 8), ("a2bc", 8), ("c4", 2)],
    ),
    (
        "(5,4,7,3)/9",
        "0.174",
        "0.258",
        36,
        &[("bc2", 18), ("a3d", 6), ("a2b2", 6), ("abd3", 6), ("d6", 2)],
    ),
    (
        "(15,6,10,7)/18",
        "0.225",
        "0.118",
        36,
        &[("a2b", 14), ("ad3", 8), ("bc3", 10), ("b2cd2", 6)],
    ),
];

/// Printed outcome of each two-vertex case; cases not listed print no solution.
const CASE_TABLE: [(&str, &[(&str, i64)]); 10] = [
    ("bd2+bc2", &[("(1,4,2,2)/4", 16)]),
    ("bc2+a3d", &[("(5,4,7,3)/9", 36)]),
    ("bc2+ad3", &[("(1,6,2,3)/5", 10)]),
    ("bc2+d4", &[("(1,4,2,2)/4", 16)]),
    ("b3+a4", &[("(3,4,8,1)/6", 6), ("(3,4,6,2)/6", 8)]),
    ("a2b+b4", &[("(9,6,12,5)/12", 6)]),
    ("a2b+bc3", &[("(15,6,10,7)/18", 36)]),
    ("bd2+a2bc", &[("(1,4,2,2)/4", 16)]),
    ("bd2+c4", &[("(1,4,2,2)/4", 16)]),
    ("bd2+a2c2", &[("(2,6,4,3)/6", 8)]),
];

/// Square-free factor sets of the fifteen companion resultants of the αβδ surface, in pattern order.
const ABD_FACTORS: [&[&str]; 15] = [
    &["z-1", "y+1", "y*z-1"],
    &["z^2+1", "z-1"],
    &["y-1", "y+1"],
    &["y-1", "y+1"],
    &["y+1", "z^2+1", "y-1"],
    &["y-1", "y+1", "y^2+y*z+z^2"],
    &["z^2+1", "y^3*z-1", "y*z-1"],
    &["z-1", "y*z-1", "y-1", "y^3*z-1"],
    &["y+1", "z-1", "y-1", "y^2+y*z+z^2", "y*z-1"],
    &[
        "z-1",
        "y-1",
        "y+1",
        "y^6*z^4-2*y^6*z^3-2*y^5*z^4+y^6*z^2-y^4*z^4+4*y^5*z^2+7*y^4*z^3+2*y^3*z^4-2*y^5*z-y^4*z^2+y^3*z^3+y^2*z^4-5*y^4*z-10*y^3*z^2-5*y^2*z^3+y^4+y^3*z-y^2*z^2-2*y*z^3+2*y^3+7*y^2*z+4*y*z^2-y^2+z^2-2*y-2*z+1",
    ],
    &[
        "y-1",
        "y+1",
        "y^4*z^6-3*y^4*z^5+4*y^4*z^4-4*y^3*z^5-2*y^4*z^3+10*y^3*z^4-y^2*z^5+y^4*z^2-9*y^3*z^3+8*y^2*z^4-y*z^5+4*y^3*z^2-12*y^2*z^3+4*y*z^4-y^3*z+8*y^2*z^2-9*y*z^3+z^4-y^2*z+10*y*z^2-2*z^3-4*y*z+4*z^2-3*z+1",
    ],
    &["y^8*z^6+y^7*z^7+y^6*z^8-2*y^8*z^5-y^6*z^7+y^8*z^4-4*y^7*z^5-y^6*z^6+6*y^7*z^4+3*y^6*z^5+y^5*z^6+y^4*z^7-3*y^7*z^3+2*y^6*z^4+3*y^5*z^5-3*y^4*z^6-y^3*z^7-6*y^6*z^3-6*y^5*z^4+5*y^4*z^5+y^3*z^6+3*y^6*z^2+4*y^5*z^3-4*y^4*z^4+4*y^3*z^5+3*y^2*z^6+y^5*z^2+5*y^4*z^3-6*y^3*z^4-6*y^2*z^5-y^5*z-3*y^4*z^2+3*y^3*z^3+2*y^2*z^4-3*y*z^5+y^4*z+y^3*z^2+3*y^2*z^3+6*y*z^4-y^2*z^2-4*y*z^3+z^4-y^2*z-2*z^3+y^2+y*z+z^2"],
    &[
        "z^2+1",
        "y+1",
        "y^6*z^4+y^5*z^5+y^4*z^6-y^6*z^3-3*y^5*z^4-2*y^4*z^5+y^6*z^2+3*y^5*z^3+3*y^4*z^4-y^3*z^5-y^5*z^2+y^4*z^3+4*y^3*z^4+2*y^2*z^5-2*y^4*z^2-6*y^3*z^3-2*y^2*z^4+2*y^4*z+4*y^3*z^2+y^2*z^3-y*z^4-y^3*z+3*y^2*z^2+3*y*z^3+z^4-2*y^2*z-3*y*z^2-z^3+y^2+y*z+z^2",
    ],
    &["y^8*z^8-4*y^8*z^7-2*y^7*z^8+8*y^8*z^6+5*y^7*z^7-y^6*z^8-9*y^8*z^5-5*y^7*z^6+9*y^6*z^7+2*y^5*z^8+7*y^8*z^4-24*y^6*z^6-8*y^5*z^7+y^4*z^8-3*y^8*z^3+4*y^7*z^4+35*y^6*z^5+12*y^5*z^6-7*y^4*z^7+y^8*z^2-3*y^7*z^3-30*y^6*z^4-5*y^5*z^5+23*y^4*z^6+3*y^3*z^7+y^7*z^2+18*y^6*z^3-4*y^5*z^4-41*y^4*z^5-6*y^3*z^6+2*y^2*z^7-8*y^6*z^2+8*y^5*z^3+48*y^4*z^4+8*y^3*z^5-8*y^2*z^6+2*y^6*z-6*y^5*z^2-41*y^4*z^3-4*y^3*z^4+18*y^2*z^5+y*z^6+3*y^5*z+23*y^4*z^2-5*y^3*z^3-30*y^2*z^4-3*y*z^5+z^6-7*y^4*z+12*y^3*z^2+35*y^2*z^3+4*y*z^4-3*z^5+y^4-8*y^3*z-24*y^2*z^2+7*z^4+2*y^3+9*y^2*z-5*y*z^2-9*z^3-y^2+5*y*z+8*z^2-2*y-4*z+1"],
    &["z^2+1", "y-1", "y+1", "y*z-1", "y^2+y*z+z^2", "y^3*z-1"],
];

// Independent oracles.

/// All vertex types for the angles by direct enumeration.
fn vertex_types_brute(a: &[Q; 4]) -> Vec<[u32; 4]> {
    let bound = |x: Q| (Q::from(2) / x).to_integer() as u32;
    let mut out = Vec::new();
    for na in 0..=bound(a[0]) {
        for nb in 0..=bound(a[1]) {
            for nc in 0..=bound(a[2]) {
                for nd in 0..=bound(a[3]) {
                    let n = [na, nb, nc, nd];
                    let sum: Q = (0..4).map(|i| a[i] * Q::from(n[i] as i64)).sum();
                    if sum == Q::from(2) && na + nb + nc + nd >= 3 && (na + nd) % 2 == 0 {
                        out.push(n);
                    }
                }
            }
        }
    }
    out
}

/// Checks w·(n_v, 1) <= 0 for every vertex type and w·(f, f, f, f, f + 2) > 0.
fn certificate_valid(a: &[Q; 4], f: i64, w: &[i64; 5]) -> bool {
    let types = vertex_types_brute(a);
    let each = types
        .iter()
        .all(|n| (0..4).map(|i| w[i] * n[i] as i64).sum::<i64>() + w[4] <= 0);
    each && w[..4].iter().sum::<i64>() * f + w[4] * (f + 2) > 0
}

/// Φ_n with integer coefficients, ascending.
fn cyclotomic_oracle(n: u64) -> Vec<i64> {
    let mut p = vec![0i64; n as usize + 1];
    p[0] = -1;
    p[n as usize] = 1;
    for d in 1..n {
        if n % d == 0 {
            p = divide_exact(&p, &cyclotomic_oracle(d)).expect("divides");
        }
    }
    p
}

fn divide_exact(a: &[i64], d: &[i64]) -> Option<Vec<i64>> {
    let mut r = a.to_vec();
    while r.last() == Some(&0) {
        r.pop();
    }
    let dn = d.len() - 1;
    if r.len() < d.len() {
        return r.iter().all(|&c| c == 0).then(Vec::new);
    }
    let mut q = vec![0i64; r.len() - dn];
    for i in (0..q.len()).rev() {
        let c = r[i + dn];
        if c % d[dn] != 0 {
            return None;
        }
        q[i] = c / d[dn];
        for j in 0..=dn {
            r[i + j] -= q[i] * d[j];
        }
    }
    r.iter().all(|&c| c == 0).then_some(q)
}

fn mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0i64; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn totient(n: u64) -> u64 {
    (1..=n).filter(|k| num_gcd(*k, n) == 1).count() as u64
}

fn num_gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        num_gcd(b, a % b)
    }
}

fn roots_of_order(n: u64) -> Vec<RootOfUnity> {
    (0..n)
        .filter(|&k| num_gcd(k, n) == 1)
        .map(|k| RootOfUnity::new(k as i64, n))
        .collect()
}

// Criteria.

fn criterion_1(run: &Run) -> Verdict {
    let mut problems = Vec::new();
    let mut notes = Vec::new();
    let out = &run.outcomes["b3+a4"];
    let printed_p = poly(
        "zeta(12)^4*x^3 + zeta(12)^3*x^2*y - (zeta(12)^5 - zeta(12))*x^2 + (zeta(12)^4 - 1)*x*y + zeta(12)^2*x + zeta(12)*y",
        2,
    );
    if !proportional(&out.polynomial, &printed_p) {
        problems.push(format!("P differs: {}", out.polynomial));
    }
    // normalize so the x^3 coefficient is zeta12^4, then take the norm over Q(zeta12)
    let lead = out.polynomial.coeff(&[3, 0, 0]);
    let normalized = out
        .polynomial
        .scale(&CyclotomicElement::zeta_pow(12, 4).div(&lead).unwrap());
    if normalized != printed_p {
        problems.push("normalized P is not coefficient-equal to the printed one".into());
    }
    let printed_pt = poly(
        "x^12-x^10*y^2+x^8*y^4+12*x^10*y+5*x^10+43*x^8*y^2+5*x^6*y^4+12*x^8*y+48*x^6*y^3+24*x^8+24*x^6*y^2+24*x^4*y^4+48*x^6*y+12*x^4*y^3+5*x^6+43*x^4*y^2+5*x^2*y^4+12*x^2*y^3+x^4-x^2*y^2+y^4",
        2,
    );
    if rationalize(&normalized) != printed_pt {
        problems.push("norm of P differs from the printed P~".into());
    }
    let l = poly(
        "x^4*y^4-x^5*y^2+5*x^3*y^4+x^6+12*x^5*y+43*x^4*y^2+48*x^3*y^3+24*x^2*y^4+5*x^5+12*x^4*y+24*x^3*y^2+12*x^2*y^3+5*x*y^4+24*x^4+48*x^3*y+43*x^2*y^2+12*x*y^3+y^4+5*x^3-x*y^2+x^2",
        2,
    );
    if l.monomial_substitute(&[vec![2, 0], vec![0, 1]], 2) != printed_pt {
        problems.push("L(x^2, y) differs from P~".into());
    }
    let res = resultant_eliminate(&l, &l.sign_power_variant(&[1, -1], 1), 0).expect("resultant");
    let printed_res = poly(
        "247669456896*y^14*(4*y^8+67*y^6+114*y^4+67*y^2+4)*(y^8+72*y^6+110*y^4+72*y^2+1)*(y^2+1)^2",
        2,
    );
    if res == printed_res {
        notes.push("Res(L(x,y),L(x,-y)) coefficient-equal to print".to_string());
    } else if proportional(&res, &printed_res) {
        notes.push("Res(L(x,y),L(x,-y)) equal to print up to sign".to_string());
    } else {
        problems.push(format!("Res(L(x,y),L(x,-y)) = {}", res));
    }
    let factors = product(
        &[
            "4*y^8+67*y^6+114*y^4+67*y^2+4",
            "y^8+72*y^6+110*y^4+72*y^2+1",
            "y^2+1",
        ],
        2,
    );
    let sf_ok = proportional(&squarefree_part(&res), &factors) && res.min_degree(1) > 0;
    let ours = companion_resultants(&out.polynomial).expect("resultants");
    let ours_ok = ours
        .iter()
        .any(|(lab, r)| lab == "(x,-y)" && proportional(r, &factors));
    if !sf_ok || !ours_ok {
        problems.push("square-free part of the (x,-y) resultant differs".into());
    }
    let mut ys: BTreeSet<RootOfUnity> = BTreeSet::new();
    for pat in Pattern::bivariate() {
        let r = resultant_eliminate(&l, &pat.apply(&l), 0).expect("resultant");
        if r.is_zero() {
            problems.push(format!("resultant with {} vanishes", pat.label(2)));
            continue;
        }
        let u = UniPoly::from_sparse(&r.strip_monomial().1, 1).expect("univariate in y");
        ys.extend(cyclotomic_roots_univariate(&u).expect("roots"));
    }
    // keep the y that extend to a cyclotomic point of L
    let candidates = ys.len();
    let mut witness = BTreeMap::new();
    ys.retain(|y| match backsolve_variable(&l, &[None, Some(*y)]) {
        Ok(xs) if !xs.is_empty() => {
            witness.insert(*y, xs[0]);
            true
        }
        _ => false,
    });
    let expected: BTreeSet<RootOfUnity> = [2, 3, 4, 8, 9, 10]
        .iter()
        .map(|&k| RootOfUnity::new(k, 12))
        .collect();
    let missing: Vec<_> = expected.difference(&ys).collect();
    let extra: Vec<String> = ys
        .difference(&expected)
        .map(|y| format!("y={} (x={})", y, witness[y]))
        .collect();
    if !missing.is_empty() {
        problems.push(format!("y-solutions missing {:?}", missing));
    }
    if !extra.is_empty() {
        problems.push(format!(
            "y-solutions zeta12^{{2,3,4,8,9,10}} found plus {}, which also lie on L",
            extra.join(", ")
        ));
    }
    notes.push(format!(
        "{} resultant roots, {} extend to points of L",
        candidates,
        ys.len()
    ));
    let outputs: BTreeSet<([Q; 4], i64)> = out.accepted().map(|c| (c.angles, c.f)).collect();
    let printed: BTreeSet<([Q; 4], i64)> = [(ang("(3,4,8,1)/6"), 6), (ang("(3,4,6,2)/6"), 8)]
        .into_iter()
        .collect();
    for (a, f) in printed.difference(&outputs) {
        problems.push(format!("missing output {}", label(a, *f)));
    }
    if !matches!(
        balance_feasible(&ang("(3,4,6,2)/6"), 8),
        Balance::Certificate(_) | Balance::Exhausted
    ) {
        problems.push("(3,4,6,2)/6 f=8 not certified infeasible".into());
    }
    for (a, f) in outputs.difference(&printed) {
        let why = if in_table3(a, *f) {
            "mirror of a Table 3 tile"
        } else {
            "unexplained"
        };
        problems.push(format!("extra output {} ({})", label(a, *f), why));
    }
    let mut detail = problems.clone();
    detail.push(
        if problems.is_empty() {
            "P, P~, L, resultant factors, y-solutions and outputs reproduced"
        } else {
            "all other items reproduced"
        }
        .to_string(),
    );
    detail.extend(notes);
    Verdict {
        pass: problems.is_empty(),
        detail: detail.join("; "),
    }
}

fn criterion_2(run: &Run) -> Verdict {
    let mut problems = Vec::new();
    let abd = &run.outcomes["abd"];
    let printed_p = poly("x^3*y*z - x^2*y*z - x^2*z + x*y*z + x^2 - x*y - x + 1", 3);
    if !proportional(&abd.polynomial, &printed_p) {
        problems.push(format!("P(x,y,z) differs: {}", abd.polynomial));
    }
    let ours = companion_resultants(&abd.polynomial).expect("resultants");
    let mut matched = 0;
    for (k, ((lab, r), factors)) in ours.iter().zip(ABD_FACTORS.iter()).enumerate() {
        if proportional(r, &product(factors, 3)) {
            matched += 1;
        } else {
            problems.push(format!("pattern {} {}: {}", k + 1, lab, r));
        }
    }
    let merged = merge_into_families(std::slice::from_ref(abd), F_MAX).expect("merge");
    let got: BTreeSet<String> = merged
        .sporadic
        .iter()
        .map(|t| label(&t.angles, t.f))
        .collect();
    let want: BTreeSet<String> = TABLE3_SPORADIC
        .iter()
        .map(|&(s, f)| label(&ang(s), f))
        .collect();
    for s in want.difference(&got) {
        problems.push(format!("missing {}", s));
    }
    for s in got.difference(&want) {
        problems.push(format!("extra {}", s));
    }
    for t in &merged.no_tiling {
        problems.push(format!("unexpected dismissal {}", t.label()));
    }
    let fams: BTreeSet<&str> = merged.families.iter().map(|f| f.render.as_str()).collect();
    let want_fams: BTreeSet<&str> = FAMILIES.iter().map(|f| f.0).collect();
    if fams != want_fams {
        problems.push(format!("families {:?}", fams));
    }
    let branch = merged
        .sporadic
        .iter()
        .find(|t| t.f == 18 && t.angles == ang("(3,20,4,13)/18"))
        .and_then(|t| t.provenance.first())
        .map(|p| format!("{} via {}", p.source, p.branches.join(",")));
    match &branch {
        Some(b) => println!("  (3,20,4,13)/18 f=18 generated by {}", b),
        None => problems.push("(3,20,4,13)/18 f=18 has no branch".into()),
    }
    Verdict {
        pass: problems.is_empty(),
        detail: if problems.is_empty() {
            format!(
                "P matches; {}/15 factor sets match; merged abd = {} sporadic + {} families as in Table 3",
                matched,
                got.len(),
                fams.len()
            )
        } else {
            problems.join("; ")
        },
    }
}

/// Evaluate the printed bc2+a3d polynomial on y = zeta6^-1 x^2.
fn printed_bc2_a3d_vanishes_on_coset() -> bool {
    let p = poly(
        "zeta(3)*x^5*y + x^5*zeta(3) - x^6*zeta(3)^2 - x^3*y^2*zeta(3)^2 - x^3*y*zeta(3)^2 - y^3*zeta(3)^2 + x*y^3 + x*y^2",
        2,
    );
    let restricted = SparsePoly::from_terms(
        2,
        p.terms().map(|(e, c)| {
            (
                [e[0] + 2 * e[1], 0, 0],
                c.mul(&CyclotomicElement::zeta_pow(6, -e[1])),
            )
        }),
    );
    restricted.is_zero()
}

fn criterion_3(run: &Run) -> Verdict {
    let printed: BTreeMap<&str, &[(&str, i64)]> = CASE_TABLE.iter().copied().collect();
    let mut exact = 0;
    let mut mismatches = Vec::new();
    let mut unexplained = 0;
    for case in enumerate_cases()
        .iter()
        .filter(|c| c.group != CaseGroup::Abd)
    {
        let ours = case_solutions(&run.outcomes[&case.id]);
        let want: BTreeSet<([Q; 4], i64)> = printed
            .get(case.id.as_str())
            .map(|v| v.iter().map(|&(s, f)| (ang(s), f)).collect())
            .unwrap_or_default();
        if ours == want {
            exact += 1;
            continue;
        }
        let mut parts = Vec::new();
        for (a, f) in want.difference(&ours) {
            unexplained += 1;
            parts.push(format!("missing {}", label(a, *f)));
        }
        let extras: Vec<&([Q; 4], i64)> = ours.difference(&want).collect();
        let in_family: Vec<i64> = extras
            .iter()
            .filter(|(a, f)| in_extra_family(a, *f))
            .map(|e| e.1)
            .collect();
        if !in_family.is_empty() {
            let (lo, hi) = (
                in_family.iter().min().unwrap(),
                in_family.iter().max().unwrap(),
            );
            let range = if lo == hi {
                format!("f={}", lo)
            } else {
                format!("f={}..{}", lo, hi)
            };
            parts.push(format!(
                "{} extra member(s) of (7f-12,4f+48,10f-24,3f+36)/12f ({})",
                in_family.len(),
                range
            ));
        }
        for (a, f) in extras.into_iter().filter(|(a, f)| !in_extra_family(a, *f)) {
            let why = if in_table3(a, *f) {
                "Table 3 tile or mirror".to_string()
            } else {
                match balance_feasible(a, *f) {
                    Balance::Certificate(w) => format!("counting-infeasible, w={:?}", w),
                    Balance::Exhausted => "counting-infeasible".to_string(),
                    _ => {
                        unexplained += 1;
                        "unexplained".to_string()
                    }
                }
            };
            parts.push(format!("extra {} ({})", label(a, *f), why));
        }
        mismatches.push(format!("{}: {}", case.id, parts.join(", ")));
    }
    let coset = if printed_bc2_a3d_vanishes_on_coset() {
        "the printed bc2+a3d polynomial vanishes identically on x^2 = zeta6*y, which carries the extra family"
    } else {
        "the printed bc2+a3d polynomial does not vanish on x^2 = zeta6*y"
    };
    for m in &mismatches {
        println!("  {}", m);
    }
    Verdict {
        pass: mismatches.is_empty(),
        detail: format!(
            "{}/35 cases reproduce the printed set exactly; {} differ ({} unexplained differences); {}",
            exact,
            mismatches.len(),
            unexplained,
            coset
        ),
    }
}

fn criterion_4(run: &Run) -> Verdict {
    let cl = &run.classification;
    let got: BTreeSet<String> = cl.sporadic.iter().map(|t| label(&t.angles, t.f)).collect();
    let want: BTreeSet<String> = TABLE1.iter().map(|r| label(&ang(r.0), r.3)).collect();
    let missing: Vec<&String> = want.difference(&got).collect();
    let extras: Vec<(String, bool)> = cl
        .sporadic
        .iter()
        .filter(|t| !want.contains(&label(&t.angles, t.f)))
        .map(|t| (t.label(), in_extra_family(&t.angles, t.f)))
        .collect();
    let fams: Vec<(String, i64)> = cl
        .families
        .iter()
        .map(|f| (f.render.clone(), f.threshold))
        .collect();
    let mut want_fams: Vec<(String, i64)> =
        FAMILIES.iter().map(|&(r, t)| (r.to_string(), t)).collect();
    let mut got_fams = fams.clone();
    want_fams.sort();
    got_fams.sort();
    let fams_ok = got_fams == want_fams;
    let pass = missing.is_empty() && extras.is_empty() && fams_ok;
    let mut detail = format!(
        "{} sporadic (expected 15, {} of them present), {} families with thresholds {}",
        cl.sporadic.len(),
        15 - missing.len(),
        fams.len(),
        fams.iter()
            .map(|(r, t)| format!("{} f>={}", r, t))
            .collect::<Vec<_>>()
            .join(", ")
    );
    if !fams_ok {
        detail.push_str("; families differ from Table 2");
    }
    if !missing.is_empty() {
        detail.push_str(&format!("; missing {:?}", missing));
    }
    if !extras.is_empty() {
        let explained = extras.iter().filter(|e| e.1).count();
        detail.push_str(&format!(
            "; extra {} ({} of {} are counting-feasible members of (7f-12,4f+48,10f-24,3f+36)/12f)",
            extras
                .iter()
                .map(|e| e.0.as_str())
                .collect::<Vec<_>>()
                .join(", "),
            explained,
            extras.len()
        ));
    }
    Verdict { pass, detail }
}

fn criterion_5() -> Verdict {
    let mut parts = Vec::new();
    let mut pass = true;
    for (s, f) in [("(3,4,6,2)/6", 8), ("(9,6,12,5)/12", 6), ("(2,6,4,3)/6", 8)] {
        let a = ang(s);
        match balance_feasible(&a, f) {
            Balance::Certificate(w) => {
                let ok = certificate_valid(&a, f, &w);
                pass &= ok;
                parts.push(format!(
                    "{} f={} w={:?}{}",
                    s,
                    f,
                    w,
                    if ok { "" } else { " (certificate invalid)" }
                ));
            }
            Balance::Exhausted => parts.push(format!("{} f={} exhausted", s, f)),
            other => {
                pass = false;
                parts.push(format!(
                    "{} f={} not dismissed: {:?}",
                    s,
                    f,
                    other.feasible()
                ));
            }
        }
    }
    Verdict {
        pass,
        detail: parts.join("; "),
    }
}

fn in_bin(value: f64, printed: &str) -> bool {
    match printed.split_once('/') {
        Some((p, q)) => {
            (value - p.parse::<f64>().unwrap() / q.parse::<f64>().unwrap()).abs() < 5e-4
        }
        None if !printed.contains('.') => (value - printed.parse::<f64>().unwrap()).abs() < 5e-4,
        None => {
            let lo: f64 = printed.parse().unwrap();
            value >= lo - 1e-12 && value < lo + 1e-3
        }
    }
}

fn criterion_6() -> Verdict {
    let mut bad = Vec::new();
    for (s, pa, pb, f, spectrum) in TABLE1 {
        let a = ang(s);
        match solve_edge_lengths(&a) {
            Ok(g) if in_bin(g.a, pa) && in_bin(g.b, pb) => {}
            Ok(g) => bad.push(format!(
                "{} a={:.5} b={:.5} (printed {}, {})",
                s, g.a, g.b, pa, pb
            )),
            Err(e) => bad.push(format!("{}: {}", s, e)),
        }
        let sp = VertexSpectrum {
            f,
            counts: spectrum
                .iter()
                .map(|&(v, m)| (VertexType::parse(v).unwrap(), m))
                .collect(),
        };
        if !spectrum_feasible(&sp, &enumerate_vertex_types(&a, None)) {
            bad.push(format!("{} spectrum {} inconsistent", s, sp));
        }
    }
    Verdict {
        pass: bad.is_empty(),
        detail: if bad.is_empty() {
            "all 15 (a, b) in their printed bins; all 15 printed spectra satisfy the counting equations".into()
        } else {
            bad.join("; ")
        },
    }
}

/// (i) univariate roots against trial division by Φ_n.
fn property_univariate(rng: &mut ChaCha8Rng) -> Result<usize, String> {
    let small: Vec<u64> = (1..=30).filter(|&n| totient(n) <= 8).collect();
    for _ in 0..200 {
        let mut f = vec![1i64];
        while f.len() < 21 {
            let factor = if rng.gen_bool(0.5) {
                cyclotomic_oracle(small[rng.gen_range(0..small.len())])
            } else {
                let d = rng.gen_range(1..=4);
                let mut c: Vec<i64> = (0..=d).map(|_| rng.gen_range(-3..=3)).collect();
                c[d] = rng.gen_range(1..=3);
                c
            };
            if f.len() + factor.len() - 1 > 21 {
                break;
            }
            f = mul(&f, &factor);
        }
        if f.iter().all(|&c| c == 0) || f.len() < 2 {
            continue;
        }
        let deg = f.len() as u64 - 1;
        let mut want: BTreeSet<RootOfUnity> = BTreeSet::new();
        for n in 1..=200u64 {
            if totient(n) <= deg && divide_exact(&f, &cyclotomic_oracle(n)).is_some() {
                want.extend(roots_of_order(n));
            }
        }
        let got: BTreeSet<RootOfUnity> = cyclotomic_roots_univariate(&UniPoly::from_int(0, &f))
            .map_err(|e| e.to_string())?
            .into_iter()
            .collect();
        if got != want {
            return Err(format!("{:?}: got {:?}, want {:?}", f, got, want));
        }
    }
    Ok(200)
}

fn to_c(r: &RootOfUnity) -> (f64, f64) {
    r.to_complex()
}

/// (iii) bivariate solver against a scan over all orders n with φ(n) <= 8.
fn property_bivariate(rng: &mut ChaCha8Rng) -> Result<(usize, usize), String> {
    let orders: Vec<u64> = (1..=30).filter(|&n| totient(n) <= 8).collect();
    let grid: Vec<RootOfUnity> = orders.iter().flat_map(|&n| roots_of_order(n)).collect();
    let plant = [1u64, 2, 3, 4, 6];
    let mut zeros_seen = 0;
    for _ in 0..50 {
        let px = roots_of_order(plant[rng.gen_range(0..plant.len())]);
        let py = roots_of_order(plant[rng.gen_range(0..plant.len())]);
        let (zx, zy) = (
            px[rng.gen_range(0..px.len())],
            py[rng.gen_range(0..py.len())],
        );
        let nterms = rng.gen_range(2..=5);
        let mut p = SparsePoly::zero(2);
        for _ in 0..nterms {
            let i = rng.gen_range(0..=3);
            let j = rng.gen_range(0..=3 - i.min(3));
            p.add_term(
                [i, j, 0],
                &CyclotomicElement::from_int(rng.gen_range(-3..=3)),
            );
        }
        let v = p.evaluate_at_roots(&[zx, zy]);
        p.add_term([0, 0, 0], &v.neg());
        if rng.gen_bool(0.3) {
            let a = rng.gen_range(1..=2);
            let w = roots_of_order(plant[rng.gen_range(0..plant.len())]);
            let binom = SparsePoly::from_terms(
                2,
                [
                    ([a, 1, 0], CyclotomicElement::one()),
                    ([0, 0, 0], w[0].to_element().neg()),
                ],
            );
            p = p.mul(&binom);
        }
        if p.is_zero() || p.is_constant() || p.total_degree() > 6 {
            continue;
        }
        let sol = solver::solve(&p).map_err(|e| format!("{}: {}", p, e))?;
        for pt in &sol.points {
            if !p.vanishes_at(&pt.coords) {
                return Err(format!("{}: emitted {} is not a zero", p, pt));
            }
        }
        for fam in &sol.families {
            for t in &grid[..grid.len().min(12)] {
                let m = fam.member(&vec![*t; fam.dimension()]);
                if !p.vanishes_at(&m.coords) {
                    return Err(format!("{}: family {} member {} is not a zero", p, fam, m));
                }
            }
        }
        for x in &grid {
            for y in &grid {
                let (re, im) = p.evaluate_f64(&[to_c(x), to_c(y)]);
                if re.hypot(im) > 1e-6 || !p.vanishes_at(&[*x, *y]) {
                    continue;
                }
                zeros_seen += 1;
                let pt = solver::CyclotomicPoint {
                    coords: vec![*x, *y],
                };
                if !sol.points.contains(&pt) && !sol.families.iter().any(|f| f.contains(&pt)) {
                    return Err(format!("{}: scan zero {} not reported", p, pt));
                }
            }
        }
    }
    Ok((50, zeros_seen))
}

/// (ii) every emitted point and family sample of every case is an exact zero.
fn property_exact_zeros(run: &Run) -> Result<usize, String> {
    let mut checked = 0;
    let samples: Vec<RootOfUnity> = [1u64, 2, 3, 5, 7, 12]
        .iter()
        .flat_map(|&n| roots_of_order(n))
        .collect();
    for (id, out) in &run.outcomes {
        for pt in &out.points {
            checked += 1;
            if !out.polynomial.vanishes_at(&pt.coords) {
                return Err(format!("{}: point {}", id, pt));
            }
        }
        for fam in &out.torsion_families {
            for t in &samples {
                checked += 1;
                let m = fam.member(&vec![*t; fam.dimension()]);
                if !out.polynomial.vanishes_at(&m.coords) {
                    return Err(format!("{}: family {} sample {}", id, fam, m));
                }
            }
        }
        for c in out.accepted() {
            checked += 1;
            if !verify_exact(&c.angles) {
                return Err(format!("{}: {}", id, label(&c.angles, c.f)));
            }
        }
        for fam in &out.families {
            for &f in fam.admissible.iter().take(20) {
                checked += 1;
                if !verify_exact(&fam.at(f)) {
                    return Err(format!("{}: family member {}", id, label(&fam.at(f), f)));
                }
            }
        }
    }
    Ok(checked)
}

/// (iv) Galois closure of every case's points, the αγδ mirror of αβδ, and mirror-free output.
fn property_symmetry(run: &Run) -> Result<String, String> {
    let mut orbits = 0;
    for (id, out) in &run.outcomes {
        let m = out.polynomial.coefficient_order();
        for pt in &out.points {
            let n = pt
                .coords
                .iter()
                .fold(m, |a, r| a * r.order() / num_gcd(a, r.order()));
            for k in (1..n).filter(|&k| num_gcd(k, n) == 1 && k % m == 1 % m) {
                let image = solver::CyclotomicPoint {
                    coords: pt.coords.iter().map(|r| r.pow(k as i64)).collect(),
                };
                orbits += 1;
                if !out.points.contains(&image)
                    && !out.torsion_families.iter().any(|f| f.contains(&image))
                {
                    return Err(format!("{}: conjugate {} of {} missing", id, image, pt));
                }
            }
        }
    }
    let acd = solve_case(&case_by_id("acd").unwrap(), F_MAX).map_err(|e| e.to_string())?;
    let mirrored: BTreeSet<([Q; 4], i64)> = case_solutions(&run.outcomes["abd"])
        .into_iter()
        .map(|(a, f)| (mirror_angles(&a), f))
        .collect();
    if case_solutions(&acd) != mirrored {
        return Err("acd solutions are not the mirror of abd".into());
    }
    let cl = &run.classification;
    let canon: Vec<([Q; 4], i64)> = cl
        .sporadic
        .iter()
        .chain(&cl.no_tiling)
        .map(|t| (canonical(&t.angles), t.f))
        .collect();
    let distinct: BTreeSet<_> = canon.iter().collect();
    if distinct.len() != canon.len() {
        return Err("a tile and its mirror are both listed".into());
    }
    Ok(format!("{} conjugate images, acd = mirror(abd)", orbits))
}

fn criterion_7(run: &Run) -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let results = [
        property_univariate(&mut rng).map(|n| format!("(i) {} univariate cases", n)),
        property_exact_zeros(run).map(|n| format!("(ii) {} exact zero checks", n)),
        property_bivariate(&mut rng)
            .map(|(n, z)| format!("(iii) {} bivariate cases, {} scanned zeros", n, z)),
        property_symmetry(run).map(|s| format!("(iv) {}", s)),
    ];
    let pass = results.iter().all(|r| r.is_ok());
    Verdict {
        pass,
        detail: results
            .into_iter()
            .map(|r| r.unwrap_or_else(|e| format!("FAILED {}", e)))
            .collect::<Vec<_>>()
            .join("; "),
    }
}

fn main() -> ExitCode {
    let run = full_run();
    let checks: [(u8, &dyn Fn() -> Verdict); 7] = [
        (1, &|| criterion_1(&run)),
        (2, &|| criterion_2(&run)),
        (3, &|| criterion_3(&run)),
        (4, &|| criterion_4(&run)),
        (5, &criterion_5),
        (6, &criterion_6),
        (7, &|| criterion_7(&run)),
    ];
    let mut failed = 0;
    for (n, check) in checks {
        let v = check();
        failed += usize::from(!v.pass);
        println!(
            "criterion {}: {} - {}",
            n,
            if v.pass { "PASS" } else { "FAIL" },
            v.detail
        );
    }
    println!("{} of 7 criteria pass", 7 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
