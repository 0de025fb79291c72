//! Maximal torsion cosets on a hypersurface in at most three variables.

use super::coset::Coset;
use super::lattice::{complete_unimodular, hnf, inverse_unimodular, smith, IntMatrix};
use super::univariate::{cyclotomic_orders, cyclotomic_roots_any, roots_of_orders};
use super::{mvgcd, SolverError};
use crate::algebra::cyclotomic::cyclotomic_polynomial;
use crate::algebra::galois::rationalize;
use crate::algebra::intpoly::IntPoly;
use crate::algebra::resultant::resultant_eliminate;
use crate::algebra::sparse::{SparsePoly, MAX_VARS};
use crate::algebra::{RootOfUnity, UniPoly};
use num_bigint::BigInt;
use num_integer::Integer;
use rayon::prelude::*;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// Cosets found, each with the branches that produced it.
pub type Found = BTreeMap<Coset, BTreeSet<String>>;

const MAX_DEPTH: usize = 24;

/// Substitution x_i -> sign_i * x_i^power used to pair a hypersurface with a conjugate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pattern {
    pub signs: [i64; 3],
    pub power: i64,
}

impl Pattern {
    /// The seven companions of a curve.
    pub fn bivariate() -> Vec<Pattern> {
        [
            ([-1, 1, 1], 1),
            ([1, -1, 1], 1),
            ([-1, -1, 1], 1),
            ([1, 1, 1], 2),
            ([-1, 1, 1], 2),
            ([1, -1, 1], 2),
            ([-1, -1, 1], 2),
        ]
        .into_iter()
        .map(|(signs, power)| Pattern { signs, power })
        .collect()
    }

    /// The fifteen companions of a surface, in a fixed order.
    pub fn trivariate() -> Vec<Pattern> {
        let signs = [
            [-1, 1, 1],
            [1, -1, 1],
            [1, 1, -1],
            [-1, -1, 1],
            [-1, 1, -1],
            [1, -1, -1],
            [-1, -1, -1],
        ];
        let mut out: Vec<Pattern> = signs
            .iter()
            .map(|&s| Pattern { signs: s, power: 1 })
            .collect();
        out.push(Pattern {
            signs: [1, 1, 1],
            power: 2,
        });
        out.extend(signs.iter().map(|&s| Pattern { signs: s, power: 2 }));
        out
    }

    pub fn apply(&self, p: &SparsePoly) -> SparsePoly {
        p.sign_power_variant(&self.signs[..p.nvars()], self.power)
    }

    pub fn label(&self, nvars: usize) -> String {
        let names = crate::algebra::sparse::VAR_NAMES;
        let parts: Vec<String> = (0..nvars)
            .map(|i| {
                let s = if self.signs[i] < 0 { "-" } else { "" };
                match self.power {
                    1 => format!("{}{}", s, names[i]),
                    k => format!("{}{}^{}", s, names[i], k),
                }
            })
            .collect();
        format!("({})", parts.join(","))
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label(3))
    }
}

fn merge(into: &mut Found, from: Found) {
    for (c, tags) in from {
        into.entry(c).or_default().extend(tags);
    }
}

fn tagged(c: Coset, tag: &str) -> Found {
    let mut f = Found::new();
    f.entry(c).or_default().insert(tag.to_string());
    f
}

fn retag(found: Found, prefix: &str) -> Found {
    found
        .into_iter()
        .map(|(c, tags)| {
            (
                c,
                tags.into_iter()
                    .map(|t| format!("{}; {}", prefix, t))
                    .collect(),
            )
        })
        .collect()
}

/// Drop cosets contained in another one.
pub fn maximal(found: Found) -> Found {
    let keys: Vec<Coset> = found.keys().cloned().collect();
    let mut out = Found::new();
    for (c, tags) in found {
        let covered = keys
            .iter()
            .any(|d| d != &c && d.rank() < c.rank() && d.contains(&c));
        if !covered {
            out.insert(c, tags);
        }
    }
    out
}

/// P(x) = x^{e0} L(u) with u_l = y_l^{d_l}, y = x^{Qinv}: returns (L in r variables, d, Qinv),
/// or None when the exponent lattice is already all of Z^k.
fn lattice_coordinates(p: &SparsePoly) -> Option<(SparsePoly, Vec<i64>, IntMatrix)> {
    let k = p.nvars();
    let diffs = super::lattice::exponent_differences(p);
    let h = hnf(&diffs, k);
    let r = h.len();
    if r == 0 {
        return None;
    }
    let (_, d, qinv) = smith(&h, k);
    if r == k && d.iter().all(|&x| x == 1) {
        return None;
    }
    let q = inverse_unimodular(&qinv);
    let (_, moved) = p.monomial_substitute(&q, k).strip_monomial();
    let l = SparsePoly::from_terms(
        r,
        moved.terms().map(|(e, c)| {
            let mut f = [0; MAX_VARS];
            for i in 0..k {
                if i < r {
                    debug_assert_eq!(e[i] % d[i], 0);
                    f[i] = e[i] / d[i];
                } else {
                    debug_assert_eq!(e[i], 0);
                }
            }
            (f, c.clone())
        }),
    );
    Some((l, d, qinv))
}

fn lift_from_lattice(c: &Coset, k: usize, d: &[i64], qinv: &IntMatrix) -> Vec<Coset> {
    let rows: IntMatrix = c
        .rows
        .iter()
        .map(|rho| {
            (0..k)
                .map(|j| {
                    rho.iter()
                        .enumerate()
                        .map(|(l, &x)| x * d[l] * qinv[l][j])
                        .sum()
                })
                .collect()
        })
        .collect();
    Coset::split(k, &rows, &c.chars)
}

/// All maximal torsion cosets on the zero set of a nonzero Laurent polynomial
/// in 1 to 3 variables.
pub fn solve_cosets(p: &SparsePoly) -> Result<Found, SolverError> {
    solve_at(p, 0)
}

fn solve_at(p: &SparsePoly, depth: usize) -> Result<Found, SolverError> {
    if depth > MAX_DEPTH {
        return Err(SolverError::Internal(
            "recursion limit in coset search".into(),
        ));
    }
    if p.is_zero() {
        return Err(SolverError::IdenticallyZero);
    }
    let k = p.nvars();
    let (_, p) = p.strip_monomial();
    if p.is_constant() {
        return Ok(Found::new());
    }
    if k == 1 {
        let u = UniPoly::from_sparse(&p, 0).expect("stripped univariate");
        let mut out = Found::new();
        for r in cyclotomic_roots_any(&u)? {
            out.entry(Coset::point(&[r]))
                .or_default()
                .insert("univariate".into());
        }
        return Ok(out);
    }
    if let Some((l, d, qinv)) = lattice_coordinates(&p) {
        let sub = solve_at(&l, depth + 1)?;
        let mut out = Found::new();
        for (c, tags) in sub {
            for lifted in lift_from_lattice(&c, k, &d, &qinv) {
                out.entry(lifted).or_default().extend(tags.iter().cloned());
            }
        }
        return Ok(maximal(out));
    }
    match k {
        2 => core2(&p, depth),
        3 => core3(&p, depth),
        _ => Err(SolverError::Unsupported(format!("{} variables", k))),
    }
}

/// Cosets of P inside the coset C.
pub fn restrict_solve(
    p: &SparsePoly,
    c: &Coset,
    tag: &str,
    depth: usize,
) -> Result<Found, SolverError> {
    let (q, w) = c.restrict(p);
    if q.is_zero() {
        return Ok(tagged(c.clone(), tag));
    }
    if c.is_point() {
        return Ok(Found::new());
    }
    let sub = solve_at(&q, depth + 1)?;
    let mut out = Found::new();
    for (s, tags) in sub {
        let lifted = c.lift(&w, &s);
        let entry = out.entry(lifted).or_default();
        for t in tags {
            entry.insert(format!("{}; {}", tag, t));
        }
    }
    Ok(out)
}

fn primitive_direction(v: &[i64]) -> Option<Vec<i64>> {
    let g = v.iter().fold(0i64, |a, &b| a.gcd(&b));
    if g == 0 {
        return None;
    }
    let mut out: Vec<i64> = v.iter().map(|&x| x / g).collect();
    if out.iter().find(|&&x| x != 0).is_some_and(|&x| x < 0) {
        for x in out.iter_mut() {
            *x = -*x;
        }
    }
    Some(out)
}

fn intpoly_in_first(terms: &[(i64, BigInt)]) -> IntPoly {
    let lo = terms.iter().map(|t| t.0).min().unwrap();
    let hi = terms.iter().map(|t| t.0).max().unwrap();
    let mut c = vec![BigInt::from(0); (hi - lo + 1) as usize];
    for (e, v) in terms {
        c[(e - lo) as usize] += v;
    }
    IntPoly::new(c)
}

/// Split off all binomial factors x^a - w (w a root of unity) of a rational polynomial.
/// Returns the cosets {x^a = w} and the remaining factor.
pub fn extract_binomials(r: &SparsePoly) -> Result<(Vec<Coset>, SparsePoly), SolverError> {
    let k = r.nvars();
    let (_, mut rest) = r.primitive_integral().strip_monomial();
    let exps: Vec<Vec<i64>> = rest.terms().map(|(e, _)| e[..k].to_vec()).collect();
    let mut dirs = BTreeSet::new();
    for i in 0..exps.len() {
        for j in i + 1..exps.len() {
            let d: Vec<i64> = (0..k).map(|t| exps[j][t] - exps[i][t]).collect();
            if let Some(a) = primitive_direction(&d) {
                dirs.insert(a);
            }
        }
    }
    let mut out = Vec::new();
    for a in dirs {
        if rest.is_constant() {
            break;
        }
        let w = complete_unimodular(&vec![a.clone()], k).expect("primitive vector");
        let winv = inverse_unimodular(&w);
        let moved = rest.monomial_substitute(&winv, k);
        let mut fibres: BTreeMap<Vec<i64>, Vec<(i64, BigInt)>> = BTreeMap::new();
        for (e, c) in moved.terms() {
            let q = c.to_rational().expect("rational polynomial");
            debug_assert!(q.is_integer());
            fibres
                .entry(e[1..k].to_vec())
                .or_default()
                .push((e[0], q.to_integer()));
        }
        if fibres.values().any(|f| f.len() < 2) {
            continue;
        }
        let mut g = IntPoly::zero();
        for f in fibres.values() {
            g = g.gcd(&intpoly_in_first(f));
            if g.deg() == 0 {
                break;
            }
        }
        let (_, g) = g.strip_x();
        if g.deg() == 0 {
            continue;
        }
        let orders = cyclotomic_orders(&g)?;
        if orders.is_empty() {
            continue;
        }
        let mut moved = moved;
        for &n in &orders {
            let phi = SparsePoly::from_terms(
                k,
                cyclotomic_polynomial(n)
                    .coeffs()
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| c.bits() > 0)
                    .map(|(i, c)| {
                        let mut e = [0; MAX_VARS];
                        e[0] = i as i64;
                        (e, crate::algebra::CyclotomicElement::from_bigint(c.clone()))
                    }),
            );
            while let Some(q) = moved.div_exact(&phi) {
                moved = q;
            }
        }
        for r in roots_of_orders(&orders) {
            out.push(Coset::from_saturated(k, vec![a.clone()], vec![r]));
        }
        let (_, back) = moved.monomial_substitute(&w, k).strip_monomial();
        rest = back;
    }
    Ok((out, rest))
}

fn numeric_zero(p: &SparsePoly, pt: &[RootOfUnity], scale: f64) -> bool {
    let z: Vec<(f64, f64)> = pt.iter().map(|r| r.to_complex()).collect();
    let (re, im) = p.evaluate_f64(&z);
    (re * re + im * im).sqrt() <= 1e-8 * scale
}

fn coefficient_scale(p: &SparsePoly) -> f64 {
    p.terms()
        .map(|(_, c)| {
            let (re, im) = c.to_complex();
            (re * re + im * im).sqrt()
        })
        .sum::<f64>()
        .max(1.0)
}

fn univariate_roots(s: &SparsePoly, var: usize) -> Result<Vec<RootOfUnity>, SolverError> {
    let (_, s) = s.strip_monomial();
    if s.is_constant() {
        return Ok(vec![]);
    }
    let u = UniPoly::from_sparse(&s, var)
        .ok_or_else(|| SolverError::Internal("resultant is not univariate".into()))?;
    cyclotomic_roots_any(&u)
}

/// Isolated cyclotomic points of a rational bivariate polynomial with no binomial factors.
pub fn isolated2(r: &SparsePoly, depth: usize) -> Result<Vec<Vec<RootOfUnity>>, SolverError> {
    if depth > MAX_DEPTH {
        return Err(SolverError::Internal(
            "recursion limit in isolated point search".into(),
        ));
    }
    let (_, r) = r.strip_monomial();
    if r.is_constant() {
        return Ok(vec![]);
    }
    let diffs = super::lattice::exponent_differences(&r);
    if hnf(&diffs, 2).len() < 2 {
        return Ok(vec![]);
    }
    if let Some((l, d, qinv)) = lattice_coordinates(&r) {
        let mut out = BTreeSet::new();
        for pt in isolated2(&l, depth + 1)? {
            for c in lift_from_lattice(&Coset::point(&pt), 2, &d, &qinv) {
                out.insert(c.coords().unwrap());
            }
        }
        return Ok(out.into_iter().collect());
    }
    let mut xs = BTreeSet::new();
    let mut ys = BTreeSet::new();
    let variants: Vec<SparsePoly> = Pattern::bivariate()
        .iter()
        .map(|pat| pat.apply(&r))
        .collect();
    let results: Vec<Result<(SparsePoly, SparsePoly, SparsePoly), SolverError>> = variants
        .par_iter()
        .map(|v| {
            let sy = resultant_eliminate(&r, v, 0)?;
            let sx = resultant_eliminate(&r, v, 1)?;
            Ok((v.clone(), sy, sx))
        })
        .collect();
    for res in results {
        let (v, sy, sx) = res?;
        if sy.is_zero() || sx.is_zero() {
            let g = mvgcd::gcd(&r, &v);
            let cof = r
                .div_exact(&g)
                .ok_or_else(|| SolverError::Internal("gcd does not divide".into()))?;
            let mut out = BTreeSet::new();
            out.extend(isolated2(&g, depth + 1)?);
            out.extend(isolated2(&cof, depth + 1)?);
            return Ok(out.into_iter().collect());
        }
        ys.extend(univariate_roots(&sy, 1)?);
        xs.extend(univariate_roots(&sx, 0)?);
    }
    let scale = coefficient_scale(&r);
    let mut out = Vec::new();
    for x in &xs {
        for y in &ys {
            let pt = [*x, *y];
            if numeric_zero(&r, &pt, scale) && r.vanishes_at(&pt) {
                out.push(pt.to_vec());
            }
        }
    }
    Ok(out)
}

fn core2(p: &SparsePoly, depth: usize) -> Result<Found, SolverError> {
    let (_, r) = rationalize(p).strip_monomial();
    let (bins, rest) = extract_binomials(&r)?;
    let mut out = Found::new();
    for c in &bins {
        merge(
            &mut out,
            restrict_solve(p, c, &format!("binomial factor {}", c), depth)?,
        );
    }
    for pt in isolated2(&rest, depth + 1)? {
        if p.vanishes_at(&pt) {
            out.entry(Coset::point(&pt))
                .or_default()
                .insert("resultant companions".into());
        }
    }
    Ok(maximal(out))
}

/// Drop the first variable of a polynomial that does not involve it.
fn drop_first(p: &SparsePoly) -> SparsePoly {
    p.monomial_substitute(&[vec![0, 0], vec![1, 0], vec![0, 1]], 2)
}

/// Cosets of the (y, z) projection lifted to three variables with x free.
fn lift_yz(c: &Coset) -> Coset {
    let rows = c.rows.iter().map(|r| vec![0, r[0], r[1]]).collect();
    Coset::from_saturated(3, rows, c.chars.clone())
}

/// Resultant of P and its companion under a pattern, eliminating x.
pub fn pattern_resultant(r: &SparsePoly, pat: &Pattern) -> Result<SparsePoly, SolverError> {
    Ok(resultant_eliminate(r, &pat.apply(r), 0)?)
}

fn core3(p: &SparsePoly, depth: usize) -> Result<Found, SolverError> {
    let (_, r) = rationalize(p).strip_monomial();
    let (bins, rest) = extract_binomials(&r)?;
    let mut out = Found::new();
    for c in &bins {
        merge(
            &mut out,
            restrict_solve(p, c, &format!("binomial factor {}", c), depth)?,
        );
    }
    let (_, rest) = rest.strip_monomial();
    if rest.is_constant() {
        return Ok(maximal(out));
    }
    if !rest.uses_var(0) {
        for (c, tags) in solve_at(&drop_first(&rest), depth + 1)? {
            let found = restrict_solve(p, &lift_yz(&c), "x free", depth)?;
            merge(
                &mut out,
                retag(found, &tags.into_iter().collect::<Vec<_>>().join(", ")),
            );
        }
        return Ok(maximal(out));
    }
    let patterns = Pattern::trivariate();
    let branch: Vec<Result<Found, SolverError>> = patterns
        .par_iter()
        .enumerate()
        .map(|(i, pat)| {
            let tag = format!("pattern {} {}", i + 1, pat);
            let q = pat.apply(&rest);
            let s = resultant_eliminate(&rest, &q, 0)?;
            let mut found = Found::new();
            if s.is_zero() {
                let g = mvgcd::gcd(&rest, &q);
                let cof = rest
                    .div_exact(&g)
                    .ok_or_else(|| SolverError::Internal("gcd does not divide".into()))?;
                for part in [g, cof] {
                    if part.strip_monomial().1.is_constant() {
                        continue;
                    }
                    for (c, _) in solve_at(&part, depth + 1)? {
                        merge(
                            &mut found,
                            restrict_solve(p, &c, &format!("{} common component", tag), depth)?,
                        );
                    }
                }
                return Ok(found);
            }
            for (c, _) in solve_at(&drop_first(&s), depth + 1)? {
                let lifted = lift_yz(&c);
                merge(&mut found, restrict_solve(p, &lifted, &tag, depth)?);
            }
            Ok(found)
        })
        .collect();
    for b in branch {
        merge(&mut out, b?);
    }
    Ok(maximal(out))
}
