//! Solve one case: exponential form, cyclotomic solutions, and decoding back
//! to tile angles.

use super::angle::{AngleForm, Param, Q};
use super::cases::{case_parametrization, CaseSpec};
use super::equation::{build_trig_equation, exponentialize, Substitution, TrigExpr};
use super::filter::{geometric_filter, verify_exact, Violation};
use super::TilingError;
use crate::algebra::sparse::SparsePoly;
use crate::algebra::RootOfUnity;
use crate::solver::coset::Coset;
use crate::solver::lattice::hnf;
use crate::solver::{self, CyclotomicPoint, TorsionFamily};
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;

/// A concrete angle assignment obtained from a cyclotomic point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Candidate {
    pub case: String,
    pub angles: [Q; 4],
    pub f: i64,
    /// The cyclotomic point it was decoded from.
    pub source: String,
    pub branches: Vec<String>,
    pub violations: Vec<Violation>,
}

impl Candidate {
    pub fn passes(&self) -> bool {
        self.violations.is_empty()
    }
}

/// A one-parameter family of angles, affine in 1/f.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Family {
    pub case: String,
    pub angles: [AngleForm; 4],
    pub source: String,
    pub branches: Vec<String>,
    /// Even f in [6, f_max] where the family passes every filter.
    pub admissible: Vec<i64>,
}

impl Family {
    pub fn at(&self, f: i64) -> [Q; 4] {
        specialize(&self.angles, f)
    }
}

/// Evaluate angle forms in 1/f at a concrete f.
pub fn specialize(forms: &[AngleForm; 4], f: i64) -> [Q; 4] {
    let mut v = BTreeMap::new();
    v.insert(Param::InvF, Q::new(1, f));
    [0, 1, 2, 3].map(|i| forms[i].eval(&v))
}

#[derive(Debug, Clone)]
pub struct CaseOutcome {
    pub case: CaseSpec,
    pub parametrization: [AngleForm; 4],
    pub equation: TrigExpr,
    pub substitutions: Vec<Substitution>,
    pub polynomial: SparsePoly,
    pub points: Vec<CyclotomicPoint>,
    pub torsion_families: Vec<TorsionFamily>,
    /// Every decoded angle assignment with f >= 6, passing or not.
    pub candidates: Vec<Candidate>,
    pub families: Vec<Family>,
    /// Solution sets that are not finite for some f.
    pub continua: Vec<String>,
}

impl CaseOutcome {
    pub fn accepted(&self) -> impl Iterator<Item = &Candidate> {
        self.candidates.iter().filter(|c| c.passes())
    }
}

/// p with s p = 2 r + 2 m for integer m and lo < p < hi (p <= hi when `closed`).
fn lifts(r: Q, s: Q, lo: Q, hi: Q, closed: bool) -> Vec<Q> {
    let two = Q::from(2);
    let m0 = ((lo * s - two * r) / two).floor().to_integer();
    let m1 = ((hi * s - two * r) / two).ceil().to_integer();
    (m0..=m1)
        .map(|m| (two * r + two * Q::from(m)) / s)
        .filter(|&p| p > lo && (p < hi || (closed && p == hi)))
        .collect()
}

struct Decoder<'a> {
    case: &'a CaseSpec,
    params: Vec<Param>,
    form: &'a [AngleForm; 4],
    scales: Vec<Q>,
    f_max: i64,
}

impl Decoder<'_> {
    fn k(&self) -> usize {
        self.params.len()
    }

    fn angles(&self, values: &BTreeMap<Param, Q>) -> [Q; 4] {
        [0, 1, 2, 3].map(|i| self.form[i].eval(values))
    }

    fn candidate(
        &self,
        values: &BTreeMap<Param, Q>,
        f: i64,
        source: &str,
        branches: &[String],
    ) -> Result<Candidate, TilingError> {
        let angles = self.angles(values);
        if !verify_exact(&angles) {
            return Err(TilingError::Inconsistent(format!(
                "case {}: decoded angles {:?} violate the equation",
                self.case.id, angles
            )));
        }
        Ok(Candidate {
            case: self.case.id.clone(),
            angles,
            f,
            source: source.to_string(),
            branches: branches.to_vec(),
            violations: geometric_filter(&angles, f).violations,
        })
    }

    /// All angle assignments over a point; with `fixed_f` the last coordinate is taken as 1/f.
    fn decode_point(
        &self,
        coords: &[RootOfUnity],
        fixed_f: Option<i64>,
        branches: &[String],
    ) -> Result<Vec<Candidate>, TilingError> {
        let k = self.k();
        let zero = Q::zero();
        let two = Q::from(2);
        let mut choices: Vec<Vec<Q>> = Vec::with_capacity(k);
        for i in 0..k - 1 {
            choices.push(lifts(coords[i].turns(), self.scales[i], zero, two, false));
        }
        let ts: Vec<Q> = match fixed_f {
            Some(f) => vec![Q::new(1, f)],
            None => lifts(
                coords[k - 1].turns(),
                self.scales[k - 1],
                zero,
                Q::new(1, 6),
                true,
            )
            .into_iter()
            .filter(|t| *t.numer() == 1)
            .collect(),
        };
        choices.push(ts);
        let source = CyclotomicPoint {
            coords: coords.to_vec(),
        }
        .to_string();
        let mut out = Vec::new();
        let mut idx = vec![0usize; k];
        if choices.iter().any(|c| c.is_empty()) {
            return Ok(out);
        }
        loop {
            let values: BTreeMap<Param, Q> = (0..k)
                .map(|i| (self.params[i], choices[i][idx[i]]))
                .collect();
            let f = choices[k - 1][idx[k - 1]].recip().to_integer();
            out.push(self.candidate(&values, f, &source, branches)?);
            let mut i = 0;
            loop {
                if i == k {
                    return Ok(out);
                }
                idx[i] += 1;
                if idx[i] < choices[i].len() {
                    break;
                }
                idx[i] = 0;
                i += 1;
            }
        }
    }

    fn admissible(&self, angles: &[AngleForm; 4]) -> Vec<i64> {
        (6..=self.f_max)
            .step_by(2)
            .filter(|&f| {
                let mut v = BTreeMap::new();
                v.insert(Param::InvF, Q::new(1, f));
                let a = [0, 1, 2, 3].map(|i| angles[i].eval(&v));
                geometric_filter(&a, f).violations.is_empty()
            })
            .collect()
    }

    /// Families where the free angles are affine functions of 1/f.
    fn decode_affine(&self, fam: &TorsionFamily, branches: &[String]) -> Option<Vec<Family>> {
        let k = self.k();
        let r = fam.rank();
        if r != k - 1 {
            return None;
        }
        let rows: Vec<Vec<Q>> = fam
            .relations
            .iter()
            .map(|(a, _)| a.iter().map(|&x| Q::from(x)).collect())
            .collect();
        let r_theta: Vec<Vec<Q>> = rows.iter().map(|row| row[..k - 1].to_vec()).collect();
        let inv = invert(&r_theta)?;
        let c: Vec<Q> = fam
            .relations
            .iter()
            .map(|(_, w)| Q::from(2) * w.turns())
            .collect();
        let st = self.scales[k - 1];
        // u_theta = inv (c + 2m) - inv R_t s_t t
        let b: Vec<Q> = (0..r)
            .map(|j| -(0..r).map(|i| inv[j][i] * rows[i][k - 1]).sum::<Q>() * st)
            .collect();
        let bound: Vec<i64> = (0..r)
            .map(|i| {
                let mut s = c[i].abs() + rows[i][k - 1].abs() * st / Q::from(6);
                for j in 0..k - 1 {
                    s += rows[i][j].abs() * Q::from(2) * self.scales[j];
                }
                (s / Q::from(2)).ceil().to_integer() + 1
            })
            .collect();
        let source = fam.to_string();
        let mut out = Vec::new();
        for m in boxed(&bound) {
            let rhs: Vec<Q> = (0..r).map(|i| c[i] + Q::from(2 * m[i])).collect();
            let mut form = self.form.clone();
            for j in 0..k - 1 {
                let a: Q = (0..r).map(|i| inv[j][i] * rhs[i]).sum();
                let theta = AngleForm::constant(a / self.scales[j])
                    .add(&AngleForm::term(Param::InvF, b[j] / self.scales[j]));
                for x in form.iter_mut() {
                    *x = x.substitute(self.params[j], &theta);
                }
            }
            let admissible = self.admissible(&form);
            if !admissible.is_empty() {
                out.push(Family {
                    case: self.case.id.clone(),
                    angles: form,
                    source: source.clone(),
                    branches: branches.to_vec(),
                    admissible,
                });
            }
        }
        Some(out)
    }

    /// Intersect a family with each admissible f separately.
    fn decode_by_face_count(
        &self,
        fam: &TorsionFamily,
        branches: &[String],
        candidates: &mut Vec<Candidate>,
        continua: &mut Vec<String>,
    ) -> Result<(), TilingError> {
        let k = self.k();
        let coset = fam.to_coset();
        let mut et = vec![0i64; k];
        et[k - 1] = 1;
        let mut rows = coset.rows.clone();
        rows.push(et);
        let independent = hnf(&rows, k).len() > coset.rank();
        let mut hits = Vec::new();
        for f in (6..=self.f_max).step_by(2) {
            let xt = RootOfUnity::from_half_turns(self.scales[k - 1] / Q::from(f));
            let parts = if independent {
                let mut chars = coset.chars.clone();
                chars.push(xt);
                Coset::split(k, &rows, &chars)
            } else if coset.member(&vec![RootOfUnity::one(); k - coset.rank()])[k - 1] == xt {
                vec![coset.clone()]
            } else {
                vec![]
            };
            for part in parts {
                if let Some(coords) = part.coords() {
                    for c in self.decode_point(&coords, Some(f), branches)? {
                        if c.f >= 6 {
                            candidates.push(c);
                        }
                    }
                } else if self.sample_passes(&part, f, branches)? {
                    hits.push(f);
                }
            }
        }
        if !hits.is_empty() {
            continua.push(format!(
                "case {}: torsion family {} contains a continuum of admissible angles for f in {:?}",
                self.case.id, fam, hits
            ));
        }
        Ok(())
    }

    /// Whether some member of a positive-dimensional coset at fixed f passes the filters.
    fn sample_passes(
        &self,
        part: &Coset,
        f: i64,
        branches: &[String],
    ) -> Result<bool, TilingError> {
        const N: i64 = 24;
        let d = part.nvars - part.rank();
        for m in boxed(&vec![N / 2; d]) {
            let free: Vec<RootOfUnity> = m.iter().map(|&j| RootOfUnity::new(j, N as u64)).collect();
            let coords = part.member(&free);
            if self
                .decode_point(&coords, Some(f), branches)?
                .iter()
                .any(|c| c.passes())
            {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

/// All integer vectors with |m_i| <= bound_i.
fn boxed(bound: &[i64]) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for &b in bound {
        out = out
            .into_iter()
            .flat_map(|v| {
                (-b..=b).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

/// Inverse of a small rational matrix.
fn invert(m: &[Vec<Q>]) -> Option<Vec<Vec<Q>>> {
    let n = m.len();
    let mut a: Vec<Vec<Q>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        let p = a[col][col];
        for x in a[col].iter_mut() {
            *x /= p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col];
                for j in 0..2 * n {
                    let v = a[col][j];
                    a[r][j] -= f * v;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Solve one case and decode everything with f up to `f_max`.
pub fn solve_case(case: &CaseSpec, f_max: i64) -> Result<CaseOutcome, TilingError> {
    let form = case_parametrization(case)?;
    let equation = build_trig_equation(&form);
    let params = case.params();
    let (polynomial, substitutions) = exponentialize(&equation, &params)?;
    let result = solver::solve(&polynomial)?;
    let dec = Decoder {
        case,
        params: params.clone(),
        form: &form,
        scales: substitutions.iter().map(|s| s.scale).collect(),
        f_max,
    };
    let mut candidates = Vec::new();
    for (p, prov) in result.points.iter().zip(&result.provenance) {
        candidates.extend(dec.decode_point(&p.coords, None, prov)?);
    }
    let mut families = Vec::new();
    let mut continua = Vec::new();
    let np = result.points.len();
    for (fam, prov) in result.families.iter().zip(&result.provenance[np..]) {
        match dec.decode_affine(fam, prov) {
            Some(fs) => families.extend(fs),
            None => dec.decode_by_face_count(fam, prov, &mut candidates, &mut continua)?,
        }
    }
    candidates.sort_by(|a, b| (a.f, a.angles).cmp(&(b.f, b.angles)));
    candidates.dedup_by(|a, b| a.f == b.f && a.angles == b.angles);
    Ok(CaseOutcome {
        case: case.clone(),
        parametrization: form,
        equation,
        substitutions,
        polynomial,
        points: result.points,
        torsion_families: result.families,
        candidates,
        families,
        continua,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tiling::angle::{parse_angles, render_angles};
    use crate::tiling::cases::case_by_id;

    #[test]
    fn lifts_cover_the_interval() {
        // e^{i delta} = -1 gives delta = 1 only
        assert_eq!(
            lifts(Q::new(1, 2), Q::one(), Q::zero(), Q::from(2), false),
            vec![Q::one()]
        );
        // y = e^{2 i delta} = 1 gives delta = 1 (0 and 2 excluded)
        assert_eq!(
            lifts(Q::zero(), Q::from(2), Q::zero(), Q::from(2), false),
            vec![Q::one()]
        );
        // z = e^{4 i pi t} = e^{2 pi i/3} gives t = 1/6 (and 2/3 out of range)
        assert_eq!(
            lifts(Q::new(1, 3), Q::from(4), Q::zero(), Q::new(1, 6), true),
            vec![Q::new(1, 6)]
        );
    }

    #[test]
    fn invert_small() {
        let m = vec![vec![Q::from(1), Q::from(2)], vec![Q::from(0), Q::from(2)]];
        let i = invert(&m).unwrap();
        assert_eq!(
            i,
            vec![vec![Q::one(), -Q::one()], vec![Q::zero(), Q::new(1, 2)]]
        );
        assert!(invert(&[vec![Q::one(), Q::one()], vec![Q::one(), Q::one()]]).is_none());
    }

    #[test]
    fn b3_a4_candidates() {
        let out = solve_case(&case_by_id("b3+a4").unwrap(), 60).unwrap();
        let good: Vec<String> = out
            .accepted()
            .map(|c| format!("{} f={}", render_angles(&c.angles), c.f))
            .collect();
        // (3,4,3,6)/6 is the reflection of (6,3,4,3)/6
        assert_eq!(
            good,
            vec!["(3,4,3,6)/6 f=6", "(3,4,8,1)/6 f=6", "(3,4,6,2)/6 f=8"]
        );
        assert!(out.families.is_empty());
        let dismissed = out
            .candidates
            .iter()
            .find(|c| c.angles == parse_angles("(3,4,3,4)/6").unwrap())
            .unwrap();
        assert_eq!(dismissed.violations, vec![Violation::BetaDeltaOrder]);
    }
}
