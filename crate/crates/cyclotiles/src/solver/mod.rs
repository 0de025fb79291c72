//! Roots-of-unity solutions of Laurent polynomial equations in up to three variables.
//!
//! Solutions come as isolated [`CyclotomicPoint`]s and as [`TorsionFamily`]s,
//! cosets {x : x^a = w} of positive dimension lying entirely on the zero set.

pub mod coset;
pub mod engine;
pub mod lattice;
pub mod mvgcd;
pub mod univariate;

use crate::algebra::sparse::SparsePoly;
use crate::algebra::{AlgebraError, RootOfUnity, UniPoly};
use coset::Coset;
use lattice::{det, IntMatrix, LatticeBasis};
use serde::Serialize;
use std::fmt;
use thiserror::Error;

pub use engine::{Found, Pattern};
pub use univariate::{cyclotomic_orders, cyclotomic_roots_any, cyclotomic_roots_univariate};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum SolverError {
    #[error("polynomial vanishes identically")]
    IdenticallyZero,
    #[error("internal inconsistency: {0}")]
    Internal(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CyclotomicPoint {
    pub coords: Vec<RootOfUnity>,
}

impl fmt::Display for CyclotomicPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coords
            .iter()
            .map(|r| format!("{}/{}", r.numerator(), r.order()))
            .collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// {x : x^a = w for every relation (a, w)}.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct TorsionFamily {
    pub nvars: usize,
    pub relations: Vec<(Vec<i64>, RootOfUnity)>,
}

impl TorsionFamily {
    pub fn new(nvars: usize, relations: Vec<(Vec<i64>, RootOfUnity)>) -> Self {
        let rows = relations.iter().map(|r| r.0.clone()).collect();
        let chars = relations.iter().map(|r| r.1).collect();
        Self::from_coset(&Coset::from_saturated(nvars, rows, chars))
    }

    pub fn from_coset(c: &Coset) -> Self {
        TorsionFamily {
            nvars: c.nvars,
            relations: c
                .rows
                .iter()
                .cloned()
                .zip(c.chars.iter().copied())
                .collect(),
        }
    }

    pub fn to_coset(&self) -> Coset {
        Coset {
            nvars: self.nvars,
            rows: self.relations.iter().map(|r| r.0.clone()).collect(),
            chars: self.relations.iter().map(|r| r.1).collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.relations.len()
    }

    /// Number of free parameters.
    pub fn dimension(&self) -> usize {
        self.nvars - self.rank()
    }

    pub fn contains(&self, p: &CyclotomicPoint) -> bool {
        self.to_coset().contains_point(&p.coords)
    }

    /// The member with free parameters `free` (one root per dimension).
    pub fn member(&self, free: &[RootOfUnity]) -> CyclotomicPoint {
        CyclotomicPoint {
            coords: self.to_coset().member(free),
        }
    }
}

impl fmt::Display for TorsionFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_coset())
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SolveResult {
    pub points: Vec<CyclotomicPoint>,
    pub families: Vec<TorsionFamily>,
    /// For each point then each family (same order), the branches that produced it.
    pub provenance: Vec<Vec<String>>,
}

impl SolveResult {
    pub fn from_found(found: &Found) -> Self {
        let mut out = SolveResult::default();
        let mut fam_prov = Vec::new();
        for (c, tags) in found {
            match c.coords() {
                Some(coords) => {
                    out.points.push(CyclotomicPoint { coords });
                    out.provenance.push(tags.iter().cloned().collect());
                }
                None => {
                    out.families.push(TorsionFamily::from_coset(c));
                    fam_prov.push(tags.iter().cloned().collect());
                }
            }
        }
        out.provenance.extend(fam_prov);
        out
    }
}

fn check_input(p: &SparsePoly, nvars: usize) -> Result<(), SolverError> {
    if p.nvars() != nvars {
        return Err(SolverError::Precondition(format!(
            "expected {} variables, got {}",
            nvars,
            p.nvars()
        )));
    }
    if p.is_zero() {
        return Err(SolverError::IdenticallyZero);
    }
    if p.is_monomial() {
        return Err(SolverError::Precondition("polynomial is a monomial".into()));
    }
    Ok(())
}

/// All cyclotomic points and torsion families of P = 0, P in 1 to 3 variables.
pub fn solve(p: &SparsePoly) -> Result<SolveResult, SolverError> {
    if p.is_zero() {
        return Err(SolverError::IdenticallyZero);
    }
    Ok(SolveResult::from_found(&engine::solve_cosets(p)?))
}

pub fn cyclotomic_points_bivariate(p: &SparsePoly) -> Result<SolveResult, SolverError> {
    check_input(p, 2)?;
    solve(p)
}

pub fn cyclotomic_points_trivariate(p: &SparsePoly) -> Result<SolveResult, SolverError> {
    check_input(p, 3)?;
    solve(p)
}

/// Square-free parts of the resultants of the rationalized P against each of its
/// sign/power companions, eliminating x. Only for 2 or 3 variables.
pub fn companion_resultants(p: &SparsePoly) -> Result<Vec<(String, SparsePoly)>, SolverError> {
    let k = p.nvars();
    let patterns = match k {
        2 => Pattern::bivariate(),
        3 => Pattern::trivariate(),
        _ => return Err(SolverError::Unsupported(format!("{} variables", k))),
    };
    let (_, r) = crate::algebra::galois::rationalize(p).strip_monomial();
    patterns
        .iter()
        .map(|pat| {
            let res = engine::pattern_resultant(&r, pat)?;
            let sf = if res.is_zero() {
                res
            } else {
                squarefree_part(&res)
            };
            Ok((pat.label(k), sf))
        })
        .collect()
}

/// Square-free part with coprime integer coefficients, monomial factors removed.
/// Univariate rational input takes the integer route.
pub fn squarefree_part(p: &SparsePoly) -> SparsePoly {
    let (_, q) = p.strip_monomial();
    let used: Vec<usize> = (0..q.nvars()).filter(|&v| q.uses_var(v)).collect();
    if let [v] = used[..] {
        if let Some(ip) = UniPoly::from_sparse(&q, v).and_then(|u| u.to_intpoly()) {
            return UniPoly::from_intpoly(v, &ip.squarefree())
                .to_sparse(q.nvars())
                .primitive_integral();
        }
    }
    mvgcd::squarefree(&q).primitive_integral()
}

/// Lattice spanned by the exponent differences of P.
pub fn lattice_fullness(p: &SparsePoly) -> Result<LatticeBasis, SolverError> {
    if p.num_terms() < 2 {
        return Err(SolverError::Precondition(
            "lattice of a monomial is undefined".into(),
        ));
    }
    Ok(lattice::lattice_fullness(p))
}

/// Substitute x_i = prod_j y_j^{m[i][j]} and clear the monomial factor.
pub fn apply_monomial_substitution(
    p: &SparsePoly,
    m: &IntMatrix,
) -> Result<SparsePoly, SolverError> {
    let k = p.nvars();
    if m.len() != k || m.iter().any(|r| r.len() != k) {
        return Err(SolverError::Precondition(
            "substitution matrix must be square of size nvars".into(),
        ));
    }
    if det(m) == 0 {
        return Err(SolverError::Precondition(
            "singular substitution matrix".into(),
        ));
    }
    Ok(p.monomial_substitute(m, k).strip_monomial().1)
}

/// Roots of unity for the one unassigned variable of P under a partial assignment.
/// `IdenticallyZero` means P vanishes for every value of that variable.
pub fn backsolve_variable(
    p: &SparsePoly,
    partial: &[Option<RootOfUnity>],
) -> Result<Vec<RootOfUnity>, SolverError> {
    if partial.len() != p.nvars() {
        return Err(SolverError::Precondition(
            "assignment length differs from arity".into(),
        ));
    }
    let free: Vec<usize> = (0..partial.len())
        .filter(|&i| partial[i].is_none())
        .collect();
    let [v] = free[..] else {
        return Err(SolverError::Precondition(
            "exactly one variable must be unassigned".into(),
        ));
    };
    let mut q = p.clone();
    for (i, r) in partial.iter().enumerate() {
        if let Some(r) = r {
            q = q.substitute_root(i, r);
        }
    }
    if q.is_zero() {
        return Err(SolverError::IdenticallyZero);
    }
    let (_, q) = q.strip_monomial();
    if q.is_constant() {
        return Ok(vec![]);
    }
    let u = UniPoly::from_sparse(&q, v)
        .ok_or_else(|| SolverError::Internal("specialization not univariate".into()))?;
    cyclotomic_roots_any(&u)
}
