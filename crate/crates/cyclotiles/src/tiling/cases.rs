//! The vertex-combination cases and their linear parametrizations.

use super::angle::{Angle, AngleForm, Param, VertexType, Q};
use super::TilingError;
use num_traits::{One, Zero};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum CaseGroup {
    /// The degree 3 vertex αβδ (αγδ by symmetry).
    Abd,
    /// Two degree 3 vertex types.
    TwoVertex,
    /// A unique degree 3 vertex type with a degree 4 partner.
    SingleVertex,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CaseSpec {
    pub id: String,
    pub group: CaseGroup,
    pub vertices: Vec<VertexType>,
    /// Angles kept as free parameters; 1/f is always free as well.
    pub free: Vec<Angle>,
}

impl CaseSpec {
    pub fn new(id: &str, group: CaseGroup, free: &[Angle]) -> Result<Self, TilingError> {
        let vertices = id
            .split('+')
            .map(|v| VertexType::parse(v).ok_or_else(|| TilingError::UnknownCase(id.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(CaseSpec {
            id: id.to_string(),
            group,
            vertices,
            free: free.to_vec(),
        })
    }

    /// Free parameters in variable order: the free angles, then 1/f.
    pub fn params(&self) -> Vec<Param> {
        self.free
            .iter()
            .map(|&a| Param::Angle(a))
            .chain([Param::InvF])
            .collect()
    }

    pub fn title(&self) -> String {
        let vs: Vec<String> = self.vertices.iter().map(|v| v.greek()).collect();
        format!("{{{}}}", vs.join(","))
    }

    /// Whether a tiling in this case may contain vertex v: degree 3 vertices
    /// are limited to the case's own, except that with αβδ (or αγδ) the a³
    /// vertices and the one compatible a²b vertex may also occur.
    pub fn admits_vertex(&self, v: &VertexType) -> bool {
        if v.degree() != 3 {
            return true;
        }
        if self.vertices.contains(v) {
            return true;
        }
        if self.group != CaseGroup::Abd {
            return false;
        }
        if v.ab_angles() == 0 {
            return true;
        }
        // αβδ goes with γδ², and αγδ with α²β
        let abd = VertexType([1, 1, 0, 1]);
        let cd2 = VertexType([0, 0, 1, 2]);
        if self.vertices[0] == abd {
            *v == cd2
        } else {
            *v == cd2.mirror()
        }
    }

    /// The case obtained by the symmetry α <-> δ, β <-> γ.
    pub fn mirrored(&self) -> CaseSpec {
        let vertices: Vec<VertexType> = self.vertices.iter().map(|v| v.mirror()).collect();
        let id = vertices
            .iter()
            .map(|v| v.id())
            .collect::<Vec<_>>()
            .join("+");
        CaseSpec {
            id,
            group: self.group,
            vertices,
            free: self.free.iter().map(|a| a.mirror()).collect(),
        }
    }
}

use Angle::{Beta as B, Delta as D, Gamma as G};

const TWO_VERTEX: [&str; 7] = [
    "a2b+b3", "a2b+b2c", "a2b+c3", "a2b+cd2", "bd2+b2c", "bd2+c3", "bd2+bc2",
];

const SINGLE_VERTEX: [(&str, Angle); 28] = [
    ("bc2+a4", G),
    ("bc2+a3d", D),
    ("bc2+a2d2", D),
    ("bc2+ad3", D),
    ("bc2+d4", G),
    ("b3+a4", D),
    ("b3+a3d", D),
    ("b3+a2d2", D),
    ("b3+ad3", D),
    ("b3+d4", G),
    ("a2b+b4", D),
    ("a2b+b3c", D),
    ("a2b+b2c2", D),
    ("a2b+b2d2", D),
    ("a2b+bc3", D),
    ("a2b+bcd2", D),
    ("a2b+c4", D),
    ("a2b+c2d2", D),
    ("a2b+d4", G),
    ("bd2+a4", G),
    ("bd2+a2b2", G),
    ("bd2+a2bc", D),
    ("bd2+a2c2", G),
    ("bd2+b4", G),
    ("bd2+b3c", G),
    ("bd2+b2c2", G),
    ("bd2+bc3", D),
    ("bd2+c4", D),
];

/// All 36 cases: αβδ, the seven pairs of degree 3 vertices, and the 28
/// single degree 3 vertex cases with a degree 4 partner.
pub fn enumerate_cases() -> Vec<CaseSpec> {
    let mut out = vec![CaseSpec::new("abd", CaseGroup::Abd, &[B, D]).unwrap()];
    for id in TWO_VERTEX {
        out.push(CaseSpec::new(id, CaseGroup::TwoVertex, &[D]).unwrap());
    }
    for (id, free) in SINGLE_VERTEX {
        out.push(CaseSpec::new(id, CaseGroup::SingleVertex, &[free]).unwrap());
    }
    out
}

/// Look up a case by id. Besides the 36 listed cases this accepts `acd`, the mirror of `abd`.
pub fn case_by_id(id: &str) -> Result<CaseSpec, TilingError> {
    if id == "acd" {
        return Ok(enumerate_cases()[0].mirrored());
    }
    enumerate_cases()
        .into_iter()
        .find(|c| c.id == id)
        .ok_or_else(|| TilingError::UnknownCase(id.to_string()))
}

/// Each angle as an affine form in the free parameters, from the vertex
/// equations and α + β + γ + δ = 2 + 4/f.
pub fn case_parametrization(case: &CaseSpec) -> Result<[AngleForm; 4], TilingError> {
    let mut rows: Vec<([Q; 4], AngleForm)> = Vec::new();
    for v in &case.vertices {
        let c = v.0.map(|n| Q::from(n as i64));
        rows.push((c, AngleForm::constant(Q::from(2))));
    }
    rows.push((
        [Q::one(); 4],
        AngleForm::constant(Q::from(2)).add(&AngleForm::term(Param::InvF, Q::from(4))),
    ));
    for &a in &case.free {
        let mut c = [Q::zero(); 4];
        c[a.index()] = Q::one();
        rows.push((c, AngleForm::param(Param::Angle(a))));
    }
    if rows.len() != 4 {
        return Err(TilingError::Parametrization(format!(
            "case {} gives {} equations for 4 angles",
            case.id,
            rows.len()
        )));
    }
    // Gauss-Jordan elimination with affine right-hand sides.
    for col in 0..4 {
        let piv = (col..4)
            .find(|&r| !rows[r].0[col].is_zero())
            .ok_or_else(|| {
                TilingError::Parametrization(format!(
                    "case {} has a singular angle system",
                    case.id
                ))
            })?;
        rows.swap(col, piv);
        let p = rows[col].0[col];
        let (c, f) = rows[col].clone();
        let c = c.map(|x| x / p);
        let f = f.scale(Q::one() / p);
        rows[col] = (c, f.clone());
        for r in 0..4 {
            if r == col || rows[r].0[col].is_zero() {
                continue;
            }
            let m = rows[r].0[col];
            for k in 0..4 {
                let v = rows[r].0[k] - m * c[k];
                rows[r].0[k] = v;
            }
            rows[r].1 = rows[r].1.sub(&f.scale(m));
        }
    }
    Ok([
        rows[0].1.clone(),
        rows[1].1.clone(),
        rows[2].1.clone(),
        rows[3].1.clone(),
    ])
}
