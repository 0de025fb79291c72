//! Merging of per-case results into the classification.

use super::angle::{mirror_angles, render_angles, render_family, AngleForm, Q};
use super::filter::verify_exact;
use super::solve::{specialize, CaseOutcome};
use super::TilingError;
use crate::combinatorics::{
    balance_feasible, balance_with_required, enumerate_vertex_types, Balance,
};
use crate::geometry::{solve_edge_lengths, GeometryError, QuadGeometry};
use serde::Serialize;
use std::collections::BTreeMap;

/// Number of consecutive admissible values a family needs to count as infinite.
const MIN_TAIL: usize = 5;
/// Family members verified exactly before a family is emitted.
const SAMPLES: usize = 20;
/// Beyond this many admissible values a non-persistent family is summarized, not listed.
const LIST_LIMIT: usize = 10;

/// Where a solution came from.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Provenance {
    pub case: String,
    pub source: String,
    pub branches: Vec<String>,
    /// Produced with α↔δ, β↔γ swapped relative to the reported orientation.
    pub mirrored: bool,
    /// Specialization of a family found by the case, if any.
    pub family: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Tile {
    pub angles: [Q; 4],
    pub f: i64,
    pub provenance: Vec<Provenance>,
    pub balance: Balance,
    pub geometry: Option<QuadGeometry>,
    pub geometry_error: Option<String>,
}

impl Tile {
    pub fn label(&self) -> String {
        format!("{} f={}", render_angles(&self.angles), self.f)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FamilyClass {
    pub angles: [AngleForm; 4],
    pub render: String,
    /// Smallest f from which every even f up to the horizon is admissible.
    pub threshold: i64,
    pub admissible: Vec<i64>,
    pub condition: String,
    pub provenance: Vec<Provenance>,
    /// Concrete case solutions absorbed into the family, as (angles, f).
    pub members: Vec<([Q; 4], i64, String)>,
    pub samples_verified: usize,
    /// Witness at the smallest admissible f.
    pub witness: Balance,
}

impl FamilyClass {
    pub fn at(&self, f: i64) -> [Q; 4] {
        specialize(&self.angles, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Discrepancy {
    pub kind: String,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Classification {
    pub sporadic: Vec<Tile>,
    pub families: Vec<FamilyClass>,
    /// Good quadrilaterals for which counting rules out a tiling.
    pub no_tiling: Vec<Tile>,
    pub discrepancies: Vec<Discrepancy>,
}

fn canonical(angles: &[Q; 4]) -> [Q; 4] {
    (*angles).min(mirror_angles(angles))
}

fn tail_threshold(set: &[i64], f_max: i64) -> Option<i64> {
    let top = f_max - f_max % 2;
    let mut t = top;
    if !set.contains(&t) {
        return None;
    }
    while t - 2 >= 6 && set.contains(&(t - 2)) {
        t -= 2;
    }
    (((top - t) / 2 + 1) as usize >= MIN_TAIL).then_some(t)
}

fn condition(threshold: i64, admissible: &[i64]) -> String {
    let extra: Vec<String> = admissible
        .iter()
        .filter(|&&f| f < threshold)
        .map(|f| f.to_string())
        .collect();
    if extra.is_empty() {
        format!("all even f >= {}", threshold)
    } else {
        format!(
            "all even f >= {}, and f in {{{}}}",
            threshold,
            extra.join(",")
        )
    }
}

struct Entry {
    angles: [Q; 4],
    f: i64,
    prov: Provenance,
}

fn restricted_balance(outcome: &CaseOutcome, angles: &[Q; 4], f: i64) -> Balance {
    let types: Vec<_> = enumerate_vertex_types(angles, None)
        .into_iter()
        .filter(|v| outcome.case.admits_vertex(v))
        .collect();
    balance_with_required(&types, f, &outcome.case.vertices)
}

/// Fold the per-case outputs into sporadic tiles, families and dismissals.
pub fn merge_into_families(
    outcomes: &[CaseOutcome],
    f_max: i64,
) -> Result<Classification, TilingError> {
    let mut families: Vec<FamilyClass> = Vec::new();
    let mut entries: Vec<Entry> = Vec::new();
    let mut discrepancies = Vec::new();

    for out in outcomes {
        for note in &out.continua {
            discrepancies.push(Discrepancy {
                kind: "continuum".into(),
                detail: format!("{}: {}", out.case.id, note),
            });
        }
        for c in out.accepted() {
            entries.push(Entry {
                angles: c.angles,
                f: c.f,
                prov: Provenance {
                    case: c.case.clone(),
                    source: c.source.clone(),
                    branches: c.branches.clone(),
                    mirrored: false,
                    family: None,
                },
            });
        }
        for fam in &out.families {
            let render = render_family(&fam.angles);
            let feasible: Vec<i64> = fam
                .admissible
                .iter()
                .copied()
                .filter(|&f| balance_feasible(&fam.at(f), f).feasible() == Some(true))
                .collect();
            let prov = Provenance {
                case: fam.case.clone(),
                source: fam.source.clone(),
                branches: fam.branches.clone(),
                mirrored: false,
                family: Some(render.clone()),
            };
            if let Some(threshold) = tail_threshold(&feasible, f_max) {
                let mirror = [3, 2, 1, 0].map(|i| fam.angles[i].clone());
                if let Some(known) = families
                    .iter_mut()
                    .find(|k| k.angles == fam.angles || k.angles == mirror)
                {
                    known.provenance.push(Provenance {
                        mirrored: known.angles != fam.angles,
                        ..prov
                    });
                    continue;
                }
                let samples = fam
                    .admissible
                    .iter()
                    .take(SAMPLES)
                    .filter(|&&f| verify_exact(&fam.at(f)))
                    .count();
                if samples < SAMPLES.min(fam.admissible.len()) {
                    return Err(TilingError::Inconsistent(format!(
                        "family {} from {} fails the equation at a sample",
                        render, fam.case
                    )));
                }
                let f0 = feasible[0];
                families.push(FamilyClass {
                    angles: fam.angles.clone(),
                    render,
                    threshold,
                    condition: condition(threshold, &feasible),
                    admissible: feasible,
                    provenance: vec![prov],
                    members: vec![],
                    samples_verified: samples,
                    witness: balance_feasible(&fam.at(f0), f0),
                });
                continue;
            }
            let listed: Vec<i64> = if fam.admissible.len() <= LIST_LIMIT {
                fam.admissible.clone()
            } else {
                let restricted: Vec<String> = feasible
                    .iter()
                    .filter(|&&f| restricted_balance(out, &fam.at(f), f).feasible() == Some(true))
                    .map(|f| f.to_string())
                    .collect();
                discrepancies.push(Discrepancy {
                    kind: "partial-family".into(),
                    detail: format!(
                        "{}: {} passes every filter for {} values of f up to {} (from f={}), but counting allows a tiling only at f in {{{}}} ({{{}}} under the case's own vertex constraints); those members are listed as sporadic",
                        fam.case,
                        render,
                        fam.admissible.len(),
                        f_max,
                        fam.admissible[0],
                        feasible.iter().map(|f| f.to_string()).collect::<Vec<_>>().join(","),
                        restricted.join(","),
                    ),
                });
                feasible.clone()
            };
            for f in listed {
                entries.push(Entry {
                    angles: fam.at(f),
                    f,
                    prov: prov.clone(),
                });
            }
        }
    }

    let mut tiles: BTreeMap<(i64, [Q; 4]), ([Q; 4], Vec<Provenance>)> = BTreeMap::new();
    'entries: for e in entries {
        for fam in families.iter_mut() {
            if !fam.admissible.contains(&e.f) {
                continue;
            }
            let m = fam.at(e.f);
            if m == e.angles || m == mirror_angles(&e.angles) {
                fam.members.push((m, e.f, e.prov.case.clone()));
                continue 'entries;
            }
        }
        let slot = tiles
            .entry((e.f, canonical(&e.angles)))
            .or_insert_with(|| (e.angles, Vec::new()));
        let mirrored = slot.0 != e.angles;
        slot.1.push(Provenance { mirrored, ..e.prov });
    }
    for fam in families.iter_mut() {
        fam.members.sort();
        fam.members.dedup();
    }

    let mut sporadic = Vec::new();
    let mut no_tiling = Vec::new();
    for ((f, _), (angles, provenance)) in tiles {
        if !verify_exact(&angles) {
            return Err(TilingError::Inconsistent(format!(
                "{} f={} fails the equation",
                render_angles(&angles),
                f
            )));
        }
        let balance = balance_feasible(&angles, f);
        let (geometry, geometry_error) = match solve_edge_lengths(&angles) {
            Ok(g) => (Some(g), None),
            Err(e @ GeometryError::Incompatible(_)) => {
                return Err(TilingError::Inconsistent(format!(
                    "{}: {}",
                    render_angles(&angles),
                    e
                )))
            }
            Err(e) => (None, Some(e.to_string())),
        };
        let tile = Tile {
            angles,
            f,
            provenance,
            balance,
            geometry,
            geometry_error,
        };
        match tile.balance.feasible() {
            Some(true) => sporadic.push(tile),
            Some(false) => no_tiling.push(tile),
            None => {
                discrepancies.push(Discrepancy {
                    kind: "balance-undecided".into(),
                    detail: format!("{}: counting search exceeded its budget", tile.label()),
                });
                no_tiling.push(tile);
            }
        }
    }
    for t in &sporadic {
        if let Some(g) = &t.geometry {
            if !g.alternatives.is_empty() {
                discrepancies.push(Discrepancy {
                    kind: "multiple-realizations".into(),
                    detail: format!(
                        "{}: simple realizations (a,b) = ({:.6},{:.6}) and {}",
                        t.label(),
                        g.a,
                        g.b,
                        g.alternatives
                            .iter()
                            .map(|(a, b)| format!("({:.6},{:.6})", a, b))
                            .collect::<Vec<_>>()
                            .join(", ")
                    ),
                });
            }
        }
        if let Some(e) = &t.geometry_error {
            discrepancies.push(Discrepancy {
                kind: "no-realization".into(),
                detail: format!("{}: {}", t.label(), e),
            });
        }
    }
    families.sort_by_key(|f| (f.threshold, f.render.clone()));
    Ok(Classification {
        sporadic,
        families,
        no_tiling,
        discrepancies,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tail_detection() {
        let all: Vec<i64> = (5..=100).map(|k| 2 * k).collect();
        assert_eq!(tail_threshold(&all, 100), Some(10));
        assert_eq!(tail_threshold(&[24, 36, 60, 84], 100), None);
        let holes: Vec<i64> = all.iter().copied().filter(|&f| f != 12).collect();
        assert_eq!(tail_threshold(&holes, 100), Some(14));
        assert_eq!(
            condition(14, &[6, 8, 14, 16]),
            "all even f >= 14, and f in {6,8}"
        );
    }
}
