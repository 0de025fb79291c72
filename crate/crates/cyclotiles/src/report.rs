//! Run reports and their JSON, CSV and Markdown forms.

use crate::algebra::sparse::VAR_NAMES;
use crate::combinatorics::Balance;
use crate::solver::companion_resultants;
use crate::tiling::angle::{common_denominator, mirror_angles, render_angles, Q};
use crate::tiling::cases::{CaseGroup, CaseSpec};
use crate::tiling::merge::{merge_into_families, Classification, Provenance, Tile};
use crate::tiling::solve::CaseOutcome;
use crate::tiling::TilingError;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub cases: Vec<CaseRecord>,
    pub sporadic: Vec<TileRecord>,
    pub families: Vec<FamilyRecord>,
    pub discrepancies: Vec<DiscrepancyRecord>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CaseRecord {
    pub id: String,
    pub vertices: String,
    pub parametrization: Vec<String>,
    pub substitutions: Vec<String>,
    pub polynomial: String,
    /// Square-free parts of the companion resultants, as (companion, polynomial).
    pub resultants: Vec<(String, String)>,
    pub solutions: Vec<SolutionRecord>,
    pub families: Vec<CaseFamilyRecord>,
    pub dismissed: Vec<SolutionRecord>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionRecord {
    pub angles: [i64; 5],
    pub f: i64,
    pub source: String,
    pub branches: Vec<String>,
    /// Classification verdict, or the failed conditions for dismissed ones.
    pub status: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseFamilyRecord {
    pub angles: String,
    pub admissible: Vec<i64>,
    pub source: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TileRecord {
    pub angles: [i64; 5],
    pub f: i64,
    pub a: Option<f64>,
    pub b: Option<f64>,
    pub spectrum: String,
    pub provenance: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyRecord {
    pub angles: String,
    pub forms: Vec<String>,
    pub condition: String,
    pub threshold: i64,
    pub samples_verified: usize,
    pub spectrum: String,
    pub members: Vec<String>,
    pub provenance: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiscrepancyRecord {
    pub kind: String,
    pub detail: String,
}

pub fn balance_text(b: &Balance) -> String {
    match b {
        Balance::Feasible(s) => s.to_string(),
        Balance::Certificate(w) => format!("no tiling: counting certificate w={:?}", w),
        Balance::Exhausted => "no tiling: exhaustive counting".into(),
        Balance::Unknown => "undecided: counting budget exceeded".into(),
    }
}

fn provenance_text(p: &Provenance) -> String {
    let mut s = p.case.clone();
    if p.mirrored {
        s.push_str(" (mirrored)");
    }
    if let Some(f) = &p.family {
        let _ = write!(s, " via {}", f);
    }
    let _ = write!(s, " at {}", p.source);
    if !p.branches.is_empty() {
        let _ = write!(s, " [{}]", p.branches.join(" | "));
    }
    s
}

fn same_tile(a: &[Q; 4], b: &[Q; 4]) -> bool {
    a == b || *a == mirror_angles(b)
}

/// Final verdict for one case solution.
pub fn status_of(cl: &Classification, angles: &[Q; 4], f: i64) -> String {
    let find = |ts: &[Tile]| {
        ts.iter()
            .find(|t| t.f == f && same_tile(&t.angles, angles))
            .map(|t| t.balance.clone())
    };
    if let Some(fam) = cl
        .families
        .iter()
        .find(|k| k.admissible.contains(&f) && same_tile(&k.at(f), angles))
    {
        return format!("family {}", fam.render);
    }
    if find(&cl.sporadic).is_some() {
        return "sporadic".into();
    }
    match find(&cl.no_tiling) {
        Some(b) => balance_text(&b),
        None => "unclassified".into(),
    }
}

fn case_record(
    case: &CaseSpec,
    outcome: &Result<CaseOutcome, TilingError>,
    cl: &Classification,
    resultants: bool,
) -> CaseRecord {
    let mut rec = CaseRecord {
        id: case.id.clone(),
        vertices: case.title(),
        parametrization: vec![],
        substitutions: vec![],
        polynomial: String::new(),
        resultants: vec![],
        solutions: vec![],
        families: vec![],
        dismissed: vec![],
        error: None,
    };
    let out = match outcome {
        Ok(o) => o,
        Err(e) => {
            rec.error = Some(e.to_string());
            return rec;
        }
    };
    rec.parametrization = out.parametrization.iter().map(|a| a.to_string()).collect();
    rec.substitutions = out
        .substitutions
        .iter()
        .enumerate()
        .map(|(i, s)| format!("{} = {}", VAR_NAMES[i], s))
        .collect();
    rec.polynomial = out.polynomial.to_string();
    if resultants {
        match companion_resultants(&out.polynomial) {
            Ok(rs) => rec.resultants = rs.into_iter().map(|(l, p)| (l, p.to_string())).collect(),
            Err(e) => rec.error = Some(format!("resultants: {}", e)),
        }
    }
    for c in &out.candidates {
        let r = SolutionRecord {
            angles: common_denominator(&c.angles),
            f: c.f,
            source: c.source.clone(),
            branches: c.branches.clone(),
            status: if c.passes() {
                status_of(cl, &c.angles, c.f)
            } else {
                c.violations
                    .iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join("; ")
            },
        };
        if c.passes() {
            rec.solutions.push(r);
        } else {
            rec.dismissed.push(r);
        }
    }
    rec.families = out
        .families
        .iter()
        .map(|f| CaseFamilyRecord {
            angles: crate::tiling::angle::render_family(&f.angles),
            admissible: f.admissible.clone(),
            source: f.source.clone(),
        })
        .collect();
    rec
}

fn tile_record(t: &Tile) -> TileRecord {
    TileRecord {
        angles: common_denominator(&t.angles),
        f: t.f,
        a: t.geometry.as_ref().map(|g| g.a),
        b: t.geometry.as_ref().map(|g| g.b),
        spectrum: balance_text(&t.balance),
        provenance: t.provenance.iter().map(provenance_text).collect(),
    }
}

/// Merge the case outcomes and assemble the report. Failed cases are recorded, not fatal.
pub fn build_report(
    results: &[(CaseSpec, Result<CaseOutcome, TilingError>)],
    f_max: i64,
    resultants: bool,
) -> Result<RunReport, TilingError> {
    let ok: Vec<CaseOutcome> = results
        .iter()
        .filter_map(|(_, r)| r.as_ref().ok().cloned())
        .collect();
    let cl = merge_into_families(&ok, f_max)?;
    let cases: Vec<CaseRecord> = results
        .par_iter()
        .map(|(c, r)| case_record(c, r, &cl, resultants))
        .collect();
    let mut discrepancies: Vec<DiscrepancyRecord> = Vec::new();
    if results.iter().any(|(c, _)| c.group == CaseGroup::Abd) {
        discrepancies.push(DiscrepancyRecord {
            kind: "elimination-variable".into(),
            detail:
                "abd: resultants eliminate x against each companion, leaving polynomials in y and z"
                    .into(),
        });
    }
    for (c, r) in results {
        if let Err(e) = r {
            discrepancies.push(DiscrepancyRecord {
                kind: "case-failure".into(),
                detail: format!("{}: {}", c.id, e),
            });
        }
    }
    discrepancies.extend(cl.discrepancies.iter().map(|d| DiscrepancyRecord {
        kind: d.kind.clone(),
        detail: d.detail.clone(),
    }));
    let families = cl
        .families
        .iter()
        .map(|k| FamilyRecord {
            angles: k.render.clone(),
            forms: k.angles.iter().map(|a| a.to_string()).collect(),
            condition: k.condition.clone(),
            threshold: k.threshold,
            samples_verified: k.samples_verified,
            spectrum: format!("f={}: {}", k.admissible[0], balance_text(&k.witness)),
            members: k
                .members
                .iter()
                .map(|(a, f, case)| format!("{} f={} ({})", render_angles(a), f, case))
                .collect(),
            provenance: k.provenance.iter().map(provenance_text).collect(),
        })
        .collect();
    Ok(RunReport {
        cases,
        sporadic: cl.sporadic.iter().map(tile_record).collect(),
        families,
        discrepancies,
    })
}

pub fn render_array(a: &[i64; 5]) -> String {
    format!("({},{},{},{})/{}", a[0], a[1], a[2], a[3], a[4])
}

/// One flat row per reported item, shared by the CSV and Markdown forms.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Row {
    pub section: String,
    pub case: String,
    pub angles: String,
    pub f: String,
    pub status: String,
    pub detail: String,
}

impl RunReport {
    pub fn rows(&self) -> Vec<Row> {
        let mut rows = Vec::new();
        for c in &self.cases {
            if let Some(e) = &c.error {
                rows.push(Row {
                    section: "case-error".into(),
                    case: c.id.clone(),
                    angles: String::new(),
                    f: String::new(),
                    status: "error".into(),
                    detail: e.clone(),
                });
            }
            for (sec, list) in [
                ("case-solution", &c.solutions),
                ("case-dismissed", &c.dismissed),
            ] {
                for s in list {
                    rows.push(Row {
                        section: sec.into(),
                        case: c.id.clone(),
                        angles: render_array(&s.angles),
                        f: s.f.to_string(),
                        status: s.status.clone(),
                        detail: format!("{} [{}]", s.source, s.branches.join(" | ")),
                    });
                }
            }
            for k in &c.families {
                rows.push(Row {
                    section: "case-family".into(),
                    case: c.id.clone(),
                    angles: k.angles.clone(),
                    f: format!("{} values", k.admissible.len()),
                    status: String::new(),
                    detail: k.source.clone(),
                });
            }
        }
        for t in &self.sporadic {
            let ab = match (t.a, t.b) {
                (Some(a), Some(b)) => format!("a={:.6} b={:.6}", a, b),
                _ => "no realization".into(),
            };
            rows.push(Row {
                section: "sporadic".into(),
                case: String::new(),
                angles: render_array(&t.angles),
                f: t.f.to_string(),
                status: t.spectrum.clone(),
                detail: format!("{}; {}", ab, t.provenance.join("; ")),
            });
        }
        for k in &self.families {
            rows.push(Row {
                section: "family".into(),
                case: String::new(),
                angles: k.angles.clone(),
                f: k.condition.clone(),
                status: k.spectrum.clone(),
                detail: k.provenance.join("; "),
            });
        }
        for d in &self.discrepancies {
            rows.push(Row {
                section: "discrepancy".into(),
                case: String::new(),
                angles: String::new(),
                f: String::new(),
                status: d.kind.clone(),
                detail: d.detail.clone(),
            });
        }
        rows
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        for r in self.rows() {
            w.serialize(r).expect("csv row");
        }
        String::from_utf8(w.into_inner().expect("csv flush")).expect("utf8")
    }

    pub fn to_markdown(&self) -> String {
        let mut s = String::new();
        let esc = |x: &str| x.replace('|', "\\|");
        let mut section = String::new();
        for r in self.rows() {
            if r.section != section {
                section = r.section.clone();
                let _ = write!(
                    s,
                    "\n## {}\n\n| case | angles | f | status | detail |\n|---|---|---|---|---|\n",
                    section
                );
            }
            let _ = writeln!(
                s,
                "| {} | {} | {} | {} | {} |",
                esc(&r.case),
                esc(&r.angles),
                esc(&r.f),
                esc(&r.status),
                esc(&r.detail)
            );
        }
        s.trim_start().to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tiling::cases::case_by_id;
    use crate::tiling::solve::solve_case;

    fn report(id: &str) -> RunReport {
        let c = case_by_id(id).unwrap();
        let r = solve_case(&c, 40);
        build_report(&[(c, r)], 40, true).unwrap()
    }

    #[test]
    fn json_round_trip() {
        let r = report("bd2+bc2");
        let back: RunReport = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(back, r);
        assert_eq!(r.sporadic.len(), 1);
        assert_eq!(r.sporadic[0].angles, [1, 4, 2, 2, 4]);
    }

    #[test]
    fn emitters_agree() {
        let r = report("b3+a4");
        let rows = r.rows();
        let text = r.to_csv();
        let mut rd = csv::Reader::from_reader(text.as_bytes());
        let parsed: Vec<Row> = rd.deserialize().map(|x| x.unwrap()).collect();
        assert_eq!(parsed, rows);
        let md = r.to_markdown();
        for row in &rows {
            assert!(md.contains(&row.angles.replace('|', "\\|")));
        }
        let dismissed = rows.iter().find(|x| x.angles == "(3,4,6,2)/6").unwrap();
        assert!(dismissed.status.starts_with("no tiling"), "{:?}", dismissed);
    }
}
