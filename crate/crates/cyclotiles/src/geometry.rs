//! Numerical realization of a spherical a³b-quadrilateral with given angles.
//!
//! The boundary is walked A -> B -> C -> D -> A with edges a, a, a, b and left
//! turns of pi minus the interior angle. Closure at A gives two equations in (a, b).

use crate::tiling::angle::{to_f64, Q};
use crate::tiling::equation::equation_residual;
use serde::Serialize;
use std::f64::consts::PI;
use thiserror::Error;

type V3 = [f64; 3];

fn dot(u: V3, v: V3) -> f64 {
    u[0] * v[0] + u[1] * v[1] + u[2] * v[2]
}

fn cross(u: V3, v: V3) -> V3 {
    [
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    ]
}

fn lin(a: f64, u: V3, b: f64, v: V3) -> V3 {
    [
        a * u[0] + b * v[0],
        a * u[1] + b * v[1],
        a * u[2] + b * v[2],
    ]
}

fn norm(u: V3) -> f64 {
    dot(u, u).sqrt()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuadGeometry {
    /// Angles in units of pi.
    pub angles: [f64; 4],
    /// Edge lengths in units of pi.
    pub a: f64,
    pub b: f64,
    pub convex: bool,
    pub simple: bool,
    /// Other simple realizations, if any.
    pub alternatives: Vec<(f64, f64)>,
}

#[derive(Debug, Clone, Error, PartialEq)]
pub enum GeometryError {
    #[error("angles admit no simple realization")]
    NoSolution,
    #[error("angles do not satisfy the compatibility equation (residual {0:e})")]
    Incompatible(f64),
}

/// Vertices and edge start tangents of the walk; angles and lengths in radians.
struct Walk {
    vertices: [V3; 5],
    tangents: [V3; 4],
}

fn walk(angles: &[f64; 4], a: f64, b: f64) -> Walk {
    let mut p = [1.0, 0.0, 0.0];
    let mut t = [0.0, 1.0, 0.0];
    let lengths = [a, a, a, b];
    let mut vertices = [[0.0; 3]; 5];
    let mut tangents = [[0.0; 3]; 4];
    vertices[0] = p;
    for i in 0..4 {
        tangents[i] = t;
        let (s, c) = lengths[i].sin_cos();
        let np = lin(c, p, s, t);
        let nt = lin(-s, p, c, t);
        p = np;
        t = nt;
        vertices[i + 1] = p;
        if i < 3 {
            // interior angle at B, C, D
            let turn = PI - angles[i + 1];
            let n = cross(p, t);
            t = lin(turn.cos(), t, turn.sin(), n);
        }
    }
    Walk { vertices, tangents }
}

/// Closure residual: the end point expressed in the frame at A.
fn closure(angles: &[f64; 4], a: f64, b: f64) -> [f64; 2] {
    let w = walk(angles, a, b);
    let e = w.vertices[4];
    [e[1], e[2]]
}

/// Interior angle at A after closing, in radians.
fn angle_at_a(angles: &[f64; 4], a: f64, b: f64) -> f64 {
    let w = walk(angles, a, b);
    let (s, c) = b.sin_cos();
    let p = w.vertices[3];
    let t = w.tangents[3];
    let arrive = lin(-s, p, c, t);
    let start = [1.0, 0.0, 0.0];
    let e2 = [0.0, 1.0, 0.0];
    let turn = dot(cross(start, arrive), e2).atan2(dot(arrive, e2));
    (PI - turn).rem_euclid(2.0 * PI)
}

fn newton(angles: &[f64; 4], mut a: f64, mut b: f64) -> Option<(f64, f64)> {
    const H: f64 = 1e-7;
    for _ in 0..60 {
        let r = closure(angles, a, b);
        if r[0].abs() + r[1].abs() < 1e-14 {
            return Some((a, b));
        }
        let ra = closure(angles, a + H, b);
        let rb = closure(angles, a, b + H);
        let j = [
            [(ra[0] - r[0]) / H, (rb[0] - r[0]) / H],
            [(ra[1] - r[1]) / H, (rb[1] - r[1]) / H],
        ];
        let det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
        if det.abs() < 1e-14 {
            return None;
        }
        let da = (j[1][1] * r[0] - j[0][1] * r[1]) / det;
        let db = (-j[1][0] * r[0] + j[0][0] * r[1]) / det;
        let mut lambda = 1.0;
        let base = r[0].hypot(r[1]);
        loop {
            let (na, nb) = (a - lambda * da, b - lambda * db);
            let nr = closure(angles, na, nb);
            if nr[0].hypot(nr[1]) < base || lambda < 1e-4 {
                a = na;
                b = nb;
                break;
            }
            lambda /= 2.0;
        }
        if !(a.is_finite() && b.is_finite()) || a.abs() > 10.0 || b.abs() > 10.0 {
            return None;
        }
    }
    let r = closure(angles, a, b);
    (r[0].abs() + r[1].abs() < 1e-12).then_some((a, b))
}

/// Whether the point x on the great circle lies strictly inside the arc from p of length len.
fn on_arc(x: V3, p: V3, t: V3, len: f64) -> bool {
    let phi = dot(x, t).atan2(dot(x, p));
    phi > 1e-9 && phi < len - 1e-9
}

fn arcs_cross(w: &Walk, lengths: &[f64; 4], i: usize, j: usize) -> bool {
    let ni = cross(w.vertices[i], w.tangents[i]);
    let nj = cross(w.vertices[j], w.tangents[j]);
    let d = cross(ni, nj);
    let n = norm(d);
    if n < 1e-12 {
        // same great circle: overlapping arcs count as crossing
        return (0..=20).any(|k| {
            let s = lengths[i] * k as f64 / 20.0;
            let x = lin(s.cos(), w.vertices[i], s.sin(), w.tangents[i]);
            on_arc(x, w.vertices[j], w.tangents[j], lengths[j])
        });
    }
    [1.0, -1.0].iter().any(|&sg| {
        let x = lin(sg / n, d, 0.0, d);
        on_arc(x, w.vertices[i], w.tangents[i], lengths[i])
            && on_arc(x, w.vertices[j], w.tangents[j], lengths[j])
    })
}

fn is_simple(angles: &[f64; 4], a: f64, b: f64) -> bool {
    let w = walk(angles, a, b);
    let lengths = [a, a, a, b];
    !arcs_cross(&w, &lengths, 0, 2) && !arcs_cross(&w, &lengths, 1, 3)
}

/// Edge lengths realizing the angles (all in units of pi).
pub fn solve_edge_lengths(angles: &[Q; 4]) -> Result<QuadGeometry, GeometryError> {
    let af = angles.map(to_f64);
    let res = equation_residual(&af);
    if res.abs() > 1e-10 {
        return Err(GeometryError::Incompatible(res));
    }
    let rad = af.map(|x| x * PI);
    let mut roots: Vec<(f64, f64)> = Vec::new();
    let steps = 50;
    for i in 1..=steps {
        for j in 1..=steps {
            let a0 = PI * i as f64 / steps as f64;
            let b0 = PI * j as f64 / steps as f64;
            let Some((a, b)) = newton(&rad, a0, b0) else {
                continue;
            };
            let (a, b) = (a / PI, b / PI);
            if !(a > 1e-9 && a < 1.0 - 1e-9 && b > 1e-9 && b <= 1.0 + 1e-9) {
                continue;
            }
            if roots
                .iter()
                .any(|&(x, y)| (x - a).abs() < 1e-8 && (y - b).abs() < 1e-8)
            {
                continue;
            }
            roots.push((a, b));
        }
    }
    let mut good: Vec<(f64, f64)> = roots
        .into_iter()
        .filter(|&(a, b)| {
            let alpha = angle_at_a(&rad, a * PI, b * PI);
            (alpha - rad[0]).abs() < 1e-9 && is_simple(&rad, a * PI, b * PI)
        })
        .collect();
    good.sort_by(|x, y| x.partial_cmp(y).unwrap());
    let (&(a, b), rest) = good.split_first().ok_or(GeometryError::NoSolution)?;
    Ok(QuadGeometry {
        angles: af,
        a,
        b,
        convex: af.iter().all(|&x| x <= 1.0),
        simple: true,
        alternatives: rest.to_vec(),
    })
}

/// Reconstructed interior angles (units of pi) and closure error for given edge lengths.
pub fn reconstruct(angles: &[f64; 4], a: f64, b: f64) -> ([f64; 4], f64) {
    let rad = angles.map(|x| x * PI);
    let r = closure(&rad, a * PI, b * PI);
    let alpha = angle_at_a(&rad, a * PI, b * PI) / PI;
    ([alpha, angles[1], angles[2], angles[3]], r[0].hypot(r[1]))
}
