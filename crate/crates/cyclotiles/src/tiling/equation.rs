//! The a³b compatibility equation
//! sin(α - γ/2) sin(β/2) = sin(γ/2) sin(δ - β/2)
//! as a trigonometric sum, and its exponential polynomial form.

use super::angle::{to_f64, AngleForm, Param, Q};
use super::TilingError;
use crate::algebra::sparse::{SparsePoly, MAX_VARS};
use crate::algebra::{CyclotomicElement, RootOfUnity};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum TrigKind {
    Sin,
    Cos,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrigTerm {
    pub coef: Q,
    pub kind: TrigKind,
    /// In units of pi.
    pub arg: AngleForm,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TrigExpr {
    pub terms: Vec<TrigTerm>,
}

impl TrigExpr {
    /// Sum like terms after putting each argument in a canonical form: the
    /// first parameter coefficient positive and the constant in [0, 1).
    pub fn normalized(&self) -> TrigExpr {
        let mut acc: BTreeMap<(TrigKind, AngleForm), Q> = BTreeMap::new();
        for t in &self.terms {
            let (mut coef, mut arg) = (t.coef, t.arg.clone());
            let lead = arg.coeffs.values().next().copied().unwrap_or(arg.constant);
            if lead.is_negative() {
                arg = arg.neg();
                if t.kind == TrigKind::Sin {
                    coef = -coef;
                }
            }
            let whole = arg.constant.floor();
            arg.constant -= whole;
            if whole.to_integer().rem_euclid(2) == 1 {
                coef = -coef;
            }
            *acc.entry((t.kind, arg)).or_insert_with(Q::zero) += coef;
        }
        TrigExpr {
            terms: acc
                .into_iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|((kind, arg), coef)| TrigTerm { coef, kind, arg })
                .collect(),
        }
    }

    pub fn eval_f64(&self, values: &BTreeMap<Param, f64>) -> f64 {
        self.terms
            .iter()
            .map(|t| {
                let a = std::f64::consts::PI * t.arg.eval_f64(values);
                to_f64(t.coef)
                    * match t.kind {
                        TrigKind::Sin => a.sin(),
                        TrigKind::Cos => a.cos(),
                    }
            })
            .sum()
    }

    pub fn params(&self) -> Vec<Param> {
        let mut ps: Vec<Param> = self
            .terms
            .iter()
            .flat_map(|t| t.arg.coeffs.keys().copied())
            .collect();
        ps.sort();
        ps.dedup();
        ps
    }
}

impl fmt::Display for TrigExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            let c = t.coef;
            if i > 0 {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            if c.abs() != Q::one() {
                write!(f, "{}", c.abs())?;
            }
            let k = match t.kind {
                TrigKind::Sin => "sin",
                TrigKind::Cos => "cos",
            };
            write!(f, "{}({})", k, t.arg)?;
        }
        Ok(())
    }
}

fn half(a: &AngleForm) -> AngleForm {
    a.scale(Q::new(1, 2))
}

/// Twice the difference of the two sides, expanded into cosines:
/// cos(α-β/2-γ/2) - cos(α+β/2-γ/2) - cos(β/2+γ/2-δ) + cos(δ-β/2+γ/2).
pub fn build_trig_equation(angles: &[AngleForm; 4]) -> TrigExpr {
    let [a, b, c, d] = angles;
    let x1 = a.sub(&half(c));
    let y1 = half(b);
    let x2 = half(c);
    let y2 = d.sub(&half(b));
    let cos = |coef: i64, arg: AngleForm| TrigTerm {
        coef: Q::from(coef),
        kind: TrigKind::Cos,
        arg,
    };
    // 2 sin X sin Y = cos(X - Y) - cos(X + Y)
    TrigExpr {
        terms: vec![
            cos(1, x1.sub(&y1)),
            cos(-1, x1.add(&y1)),
            cos(-1, x2.sub(&y2)),
            cos(1, x2.add(&y2)),
        ],
    }
    .normalized()
}

/// Variable i of the polynomial is exp(i * pi * scale * param).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Substitution {
    pub param: Param,
    pub scale: Q,
}

impl fmt::Display for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // exp(i s theta) with s in units of pi for 1/f
        let s = self.scale;
        let (n, d) = (*s.numer(), *s.denom());
        match self.param {
            Param::Angle(a) => match (n, d) {
                (1, 1) => write!(f, "e^(i{})", a.greek()),
                (n, 1) => write!(f, "e^({}i{})", n, a.greek()),
                (1, d) => write!(f, "e^(i{}/{})", a.greek(), d),
                (n, d) => write!(f, "e^({}i{}/{})", n, a.greek(), d),
            },
            Param::InvF => match d {
                1 => write!(f, "e^({}iπ/f)", n),
                d => write!(f, "e^({}iπ/({}f))", n, d),
            },
        }
    }
}

fn gcd_q(a: Q, b: Q) -> Q {
    let d = num_integer::lcm(*a.denom(), *b.denom());
    let na = *a.numer() * (d / *a.denom());
    let nb = *b.numer() * (d / *b.denom());
    Q::new(na.gcd(&nb), d)
}

/// The smallest positive scale per parameter that makes all exponents integral:
/// the gcd of all differences of the exponents ±(coefficient of the parameter).
pub fn minimal_scalings(
    expr: &TrigExpr,
    params: &[Param],
) -> Result<Vec<Substitution>, TilingError> {
    params
        .iter()
        .map(|&p| {
            let mut exps: Vec<Q> = Vec::new();
            for t in &expr.terms {
                let c = t.arg.coeff(p);
                exps.push(c);
                exps.push(-c);
            }
            let g = exps.iter().fold(Q::zero(), |g, e| gcd_q(g, e - exps[0]));
            if g.is_zero() {
                return Err(TilingError::Exponentialize(format!(
                    "parameter {} does not occur",
                    p
                )));
            }
            Ok(Substitution { param: p, scale: g })
        })
        .collect()
}

fn q_to_big(x: Q) -> BigRational {
    BigRational::new(BigInt::from(*x.numer()), BigInt::from(*x.denom()))
}

/// Rewrite every sine and cosine by exponentials in the given variables and
/// clear the common monomial. Fails if some exponent is not an integer.
pub fn exponentialize_with(
    expr: &TrigExpr,
    subs: &[Substitution],
) -> Result<SparsePoly, TilingError> {
    let k = subs.len();
    if k == 0 || k > MAX_VARS {
        return Err(TilingError::Exponentialize(format!("{} variables", k)));
    }
    for p in expr.params() {
        if !subs.iter().any(|s| s.param == p) {
            return Err(TilingError::Exponentialize(format!(
                "no variable for parameter {}",
                p
            )));
        }
    }
    // (rational exponent vector, coefficient) for each exponential
    let mut raw: Vec<(Vec<Q>, CyclotomicElement)> = Vec::new();
    let minus_i_half =
        CyclotomicElement::zeta_pow(4, 3).scale(&BigRational::new(1.into(), 2.into()));
    for t in &expr.terms {
        for sign in [1i64, -1] {
            let arg = t.arg.scale(Q::from(sign));
            let e: Vec<Q> = subs.iter().map(|s| arg.coeff(s.param) / s.scale).collect();
            let z = RootOfUnity::from_half_turns(arg.constant).to_element();
            let c = match t.kind {
                TrigKind::Cos => z.scale(&q_to_big(t.coef / 2)),
                TrigKind::Sin => z
                    .mul(&minus_i_half)
                    .scale(&q_to_big(t.coef * Q::from(sign))),
            };
            raw.push((e, c));
        }
    }
    let mins: Vec<Q> = (0..k)
        .map(|i| raw.iter().map(|r| r.0[i]).min().unwrap())
        .collect();
    let mut out = SparsePoly::zero(k);
    for (e, c) in raw {
        let mut ex = [0i64; MAX_VARS];
        for i in 0..k {
            let v = e[i] - mins[i];
            if !v.is_integer() {
                return Err(TilingError::Exponentialize(format!(
                    "exponent {} of {} is not an integer",
                    v, subs[i].param
                )));
            }
            ex[i] = v.to_integer();
        }
        out.add_term(ex, &c);
    }
    let (_, out) = out.strip_monomial();
    Ok(out)
}

/// Exponential form with the minimal scalings; also returns the substitutions.
pub fn exponentialize(
    expr: &TrigExpr,
    params: &[Param],
) -> Result<(SparsePoly, Vec<Substitution>), TilingError> {
    let subs = minimal_scalings(expr, params)?;
    Ok((exponentialize_with(expr, &subs)?, subs))
}

/// Exact test of the compatibility equation at rational angles.
pub fn equation_holds(angles: &[Q; 4]) -> bool {
    // (2i)^2 sin(X) sin(Y) = (e^{iX} - e^{-iX})(e^{iY} - e^{-iY})
    let diff = |x: Q| {
        let z = RootOfUnity::from_half_turns(x);
        z.to_element().sub(&z.inv().to_element())
    };
    let h = Q::new(1, 2);
    let [a, b, c, d] = *angles;
    let lhs = diff(a - c * h).mul(&diff(b * h));
    let rhs = diff(c * h).mul(&diff(d - b * h));
    lhs.sub(&rhs).is_zero()
}

/// Left side minus right side in floating point.
pub fn equation_residual(angles: &[f64; 4]) -> f64 {
    let pi = std::f64::consts::PI;
    let [a, b, c, d] = angles.map(|x| x * pi);
    (a - c / 2.0).sin() * (b / 2.0).sin() - (c / 2.0).sin() * (d - b / 2.0).sin()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_polynomial;
    use crate::tiling::angle::{q, Angle};
    use crate::tiling::cases::{case_by_id, case_parametrization};

    fn expr_for(id: &str) -> (TrigExpr, Vec<Param>) {
        let c = case_by_id(id).unwrap();
        (
            build_trig_equation(&case_parametrization(&c).unwrap()),
            c.params(),
        )
    }

    #[test]
    fn b3_a4_trig_form_matches_the_hand_expansion() {
        let (e, _) = expr_for("b3+a4");
        let pi = std::f64::consts::PI;
        // 2sin(1/4+δ/2-2/f) - 2cos(5/12+δ/2-2/f) + 2cos(1/12+δ/2+2/f) + 2cos(1/4+3δ/2-2/f)
        let hand = |d: f64, t: f64| {
            2.0 * (pi * (0.25 + d / 2.0 - 2.0 * t)).sin()
                - 2.0 * (pi * (5.0 / 12.0 + d / 2.0 - 2.0 * t)).cos()
                + 2.0 * (pi * (1.0 / 12.0 + d / 2.0 + 2.0 * t)).cos()
                + 2.0 * (pi * (0.25 + 1.5 * d - 2.0 * t)).cos()
        };
        let mut ratio: Option<f64> = None;
        for (d, t) in [(0.3, 0.1), (0.71, 0.02), (1.3, 0.15), (0.05, 0.11)] {
            let mut v = BTreeMap::new();
            v.insert(Param::Angle(Angle::Delta), d);
            v.insert(Param::InvF, t);
            let r = e.eval_f64(&v) / hand(d, t);
            if let Some(r0) = ratio {
                assert!((r - r0).abs() < 1e-9);
            }
            ratio = Some(r);
        }
    }

    #[test]
    fn minimal_scalings_and_polynomials() {
        let (e, ps) = expr_for("b3+a4");
        let (p, subs) = exponentialize(&e, &ps).unwrap();
        assert_eq!(subs[0].scale, q(1, 1));
        assert_eq!(subs[1].scale, q(4, 1));
        let printed = parse_polynomial(
            "zeta(12)^4*x^3 + zeta(12)^3*x^2*y - (zeta(12)^5 - zeta(12))*x^2 + (zeta(12)^4-1)*x*y + zeta(12)^2*x + zeta(12)*y",
            2,
        )
        .unwrap();
        assert_eq!(p.monic(), printed.monic());

        let (e, ps) = expr_for("abd");
        let (p, subs) = exponentialize(&e, &ps).unwrap();
        assert_eq!(
            subs.iter().map(|s| s.scale).collect::<Vec<_>>(),
            vec![q(1, 1), q(2, 1), q(4, 1)]
        );
        let printed = parse_polynomial("x^3*y*z-x^2*y*z-x^2*z+x*y*z+x^2-x*y-x+1", 3).unwrap();
        assert_eq!(p.monic(), printed.monic());
    }

    #[test]
    fn non_integral_scalings_are_rejected() {
        let (e, ps) = expr_for("b3+a4");
        let subs = vec![
            Substitution {
                param: ps[0],
                scale: q(2, 1),
            },
            Substitution {
                param: ps[1],
                scale: q(4, 1),
            },
        ];
        assert!(exponentialize_with(&e, &subs).is_err());
    }

    #[test]
    fn exact_equation_check() {
        assert!(equation_holds(&[q(1, 2), q(2, 3), q(4, 3), q(1, 6)]));
        assert!(!equation_holds(&[q(1, 2), q(2, 3), q(1, 3), q(5, 6)]));
    }
}
