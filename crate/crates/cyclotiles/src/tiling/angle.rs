//! Affine forms in the free parameters of a case. All angles are in units of pi.

use num_rational::Rational64;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

pub type Q = Rational64;

pub fn q(n: i64, d: i64) -> Q {
    Q::new(n, d)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Angle {
    Alpha,
    Beta,
    Gamma,
    Delta,
}

impl Angle {
    pub const ALL: [Angle; 4] = [Angle::Alpha, Angle::Beta, Angle::Gamma, Angle::Delta];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn letter(self) -> char {
        ['a', 'b', 'c', 'd'][self.index()]
    }

    pub fn greek(self) -> char {
        ['α', 'β', 'γ', 'δ'][self.index()]
    }

    /// Image under the tile symmetry alpha <-> delta, beta <-> gamma.
    pub fn mirror(self) -> Angle {
        Angle::ALL[3 - self.index()]
    }
}

/// A free parameter: one of the tile angles, or 1/f.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Param {
    Angle(Angle),
    InvF,
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Param::Angle(a) => write!(f, "{}", a.greek()),
            Param::InvF => write!(f, "1/f"),
        }
    }
}

/// constant + sum of coefficient * parameter.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
pub struct AngleForm {
    pub constant: Q,
    pub coeffs: BTreeMap<Param, Q>,
}

impl AngleForm {
    pub fn constant(c: Q) -> Self {
        AngleForm {
            constant: c,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn param(p: Param) -> Self {
        Self::term(p, Q::one())
    }

    pub fn term(p: Param, c: Q) -> Self {
        let mut f = Self::default();
        if !c.is_zero() {
            f.coeffs.insert(p, c);
        }
        f
    }

    pub fn coeff(&self, p: Param) -> Q {
        self.coeffs.get(&p).copied().unwrap_or_else(Q::zero)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        out.constant += o.constant;
        for (p, c) in &o.coeffs {
            let e = out.coeffs.entry(*p).or_insert_with(Q::zero);
            *e += c;
            if e.is_zero() {
                out.coeffs.remove(p);
            }
        }
        out
    }

    pub fn scale(&self, s: Q) -> Self {
        if s.is_zero() {
            return Self::default();
        }
        AngleForm {
            constant: self.constant * s,
            coeffs: self.coeffs.iter().map(|(p, c)| (*p, c * s)).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(-Q::one())
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn eval(&self, values: &BTreeMap<Param, Q>) -> Q {
        self.coeffs.iter().fold(self.constant, |acc, (p, c)| {
            acc + c * values.get(p).copied().unwrap_or_else(Q::zero)
        })
    }

    pub fn eval_f64(&self, values: &BTreeMap<Param, f64>) -> f64 {
        self.coeffs
            .iter()
            .fold(to_f64(self.constant), |acc, (p, c)| {
                acc + to_f64(*c) * values.get(p).copied().unwrap_or(0.0)
            })
    }

    /// Replace a parameter by an affine form.
    pub fn substitute(&self, p: Param, by: &AngleForm) -> Self {
        let c = self.coeff(p);
        let mut rest = self.clone();
        rest.coeffs.remove(&p);
        rest.add(&by.scale(c))
    }
}

pub fn to_f64(x: Q) -> f64 {
    *x.numer() as f64 / *x.denom() as f64
}

fn fmt_q(f: &mut fmt::Formatter<'_>, c: Q, first: bool, suffix: &str) -> fmt::Result {
    let neg = c.is_negative();
    let a = c.abs();
    if !first {
        write!(f, " {} ", if neg { '-' } else { '+' })?;
    } else if neg {
        write!(f, "-")?;
    }
    if suffix.is_empty() {
        return write!(f, "{}", a);
    }
    match (*a.numer(), *a.denom()) {
        (1, 1) => write!(f, "{}", suffix),
        (n, 1) => write!(f, "{}{}", n, suffix),
        (1, d) => write!(f, "{}/{}", suffix, d),
        (n, d) => write!(f, "{}{}/{}", n, suffix, d),
    }
}

impl fmt::Display for AngleForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        if !self.constant.is_zero() || self.coeffs.is_empty() {
            fmt_q(f, self.constant, true, "")?;
            first = false;
        }
        for (p, c) in &self.coeffs {
            match p {
                Param::Angle(a) => fmt_q(f, *c, first, &a.greek().to_string())?,
                // c * (1/f) prints as c/f
                Param::InvF => {
                    let neg = c.is_negative();
                    if !first {
                        write!(f, " {} ", if neg { '-' } else { '+' })?;
                    } else if neg {
                        write!(f, "-")?;
                    }
                    let a = c.abs();
                    match *a.denom() {
                        1 => write!(f, "{}/f", a.numer())?,
                        d => write!(f, "{}/({}f)", a.numer(), d)?,
                    }
                }
            }
            first = false;
        }
        Ok(())
    }
}

/// Counts (n_alpha, n_beta, n_gamma, n_delta) of angles meeting at a vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct VertexType(pub [u32; 4]);

impl VertexType {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn count(&self, a: Angle) -> u32 {
        self.0[a.index()]
    }

    pub fn mirror(&self) -> VertexType {
        let c = self.0;
        VertexType([c[3], c[2], c[1], c[0]])
    }

    /// Number of angles adjacent to the b-edge at this vertex.
    pub fn ab_angles(&self) -> u32 {
        self.0[0] + self.0[3]
    }

    /// Angle sum for the given tile angles.
    pub fn angle_sum(&self, angles: &[Q; 4]) -> Q {
        (0..4).fold(Q::zero(), |acc, i| {
            acc + angles[i] * Q::from(self.0[i] as i64)
        })
    }

    /// Parse compact notation such as `a2b`, `bc3`, `abd`.
    pub fn parse(s: &str) -> Option<VertexType> {
        let mut counts = [0u32; 4];
        let chars: Vec<char> = s.chars().collect();
        let mut i = 0;
        if chars.is_empty() {
            return None;
        }
        while i < chars.len() {
            let a = "abcd".find(chars[i])?;
            i += 1;
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let n: u32 = if i == start {
                1
            } else {
                chars[start..i].iter().collect::<String>().parse().ok()?
            };
            if n == 0 {
                return None;
            }
            counts[a] += n;
        }
        Some(VertexType(counts))
    }

    /// Compact notation, the inverse of [`VertexType::parse`].
    pub fn id(&self) -> String {
        self.render(|a| a.letter().to_string(), |n| n.to_string())
    }

    /// Greek notation with superscript powers, e.g. α²β.
    pub fn greek(&self) -> String {
        const SUP: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
        self.render(
            |a| a.greek().to_string(),
            |n| {
                n.to_string()
                    .chars()
                    .map(|d| SUP[d.to_digit(10).unwrap() as usize])
                    .collect()
            },
        )
    }

    fn render(&self, name: impl Fn(Angle) -> String, power: impl Fn(u32) -> String) -> String {
        let mut s = String::new();
        for a in Angle::ALL {
            let n = self.count(a);
            if n == 0 {
                continue;
            }
            s.push_str(&name(a));
            if n > 1 {
                s.push_str(&power(n));
            }
        }
        s
    }
}

impl fmt::Display for VertexType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.greek())
    }
}

/// (p1, p2, p3, p4, q) with angles p_i / q in lowest common terms.
pub fn common_denominator(angles: &[Q; 4]) -> [i64; 5] {
    let q = angles
        .iter()
        .fold(1i64, |acc, a| num_integer::lcm(acc, *a.denom()));
    let mut out = [0i64; 5];
    for i in 0..4 {
        out[i] = *angles[i].numer() * (q / *angles[i].denom());
    }
    out[4] = q;
    out
}

/// Render as `(p1,p2,p3,p4)/q`.
pub fn render_angles(angles: &[Q; 4]) -> String {
    let c = common_denominator(angles);
    format!("({},{},{},{})/{}", c[0], c[1], c[2], c[3], c[4])
}

/// Parse `(p1,p2,p3,p4)/q`.
pub fn parse_angles(s: &str) -> Option<[Q; 4]> {
    let s = s.trim();
    let (body, den) = s.strip_prefix('(')?.split_once(")/")?;
    let den: i64 = den.trim().parse().ok()?;
    let nums: Vec<i64> = body
        .split(',')
        .map(|t| t.trim().parse().ok())
        .collect::<Option<_>>()?;
    if nums.len() != 4 || den == 0 {
        return None;
    }
    Some([
        q(nums[0], den),
        q(nums[1], den),
        q(nums[2], den),
        q(nums[3], den),
    ])
}

/// Render forms c_i + d_i/f as `(n1,n2,n3,n4)/m` with n_i, m linear in f, e.g. `(4,f-4,4,f)/f`.
pub fn render_family(forms: &[AngleForm; 4]) -> String {
    let l = forms.iter().fold(1i64, |acc, x| {
        let acc = num_integer::lcm(acc, *x.constant.denom());
        num_integer::lcm(acc, *x.coeff(Param::InvF).denom())
    });
    let lin = |c: Q, d: Q| -> String {
        let (c, d) = ((c * l).to_integer(), (d * l).to_integer());
        let fc = match c {
            0 => String::new(),
            1 => "f".to_string(),
            -1 => "-f".to_string(),
            c => format!("{}f", c),
        };
        match (fc.is_empty(), d) {
            (true, d) => d.to_string(),
            (false, 0) => fc,
            (false, d) if d > 0 => format!("{}+{}", fc, d),
            (false, d) => format!("{}{}", fc, d),
        }
    };
    let parts: Vec<String> = forms
        .iter()
        .map(|x| lin(x.constant, x.coeff(Param::InvF)))
        .collect();
    let den = if l == 1 {
        "f".to_string()
    } else {
        format!("{}f", l)
    };
    format!("({})/{}", parts.join(","), den)
}

pub fn mirror_angles(a: &[Q; 4]) -> [Q; 4] {
    [a[3], a[2], a[1], a[0]]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vertex_notation_round_trips() {
        for s in ["abd", "a2b", "bc3", "b3", "a2bc", "d4"] {
            assert_eq!(VertexType::parse(s).unwrap().id(), s);
        }
        assert_eq!(VertexType::parse("a2b").unwrap().greek(), "α²β");
        assert!(VertexType::parse("e").is_none());
        assert!(VertexType::parse("a0").is_none());
    }

    #[test]
    fn forms_display_and_evaluate() {
        let g = AngleForm::constant(q(5, 6))
            .sub(&AngleForm::param(Param::Angle(Angle::Delta)))
            .add(&AngleForm::term(Param::InvF, q(4, 1)));
        assert_eq!(g.to_string(), "5/6 - δ + 4/f");
        let mut v = BTreeMap::new();
        v.insert(Param::Angle(Angle::Delta), q(1, 6));
        v.insert(Param::InvF, q(1, 6));
        assert_eq!(g.eval(&v), q(4, 3));
    }

    #[test]
    fn family_rendering() {
        let f = |c: Q, d: Q| AngleForm::constant(c).add(&AngleForm::term(Param::InvF, d));
        let fam = [
            f(q(0, 1), q(4, 1)),
            f(q(1, 1), q(-4, 1)),
            f(q(0, 1), q(4, 1)),
            f(q(1, 1), q(0, 1)),
        ];
        assert_eq!(render_family(&fam), "(4,f-4,4,f)/f");
        let fam = [
            f(q(0, 1), q(2, 1)),
            f(q(4, 3), q(-4, 3)),
            f(q(0, 1), q(4, 1)),
            f(q(2, 3), q(-2, 3)),
        ];
        assert_eq!(render_family(&fam), "(6,4f-4,12,2f-2)/3f");
    }

    #[test]
    fn angle_rendering() {
        let a = [q(1, 2), q(2, 3), q(4, 3), q(1, 6)];
        assert_eq!(render_angles(&a), "(3,4,8,1)/6");
        assert_eq!(parse_angles("(3,4,8,1)/6").unwrap(), a);
    }
}
