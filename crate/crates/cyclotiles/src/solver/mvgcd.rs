//! Multivariate gcd by recursive primitive pseudo-remainder sequences.

use crate::algebra::resultant::{dense_in, prem};
use crate::algebra::sparse::{SparsePoly, MAX_VARS};
use crate::algebra::{CyclotomicElement, UniPoly};

fn from_dense(c: &[SparsePoly], var: usize, nvars: usize) -> SparsePoly {
    let mut out = SparsePoly::zero(nvars);
    for (k, ck) in c.iter().enumerate() {
        let mut e = [0; MAX_VARS];
        e[var] = k as i64;
        out = out.add(&ck.shift(&e));
    }
    out
}

fn normalize(p: SparsePoly) -> SparsePoly {
    let (_, p) = p.strip_monomial();
    p.monic()
}

/// Content with respect to `var`: gcd of the coefficients in the other variables.
pub fn content_in(p: &SparsePoly, var: usize) -> SparsePoly {
    let mut g = SparsePoly::zero(p.nvars());
    for c in p.coefficients_in(var).values() {
        g = gcd(&g, c);
        if g.is_constant() {
            break;
        }
    }
    g
}

/// Monic (in lex order) gcd up to monomial units. gcd(0, 0) = 0.
pub fn gcd(a: &SparsePoly, b: &SparsePoly) -> SparsePoly {
    let nvars = a.nvars().max(b.nvars());
    if a.is_zero() {
        return normalize(b.with_nvars(nvars));
    }
    if b.is_zero() {
        return normalize(a.with_nvars(nvars));
    }
    let (_, a) = a.strip_monomial();
    let (_, b) = b.strip_monomial();
    if a.is_constant() || b.is_constant() {
        return SparsePoly::one(nvars);
    }
    let var = (0..nvars)
        .find(|&v| a.uses_var(v) || b.uses_var(v))
        .unwrap();
    if !a.uses_var(var) {
        return gcd(&a, &content_in(&b, var));
    }
    if !b.uses_var(var) {
        return gcd(&content_in(&a, var), &b);
    }
    let ca = content_in(&a, var);
    let cb = content_in(&b, var);
    let c = gcd(&ca, &cb);
    let mut f = a
        .div_exact(&ca)
        .expect("content divides")
        .primitive_integral();
    let mut g = b
        .div_exact(&cb)
        .expect("content divides")
        .primitive_integral();
    if f.max_degree(var) < g.max_degree(var) {
        std::mem::swap(&mut f, &mut g);
    }
    if coprime_image(&f, &g, var) {
        return normalize(c);
    }
    loop {
        let r = prem(&dense_in(&f, var), &dense_in(&g, var));
        if r.is_empty() {
            break;
        }
        if r.len() == 1 {
            return normalize(c);
        }
        let r = from_dense(&r, var, nvars);
        let cr = content_in(&r, var);
        f = g;
        g = r
            .div_exact(&cr)
            .expect("content divides")
            .primitive_integral();
    }
    normalize(c.mul(&g))
}

/// Whether some specialization of the other variables keeps both degrees in
/// `var` and has a constant gcd, which proves the primitive parts coprime.
fn coprime_image(f: &SparsePoly, g: &SparsePoly, var: usize) -> bool {
    let others: Vec<usize> = (0..f.nvars())
        .filter(|&v| v != var && (f.uses_var(v) || g.uses_var(v)))
        .collect();
    if others.is_empty() {
        return false;
    }
    let (df, dg) = (f.max_degree(var), g.max_degree(var));
    for trial in 0..3i64 {
        let (mut a, mut b) = (f.clone(), g.clone());
        for (j, &v) in others.iter().enumerate() {
            let val = CyclotomicElement::from_int(2 + trial * 3 + j as i64 * 7);
            a = a.substitute_value(v, &val);
            b = b.substitute_value(v, &val);
        }
        if a.max_degree(var) != df
            || b.max_degree(var) != dg
            || a.min_degree(var) != 0
            || b.min_degree(var) != 0
        {
            continue;
        }
        let (ua, ub) = match (UniPoly::from_sparse(&a, var), UniPoly::from_sparse(&b, var)) {
            (Some(ua), Some(ub)) => (ua, ub),
            _ => continue,
        };
        return ua.gcd(&ub).degree() == Some(0);
    }
    false
}

/// Square-free part: P divided by gcd(P, dP/dv for every variable v).
pub fn squarefree(p: &SparsePoly) -> SparsePoly {
    let (_, p) = p.strip_monomial();
    let mut g = p.clone();
    for v in 0..p.nvars() {
        if p.uses_var(v) {
            g = gcd(&g, &derivative(&p, v));
        }
    }
    normalize(p.div_exact(&g).expect("gcd divides"))
}

pub fn derivative(p: &SparsePoly, v: usize) -> SparsePoly {
    SparsePoly::from_terms(
        p.nvars(),
        p.terms().filter(|(e, _)| e[v] != 0).map(|(e, c)| {
            let mut f = *e;
            f[v] -= 1;
            (
                f,
                c.scale(&num_rational::BigRational::from_integer(e[v].into())),
            )
        }),
    )
}
