use cyclotiles::algebra::cyclotomic::CyclotomicElement;
use cyclotiles::algebra::galois::rationalize;
use cyclotiles::algebra::{parse_polynomial, resultant_eliminate, RootOfUnity, SparsePoly};
use cyclotiles::combinatorics::{
    balance_feasible, balance_with_types, enumerate_vertex_types, Balance,
};
use cyclotiles::solver::{apply_monomial_substitution, solve};
use cyclotiles::tiling::angle::{parse_angles, Q};
use proptest::prelude::*;

fn element() -> impl Strategy<Value = CyclotomicElement> {
    (1u64..=12).prop_flat_map(element_of)
}

fn element_of(n: u64) -> impl Strategy<Value = CyclotomicElement> {
    prop::collection::vec(-4i64..=4, 1..5).prop_map(move |cs| {
        cs.iter()
            .enumerate()
            .fold(CyclotomicElement::zero(), |acc, (k, &c)| {
                acc.add(
                    &CyclotomicElement::zeta_pow(n, k as i64).mul(&CyclotomicElement::from_int(c)),
                )
            })
    })
}

fn root() -> impl Strategy<Value = RootOfUnity> {
    (1u64..=30, 0i64..30).prop_map(|(n, k)| RootOfUnity::new(k, n))
}

/// Polynomials in `nvars` variables with small exponents and cyclotomic coefficients.
fn sparse(nvars: usize, max_exp: i64) -> impl Strategy<Value = SparsePoly> {
    prop::collection::vec((prop::array::uniform3(0..=max_exp), element()), 1..5).prop_map(
        move |terms| {
            SparsePoly::from_terms(
                nvars,
                terms.into_iter().map(|(mut e, c)| {
                    e[nvars..].iter_mut().for_each(|x| *x = 0);
                    (e, c)
                }),
            )
        },
    )
}

fn int_sparse(nvars: usize, max_exp: i64) -> impl Strategy<Value = SparsePoly> {
    prop::collection::vec((prop::array::uniform3(0..=max_exp), -5i64..=5), 1..6).prop_map(
        move |terms| {
            let terms: Vec<([i64; 3], i64)> = terms
                .into_iter()
                .map(|(mut e, c)| {
                    e[nvars..].iter_mut().for_each(|x| *x = 0);
                    (e, c)
                })
                .collect();
            SparsePoly::from_int_terms(nvars, &terms)
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn field_axioms(a in element(), b in element(), c in element()) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert!(a.sub(&a).is_zero());
        if !a.is_zero() {
            prop_assert!(a.mul(&a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn roots_of_unity_stay_canonical(r in root(), s in root()) {
        let prod = r.mul(&s);
        prop_assert!(prod.numerator() < prod.order());
        prop_assert_eq!(prod.to_element(), r.to_element().mul(&s.to_element()));
        prop_assert!(r.mul(&r.inv()) == RootOfUnity::one());
        prop_assert_eq!(r.pow(r.order() as i64), RootOfUnity::one());
    }

    #[test]
    fn parse_display_round_trip(p in sparse(3, 3)) {
        let back = parse_polynomial(&p.to_string(), 3).unwrap();
        prop_assert_eq!(back, p);
    }

    // coefficients share one field; mixed fields make the norm degree explode
    #[test]
    fn norm_is_rational_and_keeps_zeros(
        p in (1u64..=12).prop_flat_map(|n| prop::collection::vec((0i64..=4, element_of(n)), 1..5))
            .prop_map(|t| SparsePoly::from_terms(1, t.into_iter().map(|(e, c)| ([e, 0, 0], c)))),
        r in root(),
    ) {
        let n = rationalize(&p);
        prop_assert!(n.is_rational());
        if p.vanishes_at(&[r]) {
            prop_assert!(n.vanishes_at(&[r]));
        }
    }

    #[test]
    fn resultant_commutes_with_specialization(p in int_sparse(2, 3), q in int_sparse(2, 3), y0 in -3i64..=3) {
        // the resultant clears monomial factors first, so compare on cleared inputs
        let (p, q) = (p.strip_monomial().1, q.strip_monomial().1);
        prop_assume!(p.degree(0) > 0 && q.degree(0) > 0);
        let at = |s: &SparsePoly| s.substitute_value(1, &CyclotomicElement::from_int(y0));
        let (ps, qs) = (at(&p), at(&q));
        // specialization is a ring map only while the leading coefficients survive
        prop_assume!(ps.degree(0) == p.degree(0) && qs.degree(0) == q.degree(0));
        let r = resultant_eliminate(&p, &q, 0).unwrap();
        let rs = resultant_eliminate(&ps, &qs, 0).unwrap();
        prop_assert_eq!(at(&r), rs);
    }

    #[test]
    fn common_factor_kills_resultant(p in int_sparse(2, 2), q in int_sparse(2, 2), k in 1u64..=6) {
        prop_assume!(!p.is_zero() && !q.is_zero());
        let g = parse_polynomial(&format!("x - zeta({})*y", k), 2).unwrap();
        let r = resultant_eliminate(&p.mul(&g), &q.mul(&g), 0).unwrap();
        prop_assert!(r.is_zero());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn solutions_are_exact_and_substitution_equivariant(
        p in int_sparse(2, 3),
        m in prop::sample::select(vec![
            vec![vec![1, 1], vec![0, 1]],
            vec![vec![1, 0], vec![2, 1]],
            vec![vec![0, 1], vec![1, 0]],
            vec![vec![2, 1], vec![1, 1]],
        ]),
    ) {
        prop_assume!(p.num_terms() >= 2 && !p.strip_monomial().1.is_constant());
        let q = apply_monomial_substitution(&p, &m).unwrap();
        let sol = solve(&q).unwrap();
        for pt in &sol.points {
            prop_assert!(q.vanishes_at(&pt.coords));
            // x_i = prod_j y_j^{m[i][j]}
            let x: Vec<RootOfUnity> = m
                .iter()
                .map(|row| row.iter().zip(&pt.coords).fold(RootOfUnity::one(), |acc, (&e, y)| acc.mul(&y.pow(e))))
                .collect();
            prop_assert!(p.vanishes_at(&x));
        }
        for fam in &sol.families {
            let t = vec![RootOfUnity::new(1, 7); fam.dimension()];
            prop_assert!(q.vanishes_at(&fam.member(&t).coords));
        }
    }

    #[test]
    fn more_vertex_types_never_hurt_balance(
        tile in prop::sample::select(vec![
            ("(6,3,4,3)/6", 6), ("(1,4,2,2)/4", 16), ("(5,4,7,3)/9", 36),
            ("(15,6,10,7)/18", 36), ("(3,4,6,2)/6", 8), ("(9,6,12,5)/12", 6),
        ]),
        mask in any::<u32>(),
    ) {
        let a: [Q; 4] = parse_angles(tile.0).unwrap();
        let all = enumerate_vertex_types(&a, None);
        let some: Vec<_> = all.iter().enumerate().filter(|(i, _)| mask >> (i % 32) & 1 == 1).map(|(_, v)| *v).collect();
        let full = balance_feasible(&a, tile.1);
        if let Balance::Feasible(s) = balance_with_types(&some, tile.1) {
            prop_assert!(s.is_consistent());
            prop_assert_eq!(full.feasible(), Some(true));
        }
        if let Balance::Feasible(s) = full {
            prop_assert!(s.is_consistent());
            prop_assert!(s.counts.iter().all(|(v, _)| all.contains(v)));
        }
    }
}
