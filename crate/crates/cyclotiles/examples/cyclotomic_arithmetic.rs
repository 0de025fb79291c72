// Exact arithmetic in cyclotomic fields and on Laurent polynomials.

use cyclotiles::algebra::{
    evaluate_at_point, parse_polynomial, rationalize, CyclotomicElement, RootOfUnity,
};
use std::error::Error;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    // zeta_12^3 = i, so zeta_12^3 squared is -1
    let i = CyclotomicElement::zeta_pow(12, 3);
    let minus_one = i.mul(&i);
    assert_eq!(minus_one, CyclotomicElement::from_int(-1));
    println!("zeta(12)^3 squared = {}", minus_one);

    // 1 + zeta_3 + zeta_3^2 = 0
    let w = CyclotomicElement::zeta_pow(3, 1);
    let sum = CyclotomicElement::one().add(&w).add(&w.mul(&w));
    assert!(sum.is_zero());

    let p = parse_polynomial(
        "zeta(12)^4*x^3 + zeta(12)^3*x^2*y - (zeta(12)^5 - zeta(12))*x^2",
        2,
    )?;
    println!("P = {}", p);
    let at = [RootOfUnity::new(1, 6), RootOfUnity::new(1, 4)];
    println!("P(zeta_6, zeta_4) = {}", evaluate_at_point(&p, &at));

    // the product of all Galois conjugates has rational coefficients
    let q = parse_polynomial("x - zeta(5)", 1)?;
    let r = rationalize(&q);
    assert!(r.is_rational());
    println!("norm of {} = {}", q, r);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
