// Roots-of-unity solutions of polynomials in one, two and three variables.

use cyclotiles::algebra::{parse_polynomial, UniPoly};
use cyclotiles::solver::{self, cyclotomic_roots_univariate};
use std::error::Error;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    // (x^2 + 1)(x^2 - 3x + 1): only the first factor has roots of unity
    let f = parse_polynomial("(x^2 + 1)*(x^2 - 3*x + 1)", 1)?;
    let roots = cyclotomic_roots_univariate(&UniPoly::from_sparse(&f, 0).ok_or("not univariate")?)?;
    let shown: Vec<String> = roots
        .iter()
        .map(|r| format!("{}/{}", r.numerator(), r.order()))
        .collect();
    println!("{}: {}", f, shown.join(", "));
    assert_eq!(roots.len(), 2);

    for (text, vars) in [("1 + x + y", 2), ("x*y - 1", 2), ("x + y + z + 1", 3)] {
        let p = parse_polynomial(text, vars)?;
        let r = solver::solve(&p)?;
        println!("{} = 0", p);
        for pt in &r.points {
            println!("  point {}", pt);
        }
        for fam in &r.families {
            println!("  family {}", fam);
        }
        for pt in &r.points {
            assert!(p.vanishes_at(&pt.coords));
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
