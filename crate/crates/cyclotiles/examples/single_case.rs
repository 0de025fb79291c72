// One vertex case end to end: angle parametrization, trigonometric
// equation, polynomial, and the decoded candidates with their verdicts.

use cyclotiles::combinatorics::balance_feasible;
use cyclotiles::tiling::angle::render_angles;
use cyclotiles::tiling::cases::case_by_id;
use cyclotiles::tiling::solve::solve_case;
use std::error::Error;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let case = case_by_id("b3+a4")?;
    let out = solve_case(&case, 60)?;
    println!("case {} {}", case.id, case.title());
    let names = ["alpha", "beta", "gamma", "delta"];
    for (n, a) in names.iter().zip(&out.parametrization) {
        println!("  {} = {}", n, a);
    }
    println!("  equation: {} = 0", out.equation);
    println!("  polynomial: {}", out.polynomial);
    for c in &out.candidates {
        let verdict = if c.passes() {
            match balance_feasible(&c.angles, c.f).feasible() {
                Some(true) => "good, counting feasible".to_string(),
                Some(false) => "good, no tiling".to_string(),
                None => "good, undecided".to_string(),
            }
        } else {
            format!(
                "dismissed: {}",
                c.violations
                    .iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join("; ")
            )
        };
        println!("  {} f={}  {}", render_angles(&c.angles), c.f, verdict);
    }
    assert!(out
        .accepted()
        .any(|c| render_angles(&c.angles) == "(3,4,8,1)/6" && c.f == 6));
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
