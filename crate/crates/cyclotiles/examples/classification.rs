// The full run: all vertex cases, merged into sporadic tiles and families.

use cyclotiles::report::{build_report, render_array};
use cyclotiles::tiling::cases::enumerate_cases;
use cyclotiles::tiling::solve_cases;
use std::error::Error;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let f_max = 60;
    let cases = enumerate_cases();
    let results: Vec<_> = cases
        .iter()
        .cloned()
        .zip(solve_cases(&cases, f_max))
        .collect();
    let report = build_report(&results, f_max, false)?;
    println!("{} cases", report.cases.len());
    for t in &report.sporadic {
        println!(
            "sporadic {} f={}  {}",
            render_array(&t.angles),
            t.f,
            t.spectrum
        );
    }
    for k in &report.families {
        println!("family {}  {}", k.angles, k.condition);
    }
    for d in &report.discrepancies {
        println!("note [{}] {}", d.kind, d.detail);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
