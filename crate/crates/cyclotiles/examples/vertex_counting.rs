// Vertex types of a tile and the counting test for a tiling.

use cyclotiles::combinatorics::{
    balance_feasible, degree3_constraint_check, enumerate_vertex_types, Balance,
};
use cyclotiles::tiling::angle::parse_angles;
use std::error::Error;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    for (text, f) in [("(6,3,4,3)/6", 6), ("(1,4,2,2)/4", 16), ("(3,4,6,2)/6", 8)] {
        let angles = parse_angles(text).ok_or("bad angles")?;
        let types = enumerate_vertex_types(&angles, None);
        let names: Vec<String> = types.iter().map(|v| v.greek()).collect();
        println!("{} f={}: vertices {}", text, f, names.join(" "));
        println!(
            "  degree-3 set allowed: {}",
            degree3_constraint_check(&angles)
        );
        match balance_feasible(&angles, f) {
            Balance::Feasible(s) => println!("  feasible, e.g. {}", s),
            Balance::Certificate(w) => println!("  infeasible, weights {:?}", w),
            other => println!("  {:?}", other),
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
