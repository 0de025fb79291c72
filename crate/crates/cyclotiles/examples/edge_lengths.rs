// Edge lengths of the spherical quadrilateral with given angles.

use cyclotiles::geometry::{reconstruct, solve_edge_lengths};
use cyclotiles::tiling::angle::parse_angles;
use std::error::Error;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    for text in ["(6,3,4,3)/6", "(1,8,4,3)/6", "(15,6,10,7)/18"] {
        let g = solve_edge_lengths(&parse_angles(text).ok_or("bad angles")?)?;
        let (_, err) = reconstruct(&g.angles, g.a, g.b);
        println!(
            "{}: a = {:.6} pi, b = {:.6} pi, convex {}, closure error {:.1e}",
            text, g.a, g.b, g.convex, err
        );
        assert!(err < 1e-9);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
