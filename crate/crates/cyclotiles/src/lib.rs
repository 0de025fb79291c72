//! Exact cyclotomic point solver and the classification of rational
//! a3b-quadrilateral monotiles of the sphere built on top of it.

pub mod algebra;
pub mod combinatorics;
pub mod geometry;
pub mod report;
pub mod solver;
pub mod tiling;
