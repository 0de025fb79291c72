//! Reduction of each vertex-combination case to a cyclotomic equation,
//! decoding of its solutions to tile angles, and the merged classification.

pub mod angle;
pub mod cases;
pub mod equation;
pub mod filter;
pub mod merge;
pub mod solve;

use crate::solver::SolverError;
use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum TilingError {
    #[error("unknown case: {0}")]
    UnknownCase(String),
    #[error("parametrization failed: {0}")]
    Parametrization(String),
    #[error("exponential form failed: {0}")]
    Exponentialize(String),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Solver(#[from] SolverError),
}

/// Solve every case, in parallel on the current rayon pool. Output order follows `cases`.
pub fn solve_cases(
    cases: &[cases::CaseSpec],
    f_max: i64,
) -> Vec<Result<solve::CaseOutcome, TilingError>> {
    use rayon::prelude::*;
    cases
        .par_iter()
        .map(|c| solve::solve_case(c, f_max))
        .collect()
}
