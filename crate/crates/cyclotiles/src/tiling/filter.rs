//! Necessary conditions on the angles of a tile that can tile the sphere.

use super::angle::Q;
use super::equation::equation_holds;
use num_traits::{One, Zero};
use serde::Serialize;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Violation {
    /// Some angle outside (0, 2).
    AngleRange,
    /// f is not an even integer at least 6.
    FaceCount,
    /// α + β + γ + δ differs from 2 + 4/f.
    AngleSum,
    /// α = δ and β = γ.
    Symmetric,
    /// Two angles at least 1.
    TwoLargeAngles,
    /// β < γ must be equivalent to α > δ, and β > γ to α < δ.
    BetaGammaOrder,
    /// β = δ exactly when α = 1; with all angles below 1, β > δ exactly when α < γ.
    BetaDeltaOrder,
    /// With δ <= 1, 2α + β > 1 and β + 2γ > 1.
    HalfTurnBounds,
    /// With all angles below 1: α+δ < 1+β, α+δ < 1+γ, α+β < 1+δ, γ+δ < 1+α.
    ConvexBounds,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Violation::AngleRange => "angle outside (0,2)",
            Violation::FaceCount => "f not an even integer >= 6",
            Violation::AngleSum => "angle sum differs from 2+4/f",
            Violation::Symmetric => "symmetric quadrilateral",
            Violation::TwoLargeAngles => "two angles >= 1",
            Violation::BetaGammaOrder => "beta/gamma order inconsistent with alpha/delta order",
            Violation::BetaDeltaOrder => "beta/delta comparison inconsistent with alpha",
            Violation::HalfTurnBounds => "2alpha+beta > 1 or beta+2gamma > 1 fails",
            Violation::ConvexBounds => "convex edge inequalities fail",
        };
        write!(f, "{}", s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FilterOutcome {
    pub pass: bool,
    pub violations: Vec<Violation>,
}

/// Exact check of the compatibility equation.
pub fn verify_exact(angles: &[Q; 4]) -> bool {
    equation_holds(angles)
}

/// Apply all conditions in a fixed order and report every one that fails.
pub fn geometric_filter(angles: &[Q; 4], f: i64) -> FilterOutcome {
    let [a, b, c, d] = *angles;
    let one = Q::one();
    let two = Q::from(2);
    let mut v = Vec::new();
    if angles.iter().any(|&x| x <= Q::zero() || x >= two) {
        v.push(Violation::AngleRange);
    }
    if f < 6 || f % 2 != 0 {
        v.push(Violation::FaceCount);
    }
    if f <= 0 || a + b + c + d != two + Q::new(4, f.max(1)) {
        v.push(Violation::AngleSum);
    }
    if a == d && b == c {
        v.push(Violation::Symmetric);
    }
    if angles.iter().filter(|&&x| x >= one).count() >= 2 {
        v.push(Violation::TwoLargeAngles);
    }
    if (b < c) != (a > d) || (b > c) != (a < d) {
        v.push(Violation::BetaGammaOrder);
    }
    let all_small = angles.iter().all(|&x| x < one);
    if (b == d) != (a == one) || (all_small && ((b > d) != (a < c) || (b < d) != (a > c))) {
        v.push(Violation::BetaDeltaOrder);
    }
    if d <= one && !(two * a + b > one && b + two * c > one) {
        v.push(Violation::HalfTurnBounds);
    }
    if all_small && !(a + d < one + b && a + d < one + c && a + b < one + d && c + d < one + a) {
        v.push(Violation::ConvexBounds);
    }
    FilterOutcome {
        pass: v.is_empty(),
        violations: v,
    }
}
