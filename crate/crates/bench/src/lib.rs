//! Shared fixtures for the criterion benches.

use asep2::exact::q;
use asep2::ParamPoint;

/// A physical point used by every bench: `s = 1/2`, `a = −1/2`, `b = 1/3`,
/// `c = −1/4`, `d = 1/5`.
pub fn physical_point() -> ParamPoint {
    ParamPoint::new(q(1, 2), q(-1, 2), q(1, 3), q(-1, 4), q(1, 5)).expect("valid point")
}
