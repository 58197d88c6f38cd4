//! Exact scalars, sparse Laurent polynomials and model parameters.

mod laurent;
mod params;
mod rational;

pub use laurent::{elementary_symmetric, LaurentPoly, Subst};
pub use params::{ParamError, ParamPoint, ParamRecord};
pub use rational::{format_rational, int, parse_rational, q, qpoch, rpow, to_f64, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExactError {
    #[error("dimension mismatch: {left} vs {right} variables")]
    Dimension { left: usize, right: usize },
    #[error("substituting zero into z{} hits a pole", var + 1)]
    Pole { var: usize },
    #[error("index {index} out of range for length {len}")]
    Index { index: usize, len: usize },
    #[error("cannot parse rational from {0:?}")]
    Parse(String),
    #[error("variable z{} is still present", var + 1)]
    VariablePresent { var: usize },
    #[error(transparent)]
    Param(#[from] ParamError),
}
