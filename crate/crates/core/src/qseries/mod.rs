//! q-Pochhammer symbols, Askey–Wilson and Al-Salam–Chihara polynomials,
//! the Askey–Wilson kernel and their contiguous relations.
//!
//! Exact routines take rationals and return rationals or univariate Laurent
//! polynomials in `z`. Float routines use `f64` parameters and complex `z`.
//! Polynomials are always functions of `z` with `z ↔ z⁻¹` symmetry, never of
//! `x = (z + z⁻¹)/2`.

mod askey_wilson;
mod contiguous;
mod kernel;
mod pochhammer;

pub use askey_wilson::{
    al_salam_chihara, al_salam_chihara_by_recurrence, aw_float, aw_float_at_parameter, aw_poly, aw_value,
    aw_via_phi43, phi43_terminating, AwFloat, AwParams,
};
pub use contiguous::{
    chained_aw_poly, contiguous_relation_suite, divided_difference_cd, theta_inverse_weight_holds,
};
pub use kernel::{
    asymptote_b, aw_asymptote, aw_kernel, aw_norm, aw_orthogonality_check, integral_norm_rm,
    unit_circle_average,
};
pub use pochhammer::{qpoch_exact, qpoch_float, qpoch_inf, PRODUCT_CAP, PRODUCT_TOL};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum QSeriesError {
    #[error("infinite product needs |q| < 1 (got {q})")]
    Divergent { q: f64 },
    #[error("infinite product did not converge within {cap} factors")]
    TruncationCap { cap: usize },
    #[error("resonant parameters: {0}")]
    Resonance(String),
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error(transparent)]
    Exact(#[from] crate::exact::ExactError),
}

pub(crate) mod kernel_internal {
    pub(crate) use super::kernel::{aw_kernel_omitting, OmitFactor};
}
