//! Polynomial solutions of the exchange-reflection (qKZ) equations.
//!
//! The reference component `ψ_{◦^k∗^m}` is a single-column non-symmetric
//! Koornwinder polynomial; every other component follows by scaled Hecke
//! generators. The verification suites in this module check the exchange
//! equations, boundary recursions and fugacity covariance exactly.

mod hcoeff;
mod state;
mod verify;

pub use hcoeff::{h1_formula, h_closed_form, h_coeff, h_table, q_multinomial, HCoeffTable};
pub use state::{
    build_state, component_sum, left_flip, max_abs_exponent, reference_component, StateVector,
};
pub use verify::{
    k_left_const, k_right_const, rec_part_func_coeff, rec_part_func_rhs,
    rec_part_func_with_lowered_index, verify_exchange_equations, verify_fugacity_covariance,
    verify_asc_bridge, verify_hcoeff, verify_recursions,
};

use crate::exact::{ExactError, ParamError};
use crate::hecke::HeckeError;
use crate::model::ModelError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum QkzError {
    #[error("resonant parameters: leading coefficient vanishes at n = {n}")]
    Resonance { n: usize },
    #[error("inconsistent component for {0}")]
    Consistency(String),
    #[error(transparent)]
    Hecke(#[from] HeckeError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Param(#[from] ParamError),
    #[error(transparent)]
    QSeries(#[from] crate::qseries::QSeriesError),
}
