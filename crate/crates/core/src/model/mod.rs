//! Configurations, the Markov generator, integrable R/K/scattering operators
//! and an exact nullspace oracle.
//!
//! Bond and site indices in operator names follow the 1-based convention
//! (`R_1 … R_{N−1}`, `S_1 … S_N`).

mod config;
mod integrability;
mod matrix;
mod nullspace;
mod operators;

pub use config::{sector_size, Configuration, Sector, Site};
pub use matrix::{Scalar, SparseExactMatrix, SparseMatrix};
pub use integrability::{
    verify_local_relations, verify_scattering_commutation, verify_scattering_derivative,
};
pub use nullspace::exact_nullspace;
pub use operators::{
    boundary_generator, bulk_generator, k_left_matrix, k_left_operator, k_right_matrix,
    k_right_operator, left_generator, left_normalized, markov_matrix, r_matrix, r_operator,
    right_generator, right_normalized, scattering_along_line, scattering_derivative_at_one,
    scattering_factors, scattering_operator, ClearedOperator, Factor,
};

use crate::exact::{ExactError, ParamError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ModelError {
    #[error("invalid sector N = {n}, m = {m}")]
    Sector { n: usize, m: usize },
    #[error("cannot parse configuration {0:?}")]
    BadWord(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("pole in {0}")]
    Pole(String),
    #[error(transparent)]
    Param(#[from] ParamError),
    #[error(transparent)]
    Exact(#[from] ExactError),
}
