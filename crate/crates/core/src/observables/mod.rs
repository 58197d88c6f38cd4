//! Partition functions, currents, densities and the phase diagram.
//!
//! Finite-size quantities are exact rationals built from the qKZ state.
//! Large systems go through the Askey–Wilson contour integral, evaluated as
//! unit-circle quadrature plus residues of the poles that cross the circle.

mod exact;
mod mimachi;
mod phase;

pub use exact::{
    density_first_class, direct_current, is_w_invariant, leading_coefficient, partition_function,
    partition_hom, steady_current, weighted_partition, weighted_partition_identity, PartitionData,
};
pub use mimachi::{
    mimachi_current, mimachi_density, mimachi_partition, small_circle_partition, MimachiValue,
    QuadratureSettings,
};
pub use phase::{finite_size_scan, phase_diagram, FiniteSizePoint, Phase, PhaseResult};

use crate::qkz::QkzError;
use crate::qseries::QSeriesError;

/// Sign applied to reported currents.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CurrentConvention {
    /// `(t^{1/2} − t^{−1/2}) Z_{N−1,m}/Z_{N,m}`: injections minus extractions at site 1.
    #[default]
    Paper,
    /// The default value times −1, positive in the maximal-current phase for 0 < t < 1.
    Rightward,
}

impl CurrentConvention {
    pub fn sign(self) -> f64 {
        match self {
            Self::Paper => 1.0,
            Self::Rightward => -1.0,
        }
    }

    pub fn apply_exact(self, j: &crate::Rational) -> crate::Rational {
        match self {
            Self::Paper => j.clone(),
            Self::Rightward => -j.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ObservablesError {
    #[error("sector (N={n}, m={m}) is empty or unsupported here")]
    Sector { n: usize, m: usize },
    #[error("identity violated: {0}")]
    Identity(String),
    #[error("contour: {0}")]
    Contour(String),
    #[error("parameter regime: {0}")]
    Regime(String),
    #[error(transparent)]
    Qkz(#[from] QkzError),
    #[error(transparent)]
    QSeries(#[from] QSeriesError),
    #[error(transparent)]
    Param(#[from] crate::exact::ParamError),
}
