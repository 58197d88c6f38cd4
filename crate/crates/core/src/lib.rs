//! Exact stationary states of the open two-species asymmetric simple
//! exclusion process.
//!
//! The stationary measure is built as a Laurent-polynomial solution of the
//! exchange-reflection equations, starting from a non-symmetric Koornwinder
//! polynomial and propagated with scaled Noumi operators. Everything on the
//! finite-size side is exact rational arithmetic; the thermodynamic limit uses
//! an Askey–Wilson contour integral.

pub mod exact;
pub mod report;
pub mod model;

pub use exact::{LaurentPoly, ParamPoint, Rational};
pub use model::{Configuration, Sector, Site, SparseExactMatrix};
pub mod hecke;
pub mod sampling;
pub mod qkz;
pub mod qseries;
pub mod observables;
pub mod montecarlo;
