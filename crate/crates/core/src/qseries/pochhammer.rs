use num_complex::Complex64;

use super::QSeriesError;
use crate::exact::{qpoch, Rational};

/// Relative size of `a q^k` below which an infinite product is truncated.
pub const PRODUCT_TOL: f64 = 1e-17;
/// Hard cap on the number of factors of an infinite product.
pub const PRODUCT_CAP: usize = 100_000;

/// `(a; q)_n = ∏_{j<n} (1 − a q^j)`, exact.
pub fn qpoch_exact(a: &Rational, q: &Rational, n: usize) -> Rational {
    qpoch(a, q, n)
}

/// `(a; q)_n` for finite `n`, or `(a; q)_∞` when `n` is `None`.
pub fn qpoch_float(a: Complex64, q: f64, n: Option<usize>) -> Result<Complex64, QSeriesError> {
    match n {
        Some(n) => {
            let mut acc = Complex64::new(1.0, 0.0);
            let mut x = a;
            for _ in 0..n {
                acc *= 1.0 - x;
                x *= q;
            }
            Ok(acc)
        }
        None => qpoch_inf(a, q),
    }
}

/// `(a; q)_∞`, truncated once `|a q^k| < PRODUCT_TOL`.
pub fn qpoch_inf(a: Complex64, q: f64) -> Result<Complex64, QSeriesError> {
    if q.abs() >= 1.0 {
        return Err(QSeriesError::Divergent { q });
    }
    let mut acc = Complex64::new(1.0, 0.0);
    let mut x = a;
    for _ in 0..PRODUCT_CAP {
        if x.norm() < PRODUCT_TOL {
            return Ok(acc);
        }
        acc *= 1.0 - x;
        x *= q;
    }
    Err(QSeriesError::TruncationCap { cap: PRODUCT_CAP })
}
