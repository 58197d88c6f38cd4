use std::f64::consts::PI;

use num_complex::Complex64;

use super::askey_wilson::{aw_float, AwFloat};
use super::pochhammer::qpoch_inf;
use super::QSeriesError;

/// Distance to a kernel pole below which evaluation is refused.
pub const POLE_GUARD: f64 = 1e-10;

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// A single factor `(1 − e q^k x^{±1})` of the kernel denominator.
#[derive(Clone, Copy, Debug, PartialEq)]
pub(crate) struct OmitFactor {
    pub param: usize,
    pub k: usize,
    pub inverse: bool,
}

/// Product `(e x^{±1}; q)_∞` with an optional single factor left out.
fn poch_omitting(e: f64, x: Complex64, q: f64, inverse: bool, omit: Option<usize>) -> Result<Complex64, QSeriesError> {
    let y = if inverse { e / x } else { e * x };
    let full = qpoch_inf(y, q)?;
    match omit {
        None => Ok(full),
        Some(k) => {
            // Rebuild without dividing by the (possibly vanishing) factor.
            let mut acc = Complex64::new(1.0, 0.0);
            let mut term = y;
            let mut j = 0;
            while term.norm() >= super::pochhammer::PRODUCT_TOL || j <= k {
                if j != k {
                    acc *= 1.0 - term;
                }
                term *= q;
                j += 1;
                if j > super::pochhammer::PRODUCT_CAP {
                    return Err(QSeriesError::TruncationCap { cap: super::pochhammer::PRODUCT_CAP });
                }
            }
            Ok(acc)
        }
    }
}

pub(crate) fn aw_kernel_omitting(
    x: Complex64,
    p: &AwFloat,
    omit: Option<OmitFactor>,
) -> Result<Complex64, QSeriesError> {
    let q = p.q;
    let num = qpoch_inf(x * x, q)? * qpoch_inf(1.0 / (x * x), q)?;
    let mut den = Complex64::new(1.0, 0.0);
    for (i, e) in p.params().into_iter().enumerate() {
        for inverse in [false, true] {
            let skip = omit
                .filter(|o| o.param == i && o.inverse == inverse)
                .map(|o| o.k);
            den *= poch_omitting(e, x, q, inverse, skip)?;
        }
    }
    if den.norm() < POLE_GUARD * num.norm().max(1.0) {
        return Err(QSeriesError::NotApplicable(format!("x = {x} is at a kernel pole")));
    }
    Ok(num / den)
}

/// `w(x) = (x², x⁻²; q)_∞ / (ax^{±1}, bx^{±1}, cx^{±1}, dx^{±1}; q)_∞`.
pub fn aw_kernel(x: Complex64, p: &AwFloat) -> Result<Complex64, QSeriesError> {
    for e in p.params() {
        let mut pole = e;
        while pole.abs() > POLE_GUARD {
            if (1.0 - pole * x).norm() < POLE_GUARD || (1.0 - pole / x).norm() < POLE_GUARD {
                return Err(QSeriesError::NotApplicable(format!("x = {x} is at a kernel pole")));
            }
            pole *= p.q;
        }
    }
    aw_kernel_omitting(x, p, None)
}

/// `h_n = (q^{n−1}abcd; q)_∞ / ((1 − q^{2n−1}abcd)(q^{n+1}, q^n ab, q^n ac, q^n ad, q^n bc, q^n bd, q^n cd; q)_∞)`.
pub fn aw_norm(n: usize, p: &AwFloat) -> Result<f64, QSeriesError> {
    let AwFloat { a, b, c, d, q } = *p;
    let qn = q.powi(n as i32);
    let abcd = a * b * c * d;
    let mut den = (1.0 - q.powi(2 * n as i32 - 1) * abcd) * qpoch_inf(re(q * qn), q)?.re;
    for pair in [a * b, a * c, a * d, b * c, b * d, c * d] {
        den *= qpoch_inf(re(qn * pair), q)?.re;
    }
    Ok(qpoch_inf(re(q.powi(n as i32 - 1) * abcd), q)?.re / den)
}

/// `(1/M) Σ_j f(e^{2πi(j+½)/M})`, the trapezoid rule for `∮ f dz/(2πiz)`.
pub fn unit_circle_average<F>(nodes: usize, mut f: F) -> Result<Complex64, QSeriesError>
where
    F: FnMut(Complex64) -> Result<Complex64, QSeriesError>,
{
    let mut acc = Complex64::new(0.0, 0.0);
    for j in 0..nodes {
        let theta = 2.0 * PI * (j as f64 + 0.5) / nodes as f64;
        acc += f(Complex64::from_polar(1.0, theta))?;
    }
    Ok(acc / nodes as f64)
}

/// `|∮ w p_n p_m dz/(4πiz) − h_n δ_{nm}|`, relative to `h_n` on the diagonal
/// and to `(h_n h_m)^{1/2}` off it.
pub fn aw_orthogonality_check(n: usize, m: usize, p: &AwFloat, nodes: usize) -> Result<f64, QSeriesError> {
    if p.params().iter().any(|x| x.abs() >= 1.0) {
        return Err(QSeriesError::NotApplicable("unit-circle contour needs |a|,|b|,|c|,|d| < 1".into()));
    }
    let integral = unit_circle_average(nodes, |z| {
        Ok(aw_kernel(z, p)? * aw_float(n, z, p)? * aw_float(m, z, p)?)
    })? * 0.5;
    let (hn, hm) = (aw_norm(n, p)?, aw_norm(m, p)?);
    if n == m {
        Ok((integral - hn).norm() / hn.abs())
    } else {
        Ok(integral.norm() / (hn * hm).abs().sqrt())
    }
}

/// `B(z) = (az, bz, cz, dz; q)_∞ / (z²; q)_∞`.
pub fn asymptote_b(z: Complex64, p: &AwFloat) -> Result<Complex64, QSeriesError> {
    let mut num = Complex64::new(1.0, 0.0);
    for e in p.params() {
        num *= qpoch_inf(z * e, p.q)?;
    }
    Ok(num / qpoch_inf(z * z, p.q)?)
}

/// Large-degree form `z^m B(z⁻¹) + z^{−m} B(z)`.
pub fn aw_asymptote(m: usize, z: Complex64, p: &AwFloat) -> Result<Complex64, QSeriesError> {
    if (z.norm() - 1.0).abs() < 1e-12 {
        return Err(QSeriesError::NotApplicable("asymptote needs |z| ≠ 1".into()));
    }
    let zm = z.powi(m as i32);
    Ok(zm * asymptote_b(1.0 / z, p)? + asymptote_b(z, p)? / zm)
}

/// `r_m = (abcd t^{2m}; t)_∞ / (t^{m+1}, ab t^m, ac t^m, ad t^m, bc t^m, bd t^m, cd t^m; t)_∞`.
pub fn integral_norm_rm(m: usize, p: &AwFloat) -> Result<f64, QSeriesError> {
    let AwFloat { a, b, c, d, q } = *p;
    let qm = q.powi(m as i32);
    let mut den = qpoch_inf(re(q * qm), q)?.re;
    for pair in [a * b, a * c, a * d, b * c, b * d, c * d] {
        den *= qpoch_inf(re(qm * pair), q)?.re;
    }
    Ok(qpoch_inf(re(a * b * c * d * qm * qm), q)?.re / den)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> AwFloat {
        AwFloat { a: -0.5, b: 1.0 / 3.0, c: -0.25, d: 0.2, q: 0.25 }
    }

    #[test]
    fn kernel_symmetry_and_empty_case() {
        let x = Complex64::from_polar(1.0, PI / 3.0);
        let w = aw_kernel(x, &p()).unwrap();
        assert!((w - aw_kernel(1.0 / x, &p()).unwrap()).norm() < 1e-13 * w.norm());
        let zero = AwFloat { a: 0.0, b: 0.0, c: 0.0, d: 0.0, q: 0.25 };
        let direct = qpoch_inf(x * x, 0.25).unwrap() * qpoch_inf(1.0 / (x * x), 0.25).unwrap();
        assert!((aw_kernel(x, &zero).unwrap() - direct).norm() < 1e-14);
    }

    #[test]
    fn kernel_spot_value_against_long_product() {
        let x = Complex64::from_polar(1.0, PI / 3.0);
        let pp = p();
        let prod = |y: Complex64| (0..200).fold(Complex64::new(1.0, 0.0), |acc, k| acc * (1.0 - y * pp.q.powi(k)));
        let mut den = Complex64::new(1.0, 0.0);
        for e in pp.params() {
            den *= prod(x * e) * prod(e / x);
        }
        let oracle = prod(x * x) * prod(1.0 / (x * x)) / den;
        let w = aw_kernel(x, &pp).unwrap();
        assert!((w - oracle).norm() < 1e-12 * oracle.norm());
    }

    #[test]
    fn kernel_refuses_poles() {
        assert!(aw_kernel(Complex64::new(-2.0, 0.0), &p()).is_err());
    }

    #[test]
    fn orthogonality() {
        for (n, m) in [(0, 0), (0, 1), (3, 3), (2, 5), (5, 5)] {
            let r = aw_orthogonality_check(n, m, &p(), 256).unwrap();
            assert!(r < 1e-8, "({n},{m}): {r}");
        }
    }

    #[test]
    fn asymptote() {
        // Corrections decay like q^m; a base near 1 keeps m = 80 above roundoff.
        let pp = AwFloat { q: 0.75, ..p() };
        assert!((asymptote_b(Complex64::new(0.0, 0.0), &pp).unwrap() - 1.0).norm() < 1e-15);
        let z = Complex64::new(3.0, 0.0);
        let errs: Vec<f64> = [20, 40, 80]
            .iter()
            .map(|&m| {
                let v = aw_float(m, z, &pp).unwrap();
                (v - aw_asymptote(m, z, &pp).unwrap()).norm() / v.norm()
            })
            .collect();
        assert!(errs[0] > errs[1] && errs[1] > errs[2], "{errs:?}");
        assert!(aw_asymptote(3, Complex64::from_polar(1.0, 0.3), &pp).is_err());
    }

    #[test]
    fn rm_against_long_product() {
        let pp = p();
        let prod = |y: f64| (0..300).fold(1.0, |acc, k| acc * (1.0 - y * pp.q.powi(k)));
        let (a, b, c, d, t) = (pp.a, pp.b, pp.c, pp.d, pp.q);
        for m in 0..4 {
            let tm = t.powi(m);
            let mut den = prod(t * tm);
            for x in [a * b, a * c, a * d, b * c, b * d, c * d] {
                den *= prod(x * tm);
            }
            let oracle = prod(a * b * c * d * tm * tm) / den;
            let v = integral_norm_rm(m as usize, &pp).unwrap();
            assert!((v - oracle).abs() < 1e-12 * oracle.abs());
        }
    }
}
