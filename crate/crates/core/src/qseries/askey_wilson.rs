use num_complex::Complex64;
use num_traits::{One, Zero};

use super::QSeriesError;
use crate::exact::{qpoch, rpow, LaurentPoly, Rational};

/// Exact Askey–Wilson parameters `a, b, c, d` and base `q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AwParams {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
    pub d: Rational,
    pub q: Rational,
}

impl AwParams {
    pub fn new(a: Rational, b: Rational, c: Rational, d: Rational, q: Rational) -> Self {
        Self { a, b, c, d, q }
    }

    pub fn with_cd(&self, c: Rational, d: Rational) -> Self {
        Self { c, d, ..self.clone() }
    }

    pub fn to_float(&self) -> AwFloat {
        use crate::exact::to_f64;
        AwFloat {
            a: to_f64(&self.a),
            b: to_f64(&self.b),
            c: to_f64(&self.c),
            d: to_f64(&self.d),
            q: to_f64(&self.q),
        }
    }
}

/// Floating-point Askey–Wilson parameters.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AwFloat {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub q: f64,
}

impl AwFloat {
    pub fn params(&self) -> [f64; 4] {
        [self.a, self.b, self.c, self.d]
    }
}

fn qpow_k(q: &Rational, k: usize) -> Rational {
    rpow(q, k as i64)
}

/// `(x z; q)_k (x z⁻¹; q)_k` as a Laurent polynomial in one variable.
fn paired_poch(x: &Rational, q: &Rational, k: usize) -> LaurentPoly {
    let mut acc = LaurentPoly::one(1);
    let one = LaurentPoly::one(1);
    for j in 0..k {
        let c = x * qpow_k(q, j);
        let up = &one - &LaurentPoly::var(1, 0).scale(&c);
        let down = &one - &LaurentPoly::var_pow(1, 0, -1).scale(&c);
        acc = &(&acc * &up) * &down;
    }
    acc
}

/// `p_n(z; a, b, c, d | q)` with the standard normalization, written with
/// cleared denominators:
/// `a^{−n} Σ_k (q^{−n}, abcd q^{n−1}; q)_k q^k/(q; q)_k (ab q^k, ac q^k, ad q^k; q)_{n−k} (az, a/z; q)_k`.
pub fn aw_poly(n: usize, p: &AwParams) -> Result<LaurentPoly, QSeriesError> {
    if p.a.is_zero() {
        return Err(QSeriesError::NotApplicable("a = 0".into()));
    }
    let (a, q) = (&p.a, &p.q);
    let qinv_n = rpow(q, -(n as i64));
    let abcd = &p.a * &p.b * &p.c * &p.d;
    let top = &abcd * rpow(q, n as i64 - 1);
    let mut acc = LaurentPoly::zero(1);
    for k in 0..=n {
        let qq = qpoch(q, q, k);
        if qq.is_zero() {
            return Err(QSeriesError::Resonance(format!("(q;q)_{k} = 0")));
        }
        let qk = qpow_k(q, k);
        let coef = qpoch(&qinv_n, q, k) * qpoch(&top, q, k) * &qk / qq
            * qpoch(&(a * &p.b * &qk), q, n - k)
            * qpoch(&(a * &p.c * &qk), q, n - k)
            * qpoch(&(a * &p.d * &qk), q, n - k);
        if !coef.is_zero() {
            acc += &paired_poch(a, q, k).scale(&coef);
        }
    }
    Ok(acc.scale(&rpow(a, -(n as i64))))
}

/// `p_n` at a rational point `z`.
pub fn aw_value(n: usize, z: &Rational, p: &AwParams) -> Result<Rational, QSeriesError> {
    Ok(aw_poly(n, p)?.evaluate(std::slice::from_ref(z))?)
}

/// Terminating `₄φ₃(q^{−n}, u₁, u₂, u₃; l₁, l₂, l₃; q, q)`.
pub fn phi43_terminating(
    n: usize,
    upper: [&Rational; 3],
    lower: [&Rational; 3],
    q: &Rational,
) -> Result<Rational, QSeriesError> {
    let qinv_n = rpow(q, -(n as i64));
    let mut acc = Rational::zero();
    for k in 0..=n {
        let mut den = qpoch(q, q, k);
        for l in lower {
            den *= qpoch(l, q, k);
        }
        if den.is_zero() {
            return Err(QSeriesError::Resonance(format!("lower Pochhammer vanishes at k = {k}")));
        }
        let mut num = qpoch(&qinv_n, q, k) * qpow_k(q, k);
        for u in upper {
            num *= qpoch(u, q, k);
        }
        acc += num / den;
    }
    Ok(acc)
}

/// `p_n(z) = (ab, ac, ad; q)_n a^{−n} ₄φ₃(q^{−n}, abcd q^{n−1}, az, a/z; ab, ac, ad; q, q)`.
pub fn aw_via_phi43(n: usize, z: &Rational, p: &AwParams) -> Result<Rational, QSeriesError> {
    let (a, q) = (&p.a, &p.q);
    let (ab, ac, ad) = (a * &p.b, a * &p.c, a * &p.d);
    let top = &ab * &p.c * &p.d * rpow(q, n as i64 - 1);
    let phi = phi43_terminating(n, [&top, &(a * z), &(a / z)], [&ab, &ac, &ad], q)?;
    Ok(qpoch(&ab, q, n) * qpoch(&ac, q, n) * qpoch(&ad, q, n) * rpow(a, -(n as i64)) * phi)
}

/// `Q_n(z; a, b | q) = p_n(z; a, b, 0, 0 | q)`.
pub fn al_salam_chihara(n: usize, a: &Rational, b: &Rational, q: &Rational) -> Result<LaurentPoly, QSeriesError> {
    aw_poly(n, &AwParams::new(a.clone(), b.clone(), Rational::zero(), Rational::zero(), q.clone()))
}

/// `Q_n` from `Q_{n+1} + ((a+b)q^n − X) Q_n + (1 − q^n)(1 − ab q^{n−1}) Q_{n−1} = 0`
/// with `X = z + z⁻¹`.
pub fn al_salam_chihara_by_recurrence(n: usize, a: &Rational, b: &Rational, q: &Rational) -> LaurentPoly {
    let one = Rational::one();
    let x = &LaurentPoly::var(1, 0) + &LaurentPoly::var_pow(1, 0, -1);
    let mut prev = LaurentPoly::zero(1);
    let mut cur = LaurentPoly::one(1);
    for j in 0..n {
        let qj = rpow(q, j as i64);
        let shift = LaurentPoly::constant(1, (a + b) * &qj);
        let back = (&one - &qj) * (&one - a * b * rpow(q, j as i64 - 1));
        let next = &(&(&x - &shift) * &cur) - &prev.scale(&back);
        prev = cur;
        cur = next;
    }
    cur
}

/// `p_n(z)` in floating point from the monic three-term recurrence in
/// `X = z + z⁻¹`, rescaled by the leading coefficient `(abcd q^{n−1}; q)_n`.
pub fn aw_float(n: usize, z: Complex64, p: &AwFloat) -> Result<Complex64, QSeriesError> {
    let AwFloat { a, b, c, d, q } = *p;
    if a == 0.0 {
        return Err(QSeriesError::NotApplicable("a = 0".into()));
    }
    let abcd = a * b * c * d;
    let x = z + 1.0 / z;
    let big_a = |j: i32| {
        let qj = q.powi(j);
        (1.0 - a * b * qj) * (1.0 - a * c * qj) * (1.0 - a * d * qj) * (1.0 - abcd * q.powi(j - 1))
            / (a * (1.0 - abcd * q.powi(2 * j - 1)) * (1.0 - abcd * q.powi(2 * j)))
    };
    let big_c = |j: i32| {
        if j == 0 {
            return 0.0;
        }
        let qj = q.powi(j);
        a * (1.0 - qj)
            * (1.0 - b * c * q.powi(j - 1))
            * (1.0 - b * d * q.powi(j - 1))
            * (1.0 - c * d * q.powi(j - 1))
            / ((1.0 - abcd * q.powi(2 * j - 2)) * (1.0 - abcd * q.powi(2 * j - 1)))
    };
    let mut prev = Complex64::zero();
    let mut cur = Complex64::one();
    for j in 0..n as i32 {
        let aj = big_a(j);
        let cj = big_c(j);
        let back = if j > 0 { big_a(j - 1) * cj } else { 0.0 };
        let next = (x - (a + 1.0 / a - aj - cj)) * cur - back * prev;
        prev = cur;
        cur = next;
    }
    let mut lead = 1.0;
    for j in 0..n as i32 {
        lead *= 1.0 - abcd * q.powi(n as i32 - 1 + j);
    }
    let out = cur * lead;
    if !out.re.is_finite() || !out.im.is_finite() {
        return Err(QSeriesError::Resonance(format!("recurrence breaks down at n = {n}")));
    }
    Ok(out)
}

/// `p_n(e t^k)` for `e` the parameter in `slot`, from the terminating sum:
/// with `e` moved to the first slot, `(e/x; q)_j = (q^{−k}; q)_j` vanishes for
/// `j > k`. This is the stable route at points where the three-term
/// recurrence runs into its subdominant solution.
pub fn aw_float_at_parameter(n: usize, slot: usize, k: usize, p: &AwFloat) -> Result<f64, QSeriesError> {
    let mut v = p.params();
    v.swap(0, slot);
    let [a, b, c, d] = v;
    if a == 0.0 {
        return Err(QSeriesError::NotApplicable("parameter is zero".into()));
    }
    let q = p.q;
    let x = a * q.powi(k as i32);
    let poch = |y: f64, len: usize| (0..len).fold(1.0, |acc, j| acc * (1.0 - y * q.powi(j as i32)));
    let abcd = a * b * c * d;
    let mut acc = 0.0;
    for j in 0..=k.min(n) {
        let qj = q.powi(j as i32);
        acc += poch(q.powi(-(n as i32)), j) * poch(abcd * q.powi(n as i32 - 1), j) * qj / poch(q, j)
            * poch(a * b * qj, n - j)
            * poch(a * c * qj, n - j)
            * poch(a * d * qj, n - j)
            * poch(a * x, j)
            * poch(a / x, j);
    }
    Ok(acc / a.powi(n as i32))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, q, to_f64};

    fn params() -> AwParams {
        AwParams::new(q(-2, 3), q(1, 3), q(-1, 4), q(2, 5), q(1, 4))
    }

    #[test]
    fn p0_is_one_and_symmetric() {
        let p = params();
        assert_eq!(aw_poly(0, &p).unwrap(), LaurentPoly::one(1));
        for n in 1..=6 {
            assert!(aw_poly(n, &p).unwrap().is_inversion_symmetric(0));
        }
    }

    #[test]
    fn p1_two_term_expansion() {
        // k = 0 and k = 1 terms written out by hand.
        let p = params();
        let (a, b, c, d, qq) = (&p.a, &p.b, &p.c, &p.d, &p.q);
        let one = int(1);
        let z = q(7, 3);
        let abcd = a * b * c * d;
        let k0 = (&one - a * b) * (&one - a * c) * (&one - a * d);
        let k1 = (&one - qq.recip()) * (&one - &abcd) * qq / (&one - qq)
            * (&one - a * &z)
            * (&one - a / &z);
        assert_eq!(aw_value(1, &z, &p).unwrap(), (k0 + k1) / a);
    }

    #[test]
    fn phi43_matches_cleared_form() {
        let p = params();
        for n in 0..=6 {
            let z = q(5, 2);
            assert_eq!(aw_via_phi43(n, &z, &p).unwrap(), aw_value(n, &z, &p).unwrap());
        }
    }

    #[test]
    fn phi43_lower_symmetry() {
        let (u, l) = ([q(1, 3), q(2, 7), q(-5, 3)], [q(3, 11), q(-1, 2), q(4, 9)]);
        let qq = q(1, 5);
        let base = phi43_terminating(4, [&u[0], &u[1], &u[2]], [&l[0], &l[1], &l[2]], &qq).unwrap();
        let perm = phi43_terminating(4, [&u[0], &u[1], &u[2]], [&l[2], &l[0], &l[1]], &qq).unwrap();
        assert_eq!(base, perm);
    }

    #[test]
    fn asc_recurrence_with_laurent_variable() {
        let (a, b, qq) = (q(-2, 1), q(1, 3), q(1, 4));
        for n in 0..=8 {
            let direct = al_salam_chihara(n, &a, &b, &qq).unwrap();
            assert_eq!(direct, al_salam_chihara_by_recurrence(n, &a, &b, &qq), "n={n}");
        }
    }

    #[test]
    fn asc_recurrence_fails_with_half_variable() {
        // Reading the recurrence variable as (z + 1/z)/2 instead.
        let (a, b, qq) = (q(-2, 1), q(1, 3), q(1, 4));
        let x = (&LaurentPoly::var(1, 0) + &LaurentPoly::var_pow(1, 0, -1)).scale(&q(1, 2));
        let q1 = &x.scale(&int(2)) - &LaurentPoly::constant(1, &a + &b);
        let alt = &x - &LaurentPoly::constant(1, &a + &b);
        assert_eq!(al_salam_chihara(1, &a, &b, &qq).unwrap(), q1);
        assert_ne!(al_salam_chihara(1, &a, &b, &qq).unwrap(), alt);
    }

    #[test]
    fn value_at_parameter_matches_exact() {
        let p = params();
        let pf = p.to_float();
        for n in 0..=6 {
            for (slot, e) in [(0, &p.a), (2, &p.c)] {
                for k in 0..3 {
                    let x = e * rpow(&p.q, k as i64);
                    let exact = to_f64(&aw_value(n, &x, &p).unwrap());
                    let v = aw_float_at_parameter(n, slot, k, &pf).unwrap();
                    assert!((v - exact).abs() <= 1e-12 * exact.abs().max(1.0), "n={n} slot={slot} k={k}");
                }
            }
        }
    }

    #[test]
    fn float_recurrence_matches_exact() {
        let p = params();
        let pf = p.to_float();
        for n in 0..=8 {
            let z = q(9, 4);
            let e = to_f64(&aw_value(n, &z, &p).unwrap());
            let f = aw_float(n, Complex64::new(2.25, 0.0), &pf).unwrap();
            assert!((f.re - e).abs() <= 1e-12 * e.abs().max(1.0), "n={n}: {} vs {e}", f.re);
        }
    }
}
