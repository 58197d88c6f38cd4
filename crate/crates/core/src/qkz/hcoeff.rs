use num_traits::{One, Zero};

use crate::exact::{qpoch, rpow, ParamPoint, Rational};

use super::QkzError;

/// `h_0..h_nmax` for boundary parameters `(a, b, c, d)` and base `t`, from the
/// three-term recursion
/// `(t^{n−1}ab − 1/(cd)) h_n + (t^{n−1}(a+b) − (1/c+1/d)) h_{n−1} + (t^{n−1}−1) h_{n−2} = 0`.
pub fn h_table(
    nmax: usize,
    a: &Rational,
    b: &Rational,
    c: &Rational,
    d: &Rational,
    t: &Rational,
) -> Result<Vec<Rational>, QkzError> {
    if c.is_zero() || d.is_zero() {
        return Err(QkzError::Resonance { n: 0 });
    }
    let inv_cd = (c * d).recip();
    let inv_sum = c.recip() + d.recip();
    let mut h = vec![Rational::one()];
    let mut tp = Rational::one(); // t^{n−1}
    for n in 1..=nmax {
        let lead = &tp * a * b - &inv_cd;
        if lead.is_zero() {
            return Err(QkzError::Resonance { n });
        }
        let mid = &tp * (a + b) - &inv_sum;
        let mut acc = mid * &h[n - 1];
        if n >= 2 {
            acc += (&tp - Rational::one()) * &h[n - 2];
        }
        h.push(-acc / lead);
        tp *= t;
    }
    Ok(h)
}

/// `h_n` at a parameter point.
pub fn h_coeff(n: usize, params: &ParamPoint) -> Result<Rational, QkzError> {
    let h = h_table(n, params.a(), params.b(), params.c(), params.d(), params.t())?;
    Ok(h[n].clone())
}

/// Table `h_0..h_nmax` tied to a parameter point.
#[derive(Clone, Debug)]
pub struct HCoeffTable {
    pub params: ParamPoint,
    pub values: Vec<Rational>,
}

impl HCoeffTable {
    pub fn new(params: &ParamPoint, nmax: usize) -> Result<Self, QkzError> {
        Ok(HCoeffTable {
            params: params.clone(),
            values: h_table(nmax, params.a(), params.b(), params.c(), params.d(), params.t())?,
        })
    }
}

/// `(t;t)_n / ((t;t)_i (t;t)_j (t;t)_k (t;t)_{n−i−j−k})`.
pub fn q_multinomial(n: usize, i: usize, j: usize, k: usize, t: &Rational) -> Rational {
    assert!(i + j + k <= n);
    let f = |r: usize| qpoch(t, t, r);
    f(n) / (f(i) * f(j) * f(k) * f(n - i - j - k))
}

/// Closed form of `h_n` as a `t`-multinomial sum over `i + j + k ≤ n`:
/// `(abcd;t)_n⁻¹ Σ [n; i,j,k]_t t^{C(i,2)+C(j,2)} a^i b^j (−c)^{n−k} (−d)^{i+j+k}`.
pub fn h_closed_form(
    n: usize,
    a: &Rational,
    b: &Rational,
    c: &Rational,
    d: &Rational,
    t: &Rational,
) -> Result<Rational, QkzError> {
    let den = qpoch(&(a * b * c * d), t, n);
    if den.is_zero() {
        return Err(QkzError::Resonance { n });
    }
    let binom2 = |x: usize| (x * x.saturating_sub(1) / 2) as i64;
    let mut s = Rational::zero();
    for i in 0..=n {
        for j in 0..=n - i {
            for k in 0..=n - i - j {
                let term = q_multinomial(n, i, j, k, t)
                    * rpow(t, binom2(i) + binom2(j))
                    * rpow(a, i as i64)
                    * rpow(b, j as i64)
                    * rpow(&-c.clone(), (n - k) as i64)
                    * rpow(&-d.clone(), (i + j + k) as i64);
                s += term;
            }
        }
    }
    Ok(s / den)
}

/// `h_1 = (a + b − 1/c − 1/d) / (1/(cd) − ab)`.
pub fn h1_formula(a: &Rational, b: &Rational, c: &Rational, d: &Rational) -> Rational {
    (a + b - c.recip() - d.recip()) / ((c * d).recip() - a * b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, q};

    #[test]
    fn first_terms() {
        let (a, b, c, d, t) = (int(-2), q(1, 3), q(-3, 5), q(1, 4), q(1, 4));
        let h = h_table(3, &a, &b, &c, &d, &t).unwrap();
        assert_eq!(h[0], int(1));
        assert_eq!(h[1], h1_formula(&a, &b, &c, &d));
        for (n, hn) in h.iter().enumerate() {
            assert_eq!(&h_closed_form(n, &a, &b, &c, &d, &t).unwrap(), hn);
        }
    }

    #[test]
    fn resonance_is_reported() {
        // abcd = 1 makes the n = 1 leading coefficient vanish
        let r = h_table(2, &int(2), &int(1), &int(1), &q(1, 2), &q(1, 4));
        assert!(matches!(r, Err(QkzError::Resonance { n: 1 })));
    }
}
