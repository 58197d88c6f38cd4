//! Scaled Noumi representation of the affine Hecke algebra of type C̃_N on
//! Laurent polynomials.
//!
//! Only the scaled generators `A_i = t_i^{1/2} T̂_i` are exposed; they have
//! rational coefficients even when `t_0^{1/2}` is irrational. Generator
//! indices run over `0..=N`, variables are `z_1..z_N`.

use num_traits::{One, Zero};
use serde_json::json;

use crate::exact::{LaurentPoly, ParamPoint, ParamRecord, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HeckeError {
    #[error("generator index {i} out of range 0..={n}")]
    Index { i: usize, n: usize },
    #[error("t_{0} vanishes, generator is not invertible")]
    Singular(usize),
    #[error("no variables to act on")]
    Empty,
}

/// Hecke parameter `t_i`: `−ab` at 0, `−cd` at N, `t` in the bulk.
pub fn t_param(i: usize, n: usize, params: &ParamPoint) -> Rational {
    if i == 0 {
        -(params.a() * params.b())
    } else if i == n {
        -(params.c() * params.d())
    } else {
        params.t().clone()
    }
}

/// `A_i p`.
///
/// * bulk: `A_i = t − (t z_i − z_{i+1}) ∂_i`
/// * left: `A_0 = t_0 − ((z_1−a)(z_1−b)/z_1) ∂_0`
/// * right: `A_N = t_N + ((c z_N−1)(d z_N−1)/z_N) ∂_N`
pub fn apply_scaled_gen(
    i: usize,
    p: &LaurentPoly,
    params: &ParamPoint,
) -> Result<LaurentPoly, HeckeError> {
    let n = p.nvars();
    if n == 0 {
        return Err(HeckeError::Empty);
    }
    if i > n {
        return Err(HeckeError::Index { i, n });
    }
    let ti = t_param(i, n, params);
    if p.is_zero() {
        return Ok(p.clone());
    }
    let base = p.scale(&ti);
    if i == 0 {
        let fac = pole_factor(n, 0, &Rational::one(), &-(params.a() + params.b()), &(params.a() * params.b()));
        Ok(&base - &(&fac * &p.reflection_difference(0)))
    } else if i == n {
        let cd = params.c() * params.d();
        let fac = pole_factor(n, n - 1, &cd, &-(params.c() + params.d()), &Rational::one());
        Ok(&base + &(&fac * &p.reflection_difference(n - 1)))
    } else {
        let fac = &LaurentPoly::var(n, i - 1).scale(params.t()) - &LaurentPoly::var(n, i);
        Ok(&base - &(&fac * &p.divided_difference(i - 1, i)))
    }
}

/// `u z + v + w/z` in variable `var`.
fn pole_factor(n: usize, var: usize, u: &Rational, v: &Rational, w: &Rational) -> LaurentPoly {
    &(&LaurentPoly::var(n, var).scale(u) + &LaurentPoly::constant(n, v.clone()))
        + &LaurentPoly::var_pow(n, var, -1).scale(w)
}

/// `A_i⁻¹ = t_i⁻¹ (A_i − (t_i − 1))`.
pub fn apply_scaled_gen_inverse(
    i: usize,
    p: &LaurentPoly,
    params: &ParamPoint,
) -> Result<LaurentPoly, HeckeError> {
    let n = p.nvars();
    let ti = t_param(i, n, params);
    if ti.is_zero() {
        return Err(HeckeError::Singular(i));
    }
    let a = apply_scaled_gen(i, p, params)?;
    Ok((&a - &p.scale(&(&ti - Rational::one()))).scale(&ti.recip()))
}

/// Applies the operator product `A_{w_1} A_{w_2} … A_{w_r}` (rightmost first).
pub fn apply_word(
    word: &[usize],
    p: &LaurentPoly,
    params: &ParamPoint,
) -> Result<LaurentPoly, HeckeError> {
    word.iter()
        .rev()
        .try_fold(p.clone(), |acc, &i| apply_scaled_gen(i, &acc, params))
}

pub use crate::report::RelationReport;

/// All Laurent monomials in `n` variables with `Σ|e_i| ≤ degree`.
pub fn monomial_basis(n: usize, degree: u32) -> Vec<LaurentPoly> {
    let mut out = Vec::new();
    let mut exp = vec![0i32; n];
    fn rec(pos: usize, left: i32, exp: &mut Vec<i32>, out: &mut Vec<LaurentPoly>) {
        if pos == exp.len() {
            out.push(LaurentPoly::monomial(exp.clone(), Rational::one()));
            return;
        }
        for e in -left..=left {
            exp[pos] = e;
            rec(pos + 1, left - e.abs(), exp, out);
        }
        exp[pos] = 0;
    }
    rec(0, degree as i32, &mut exp, &mut out);
    out
}

fn word_name(w: &[usize]) -> String {
    w.iter().map(|i| format!("A{i}")).collect::<Vec<_>>().join("")
}

/// Quadratic, far commutation, braid and boundary braid relations, each
/// checked as an operator identity on the monomial basis of the given degree.
pub fn verify_hecke_relations(
    n: usize,
    params: &ParamPoint,
    degree: u32,
) -> Result<Vec<RelationReport>, HeckeError> {
    let basis = monomial_basis(n, degree);
    let point = json!({"N": n, "degree": degree, "params": ParamRecord::from(params)});
    let mut reports = Vec::new();

    for i in 0..=n {
        let ti = t_param(i, n, params);
        let mut ok = true;
        for p in &basis {
            let a1 = apply_scaled_gen(i, p, params)?;
            let a2 = apply_scaled_gen(i, &a1, params)?;
            let rhs = &a1.scale(&(&ti - Rational::one())) + &p.scale(&ti);
            ok &= a2 == rhs;
        }
        reports.push(RelationReport::new(format!("quadratic A{i}"), point.clone(), ok));
    }

    let mut pairs: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
    for i in 0..=n {
        for j in i + 2..=n {
            pairs.push((vec![i, j], vec![j, i]));
        }
    }
    for i in 1..n.saturating_sub(1) {
        pairs.push((vec![i, i + 1, i], vec![i + 1, i, i + 1]));
    }
    if n >= 2 {
        pairs.push((vec![0, 1, 0, 1], vec![1, 0, 1, 0]));
        pairs.push((vec![n - 1, n, n - 1, n], vec![n, n - 1, n, n - 1]));
    }
    for (l, r) in pairs {
        let mut ok = true;
        for p in &basis {
            ok &= apply_word(&l, p, params)? == apply_word(&r, p, params)?;
        }
        let name = format!("{} = {}", word_name(&l), word_name(&r));
        reports.push(RelationReport::new(name, point.clone(), ok));
    }
    Ok(reports)
}

/// The cycle `A_k A_{k+1} … A_{N−1} A_N A_{N−1} … A_1 A_0`, written left to right.
pub fn cycle_word(k: usize, n: usize) -> Vec<usize> {
    let mut w: Vec<usize> = (k..=n).collect();
    w.extend((0..n).rev());
    w
}

/// Scalar by which the scaled cycle acts on `E_{μ(k,m)}`.
///
/// For `k ≥ 1` it is exactly 1. For `k = 0` the reference polynomial is the
/// constant 1, every generator acts by `t_i`, and the scalar is the product
/// of the `t_i` along the word.
pub fn cycle_scalar(k: usize, n: usize, params: &ParamPoint) -> Rational {
    if k == 0 {
        cycle_word(0, n)
            .iter()
            .fold(Rational::one(), |acc, &i| acc * t_param(i, n, params))
    } else {
        Rational::one()
    }
}

/// Residual `(cycle)·E − λ·E` for the reference polynomial `E = E_{μ(k,m)}`.
pub fn cycle_operator_check(
    k: usize,
    m: usize,
    params: &ParamPoint,
) -> Result<LaurentPoly, crate::qkz::QkzError> {
    let n = k + m;
    let e = crate::qkz::reference_component(k, m, params)?;
    let lhs = apply_word(&cycle_word(k, n), &e, params)?;
    Ok(&lhs - &e.scale(&cycle_scalar(k, n, params)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, q};

    fn params() -> ParamPoint {
        ParamPoint::new(q(1, 2), int(-2), q(1, 3), q(-3, 5), q(1, 4)).unwrap()
    }

    #[test]
    fn symmetric_inputs_are_eigenvectors() {
        let p = params();
        let n = 3;
        let sym = &LaurentPoly::var(n, 0) * &LaurentPoly::var(n, 1);
        assert_eq!(apply_scaled_gen(1, &sym, &p).unwrap(), sym.scale(p.t()));
        let inv = &LaurentPoly::var(n, 0) + &LaurentPoly::var_pow(n, 0, -1);
        assert_eq!(apply_scaled_gen(0, &inv, &p).unwrap(), inv.scale(&t_param(0, n, &p)));
        let invn = &LaurentPoly::var(n, 2) + &LaurentPoly::var_pow(n, 2, -1);
        assert_eq!(apply_scaled_gen(3, &invn, &p).unwrap(), invn.scale(&t_param(3, n, &p)));
    }

    #[test]
    fn bulk_generator_on_z2() {
        // ∂_1 z_2 = −1, so A_1 z_2 = t z_1 + (t − 1) z_2
        let p = params();
        let z2 = LaurentPoly::var(2, 1);
        let t = p.t();
        let want = &LaurentPoly::var(2, 0).scale(t) + &z2.scale(&(t - Rational::one()));
        assert_eq!(apply_scaled_gen(1, &z2, &p).unwrap(), want);
    }

    #[test]
    fn inverse_round_trip() {
        let p = params();
        let n = 2;
        for poly in monomial_basis(n, 2) {
            for i in 0..=n {
                let a = apply_scaled_gen(i, &poly, &p).unwrap();
                assert_eq!(apply_scaled_gen_inverse(i, &a, &p).unwrap(), poly);
            }
        }
    }

    #[test]
    fn relations_hold_small() {
        let p = params();
        for n in 1..=3 {
            for r in verify_hecke_relations(n, &p, 2).unwrap() {
                assert!(r.pass, "{} failed at N = {n}", r.relation);
            }
        }
        // N = 1 has only the two quadratic relations
        assert_eq!(verify_hecke_relations(1, &p, 1).unwrap().len(), 2);
    }

    #[test]
    fn basis_counts() {
        assert_eq!(monomial_basis(1, 3).len(), 7);
        assert_eq!(monomial_basis(2, 1).len(), 5);
    }
}
