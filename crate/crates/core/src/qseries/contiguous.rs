use std::collections::HashMap;

use num_traits::One;
use serde_json::json;

use super::askey_wilson::{al_salam_chihara, aw_poly, AwParams};
use super::QSeriesError;
use crate::exact::{format_rational, rpow, LaurentPoly, Rational};
use crate::hecke::RelationReport;

fn z() -> LaurentPoly {
    LaurentPoly::var(1, 0)
}

fn zinv() -> LaurentPoly {
    LaurentPoly::var_pow(1, 0, -1)
}

fn konst(c: Rational) -> LaurentPoly {
    LaurentPoly::constant(1, c)
}

/// `1 − x z`.
fn lin(x: &Rational) -> LaurentPoly {
    &LaurentPoly::one(1) - &z().scale(x)
}

/// `∂_{c,d} F = (F(c, d) − F(d, c)) / (c − d)`.
pub fn divided_difference_cd<F>(mut f: F, c: &Rational, d: &Rational) -> Result<LaurentPoly, QSeriesError>
where
    F: FnMut(&Rational, &Rational) -> Result<LaurentPoly, QSeriesError>,
{
    let diff = &f(c, d)? - &f(d, c)?;
    Ok(diff.scale(&(c - d).recip()))
}

fn p_at(m: Option<usize>, p: &AwParams, c: &Rational, d: &Rational) -> Result<LaurentPoly, QSeriesError> {
    match m {
        Some(m) => aw_poly(m, &p.with_cd(c.clone(), d.clone())),
        None => Ok(LaurentPoly::zero(1)),
    }
}

/// `(z − c)(zc − 1)/z`.
fn zc_factor(c: &Rational) -> LaurentPoly {
    let l = &z() - &konst(c.clone());
    let r = &z().scale(c) - &LaurentPoly::one(1);
    &(&l * &r) * &zinv()
}

/// `P_m(sz; sa, sb, sc, sd)` with base `q = s²`.
fn half_shifted(m: usize, p: &AwParams, s: &Rational) -> Result<LaurentPoly, QSeriesError> {
    let sh = AwParams::new(s * &p.a, s * &p.b, s * &p.c, s * &p.d, p.q.clone());
    Ok(aw_poly(m, &sh)?.scale_var(0, s))
}

fn theta_mm(m: usize, p: &AwParams, sm: &Rational) -> LaurentPoly {
    let (a, b, c, q) = (&p.a, &p.b, &p.c, &p.q);
    let one = Rational::one();
    let qm = rpow(q, m as i64);
    let lead = &konst(a * b * c * &qm) - &z();
    let poly = &(&(&lead * &lin(a)) * &lin(b)) * &lin(c);
    let den = (&one - a * b * &qm) * (&one - a * c * &qm) * (&one - b * c * &qm);
    (&poly * &LaurentPoly::var_pow(1, 0, -2)).scale(&(sm / den))
}

fn theta_m1(p: &AwParams, sm: &Rational) -> LaurentPoly {
    let poly = &(&(&lin(&p.a) * &lin(&p.b)) * &lin(&p.c)) * &lin(&p.d);
    (&poly * &LaurentPoly::var_pow(1, 0, -2)).scale(&-sm)
}

/// Whether the two `∂_z` relations hold with the weight `q^{−m/2}` in place
/// of `q^{m/2}`.
pub fn theta_inverse_weight_holds(m: usize, p: &AwParams, s: &Rational) -> Result<bool, QSeriesError> {
    let inv = rpow(s, -(m as i64));
    let sh = half_shifted(m, p, s)?;
    let lhs = aw_poly(m, &p.with_cd(p.c.clone(), &p.q * &p.d))?;
    let rhs = (&theta_mm(m, p, &inv) * &sh).reflection_difference(0);
    let lhs2 = aw_poly(m + 1, p)?;
    let rhs2 = (&theta_m1(p, &inv) * &sh).reflection_difference(0);
    Ok(lhs == rhs && lhs2 == rhs2)
}

/// `p_n` built from `p_0 = 1` by `P_{m+1}(c, d) = ∂_{c,d}(ω^{(m+1,m)} P_m(qc, d))`.
pub fn chained_aw_poly(n: usize, p: &AwParams) -> Result<LaurentPoly, QSeriesError> {
    let mut memo = HashMap::new();
    chain(n, p, &p.c, &p.d, &mut memo)
}

type Memo = HashMap<(usize, Rational, Rational), LaurentPoly>;

fn chain(n: usize, p: &AwParams, c: &Rational, d: &Rational, memo: &mut Memo) -> Result<LaurentPoly, QSeriesError> {
    if n == 0 {
        return Ok(LaurentPoly::one(1));
    }
    let key = (n, c.clone(), d.clone());
    if let Some(v) = memo.get(&key) {
        return Ok(v.clone());
    }
    let m = n - 1;
    let (a, b, q) = (&p.a, &p.b, &p.q);
    let qm = rpow(q, m as i64);
    let one = Rational::one();
    let v = divided_difference_cd(
        |x, y| {
            let w = zc_factor(x).scale(&((&one - a * y * &qm) * (&one - b * y * &qm)));
            Ok(&w * &chain(m, p, &(q * x), y, memo)?)
        },
        c,
        d,
    )?;
    memo.insert(key, v.clone());
    Ok(v)
}

/// The `∂_{c,d}` and `∂_z` contiguous relations, the partition-function
/// contiguous relation, and two Al-Salam–Chihara relations, for every `m` in
/// `ms`. `q` must equal `s²`.
pub fn contiguous_relation_suite(
    p: &AwParams,
    s: &Rational,
    ms: impl IntoIterator<Item = usize>,
) -> Result<Vec<RelationReport>, QSeriesError> {
    if s * s != p.q {
        return Err(QSeriesError::NotApplicable("base must equal s²".into()));
    }
    let (a, b, c, d, q) = (&p.a, &p.b, &p.c, &p.d, &p.q);
    let one = Rational::one();
    let point = |m: usize| {
        json!({
            "m": m,
            "a": format_rational(a), "b": format_rational(b),
            "c": format_rational(c), "d": format_rational(d),
            "s": format_rational(s),
        })
    };
    let mut out = Vec::new();
    for m in ms {
        let qm = rpow(q, m as i64);
        let sm = rpow(s, m as i64);
        let pm = aw_poly(m, p)?;
        let pm1 = aw_poly(m + 1, p)?;
        let lower = m.checked_sub(1);
        let pmq = |x: &Rational, y: &Rational| p_at(Some(m), p, &(q * x), y);

        let r = divided_difference_cd(
            |x, y| {
                let w = zc_factor(x).scale(&(x * y / ((&one - x * y * &qm) * x)));
                Ok(&w * &pmq(x, y)?)
            },
            c,
            d,
        )?;
        out.push(RelationReport::new("omega (m,m)", point(m), r == pm));

        if m >= 1 {
            let w = ((&one - &qm) * (&one - a * b * rpow(q, m as i64 - 1))).recip();
            let r = divided_difference_cd(|x, y| Ok(pmq(x, y)?.scale(&w)), c, d)?;
            let target = p_at(lower, p, &(q * c), &(q * d))?;
            out.push(RelationReport::new("omega (m-1,m)", point(m), r == target));
        }

        let r = divided_difference_cd(
            |x, y| {
                let w = zc_factor(x).scale(&((&one - a * y * &qm) * (&one - b * y * &qm)));
                Ok(&w * &pmq(x, y)?)
            },
            c,
            d,
        )?;
        out.push(RelationReport::new("omega (m+1,m)", point(m), r == pm1));

        let sh = half_shifted(m, p, s)?;
        let target = aw_poly(m, &p.with_cd(c.clone(), q * d))?;
        let r = (&theta_mm(m, p, &sm) * &sh).reflection_difference(0);
        out.push(RelationReport::new("theta (m,m)", point(m), r == target));
        let r = (&theta_m1(p, &sm) * &sh).reflection_difference(0);
        out.push(RelationReport::new("theta (m+1,m)", point(m), r == pm1));

        if m >= 1 {
            let x = &(&z() + &zinv()) - &konst(d + d.recip());
            let k = c * d * (&one - &qm) * (&one - a * b * rpow(q, m as i64 - 1));
            let res = &(&pm.scale(&(&one - c * d * &qm)) - &pmq(c, d)?.scale(&(&one - c * d)))
                - &(&x * &p_at(lower, p, &(q * c), &(q * d))?).scale(&k);
            out.push(RelationReport::new("partition contiguous relation", point(m), res.is_zero()));
        }

        let qn = al_salam_chihara(m, a, b, q)?;
        let qn1 = al_salam_chihara(m + 1, a, b, q)?;
        let abq = &one - a * b * &qm;
        let x = &(&z() + &zinv()) - &konst(a + a.recip());
        let res = &(&qn1.scale(a) - &qn.scale(&abq))
            - &(&x * &al_salam_chihara(m, &(q * a), b, q)?).scale(a);
        out.push(RelationReport::new("Al-Salam-Chihara shift in a", point(m), res.is_zero()));
        let shq = al_salam_chihara(m, &(s * a), &(s * b), q)?.scale_var(0, s);
        let fac = &(&lin(a) * &lin(b)) * &zinv();
        let res = &(&qn1 - &(&z() * &qn).scale(&abq)) - &(&fac * &shq).scale(&sm);
        out.push(RelationReport::new("Al-Salam-Chihara half shift", point(m), res.is_zero()));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::q;

    fn params() -> (AwParams, Rational) {
        let s = q(1, 2);
        (AwParams::new(q(-2, 1), q(1, 3), q(-1, 3), q(1, 5), &s * &s), s)
    }

    #[test]
    fn suite_passes() {
        let (p, s) = params();
        let rep = contiguous_relation_suite(&p, &s, 0..=5).unwrap();
        let bad: Vec<_> = rep.iter().filter(|r| !r.pass).collect();
        assert!(bad.is_empty(), "{bad:?}");
        assert_eq!(rep.len(), 6 * 6 + 5 * 2);
    }

    #[test]
    fn inverse_theta_weight_fails() {
        let (p, s) = params();
        assert!(theta_inverse_weight_holds(0, &p, &s).unwrap());
        assert!(!theta_inverse_weight_holds(2, &p, &s).unwrap());
    }

    #[test]
    fn chain_matches_definition() {
        let (p, _) = params();
        for n in 0..=6 {
            assert_eq!(chained_aw_poly(n, &p).unwrap(), aw_poly(n, &p).unwrap(), "n={n}");
        }
    }

    #[test]
    fn omega_lowest_case() {
        let (p, _) = params();
        let w = (&Rational::one() - &p.q) * (&Rational::one() - &p.a * &p.b);
        let r = divided_difference_cd(
            |x, y| Ok(aw_poly(1, &p.with_cd(&p.q * x, y.clone()))?.scale(&w.recip())),
            &p.c,
            &p.d,
        )
        .unwrap();
        assert_eq!(r, LaurentPoly::one(1));
    }
}
