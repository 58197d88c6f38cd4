//! Yang–Baxter, reflection, unitarity and scattering-matrix checks at exact
//! rational points.

use num_traits::One;
use serde_json::json;

use super::matrix::SparseMatrix;
use super::operators::{
    k_left_matrix, k_right_matrix, markov_matrix, r_matrix, scattering_derivative_at_one,
    scattering_operator,
};
use super::{ModelError, Sector, SparseExactMatrix};
use crate::exact::{format_rational, ParamPoint, ParamRecord, Rational};
use crate::report::RelationReport;

fn prod(ms: &[SparseExactMatrix]) -> Result<SparseExactMatrix, ModelError> {
    let mut it = ms.iter();
    let first = it.next().expect("non-empty product").clone();
    it.try_fold(first, |acc, m| acc.mul(m))
}

fn point(params: &ParamPoint, sector: &Sector, extra: &[&Rational]) -> serde_json::Value {
    json!({
        "params": ParamRecord::from(params),
        "N": sector.n(),
        "m": sector.m(),
        "at": extra.iter().map(|x| format_rational(x)).collect::<Vec<_>>(),
    })
}

/// For spectral ratios `x, y`:
/// * `R_i(x) R_{i+1}(xy) R_i(y) = R_{i+1}(y) R_i(xy) R_{i+1}(x)`;
/// * `R_i(x) R_i(1/x) = 1`, `K_1(x) K_1(1/x) = 1`, `K_N(x) K_N(1/x) = 1`;
/// * `R_1(y/x) K_1(x) R_1(1/(xy)) K_1(y) = K_1(y) R_1(1/(xy)) K_1(x) R_1(y/x)`;
/// * `R_{N−1}(x/y) K_N(x) R_{N−1}(xy) K_N(y) = K_N(y) R_{N−1}(xy) K_N(x) R_{N−1}(x/y)`.
pub fn verify_local_relations(
    sector: &Sector,
    params: &ParamPoint,
    x: &Rational,
    y: &Rational,
) -> Result<Vec<RelationReport>, ModelError> {
    let n = sector.n();
    let id = SparseMatrix::identity(sector.dim(), Rational::one());
    let pt = point(params, sector, &[x, y]);
    let (xy, x_y) = (x * y, x / y);
    let (inv_xy, y_x) = (xy.recip(), y / x);
    let mut out = Vec::new();
    let r = |i: usize, z: &Rational| r_matrix(sector, i, z, params);
    let kl = |z: &Rational| k_left_matrix(sector, z, params);
    let kr = |z: &Rational| k_right_matrix(sector, z, params);

    for i in 1..n.saturating_sub(1) {
        let lhs = prod(&[r(i, x)?, r(i + 1, &xy)?, r(i, y)?])?;
        let rhs = prod(&[r(i + 1, y)?, r(i, &xy)?, r(i + 1, x)?])?;
        out.push(RelationReport::new(format!("Yang-Baxter i={i}"), pt.clone(), lhs == rhs));
    }
    for i in 1..n {
        let u = r(i, x)?.mul(&r(i, &x.recip())?)?;
        out.push(RelationReport::new(format!("R unitarity i={i}"), pt.clone(), u == id));
    }
    if n >= 1 {
        let u = kl(x)?.mul(&kl(&x.recip())?)?;
        out.push(RelationReport::new("K_1 unitarity", pt.clone(), u == id));
        let u = kr(x)?.mul(&kr(&x.recip())?)?;
        out.push(RelationReport::new("K_N unitarity", pt.clone(), u == id));
    }
    if n >= 2 {
        let lhs = prod(&[r(1, &y_x)?, kl(x)?, r(1, &inv_xy)?, kl(y)?])?;
        let rhs = prod(&[kl(y)?, r(1, &inv_xy)?, kl(x)?, r(1, &y_x)?])?;
        out.push(RelationReport::new("left reflection equation", pt.clone(), lhs == rhs));
        let j = n - 1;
        let lhs = prod(&[r(j, &x_y)?, kr(x)?, r(j, &xy)?, kr(y)?])?;
        let rhs = prod(&[kr(y)?, r(j, &xy)?, kr(x)?, r(j, &x_y)?])?;
        out.push(RelationReport::new("right reflection equation", pt, lhs == rhs));
    }
    Ok(out)
}

/// `S_i S_j = S_j S_i` at a rational point `z`.
pub fn verify_scattering_commutation(
    sector: &Sector,
    params: &ParamPoint,
    z: &[Rational],
) -> Result<Vec<RelationReport>, ModelError> {
    let n = sector.n();
    let s: Vec<SparseExactMatrix> =
        (1..=n).map(|i| scattering_operator(sector, i, z, params)).collect::<Result<_, _>>()?;
    let pt = point(params, sector, &z.iter().collect::<Vec<_>>());
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let ok = s[i].mul(&s[j])? == s[j].mul(&s[i])?;
            out.push(RelationReport::new(format!("S_{} S_{} commute", i + 1, j + 1), pt.clone(), ok));
        }
    }
    Ok(out)
}

/// `S_i'(1) = 2/(t^{1/2} − t^{−1/2}) · M` for every `i`.
pub fn verify_scattering_derivative(sector: &Sector, params: &ParamPoint) -> Result<Vec<RelationReport>, ModelError> {
    let m = markov_matrix(sector, params, false)?;
    let target = m.scale(&(Rational::from_integer(2.into()) / params.bulk_gap()));
    let pt = point(params, sector, &[]);
    (1..=sector.n())
        .map(|i| {
            let d = scattering_derivative_at_one(sector, i, params)?;
            Ok(RelationReport::new(format!("S_{i}'(1) = 2M/(s - 1/s)"), pt.clone(), d == target))
        })
        .collect()
}
