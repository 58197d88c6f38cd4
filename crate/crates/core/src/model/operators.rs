use num_traits::{One, Zero};

use crate::exact::{LaurentPoly, ParamPoint, Rational};

use super::config::{Configuration, Site};
use super::matrix::{SparseExactMatrix, SparseMatrix};
use super::{ModelError, Sector};

/// Local generator `e_i` on bonds `(i, i+1)`, 1-based `1 ≤ i ≤ N−1`.
/// A pair `(x, y)` with `x > y` exchanges at rate `s`, otherwise at `1/s`.
pub fn bulk_generator(sector: &Sector, i: usize, params: &ParamPoint) -> SparseExactMatrix {
    let n = sector.n();
    assert!(i >= 1 && i < n, "bond index out of range");
    let fast = params.s().clone();
    let slow = params.s().recip();
    local(sector, |c| {
        let (x, y) = (c.site(i - 1), c.site(i));
        if x == y {
            None
        } else {
            let r = if x > y { fast.clone() } else { slow.clone() };
            Some((c.swapped(i - 1), r))
        }
    })
}

/// Boundary generator at site `pos` (0-based) with rates `◦→•` and `•→◦`.
pub fn boundary_generator(
    sector: &Sector,
    pos: usize,
    inject: &Rational,
    extract: &Rational,
) -> SparseExactMatrix {
    local(sector, |c| match c.site(pos) {
        Site::Empty => Some((c.with_site(pos, Site::First), inject.clone())),
        Site::First => Some((c.with_site(pos, Site::Empty), extract.clone())),
        Site::Second => None,
    })
}

/// Generator with at most one outgoing transition per configuration.
fn local(
    sector: &Sector,
    step: impl Fn(&Configuration) -> Option<(Configuration, Rational)>,
) -> SparseExactMatrix {
    let mut m = SparseMatrix::new(sector.dim(), sector.dim());
    for (j, c) in sector.configs().iter().enumerate() {
        if let Some((target, rate)) = step(c) {
            if rate.is_zero() {
                continue;
            }
            let i = sector.index_of(&target).expect("move preserves the sector");
            m.add_entry(i, j, rate.clone());
            m.add_entry(j, j, -rate);
        }
    }
    m
}

/// `f_1` with rates α (inject), γ (extract).
pub fn left_generator(sector: &Sector, params: &ParamPoint) -> SparseExactMatrix {
    boundary_generator(sector, 0, params.alpha(), params.gamma())
}

/// `f_N` with rates δ (inject), β (extract).
pub fn right_generator(sector: &Sector, params: &ParamPoint) -> SparseExactMatrix {
    boundary_generator(sector, sector.n() - 1, params.delta(), params.beta())
}

/// `γ⁻¹ f_1`: `◦→•` with weight `−ab`, `•→◦` with weight 1.
pub fn left_normalized(sector: &Sector, params: &ParamPoint) -> SparseExactMatrix {
    boundary_generator(sector, 0, &-(params.a() * params.b()), &Rational::one())
}

/// `δ⁻¹ f_N`: `◦→•` with weight 1, `•→◦` with weight `−cd`.
pub fn right_normalized(sector: &Sector, params: &ParamPoint) -> SparseExactMatrix {
    boundary_generator(
        sector,
        sector.n() - 1,
        &Rational::one(),
        &-(params.c() * params.d()),
    )
}

/// `M = Σ e_i + f_1 + f_N`. Without `formal`, the rates must be positive.
pub fn markov_matrix(
    sector: &Sector,
    params: &ParamPoint,
    formal: bool,
) -> Result<SparseExactMatrix, ModelError> {
    if !formal {
        params.check_stochastic()?;
    }
    let n = sector.n();
    let mut m = SparseMatrix::new(sector.dim(), sector.dim());
    if n == 0 {
        return Ok(m);
    }
    for i in 1..n {
        m = m.add(&bulk_generator(sector, i, params))?;
    }
    m = m.add(&left_generator(sector, params))?;
    m.add(&right_generator(sector, params))
}

/// An operator `numer / denom` with the scalar denominator cleared.
#[derive(Clone, Debug, PartialEq)]
pub struct ClearedOperator {
    pub numer: SparseMatrix<LaurentPoly>,
    pub denom: LaurentPoly,
}

impl ClearedOperator {
    fn from_parts(
        sector: &Sector,
        diag: LaurentPoly,
        coef: LaurentPoly,
        gen: &SparseExactMatrix,
    ) -> Self {
        let mut numer = SparseMatrix::identity(sector.dim(), diag.clone());
        for (i, j, v) in gen.entries() {
            numer.add_entry(i, j, coef.scale(v));
        }
        ClearedOperator {
            numer,
            denom: diag,
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self, ModelError> {
        Ok(ClearedOperator {
            numer: self.numer.mul(&other.numer)?,
            denom: &self.denom * &other.denom,
        })
    }

    /// Exact evaluation at a rational point.
    pub fn evaluate(&self, point: &[Rational], label: &str) -> Result<SparseExactMatrix, ModelError> {
        let d = self.denom.evaluate(point)?;
        if d.is_zero() {
            return Err(ModelError::Pole(label.to_string()));
        }
        let inv = d.recip();
        self.numer
            .try_map(|p| p.evaluate(point).map(|v| v * &inv))
            .map_err(ModelError::from)
    }
}

/// `R_i(z) = 1 + (z−1)/(s z − 1/s) e_i` with symbolic argument `zarg`.
pub fn r_operator(
    sector: &Sector,
    i: usize,
    zarg: &LaurentPoly,
    params: &ParamPoint,
) -> ClearedOperator {
    let nv = zarg.nvars();
    let diag = &zarg.scale(params.s()) - &LaurentPoly::constant(nv, params.s().recip());
    let coef = zarg - &LaurentPoly::one(nv);
    ClearedOperator::from_parts(sector, diag, coef, &bulk_generator(sector, i, params))
}

/// `K_1(z) = 1 + (z²−1)/((z−a)(z−b)) γ⁻¹f_1`.
pub fn k_left_operator(sector: &Sector, zarg: &LaurentPoly, params: &ParamPoint) -> ClearedOperator {
    let nv = zarg.nvars();
    let one = LaurentPoly::one(nv);
    let diag = &(zarg - &one.scale(params.a())) * &(zarg - &one.scale(params.b()));
    let coef = &(zarg * zarg) - &one;
    ClearedOperator::from_parts(sector, diag, coef, &left_normalized(sector, params))
}

/// `K_N(z) = 1 + (1−z²)/((cz−1)(dz−1)) δ⁻¹f_N`.
pub fn k_right_operator(sector: &Sector, zarg: &LaurentPoly, params: &ParamPoint) -> ClearedOperator {
    let nv = zarg.nvars();
    let one = LaurentPoly::one(nv);
    let diag = &(&zarg.scale(params.c()) - &one) * &(&zarg.scale(params.d()) - &one);
    let coef = &one - &(zarg * zarg);
    ClearedOperator::from_parts(sector, diag, coef, &right_normalized(sector, params))
}

/// Numerical value of `R_i(z)` at a rational argument.
pub fn r_matrix(
    sector: &Sector,
    i: usize,
    z: &Rational,
    params: &ParamPoint,
) -> Result<SparseExactMatrix, ModelError> {
    let den = params.s() * z - params.s().recip();
    if den.is_zero() {
        return Err(ModelError::Pole(format!("R_{i} at z = 1/t")));
    }
    let coef = (z - Rational::one()) / den;
    with_identity(sector, &coef, &bulk_generator(sector, i, params))
}

pub fn k_left_matrix(
    sector: &Sector,
    z: &Rational,
    params: &ParamPoint,
) -> Result<SparseExactMatrix, ModelError> {
    let den = (z - params.a()) * (z - params.b());
    if den.is_zero() {
        return Err(ModelError::Pole("K_1 at z in {a, b}".into()));
    }
    let coef = (z * z - Rational::one()) / den;
    with_identity(sector, &coef, &left_normalized(sector, params))
}

pub fn k_right_matrix(
    sector: &Sector,
    z: &Rational,
    params: &ParamPoint,
) -> Result<SparseExactMatrix, ModelError> {
    let one = Rational::one();
    let den = (params.c() * z - &one) * (params.d() * z - &one);
    if den.is_zero() {
        return Err(ModelError::Pole("K_N at z in {1/c, 1/d}".into()));
    }
    let coef = (&one - z * z) / den;
    with_identity(sector, &coef, &right_normalized(sector, params))
}

fn with_identity(
    sector: &Sector,
    coef: &Rational,
    gen: &SparseExactMatrix,
) -> Result<SparseExactMatrix, ModelError> {
    let id = SparseMatrix::identity(sector.dim(), Rational::one());
    id.add(&gen.scale(coef))
}

/// One factor of a scattering matrix: `R_j`, `K_1` or `K_N` at `z_i^{±1} z_k^{±1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Factor {
    /// `R_j(z_i^{1} z_k^{e})`, with `k` 1-based and `e = ±1`.
    R { j: usize, k: usize, e: i32 },
    /// `K_1(z_i^{-1})`.
    KLeft,
    /// `K_N(z_i)`.
    KRight,
}

/// The ordered factor list of `S_i` (1-based `i`).
pub fn scattering_factors(n: usize, i: usize) -> Vec<Factor> {
    assert!(i >= 1 && i <= n);
    let mut f = Vec::new();
    for j in (1..i).rev() {
        f.push(Factor::R { j, k: j, e: -1 });
    }
    f.push(Factor::KLeft);
    for j in 1..i {
        f.push(Factor::R { j, k: j, e: 1 });
    }
    for j in i..n {
        f.push(Factor::R { j, k: j + 1, e: 1 });
    }
    f.push(Factor::KRight);
    for j in (i..n).rev() {
        f.push(Factor::R { j, k: j + 1, e: -1 });
    }
    f
}

fn factor_label(i: usize, f: &Factor) -> String {
    match f {
        Factor::R { j, k, e } if *e > 0 => format!("R_{j}(z{i} z{k})"),
        Factor::R { j, k, .. } => format!("R_{j}(z{i}/z{k})"),
        Factor::KLeft => format!("K_1(1/z{i})"),
        Factor::KRight => format!("K_N(z{i})"),
    }
}

/// `S_i(z)` evaluated exactly at a rational point `z_1..z_N`.
pub fn scattering_operator(
    sector: &Sector,
    i: usize,
    zpoint: &[Rational],
    params: &ParamPoint,
) -> Result<SparseExactMatrix, ModelError> {
    let n = sector.n();
    if zpoint.len() != n {
        return Err(ModelError::Dimension(format!(
            "z-point of length {} for N = {n}",
            zpoint.len()
        )));
    }
    let zi = &zpoint[i - 1];
    let mut acc = SparseMatrix::identity(sector.dim(), Rational::one());
    for f in scattering_factors(n, i) {
        let m = match &f {
            Factor::R { j, k, e } => {
                let zk = &zpoint[k - 1];
                let arg = if *e > 0 { zi * zk } else { zi / zk };
                r_matrix(sector, *j, &arg, params)
            }
            Factor::KLeft => k_left_matrix(sector, &zi.recip(), params),
            Factor::KRight => k_right_matrix(sector, zi, params),
        }
        .map_err(|_| ModelError::Pole(factor_label(i, &f)))?;
        acc = acc.mul(&m)?;
    }
    Ok(acc)
}

/// `S_i(z)` along `z_i = z`, `z_{j≠i} = 1`, as a cleared operator in one variable.
pub fn scattering_along_line(
    sector: &Sector,
    i: usize,
    params: &ParamPoint,
) -> Result<ClearedOperator, ModelError> {
    let n = sector.n();
    let z = LaurentPoly::var(1, 0);
    let zinv = LaurentPoly::var_pow(1, 0, -1);
    let mut acc = ClearedOperator {
        numer: SparseMatrix::identity(sector.dim(), LaurentPoly::one(1)),
        denom: LaurentPoly::one(1),
    };
    for f in scattering_factors(n, i) {
        let op = match f {
            // z_k = 1 off the line, so z_i z_k^{±1} = z
            Factor::R { j, .. } => r_operator(sector, j, &z, params),
            Factor::KLeft => k_left_operator(sector, &zinv, params),
            Factor::KRight => k_right_operator(sector, &z, params),
        };
        acc = acc.mul(&op)?;
    }
    Ok(acc)
}

/// `S_i'(1)`, from the quotient rule on the cleared form.
pub fn scattering_derivative_at_one(
    sector: &Sector,
    i: usize,
    params: &ParamPoint,
) -> Result<SparseExactMatrix, ModelError> {
    let op = scattering_along_line(sector, i, params)?;
    let one = [Rational::one()];
    let d0 = op.denom.evaluate(&one)?;
    let d1 = op.denom.derivative(0).evaluate(&one)?;
    if d0.is_zero() {
        return Err(ModelError::Pole(format!("S_{i} at z = 1")));
    }
    let p0 = op.numer.try_map(|p| p.evaluate(&one))?;
    let p1 = op.numer.try_map(|p| p.derivative(0).evaluate(&one))?;
    let inv2 = (&d0 * &d0).recip();
    p1.scale(&(&d0 * &inv2)).sub(&p0.scale(&(&d1 * &inv2)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, q};

    fn params() -> ParamPoint {
        ParamPoint::new(q(1, 2), int(-2), q(1, 3), q(-3, 5), q(1, 4)).unwrap()
    }

    #[test]
    fn two_state_chain() {
        let p = params();
        let s = Sector::new(1, 0).unwrap();
        let m = markov_matrix(&s, &p, false).unwrap();
        let ad = p.alpha() + p.delta();
        let gb = p.gamma() + p.beta();
        assert_eq!(
            m.to_dense(),
            vec![vec![-ad.clone(), gb.clone()], vec![ad, -gb]]
        );
    }

    #[test]
    fn frozen_sectors_are_zero() {
        let p = params();
        for (n, m) in [(1, 1), (2, 2)] {
            let s = Sector::new(n, m).unwrap();
            let mm = markov_matrix(&s, &p, false).unwrap();
            assert_eq!(mm.dims(), (1, 1));
            assert!(mm.is_zero());
        }
    }

    #[test]
    fn identities_at_one() {
        let p = params();
        let s = Sector::new(3, 1).unwrap();
        let id = SparseMatrix::identity(s.dim(), Rational::one());
        assert_eq!(r_matrix(&s, 1, &int(1), &p).unwrap(), id);
        assert_eq!(k_left_matrix(&s, &int(1), &p).unwrap(), id);
        assert_eq!(k_right_matrix(&s, &int(1), &p).unwrap(), id);
        let ones = vec![int(1); 3];
        for i in 1..=3 {
            assert_eq!(scattering_operator(&s, i, &ones, &p).unwrap(), id);
        }
    }

    #[test]
    fn factor_list_shape() {
        let f = scattering_factors(3, 2);
        assert_eq!(
            f,
            vec![
                Factor::R { j: 1, k: 1, e: -1 },
                Factor::KLeft,
                Factor::R { j: 1, k: 1, e: 1 },
                Factor::R { j: 2, k: 3, e: 1 },
                Factor::KRight,
                Factor::R { j: 2, k: 3, e: -1 },
            ]
        );
    }

    #[test]
    fn r_pole_is_reported() {
        let p = params();
        let s = Sector::new(2, 0).unwrap();
        let z = p.t().recip();
        assert!(matches!(r_matrix(&s, 1, &z, &p), Err(ModelError::Pole(_))));
    }
}
