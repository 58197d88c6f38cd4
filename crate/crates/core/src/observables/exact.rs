use num_traits::Zero;

use super::ObservablesError;
use crate::exact::{rpow, LaurentPoly, ParamPoint, Rational};
use crate::model::Site;
use crate::qkz::{build_state, verify_fugacity_covariance, StateVector};

/// `Z_{N,m}(z) = Σ_w ψ_w(z)` together with its fugacity refinement.
#[derive(Clone, Debug, PartialEq)]
pub struct PartitionData {
    pub n: usize,
    pub m: usize,
    pub zpoly: LaurentPoly,
    /// Coefficient of `ξ^j` in `Σ_w ξ^{•(w)} ψ_w(z)`, for `j = 0..=N−m`.
    pub zweighted: Vec<LaurentPoly>,
    /// `Z_{N,m}(1)`.
    pub zhom: Rational,
}

/// Invariance under every `s_i`, `s_0` and `s_N`.
pub fn is_w_invariant(z: &LaurentPoly) -> bool {
    let n = z.nvars();
    if n == 0 {
        return true;
    }
    (0..n - 1).all(|i| z.is_symmetric_in(i, i + 1))
        && z.is_inversion_symmetric(0)
        && z.is_inversion_symmetric(n - 1)
}

/// Coefficient of `z_1⁻¹ ⋯ z_{N−m}⁻¹`.
pub fn leading_coefficient(z: &LaurentPoly, m: usize) -> Rational {
    let n = z.nvars();
    let exp: Vec<i32> = (0..n).map(|i| if i + m < n { -1 } else { 0 }).collect();
    z.coeff(&exp)
}

pub fn partition_function(state: &StateVector) -> Result<PartitionData, ObservablesError> {
    let (n, m) = (state.n(), state.m());
    let mut zweighted = vec![LaurentPoly::zero(n); n - m + 1];
    for (w, psi) in state.components() {
        zweighted[w.first_class()] += psi;
    }
    let zpoly = zweighted
        .iter()
        .fold(LaurentPoly::zero(n), |acc, p| &acc + p);
    if !is_w_invariant(&zpoly) {
        return Err(ObservablesError::Identity(format!(
            "Z_{{{n},{m}}} is not invariant under the reflections"
        )));
    }
    let zhom = zpoly.at_ones();
    Ok(PartitionData { n, m, zpoly, zweighted, zhom })
}

/// `Σ_w ξ^{•(w)} ψ_w(z)`.
pub fn weighted_partition(state: &StateVector, xi: &Rational) -> LaurentPoly {
    state
        .components()
        .fold(LaurentPoly::zero(state.n()), |acc, (w, psi)| {
            &acc + &psi.scale(&rpow(xi, w.first_class() as i64))
        })
}

/// `Z(ξ²; z; a, b, c, d) = ξ^{N−m} Z(ξz; ξa, ξb, c/ξ, d/ξ)`.
pub fn weighted_partition_identity(
    n: usize,
    m: usize,
    params: &ParamPoint,
    xi: &Rational,
) -> Result<bool, ObservablesError> {
    let rep = verify_fugacity_covariance(n, m, params, xi)?;
    Ok(rep.iter().all(|r| r.pass))
}

/// `Z_{N,m}(1)` with `Z_{0,0} = 1`.
pub fn partition_hom(n: usize, m: usize, params: &ParamPoint) -> Result<Rational, ObservablesError> {
    if m > n {
        return Err(ObservablesError::Sector { n, m });
    }
    if n == 0 {
        return Ok(Rational::from_integer(1.into()));
    }
    Ok(build_state(n, m, params)?.at_ones().into_iter().sum())
}

/// `⟨J⟩ = (t^{1/2} − t^{−1/2}) Z_{N−1,m}(1) / Z_{N,m}(1)`; zero when `m = N`.
pub fn steady_current(n: usize, m: usize, params: &ParamPoint) -> Result<Rational, ObservablesError> {
    if n == 0 || m > n {
        return Err(ObservablesError::Sector { n, m });
    }
    if m == n {
        return Ok(Rational::zero());
    }
    Ok(params.bulk_gap() * partition_hom(n - 1, m, params)? / partition_hom(n, m, params)?)
}

/// `(α Σ ψ_{◦w}(1) − γ Σ ψ_{•w}(1)) / Z(1)`: net injection rate at site 1.
pub fn direct_current(state: &StateVector) -> Rational {
    let p = state.params();
    let mut flux = Rational::zero();
    let mut z = Rational::zero();
    for (w, v) in state.sector().configs().iter().zip(state.at_ones()) {
        match w.site(0) {
            Site::Empty => flux += p.alpha() * &v,
            Site::First => flux -= p.gamma() * &v,
            Site::Second => {}
        }
        z += v;
    }
    flux / z
}

/// `⟨ρ•⟩ = Σ_w •(w) ψ_w(1) / (N Z(1))`.
pub fn density_first_class(n: usize, m: usize, params: &ParamPoint) -> Result<Rational, ObservablesError> {
    if n == 0 || m > n {
        return Err(ObservablesError::Sector { n, m });
    }
    let state = build_state(n, m, params)?;
    let mut num = Rational::zero();
    let mut z = Rational::zero();
    for (w, v) in state.sector().configs().iter().zip(state.at_ones()) {
        num += Rational::from_integer(w.first_class().into()) * &v;
        z += v;
    }
    Ok(num / (z * Rational::from_integer(n.into())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, q};

    fn params() -> ParamPoint {
        ParamPoint::new(q(1, 2), int(-2), q(1, 3), q(-3, 5), q(1, 4)).unwrap()
    }

    #[test]
    fn trivial_sectors() {
        let p = params();
        let pd = partition_function(&build_state(1, 1, &p).unwrap()).unwrap();
        assert_eq!(pd.zpoly, LaurentPoly::one(1));
        assert_eq!(steady_current(1, 1, &p).unwrap(), int(0));
        assert_eq!(density_first_class(1, 1, &p).unwrap(), int(0));
        assert_eq!(density_first_class(3, 3, &p).unwrap(), int(0));
    }

    #[test]
    fn two_state_chain() {
        let p = params();
        let (al, be, ga, de) = (p.alpha(), p.beta(), p.gamma(), p.delta());
        let tot = al + be + ga + de;
        assert_eq!(steady_current(1, 0, &p).unwrap(), (al * be - ga * de) / &tot);
        assert_eq!(density_first_class(1, 0, &p).unwrap(), (al + de) / &tot);
        let pd = partition_function(&build_state(1, 0, &p).unwrap()).unwrap();
        assert!(pd.zpoly.is_inversion_symmetric(0));
    }

    #[test]
    fn current_routes_agree() {
        let p = params();
        for n in 1..=5 {
            for m in 0..n {
                let s = build_state(n, m, &p).unwrap();
                assert_eq!(steady_current(n, m, &p).unwrap(), direct_current(&s), "N={n} m={m}");
            }
        }
    }

    #[test]
    fn partition_normalization() {
        let p = params();
        for n in 1..=4 {
            for m in 0..=n {
                let pd = partition_function(&build_state(n, m, &p).unwrap()).unwrap();
                assert_eq!(leading_coefficient(&pd.zpoly, m), int(1));
                assert_eq!(pd.zweighted.len(), n - m + 1);
            }
        }
    }

    #[test]
    fn weighted_cases() {
        let p = params();
        let s = build_state(2, 0, &p).unwrap();
        let pd = partition_function(&s).unwrap();
        assert_eq!(weighted_partition(&s, &int(1)), pd.zpoly);
        assert_eq!(weighted_partition(&s, &int(0)), pd.zweighted[0]);
        assert!(weighted_partition_identity(2, 0, &p, &int(2)).unwrap());
    }

    #[test]
    fn physical_partition_is_positive() {
        let p = ParamPoint::new(q(1, 2), q(-1, 2), q(1, 3), q(-1, 4), q(1, 5)).unwrap();
        assert!(p.is_physical());
        assert!(partition_hom(3, 1, &p).unwrap() > int(0));
    }
}
