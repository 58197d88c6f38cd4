use std::collections::{BTreeMap, VecDeque};

use serde_json::{json, Value};

use crate::exact::{elementary_symmetric, rpow, LaurentPoly, ParamPoint, ParamRecord, Rational};
use crate::hecke::{apply_scaled_gen, apply_scaled_gen_inverse};
use crate::model::{Configuration, Sector, Site};

use super::hcoeff::h_table;
use super::QkzError;

/// `E_{μ(k,m)} = Σ_{i=0}^k h_i(a, b, t^m c, t^m d) e_{k−i}(z_1⁻¹, …, z_k⁻¹)`
/// as a polynomial in `N = k + m` variables.
pub fn reference_component(k: usize, m: usize, params: &ParamPoint) -> Result<LaurentPoly, QkzError> {
    let n = k + m;
    let tm = rpow(params.t(), m as i64);
    let h = h_table(
        k,
        params.a(),
        params.b(),
        &(&tm * params.c()),
        &(&tm * params.d()),
        params.t(),
    )?;
    let vars: Vec<LaurentPoly> = (0..k).map(|i| LaurentPoly::var_pow(n, i, -1)).collect();
    let mut e = LaurentPoly::zero(n);
    for (i, hi) in h.iter().enumerate() {
        e += &elementary_symmetric(k - i, &vars, n)?.scale(hi);
    }
    Ok(e)
}

/// `Ψ_{N,m}(z)`: one Laurent polynomial per configuration of the sector.
#[derive(Clone, Debug)]
pub struct StateVector {
    sector: Sector,
    params: ParamPoint,
    components: BTreeMap<Configuration, LaurentPoly>,
}

impl StateVector {
    pub fn sector(&self) -> &Sector {
        &self.sector
    }

    pub fn params(&self) -> &ParamPoint {
        &self.params
    }

    pub fn n(&self) -> usize {
        self.sector.n()
    }

    pub fn m(&self) -> usize {
        self.sector.m()
    }

    pub fn component(&self, w: &Configuration) -> Option<&LaurentPoly> {
        self.components.get(w)
    }

    pub fn components(&self) -> impl Iterator<Item = (&Configuration, &LaurentPoly)> {
        self.components.iter()
    }

    /// Components in sector (lexicographic) order.
    pub fn ordered(&self) -> Vec<&LaurentPoly> {
        self.sector
            .configs()
            .iter()
            .map(|c| &self.components[c])
            .collect()
    }

    /// `Ψ(1, …, 1)` in sector order.
    pub fn at_ones(&self) -> Vec<Rational> {
        self.ordered().iter().map(|p| p.at_ones()).collect()
    }

    /// `Ψ` at a rational spectral point, in sector order.
    pub fn evaluate(&self, z: &[Rational]) -> Result<Vec<Rational>, QkzError> {
        self.ordered()
            .iter()
            .map(|p| p.evaluate(z).map_err(QkzError::from))
            .collect()
    }

    /// Applies a transformation to every component.
    pub fn map_components(&self, f: impl Fn(&LaurentPoly) -> LaurentPoly) -> Vec<LaurentPoly> {
        self.ordered().iter().map(|p| f(p)).collect()
    }

    /// `{"N","m","params","components":{key: poly}}` with ASCII keys.
    pub fn to_json(&self) -> Value {
        let comps: serde_json::Map<String, Value> = self
            .components
            .iter()
            .map(|(c, p)| (c.key(), serde_json::to_value(p).expect("poly json")))
            .collect();
        json!({
            "N": self.n(),
            "m": self.m(),
            "params": ParamRecord::from(&self.params),
            "components": comps,
        })
    }
}

/// Builds all components of `Ψ_{N,m}` by breadth-first search from `◦^k ∗^m`.
///
/// Each move turns an ascending adjacent pair (`◦∗`, `◦•`, `∗•`) into a
/// descending one via `A_i⁻¹`, or turns a final `◦` into `•` via `A_N⁻¹`.
/// A configuration reached twice must receive the same polynomial.
pub fn build_state(n: usize, m: usize, params: &ParamPoint) -> Result<StateVector, QkzError> {
    let sector = Sector::new(n, m)?;
    let k = n - m;
    let start = sector.reference();
    let mut comps: BTreeMap<Configuration, LaurentPoly> = BTreeMap::new();
    comps.insert(start.clone(), reference_component(k, m, params)?);
    let mut queue = VecDeque::from([start]);
    while let Some(w) = queue.pop_front() {
        let psi = comps[&w].clone();
        for i in 1..=n {
            let target = if i < n {
                (w.site(i - 1) < w.site(i)).then(|| w.swapped(i - 1))
            } else {
                (w.site(n - 1) == Site::Empty).then(|| w.with_site(n - 1, Site::First))
            };
            let Some(target) = target else { continue };
            let value = apply_scaled_gen_inverse(i, &psi, params)?;
            match comps.get(&target) {
                Some(existing) if *existing != value => {
                    return Err(QkzError::Consistency(target.key()));
                }
                Some(_) => {}
                None => {
                    comps.insert(target.clone(), value);
                    queue.push_back(target);
                }
            }
        }
    }
    if comps.len() != sector.dim() {
        return Err(QkzError::Consistency(format!(
            "reached {} of {} configurations",
            comps.len(),
            sector.dim()
        )));
    }
    Ok(StateVector {
        sector,
        params: params.clone(),
        components: comps,
    })
}

/// `ψ_{•w} = A_0 ψ_{◦w}`: the left-boundary exchange relation.
pub fn left_flip(psi_empty: &LaurentPoly, params: &ParamPoint) -> Result<LaurentPoly, QkzError> {
    Ok(apply_scaled_gen(0, psi_empty, params)?)
}

/// Largest `|exponent|` over all variables and components.
pub fn max_abs_exponent(state: &StateVector) -> i32 {
    state
        .components()
        .flat_map(|(_, p)| p.terms().flat_map(|(e, _)| e.iter().map(|x| x.abs()).collect::<Vec<_>>()))
        .max()
        .unwrap_or(0)
}

/// Sum of all components, `Z_{N,m}(z)`.
pub fn component_sum(state: &StateVector) -> LaurentPoly {
    let mut z = LaurentPoly::zero(state.n());
    for (_, p) in state.components() {
        z += p;
    }
    z
}

#[cfg(test)]
pub(crate) fn is_all_zero(v: &[Rational]) -> bool {
    v.iter().all(num_traits::Zero::is_zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, q};
    use crate::model::{exact_nullspace, markov_matrix};
    use crate::qkz::hcoeff::h1_formula;

    fn params() -> ParamPoint {
        ParamPoint::new(q(1, 2), int(-2), q(1, 3), q(-3, 5), q(1, 4)).unwrap()
    }

    #[test]
    fn reference_small_cases() {
        let p = params();
        assert_eq!(reference_component(0, 2, &p).unwrap(), LaurentPoly::one(2));
        let e = reference_component(1, 0, &p).unwrap();
        let h1 = h1_formula(p.a(), p.b(), p.c(), p.d());
        assert_eq!(e, &LaurentPoly::var_pow(1, 0, -1) + &LaurentPoly::constant(1, h1));
        let e = reference_component(2, 1, &p).unwrap();
        assert!(!e.depends_on(2));
        assert!(e.is_symmetric_in(0, 1));
        assert_eq!(e.coeff(&[-1, -1, 0]), int(1));
    }

    #[test]
    fn single_second_class() {
        let s = build_state(1, 1, &params()).unwrap();
        let c = Configuration::parse("*").unwrap();
        assert_eq!(s.component(&c).unwrap(), &LaurentPoly::one(1));
    }

    #[test]
    fn two_state_matches_nullspace() {
        let p = params();
        let s = build_state(1, 0, &p).unwrap();
        let v = s.at_ones();
        let k = exact_nullspace(&markov_matrix(s.sector(), &p, false).unwrap());
        assert_eq!(k.len(), 1);
        assert_eq!(&v[1] / &v[0], k[0][1].clone());
    }

    #[test]
    fn n3_m1_is_stationary() {
        let p = params();
        let s = build_state(3, 1, &p).unwrap();
        assert_eq!(s.sector().dim(), 12);
        let m = markov_matrix(s.sector(), &p, false).unwrap();
        let r = m.apply(&s.at_ones(), &int(0)).unwrap();
        assert!(is_all_zero(&r));
    }
}
