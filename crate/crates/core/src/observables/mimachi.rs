use num_complex::Complex64;

use super::ObservablesError;
use crate::exact::{to_f64, ParamPoint};
use crate::qseries::{aw_float, aw_float_at_parameter, aw_kernel, integral_norm_rm, unit_circle_average, AwFloat, QSeriesError};
use crate::qseries::kernel_internal::{aw_kernel_omitting, OmitFactor};

/// Node-doubling controls for the unit-circle trapezoid rule.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct QuadratureSettings {
    /// Relative agreement required between successive node counts.
    pub tol: f64,
    pub min_nodes: usize,
    pub max_nodes: usize,
}

impl Default for QuadratureSettings {
    fn default() -> Self {
        Self { tol: 1e-12, min_nodes: 64, max_nodes: 1 << 16 }
    }
}

/// `Z = mantissa · e^{log_scale}`, kept apart so large systems do not overflow.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize)]
pub struct MimachiValue {
    pub mantissa: f64,
    pub log_scale: f64,
    pub nodes: usize,
    pub residues: usize,
}

impl MimachiValue {
    pub fn value(&self) -> f64 {
        self.mantissa * self.log_scale.exp()
    }

    pub fn ln_abs(&self) -> f64 {
        self.mantissa.abs().ln() + self.log_scale
    }
}

/// Shifted parameters `(ξa, ξb, c/ξ, d/ξ)` at base `t`.
fn shifted(params: &ParamPoint, xi: f64) -> AwFloat {
    AwFloat {
        a: xi * to_f64(params.a()),
        b: xi * to_f64(params.b()),
        c: to_f64(params.c()) / xi,
        d: to_f64(params.d()) / xi,
        q: to_f64(params.t()),
    }
}

/// Poles `e t^k` of the kernel outside the unit circle, with their slot.
fn outer_poles(aw: &AwFloat) -> Result<Vec<(f64, OmitFactor)>, ObservablesError> {
    let mut out = Vec::new();
    for (i, e) in aw.params().into_iter().enumerate() {
        let mut pole = e;
        let mut k = 0;
        while pole.abs() > 1.0 - 1e-9 {
            if (pole.abs() - 1.0).abs() < 1e-9 {
                return Err(ObservablesError::Contour(format!("kernel pole {pole} lies on the unit circle")));
            }
            out.push((pole, OmitFactor { param: i, k, inverse: true }));
            pole *= aw.q;
            k += 1;
        }
    }
    Ok(out)
}

struct Integrand {
    n: usize,
    m: usize,
    xi_sum: f64,
    aw: AwFloat,
    /// `ln` of the common factor divided out of `(ξ + 1/ξ − x − 1/x)^N`.
    log_scale: f64,
}

impl Integrand {
    fn pi_factor(&self, x: Complex64) -> Complex64 {
        let base = (self.xi_sum - x - 1.0 / x) / (self.log_scale / self.n.max(1) as f64).exp();
        base.powi(self.n as i32)
    }

    fn eval(&self, x: Complex64) -> Result<Complex64, QSeriesError> {
        Ok(self.pi_factor(x) * aw_kernel(x, &self.aw)? * aw_float(self.m, x, &self.aw)?)
    }

    /// `f(x)(1 − p/x)` at `x = p`.
    fn residue(&self, pole: f64, omit: OmitFactor) -> Result<Complex64, QSeriesError> {
        let x = Complex64::new(pole, 0.0);
        let pm = aw_float_at_parameter(self.m, omit.param, omit.k, &self.aw)?;
        Ok(self.pi_factor(x) * aw_kernel_omitting(x, &self.aw, Some(omit))? * pm)
    }
}

fn setup(n: usize, m: usize, params: &ParamPoint, fugacity: f64) -> Result<(Integrand, Vec<(f64, OmitFactor)>), ObservablesError> {
    let t = to_f64(params.t());
    if !(t > 0.0 && t < 1.0) {
        return Err(ObservablesError::Regime("the contour integral needs 0 < t < 1".into()));
    }
    // also rejects NaN
    if fugacity.partial_cmp(&0.0) != Some(std::cmp::Ordering::Greater) {
        return Err(ObservablesError::Regime("fugacity must be positive".into()));
    }
    if m > n {
        return Err(ObservablesError::Sector { n, m });
    }
    let xi = fugacity.sqrt();
    let aw = shifted(params, xi);
    let poles = outer_poles(&aw)?;
    let xi_sum = xi + 1.0 / xi;
    let scale = poles
        .iter()
        .map(|(p, _)| (xi_sum - p - 1.0 / p).abs())
        .fold(xi_sum + 2.0, f64::max);
    let log_scale = n as f64 * scale.ln();
    Ok((Integrand { n, m, xi_sum, aw, log_scale }, poles))
}

fn finish(integral: Complex64, f: &Integrand, fugacity: f64) -> Result<(f64, f64), ObservablesError> {
    let sign = if f.m.is_multiple_of(2) { 1.0 } else { -1.0 };
    let rm = integral_norm_rm(f.m, &f.aw)?;
    let xi = fugacity.sqrt();
    let log_scale = f.log_scale + (f.n - f.m) as f64 * xi.ln();
    Ok((sign * integral.re / rm, log_scale))
}

/// `Z_{N,m}(ξ²; 1) = Σ_w ξ^{2•(w)} ψ_w(1)` from
/// `(−1)^m ξ^{N−m} r_m⁻¹ ∮ (ξ + ξ⁻¹ − x − x⁻¹)^N w(x) p_m(x) dx/(4πix)` with
/// parameters `(ξa, ξb, c/ξ, d/ξ)` and base `t`, where `fugacity = ξ²`.
///
/// The contour encloses the poles `e t^k` and excludes their reciprocals; it
/// is realised as the unit circle plus the residues of the poles `e t^k`
/// outside it. The two residue pairs coincide by `x ↔ x⁻¹` symmetry, so each
/// contributes `f(x)(1 − p/x)|_{x=p}`.
pub fn mimachi_partition(
    n: usize,
    m: usize,
    params: &ParamPoint,
    fugacity: f64,
    settings: &QuadratureSettings,
) -> Result<MimachiValue, ObservablesError> {
    let (f, poles) = setup(n, m, params, fugacity)?;
    let mut residue_sum = Complex64::new(0.0, 0.0);
    for (p, omit) in &poles {
        residue_sum += f.residue(*p, *omit)?;
    }
    let total = |nodes: usize| -> Result<Complex64, ObservablesError> {
        Ok(unit_circle_average(nodes, |x| f.eval(x))? * 0.5 + residue_sum)
    };
    let mut nodes = settings.min_nodes.max(4);
    let mut prev = total(nodes)?;
    loop {
        let next_nodes = nodes * 2;
        if next_nodes > settings.max_nodes {
            return Err(ObservablesError::Contour(format!(
                "quadrature did not reach tolerance {} within {} nodes",
                settings.tol, settings.max_nodes
            )));
        }
        let cur = total(next_nodes)?;
        let done = (cur - prev).norm() <= settings.tol * cur.norm();
        prev = cur;
        nodes = next_nodes;
        if done {
            break;
        }
    }
    let (mantissa, log_scale) = finish(prev, &f, fugacity)?;
    Ok(MimachiValue { mantissa, log_scale, nodes, residues: poles.len() })
}

/// Same integral with every residue (required and excluded) taken by a small
/// circle around the pole instead of in closed form.
pub fn small_circle_partition(
    n: usize,
    m: usize,
    params: &ParamPoint,
    fugacity: f64,
    nodes: usize,
) -> Result<f64, ObservablesError> {
    let (f, poles) = setup(n, m, params, fugacity)?;
    let circle = |c: f64, radius: f64| -> Result<Complex64, QSeriesError> {
        let k = 128;
        let mut acc = Complex64::new(0.0, 0.0);
        for j in 0..k {
            let e = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * (j as f64 + 0.5) / k as f64);
            let x = c + radius * e;
            acc += f.eval(x)? / x * radius * e;
        }
        Ok(acc / k as f64)
    };
    let mut corr = Complex64::new(0.0, 0.0);
    for (p, _) in &poles {
        let r = 1e-3 * p.abs().min(1.0 / p.abs());
        corr += circle(*p, r)? - circle(1.0 / p, r)?;
    }
    let integral = unit_circle_average(nodes, |x| f.eval(x))? * 0.5 + corr * 0.5;
    let (mant, ls) = finish(integral, &f, fugacity)?;
    Ok(mant * ls.exp())
}

/// `(t^{1/2} − t^{−1/2}) Z_{N−1,m}/Z_{N,m}` with both partition functions
/// from the contour integral; `Z_{N−1,m}` of an empty sector counts as 0.
pub fn mimachi_current(
    n: usize,
    m: usize,
    params: &ParamPoint,
    settings: &QuadratureSettings,
) -> Result<f64, ObservablesError> {
    if n == 0 || m > n {
        return Err(ObservablesError::Sector { n, m });
    }
    if m == n {
        return Ok(0.0);
    }
    let big = mimachi_partition(n, m, params, 1.0, settings)?;
    let small = if n == 1 {
        MimachiValue { mantissa: 1.0, log_scale: 0.0, nodes: 0, residues: 0 }
    } else {
        mimachi_partition(n - 1, m, params, 1.0, settings)?
    };
    let ratio = small.mantissa / big.mantissa * (small.log_scale - big.log_scale).exp();
    Ok(to_f64(&params.bulk_gap()) * ratio)
}

/// `⟨ρ•⟩ = (1/2N) d ln Z(ξ²)/dξ` at `ξ = 1`, by a central difference.
pub fn mimachi_density(
    n: usize,
    m: usize,
    params: &ParamPoint,
    settings: &QuadratureSettings,
) -> Result<f64, ObservablesError> {
    if n == 0 || m > n {
        return Err(ObservablesError::Sector { n, m });
    }
    let h = 1e-5;
    let up = mimachi_partition(n, m, params, (1.0 + h) * (1.0 + h), settings)?;
    let down = mimachi_partition(n, m, params, (1.0 - h) * (1.0 - h), settings)?;
    Ok((up.ln_abs() - down.ln_abs()) / (2.0 * h) / (2.0 * n as f64))
}
