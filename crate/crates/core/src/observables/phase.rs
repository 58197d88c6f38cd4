use serde::Serialize;

use super::mimachi::{mimachi_current, mimachi_density, QuadratureSettings};
use super::ObservablesError;
use crate::exact::{to_f64, ParamPoint};

/// Thermodynamic phase at fixed second-class density.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Phase {
    MaximalCurrent,
    ADominated,
    CDominated,
}

impl Phase {
    pub fn name(self) -> &'static str {
        match self {
            Self::MaximalCurrent => "maximal-current",
            Self::ADominated => "a-dominated",
            Self::CDominated => "c-dominated",
        }
    }

    /// Limiting current and first-class density in this phase.
    pub fn values(self, rho_star: f64, s: f64, a: f64, c: f64) -> (f64, f64) {
        match self {
            Self::MaximalCurrent => ((s - 1.0 / s) * (1.0 - rho_star * rho_star) / 4.0, (1.0 - rho_star) / 2.0),
            Self::ADominated => (a * (1.0 / s - s) / ((1.0 - a) * (1.0 - a)), a / (a - 1.0) - rho_star),
            Self::CDominated => (c * (1.0 / s - s) / ((1.0 - c) * (1.0 - c)), 1.0 / (1.0 - c)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PhaseResult {
    pub rho_star: f64,
    /// Saddle point `(1 + ρ*)/(ρ* − 1)`.
    pub x0: f64,
    pub phase: Phase,
    pub j: f64,
    pub rho_bullet: f64,
    /// On a phase boundary: the values of every phase that ties, in order.
    pub boundary: Vec<(Phase, f64, f64)>,
}

/// Phase from the ordering of `x0`, `a` and `c`: the smallest wins.
pub fn phase_diagram(rho_star: f64, params: &ParamPoint) -> Result<PhaseResult, ObservablesError> {
    if !(0.0..1.0).contains(&rho_star) {
        return Err(ObservablesError::Regime(format!("rho* = {rho_star} is outside [0, 1)")));
    }
    let (a, c, s) = (to_f64(params.a()), to_f64(params.c()), to_f64(params.s()));
    if !(a < 0.0 && c < 0.0) {
        return Err(ObservablesError::Regime("the phase diagram needs a < 0 and c < 0".into()));
    }
    let x0 = (1.0 + rho_star) / (rho_star - 1.0);
    let cands = [(Phase::MaximalCurrent, x0), (Phase::ADominated, a), (Phase::CDominated, c)];
    let low = cands.iter().map(|(_, v)| *v).fold(f64::INFINITY, f64::min);
    let tied: Vec<Phase> = cands
        .iter()
        .filter(|(_, v)| (*v - low).abs() <= 1e-12 * low.abs().max(1.0))
        .map(|(p, _)| *p)
        .collect();
    let phase = tied[0];
    let (j, rho_bullet) = phase.values(rho_star, s, a, c);
    let boundary = if tied.len() > 1 {
        tied.iter()
            .map(|p| {
                let (j, r) = p.values(rho_star, s, a, c);
                (*p, j, r)
            })
            .collect()
    } else {
        Vec::new()
    };
    Ok(PhaseResult { rho_star, x0, phase, j, rho_bullet, boundary })
}

/// Finite-size current and density at `m = round(ρ* N)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FiniteSizePoint {
    pub n: usize,
    pub m: usize,
    pub j: f64,
    pub rho_bullet: f64,
}

pub fn finite_size_scan(
    params: &ParamPoint,
    rho_star: f64,
    sizes: &[usize],
    settings: &QuadratureSettings,
) -> Result<Vec<FiniteSizePoint>, ObservablesError> {
    sizes
        .iter()
        .map(|&n| {
            let m = (rho_star * n as f64).round() as usize;
            Ok(FiniteSizePoint {
                n,
                m,
                j: mimachi_current(n, m, params, settings)?,
                rho_bullet: mimachi_density(n, m, params, settings)?,
            })
        })
        .collect()
}
