//! Event-driven simulation of the open two-species exclusion process.
//!
//! Events are drawn with the Gillespie scheme from a binary sum tree over
//! the `N − 1` bonds and the two boundary sites. Occupations are weighted by
//! holding time; the current counts injections minus extractions at site 1.

mod tree;

use std::collections::BTreeMap;

use num_traits::ToPrimitive;
use rand::Rng;
use serde::Serialize;

use crate::exact::{to_f64, ParamPoint, ParamRecord};
use crate::model::{Configuration, Sector, Site};
use crate::observables::steady_current;
use crate::qkz::StateVector;
use crate::sampling::rng;
use tree::RateTree;

/// Name recorded in outputs for the random source.
pub const GENERATOR: &str = "ChaCha20Rng";

/// Largest system for which per-configuration occupations are tracked.
pub const OCCUPATION_MAX_N: usize = 12;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SimError {
    #[error("invalid simulation config: {0}")]
    Config(String),
    #[error("sector mismatch: simulated (N={sim_n}, m={sim_m}), exact (N={n}, m={m})")]
    SectorMismatch { sim_n: usize, sim_m: usize, n: usize, m: usize },
    #[error(transparent)]
    Param(#[from] crate::exact::ParamError),
    #[error(transparent)]
    Model(#[from] crate::model::ModelError),
    #[error(transparent)]
    Observables(#[from] crate::observables::ObservablesError),
}

#[derive(Clone, Debug, PartialEq)]
pub struct SimConfig {
    pub n: usize,
    pub m: usize,
    pub params: ParamPoint,
    /// Events recorded after burn-in.
    pub events: u64,
    pub burn_in: u64,
    pub seed: u64,
    /// Events per batch for the batch-means standard errors.
    pub thinning: u64,
}

impl SimConfig {
    pub fn new(n: usize, m: usize, params: ParamPoint, events: u64, seed: u64) -> Self {
        Self { n, m, params, events, burn_in: events / 100, seed, thinning: (events / 100).max(1) }
    }

    fn validate(&self) -> Result<(), SimError> {
        self.params.check_stochastic()?;
        if self.n == 0 || self.m > self.n {
            return Err(SimError::Config(format!("no sector (N={}, m={})", self.n, self.m)));
        }
        if self.thinning == 0 || self.events < 2 * self.thinning {
            return Err(SimError::Config("need at least two batches of events".into()));
        }
        Ok(())
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "N": self.n,
            "m": self.m,
            "params": ParamRecord::from(&self.params),
            "events": self.events,
            "burn_in": self.burn_in,
            "seed": self.seed,
            "thinning": self.thinning,
            "generator": GENERATOR,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Estimate {
    pub mean: f64,
    pub stderr: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SimResult {
    pub config: SimConfig,
    /// Holding-time fraction per configuration in sector order; empty when
    /// `N > OCCUPATION_MAX_N`.
    pub occupation: Vec<Estimate>,
    pub current: Estimate,
    pub density: Estimate,
    pub elapsed_time: f64,
}

impl SimResult {
    pub fn to_json(&self) -> serde_json::Value {
        let occ: BTreeMap<String, f64> = if self.occupation.is_empty() {
            BTreeMap::new()
        } else {
            let sector = Sector::new(self.config.n, self.config.m).expect("validated");
            sector.configs().iter().zip(&self.occupation).map(|(c, e)| (c.key(), e.mean)).collect()
        };
        serde_json::json!({
            "config": self.config.to_json(),
            "occupation": occ,
            "current": self.current,
            "density": self.density,
            "events": self.config.events,
            "elapsed_time": self.elapsed_time,
        })
    }
}

struct Rates {
    forward: f64,
    backward: f64,
    alpha: f64,
    gamma: f64,
    delta: f64,
    beta: f64,
}

/// Rate of the event in `slot`: bonds `0..N−1`, then site 1, then site N.
fn slot_rate(sites: &[Site], slot: usize, r: &Rates) -> f64 {
    let n = sites.len();
    if slot + 1 < n {
        let (x, y) = (sites[slot], sites[slot + 1]);
        if x == y {
            0.0
        } else if x > y {
            r.forward
        } else {
            r.backward
        }
    } else if slot + 1 == n {
        match sites[0] {
            Site::Empty => r.alpha,
            Site::First => r.gamma,
            Site::Second => 0.0,
        }
    } else {
        match sites[n - 1] {
            Site::Empty => r.delta,
            Site::First => r.beta,
            Site::Second => 0.0,
        }
    }
}

fn code(sites: &[Site]) -> usize {
    sites.iter().fold(0, |acc, s| acc * 3 + (s.value() + 1) as usize)
}

struct Batch {
    time: f64,
    net: i64,
    first_time: f64,
    occ: Vec<f64>,
}

impl Batch {
    fn new(dim: usize) -> Self {
        Self { time: 0.0, net: 0, first_time: 0.0, occ: vec![0.0; dim] }
    }
}

fn batch_estimate(values: impl Iterator<Item = f64> + Clone, weights: impl Iterator<Item = f64> + Clone) -> Estimate {
    let v: Vec<f64> = values.collect();
    let w: Vec<f64> = weights.collect();
    let tot: f64 = w.iter().sum();
    let mean = v.iter().zip(&w).map(|(x, t)| x * t).sum::<f64>() / tot;
    let b = v.len() as f64;
    let var = v.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (b - 1.0);
    Estimate { mean, stderr: (var / b).sqrt() }
}

/// Runs one trajectory from the all-empty (plus second-class) configuration.
pub fn simulate(config: &SimConfig) -> Result<SimResult, SimError> {
    config.validate()?;
    let (n, m) = (config.n, config.m);
    let p = &config.params;
    let s = to_f64(p.s());
    let rates = Rates {
        forward: s,
        backward: 1.0 / s,
        alpha: to_f64(p.alpha()),
        gamma: to_f64(p.gamma()),
        delta: to_f64(p.delta()),
        beta: to_f64(p.beta()),
    };

    let track = n <= OCCUPATION_MAX_N;
    let (lookup, dim) = if track {
        let sector = Sector::new(n, m)?;
        let mut lookup = vec![usize::MAX; 3usize.pow(n as u32)];
        for (i, c) in sector.configs().iter().enumerate() {
            lookup[code(c.sites())] = i;
        }
        (lookup, sector.dim())
    } else {
        (Vec::new(), 0)
    };

    let mut sites: Vec<Site> = (0..n).map(|i| if i < m { Site::Second } else { Site::Empty }).collect();
    let mut code_now = code(&sites);
    let mut first = 0usize;
    let mut tree = RateTree::new(n + 1);
    for slot in 0..=n {
        tree.set(slot, slot_rate(&sites, slot, &rates));
    }
    if m == n {
        // Only second-class particles: nothing can move.
        let frozen = Estimate { mean: 1.0, stderr: 0.0 };
        let zero = Estimate { mean: 0.0, stderr: 0.0 };
        return Ok(SimResult {
            config: config.clone(),
            occupation: if track { vec![frozen] } else { Vec::new() },
            current: zero,
            density: zero,
            elapsed_time: 0.0,
        });
    }
    let mut gen = rng(config.seed);
    let total_events = config.burn_in + config.events;
    let mut batches: Vec<Batch> = Vec::new();
    let mut cur = Batch::new(dim);

    for event in 0..total_events {
        let recording = event >= config.burn_in;
        let total = tree.total();
        if total <= 0.0 {
            return Err(SimError::Config("absorbing configuration reached".into()));
        }
        let u: f64 = gen.gen::<f64>();
        let dt = -(1.0 - u).ln() / total;
        if recording {
            cur.time += dt;
            cur.first_time += dt * first as f64;
            if track {
                cur.occ[lookup[code_now]] += dt;
            }
        }
        let slot = tree.find(gen.gen::<f64>() * total);
        let touched = if slot + 1 < n {
            sites.swap(slot, slot + 1);
            [slot.wrapping_sub(1), slot, slot + 1]
        } else {
            let pos = if slot + 1 == n { 0 } else { n - 1 };
            assert_ne!(sites[pos], Site::Second, "boundary event on a second-class particle");
            let injected = sites[pos] == Site::Empty;
            sites[pos] = if injected { Site::First } else { Site::Empty };
            first = if injected { first + 1 } else { first - 1 };
            if recording && pos == 0 && slot + 1 == n {
                cur.net += if injected { 1 } else { -1 };
            }
            [pos.wrapping_sub(1), pos, usize::MAX]
        };
        for b in touched {
            if b != usize::MAX && b + 1 < n {
                tree.set(b, slot_rate(&sites, b, &rates));
            }
        }
        tree.set(n - 1, slot_rate(&sites, n - 1, &rates));
        tree.set(n, slot_rate(&sites, n, &rates));
        if track {
            code_now = code(&sites);
        }
        debug_assert_eq!(sites.iter().filter(|x| **x == Site::Second).count(), m);
        if recording && (event - config.burn_in + 1).is_multiple_of(config.thinning) {
            batches.push(std::mem::replace(&mut cur, Batch::new(dim)));
        }
    }

    let times = batches.iter().map(|b| b.time);
    let current = batch_estimate(batches.iter().map(|b| b.net as f64 / b.time), times.clone());
    let density = batch_estimate(batches.iter().map(|b| b.first_time / b.time / n as f64), times.clone());
    let elapsed: f64 = batches.iter().map(|b| b.time).sum();
    let occupation = (0..dim)
        .map(|i| batch_estimate(batches.iter().map(|b| b.occ[i] / b.time), times.clone()))
        .collect();
    Ok(SimResult { config: config.clone(), occupation, current, density, elapsed_time: elapsed })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CompareReport {
    pub total_variation: f64,
    pub z_scores: BTreeMap<String, f64>,
    pub max_abs_z: f64,
    pub current_exact: f64,
    pub current_simulated: Estimate,
    pub current_z: f64,
}

/// Total-variation distance and z-scores against the exact stationary law.
pub fn compare(sim: &SimResult, exact: &StateVector) -> Result<CompareReport, SimError> {
    let (n, m) = (exact.n(), exact.m());
    if sim.config.n != n || sim.config.m != m {
        return Err(SimError::SectorMismatch { sim_n: sim.config.n, sim_m: sim.config.m, n, m });
    }
    if sim.occupation.is_empty() {
        return Err(SimError::Config("occupations were not tracked for this size".into()));
    }
    let vals = exact.at_ones();
    let z: crate::Rational = vals.iter().sum();
    let probs: Vec<f64> = vals.iter().map(|v| (v / &z).to_f64().unwrap_or(f64::NAN)).collect();
    let mut tv = 0.0;
    let mut z_scores = BTreeMap::new();
    let mut max_abs_z: f64 = 0.0;
    for ((c, e), p) in exact.sector().configs().iter().zip(&sim.occupation).zip(&probs) {
        tv += (e.mean - p).abs();
        let zs = if e.stderr > 0.0 { (e.mean - p) / e.stderr } else if e.mean == *p { 0.0 } else { f64::INFINITY };
        max_abs_z = max_abs_z.max(zs.abs());
        z_scores.insert(c.key(), zs);
    }
    let j = to_f64(&steady_current(n, m, exact.params())?);
    let current_z = if sim.current.stderr > 0.0 {
        (sim.current.mean - j) / sim.current.stderr
    } else if sim.current.mean == j {
        0.0
    } else {
        f64::INFINITY
    };
    Ok(CompareReport {
        total_variation: tv / 2.0,
        z_scores,
        max_abs_z,
        current_exact: j,
        current_simulated: sim.current,
        current_z,
    })
}

/// Configuration with the given key, for looking up occupations.
pub fn occupation_of(sim: &SimResult, c: &Configuration) -> Option<Estimate> {
    let sector = Sector::new(sim.config.n, sim.config.m).ok()?;
    sector.index_of(c).and_then(|i| sim.occupation.get(i).copied())
}
