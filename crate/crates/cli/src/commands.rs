use asep2::exact::{format_rational, q, to_f64, ParamRecord, Rational};
use asep2::hecke::{cycle_operator_check, verify_hecke_relations};
use asep2::model::{
    markov_matrix, verify_local_relations, verify_scattering_commutation,
    verify_scattering_derivative, Sector,
};
use asep2::montecarlo::{compare, simulate, SimConfig, OCCUPATION_MAX_N};
use asep2::observables::{
    density_first_class, mimachi_current, mimachi_density, mimachi_partition, partition_function,
    phase_diagram, steady_current, weighted_partition, CurrentConvention, QuadratureSettings,
};
use asep2::qkz::{
    build_state, verify_exchange_equations, verify_fugacity_covariance, verify_hcoeff,
    verify_recursions,
};
use asep2::qseries::{contiguous_relation_suite, AwParams};
use asep2::report::{all_pass, RelationReport};
use asep2::sampling::{random_spectral_point, rng};
use asep2::ParamPoint;
use num_traits::Zero;
use serde_json::{json, Map, Value};

use crate::error::CliError;
use crate::output::{scaled_decimal, Outcome, Table};
use crate::{Cli, Command, Global, Method, Suite};

/// Fugacity used by suites that need one when the parameter file has none.
fn default_xi() -> Rational {
    q(3, 5)
}

fn cap(n: usize, g: &Global) -> Result<(), CliError> {
    if n > g.max_n {
        Err(CliError::SizeCap { n, cap: g.max_n })
    } else {
        Ok(())
    }
}

fn sector(n: usize, m: usize) -> Result<Sector, CliError> {
    Sector::new(n, m).map_err(|e| CliError::Usage(e.to_string()))
}

/// Sector bounds without enumerating configurations.
fn sector_bounds(n: usize, m: usize) -> Result<(), CliError> {
    if n == 0 || m > n {
        Err(CliError::Usage(format!("no sector with N = {n}, m = {m}")))
    } else {
        Ok(())
    }
}

fn outcome(command: &'static str, params: ParamPoint, pass: bool, body: Value, table: Table) -> Outcome {
    let body = match body {
        Value::Object(m) => m,
        other => Map::from_iter([("result".to_string(), other)]),
    };
    Outcome { command, params, pass, body, table }
}

pub fn dispatch(cmd: &Command, g: &Global, p: ParamPoint) -> Result<Outcome, CliError> {
    let conv: CurrentConvention = g.current_convention.into();
    match cmd {
        Command::Steady { n, m } => steady(*n, *m, g, p, conv),
        Command::Verify { suite, n, m, nmax, mmax, degree, points } => {
            let opts = VerifyOpts { n: *n, m: *m, nmax: *nmax, mmax: *mmax, degree: *degree, points: *points };
            verify(*suite, &opts, g, p)
        }
        Command::Partition { n, m, method } => partition(*n, *m, *method, g, p),
        Command::Observables { n, m, method } => observables(*n, *m, *method, g, p, conv),
        Command::Phase { rho_star, grid, sizes } => phase(rho_star, *grid, sizes, g, p, conv),
        Command::Simulate { n, m, events, burn_in, thinning, tv_threshold, z_threshold, no_compare } => {
            let mut cfg = SimConfig::new(*n, *m, p, *events, g.seed);
            if let Some(b) = burn_in {
                cfg.burn_in = *b;
            }
            if let Some(t) = thinning {
                cfg.thinning = *t;
            }
            let thresholds = (!no_compare).then_some((*tv_threshold, *z_threshold));
            run_simulation(cfg, thresholds, g, conv)
        }
        Command::Reference => unreachable!("handled before parameters are loaded"),
    }
}

fn steady(n: usize, m: usize, g: &Global, p: ParamPoint, conv: CurrentConvention) -> Result<Outcome, CliError> {
    cap(n, g)?;
    let sec = sector(n, m)?;
    let state = build_state(n, m, &p).map_err(CliError::compute)?;
    let values = state.at_ones();
    let z: Rational = values.iter().sum();
    let formal = p.check_stochastic().is_err();
    let mm = markov_matrix(&sec, &p, formal).map_err(CliError::compute)?;
    let residual = mm.apply(&values, &Rational::zero()).map_err(CliError::compute)?;
    let stationary = residual.iter().all(|x| x.is_zero());

    let mut comps = Map::new();
    let mut table = Table::new(&["configuration", "polynomial", "value", "probability"]);
    for (w, v) in sec.configs().iter().zip(&values) {
        let poly = state.component(w).map(|x| x.to_string()).unwrap_or_default();
        let prob = to_f64(&(v / &z));
        comps.insert(
            w.key(),
            json!({"polynomial": poly, "value": format_rational(v), "probability": prob}),
        );
        table.push(vec![w.key(), poly, format_rational(v), prob.to_string()]);
    }
    let j = conv.apply_exact(&steady_current(n, m, &p).map_err(CliError::compute)?);
    let rho = density_first_class(n, m, &p).map_err(CliError::compute)?;
    let body = json!({
        "N": n,
        "m": m,
        "components": comps,
        "Z": format_rational(&z),
        "current": {"exact": format_rational(&j), "value": to_f64(&j), "convention": conv},
        "density_first_class": {"exact": format_rational(&rho), "value": to_f64(&rho)},
        "stationarity": {"markov": if formal { "formal" } else { "stochastic" }, "residual_zero": stationary},
    });
    Ok(outcome("steady", p, stationary, body, table))
}

struct VerifyOpts {
    n: usize,
    m: usize,
    nmax: usize,
    mmax: usize,
    degree: u32,
    points: usize,
}

/// Calls `f` on fresh spectral points until none sits on a pole.
fn with_spectral_points<T, E: std::fmt::Display>(
    r: &mut rand_chacha::ChaCha20Rng,
    len: usize,
    f: impl Fn(&[asep2::Rational]) -> Result<T, E>,
) -> Result<T, CliError> {
    let mut last = String::new();
    for _ in 0..20 {
        match f(&random_spectral_point(r, len, 97)) {
            Ok(v) => return Ok(v),
            Err(e) => last = e.to_string(),
        }
    }
    Err(CliError::Compute(last))
}

fn verify(suite: Suite, o: &VerifyOpts, g: &Global, p: ParamPoint) -> Result<Outcome, CliError> {
    let (n, m) = (o.n, o.m);
    let mut r = rng(g.seed);
    let point = json!({"N": n, "m": m, "params": ParamRecord::from(&p)});
    let reports: Vec<RelationReport> = match suite {
        Suite::Hecke => {
            cap(n, g)?;
            let mut rep = verify_hecke_relations(n, &p, o.degree).map_err(CliError::compute)?;
            for k in 0..=n {
                let res = cycle_operator_check(k, n - k, &p).map_err(CliError::compute)?;
                rep.push(RelationReport::new(format!("cycle identity k={k} m={}", n - k), point.clone(), res.is_zero()));
            }
            rep
        }
        Suite::Ybe => {
            cap(n, g)?;
            let sec = sector(n, m)?;
            let mut rep = Vec::new();
            for _ in 0..o.points {
                rep.extend(with_spectral_points(&mut r, n + 2, |z| {
                    let mut v = verify_local_relations(&sec, &p, &z[0], &z[1])?;
                    v.extend(verify_scattering_commutation(&sec, &p, &z[2..])?);
                    Ok::<_, asep2::model::ModelError>(v)
                })?);
            }
            rep.extend(verify_scattering_derivative(&sec, &p).map_err(CliError::compute)?);
            rep
        }
        Suite::Qkz => {
            cap(n, g)?;
            let state = build_state(n, m, &p).map_err(CliError::compute)?;
            let k = o.points.max(1);
            with_spectral_points(&mut r, n * k, |z| {
                let pts: Vec<Vec<Rational>> = z.chunks(n.max(1)).map(<[Rational]>::to_vec).collect();
                verify_exchange_equations(&state, &p, &pts)
            })?
        }
        Suite::Recursions => {
            cap(n, g)?;
            verify_recursions(n, m, &p).map_err(CliError::compute)?
        }
        Suite::Fugacity => {
            cap(n, g)?;
            let xi = p.xi().cloned().unwrap_or_else(default_xi);
            verify_fugacity_covariance(n, m, &p, &xi).map_err(CliError::compute)?
        }
        Suite::Hcoeff => verify_hcoeff(o.nmax, &p).map_err(CliError::compute)?,
        Suite::AwContiguous => {
            let aw = AwParams::new(p.a().clone(), p.b().clone(), p.c().clone(), p.d().clone(), p.t().clone());
            contiguous_relation_suite(&aw, p.s(), 0..=o.mmax).map_err(CliError::compute)?
        }
        Suite::Mimachi => {
            cap(n, g)?;
            mimachi_suite(n, m, g, &p)?
        }
    };
    let pass = all_pass(&reports);
    let mut table = Table::new(&["relation", "pass", "point"]);
    for x in &reports {
        table.push(vec![x.relation.clone(), x.pass.to_string(), x.point.to_string()]);
    }
    let failed = reports.iter().filter(|x| !x.pass).count();
    let body = json!({
        "suite": suite_name(suite),
        "checks": reports.len(),
        "failed": failed,
        "reports": reports,
    });
    Ok(outcome("verify", p, pass, body, table))
}

fn suite_name(s: Suite) -> String {
    clap::ValueEnum::to_possible_value(&s).map(|v| v.get_name().to_string()).unwrap_or_default()
}

/// Contour value against the exact `Z_{N,m}` at unit fugacity and, when the
/// parameters carry `xi`, at fugacity `xi²`.
fn mimachi_suite(n: usize, m: usize, g: &Global, p: &ParamPoint) -> Result<Vec<RelationReport>, CliError> {
    let state = build_state(n, m, p).map_err(CliError::compute)?;
    let settings = QuadratureSettings::default();
    let mut fugacities = vec![Rational::from_integer(1.into())];
    if let Some(xi) = p.xi() {
        fugacities.push(xi * xi);
    }
    fugacities
        .iter()
        .map(|f| {
            let exact = to_f64(&weighted_partition(&state, f).at_ones());
            let v = mimachi_partition(n, m, p, to_f64(f), &settings).map_err(CliError::compute)?;
            let rel = (v.value() - exact).abs() / exact.abs();
            let point = json!({
                "N": n, "m": m, "fugacity": format_rational(f),
                "exact": exact, "contour": v.value(), "relative_error": rel,
                "nodes": v.nodes, "residues": v.residues, "tol": g.tol,
            });
            Ok(RelationReport::new("contour integral equals exact Z", point, rel < g.tol))
        })
        .collect()
}

fn partition(n: usize, m: usize, method: Method, g: &Global, p: ParamPoint) -> Result<Outcome, CliError> {
    sector_bounds(n, m)?;
    let fug = p.xi().map(|x| x * x);
    let mut table = Table::new(&["N", "m", "method", "fugacity", "Z"]);
    let body = match method {
        Method::Exact => {
            cap(n, g)?;
            let state = build_state(n, m, &p).map_err(CliError::compute)?;
            let pd = partition_function(&state).map_err(CliError::compute)?;
            table.push(vec![n.to_string(), m.to_string(), "exact".into(), "1".into(), format_rational(&pd.zhom)]);
            let mut body = json!({
                "N": n, "m": m, "method": "exact",
                "polynomial": pd.zpoly.to_string(),
                "Z": format_rational(&pd.zhom),
                "by_first_class": pd.zweighted.iter().map(|x| x.at_ones()).map(|x| format_rational(&x)).collect::<Vec<_>>(),
            });
            if let Some(f) = &fug {
                let zf = weighted_partition(&state, f).at_ones();
                table.push(vec![n.to_string(), m.to_string(), "exact".into(), format_rational(f), format_rational(&zf)]);
                body["Z_fugacity"] = json!({"fugacity": format_rational(f), "value": format_rational(&zf)});
            }
            body
        }
        Method::Contour => {
            let settings = QuadratureSettings::default();
            let mut rows = Vec::new();
            for f in std::iter::once(Rational::from_integer(1.into())).chain(fug) {
                let v = mimachi_partition(n, m, &p, to_f64(&f), &settings).map_err(CliError::compute)?;
                let z = scaled_decimal(v.mantissa, v.log_scale);
                table.push(vec![n.to_string(), m.to_string(), "contour".into(), format_rational(&f), z.clone()]);
                rows.push(json!({"fugacity": format_rational(&f), "Z": z, "ln_abs_Z": v.ln_abs(), "nodes": v.nodes, "residues": v.residues}));
            }
            json!({"N": n, "m": m, "method": "contour", "values": rows})
        }
    };
    Ok(outcome("partition", p, true, body, table))
}

fn observables(
    n: usize,
    m: usize,
    method: Method,
    g: &Global,
    p: ParamPoint,
    conv: CurrentConvention,
) -> Result<Outcome, CliError> {
    sector_bounds(n, m)?;
    let mut table = Table::new(&["N", "m", "method", "J", "rho_bullet"]);
    let body = match method {
        Method::Exact => {
            cap(n, g)?;
            let j = conv.apply_exact(&steady_current(n, m, &p).map_err(CliError::compute)?);
            let rho = density_first_class(n, m, &p).map_err(CliError::compute)?;
            table.push(vec![n.to_string(), m.to_string(), "exact".into(), to_f64(&j).to_string(), to_f64(&rho).to_string()]);
            json!({
                "N": n, "m": m, "method": "exact", "convention": conv,
                "current": {"exact": format_rational(&j), "value": to_f64(&j)},
                "density_first_class": {"exact": format_rational(&rho), "value": to_f64(&rho)},
            })
        }
        Method::Contour => {
            let s = QuadratureSettings::default();
            let j = conv.sign() * mimachi_current(n, m, &p, &s).map_err(CliError::compute)?;
            let rho = mimachi_density(n, m, &p, &s).map_err(CliError::compute)?;
            table.push(vec![n.to_string(), m.to_string(), "contour".into(), j.to_string(), rho.to_string()]);
            json!({
                "N": n, "m": m, "method": "contour", "convention": conv,
                "current": {"value": j},
                "density_first_class": {"value": rho},
            })
        }
    };
    Ok(outcome("observables", p, true, body, table))
}

const PHASE_COLUMNS: [&str; 14] =
    ["N", "m", "rho_star", "t", "a", "b", "c", "d", "xi", "Z", "J", "rho_bullet", "phase", "method"];

fn phase(
    rho_star: &[f64],
    grid: Option<usize>,
    sizes: &[usize],
    _g: &Global,
    p: ParamPoint,
    conv: CurrentConvention,
) -> Result<Outcome, CliError> {
    let points: Vec<f64> = match grid {
        Some(0) => return Err(CliError::Usage("--grid needs at least one point".into())),
        Some(k) => (0..k).map(|i| i as f64 / k as f64).collect(),
        None if rho_star.is_empty() => return Err(CliError::Usage("give --rho-star or --grid".into())),
        None => rho_star.to_vec(),
    };
    let rec = ParamRecord::from(&p);
    let xi = rec.xi.clone().unwrap_or_else(|| "1".into());
    let t = format_rational(p.t());
    let settings = QuadratureSettings::default();
    let mut table = Table::new(&PHASE_COLUMNS);
    let row = |n: String, m: String, rho: f64, z: String, j: f64, rb: f64, ph: &str, method: &str| {
        vec![
            n, m, rho.to_string(), t.clone(), rec.a.clone(), rec.b.clone(), rec.c.clone(), rec.d.clone(),
            xi.clone(), z, j.to_string(), rb.to_string(), ph.to_string(), method.to_string(),
        ]
    };
    for &rho in &points {
        let res = phase_diagram(rho, &p).map_err(CliError::compute)?;
        let name = res.phase.name();
        table.push(row(String::new(), String::new(), rho, String::new(), conv.sign() * res.j, res.rho_bullet, name, "limit"));
        for &n in sizes {
            let m = (rho * n as f64).round() as usize;
            let z = mimachi_partition(n, m, &p, 1.0, &settings).map_err(CliError::compute)?;
            let j = conv.sign() * mimachi_current(n, m, &p, &settings).map_err(CliError::compute)?;
            let rb = mimachi_density(n, m, &p, &settings).map_err(CliError::compute)?;
            let zs = scaled_decimal(z.mantissa, z.log_scale);
            table.push(row(n.to_string(), m.to_string(), rho, zs, j, rb, name, "contour"));
        }
    }
    let rows: Vec<Value> = table
        .rows
        .iter()
        .map(|r| Value::Object(PHASE_COLUMNS.iter().map(|h| h.to_string()).zip(r.iter().map(|v| json!(v))).collect()))
        .collect();
    let body = json!({"convention": conv, "rows": rows});
    Ok(outcome("phase", p, true, body, table))
}

fn run_simulation(
    cfg: SimConfig,
    thresholds: Option<(f64, f64)>,
    g: &Global,
    conv: CurrentConvention,
) -> Result<Outcome, CliError> {
    let (n, m) = (cfg.n, cfg.m);
    let p = cfg.params.clone();
    let sim = simulate(&cfg).map_err(CliError::compute)?;
    let sign = conv.sign();
    let mut sim_json = sim.to_json();
    sim_json["current"]["mean"] = json!(sign * sim.current.mean);
    sim_json["convention"] = json!(conv);
    let mut body = json!({"simulation": sim_json});
    let mut table = Table::new(&["configuration", "simulated", "stderr", "exact", "z"]);
    let mut pass = true;
    if let Some((tv_max, z_max)) = thresholds {
        cap(n, g)?;
        if n > OCCUPATION_MAX_N {
            return Err(CliError::Usage(format!("comparison needs N ≤ {OCCUPATION_MAX_N}; pass --no-compare")));
        }
        let exact = build_state(n, m, &p).map_err(CliError::compute)?;
        let rep = compare(&sim, &exact).map_err(CliError::compute)?;
        let values = exact.at_ones();
        let z: Rational = values.iter().sum();
        let sec = sector(n, m)?;
        for ((w, v), est) in sec.configs().iter().zip(&values).zip(&sim.occupation) {
            let zs = rep.z_scores.get(&w.key()).copied().unwrap_or(0.0);
            table.push(vec![w.key(), est.mean.to_string(), est.stderr.to_string(), to_f64(&(v / &z)).to_string(), zs.to_string()]);
        }
        pass = rep.total_variation < tv_max && rep.current_z.abs() < z_max;
        body["comparison"] = json!({
            "total_variation": rep.total_variation,
            "tv_threshold": tv_max,
            "max_abs_z": rep.max_abs_z,
            "current_exact": sign * rep.current_exact,
            "current_simulated": {"mean": sign * rep.current_simulated.mean, "stderr": rep.current_simulated.stderr},
            "current_z": sign * rep.current_z,
            "z_threshold": z_max,
            "z_scores": rep.z_scores,
        });
    } else if !sim.occupation.is_empty() {
        let sec = sector(n, m)?;
        for (w, est) in sec.configs().iter().zip(&sim.occupation) {
            table.push(vec![w.key(), est.mean.to_string(), est.stderr.to_string(), String::new(), String::new()]);
        }
    }
    Ok(outcome("simulate", p, pass, body, table))
}

/// Markdown reference for every subcommand and flag.
pub fn reference() -> String {
    clap_markdown::help_markdown::<Cli>()
}
