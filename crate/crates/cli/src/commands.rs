use std::fmt::Write as _;

use anyhow::{bail, Context, Result};
use rayon::prelude::*;
use serde::Serialize;
use walkzeta::closed_forms::{sample_angles, standard_ids, verify_closed_form};
use walkzeta::coin_models::{
    classify, crw_from_qw, four_state_qw_1d, four_state_qw_2d, generalized_grover_coin, simple_random_walk,
    three_state_qw, GroverLattice,
};
use walkzeta::graph_zeta::{verify_konno_sato, GraphKind, RegularGraph};
use walkzeta::walk_operator::{evolve_step, measure, StateField};
use walkzeta::zeta_engine::{
    c_r_limit, full_operator_determinant, fourier_product_determinant, zeta_report, CrRoute, GridKind,
};
use walkzeta::{Complex, ShiftType, TorusSpec, WalkModel};

use crate::config::{Format, RunConfig, Suite};

pub const CLOSED_FORM_TOL: f64 = 1e-9;
pub const CLOSED_EIGEN_TOL: f64 = 1e-6;
pub const FULL_OPERATOR_TOL: f64 = 1e-8;
pub const ARC_IDENTITY_TOL: f64 = 1e-9;
pub const ROUTE_TOL: f64 = 1e-8;
pub const CONSERVATION_TOL: f64 = 1e-10;

const DEFAULT_N_QUAD: usize = 1024;
const GROVER_ETA: f64 = 1.910_633_236_249_018_6;

/// Rendered output plus the checks that missed their tolerance.
pub struct Report {
    pub body: String,
    pub failures: Vec<String>,
}

fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn opt_num(x: Option<f64>) -> String {
    x.map(num).unwrap_or_default()
}

fn json<T: Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

fn par_map<T: Sync, R: Send>(items: &[T], serial: bool, f: impl Fn(&T) -> R + Sync + Send) -> Vec<R> {
    if serial {
        items.iter().map(f).collect()
    } else {
        items.par_iter().map(f).collect()
    }
}

fn u_list(cfg: &RunConfig, default: &[Complex]) -> Vec<Complex> {
    if cfg.u.is_empty() {
        default.to_vec()
    } else {
        cfg.u.clone()
    }
}

/// Ten fixed points in the disk `|u| <= radius`.
fn u_samples(radius: f64) -> Vec<Complex> {
    (0..10)
        .map(|i| Complex::from_polar(radius * (0.35 + 0.065 * i as f64), 0.7 + 2.399_963 * i as f64))
        .collect()
}

fn residual_tolerance(name: &str) -> Option<f64> {
    match name {
        "closed_form" | "rw_closed_limit" => Some(CLOSED_FORM_TOL),
        "full_operator" => Some(FULL_OPERATOR_TOL),
        "c_r_weight" => Some(ROUTE_TOL),
        _ => None,
    }
}

pub fn zeta(cfg: &RunConfig) -> Result<Report> {
    let model = cfg.require_model()?;
    let d = model.lattice_dim();
    let grid = match (cfg.side, cfg.n_quad) {
        (Some(_), Some(_)) => bail!("give either --N or --n-quad, not both"),
        (Some(side), None) => GridKind::Finite { dim: d, side },
        (None, q) => GridKind::Quadrature {
            dim: d,
            points: q.unwrap_or(DEFAULT_N_QUAD),
        },
    };
    let us = u_list(cfg, &[Complex::new(0.0, 0.0)]);
    let r_max = cfg.r_max.unwrap_or(0);
    let reports = par_map(&us, cfg.serial, |&u| zeta_report(model, grid, u, r_max))
        .into_iter()
        .collect::<walkzeta::Result<Vec<_>>>()?;

    let mut failures = Vec::new();
    for rep in &reports {
        for (name, &value) in &rep.residuals {
            if let Some(tol) = residual_tolerance(name) {
                if !(value < tol) {
                    failures.push(format!("u={}: {name} residual {value:e} >= {tol:e}", rep.u));
                }
            }
        }
    }
    let body = match cfg.format {
        Format::Json => json(&reports)?,
        Format::Csv => {
            let mut s = String::from(
                "u_re,u_im,route,N,zeta_inv_re,zeta_inv_im,closed_form_residual,full_operator_residual,rw_closed_limit_residual\n",
            );
            for rep in &reports {
                let side = match rep.grid {
                    GridKind::Finite { side, .. } => side,
                    GridKind::Quadrature { points, .. } => points,
                };
                writeln!(
                    s,
                    "{},{},{},{side},{},{},{},{},{}",
                    num(rep.u.re),
                    num(rep.u.im),
                    rep.grid.route(),
                    num(rep.zeta_inv.re),
                    num(rep.zeta_inv.im),
                    opt_num(rep.residuals.get("closed_form").copied()),
                    opt_num(rep.residuals.get("full_operator").copied()),
                    opt_num(rep.residuals.get("rw_closed_limit").copied()),
                )?;
            }
            s
        }
    };
    Ok(Report { body, failures })
}

#[derive(Serialize)]
struct CoeffRow {
    r: u32,
    quadrature: Complex,
    weight: Complex,
    abs_diff: f64,
}

pub fn coeffs(cfg: &RunConfig) -> Result<Report> {
    let model = cfg.require_model()?;
    let r_max = cfg.r_max.unwrap_or(12);
    if r_max == 0 {
        bail!("--r-max must be at least 1");
    }
    let n_quad = cfg.n_quad.unwrap_or(512);
    let torus = TorusSpec::new(model.lattice_dim(), n_quad)?;
    let quad = walkzeta::zeta_engine::c_r_series_finite(model, &torus, r_max)?;
    let rs: Vec<u32> = (1..=r_max).collect();
    let weights = par_map(&rs, cfg.serial, |&r| c_r_limit(model, r, CrRoute::Weight))
        .into_iter()
        .collect::<walkzeta::Result<Vec<_>>>()?;
    let rows: Vec<CoeffRow> = rs
        .iter()
        .zip(quad.iter().zip(&weights))
        .map(|(&r, (&q, &w))| CoeffRow {
            r,
            quadrature: q,
            weight: w,
            abs_diff: (q - w).norm(),
        })
        .collect();
    let failures = rows
        .iter()
        .filter(|row| !(row.abs_diff < ROUTE_TOL))
        .map(|row| format!("r={}: |C_r quadrature - weight| = {:e} >= {ROUTE_TOL:e}", row.r, row.abs_diff))
        .collect();
    let body = match cfg.format {
        Format::Json => json(&rows)?,
        Format::Csv => {
            let mut s = String::from("r,c_r_quadrature_re,c_r_quadrature_im,c_r_weight_re,c_r_weight_im,abs_diff\n");
            for row in &rows {
                writeln!(
                    s,
                    "{},{},{},{},{},{}",
                    row.r,
                    num(row.quadrature.re),
                    num(row.quadrature.im),
                    num(row.weight.re),
                    num(row.weight.im),
                    num(row.abs_diff)
                )?;
            }
            s
        }
    };
    Ok(Report { body, failures })
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckRow {
    pub suite: &'static str,
    pub check: String,
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

fn check(suite: &'static str, name: String, residual: f64, tolerance: f64) -> CheckRow {
    CheckRow {
        suite,
        check: name,
        residual,
        tolerance,
        pass: residual < tolerance,
    }
}

fn closed_form_checks(cfg: &RunConfig) -> Result<Vec<CheckRow>> {
    let us = u_samples(0.9);
    let ids = standard_ids();
    let results = par_map(&ids, cfg.serial, |id| {
        let n = match id.lattice_dim() {
            1 => 16,
            2 => 4,
            _ => 3,
        };
        verify_closed_form(id, &sample_angles(id.lattice_dim(), n), &us)
    });
    let mut rows = Vec::new();
    for (id, res) in ids.iter().zip(results) {
        let res = res?;
        rows.push(check("closed-forms", format!("{id} determinant"), res.determinant, CLOSED_FORM_TOL));
        if let Some(e) = res.eigenvalues {
            rows.push(check("closed-forms", format!("{id} eigenvalues"), e, CLOSED_EIGEN_TOL));
        }
    }
    Ok(rows)
}

fn konno_sato_checks(cfg: &RunConfig) -> Result<Vec<CheckRow>> {
    let graphs: Vec<(String, RegularGraph)> = match &cfg.graph {
        Some(g) => vec![(format!("graph n={} degree={}", g.vertex_count(), g.degree()), g.clone())],
        None => [
            ("cycle(5)", GraphKind::Cycle(5)),
            ("complete(4)", GraphKind::Complete(4)),
            ("petersen", GraphKind::Petersen),
            ("hypercube(3)", GraphKind::Hypercube(3)),
            ("torus(2,4)", GraphKind::Torus { dim: 2, side: 4 }),
        ]
        .into_iter()
        .map(|(name, kind)| Ok((name.to_string(), RegularGraph::build(kind)?)))
        .collect::<walkzeta::Result<_>>()?,
    };
    let aa = if cfg.a.is_empty() { vec![0.0, 0.25, 0.5, 0.75, 1.0] } else { cfg.a.clone() };
    let us = u_list(cfg, &u_samples(0.4));
    let results = par_map(&graphs, cfg.serial, |(_, g)| verify_konno_sato(g, &aa, &us));
    graphs
        .iter()
        .zip(results)
        .map(|((name, _), r)| Ok(check("konno-sato", name.clone(), r?, ARC_IDENTITY_TOL)))
        .collect()
}

fn factorization_models() -> walkzeta::Result<Vec<WalkModel>> {
    let grover_f = three_state_qw(GROVER_ETA, ShiftType::F)?;
    Ok(vec![
        crw_from_qw(&grover_f)?,
        grover_f,
        three_state_qw(GROVER_ETA, ShiftType::M)?,
        four_state_qw_1d(0.5, ShiftType::F)?,
        four_state_qw_2d(0.3, ShiftType::M)?,
        generalized_grover_coin(4, 0.5, ShiftType::F, GroverLattice::Plane4)?,
        simple_random_walk(),
    ])
}

fn factorization_checks(cfg: &RunConfig) -> Result<Vec<CheckRow>> {
    let models = match &cfg.model {
        Some(m) => vec![m.clone()],
        None => factorization_models()?,
    };
    let side = cfg.side.unwrap_or(4);
    let us = u_list(cfg, &u_samples(0.5));
    let results = par_map(&models, cfg.serial, |m| -> walkzeta::Result<f64> {
        let torus = TorusSpec::new(m.lattice_dim(), side)?;
        let mut worst = 0.0f64;
        for &u in &us {
            let full = full_operator_determinant(m, &torus, u)?;
            let prod = fourier_product_determinant(m, &torus, u)?;
            worst = worst.max((full - prod).norm() / prod.norm().max(f64::MIN_POSITIVE));
        }
        Ok(worst)
    });
    models
        .iter()
        .zip(results)
        .map(|(m, r)| {
            Ok(check(
                "factorization",
                format!("{} N={side}", m.id()),
                r?,
                FULL_OPERATOR_TOL,
            ))
        })
        .collect()
}

pub fn verify(cfg: &RunConfig) -> Result<Report> {
    let suite = cfg.suite.unwrap_or(Suite::All);
    let mut rows = Vec::new();
    if matches!(suite, Suite::ClosedForms | Suite::All) {
        rows.extend(closed_form_checks(cfg)?);
    }
    if matches!(suite, Suite::KonnoSato | Suite::All) {
        rows.extend(konno_sato_checks(cfg)?);
    }
    if matches!(suite, Suite::Factorization | Suite::All) {
        rows.extend(factorization_checks(cfg)?);
    }
    let failures = rows
        .iter()
        .filter(|r| !r.pass)
        .map(|r| format!("{}: {} residual {:e} >= {:e}", r.suite, r.check, r.residual, r.tolerance))
        .collect();
    let body = match cfg.format {
        Format::Json => json(&rows)?,
        Format::Csv => {
            let mut s = String::from("suite,check,residual,tolerance,pass\n");
            for r in &rows {
                writeln!(
                    s,
                    "{},\"{}\",{},{},{}",
                    r.suite,
                    r.check,
                    num(r.residual),
                    num(r.tolerance),
                    r.pass
                )?;
            }
            s
        }
    };
    Ok(Report { body, failures })
}

#[derive(Serialize)]
struct SimStep {
    n: usize,
    total: f64,
    mu: Vec<f64>,
}

#[derive(Serialize)]
struct Simulation {
    model_id: String,
    dim: usize,
    side: usize,
    p: u32,
    steps: Vec<SimStep>,
}

pub fn simulate(cfg: &RunConfig) -> Result<Report> {
    let model = cfg.require_model()?;
    let d = model.lattice_dim();
    let side = cfg.side.unwrap_or(if d == 1 { 32 } else { 8 });
    let torus = TorusSpec::new(d, side)?;
    let cls = classify(model);
    let p = match cfg.p {
        Some(p) => p,
        None if cls.unitary => 2,
        None if cls.column_stochastic => 1,
        None => bail!("model is neither unitary nor stochastic; pass --p"),
    };
    let dc = model.chirality_dim();
    let amp = if p == 2 {
        vec![Complex::new(1.0 / (dc as f64).sqrt(), 0.0); dc]
    } else {
        vec![Complex::new(1.0 / dc as f64, 0.0); dc]
    };
    let mut state = StateField::localized(torus, &vec![0; d], &amp);
    let steps = cfg.steps.unwrap_or(20);
    let mut history = Vec::with_capacity(steps + 1);
    for n in 0..=steps {
        if n > 0 {
            state = evolve_step(model, &state)?;
        }
        let mu = measure(&state, p)?;
        history.push(SimStep {
            n,
            total: mu.iter().sum(),
            mu,
        });
    }
    let conserved = (cls.unitary && p == 2) || (cls.column_stochastic && p == 1);
    let mut failures = Vec::new();
    if conserved {
        let start = history[0].total;
        for s in &history {
            let drift = (s.total - start).abs();
            if !(drift < CONSERVATION_TOL) {
                failures.push(format!("n={}: total measure drifted by {drift:e}", s.n));
            }
        }
    }
    let body = match cfg.format {
        Format::Json => json(&Simulation {
            model_id: model.id(),
            dim: d,
            side,
            p,
            steps: history,
        })?,
        Format::Csv => {
            let mut s = String::from("n,");
            for j in 1..=d {
                write!(s, "x{j},")?;
            }
            s.push_str("mu\n");
            for step in &history {
                for (site, &mu) in step.mu.iter().enumerate() {
                    write!(s, "{},", step.n)?;
                    for x in torus.coords(site) {
                        write!(s, "{x},")?;
                    }
                    writeln!(s, "{}", num(mu))?;
                }
            }
            s
        }
    };
    Ok(Report { body, failures })
}

pub fn write_output(cfg: &RunConfig, body: &str) -> Result<()> {
    match &cfg.out {
        Some(path) => std::fs::write(path, body).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}
