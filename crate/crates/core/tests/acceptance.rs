//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use walkzeta::closed_forms::{
    gg_torus_product, gg_torus_zeta_inv, log_series_lemma, sample_angles, standard_ids,
    verify_closed_form, ClosedFormId,
};
use walkzeta::coin_models::{
    classify, crw_from_qw, four_state_qw_1d, four_state_qw_2d, generalized_grover_coin,
    simple_random_walk, three_state_qw, GroverLattice, ShiftType, WalkModel,
};
use walkzeta::graph_zeta::{arc_operator, konno_sato_lhs, verify_konno_sato, GraphKind, RegularGraph};
use walkzeta::numerics::{c, eigenvalues, multiset_distance, re, Complex};
use walkzeta::walk_operator::{evolve_step, fourier_block, measure, StateField, TorusSpec};
use walkzeta::zeta_engine::{c_r_limit, full_operator_determinant, fourier_product_determinant, zeta_inv_limit, CrRoute};

const FACTORIZATION_TOL: f64 = 1e-8;
const CLOSED_FORM_TOL: f64 = 1e-9;
const RW_LIMIT_TOL: f64 = 1e-9;
const LEMMA_TOL: f64 = 1e-12;
const ROUTE_TOL: f64 = 1e-8;
const ARC_IDENTITY_TOL: f64 = 1e-9;
const A_INDEPENDENCE_TOL: f64 = 1e-12;
const CORRESPONDENCE_TOL: f64 = 1e-8;
const CONSERVATION_TOL: f64 = 1e-10;

const GROVER_ETA: f64 = 1.910_633_236_249_018_6;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn disk_samples(rng: &mut ChaCha8Rng, count: usize, radius: f64) -> Vec<Complex> {
    (0..count)
        .map(|_| {
            let r = radius * rng.gen::<f64>().sqrt();
            Complex::from_polar(r, rng.gen_range(0.0..2.0 * PI))
        })
        .collect()
}

/// One representative parameter per family and shift.
fn representative_ids() -> Vec<ClosedFormId> {
    let mut seen = BTreeMap::new();
    for id in standard_ids() {
        let key = match &id {
            ClosedFormId::GgTorus { dim, .. } => format!("gg_torus{dim}"),
            other => other.to_string().split('(').next().unwrap().to_string(),
        };
        seen.entry(key).or_insert_with(Vec::new).push(id);
    }
    // Middle parameter, away from the endpoints p = 0 and a = 0.
    seen.into_values().map(|ids| ids[ids.len() / 2].clone()).collect()
}

fn torus_for(model: &WalkModel) -> TorusSpec {
    let d = model.lattice_dim();
    let dc = model.chirality_dim();
    let mut side = 2;
    while dc * (side + 1usize).pow(d as u32) <= 256 {
        side += 1;
    }
    TorusSpec::new(d, side).unwrap()
}

fn criterion_1() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut worst = 0.0f64;
    let mut worst_id = String::new();
    let ids = representative_ids();
    for id in &ids {
        let model = id.model().unwrap();
        let torus = torus_for(&model);
        for u in disk_samples(&mut rng, 10, 0.5) {
            let full = full_operator_determinant(&model, &torus, u).unwrap();
            let prod = fourier_product_determinant(&model, &torus, u).unwrap();
            let rel = (full - prod).norm() / prod.norm().max(f64::MIN_POSITIVE);
            if rel > worst {
                worst = rel;
                worst_id = format!("{id} on N={}", torus.side());
            }
        }
    }
    outcome(
        worst < FACTORIZATION_TOL,
        format!("{} models x 10 u, max rel {worst:.2e} ({worst_id})", ids.len()),
    )
}

fn criterion_2() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let us = disk_samples(&mut rng, 8, 0.9);
    let mut per_family: BTreeMap<String, (usize, f64)> = BTreeMap::new();
    for id in standard_ids() {
        let n = match id.lattice_dim() {
            1 => 16,
            2 => 4,
            _ => 3,
        };
        let res = verify_closed_form(&id, &sample_angles(id.lattice_dim(), n), &us).unwrap();
        let key = id.to_string().split('(').next().unwrap().to_string();
        let key = if key.starts_with("gg_torus") { "gg_torus".to_string() } else { key };
        let entry = per_family.entry(key).or_insert((0, 0.0));
        entry.0 += res.samples;
        entry.1 = entry.1.max(res.determinant);
    }
    let worst = per_family.values().map(|v| v.1).fold(0.0, f64::max);
    let fewest = per_family.values().map(|v| v.0).min().unwrap();
    let failing: Vec<&String> = per_family.iter().filter(|(_, v)| v.1 >= CLOSED_FORM_TOL).map(|(k, _)| k).collect();
    outcome(
        worst < CLOSED_FORM_TOL && fewest >= 256,
        format!(
            "{} families, >= {fewest} triples each, max abs {worst:.2e}{}",
            per_family.len(),
            if failing.is_empty() { String::new() } else { format!(", failing {failing:?}") }
        ),
    )
}

fn criterion_3() -> Outcome {
    let rw = simple_random_walk();
    let mut worst = 0.0f64;
    for u in [0.2, -0.2, 0.6, -0.6, 0.9, -0.9] {
        let z = zeta_inv_limit(&rw, re(u), 4096).unwrap();
        let want = (1.0 + (1.0 - u * u).sqrt()) / 2.0;
        worst = worst.max((z - re(want)).norm());
    }
    outcome(worst < RW_LIMIT_TOL, format!("6 u values, max abs {worst:.2e}"))
}

fn criterion_4() -> Outcome {
    let mut worst = 0.0f64;
    for (x, terms) in [(0.1, 60), (0.5, 60), (0.9, 200)] {
        let lhs = ((1.0 + (1.0f64 - x * x).sqrt()) / 2.0).ln();
        worst = worst.max((log_series_lemma(x, terms).unwrap() - lhs).abs());
    }
    outcome(worst < LEMMA_TOL, format!("x in {{0.1, 0.5}} at 60 terms, 0.9 at 200, max abs {worst:.2e}"))
}

fn criterion_5() -> Outcome {
    let models = [
        simple_random_walk(),
        three_state_qw(GROVER_ETA, ShiftType::M).unwrap(),
        three_state_qw(GROVER_ETA, ShiftType::F).unwrap(),
        four_state_qw_1d(0.5, ShiftType::F).unwrap(),
        four_state_qw_2d(0.5, ShiftType::F).unwrap(),
    ];
    let mut worst = 0.0f64;
    for m in &models {
        let torus = TorusSpec::new(m.lattice_dim(), 512).unwrap();
        let quad = walkzeta::zeta_engine::c_r_series_finite(m, &torus, 12).unwrap();
        for r in 1..=12u32 {
            let w = c_r_limit(m, r, CrRoute::Weight).unwrap();
            worst = worst.max((quad[r as usize - 1] - w).norm());
        }
    }
    outcome(worst < ROUTE_TOL, format!("5 models, r <= 12, max abs {worst:.2e}"))
}

fn criterion_6() -> Outcome {
    let aa = [0.0, 0.25, 0.5, 0.75, 1.0];
    let us: Vec<Complex> = (0..10).map(|i| c(-0.4 + 0.08 * i as f64 + 0.01, 0.03 * (i as f64 - 4.5))).collect();
    let mut worst = 0.0f64;
    for kind in [
        GraphKind::Cycle(5),
        GraphKind::Complete(4),
        GraphKind::Petersen,
        GraphKind::Hypercube(3),
        GraphKind::Torus { dim: 2, side: 4 },
    ] {
        let g = RegularGraph::build(kind).unwrap();
        worst = worst.max(verify_konno_sato(&g, &aa, &us).unwrap());
    }
    let c5 = RegularGraph::build(GraphKind::Cycle(5)).unwrap();
    let mut drift = 0.0f64;
    for &u in &us {
        let base = konno_sato_lhs(&c5, 0.0, u).unwrap();
        for &a in &aa[1..] {
            drift = drift.max((konno_sato_lhs(&c5, a, u).unwrap() - base).norm());
        }
    }
    outcome(
        worst < ARC_IDENTITY_TOL && drift < A_INDEPENDENCE_TOL,
        format!("5 graphs x 5 a x 10 u, max rel {worst:.2e}; cycle(5) a-drift {drift:.2e}"),
    )
}

fn criterion_7() -> Outcome {
    let g = RegularGraph::build(GraphKind::Torus { dim: 2, side: 4 }).unwrap();
    let torus = TorusSpec::new(2, 4).unwrap();
    let sites = torus.site_count() as f64;
    let mut worst = 0.0f64;
    let mut spectral = 0.0f64;
    for a in [0.0, 0.5, 1.0] {
        for u in [re(0.1), re(-0.25), c(0.2, 0.15), c(-0.05, 0.3)] {
            let lhs = konno_sato_lhs(&g, a, u).unwrap();
            let prod = gg_torus_product(&torus, a, u);
            worst = worst.max((lhs - prod).norm() / lhs.norm());
            let powered = (gg_torus_zeta_inv(&torus, a, u).ln() * sites).exp();
            worst = worst.max((lhs - powered).norm() / lhs.norm());
        }
        let model = generalized_grover_coin(4, a, ShiftType::F, GroverLattice::Torus(2)).unwrap();
        let mut union = Vec::new();
        for k in torus.wavevectors() {
            union.extend(eigenvalues(&fourier_block(&model, &k).unwrap()).unwrap());
        }
        let arcs = eigenvalues(&arc_operator(&g, a)).unwrap();
        spectral = spectral.max(multiset_distance(&arcs, &union));
    }
    outcome(
        worst < CORRESPONDENCE_TOL && spectral < CORRESPONDENCE_TOL,
        format!("3 a x 4 u, max rel {worst:.2e}; spectra distance {spectral:.2e}"),
    )
}

fn total_mass(state: &StateField, p: u32) -> f64 {
    measure(state, p).unwrap().iter().sum()
}

fn criterion_8() -> Outcome {
    let qws = [
        three_state_qw(GROVER_ETA, ShiftType::F).unwrap(),
        three_state_qw(0.7, ShiftType::M).unwrap(),
        four_state_qw_1d(0.3, ShiftType::M).unwrap(),
        four_state_qw_1d(0.5, ShiftType::F).unwrap(),
        four_state_qw_2d(0.2, ShiftType::M).unwrap(),
        four_state_qw_2d(0.6, ShiftType::F).unwrap(),
        generalized_grover_coin(4, 1.0, ShiftType::F, GroverLattice::Plane4).unwrap(),
    ];
    let mut worst_qw = 0.0f64;
    let mut worst_crw = 0.0f64;
    for (p, models) in [(2, qws.to_vec()), (1, qws[..6].iter().map(|m| crw_from_qw(m).unwrap()).collect())] {
        for model in models {
            let d = model.lattice_dim();
            let torus = TorusSpec::new(d, if d == 1 { 32 } else { 8 }).unwrap();
            let dc = model.chirality_dim();
            let amp: Vec<Complex> = if p == 2 {
                (0..dc).map(|j| Complex::from_polar(1.0 / (dc as f64).sqrt(), j as f64)).collect()
            } else {
                vec![re(1.0 / dc as f64); dc]
            };
            let mut state = StateField::localized(torus, &vec![0; d], &amp);
            let start = total_mass(&state, p);
            for _ in 0..50 {
                state = evolve_step(&model, &state).unwrap();
                let drift = (total_mass(&state, p) - start).abs();
                if p == 2 {
                    worst_qw = worst_qw.max(drift);
                } else {
                    worst_crw = worst_crw.max(drift);
                }
            }
        }
    }
    outcome(
        worst_qw < CONSERVATION_TOL && worst_crw < CONSERVATION_TOL,
        format!("7 QW (p=2) drift {worst_qw:.2e}; 6 CRW (p=1) drift {worst_crw:.2e}"),
    )
}

fn criterion_9() -> Outcome {
    let lattices = [
        (2, GroverLattice::Torus(1)),
        (3, GroverLattice::Line3),
        (4, GroverLattice::Line4),
        (6, GroverLattice::Torus(3)),
    ];
    let mut wrong = Vec::new();
    for (dc, lattice) in lattices {
        for a in [0.0, 0.5, 1.0] {
            for shift in [ShiftType::M, ShiftType::F] {
                let model = generalized_grover_coin(dc, a, shift, lattice).unwrap();
                let want = dc == 2 || a == 1.0;
                if classify(&model).unitary != want {
                    wrong.push(format!("d_c={dc} a={a} {}", shift.label()));
                }
            }
        }
    }
    outcome(wrong.is_empty(), format!("24 coins, mismatches {wrong:?}"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome, Duration); 9] = [
        ("determinant factorization", criterion_1, Duration::from_secs(10)),
        ("closed-form determinants", criterion_2, Duration::from_secs(30)),
        ("random walk limit value", criterion_3, Duration::from_secs(5)),
        ("log series identity", criterion_4, Duration::from_secs(5)),
        ("C_r route agreement", criterion_5, Duration::from_secs(60)),
        ("arc determinant identity", criterion_6, Duration::from_secs(30)),
        ("torus Grover/walk correspondence", criterion_7, Duration::from_secs(30)),
        ("conservation", criterion_8, Duration::from_secs(30)),
        ("generalized Grover unitarity", criterion_9, Duration::from_secs(5)),
    ];
    let mut failures = 0;
    for (i, (name, run, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let out = run();
        let elapsed = start.elapsed();
        let pass = out.pass && elapsed <= *budget;
        if !pass {
            failures += 1;
        }
        println!(
            "criterion {} {:<34} {} [{:.2}s / {}s] {}",
            i + 1,
            name,
            if pass { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            budget.as_secs(),
            out.detail
        );
    }
    if failures == 0 {
        println!("acceptance: all {} criteria pass", criteria.len());
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failures} of {} criteria fail", criteria.len());
        ExitCode::FAILURE
    }
}
