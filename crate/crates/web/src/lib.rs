//! Browser bindings: band structure, zeta curve and walk simulation.
//!
//! Models are passed as the same JSON accepted by the command-line tool.
//! Results come back as flat `Float64Array`s laid out as documented on each
//! export.

use wasm_bindgen::prelude::*;
use walkzeta::closed_forms::{closed_zeta_inv, rw_limit_zeta_closed, is_simple_random_walk, ClosedFormId};
use walkzeta::coin_models::classify;
use walkzeta::numerics::eigenvalues;
use walkzeta::walk_operator::{evolve_step, fourier_block, measure, StateField};
use walkzeta::zeta_engine::zeta_inv_limit;
use walkzeta::{Complex, TorusSpec, WalkModel};

const MAX_SAMPLES: usize = 4096;
const MAX_SITES: usize = 4096;

fn model(json: &str) -> Result<WalkModel, String> {
    WalkModel::from_json(json).map_err(|e| e.to_string())
}

/// Per sample: `k`, then `(re, im)` of each eigenvalue of `M̂(k, ..., k)`.
pub fn band_values(json: &str, samples: usize) -> Result<Vec<f64>, String> {
    let m = model(json)?;
    let samples = samples.clamp(2, MAX_SAMPLES);
    let mut out = Vec::with_capacity(samples * (1 + 2 * m.chirality_dim()));
    for i in 0..samples {
        let k = -std::f64::consts::PI + 2.0 * std::f64::consts::PI * i as f64 / (samples - 1) as f64;
        let block = fourier_block(&m, &vec![k; m.lattice_dim()]).map_err(|e| e.to_string())?;
        out.push(k);
        for z in eigenvalues(&block).map_err(|e| e.to_string())? {
            out.push(z.re);
            out.push(z.im);
        }
    }
    Ok(out)
}

/// Per real `u` in `[-u_max, u_max]`: `u`, numeric `ζ̄^{-1}`, closed-form value.
/// Points outside the convergence disk and missing closed forms are `NaN`.
pub fn zeta_values(json: &str, u_max: f64, points: usize, n_quad: usize) -> Result<Vec<f64>, String> {
    let m = model(json)?;
    let points = points.clamp(2, MAX_SAMPLES);
    let n_quad = n_quad.clamp(4, if m.lattice_dim() == 1 { 8192 } else { 128 });
    let torus = TorusSpec::new(m.lattice_dim(), n_quad).map_err(|e| e.to_string())?;
    let id = ClosedFormId::for_model(&m);
    let simple = is_simple_random_walk(&m);
    let mut out = Vec::with_capacity(3 * points);
    for i in 0..points {
        let u = -u_max + 2.0 * u_max * i as f64 / (points - 1) as f64;
        let uc = Complex::new(u, 0.0);
        let numeric = zeta_inv_limit(&m, uc, n_quad).map(|z| z.re).unwrap_or(f64::NAN);
        let closed = if simple {
            rw_limit_zeta_closed(u).unwrap_or(f64::NAN)
        } else if let (Some(id), false) = (&id, numeric.is_nan()) {
            closed_zeta_inv(id, &torus, uc).map(|z| z.re).unwrap_or(f64::NAN)
        } else {
            f64::NAN
        };
        out.extend([u, numeric, closed]);
    }
    Ok(out)
}

/// Measure `μ_n(x)` for `n = 0..=steps` on a 1D ring of `side` sites, row by row.
/// The exponent is 2 for unitary coins and 1 otherwise.
pub fn simulate_values(json: &str, side: usize, steps: usize) -> Result<Vec<f64>, String> {
    let m = model(json)?;
    if m.lattice_dim() != 1 {
        return Err("simulation view supports one-dimensional models".into());
    }
    let side = side.clamp(3, MAX_SITES);
    let steps = steps.min(MAX_SITES);
    let torus = TorusSpec::new(1, side).map_err(|e| e.to_string())?;
    let p = if classify(&m).unitary { 2 } else { 1 };
    let dc = m.chirality_dim();
    let amp = if p == 2 {
        vec![Complex::new(1.0 / (dc as f64).sqrt(), 0.0); dc]
    } else {
        vec![Complex::new(1.0 / dc as f64, 0.0); dc]
    };
    let mut state = StateField::localized(torus, &[(side / 2) as i64], &amp);
    let mut out = Vec::with_capacity((steps + 1) * side);
    for n in 0..=steps {
        if n > 0 {
            state = evolve_step(&m, &state).map_err(|e| e.to_string())?;
        }
        out.extend(measure(&state, p).map_err(|e| e.to_string())?);
    }
    Ok(out)
}

#[wasm_bindgen]
pub fn band(json: &str, samples: usize) -> Result<Vec<f64>, JsError> {
    band_values(json, samples).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn zeta_curve(json: &str, u_max: f64, points: usize, n_quad: usize) -> Result<Vec<f64>, JsError> {
    zeta_values(json, u_max, points, n_quad).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn simulate(json: &str, side: usize, steps: usize) -> Result<Vec<f64>, JsError> {
    simulate_values(json, side, steps).map_err(|e| JsError::new(&e))
}
