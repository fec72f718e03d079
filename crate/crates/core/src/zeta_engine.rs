//! Walk-type zeta function `ζ̄(A, T^d_N, u)` and its series coefficients `C_r`.
//!
//! The inverse zeta value is `exp[(1/N^d) Σ_k log det(I - u M̂(k))]`. The
//! `N → ∞` limit is the same sum on an `n_quad`-point periodic grid, which is
//! the trapezoidal rule for the uniform integral over `[0, 2π)^d`.
//!
//! Logarithms are taken branch by branch: `log det(I - u M̂) = Σ_j Log(1 - u λ_j)`,
//! which is continuous in `u` inside the disk `|u| ρ < 1`. The determinant
//! itself comes from LU; the eigenvalues only select the `2πi` branch.
//! Grid sums are serial in lexicographic wave-vector order, so repeated runs
//! are bitwise identical.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use serde::Serialize;

use crate::closed_forms::{self, ClosedFormId};
use crate::coin_models::WalkModel;
use crate::error::{Error, Result};
use crate::numerics::{determinant, eigenvalues, mul_unchecked, re, Complex, ComplexMatrix};
use crate::walk_operator::{fourier_block, full_operator, matrix_weight_origin, TorusSpec, FULL_OPERATOR_CAP};

/// `log det(I - u B)` on the branch continuous from `u = 0`, plus the block's
/// spectral radius.
pub fn log_det_resolvent(block: &ComplexMatrix, u: Complex) -> Result<(Complex, f64)> {
    let n = block.rows();
    let ev = eigenvalues(block)?;
    let rho = ev.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let branch: Complex = ev.iter().map(|&l| (re(1.0) - u * l).ln()).sum();
    let det = determinant(&ComplexMatrix::identity(n).sub(&block.scale(u))?)?;
    if det.norm() == 0.0 || !det.is_finite() {
        return Ok((branch, rho));
    }
    let principal = det.ln();
    let turns = ((branch.im - principal.im) / (2.0 * PI)).round();
    Ok((principal + Complex::new(0.0, 2.0 * PI * turns), rho))
}

/// Largest eigenvalue modulus of `M̂(k)` over the torus grid.
pub fn spectral_radius(model: &WalkModel, torus: &TorusSpec) -> Result<f64> {
    let mut rho = 0.0f64;
    for k in torus.wavevectors() {
        let ev = eigenvalues(&fourier_block(model, &k)?)?;
        rho = ev.iter().map(|z| z.norm()).fold(rho, f64::max);
    }
    Ok(rho)
}

/// `(1/N^d) Σ_k log det(I - u M̂(k))`, guarded by `|u| ρ < 1`.
pub fn log_zeta_inv_finite(model: &WalkModel, torus: &TorusSpec, u: Complex) -> Result<Complex> {
    check_dim(model, torus)?;
    let mut sum = re(0.0);
    let mut rho = 0.0f64;
    for k in torus.wavevectors() {
        let (ld, r) = log_det_resolvent(&fourier_block(model, &k)?, u)?;
        sum += ld;
        rho = rho.max(r);
    }
    if u.norm() * rho >= 1.0 {
        return Err(Error::OutsideConvergenceDisk {
            u_modulus: u.norm(),
            spectral_radius: rho,
        });
    }
    Ok(sum / torus.site_count() as f64)
}

/// `ζ̄(A, T^d_N, u)^{-1}`.
pub fn zeta_inv_finite(model: &WalkModel, torus: &TorusSpec, u: Complex) -> Result<Complex> {
    Ok(log_zeta_inv_finite(model, torus, u)?.exp())
}

/// `lim_N ζ̄^{-1}` by the periodic trapezoidal rule with `n_quad` points per axis.
pub fn zeta_inv_limit(model: &WalkModel, u: Complex, n_quad: usize) -> Result<Complex> {
    zeta_inv_finite(model, &TorusSpec::new(model.lattice_dim(), n_quad)?, u)
}

/// `det(I - u M_A)` from the assembled torus operator.
pub fn full_operator_determinant(model: &WalkModel, torus: &TorusSpec, u: Complex) -> Result<Complex> {
    let m = full_operator(model, torus)?;
    let n = m.rows();
    determinant(&ComplexMatrix::identity(n).sub(&m.scale(u))?)
}

/// `Π_k det(I - u M̂(k))`.
pub fn fourier_product_determinant(model: &WalkModel, torus: &TorusSpec, u: Complex) -> Result<Complex> {
    check_dim(model, torus)?;
    let mut prod = re(1.0);
    for k in torus.wavevectors() {
        let b = fourier_block(model, &k)?;
        prod *= determinant(&ComplexMatrix::identity(b.rows()).sub(&b.scale(u))?)?;
    }
    Ok(prod)
}

/// `C_r(A, T^d_N) = (1/N^d) Σ_k Tr(M̂(k)^r)`.
pub fn c_r_finite(model: &WalkModel, torus: &TorusSpec, r: u32) -> Result<Complex> {
    if r == 0 {
        return Err(Error::InvalidParameter("r must be positive".into()));
    }
    Ok(c_r_series_finite(model, torus, r)?[r as usize - 1])
}

/// `[C_1, ..., C_{r_max}]` in one pass over the grid.
pub fn c_r_series_finite(model: &WalkModel, torus: &TorusSpec, r_max: u32) -> Result<Vec<Complex>> {
    check_dim(model, torus)?;
    let mut acc = vec![re(0.0); r_max as usize];
    for k in torus.wavevectors() {
        let b = fourier_block(model, &k)?;
        let mut power = b.clone();
        for slot in acc.iter_mut() {
            *slot += power.trace();
            power = mul_unchecked(&power, &b);
        }
    }
    let scale = 1.0 / torus.site_count() as f64;
    Ok(acc.into_iter().map(|z| z * scale).collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CrRoute {
    /// Trapezoidal rule with this many points per axis.
    Quadrature(usize),
    /// Trace of the return matrix weight on `Z^d`.
    Weight,
}

/// `lim_N C_r`.
pub fn c_r_limit(model: &WalkModel, r: u32, route: CrRoute) -> Result<Complex> {
    match route {
        CrRoute::Quadrature(n) => c_r_finite(model, &TorusSpec::new(model.lattice_dim(), n)?, r),
        CrRoute::Weight => Ok(matrix_weight_origin(model, r).trace()),
    }
}

/// `|-log ζ̄^{-1}(u) - Σ_{r<=R} C_r u^r / r|`.
pub fn series_consistency(model: &WalkModel, torus: &TorusSpec, u: Complex, r_max: u32) -> Result<f64> {
    let log_inv = log_zeta_inv_finite(model, torus, u)?;
    if r_max == 0 {
        return Ok(log_inv.norm());
    }
    let coeffs = c_r_series_finite(model, torus, r_max)?;
    let mut upow = re(1.0);
    let mut series = re(0.0);
    for (i, cr) in coeffs.iter().enumerate() {
        upow *= u;
        series += cr * upow / (i as f64 + 1.0);
    }
    Ok((-log_inv - series).norm())
}

fn check_dim(model: &WalkModel, torus: &TorusSpec) -> Result<()> {
    if model.lattice_dim() != torus.dim() {
        return Err(Error::InvalidParameter(format!(
            "model dimension {} does not match torus dimension {}",
            model.lattice_dim(),
            torus.dim()
        )));
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GridKind {
    /// Finite torus `T^d_N`.
    Finite { dim: usize, side: usize },
    /// `N → ∞` limit by trapezoid with `points` per axis.
    Quadrature { dim: usize, points: usize },
}

impl GridKind {
    pub fn torus(&self) -> Result<TorusSpec> {
        match *self {
            GridKind::Finite { dim, side } => TorusSpec::new(dim, side),
            GridKind::Quadrature { dim, points } => TorusSpec::new(dim, points),
        }
    }

    pub fn route(&self) -> &'static str {
        match self {
            GridKind::Finite { .. } => "finite",
            GridKind::Quadrature { .. } => "quadrature",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CrEntry {
    pub r: u32,
    pub value: Complex,
    pub route: CrRoute,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ZetaReport {
    pub model_id: String,
    pub u: Complex,
    pub grid: GridKind,
    pub zeta_inv: Complex,
    pub c_r: Vec<CrEntry>,
    pub residuals: BTreeMap<String, f64>,
}

/// Evaluate `ζ̄^{-1}` and the first `r_max` coefficients, with every available
/// cross-check recorded as a residual.
///
/// Residual keys: `closed_form` (closed-form formula on the same grid),
/// `full_operator` (relative, `(ζ̄^{-1})^{N^d}` against `det(I - u M_A)`, finite
/// grids within the operator cap), `rw_closed_limit` (simple random walk limit
/// value), `series` (truncated log series) and `c_r_weight` (max gap between
/// grid and matrix-weight coefficients, quadrature grids only).
pub fn zeta_report(model: &WalkModel, grid: GridKind, u: Complex, r_max: u32) -> Result<ZetaReport> {
    let torus = grid.torus()?;
    let log_inv = log_zeta_inv_finite(model, &torus, u)?;
    let zeta_inv = log_inv.exp();
    let mut residuals = BTreeMap::new();

    if let Some(id) = ClosedFormId::for_model(model) {
        let closed = closed_forms::closed_zeta_inv(&id, &torus, u)?;
        residuals.insert("closed_form".to_string(), (closed - zeta_inv).norm());
    }
    if let GridKind::Finite { .. } = grid {
        if model.chirality_dim() * torus.site_count() <= FULL_OPERATOR_CAP {
            let det = full_operator_determinant(model, &torus, u)?;
            let powered = (log_inv * torus.site_count() as f64).exp();
            let scale = det.norm().max(f64::MIN_POSITIVE);
            residuals.insert("full_operator".to_string(), (powered - det).norm() / scale);
        }
    }
    if closed_forms::is_simple_random_walk(model) && u.im == 0.0 && u.re.abs() < 1.0 {
        if let GridKind::Quadrature { .. } = grid {
            let closed = closed_forms::rw_limit_zeta_closed(u.re)?;
            residuals.insert("rw_closed_limit".to_string(), (zeta_inv - re(closed)).norm());
        }
    }

    let mut c_r = Vec::new();
    if r_max > 0 {
        let series = c_r_series_finite(model, &torus, r_max)?;
        let mut upow = re(1.0);
        let mut partial = re(0.0);
        let mut weight_gap = 0.0f64;
        for (i, &value) in series.iter().enumerate() {
            let r = i as u32 + 1;
            upow *= u;
            partial += value * upow / r as f64;
            c_r.push(CrEntry {
                r,
                value,
                route: CrRoute::Quadrature(torus.side()),
            });
            if let GridKind::Quadrature { .. } = grid {
                let w = c_r_limit(model, r, CrRoute::Weight)?;
                weight_gap = weight_gap.max((w - value).norm());
                c_r.push(CrEntry {
                    r,
                    value: w,
                    route: CrRoute::Weight,
                });
            }
        }
        residuals.insert("series".to_string(), (-log_inv - partial).norm());
        if let GridKind::Quadrature { .. } = grid {
            residuals.insert("c_r_weight".to_string(), weight_gap);
        }
    }

    Ok(ZetaReport {
        model_id: model.id(),
        u,
        grid,
        zeta_inv,
        c_r,
        residuals,
    })
}
