//! Closed forms of `det(I - u M̂(k))` for the built-in families.
//!
//! Each determinant is written as `prefactor(u) · F(angles, u)`. The prefactor
//! carries the `u`-linear localization factors such as `(1 + u)` or `(1 - u²)`.
//! Where an explicit eigenvalue list is known it is returned by
//! [`closed_eigenvalues`].

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;

use serde::Serialize;

use crate::coin_models::{
    crw_from_qw, four_state_qw_1d, four_state_qw_2d, generalized_grover_coin, multistate_rw,
    three_state_qw, Family, GroverLattice, ShiftType, WalkModel,
};
use crate::error::{Error, Result};
use crate::numerics::{determinant, eigenvalues, hausdorff_distance, re, Complex, ComplexMatrix};
use crate::walk_operator::{fourier_block, TorusSpec};
use crate::zeta_engine::log_det_resolvent;

/// Below this distance from `cos θ = 1` the uniform-window kernel is summed directly.
pub const DIRICHLET_GUARD: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "id", rename_all = "snake_case")]
pub enum ClosedFormId {
    Qw3 { eta: f64, shift: ShiftType },
    Crw3 { eta: f64, shift: ShiftType },
    Qw4Line { p: f64, shift: ShiftType },
    Crw4Line { p: f64, shift: ShiftType },
    /// Jump `x` with probability `p_x`.
    RwGeneral { weights: Vec<(i64, f64)> },
    /// `p_0` at the origin, `p_*` at every other `|x| <= L`.
    RwWindow { p0: f64, p_star: f64, l: usize },
    /// `p_x = 1/(2L+1)` for `|x| <= L`.
    RwUniform { l: usize },
    Qw4Plane { p: f64, shift: ShiftType },
    Crw4Plane { p: f64, shift: ShiftType },
    GgLine3 { a: f64, shift: ShiftType },
    GgLine4 { a: f64, shift: ShiftType },
    GgPlane { a: f64, shift: ShiftType },
    /// Flip-flop generalized Grover walk on `T^d`.
    GgTorus { dim: usize, a: f64 },
}

impl fmt::Display for ClosedFormId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use ClosedFormId::*;
        match self {
            Qw3 { eta, shift } => write!(f, "qw3[{}](eta={eta})", shift.label()),
            Crw3 { eta, shift } => write!(f, "crw3[{}](eta={eta})", shift.label()),
            Qw4Line { p, shift } => write!(f, "qw4_1d[{}](p={p})", shift.label()),
            Crw4Line { p, shift } => write!(f, "crw4_1d[{}](p={p})", shift.label()),
            RwGeneral { weights } => write!(f, "rw_general({} jumps)", weights.len()),
            RwWindow { p0, p_star, l } => write!(f, "rw_window(p0={p0},p*={p_star},L={l})"),
            RwUniform { l } => write!(f, "rw_uniform(L={l})"),
            Qw4Plane { p, shift } => write!(f, "qw4_2d[{}](p={p})", shift.label()),
            Crw4Plane { p, shift } => write!(f, "crw4_2d[{}](p={p})", shift.label()),
            GgLine3 { a, shift } => write!(f, "gg_1d3[{}](a={a})", shift.label()),
            GgLine4 { a, shift } => write!(f, "gg_1d4[{}](a={a})", shift.label()),
            GgPlane { a, shift } => write!(f, "gg_2d[{}](a={a})", shift.label()),
            GgTorus { dim, a } => write!(f, "gg_torus{dim}[f](a={a})"),
        }
    }
}

impl ClosedFormId {
    /// Family name without parameters.
    pub fn family_name(&self) -> &'static str {
        use ClosedFormId::*;
        match self {
            Qw3 { .. } => "qw3",
            Crw3 { .. } => "crw3",
            Qw4Line { .. } => "qw4_1d",
            Crw4Line { .. } => "crw4_1d",
            RwGeneral { .. } => "rw_general",
            RwWindow { .. } => "rw_window",
            RwUniform { .. } => "rw_uniform",
            Qw4Plane { .. } => "qw4_2d",
            Crw4Plane { .. } => "crw4_2d",
            GgLine3 { .. } => "gg_1d3",
            GgLine4 { .. } => "gg_1d4",
            GgPlane { .. } => "gg_2d",
            GgTorus { .. } => "gg_torus",
        }
    }

    pub fn lattice_dim(&self) -> usize {
        use ClosedFormId::*;
        match self {
            Qw4Plane { .. } | Crw4Plane { .. } | GgPlane { .. } => 2,
            GgTorus { dim, .. } => *dim,
            _ => 1,
        }
    }

    /// The walk whose Fourier block this formula describes.
    pub fn model(&self) -> Result<WalkModel> {
        use ClosedFormId::*;
        match self {
            Qw3 { eta, shift } => three_state_qw(*eta, *shift),
            Crw3 { eta, shift } => crw_from_qw(&three_state_qw(*eta, *shift)?),
            Qw4Line { p, shift } => four_state_qw_1d(*p, *shift),
            Crw4Line { p, shift } => crw_from_qw(&four_state_qw_1d(*p, *shift)?),
            RwGeneral { weights } => {
                let mut map = BTreeMap::new();
                for &(x, p) in weights {
                    *map.entry(x).or_insert(0.0) += p;
                }
                multistate_rw(&map)
            }
            RwWindow { p0, p_star, l } => {
                check_window(*p0, *p_star, *l)?;
                multistate_rw(&window_weights(*p0, *p_star, *l))
            }
            RwUniform { l } => {
                let p = uniform_weight(*l)?;
                multistate_rw(&window_weights(p, p, *l))
            }
            Qw4Plane { p, shift } => four_state_qw_2d(*p, *shift),
            Crw4Plane { p, shift } => crw_from_qw(&four_state_qw_2d(*p, *shift)?),
            GgLine3 { a, shift } => generalized_grover_coin(3, *a, *shift, GroverLattice::Line3),
            GgLine4 { a, shift } => generalized_grover_coin(4, *a, *shift, GroverLattice::Line4),
            GgPlane { a, shift } => generalized_grover_coin(4, *a, *shift, GroverLattice::Plane4),
            GgTorus { dim, a } => {
                if *dim == 0 {
                    return Err(Error::InvalidParameter("torus dimension must be positive".into()));
                }
                generalized_grover_coin(2 * dim, *a, ShiftType::F, GroverLattice::Torus(*dim))
            }
        }
    }

    /// The closed form matching a model, if its family has one.
    pub fn for_model(model: &WalkModel) -> Option<ClosedFormId> {
        use ClosedFormId::*;
        Some(match model.family() {
            Family::ThreeStateQw { eta, shift } => Qw3 { eta: *eta, shift: *shift },
            Family::FourStateQwLine { p, shift } => Qw4Line { p: *p, shift: *shift },
            Family::FourStateQwPlane { p, shift } => Qw4Plane { p: *p, shift: *shift },
            Family::Crw(inner) => match inner.as_ref() {
                Family::ThreeStateQw { eta, shift } => Crw3 { eta: *eta, shift: *shift },
                Family::FourStateQwLine { p, shift } => Crw4Line { p: *p, shift: *shift },
                Family::FourStateQwPlane { p, shift } => Crw4Plane { p: *p, shift: *shift },
                _ => return None,
            },
            Family::GeneralizedGrover { a, shift, lattice } => match (lattice, shift) {
                (GroverLattice::Line3, s) => GgLine3 { a: *a, shift: *s },
                (GroverLattice::Line4, s) => GgLine4 { a: *a, shift: *s },
                (GroverLattice::Plane4, s) => GgPlane { a: *a, shift: *s },
                (GroverLattice::Torus(d), ShiftType::F) => GgTorus { dim: *d, a: *a },
                (GroverLattice::Torus(_), ShiftType::M) => return None,
            },
            Family::MultistateRw { weights } => RwGeneral { weights: weights.clone() },
            Family::Custom => return None,
        })
    }
}

fn check_window(p0: f64, p_star: f64, l: usize) -> Result<()> {
    if l == 0 {
        return Err(Error::InvalidParameter("L must be positive".into()));
    }
    let total = p0 + 2.0 * l as f64 * p_star;
    if !(0.0..=1.0).contains(&p0) || !(0.0..=1.0).contains(&p_star) || (total - 1.0).abs() > 1e-12 {
        return Err(Error::InvalidParameter(format!(
            "p0 + 2L p* = {total}, expected 1 with p0, p* in [0, 1]"
        )));
    }
    Ok(())
}

fn uniform_weight(l: usize) -> Result<f64> {
    if l == 0 {
        return Err(Error::InvalidParameter("L must be positive".into()));
    }
    Ok(1.0 / (2 * l + 1) as f64)
}

fn window_weights(p0: f64, p_star: f64, l: usize) -> BTreeMap<i64, f64> {
    let l = l as i64;
    (-l..=l).map(|x| (x, if x == 0 { p0 } else { p_star })).collect()
}

fn shift_sign(shift: ShiftType) -> f64 {
    shift.sign()
}

/// Factor of `det(I - u M̂)` outside `F`.
pub fn prefactor(id: &ClosedFormId, u: Complex) -> Complex {
    use ClosedFormId::*;
    let one = re(1.0);
    let u2 = u * u;
    match id {
        Qw3 { shift, .. } => one + u * shift_sign(*shift),
        Qw4Line { shift: ShiftType::F, .. }
        | Qw4Plane { .. }
        | GgLine4 { shift: ShiftType::F, .. }
        | GgPlane { shift: ShiftType::F, .. } => one - u2,
        Crw4Line { p, shift: ShiftType::F } => one + u2 * (4.0 * p_star(*p).powi(2)),
        Crw4Plane { p, .. } => one - u2 * (4.0 * p_star(*p).powi(2)),
        GgLine3 { shift: ShiftType::F, .. } => one + u,
        GgTorus { dim, .. } => (one - u2).powi(*dim as i32 - 1),
        _ => one,
    }
}

fn p_star(p: f64) -> f64 {
    p - 0.5
}

fn check_angles(id: &ClosedFormId, angles: &[f64]) -> Result<()> {
    if angles.len() != id.lattice_dim() {
        return Err(Error::InvalidParameter(format!(
            "{id} takes {} angles, got {}",
            id.lattice_dim(),
            angles.len()
        )));
    }
    Ok(())
}

/// `p_0 + 2 p_* Σ_{ℓ<=L} cos(ℓθ)`.
fn window_symbol(p0: f64, p_star: f64, l: usize, theta: f64) -> f64 {
    p0 + 2.0 * p_star * (1..=l).map(|j| (j as f64 * theta).cos()).sum::<f64>()
}

/// `(1/(2L+1)) (cos((L+1)θ) - cos(Lθ)) / (cos θ - 1)`.
fn uniform_symbol(l: usize, theta: f64) -> f64 {
    let w = 1.0 / (2 * l + 1) as f64;
    let denom = theta.cos() - 1.0;
    if denom.abs() < DIRICHLET_GUARD {
        return window_symbol(w, w, l, theta);
    }
    let lf = l as f64;
    w * (((lf + 1.0) * theta).cos() - (lf * theta).cos()) / denom
}

/// `F(angles, u)`, so that `det(I - u M̂) = prefactor · F`.
pub fn f_value(id: &ClosedFormId, angles: &[f64], u: Complex) -> Result<Complex> {
    use ClosedFormId::*;
    check_angles(id, angles)?;
    let one = re(1.0);
    let i = Complex::i();
    let (u2, u3, u4) = (u * u, u * u * u, u * u * u * u);
    let t = angles[0];
    let v = match id {
        Qw3 { eta, shift } => one - u * qw3_t(*eta, *shift, t) + u2,
        Crw3 { eta, shift } => {
            let s = shift_sign(*shift);
            let c = eta.cos();
            let ct = t.cos();
            let w = (1.0 - s * c).powi(2);
            one - u * (0.5 * (w * ct + 2.0 * c * c))
                - u2 * (0.5 * s * (w * (s + 2.0 * c) * ct + c * (1.0 + c * c)))
                - u3 * (0.5 * s * c * (1.0 - 3.0 * c * c))
        }
        Qw4Line { p, shift: ShiftType::M } => {
            let ps = p_star(*p);
            let cs = t.cos() + (2.0 * t).cos();
            let sn = t.sin() + (2.0 * t).sin();
            one + u * (cs - 2.0 * i * ps * sn) - u2 * (4.0 * i * ps * (3.0 * t).sin())
                - u3 * (cs + 2.0 * i * ps * sn)
                - u4
        }
        Qw4Line { p, shift: ShiftType::F } => one - u * (2.0 * alpha_q(*p, t)) + u2,
        Crw4Line { p, shift: ShiftType::M } => {
            let ps = p_star(*p);
            let g = 1.0 + 4.0 * ps * ps;
            let cs = t.cos() + (2.0 * t).cos();
            let sn = t.sin() + (2.0 * t).sin();
            one - u * (0.5 * (g * cs - 4.0 * i * ps * sn))
                - u2 * (2.0 * i * ps * g * (3.0 * t).sin())
                + u3 * (2.0 * ps * ps * (g * cs + 4.0 * i * ps * sn))
                - u4 * (16.0 * ps.powi(4))
        }
        Crw4Line { p, shift: ShiftType::F } => {
            one - u * (2.0 * alpha_c(*p, t)) - u2 * (4.0 * p_star(*p).powi(2))
        }
        RwGeneral { weights } => {
            let symbol: Complex = weights
                .iter()
                .map(|&(x, p)| Complex::from_polar(p, -(x as f64) * t))
                .sum();
            one - u * symbol
        }
        RwWindow { p0, p_star, l } => {
            check_window(*p0, *p_star, *l)?;
            one - u * window_symbol(*p0, *p_star, *l, t)
        }
        RwUniform { l } => {
            uniform_weight(*l)?;
            one - u * uniform_symbol(*l, t)
        }
        Qw4Plane { p, shift } => one - u * (2.0 * beta_q(*p, *shift, angles)) + u2,
        Crw4Plane { p, shift } => {
            one - u * (2.0 * beta_c(*p, *shift, angles)) + u2 * (4.0 * p_star(*p).powi(2))
        }
        GgLine3 { a, shift } => {
            let c = 1.0 + 2.0 * t.cos();
            match shift {
                ShiftType::M => {
                    one + u * (a / 3.0 * c) + u2 * ((2.0 * a - 3.0) / 3.0 * c) + u3 * (a - 2.0)
                }
                ShiftType::F => one + u * ((a - 3.0) / 3.0 * c) - u2 * (a - 2.0),
            }
        }
        GgLine4 { a, shift } => {
            let c = t.cos() + (2.0 * t).cos();
            match shift {
                ShiftType::M => {
                    let c2 = 1.0 + t.cos() + (3.0 * t).cos();
                    gg_quartic(*a, c, c2, u)
                }
                ShiftType::F => one + u * ((a - 2.0) * c) - u2 * (2.0 * a - 3.0),
            }
        }
        GgPlane { a, shift } => {
            let c = angles[0].cos() + angles[1].cos();
            match shift {
                ShiftType::M => {
                    let c2 = 1.0 + 2.0 * angles[0].cos() * angles[1].cos();
                    gg_quartic(*a, c, c2, u)
                }
                ShiftType::F => one + u * ((a - 2.0) * c) - u2 * (2.0 * a - 3.0),
            }
        }
        GgTorus { dim, a } => gg_torus_f(*dim, *a, angles, u),
    };
    Ok(v)
}

/// `1 + a C u + 2(a-1) C₂ u² + (3a-4) C u³ + (2a-3) u⁴`.
fn gg_quartic(a: f64, c: f64, c2: f64, u: Complex) -> Complex {
    let u2 = u * u;
    re(1.0) + u * (a * c) + u2 * (2.0 * (a - 1.0) * c2) + u2 * u * ((3.0 * a - 4.0) * c)
        + u2 * u2 * (2.0 * a - 3.0)
}

/// `1 - (2/d)(d + (1-d)a) Σ cos w_j u + (2d - 1 + 2(1-d)a) u²`.
fn gg_torus_f(dim: usize, a: f64, angles: &[f64], u: Complex) -> Complex {
    let d = dim as f64;
    let sum_cos: f64 = angles.iter().map(|w| w.cos()).sum();
    re(1.0) - u * (2.0 * (d + (1.0 - d) * a) / d * sum_cos)
        + u * u * (2.0 * d - 1.0 + 2.0 * (1.0 - d) * a)
}

/// `t(θ) = (-1)^δ + cos η + ((-1)^δ - cos η) cos θ`.
fn qw3_t(eta: f64, shift: ShiftType, theta: f64) -> f64 {
    let s = shift_sign(shift);
    let c = eta.cos();
    s + c + (s - c) * theta.cos()
}

/// `(1/2) √(1 - 4p_*²) (cos θ + cos 2θ)`.
fn alpha_q(p: f64, theta: f64) -> f64 {
    let ps = p_star(p);
    0.5 * (1.0 - 4.0 * ps * ps).max(0.0).sqrt() * (theta.cos() + (2.0 * theta).cos())
}

/// `(1/4)(1 - 4p_*²)(cos θ + cos 2θ)`.
fn alpha_c(p: f64, theta: f64) -> f64 {
    let ps = p_star(p);
    0.25 * (1.0 - 4.0 * ps * ps) * (theta.cos() + (2.0 * theta).cos())
}

/// The coefficient as printed, `(1/4)(1 - 4p_*)²(cos θ + cos 2θ)`.
pub fn alpha_c_printed(p: f64, theta: f64) -> f64 {
    let ps = p_star(p);
    0.25 * (1.0 - 4.0 * ps).powi(2) * (theta.cos() + (2.0 * theta).cos())
}

/// `(±1/2 + p_*) cos k₁ + (±1/2 - p_*) cos k₂`, sign `(-1)^δ`.
fn beta_q(p: f64, shift: ShiftType, k: &[f64]) -> f64 {
    let (h, ps) = (0.5 * shift_sign(shift), p_star(p));
    (h + ps) * k[0].cos() + (h - ps) * k[1].cos()
}

/// `(±1/2 + p_*)² cos k₁ + (±1/2 - p_*)² cos k₂`.
fn beta_c(p: f64, shift: ShiftType, k: &[f64]) -> f64 {
    let (h, ps) = (0.5 * shift_sign(shift), p_star(p));
    (h + ps).powi(2) * k[0].cos() + (h - ps).powi(2) * k[1].cos()
}

/// Explicit eigenvalues of `M̂(angles)`, for the families that have them.
pub fn closed_eigenvalues(id: &ClosedFormId, angles: &[f64]) -> Result<Vec<Complex>> {
    use ClosedFormId::*;
    check_angles(id, angles)?;
    let i = Complex::i();
    // x ± √(x² - c) as a pair.
    let pair = |x: f64, c: f64| {
        let r = re(x * x - c).sqrt();
        [re(x) + r, re(x) - r]
    };
    let t = angles[0];
    let v = match id {
        Qw3 { eta, shift } => {
            let tt = qw3_t(*eta, *shift, t);
            let r = i * re(4.0 - tt * tt).sqrt();
            vec![re(-shift_sign(*shift)), (re(tt) + r) / 2.0, (re(tt) - r) / 2.0]
        }
        Qw4Line { p, shift: ShiftType::F } => {
            let [l1, l2] = pair(alpha_q(*p, t), 1.0);
            vec![re(1.0), re(-1.0), l1, l2]
        }
        Crw4Line { p, shift: ShiftType::F } => {
            let ps = p_star(*p);
            let [l1, l2] = pair(alpha_c(*p, t), -4.0 * ps * ps);
            vec![i * (2.0 * ps), i * (-2.0 * ps), l1, l2]
        }
        Qw4Plane { p, shift } => {
            let [l1, l2] = pair(beta_q(*p, *shift, angles), 1.0);
            vec![re(1.0), re(-1.0), l1, l2]
        }
        Crw4Plane { p, shift } => {
            let ps = p_star(*p);
            let [l1, l2] = pair(beta_c(*p, *shift, angles), 4.0 * ps * ps);
            vec![re(2.0 * ps), re(-2.0 * ps), l1, l2]
        }
        _ => return Err(Error::NoClosedEigenvalues(id.to_string())),
    };
    Ok(v)
}

/// `lim_N ζ̄^{-1}` for the simple random walk: `(1 + √(1 - u²)) / 2`.
pub fn rw_limit_zeta_closed(u: f64) -> Result<f64> {
    if !(u.abs() < 1.0) {
        return Err(Error::InvalidParameter(format!("|u| = {} must be below 1", u.abs())));
    }
    Ok((1.0 + (1.0 - u * u).sqrt()) / 2.0)
}

/// `-Σ_{n=1}^{terms} (1/2n) C(2n, n) (x²/4)^n`.
pub fn log_series_lemma(x: f64, n_terms: usize) -> Result<f64> {
    if !(x.abs() < 1.0) {
        return Err(Error::InvalidParameter(format!("|x| = {} must be below 1", x.abs())));
    }
    // c_n = C(2n, n) / 4^n, built up as c_n = c_{n-1} (2n - 1) / (2n).
    let x2 = x * x;
    let mut central = 1.0;
    let mut xpow = 1.0;
    let mut sum = 0.0;
    for n in 1..=n_terms {
        let nf = n as f64;
        central *= (2.0 * nf - 1.0) / (2.0 * nf);
        xpow *= x2;
        sum -= central * xpow / (2.0 * nf);
    }
    Ok(sum)
}

/// The simple random walk `p_{±1} = 1/2`.
pub fn is_simple_random_walk(model: &WalkModel) -> bool {
    matches!(model.family(), Family::MultistateRw { weights } if weights == &[(-1, 0.5), (1, 0.5)])
}

/// `prefactor · exp[(1/N^d) Σ_k log F(k, u)]` on a torus grid.
///
/// The branch of each logarithm follows the eigenvalue branch of the matching
/// Fourier block, as in the numeric route.
pub fn closed_zeta_inv(id: &ClosedFormId, torus: &TorusSpec, u: Complex) -> Result<Complex> {
    if torus.dim() != id.lattice_dim() {
        return Err(Error::InvalidParameter(format!(
            "{id} lives in dimension {}, torus has {}",
            id.lattice_dim(),
            torus.dim()
        )));
    }
    let model = id.model()?;
    let pre = prefactor(id, u);
    let mut sum = re(0.0);
    for k in torus.wavevectors() {
        let closed = pre * f_value(id, &k, u)?;
        let (numeric, _) = log_det_resolvent(&fourier_block(&model, &k)?, u)?;
        let principal = closed.ln();
        let turns = ((numeric.im - principal.im) / (2.0 * PI)).round();
        sum += principal + Complex::new(0.0, 2.0 * PI * turns);
    }
    Ok((sum / torus.site_count() as f64).exp())
}

/// `(1 - u²)^{d-1} exp[(1/N^d) Σ_k log F(k, u, a)]` for the flip-flop generalized
/// Grover walk on `T^d_N`, principal branch.
pub fn gg_torus_zeta_inv(torus: &TorusSpec, a: f64, u: Complex) -> Complex {
    let d = torus.dim();
    let mut sum = re(0.0);
    for k in torus.wavevectors() {
        sum += gg_torus_f(d, a, &k, u).ln();
    }
    (re(1.0) - u * u).powi(d as i32 - 1) * (sum / torus.site_count() as f64).exp()
}

/// `(1 - u²)^{(d-1) N^d} Π_k F(k, u, a)`, the branch-free power of [`gg_torus_zeta_inv`].
pub fn gg_torus_product(torus: &TorusSpec, a: f64, u: Complex) -> Complex {
    let d = torus.dim();
    let mut prod = re(1.0);
    for k in torus.wavevectors() {
        prod *= gg_torus_f(d, a, &k, u);
    }
    prod * (re(1.0) - u * u).powi(((d - 1) * torus.site_count()) as i32)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize)]
pub struct ClosedFormResidual {
    /// Max of `|det(I - u M̂) - prefactor · F|`.
    pub determinant: f64,
    /// Max Hausdorff distance between numeric and closed eigenvalues, if listed.
    pub eigenvalues: Option<f64>,
    /// Number of `(angles, u)` pairs checked.
    pub samples: usize,
}

impl ClosedFormResidual {
    pub fn merge(self, other: ClosedFormResidual) -> ClosedFormResidual {
        let eigenvalues = match (self.eigenvalues, other.eigenvalues) {
            (Some(a), Some(b)) => Some(a.max(b)),
            (a, b) => a.or(b),
        };
        ClosedFormResidual {
            determinant: self.determinant.max(other.determinant),
            eigenvalues,
            samples: self.samples + other.samples,
        }
    }
}

/// Compare the closed form with the Fourier block over every `(angles, u)` pair.
pub fn verify_closed_form(id: &ClosedFormId, angle_grid: &[Vec<f64>], u_grid: &[Complex]) -> Result<ClosedFormResidual> {
    let model = id.model()?;
    let mut out = ClosedFormResidual::default();
    for angles in angle_grid {
        let block = fourier_block(&model, angles)?;
        let n = block.rows();
        for &u in u_grid {
            let det = determinant(&ComplexMatrix::identity(n).sub(&block.scale(u))?)?;
            let closed = prefactor(id, u) * f_value(id, angles, u)?;
            out.determinant = out.determinant.max((det - closed).norm());
            out.samples += 1;
        }
        match closed_eigenvalues(id, angles) {
            Ok(closed) => {
                let d = hausdorff_distance(&eigenvalues(&block)?, &closed);
                out.eigenvalues = Some(out.eigenvalues.map_or(d, |e: f64| e.max(d)));
            }
            Err(Error::NoClosedEigenvalues(_)) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

/// `n^dim` lexicographic angles `2π(i + 0.37)/n`, offset to avoid symmetric points.
pub fn sample_angles(dim: usize, n: usize) -> Vec<Vec<f64>> {
    let axis: Vec<f64> = (0..n).map(|i| 2.0 * PI * (i as f64 + 0.37) / n as f64).collect();
    let mut out = vec![Vec::new()];
    for _ in 0..dim {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                axis.iter().map(move |&x| {
                    let mut v = prefix.clone();
                    v.push(x);
                    v
                })
            })
            .collect();
    }
    out
}

/// Every family at a spread of parameters, both shifts where defined.
pub fn standard_ids() -> Vec<ClosedFormId> {
    use ClosedFormId::*;
    let etas = [0.3, (-1.0f64 / 3.0).acos(), 2.0, 4.5];
    let ps = [0.0, 0.2, 0.5, 0.85];
    let aa = [0.0, 0.3, 0.7, 1.0];
    let mut out = Vec::new();
    for shift in [ShiftType::M, ShiftType::F] {
        for &eta in &etas {
            out.push(Qw3 { eta, shift });
            out.push(Crw3 { eta, shift });
        }
        for &p in &ps {
            out.push(Qw4Line { p, shift });
            out.push(Crw4Line { p, shift });
            out.push(Qw4Plane { p, shift });
            out.push(Crw4Plane { p, shift });
        }
        for &a in &aa {
            out.push(GgLine3 { a, shift });
            out.push(GgLine4 { a, shift });
            out.push(GgPlane { a, shift });
        }
    }
    out.push(RwGeneral { weights: vec![(-1, 0.5), (1, 0.5)] });
    out.push(RwGeneral { weights: vec![(-3, 0.1), (-1, 0.2), (0, 0.15), (2, 0.3), (3, 0.25)] });
    out.push(RwWindow { p0: 0.0, p_star: 0.5, l: 1 });
    out.push(RwWindow { p0: 0.0, p_star: 0.25, l: 2 });
    out.push(RwWindow { p0: 0.4, p_star: 0.1, l: 3 });
    for l in 1..=4 {
        out.push(RwUniform { l });
    }
    for dim in 1..=3 {
        for &a in &aa {
            out.push(GgTorus { dim, a });
        }
    }
    out
}
