//! Coin matrices and the walk models built from them.
//!
//! A [`WalkModel`] pairs each chirality row of its coin with one lattice
//! displacement: row `j` of the coin moves the walker by `v_j`. The
//! multi-state random walk is the one exception, with a `1x1` coin and one
//! scalar weight per displacement.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{hadamard, kronecker, mul_unchecked, re, Complex, ComplexMatrix};

/// Tolerance used by [`classify`].
pub const CLASSIFY_TOL: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ShiftType {
    /// Moving shift.
    M,
    /// Flip-flop shift.
    F,
}

impl ShiftType {
    /// 1 for the moving shift, 0 for flip-flop.
    pub fn delta(self) -> i32 {
        match self {
            ShiftType::M => 1,
            ShiftType::F => 0,
        }
    }

    /// `(-1)^delta`: -1 for M, +1 for F.
    pub fn sign(self) -> f64 {
        match self {
            ShiftType::M => -1.0,
            ShiftType::F => 1.0,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            ShiftType::M => "m",
            ShiftType::F => "f",
        }
    }
}

/// Lattice variants for the generalized Grover coin.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GroverLattice {
    /// Three states on the line, displacements (-1, 0, +1).
    Line3,
    /// Four states on the line, displacements (-2, -1, +1, +2).
    Line4,
    /// Four states on the square lattice, displacements (-e1, +e1, -e2, +e2).
    Plane4,
    /// `2d` states with nearest-neighbour moves (-e1, +e1, ..., -ed, +ed).
    Torus(usize),
}

impl GroverLattice {
    pub fn coin_size(self) -> usize {
        match self {
            GroverLattice::Line3 => 3,
            GroverLattice::Line4 | GroverLattice::Plane4 => 4,
            GroverLattice::Torus(d) => 2 * d,
        }
    }

    pub fn lattice_dim(self) -> usize {
        match self {
            GroverLattice::Line3 | GroverLattice::Line4 => 1,
            GroverLattice::Plane4 => 2,
            GroverLattice::Torus(d) => d,
        }
    }

    fn label(self) -> String {
        match self {
            GroverLattice::Line3 => "1d3".into(),
            GroverLattice::Line4 => "1d4".into(),
            GroverLattice::Plane4 => "2d4".into(),
            GroverLattice::Torus(d) => format!("torus{d}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Family {
    ThreeStateQw { eta: f64, shift: ShiftType },
    FourStateQwLine { p: f64, shift: ShiftType },
    FourStateQwPlane { p: f64, shift: ShiftType },
    /// Hadamard square of a quantum walk coin.
    Crw(Box<Family>),
    GeneralizedGrover { a: f64, shift: ShiftType, lattice: GroverLattice },
    /// Jump to `x` with probability `p_x`; sorted by displacement.
    MultistateRw { weights: Vec<(i64, f64)> },
    Custom,
}

impl Family {
    pub fn is_quantum_walk(&self) -> bool {
        matches!(
            self,
            Family::ThreeStateQw { .. } | Family::FourStateQwLine { .. } | Family::FourStateQwPlane { .. }
        )
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::ThreeStateQw { eta, shift } => {
                write!(f, "three_state_qw[{}](eta={eta})", shift.label())
            }
            Family::FourStateQwLine { p, shift } => {
                write!(f, "four_state_qw_1d[{}](p={p})", shift.label())
            }
            Family::FourStateQwPlane { p, shift } => {
                write!(f, "four_state_qw_2d[{}](p={p})", shift.label())
            }
            Family::Crw(inner) => write!(f, "crw_of({inner})"),
            Family::GeneralizedGrover { a, shift, lattice } => {
                write!(f, "generalized_grover[{},{}](a={a})", shift.label(), lattice.label())
            }
            Family::MultistateRw { weights } => {
                write!(f, "multistate_rw(")?;
                for (i, (x, p)) in weights.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{x}:{p}")?;
                }
                write!(f, ")")
            }
            Family::Custom => write!(f, "custom"),
        }
    }
}

/// One term `e^{-i<v,k>} B` of the Fourier block.
#[derive(Clone, Debug, PartialEq)]
pub struct Jump {
    pub displacement: Vec<i64>,
    pub weight: ComplexMatrix,
}

#[derive(Clone, Debug, PartialEq)]
pub struct WalkModel {
    family: Family,
    coin: ComplexMatrix,
    displacements: Vec<Vec<i64>>,
    lattice_dim: usize,
    jumps: Vec<Jump>,
}

impl WalkModel {
    /// Coin-driven model: row `j` of `coin` moves by `displacements[j]`.
    pub fn from_coin(family: Family, coin: ComplexMatrix, displacements: Vec<Vec<i64>>) -> Result<Self> {
        if !coin.is_square() || coin.rows() != displacements.len() {
            return Err(Error::InvalidParameter(format!(
                "coin is {}x{} but {} displacements were given",
                coin.rows(),
                coin.cols(),
                displacements.len()
            )));
        }
        let lattice_dim = lattice_dim_of(&displacements)?;
        if !coin.is_finite() {
            return Err(Error::InvalidParameter("coin has non-finite entries".into()));
        }
        let jumps = displacements
            .iter()
            .enumerate()
            .map(|(j, v)| Jump {
                displacement: v.clone(),
                weight: coin.row_selected(j),
            })
            .collect();
        Ok(WalkModel {
            family,
            coin,
            displacements,
            lattice_dim,
            jumps,
        })
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn id(&self) -> String {
        self.family.to_string()
    }

    pub fn coin(&self) -> &ComplexMatrix {
        &self.coin
    }

    pub fn displacements(&self) -> &[Vec<i64>] {
        &self.displacements
    }

    pub fn lattice_dim(&self) -> usize {
        self.lattice_dim
    }

    /// Length of the internal state vector at each site.
    pub fn chirality_dim(&self) -> usize {
        self.coin.rows()
    }

    pub fn jumps(&self) -> &[Jump] {
        &self.jumps
    }

    /// Largest `|v|_inf` over the displacement table.
    pub fn max_step(&self) -> usize {
        self.displacements
            .iter()
            .flat_map(|v| v.iter().map(|x| x.unsigned_abs() as usize))
            .max()
            .unwrap_or(0)
    }

    /// `p - 1/2` for families parameterised by `p`.
    pub fn p_star(&self) -> Option<f64> {
        family_p(&self.family).map(|p| p - 0.5)
    }

    /// `1 - p` for families parameterised by `p`.
    pub fn q(&self) -> Option<f64> {
        family_p(&self.family).map(|p| 1.0 - p)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: ModelConfig = serde_json::from_str(text)?;
        cfg.build()
    }
}

fn family_p(f: &Family) -> Option<f64> {
    match f {
        Family::FourStateQwLine { p, .. } | Family::FourStateQwPlane { p, .. } => Some(*p),
        Family::Crw(inner) => family_p(inner),
        _ => None,
    }
}

fn lattice_dim_of(displacements: &[Vec<i64>]) -> Result<usize> {
    let d = displacements
        .first()
        .map(Vec::len)
        .ok_or_else(|| Error::InvalidParameter("empty displacement table".into()))?;
    if d == 0 || displacements.iter().any(|v| v.len() != d) {
        return Err(Error::InvalidParameter(
            "displacements must share one positive dimension".into(),
        ));
    }
    Ok(d)
}

fn check_probability(name: &str, p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) || !p.is_finite() {
        return Err(Error::InvalidParameter(format!("{name} = {p} is outside [0, 1]")));
    }
    Ok(())
}

fn line(xs: &[i64]) -> Vec<Vec<i64>> {
    xs.iter().map(|&x| vec![x]).collect()
}

/// `(-e1, +e1, -e2, +e2, ..., -ed, +ed)`.
pub fn nearest_neighbour_displacements(d: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::with_capacity(2 * d);
    for j in 0..d {
        for sign in [-1, 1] {
            let mut v = vec![0; d];
            v[j] = sign;
            out.push(v);
        }
    }
    out
}

/// Three-state coin on the line: displacements (-1, 0, +1).
pub fn three_state_qw(eta: f64, shift: ShiftType) -> Result<WalkModel> {
    if !eta.is_finite() {
        return Err(Error::InvalidParameter("eta must be finite".into()));
    }
    let (cs, sn) = (eta.cos(), eta.sin() / 2f64.sqrt());
    let corner_a = -(1.0 + cs) / 2.0;
    let corner_b = (1.0 - cs) / 2.0;
    let (outer, inner) = match shift {
        ShiftType::M => (corner_a, corner_b),
        ShiftType::F => (corner_b, corner_a),
    };
    #[rustfmt::skip]
    let coin = ComplexMatrix::from_real(3, 3, &[
        outer, sn, inner,
        sn,    cs, sn,
        inner, sn, outer,
    ]);
    WalkModel::from_coin(Family::ThreeStateQw { eta, shift }, coin, line(&[-1, 0, 1]))
}

fn four_state_m_coin(p: f64) -> ComplexMatrix {
    let q = 1.0 - p;
    let r = (p * q).sqrt();
    #[rustfmt::skip]
    let m = ComplexMatrix::from_real(4, 4, &[
        p - 1.0, p,       r,       r,
        p,       p - 1.0, r,       r,
        r,       r,       q - 1.0, q,
        r,       r,       q,       q - 1.0,
    ]);
    m
}

/// Four-state coin on the line: displacements (-2, -1, +1, +2).
pub fn four_state_qw_1d(p: f64, shift: ShiftType) -> Result<WalkModel> {
    check_probability("p", p)?;
    let q = 1.0 - p;
    let r = (p * q).sqrt();
    let coin = match shift {
        ShiftType::M => four_state_m_coin(p),
        #[rustfmt::skip]
        ShiftType::F => ComplexMatrix::from_real(4, 4, &[
            r,       r,       q,       q - 1.0,
            r,       r,       q - 1.0, q,
            p,       p - 1.0, r,       r,
            p - 1.0, p,       r,       r,
        ]),
    };
    WalkModel::from_coin(Family::FourStateQwLine { p, shift }, coin, line(&[-2, -1, 1, 2]))
}

/// Four-state coin on the square lattice; the flip-flop coin is `(I_2 ⊗ σ)` times the moving one.
pub fn four_state_qw_2d(p: f64, shift: ShiftType) -> Result<WalkModel> {
    check_probability("p", p)?;
    let m = four_state_m_coin(p);
    let coin = match shift {
        ShiftType::M => m,
        ShiftType::F => flip_flop(&m, 2),
    };
    WalkModel::from_coin(
        Family::FourStateQwPlane { p, shift },
        coin,
        nearest_neighbour_displacements(2),
    )
}

/// `(I_d ⊗ σ) · coin`.
pub fn flip_flop(coin: &ComplexMatrix, d: usize) -> ComplexMatrix {
    mul_unchecked(&kronecker(&ComplexMatrix::identity(d), &ComplexMatrix::swap()), coin)
}

/// Correlated random walk whose coin is the entrywise square of a quantum walk coin.
pub fn crw_from_qw(model: &WalkModel) -> Result<WalkModel> {
    if !model.family().is_quantum_walk() {
        return Err(Error::NotQuantumWalk(model.id()));
    }
    let coin = hadamard(model.coin(), model.coin())?;
    WalkModel::from_coin(
        Family::Crw(Box::new(model.family().clone())),
        coin,
        model.displacements().to_vec(),
    )
}

/// `U(a)_{ij} = (2/d_c - 1) a + 1 - δ_ij`.
pub fn generalized_grover_matrix(d_c: usize, a: f64) -> ComplexMatrix {
    let base = (2.0 / d_c as f64 - 1.0) * a + 1.0;
    ComplexMatrix::from_fn(d_c, d_c, |i, j| re(if i == j { base - 1.0 } else { base }))
}

pub fn generalized_grover_coin(
    d_c: usize,
    a: f64,
    shift: ShiftType,
    lattice: GroverLattice,
) -> Result<WalkModel> {
    check_probability("a", a)?;
    if d_c < 2 || d_c != lattice.coin_size() {
        return Err(Error::InvalidParameter(format!(
            "d_c = {d_c} does not match lattice {}",
            lattice.label()
        )));
    }
    let u = generalized_grover_matrix(d_c, a);
    let coin = match (lattice, shift) {
        (_, ShiftType::M) => u,
        (GroverLattice::Line3, ShiftType::F) => u.permute_rows(&[2, 1, 0]),
        (GroverLattice::Line4, ShiftType::F) => u.permute_rows(&[3, 2, 1, 0]),
        (GroverLattice::Plane4, ShiftType::F) => flip_flop(&u, 2),
        (GroverLattice::Torus(d), ShiftType::F) => flip_flop(&u, d),
    };
    let displacements = match lattice {
        GroverLattice::Line3 => line(&[-1, 0, 1]),
        GroverLattice::Line4 => line(&[-2, -1, 1, 2]),
        GroverLattice::Plane4 => nearest_neighbour_displacements(2),
        GroverLattice::Torus(d) => nearest_neighbour_displacements(d),
    };
    WalkModel::from_coin(Family::GeneralizedGrover { a, shift, lattice }, coin, displacements)
}

/// Random walk jumping by `x` with probability `p_x`.
pub fn multistate_rw(weights: &BTreeMap<i64, f64>) -> Result<WalkModel> {
    if weights.is_empty() {
        return Err(Error::InvalidParameter("no jump weights".into()));
    }
    for (&x, &p) in weights {
        check_probability(&format!("p_{x}"), p)?;
    }
    let total: f64 = weights.values().sum();
    if (total - 1.0).abs() > 1e-12 {
        return Err(Error::InvalidParameter(format!("weights sum to {total}, not 1")));
    }
    let pairs: Vec<(i64, f64)> = weights.iter().map(|(&x, &p)| (x, p)).collect();
    let displacements: Vec<Vec<i64>> = pairs.iter().map(|&(x, _)| vec![x]).collect();
    let jumps = pairs
        .iter()
        .map(|&(x, p)| Jump {
            displacement: vec![x],
            weight: ComplexMatrix::from_real(1, 1, &[p]),
        })
        .collect();
    Ok(WalkModel {
        family: Family::MultistateRw { weights: pairs },
        coin: ComplexMatrix::identity(1),
        displacements,
        lattice_dim: 1,
        jumps,
    })
}

/// Nearest-neighbour walk with `p_{±1} = 1/2`.
pub fn simple_random_walk() -> WalkModel {
    multistate_rw(&BTreeMap::from([(-1, 0.5), (1, 0.5)])).expect("valid weights")
}

/// User-supplied coin and displacement table.
pub fn custom(coin: ComplexMatrix, displacements: Vec<Vec<i64>>) -> Result<WalkModel> {
    WalkModel::from_coin(Family::Custom, coin, displacements)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub unitary: bool,
    pub column_stochastic: bool,
    pub doubly_stochastic: bool,
}

/// Quantum (unitary coin) and stochastic (non-negative, unit column sums) checks.
///
/// A multi-state random walk is stochastic by construction and is unitary
/// only when a single jump carries all the weight.
pub fn classify(model: &WalkModel) -> Classification {
    if let Family::MultistateRw { weights } = model.family() {
        let nonzero = weights.iter().filter(|(_, p)| *p > CLASSIFY_TOL).count();
        return Classification {
            unitary: nonzero == 1,
            column_stochastic: true,
            doubly_stochastic: true,
        };
    }
    let coin = model.coin();
    let n = coin.rows();
    let unitary = coin.unitarity_defect() < CLASSIFY_TOL;
    let nonneg = coin
        .as_slice()
        .iter()
        .all(|z| z.im.abs() < CLASSIFY_TOL && z.re >= -CLASSIFY_TOL);
    let col_ok = (0..n).all(|j| {
        let s: Complex = (0..n).map(|i| coin[(i, j)]).sum();
        (s - re(1.0)).norm() < CLASSIFY_TOL
    });
    let row_ok = (0..n).all(|i| {
        let s: Complex = coin.row(i).iter().sum();
        (s - re(1.0)).norm() < CLASSIFY_TOL
    });
    Classification {
        unitary,
        column_stochastic: nonneg && col_ok,
        doubly_stochastic: nonneg && col_ok && row_ok,
    }
}

/// JSON model description.
///
/// `family` is either a family name or `{"crw_of": {...}}` wrapping a
/// quantum walk config. `lattice` (`"1d3" | "1d4" | "2d4" | "torus"`) and `d`
/// select the generalized Grover variant; `coin`/`displacements` describe a
/// `"custom"` model with coin entries given as `[re, im]` pairs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelConfig {
    pub family: FamilySpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shift: Option<ShiftType>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eta: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<BTreeMap<String, f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lattice: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coin: Option<Vec<Vec<[f64; 2]>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub displacements: Option<Vec<Vec<i64>>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FamilySpec {
    Name(String),
    CrwOf { crw_of: Box<ModelConfig> },
}

impl ModelConfig {
    pub fn build(&self) -> Result<WalkModel> {
        let name = match &self.family {
            FamilySpec::CrwOf { crw_of } => return crw_from_qw(&crw_of.build()?),
            FamilySpec::Name(name) => name.as_str(),
        };
        let need = |v: Option<f64>, field: &str| {
            v.ok_or_else(|| Error::Config(format!("family {name} requires \"{field}\"")))
        };
        let shift = || {
            self.shift
                .ok_or_else(|| Error::Config(format!("family {name} requires \"shift\"")))
        };
        match name {
            "three_state_qw" => three_state_qw(need(self.eta, "eta")?, shift()?),
            "four_state_qw_1d" => four_state_qw_1d(need(self.p, "p")?, shift()?),
            "four_state_qw_2d" => four_state_qw_2d(need(self.p, "p")?, shift()?),
            "generalized_grover" => {
                let lattice = match self.lattice.as_deref() {
                    Some("1d3") => GroverLattice::Line3,
                    Some("1d4") => GroverLattice::Line4,
                    Some("2d4") | None => GroverLattice::Plane4,
                    Some("torus") => GroverLattice::Torus(self.d.ok_or_else(|| {
                        Error::Config("lattice \"torus\" requires \"d\"".into())
                    })?),
                    Some(other) => return Err(Error::Config(format!("unknown lattice {other:?}"))),
                };
                generalized_grover_coin(lattice.coin_size(), need(self.a, "a")?, shift()?, lattice)
            }
            "multistate_rw" => {
                let raw = self
                    .weights
                    .as_ref()
                    .ok_or_else(|| Error::Config("multistate_rw requires \"weights\"".into()))?;
                let mut weights = BTreeMap::new();
                for (k, &v) in raw {
                    let x: i64 = k
                        .trim()
                        .parse()
                        .map_err(|_| Error::Config(format!("weight key {k:?} is not an integer")))?;
                    weights.insert(x, v);
                }
                multistate_rw(&weights)
            }
            "custom" => {
                let rows = self
                    .coin
                    .as_ref()
                    .ok_or_else(|| Error::Config("custom requires \"coin\"".into()))?;
                let n = rows.len();
                if n == 0 || rows.iter().any(|r| r.len() != n) {
                    return Err(Error::Config("custom coin must be square".into()));
                }
                let data = rows.iter().flatten().map(|&[x, y]| Complex::new(x, y)).collect();
                let disp = self
                    .displacements
                    .clone()
                    .ok_or_else(|| Error::Config("custom requires \"displacements\"".into()))?;
                custom(ComplexMatrix::from_vec(n, n, data)?, disp)
            }
            other => Err(Error::Config(format!("unknown family {other:?}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{eigenvalues, mat_mul};

    const GROVER_ETA: f64 = 1.910_633_236_249_018_6; // acos(-1/3)

    fn grover_eta() -> f64 {
        (-1.0f64 / 3.0).acos()
    }

    fn approx_eq(a: &ComplexMatrix, b: &ComplexMatrix, tol: f64) -> bool {
        a.max_abs_diff(b) < tol
    }

    #[test]
    fn grover_eta_constant() {
        assert!((grover_eta() - GROVER_ETA).abs() < 1e-15);
    }

    #[test]
    fn three_state_grover_is_grover() {
        let g3 = generalized_grover_matrix(3, 1.0);
        let m = three_state_qw(grover_eta(), ShiftType::M).unwrap();
        assert!(m.coin().unitarity_defect() < 1e-12);
        // moving coin at cos η = -1/3 is the 3x3 Grover matrix
        assert!(approx_eq(m.coin(), &g3, 1e-12));
        let f = three_state_qw(grover_eta(), ShiftType::F).unwrap();
        assert!(f.coin().unitarity_defect() < 1e-12);
        assert!(approx_eq(f.coin(), &g3.permute_rows(&[2, 1, 0]), 1e-12));
    }

    #[test]
    fn three_state_at_zero_angle() {
        let m = three_state_qw(0.0, ShiftType::M).unwrap();
        let expected = ComplexMatrix::from_real(3, 3, &[-1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, -1.0]);
        assert!(approx_eq(m.coin(), &expected, 1e-15));
        assert_eq!(m.displacements(), &[vec![-1], vec![0], vec![1]]);
        assert_eq!(m.lattice_dim(), 1);
    }

    #[test]
    fn three_state_f_is_m_with_outer_rows_swapped() {
        for eta in [0.0, 0.4, 1.3, 2.9, 4.4, 6.1] {
            let m = three_state_qw(eta, ShiftType::M).unwrap();
            let f = three_state_qw(eta, ShiftType::F).unwrap();
            assert!(approx_eq(f.coin(), &m.coin().permute_rows(&[2, 1, 0]), 1e-15));
            let (cs, sn) = (eta.cos(), eta.sin() / 2f64.sqrt());
            #[rustfmt::skip]
            let displayed = ComplexMatrix::from_real(3, 3, &[
                (1.0 - cs) / 2.0, sn, -(1.0 + cs) / 2.0,
                sn, cs, sn,
                -(1.0 + cs) / 2.0, sn, (1.0 - cs) / 2.0,
            ]);
            assert!(approx_eq(f.coin(), &displayed, 1e-15));
        }
    }

    #[test]
    fn four_state_line_coins() {
        let g4 = generalized_grover_matrix(4, 1.0);
        let m = four_state_qw_1d(0.5, ShiftType::M).unwrap();
        assert!(approx_eq(m.coin(), &g4, 1e-15));
        let f = four_state_qw_1d(0.5, ShiftType::F).unwrap();
        assert!(approx_eq(f.coin(), &g4.permute_rows(&[3, 2, 1, 0]), 1e-15));
        for p in [0.0, 0.1, 0.37, 0.5, 0.8, 1.0] {
            for s in [ShiftType::M, ShiftType::F] {
                let w = four_state_qw_1d(p, s).unwrap();
                assert!(w.coin().unitarity_defect() < 1e-12, "p={p} {s:?}");
            }
        }
        let p1 = four_state_qw_1d(1.0, ShiftType::M).unwrap();
        for (i, j) in [(0, 2), (0, 3), (1, 2), (1, 3), (2, 0), (3, 1)] {
            assert_eq!(p1.coin()[(i, j)], re(0.0));
        }
        assert!(four_state_qw_1d(1.2, ShiftType::M).is_err());
        assert!(four_state_qw_1d(-0.1, ShiftType::F).is_err());
    }

    #[test]
    fn four_state_plane_coins() {
        for p in [0.0, 0.25, 0.5, 0.9] {
            let m = four_state_qw_2d(p, ShiftType::M).unwrap();
            let f = four_state_qw_2d(p, ShiftType::F).unwrap();
            let sig = kronecker(&ComplexMatrix::identity(2), &ComplexMatrix::swap());
            assert_eq!(f.coin(), &mat_mul(&sig, m.coin()).unwrap());
            assert!(f.coin().unitarity_defect() < 1e-12);
            let line_f = four_state_qw_1d(p, ShiftType::F).unwrap();
            assert!(f.coin().max_abs_diff(line_f.coin()) > 0.1);
        }
        let g = four_state_qw_2d(0.5, ShiftType::F).unwrap();
        assert!(classify(&g).unitary);
        assert!(four_state_qw_2d(2.0, ShiftType::M).is_err());
    }

    #[test]
    fn crw_coins() {
        let eta = 0.83;
        let crw = crw_from_qw(&three_state_qw(eta, ShiftType::M).unwrap()).unwrap();
        assert!((crw.coin()[(0, 0)].re - (1.0 + eta.cos()).powi(2) / 4.0).abs() < 1e-15);
        assert!((crw.coin()[(0, 1)].re - eta.sin().powi(2) / 2.0).abs() < 1e-15);
        let rw4 = crw_from_qw(&four_state_qw_1d(0.5, ShiftType::M).unwrap()).unwrap();
        assert!(rw4.coin().as_slice().iter().all(|z| (z.re - 0.25).abs() < 1e-15));
        let p = 0.3;
        let (q, pq) = (0.7, 0.21);
        let crw_f = crw_from_qw(&four_state_qw_1d(p, ShiftType::F).unwrap()).unwrap();
        #[rustfmt::skip]
        let displayed = ComplexMatrix::from_real(4, 4, &[
            pq, pq, q * q, (q - 1.0) * (q - 1.0),
            pq, pq, (q - 1.0) * (q - 1.0), q * q,
            p * p, (p - 1.0) * (p - 1.0), pq, pq,
            (p - 1.0) * (p - 1.0), p * p, pq, pq,
        ]);
        assert!(approx_eq(crw_f.coin(), &displayed, 1e-15));
        assert!(matches!(crw_from_qw(&crw_f), Err(Error::NotQuantumWalk(_))));
        assert!(crw_from_qw(&simple_random_walk()).is_err());
    }

    #[test]
    fn crw_coins_are_doubly_stochastic() {
        let models = [
            three_state_qw(2.2, ShiftType::F).unwrap(),
            four_state_qw_1d(0.15, ShiftType::M).unwrap(),
            four_state_qw_2d(0.65, ShiftType::F).unwrap(),
        ];
        for m in &models {
            let crw = crw_from_qw(m).unwrap();
            let cls = classify(&crw);
            assert!(cls.column_stochastic && cls.doubly_stochastic, "{}", crw.id());
        }
    }

    #[test]
    fn generalized_grover_cases() {
        for a in [0.0, 0.3, 1.0] {
            assert_eq!(generalized_grover_matrix(2, a), ComplexMatrix::swap());
            let m = generalized_grover_coin(2, a, ShiftType::M, GroverLattice::Torus(1)).unwrap();
            assert_eq!(m.coin(), &ComplexMatrix::swap());
        }
        let g = generalized_grover_matrix(4, 1.0);
        for i in 0..4 {
            for j in 0..4 {
                let want = if i == j { -0.5 } else { 0.5 };
                assert!((g[(i, j)].re - want).abs() < 1e-15);
            }
        }
        for d_c in [3, 4, 6] {
            for a in [0.0, 0.5, 1.0] {
                let unitary = generalized_grover_matrix(d_c, a).unitarity_defect() < 1e-10;
                assert_eq!(unitary, a == 1.0, "d_c={d_c} a={a}");
            }
        }
        assert!(generalized_grover_coin(3, 0.5, ShiftType::M, GroverLattice::Line4).is_err());
        assert!(generalized_grover_coin(4, 1.5, ShiftType::M, GroverLattice::Line4).is_err());
        let u0 = generalized_grover_coin(4, 0.0, ShiftType::M, GroverLattice::Line4).unwrap();
        assert!(!classify(&u0).unitary);
    }

    #[test]
    fn generalized_grover_f_rows_match_displayed() {
        let a: f64 = 0.4;
        let (d3, o3) = (-a / 3.0, -a / 3.0 + 1.0);
        let f3 = generalized_grover_coin(3, a, ShiftType::F, GroverLattice::Line3).unwrap();
        #[rustfmt::skip]
        let want3 = ComplexMatrix::from_real(3, 3, &[o3, o3, d3, o3, d3, o3, d3, o3, o3]);
        assert!(approx_eq(f3.coin(), &want3, 1e-15));
        let (d4, o4) = (-a / 2.0, -a / 2.0 + 1.0);
        let f4 = generalized_grover_coin(4, a, ShiftType::F, GroverLattice::Line4).unwrap();
        #[rustfmt::skip]
        let want4 = ComplexMatrix::from_real(4, 4, &[
            o4, o4, o4, d4,
            o4, o4, d4, o4,
            o4, d4, o4, o4,
            d4, o4, o4, o4,
        ]);
        assert!(approx_eq(f4.coin(), &want4, 1e-15));
        let f2 = generalized_grover_coin(4, a, ShiftType::F, GroverLattice::Plane4).unwrap();
        #[rustfmt::skip]
        let want2 = ComplexMatrix::from_real(4, 4, &[
            o4, d4, o4, o4,
            d4, o4, o4, o4,
            o4, o4, o4, d4,
            o4, o4, d4, o4,
        ]);
        assert!(approx_eq(f2.coin(), &want2, 1e-15));
    }

    #[test]
    fn generalized_grover_at_one_matches_grover_families() {
        let cases = [
            (GroverLattice::Line3, three_state_qw(grover_eta(), ShiftType::M).unwrap(), ShiftType::M),
            (GroverLattice::Line3, three_state_qw(grover_eta(), ShiftType::F).unwrap(), ShiftType::F),
            (GroverLattice::Line4, four_state_qw_1d(0.5, ShiftType::M).unwrap(), ShiftType::M),
            (GroverLattice::Line4, four_state_qw_1d(0.5, ShiftType::F).unwrap(), ShiftType::F),
            (GroverLattice::Plane4, four_state_qw_2d(0.5, ShiftType::M).unwrap(), ShiftType::M),
            (GroverLattice::Plane4, four_state_qw_2d(0.5, ShiftType::F).unwrap(), ShiftType::F),
        ];
        for (lat, qw, s) in cases {
            let gg = generalized_grover_coin(lat.coin_size(), 1.0, s, lat).unwrap();
            assert!(approx_eq(gg.coin(), qw.coin(), 1e-12), "{lat:?} {s:?}");
            assert_eq!(gg.displacements(), qw.displacements());
        }
    }

    #[test]
    fn unitary_coins_have_unimodular_eigenvalues() {
        let models = [
            three_state_qw(0.7, ShiftType::M).unwrap(),
            three_state_qw(3.3, ShiftType::F).unwrap(),
            four_state_qw_1d(0.2, ShiftType::M).unwrap(),
            four_state_qw_1d(0.9, ShiftType::F).unwrap(),
            four_state_qw_2d(0.35, ShiftType::F).unwrap(),
            generalized_grover_coin(6, 1.0, ShiftType::F, GroverLattice::Torus(3)).unwrap(),
        ];
        for m in &models {
            for z in eigenvalues(m.coin()).unwrap() {
                assert!((z.norm() - 1.0).abs() < 1e-10, "{}", m.id());
            }
        }
    }

    #[test]
    fn multistate_rw_weights() {
        let m = simple_random_walk();
        assert_eq!(m.chirality_dim(), 1);
        assert_eq!(m.jumps().len(), 2);
        let bad = BTreeMap::from([(-1, 0.5), (1, 0.6)]);
        assert!(multistate_rw(&bad).is_err());
        let neg = BTreeMap::from([(-1, -0.5), (1, 1.5)]);
        assert!(multistate_rw(&neg).is_err());
        let cls = classify(&m);
        assert!(cls.column_stochastic && !cls.unitary);
        let drift = multistate_rw(&BTreeMap::from([(1, 1.0)])).unwrap();
        assert!(classify(&drift).unitary);
    }

    #[test]
    fn classification_flags() {
        let g = three_state_qw(grover_eta(), ShiftType::F).unwrap();
        let c = classify(&g);
        assert!(c.unitary && !c.column_stochastic);
        let crw = crw_from_qw(&g).unwrap();
        let c = classify(&crw);
        assert!(!c.unitary && c.column_stochastic);
    }

    #[test]
    fn config_json_round() {
        let m = WalkModel::from_json(r#"{"family": "three_state_qw", "shift": "f", "eta": 0.5}"#).unwrap();
        assert_eq!(m, three_state_qw(0.5, ShiftType::F).unwrap());
        let c = WalkModel::from_json(
            r#"{"family": {"crw_of": {"family": "four_state_qw_1d", "shift": "m", "p": 0.3}}}"#,
        )
        .unwrap();
        assert_eq!(c, crw_from_qw(&four_state_qw_1d(0.3, ShiftType::M).unwrap()).unwrap());
        let rw = WalkModel::from_json(
            r#"{"family": "multistate_rw", "weights": {"-2": 0.25, "-1": 0.25, "1": 0.25, "2": 0.25}}"#,
        )
        .unwrap();
        assert_eq!(rw.jumps().len(), 4);
        let gg = WalkModel::from_json(
            r#"{"family": "generalized_grover", "shift": "f", "a": 0.5, "lattice": "torus", "d": 3}"#,
        )
        .unwrap();
        assert_eq!(gg.chirality_dim(), 6);
        let cu = WalkModel::from_json(
            r#"{"family": "custom", "coin": [[[0,0],[1,0]],[[1,0],[0,0]]], "displacements": [[-1],[1]]}"#,
        )
        .unwrap();
        assert_eq!(cu.coin(), &ComplexMatrix::swap());
        assert!(WalkModel::from_json(r#"{"family": "three_state_qw", "eta": 0.5}"#).is_err());
        assert!(WalkModel::from_json(r#"{"family": "nope"}"#).is_err());
        assert!(WalkModel::from_json(r#"{"family": "three_state_qw", "shift": "f", "eta": 1, "etaa": 2}"#).is_err());
    }
}
