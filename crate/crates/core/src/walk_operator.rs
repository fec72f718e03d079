//! Fourier blocks, full torus operators, state evolution and matrix weights.
//!
//! Sites of `T^d_N` are enumerated lexicographically with the first
//! coordinate most significant. The full operator and flattened state vectors
//! use index `site * d_c + chirality`. Wave vectors follow the same
//! lexicographic order over `k_j = 2π m_j / N`.

use std::f64::consts::PI;

use crate::coin_models::WalkModel;
use crate::error::{Error, Result};
use crate::numerics::{mul_unchecked, re, Complex, ComplexMatrix};

/// Default row cap for [`full_operator`].
pub const FULL_OPERATOR_CAP: usize = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub struct TorusSpec {
    dim: usize,
    side: usize,
}

impl TorusSpec {
    pub fn new(dim: usize, side: usize) -> Result<Self> {
        if dim == 0 || side < 2 {
            return Err(Error::InvalidParameter(format!(
                "torus needs d >= 1 and N >= 2 (got d = {dim}, N = {side})"
            )));
        }
        if (side as f64).powi(dim as i32) > 1e9 {
            return Err(Error::InvalidParameter("torus too large".into()));
        }
        Ok(TorusSpec { dim, side })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn side(&self) -> usize {
        self.side
    }

    pub fn site_count(&self) -> usize {
        self.side.pow(self.dim as u32)
    }

    pub fn coords(&self, mut site: usize) -> Vec<i64> {
        let mut out = vec![0i64; self.dim];
        for slot in out.iter_mut().rev() {
            *slot = (site % self.side) as i64;
            site /= self.side;
        }
        out
    }

    /// Index of `x` after periodic wrap into `[0, N)`.
    pub fn index_of(&self, x: &[i64]) -> usize {
        let n = self.side as i64;
        x.iter().fold(0usize, |acc, &xi| acc * self.side + xi.rem_euclid(n) as usize)
    }

    pub fn wavevector(&self, site: usize) -> Vec<f64> {
        let step = 2.0 * PI / self.side as f64;
        self.coords(site).into_iter().map(|m| m as f64 * step).collect()
    }

    /// All grid wave vectors in lexicographic order.
    pub fn wavevectors(&self) -> impl Iterator<Item = Vec<f64>> + '_ {
        (0..self.site_count()).map(move |s| self.wavevector(s))
    }

    /// For each site `x`, the index of `x + shift` on the torus.
    fn shifted_indices(&self, shift: &[i64]) -> Vec<usize> {
        (0..self.site_count())
            .map(|s| {
                let mut x = self.coords(s);
                for (xi, di) in x.iter_mut().zip(shift) {
                    *xi += di;
                }
                self.index_of(&x)
            })
            .collect()
    }
}

/// `M̂(k) = Σ_j e^{-i<v_j, k>} B_j`.
pub fn fourier_block(model: &WalkModel, k: &[f64]) -> Result<ComplexMatrix> {
    if k.len() != model.lattice_dim() {
        return Err(Error::InvalidParameter(format!(
            "wave vector has {} components, model lives in dimension {}",
            k.len(),
            model.lattice_dim()
        )));
    }
    let dc = model.chirality_dim();
    let mut block = ComplexMatrix::zeros(dc, dc);
    for jump in model.jumps() {
        let phase: f64 = jump.displacement.iter().zip(k).map(|(&v, &kj)| v as f64 * kj).sum();
        block.add_scaled(Complex::from_polar(1.0, -phase), &jump.weight);
    }
    Ok(block)
}

pub fn full_operator(model: &WalkModel, torus: &TorusSpec) -> Result<ComplexMatrix> {
    full_operator_with_cap(model, torus, FULL_OPERATOR_CAP)
}

/// The `d_c N^d` square operator with `(M Ψ)(x) = Σ_j B_j Ψ(x - v_j)`.
pub fn full_operator_with_cap(model: &WalkModel, torus: &TorusSpec, cap: usize) -> Result<ComplexMatrix> {
    check_dims(model, torus)?;
    let dc = model.chirality_dim();
    let size = dc * torus.site_count();
    if size > cap {
        return Err(Error::TooLarge {
            what: "full operator",
            size,
            cap,
        });
    }
    let mut m = ComplexMatrix::zeros(size, size);
    for jump in model.jumps() {
        let back: Vec<i64> = jump.displacement.iter().map(|v| -v).collect();
        let source = torus.shifted_indices(&back);
        for (x, &y) in source.iter().enumerate() {
            for a in 0..dc {
                for b in 0..dc {
                    m[(x * dc + a, y * dc + b)] += jump.weight[(a, b)];
                }
            }
        }
    }
    Ok(m)
}

fn check_dims(model: &WalkModel, torus: &TorusSpec) -> Result<()> {
    if model.lattice_dim() != torus.dim() {
        return Err(Error::InvalidParameter(format!(
            "model dimension {} does not match torus dimension {}",
            model.lattice_dim(),
            torus.dim()
        )));
    }
    Ok(())
}

/// Amplitudes `Ψ(x) ∈ C^{d_c}` on every torus site.
#[derive(Clone, Debug, PartialEq)]
pub struct StateField {
    torus: TorusSpec,
    chirality_dim: usize,
    values: Vec<Complex>,
}

impl StateField {
    pub fn zeros(torus: TorusSpec, chirality_dim: usize) -> Self {
        StateField {
            torus,
            chirality_dim,
            values: vec![re(0.0); torus.site_count() * chirality_dim],
        }
    }

    /// All amplitude at `site` with internal state `amplitude`.
    pub fn localized(torus: TorusSpec, site: &[i64], amplitude: &[Complex]) -> Self {
        let mut s = Self::zeros(torus, amplitude.len());
        let idx = torus.index_of(site);
        s.values[idx * amplitude.len()..(idx + 1) * amplitude.len()].copy_from_slice(amplitude);
        s
    }

    pub fn from_flat(torus: TorusSpec, chirality_dim: usize, values: Vec<Complex>) -> Result<Self> {
        if values.len() != torus.site_count() * chirality_dim {
            return Err(Error::InvalidParameter("state vector length mismatch".into()));
        }
        Ok(StateField {
            torus,
            chirality_dim,
            values,
        })
    }

    pub fn torus(&self) -> &TorusSpec {
        &self.torus
    }

    pub fn chirality_dim(&self) -> usize {
        self.chirality_dim
    }

    pub fn at(&self, site: usize) -> &[Complex] {
        &self.values[site * self.chirality_dim..(site + 1) * self.chirality_dim]
    }

    pub fn as_flat(&self) -> &[Complex] {
        &self.values
    }

    pub fn norm(&self) -> f64 {
        self.values.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }
}

/// One step of `Ψ_{n+1}(x) = Σ_j B_j Ψ_n(x - v_j)` with periodic wrap.
pub fn evolve_step(model: &WalkModel, state: &StateField) -> Result<StateField> {
    check_dims(model, &state.torus)?;
    let dc = model.chirality_dim();
    if state.chirality_dim != dc {
        return Err(Error::InvalidParameter(format!(
            "state has {} components per site, model needs {dc}",
            state.chirality_dim
        )));
    }
    let mut out = StateField::zeros(state.torus, dc);
    for jump in model.jumps() {
        let back: Vec<i64> = jump.displacement.iter().map(|v| -v).collect();
        let source = state.torus.shifted_indices(&back);
        let nonzero_rows: Vec<usize> = (0..dc)
            .filter(|&a| jump.weight.row(a).iter().any(|z| z.norm() > 0.0))
            .collect();
        for (x, &y) in source.iter().enumerate() {
            let psi = state.at(y);
            for &a in &nonzero_rows {
                let acc: Complex = jump.weight.row(a).iter().zip(psi).map(|(w, p)| w * p).sum();
                out.values[x * dc + a] += acc;
            }
        }
    }
    Ok(out)
}

/// `μ(x) = Σ_c |Ψ^c(x)|^p` per site, in site order.
pub fn measure(state: &StateField, p: u32) -> Result<Vec<f64>> {
    if p != 1 && p != 2 {
        return Err(Error::InvalidParameter(format!("measure exponent must be 1 or 2, got {p}")));
    }
    Ok((0..state.torus.site_count())
        .map(|s| {
            state
                .at(s)
                .iter()
                .map(|z| if p == 1 { z.norm() } else { z.norm_sqr() })
                .sum()
        })
        .collect())
}

/// Matrix weights `Φ_n(x)` on `Z^d` inside the window `|x|_inf <= radius`.
#[derive(Clone, Debug, PartialEq)]
pub struct MatrixWeight {
    dim: usize,
    radius: usize,
    values: Vec<ComplexMatrix>,
}

impl MatrixWeight {
    pub fn initial(dim: usize, chirality_dim: usize) -> Self {
        MatrixWeight {
            dim,
            radius: 0,
            values: vec![ComplexMatrix::identity(chirality_dim)],
        }
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    fn width(&self) -> usize {
        2 * self.radius + 1
    }

    fn slot(&self, x: &[i64]) -> Option<usize> {
        let r = self.radius as i64;
        let w = self.width();
        let mut idx = 0usize;
        for &xi in x {
            if xi < -r || xi > r {
                return None;
            }
            idx = idx * w + (xi + r) as usize;
        }
        Some(idx)
    }

    fn coords(&self, mut slot: usize) -> Vec<i64> {
        let w = self.width();
        let mut out = vec![0i64; self.dim];
        for v in out.iter_mut().rev() {
            *v = (slot % w) as i64 - self.radius as i64;
            slot /= w;
        }
        out
    }

    pub fn get(&self, x: &[i64]) -> Option<&ComplexMatrix> {
        if x.len() != self.dim {
            return None;
        }
        self.slot(x).map(|i| &self.values[i])
    }

    pub fn origin(&self) -> &ComplexMatrix {
        self.get(&vec![0; self.dim]).expect("origin is always in the window")
    }

    /// Apply one step of the walk recursion, widening the window by the largest jump.
    pub fn step(&self, model: &WalkModel) -> MatrixWeight {
        let dc = model.chirality_dim();
        let next_radius = self.radius + model.max_step();
        let mut next = MatrixWeight {
            dim: self.dim,
            radius: next_radius,
            values: Vec::new(),
        };
        let count = next.width().pow(self.dim as u32);
        next.values = (0..count)
            .map(|slot| {
                let x = next.coords(slot);
                let mut acc = ComplexMatrix::zeros(dc, dc);
                for jump in model.jumps() {
                    let y: Vec<i64> = x.iter().zip(&jump.displacement).map(|(a, v)| a - v).collect();
                    if let Some(prev) = self.get(&y) {
                        acc.add_scaled(re(1.0), &mul_unchecked(&jump.weight, prev));
                    }
                }
                acc
            })
            .collect();
        next
    }
}

/// `Φ_r` on `Z^d` starting from the identity at the origin.
pub fn matrix_weights(model: &WalkModel, r: u32) -> MatrixWeight {
    let mut w = MatrixWeight::initial(model.lattice_dim(), model.chirality_dim());
    for _ in 0..r {
        w = w.step(model);
    }
    w
}

/// Return matrix weight `Φ_r(0)` of the walk on `Z^d`.
pub fn matrix_weight_origin(model: &WalkModel, r: u32) -> ComplexMatrix {
    matrix_weights(model, r).origin().clone()
}
