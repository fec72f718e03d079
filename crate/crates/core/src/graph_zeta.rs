//! Generalized Grover operator on the arcs of a regular graph and its
//! determinant identity
//!
//! `det(I_{2m} - u U(a)) = (1 - u²)^{m-n} det[(1 + c₂ u²) I_n - c₁ u P]`
//!
//! with `c₂ = q + (1-q)a`, `c₁ = 1 + q + (1-q)a` on a `(q+1)`-regular graph.

use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{determinant, re, Complex, ComplexMatrix};

/// Largest arc count accepted by [`konno_sato_lhs`].
pub const ARC_CAP: usize = 2048;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphKind {
    Cycle(usize),
    Complete(usize),
    Petersen,
    Hypercube(usize),
    Torus { dim: usize, side: usize },
}

/// Simple connected regular graph with arcs `2i = (u, v)`, `2i + 1 = (v, u)`
/// for edge `i = {u, v}`.
#[derive(Clone, Debug, PartialEq)]
pub struct RegularGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
    degree: usize,
}

impl RegularGraph {
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        let mut deg = vec![0usize; n];
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            if u >= n || v >= n {
                return Err(Error::InvalidParameter(format!("edge ({u}, {v}) outside {n} vertices")));
            }
            if u == v {
                return Err(Error::NotSimple(format!("loop at vertex {u}")));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(Error::NotSimple(format!("repeated edge ({u}, {v})")));
            }
            deg[u] += 1;
            deg[v] += 1;
            adj[u].push(v);
            adj[v].push(u);
        }
        let degree = *deg.first().ok_or_else(|| Error::InvalidParameter("empty graph".into()))?;
        if deg.iter().any(|&d| d != degree) {
            return Err(Error::NotRegular);
        }
        if degree < 2 {
            return Err(Error::InvalidParameter("degree must be at least 2".into()));
        }
        let mut visited = vec![false; n];
        let mut queue = VecDeque::from([0]);
        visited[0] = true;
        while let Some(x) = queue.pop_front() {
            for &y in &adj[x] {
                if !visited[y] {
                    visited[y] = true;
                    queue.push_back(y);
                }
            }
        }
        if visited.iter().any(|v| !v) {
            return Err(Error::NotConnected);
        }
        Ok(RegularGraph { n, edges, degree })
    }

    pub fn build(kind: GraphKind) -> Result<Self> {
        match kind {
            GraphKind::Cycle(n) => {
                if n < 3 {
                    return Err(Error::NotSimple(format!("cycle on {n} vertices")));
                }
                Self::new(n, (0..n).map(|i| (i, (i + 1) % n)).collect())
            }
            GraphKind::Complete(n) => {
                if n < 3 {
                    return Err(Error::InvalidParameter(format!("complete graph needs n >= 3, got {n}")));
                }
                let edges = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
                Self::new(n, edges)
            }
            GraphKind::Petersen => {
                let mut edges: Vec<(usize, usize)> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
                edges.extend((0..5).map(|i| (i, i + 5)));
                edges.extend((0..5).map(|i| (i + 5, (i + 2) % 5 + 5)));
                Self::new(10, edges)
            }
            GraphKind::Hypercube(d) => {
                if d < 2 {
                    return Err(Error::InvalidParameter(format!("hypercube needs d >= 2, got {d}")));
                }
                let n = 1usize << d;
                let edges = (0..n)
                    .flat_map(|x| (0..d).map(move |b| (x, x ^ (1 << b))))
                    .filter(|&(x, y)| x < y)
                    .collect();
                Self::new(n, edges)
            }
            GraphKind::Torus { dim, side } => {
                if dim == 0 {
                    return Err(Error::InvalidParameter("torus dimension must be positive".into()));
                }
                if side < 3 {
                    return Err(Error::NotSimple(format!("torus side {side} gives multi-edges")));
                }
                let n = side.pow(dim as u32);
                let mut edges = Vec::with_capacity(dim * n);
                for x in 0..n {
                    // Lexicographic coordinates, first axis most significant.
                    let mut stride = n;
                    for _ in 0..dim {
                        stride /= side;
                        let c = (x / stride) % side;
                        let y = x - c * stride + ((c + 1) % side) * stride;
                        edges.push((x, y));
                    }
                }
                Self::new(n, edges)
            }
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// `q + 1`.
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn q(&self) -> usize {
        self.degree - 1
    }

    pub fn arc_count(&self) -> usize {
        2 * self.edges.len()
    }

    /// `(o(e), t(e))`.
    pub fn arc(&self, e: usize) -> (usize, usize) {
        let (u, v) = self.edges[e / 2];
        if e % 2 == 0 {
            (u, v)
        } else {
            (v, u)
        }
    }

    pub fn inverse_arc(&self, e: usize) -> usize {
        e ^ 1
    }

    /// `P = A / (q + 1)`.
    pub fn transition_matrix(&self) -> ComplexMatrix {
        let mut p = ComplexMatrix::zeros(self.n, self.n);
        let w = 1.0 / self.degree as f64;
        for &(u, v) in &self.edges {
            p[(u, v)] = re(w);
            p[(v, u)] = re(w);
        }
        p
    }
}

/// `U(a)_{ef} = [(2/d_{t(f)} - 1) a + 1 - δ_{e, f⁻¹}] · [o(e) = t(f)]`.
pub fn arc_operator(g: &RegularGraph, a: f64) -> ComplexMatrix {
    let m2 = g.arc_count();
    let base = (2.0 / g.degree() as f64 - 1.0) * a + 1.0;
    let mut out = ComplexMatrix::zeros(m2, m2);
    // Group arcs by terminus so each row only visits arcs ending at o(e).
    let mut into = vec![Vec::new(); g.vertex_count()];
    for f in 0..m2 {
        into[g.arc(f).1].push(f);
    }
    for e in 0..m2 {
        for &f in &into[g.arc(e).0] {
            let back = if e == g.inverse_arc(f) { 1.0 } else { 0.0 };
            out[(e, f)] = re(base - back);
        }
    }
    out
}

/// `(c₂, c₁) = (q + (1-q)a, 1 + q + (1-q)a)`.
pub fn konno_sato_coefficients(q: usize, a: f64) -> (f64, f64) {
    let q = q as f64;
    let c2 = q + (1.0 - q) * a;
    (c2, 1.0 + c2)
}

/// `det(I_{2m} - u U(a))`.
pub fn konno_sato_lhs(g: &RegularGraph, a: f64, u: Complex) -> Result<Complex> {
    if g.arc_count() > ARC_CAP {
        return Err(Error::TooLarge {
            what: "arc operator",
            size: g.arc_count(),
            cap: ARC_CAP,
        });
    }
    let b = arc_operator(g, a);
    determinant(&ComplexMatrix::identity(b.rows()).sub(&b.scale(u))?)
}

/// `(1 - u²)^{m-n} det[(1 + c₂ u²) I_n - c₁ u P]`.
pub fn konno_sato_rhs(g: &RegularGraph, a: f64, u: Complex) -> Result<Complex> {
    let (c2, c1) = konno_sato_coefficients(g.q(), a);
    let n = g.vertex_count();
    let inner = ComplexMatrix::identity(n)
        .scale(re(1.0) + u * u * c2)
        .sub(&g.transition_matrix().scale(u * c1))?;
    let excess = g.edge_count() as i32 - n as i32;
    Ok((re(1.0) - u * u).powi(excess) * determinant(&inner)?)
}

/// `max |lhs - rhs| / max(|lhs|, |rhs|, 1e-30)` over both grids.
pub fn verify_konno_sato(g: &RegularGraph, a_grid: &[f64], u_grid: &[Complex]) -> Result<f64> {
    let mut worst = 0.0f64;
    for &a in a_grid {
        for &u in u_grid {
            let l = konno_sato_lhs(g, a, u)?;
            let r = konno_sato_rhs(g, a, u)?;
            let scale = l.norm().max(r.norm()).max(1e-30);
            worst = worst.max((l - r).norm() / scale);
        }
    }
    Ok(worst)
}

/// JSON graph description; `n` sizes cycles and complete graphs, `d` and `N`
/// size hypercubes and tori.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphSpec {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<usize>,
    #[serde(default, rename = "N", skip_serializing_if = "Option::is_none")]
    pub side: Option<usize>,
}

impl GraphSpec {
    pub fn kind(&self) -> Result<GraphKind> {
        let need = |v: Option<usize>, field: &str| {
            v.ok_or_else(|| Error::Config(format!("graph {:?} requires \"{field}\"", self.kind)))
        };
        Ok(match self.kind.as_str() {
            "cycle" => GraphKind::Cycle(need(self.n.or(self.side), "n")?),
            "complete" => GraphKind::Complete(need(self.n, "n")?),
            "petersen" => GraphKind::Petersen,
            "hypercube" => GraphKind::Hypercube(need(self.d, "d")?),
            "torus" => GraphKind::Torus {
                dim: need(self.d, "d")?,
                side: need(self.side, "N")?,
            },
            other => return Err(Error::Config(format!("unknown graph kind {other:?}"))),
        })
    }

    pub fn build(&self) -> Result<RegularGraph> {
        RegularGraph::build(self.kind()?)
    }

    pub fn from_json(text: &str) -> Result<RegularGraph> {
        serde_json::from_str::<GraphSpec>(text)?.build()
    }
}
