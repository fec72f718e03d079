//! Dense complex linear algebra for small and mid-sized matrices.
//!
//! Everything here works on [`ComplexMatrix`], a row-major dense matrix of
//! [`Complex`] scalars. Sizes stay at desk scale (coin blocks of a few rows,
//! torus and arc operators up to a few thousand rows).

use std::fmt;
use std::ops::{Index, IndexMut};

use crate::error::{Error, Result};

pub type Complex = num_complex::Complex64;

/// Largest matrix accepted by [`eigenvalues`].
pub const EIGEN_SIZE_CAP: usize = 64;
/// QR sweeps allowed per deflated eigenvalue before giving up.
pub const EIGEN_MAX_ITER: usize = 500;

#[inline]
pub fn c(re: f64, im: f64) -> Complex {
    Complex::new(re, im)
}

#[inline]
pub fn re(x: f64) -> Complex {
    Complex::new(x, 0.0)
}

#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex>,
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                let z = self[(i, j)];
                write!(f, "{:+.6}{:+.6}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        ComplexMatrix {
            rows,
            cols,
            data: vec![Complex::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = re(1.0);
        }
        m
    }

    /// The 2x2 swap matrix `[[0, 1], [1, 0]]`.
    pub fn swap() -> Self {
        Self::from_real(2, 2, &[0.0, 1.0, 1.0, 0.0])
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<Complex>) -> Result<Self> {
        if rows == 0 || cols == 0 || data.len() != rows * cols {
            return Err(Error::InvalidParameter(format!(
                "{} entries do not fill a {}x{} matrix",
                data.len(),
                rows,
                cols
            )));
        }
        if data.iter().any(|z| !z.is_finite()) {
            return Err(Error::InvalidParameter("non-finite matrix entry".into()));
        }
        Ok(ComplexMatrix { rows, cols, data })
    }

    /// Build from real row-major entries. Panics on length mismatch.
    pub fn from_real(rows: usize, cols: usize, entries: &[f64]) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count mismatch");
        ComplexMatrix {
            rows,
            cols,
            data: entries.iter().map(|&x| re(x)).collect(),
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn diagonal(entries: &[Complex]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, &z) in entries.iter().enumerate() {
            m[(i, i)] = z;
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[Complex] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Complex] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// Copy of `self` with every row except `j` zeroed (the projection `P_j · self`).
    pub fn row_selected(&self, j: usize) -> Self {
        let mut m = Self::zeros(self.rows, self.cols);
        m.data[j * self.cols..(j + 1) * self.cols].copy_from_slice(self.row(j));
        m
    }

    /// Rows reordered so that row `i` of the result is row `order[i]` of `self`.
    pub fn permute_rows(&self, order: &[usize]) -> Self {
        assert_eq!(order.len(), self.rows);
        let mut m = Self::zeros(self.rows, self.cols);
        for (i, &src) in order.iter().enumerate() {
            m.data[i * self.cols..(i + 1) * self.cols].copy_from_slice(self.row(src));
        }
        m
    }

    pub fn scale(&self, s: Complex) -> Self {
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&z| z * s).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_shape("add", other)?;
        Ok(ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same_shape("sub", other)?;
        Ok(ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        })
    }

    /// In-place `self += s * other`.
    pub fn add_scaled(&mut self, s: Complex, other: &Self) {
        debug_assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += s * b;
        }
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn conj(&self) -> Self {
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z.conj()).collect(),
        }
    }

    pub fn trace(&self) -> Complex {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        if self.rows != other.rows || self.cols != other.cols {
            return f64::INFINITY;
        }
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.is_finite())
    }

    pub fn is_real(&self, tol: f64) -> bool {
        self.data.iter().all(|z| z.im.abs() <= tol)
    }

    /// `max |(M^† M − I)_{ij}|`; zero for a unitary matrix.
    pub fn unitarity_defect(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let g = mul_unchecked(&self.adjoint(), self);
        g.max_abs_diff(&Self::identity(self.rows))
    }

    pub fn mul_vec(&self, v: &[Complex]) -> Result<Vec<Complex>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                op: "mul_vec",
                lhs_rows: self.rows,
                lhs_cols: self.cols,
                rhs_rows: v.len(),
                rhs_cols: 1,
            });
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    fn check_same_shape(&self, op: &'static str, other: &Self) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                op,
                lhs_rows: self.rows,
                lhs_cols: self.cols,
                rhs_rows: other.rows,
                rhs_cols: other.cols,
            });
        }
        Ok(())
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Complex {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex {
        &mut self.data[i * self.cols + j]
    }
}

pub fn mat_mul(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    if a.cols != b.rows {
        return Err(Error::DimensionMismatch {
            op: "mat_mul",
            lhs_rows: a.rows,
            lhs_cols: a.cols,
            rhs_rows: b.rows,
            rhs_cols: b.cols,
        });
    }
    Ok(mul_unchecked(a, b))
}

pub(crate) fn mul_unchecked(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let mut out = ComplexMatrix::zeros(a.rows, b.cols);
    for i in 0..a.rows {
        let out_row = &mut out.data[i * b.cols..(i + 1) * b.cols];
        for (k, &aik) in a.row(i).iter().enumerate() {
            if aik == Complex::new(0.0, 0.0) {
                continue;
            }
            for (o, &bkj) in out_row.iter_mut().zip(b.row(k)) {
                *o += aik * bkj;
            }
        }
    }
    out
}

/// Determinant by LU factorisation with partial (max-modulus) row pivoting.
pub fn determinant(m: &ComplexMatrix) -> Result<Complex> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows,
            cols: m.cols,
        });
    }
    let n = m.rows;
    let mut a = m.data.clone();
    let mut det = re(1.0);
    for k in 0..n {
        let (pivot_row, pivot_abs) = (k..n)
            .map(|i| (i, a[i * n + k].norm()))
            .fold((k, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
        if pivot_abs == 0.0 {
            return Ok(re(0.0));
        }
        if pivot_row != k {
            for j in 0..n {
                a.swap(k * n + j, pivot_row * n + j);
            }
            det = -det;
        }
        let pivot = a[k * n + k];
        det *= pivot;
        let inv = pivot.inv();
        for i in (k + 1)..n {
            let factor = a[i * n + k] * inv;
            if factor == re(0.0) {
                continue;
            }
            for j in (k + 1)..n {
                let akj = a[k * n + j];
                a[i * n + j] -= factor * akj;
            }
        }
    }
    Ok(det)
}

/// All eigenvalues with multiplicity, in no particular order.
///
/// Householder reduction to upper Hessenberg form followed by single-shift
/// complex QR sweeps with Wilkinson shifts and deflation.
pub fn eigenvalues(m: &ComplexMatrix) -> Result<Vec<Complex>> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows,
            cols: m.cols,
        });
    }
    let n = m.rows;
    if n > EIGEN_SIZE_CAP {
        return Err(Error::TooLarge {
            what: "eigenvalues",
            size: n,
            cap: EIGEN_SIZE_CAP,
        });
    }
    let mut h = m.data.clone();
    hessenberg_in_place(&mut h, n);
    hessenberg_qr(&mut h, n)
}

fn hessenberg_in_place(a: &mut [Complex], n: usize) {
    if n < 3 {
        return;
    }
    let mut v = vec![re(0.0); n];
    for k in 0..n - 2 {
        let len = n - k - 1;
        let alpha = (0..len).map(|i| a[(k + 1 + i) * n + k].norm_sqr()).sum::<f64>().sqrt();
        if alpha == 0.0 {
            continue;
        }
        let x0 = a[(k + 1) * n + k];
        let phase = if x0.norm() > 0.0 { x0 / x0.norm() } else { re(1.0) };
        for i in 0..len {
            v[i] = a[(k + 1 + i) * n + k];
        }
        v[0] += phase * alpha;
        let vnorm2: f64 = v[..len].iter().map(|z| z.norm_sqr()).sum();
        if vnorm2 == 0.0 {
            continue;
        }
        // Left: A <- (I - 2vv^H/|v|^2) A on rows k+1..n.
        for j in k..n {
            let s: Complex = (0..len).map(|i| v[i].conj() * a[(k + 1 + i) * n + j]).sum();
            let f = s * (2.0 / vnorm2);
            for i in 0..len {
                a[(k + 1 + i) * n + j] -= f * v[i];
            }
        }
        // Right: A <- A (I - 2vv^H/|v|^2) on columns k+1..n.
        for i in 0..n {
            let s: Complex = (0..len).map(|l| a[i * n + k + 1 + l] * v[l]).sum();
            let f = s * (2.0 / vnorm2);
            for l in 0..len {
                a[i * n + k + 1 + l] -= f * v[l].conj();
            }
        }
        for i in (k + 2)..n {
            a[i * n + k] = re(0.0);
        }
    }
}

fn eig_2x2(a: Complex, b: Complex, cc: Complex, d: Complex) -> (Complex, Complex) {
    let mean = (a + d) * 0.5;
    let det = a * d - b * cc;
    let half = (a - d) * 0.5;
    let root = (half * half + b * cc).sqrt();
    let l1 = if (mean + root).norm() >= (mean - root).norm() {
        mean + root
    } else {
        mean - root
    };
    let l2 = if l1.norm() > 0.0 { det / l1 } else { mean - root };
    (l1, l2)
}

fn givens(x: Complex, y: Complex) -> (f64, Complex) {
    if y == re(0.0) {
        return (1.0, re(0.0));
    }
    let xa = x.norm();
    let r = xa.hypot(y.norm());
    let phase = if xa > 0.0 { x / xa } else { re(1.0) };
    (xa / r, phase * y.conj() / r)
}

fn hessenberg_qr(h: &mut [Complex], n: usize) -> Result<Vec<Complex>> {
    let idx = |i: usize, j: usize| i * n + j;
    let scale = h.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let mut eig = vec![re(0.0); n];
    if scale == 0.0 {
        return Ok(eig);
    }
    let mut rots: Vec<(f64, Complex)> = Vec::with_capacity(n);
    let mut hi = n - 1;
    let mut iter = 0usize;
    loop {
        if hi == 0 {
            eig[0] = h[idx(0, 0)];
            break;
        }
        let mut l = hi;
        while l > 0 {
            let mut s = h[idx(l - 1, l - 1)].norm() + h[idx(l, l)].norm();
            if s == 0.0 {
                s = scale;
            }
            if h[idx(l, l - 1)].norm() <= f64::EPSILON * s {
                h[idx(l, l - 1)] = re(0.0);
                break;
            }
            l -= 1;
        }
        if l == hi {
            eig[hi] = h[idx(hi, hi)];
            hi -= 1;
            iter = 0;
            continue;
        }
        if l + 1 == hi {
            let (a, b) = eig_2x2(
                h[idx(hi - 1, hi - 1)],
                h[idx(hi - 1, hi)],
                h[idx(hi, hi - 1)],
                h[idx(hi, hi)],
            );
            eig[hi - 1] = a;
            eig[hi] = b;
            if hi < 2 {
                break;
            }
            hi -= 2;
            iter = 0;
            continue;
        }
        iter += 1;
        if iter > EIGEN_MAX_ITER {
            return Err(Error::NoConvergence { iterations: iter - 1 });
        }
        let shift = if iter % 11 == 0 {
            // exceptional shift to break cycles
            h[idx(hi, hi)] + re(0.75 * h[idx(hi, hi - 1)].norm())
        } else {
            let (a, b) = eig_2x2(
                h[idx(hi - 1, hi - 1)],
                h[idx(hi - 1, hi)],
                h[idx(hi, hi - 1)],
                h[idx(hi, hi)],
            );
            let d = h[idx(hi, hi)];
            if (a - d).norm() < (b - d).norm() {
                a
            } else {
                b
            }
        };
        for k in l..=hi {
            h[idx(k, k)] -= shift;
        }
        rots.clear();
        for k in l..hi {
            let (cs, sn) = givens(h[idx(k, k)], h[idx(k + 1, k)]);
            for j in k..=hi {
                let a = h[idx(k, j)];
                let b = h[idx(k + 1, j)];
                h[idx(k, j)] = a * cs + sn * b;
                h[idx(k + 1, j)] = -sn.conj() * a + b * cs;
            }
            rots.push((cs, sn));
        }
        for (off, &(cs, sn)) in rots.iter().enumerate() {
            let k = l + off;
            for i in l..=(k + 2).min(hi) {
                let a = h[idx(i, k)];
                let b = h[idx(i, k + 1)];
                h[idx(i, k)] = a * cs + b * sn.conj();
                h[idx(i, k + 1)] = -a * sn + b * cs;
            }
        }
        for k in l..=hi {
            h[idx(k, k)] += shift;
        }
    }
    Ok(eig)
}

/// `Tr(m^r)` by binary powering.
pub fn trace_of_power(m: &ComplexMatrix, r: u32) -> Result<Complex> {
    Ok(matrix_power(m, r)?.trace())
}

pub fn matrix_power(m: &ComplexMatrix, mut r: u32) -> Result<ComplexMatrix> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows,
            cols: m.cols,
        });
    }
    let mut acc = ComplexMatrix::identity(m.rows);
    let mut base = m.clone();
    while r > 0 {
        if r & 1 == 1 {
            acc = mul_unchecked(&acc, &base);
        }
        r >>= 1;
        if r > 0 {
            base = mul_unchecked(&base, &base);
        }
    }
    Ok(acc)
}

/// Kronecker product with block layout `a_{ij} · b`.
pub fn kronecker(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    ComplexMatrix::from_fn(a.rows * b.rows, a.cols * b.cols, |i, j| {
        a[(i / b.rows, j / b.cols)] * b[(i % b.rows, j % b.cols)]
    })
}

pub fn hadamard(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    a.check_same_shape("hadamard", b)?;
    Ok(ComplexMatrix {
        rows: a.rows,
        cols: a.cols,
        data: a.data.iter().zip(&b.data).map(|(x, y)| x * y).collect(),
    })
}

/// Bottleneck distance between two eigenvalue multisets under greedy
/// nearest-neighbour matching. Infinite when the sizes differ.
pub fn multiset_distance(a: &[Complex], b: &[Complex]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    let mut sorted: Vec<Complex> = a.to_vec();
    sorted.sort_by(|x, y| x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im)));
    let mut used = vec![false; b.len()];
    let mut worst = 0.0f64;
    for x in sorted {
        let (best, dist) = b
            .iter()
            .enumerate()
            .filter(|(i, _)| !used[*i])
            .map(|(i, y)| (i, (x - y).norm()))
            .fold((usize::MAX, f64::INFINITY), |acc, cur| if cur.1 < acc.1 { cur } else { acc });
        used[best] = true;
        worst = worst.max(dist);
    }
    worst
}

/// Hausdorff distance between two finite point sets in the complex plane.
pub fn hausdorff_distance(a: &[Complex], b: &[Complex]) -> f64 {
    let one_way = |p: &[Complex], q: &[Complex]| {
        p.iter()
            .map(|x| q.iter().map(|y| (x - y).norm()).fold(f64::INFINITY, f64::min))
            .fold(0.0, f64::max)
    };
    one_way(a, b).max(one_way(b, a))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_matrix(rng: &mut ChaCha8Rng, n: usize) -> ComplexMatrix {
        ComplexMatrix::from_fn(n, n, |_, _| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
    }

    // Naive triple loop, kept separate from the row-accumulating kernel.
    fn naive_mul(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix::from_fn(a.rows(), b.cols(), |i, j| {
            let mut s = re(0.0);
            for k in 0..a.cols() {
                s += a[(i, k)] * b[(k, j)];
            }
            s
        })
    }

    fn cofactor_det(m: &ComplexMatrix) -> Complex {
        let n = m.rows();
        if n == 1 {
            return m[(0, 0)];
        }
        let mut total = re(0.0);
        for j in 0..n {
            let minor = ComplexMatrix::from_fn(n - 1, n - 1, |r, cidx| {
                m[(r + 1, if cidx < j { cidx } else { cidx + 1 })]
            });
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            total += m[(0, j)] * cofactor_det(&minor) * sign;
        }
        total
    }

    #[test]
    fn identity_times_x_is_x() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let x = random_matrix(&mut rng, 3);
        assert_eq!(mat_mul(&ComplexMatrix::identity(3), &x).unwrap(), x);
    }

    #[test]
    fn swap_is_involution() {
        let s = ComplexMatrix::swap();
        assert_eq!(mat_mul(&s, &s).unwrap(), ComplexMatrix::identity(2));
    }

    #[test]
    fn mat_mul_matches_naive_loop() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let a = random_matrix(&mut rng, 3);
        let b = random_matrix(&mut rng, 3);
        assert!(mat_mul(&a, &b).unwrap().max_abs_diff(&naive_mul(&a, &b)) < 1e-14);
    }

    #[test]
    fn mat_mul_rejects_mismatch() {
        let a = ComplexMatrix::zeros(2, 3);
        assert!(matches!(mat_mul(&a, &a), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn determinant_basics() {
        assert_eq!(determinant(&ComplexMatrix::identity(4)).unwrap(), re(1.0));
        let mut u = ComplexMatrix::diagonal(&[re(2.0), c(0.0, 3.0), re(-1.0)]);
        u[(0, 1)] = c(5.0, 1.0);
        u[(0, 2)] = re(7.0);
        u[(1, 2)] = c(-2.0, 0.5);
        let d = determinant(&u).unwrap();
        assert!((d - c(0.0, -6.0)).norm() < 1e-14);
        assert!(matches!(
            determinant(&ComplexMatrix::zeros(2, 3)),
            Err(Error::NotSquare { .. })
        ));
    }

    #[test]
    fn determinant_matches_cofactor_expansion() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let m = random_matrix(&mut rng, 4);
            let oracle = cofactor_det(&m);
            let lu = determinant(&m).unwrap();
            assert!((lu - oracle).norm() / oracle.norm() < 1e-12);
        }
    }

    #[test]
    fn determinant_sign_flips_per_transposition() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let m = random_matrix(&mut rng, 5);
        let d = determinant(&m).unwrap();
        let one_swap = m.permute_rows(&[1, 0, 2, 3, 4]);
        let two_swaps = m.permute_rows(&[1, 0, 3, 2, 4]);
        let three_cycle = m.permute_rows(&[1, 2, 0, 3, 4]);
        assert!((determinant(&one_swap).unwrap() + d).norm() < 1e-12);
        assert!((determinant(&two_swaps).unwrap() - d).norm() < 1e-12);
        assert!((determinant(&three_cycle).unwrap() - d).norm() < 1e-12);
    }

    #[test]
    fn determinant_of_singular_is_zero() {
        let m = ComplexMatrix::from_real(2, 2, &[1.0, 2.0, 2.0, 4.0]);
        assert!(determinant(&m).unwrap().norm() < 1e-15);
    }

    #[test]
    fn eigenvalues_of_diagonal() {
        let m = ComplexMatrix::diagonal(&[re(1.0), re(-1.0), c(0.0, 1.0)]);
        let ev = eigenvalues(&m).unwrap();
        assert!(multiset_distance(&ev, &[re(1.0), re(-1.0), c(0.0, 1.0)]) < 1e-14);
    }

    #[test]
    fn eigenvalues_trace_and_determinant_identities() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for n in [3, 5, 8] {
            let m = random_matrix(&mut rng, n);
            let ev = eigenvalues(&m).unwrap();
            let sum: Complex = ev.iter().sum();
            let prod: Complex = ev.iter().product();
            assert!((sum - m.trace()).norm() < 1e-10);
            assert!((prod - determinant(&m).unwrap()).norm() < 1e-10);
        }
    }

    #[test]
    fn eigenvalues_of_degenerate_unitary() {
        // I_3 ⊗ swap has eigenvalues ±1 each with multiplicity 3
        let m = kronecker(&ComplexMatrix::identity(3), &ComplexMatrix::swap());
        let ev = eigenvalues(&m).unwrap();
        let expected = [re(1.0), re(1.0), re(1.0), re(-1.0), re(-1.0), re(-1.0)];
        assert!(multiset_distance(&ev, &expected) < 1e-12);
    }

    #[test]
    fn eigenvalues_of_rotation_and_nilpotent() {
        let rot = ComplexMatrix::from_real(2, 2, &[0.0, -1.0, 1.0, 0.0]);
        let ev = eigenvalues(&rot).unwrap();
        assert!(multiset_distance(&ev, &[c(0.0, 1.0), c(0.0, -1.0)]) < 1e-14);
        let nil = ComplexMatrix::from_real(3, 3, &[0.0, 1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0]);
        let ev = eigenvalues(&nil).unwrap();
        assert!(ev.iter().all(|z| z.norm() < 1e-12));
        assert_eq!(eigenvalues(&ComplexMatrix::zeros(4, 4)).unwrap(), vec![re(0.0); 4]);
    }

    #[test]
    fn eigenvalues_rejects_oversize() {
        let m = ComplexMatrix::identity(EIGEN_SIZE_CAP + 1);
        assert!(matches!(eigenvalues(&m), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn trace_of_power_basics() {
        let id = ComplexMatrix::identity(5);
        assert_eq!(trace_of_power(&id, 7).unwrap(), re(5.0));
        let s = ComplexMatrix::swap();
        assert_eq!(trace_of_power(&s, 2).unwrap(), re(2.0));
        assert_eq!(trace_of_power(&s, 3).unwrap(), re(0.0));
    }

    #[test]
    fn trace_of_power_matches_spectral_sum() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let m = random_matrix(&mut rng, 3);
        let ev = eigenvalues(&m).unwrap();
        let spectral: Complex = ev.iter().map(|z| z.powu(5)).sum();
        assert!((trace_of_power(&m, 5).unwrap() - spectral).norm() < 1e-10);
    }

    #[test]
    fn kronecker_layout() {
        let k = kronecker(&ComplexMatrix::identity(2), &ComplexMatrix::swap());
        let expected = ComplexMatrix::from_real(
            4,
            4,
            &[
                0.0, 1.0, 0.0, 0.0, //
                1.0, 0.0, 0.0, 0.0, //
                0.0, 0.0, 0.0, 1.0, //
                0.0, 0.0, 1.0, 0.0,
            ],
        );
        assert_eq!(k, expected);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let x = random_matrix(&mut rng, 3);
        assert_eq!(kronecker(&ComplexMatrix::identity(1), &x), x);
    }

    #[test]
    fn kronecker_mixed_product() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let (a, b, cm, d) = (
            random_matrix(&mut rng, 2),
            random_matrix(&mut rng, 2),
            random_matrix(&mut rng, 2),
            random_matrix(&mut rng, 2),
        );
        let lhs = mat_mul(&kronecker(&a, &b), &kronecker(&cm, &d)).unwrap();
        let rhs = kronecker(&mat_mul(&a, &cm).unwrap(), &mat_mul(&b, &d).unwrap());
        assert!(lhs.max_abs_diff(&rhs) < 1e-12);
    }

    #[test]
    fn hadamard_basics() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let x = random_matrix(&mut rng, 3);
        let ones = ComplexMatrix::from_fn(3, 3, |_, _| re(1.0));
        assert_eq!(hadamard(&x, &ones).unwrap(), x);
        let s = ComplexMatrix::swap();
        assert_eq!(hadamard(&s, &s).unwrap(), s);
        assert!(hadamard(&s, &ones).is_err());
    }

    #[test]
    fn distances() {
        let a = [re(1.0), re(1.0), re(2.0)];
        let b = [re(2.0), re(1.0), re(1.0 + 1e-3)];
        assert!((multiset_distance(&a, &b) - 1e-3).abs() < 1e-12);
        assert!(multiset_distance(&a, &b[..2]).is_infinite());
        assert!((hausdorff_distance(&[re(0.0)], &[re(0.0), re(3.0)]) - 3.0).abs() < 1e-15);
    }
}
