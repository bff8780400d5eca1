//! Dense complex linear algebra and bipartite-system primitives.
//!
//! Everything downstream (channels, Choi matrices, conic programs) is built
//! on [`ComplexMatrix`], a plain row-major dense matrix of `Complex<f64>`.
//! Bipartite structure is never baked into the matrix itself; operations
//! that need it take a [`BipartiteDims`] and a [`Sys`] selector.
//!
//! Index convention, fixed once for the whole crate: the composite index of
//! `A ⊗ B` is `i_a * dim_b + i_b`, i.e. system A is the most significant
//! factor.  The unnormalized maximally entangled operator
//! `phi_plus(d) = Σ_ij |ii⟩⟨jj|` follows this convention, so the Choi matrix
//! of a trace-preserving map has identity A-marginal.

mod eig;

pub use eig::{hermitian_eig, sym_eig};
pub(crate) use eig::embed_hermitian;

use num_complex::Complex;
use thiserror::Error;

/// Complex scalar used throughout the crate.
pub type C64 = Complex<f64>;

/// Tolerance below which a matrix is accepted as Hermitian.
pub const HERMITIAN_TOL: f64 = 1e-10;

#[derive(Debug, Error)]
pub enum MatError {
    #[error("dimension mismatch: {0}")]
    DimMismatch(String),
    #[error("matrix is not Hermitian (asymmetry {0:.3e})")]
    NotHermitian(f64),
    #[error("invalid dimension: {0}")]
    BadDim(String),
}

/// Which factor of a bipartite system an operation acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum Sys {
    A,
    B,
}

/// Dimensions of a bipartite system `A ⊗ B`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct BipartiteDims {
    pub dim_a: usize,
    pub dim_b: usize,
}

impl BipartiteDims {
    pub fn new(dim_a: usize, dim_b: usize) -> Self {
        assert!(dim_a > 0 && dim_b > 0, "dimensions must be positive");
        BipartiteDims { dim_a, dim_b }
    }

    /// Side length of a matrix living on the joint system.
    pub fn total(&self) -> usize {
        self.dim_a * self.dim_b
    }

    fn check(&self, m: &ComplexMatrix) -> Result<(), MatError> {
        if m.rows != m.cols || m.rows != self.total() {
            return Err(MatError::DimMismatch(format!(
                "expected {0}x{0} for dims {1}x{2}, got {3}x{4}",
                self.total(),
                self.dim_a,
                self.dim_b,
                m.rows,
                m.cols
            )));
        }
        Ok(())
    }
}

/// Dense complex matrix, row-major storage.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ComplexMatrix {
            rows,
            cols,
            data: vec![C64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, C64::new(1.0, 0.0));
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        ComplexMatrix { rows, cols, data }
    }

    /// Build from rows of real numbers.
    pub fn from_real_rows(rows: &[Vec<f64>]) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        Self::from_fn(r, c, |i, j| C64::new(rows[i][j], 0.0))
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<C64>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count must be rows*cols");
        ComplexMatrix { rows, cols, data }
    }

    /// Rank-one projector |v⟩⟨v| from a column vector.
    pub fn outer(v: &[C64]) -> Self {
        let n = v.len();
        Self::from_fn(n, n, |i, j| v[i] * v[j].conj())
    }

    /// Computational basis column vector |k⟩ as an n×1 matrix.
    pub fn ket(n: usize, k: usize) -> Self {
        let mut m = Self::zeros(n, 1);
        m.set(k, 0, C64::new(1.0, 0.0));
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: C64) {
        self.data[i * self.cols + j] = v;
    }

    #[inline]
    pub fn add_to(&mut self, i: usize, j: usize, v: C64) {
        self.data[i * self.cols + j] += v;
    }

    pub fn entries(&self) -> &[C64] {
        &self.data
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a + b)
            .collect();
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a - b)
            .collect();
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn scale(&self, s: C64) -> Self {
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * s).collect(),
        }
    }

    pub fn scale_re(&self, s: f64) -> Self {
        self.scale(C64::new(s, 0.0))
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(
            self.cols, other.rows,
            "inner dimensions must agree in matmul"
        );
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                let row = k * other.cols;
                let orow = i * other.cols;
                for j in 0..other.cols {
                    out.data[orow + j] += a * other.data[row + j];
                }
            }
        }
        out
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).conj())
    }

    /// Plain transpose (no conjugation).
    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn conj(&self) -> Self {
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a.conj()).collect(),
        }
    }

    pub fn trace(&self) -> C64 {
        assert!(self.is_square());
        (0..self.rows).map(|i| self.get(i, i)).sum()
    }

    /// Real part of the Hilbert-Schmidt inner product `Tr[self† other]`.
    pub fn inner_re(&self, other: &Self) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a.conj() * b).re)
            .sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|a| a.norm()).fold(0.0, f64::max)
    }

    /// Largest deviation `max_ij |M_ij − conj(M_ji)|` from Hermiticity.
    pub fn hermitian_defect(&self) -> f64 {
        assert!(self.is_square());
        let mut worst = 0.0f64;
        for i in 0..self.rows {
            for j in i..self.cols {
                let d = (self.get(i, j) - self.get(j, i).conj()).norm();
                worst = worst.max(d);
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.is_square() && self.hermitian_defect() <= tol
    }

    /// Symmetrize `(M + M†)/2`; used to scrub rounding off operators that
    /// are Hermitian by construction.
    pub fn hermitian_part(&self) -> Self {
        assert!(self.is_square());
        Self::from_fn(self.rows, self.cols, |i, j| {
            (self.get(i, j) + self.get(j, i).conj()) * 0.5
        })
    }

    /// Apply self to a column vector.
    pub fn mul_vec(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(self.cols, v.len());
        let mut out = vec![C64::new(0.0, 0.0); self.rows];
        for i in 0..self.rows {
            let row = i * self.cols;
            let mut acc = C64::new(0.0, 0.0);
            for j in 0..self.cols {
                acc += self.data[row + j] * v[j];
            }
            out[i] = acc;
        }
        out
    }

    /// Expectation `⟨v|M|v⟩` (real part; exact for Hermitian `M`).
    pub fn expectation(&self, v: &[C64]) -> f64 {
        let mv = self.mul_vec(v);
        v.iter().zip(&mv).map(|(a, b)| (a.conj() * b).re).sum()
    }

    /// Smallest eigenvalue of a Hermitian matrix.
    pub fn min_eigenvalue(&self) -> f64 {
        let (evals, _) = hermitian_eig(self).expect("min_eigenvalue needs Hermitian input");
        *evals.last().unwrap_or(&0.0)
    }
}

/// Kronecker product with the left factor on system A (most significant
/// index), so `tensor(x, y)[(i_a, i_b), (j_a, j_b)] = x[i_a,j_a] y[i_b,j_b]`.
pub fn tensor(x: &ComplexMatrix, y: &ComplexMatrix) -> ComplexMatrix {
    let rows = x.rows() * y.rows();
    let cols = x.cols() * y.cols();
    let mut out = ComplexMatrix::zeros(rows, cols);
    for ia in 0..x.rows() {
        for ja in 0..x.cols() {
            let xv = x.get(ia, ja);
            if xv.norm_sqr() == 0.0 {
                continue;
            }
            for ib in 0..y.rows() {
                for jb in 0..y.cols() {
                    out.set(ia * y.rows() + ib, ja * y.cols() + jb, xv * y.get(ib, jb));
                }
            }
        }
    }
    out
}

/// Kronecker product of a list of factors, left to right.
pub fn tensor_all(factors: &[&ComplexMatrix]) -> ComplexMatrix {
    assert!(!factors.is_empty());
    let mut acc = factors[0].clone();
    for f in &factors[1..] {
        acc = tensor(&acc, f);
    }
    acc
}

/// Trace out one factor of a bipartite operator; returns the reduced
/// operator on the other factor.
pub fn partial_trace(
    m: &ComplexMatrix,
    dims: BipartiteDims,
    which: Sys,
) -> Result<ComplexMatrix, MatError> {
    dims.check(m)?;
    let (da, db) = (dims.dim_a, dims.dim_b);
    match which {
        Sys::A => {
            let mut out = ComplexMatrix::zeros(db, db);
            for ib in 0..db {
                for jb in 0..db {
                    let mut acc = C64::new(0.0, 0.0);
                    for ia in 0..da {
                        acc += m.get(ia * db + ib, ia * db + jb);
                    }
                    out.set(ib, jb, acc);
                }
            }
            Ok(out)
        }
        Sys::B => {
            let mut out = ComplexMatrix::zeros(da, da);
            for ia in 0..da {
                for ja in 0..da {
                    let mut acc = C64::new(0.0, 0.0);
                    for ib in 0..db {
                        acc += m.get(ia * db + ib, ja * db + ib);
                    }
                    out.set(ia, ja, acc);
                }
            }
            Ok(out)
        }
    }
}

/// Partial transpose on the chosen factor.  An involution; preserves trace
/// and the Frobenius inner product.
pub fn partial_transpose(
    m: &ComplexMatrix,
    dims: BipartiteDims,
    which: Sys,
) -> Result<ComplexMatrix, MatError> {
    dims.check(m)?;
    let factors = [dims.dim_a, dims.dim_b];
    let which = match which {
        Sys::A => 0,
        Sys::B => 1,
    };
    partial_transpose_factor(m, &factors, which)
}

/// Partial transpose on factor `which` of a multipartite operator whose
/// side length is the product of `factor_dims`.
pub fn partial_transpose_factor(
    m: &ComplexMatrix,
    factor_dims: &[usize],
    which: usize,
) -> Result<ComplexMatrix, MatError> {
    let n: usize = factor_dims.iter().product();
    if m.rows() != n || m.cols() != n {
        return Err(MatError::DimMismatch(format!(
            "expected {n}x{n} for factors {factor_dims:?}, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    assert!(which < factor_dims.len());
    // left = product of dims before `which`, right = product after
    let d = factor_dims[which];
    let left: usize = factor_dims[..which].iter().product();
    let right: usize = factor_dims[which + 1..].iter().product();
    let mut out = ComplexMatrix::zeros(n, n);
    for l in 0..left {
        for lp in 0..left {
            for k in 0..d {
                for kp in 0..d {
                    for r in 0..right {
                        for rp in 0..right {
                            let src = ((l * d + k) * right + r, (lp * d + kp) * right + rp);
                            let dst = ((l * d + kp) * right + r, (lp * d + k) * right + rp);
                            out.set(dst.0, dst.1, m.get(src.0, src.1));
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Conjugate a multipartite operator by the permutation that reorders its
/// tensor factors: factor `perm[t]` of the input becomes factor `t` of the
/// output.
pub fn permute_factors(
    m: &ComplexMatrix,
    factor_dims: &[usize],
    perm: &[usize],
) -> Result<ComplexMatrix, MatError> {
    let n: usize = factor_dims.iter().product();
    if m.rows() != n || m.cols() != n {
        return Err(MatError::DimMismatch(format!(
            "expected {n}x{n} for factors {factor_dims:?}",
        )));
    }
    assert_eq!(perm.len(), factor_dims.len());
    let k = factor_dims.len();
    let out_dims: Vec<usize> = perm.iter().map(|&p| factor_dims[p]).collect();
    // strides of the input factors
    let mut strides = vec![1usize; k];
    for t in (0..k.saturating_sub(1)).rev() {
        strides[t] = strides[t + 1] * factor_dims[t + 1];
    }
    // map each output composite index to the input composite index
    let mut index_map = vec![0usize; n];
    for (out_idx, slot) in index_map.iter_mut().enumerate() {
        let mut rem = out_idx;
        let mut src = 0usize;
        for t in 0..k {
            let dim = out_dims[t];
            let block: usize = out_dims[t + 1..].iter().product();
            let digit = (rem / block) % dim;
            rem %= block;
            src += digit * strides[perm[t]];
        }
        *slot = src;
    }
    let mut out = ComplexMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            out.set(i, j, m.get(index_map[i], index_map[j]));
        }
    }
    Ok(out)
}

/// Unnormalized maximally entangled operator `Σ_ij |ii⟩⟨jj|` on d⊗d.
pub fn phi_plus(d: usize) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(d * d, d * d);
    for i in 0..d {
        for j in 0..d {
            m.set(i * d + i, j * d + j, C64::new(1.0, 0.0));
        }
    }
    m
}

/// Normalized maximally entangled state `phi_plus(d) / d`.
pub fn phi_plus_normalized(d: usize) -> ComplexMatrix {
    phi_plus(d).scale_re(1.0 / d as f64)
}

/// Swap operator `F |i,j⟩ = |j,i⟩` on d⊗d.
pub fn swap_operator(d: usize) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(d * d, d * d);
    for i in 0..d {
        for j in 0..d {
            m.set(i * d + j, j * d + i, C64::new(1.0, 0.0));
        }
    }
    m
}

/// The Pauli matrices `[σ_x, σ_y, σ_z]`.
pub fn paulis() -> [ComplexMatrix; 3] {
    let x = ComplexMatrix::from_vec(
        2,
        2,
        vec![
            C64::new(0.0, 0.0),
            C64::new(1.0, 0.0),
            C64::new(1.0, 0.0),
            C64::new(0.0, 0.0),
        ],
    );
    let y = ComplexMatrix::from_vec(
        2,
        2,
        vec![
            C64::new(0.0, 0.0),
            C64::new(0.0, -1.0),
            C64::new(0.0, 1.0),
            C64::new(0.0, 0.0),
        ],
    );
    let z = ComplexMatrix::from_vec(
        2,
        2,
        vec![
            C64::new(1.0, 0.0),
            C64::new(0.0, 0.0),
            C64::new(0.0, 0.0),
            C64::new(-1.0, 0.0),
        ],
    );
    [x, y, z]
}

/// Singular values of a real matrix, descending.  Computed from the
/// eigenvalues of `MᵀM`, which is all the correlation-matrix work needs.
pub fn singular_values(m: &[Vec<f64>]) -> Vec<f64> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut mtm = vec![0.0f64; cols * cols];
    for i in 0..cols {
        for j in 0..cols {
            let mut acc = 0.0;
            for k in 0..rows {
                acc += m[k][i] * m[k][j];
            }
            mtm[i * cols + j] = acc;
        }
    }
    let (evals, _) = sym_eig(&mtm, cols);
    let mut sv: Vec<f64> = evals.iter().map(|&l| l.max(0.0).sqrt()).collect();
    sv.sort_by(|a, b| b.partial_cmp(a).unwrap());
    sv
}

/// Trace norm `Σ σ_i` of a real matrix.
pub fn trace_norm_real(m: &[Vec<f64>]) -> f64 {
    singular_values(m).iter().sum()
}

/// Hermitian matrix power via eigendecomposition.  Eigenvalues at or below
/// `1e-14` are treated as zero, which makes negative powers act as
/// pseudo-inverses.
pub fn hermitian_power(m: &ComplexMatrix, p: f64) -> ComplexMatrix {
    let (evals, vecs) =
        hermitian_eig(&m.hermitian_part()).expect("hermitian_power needs a Hermitian matrix");
    let n = m.rows();
    let mut out = ComplexMatrix::zeros(n, n);
    for (k, &l) in evals.iter().enumerate() {
        if l <= 1e-14 {
            continue;
        }
        let lp = l.powf(p);
        for i in 0..n {
            for j in 0..n {
                let v = vecs.get(i, k) * vecs.get(j, k).conj() * lp;
                out.add_to(i, j, v);
            }
        }
    }
    out
}

/// Coefficients `(α, β)` of the isotropic `U⊗U` twirl of `x`, i.e. the
/// unique pair with `T_UU(x) = α·I + β·F`.  Obtained from the moment system
/// `Tr[x] = α d² + β d`, `Tr[xF] = α d + β d²`.
pub fn werner_twirl_coeffs(x: &ComplexMatrix, d: usize) -> Result<(f64, f64), MatError> {
    if d < 2 {
        return Err(MatError::BadDim("twirl needs d >= 2".into()));
    }
    let dims = BipartiteDims::new(d, d);
    dims.check(x)?;
    let f = swap_operator(d);
    let m0 = x.trace().re;
    let m1 = f.inner_re(x); // F is real symmetric, so this is Tr[xF]
    let dd = d as f64;
    let det = dd * dd * (dd * dd - 1.0);
    let alpha = (dd * dd * m0 - dd * m1) / det;
    let beta = (dd * dd * m1 - dd * m0) / det;
    Ok((alpha, beta))
}
