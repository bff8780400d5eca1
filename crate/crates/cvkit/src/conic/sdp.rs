//! First-order splitting solver for the conic programs.
//!
//! The iteration alternates projection onto the affine subspace
//! `{x : Ax = b}` (shifted by the objective) with projection onto the cone
//! product, with over-relaxation and residual-balancing penalty updates:
//!
//! ```text
//! x   ← Π_aff(z − u + c/ρ)
//! x̂   ← α x + (1−α) z
//! z   ← Π_K(x̂ + u)
//! u   ← u + x̂ − z
//! ```
//!
//! The affine projection solves the normal equations `G w = A v − b` with
//! `G = A Aᵀ` through a cached dense Cholesky factor when the constraint
//! count is small, and through Jacobi-preconditioned conjugate gradients
//! (warm-started across iterations) when it is large.  The multiplier `ρ w`
//! doubles as the dual-variable estimate, which is how the report's dual
//! value and the duality-gap residual are produced.
//!
//! Everything is deterministic: identical programs and options give
//! bitwise-identical reports.

use super::program::{
    Block, BlockShape, Cone, ConicProgram, Residuals, SolutionBlock, SolveReport, SolveStatus,
};
use super::svec::{self, SignedPerm};
use super::SolverError;
use crate::matops::{sym_eig, ComplexMatrix, MatError, Sys, HERMITIAN_TOL};

#[derive(Debug, Clone)]
pub struct SdpOptions {
    pub tol: f64,
    pub max_iters: usize,
    pub rho: f64,
    pub over_relax: f64,
    pub warm: Option<WarmStart>,
}

impl Default for SdpOptions {
    fn default() -> Self {
        SdpOptions {
            tol: 1e-7,
            max_iters: 200_000,
            rho: 1.0,
            over_relax: 1.5,
            warm: None,
        }
    }
}

/// Packed iterates of a finished solve, reusable to warm-start a related
/// program with identical block structure.
#[derive(Debug, Clone)]
pub struct WarmStart {
    pub z: Vec<f64>,
    pub u: Vec<f64>,
    pub rho: f64,
}

/// Solve with default options at the given tolerance and iteration budget.
pub fn sdp_solve(
    p: &ConicProgram,
    tol: f64,
    max_iters: usize,
) -> Result<SolveReport, SolverError> {
    let opts = SdpOptions {
        tol,
        max_iters,
        ..SdpOptions::default()
    };
    sdp_solve_with(p, &opts).map(|(report, _)| report)
}

/// Solve and also hand back the packed iterates for warm starting.
pub fn sdp_solve_with(
    p: &ConicProgram,
    opts: &SdpOptions,
) -> Result<(SolveReport, WarmStart), SolverError> {
    let compiled = Compiled::build(p)?;
    Ok(compiled.run(opts))
}

// ---------------------------------------------------------------------
// compiled program
// ---------------------------------------------------------------------

struct SparseMat {
    rows: usize,
    cols: usize,
    row_ptr: Vec<usize>,
    col_idx: Vec<usize>,
    vals: Vec<f64>,
}

impl SparseMat {
    fn matvec(&self, v: &[f64], out: &mut [f64]) {
        for r in 0..self.rows {
            let mut acc = 0.0;
            for k in self.row_ptr[r]..self.row_ptr[r + 1] {
                acc += self.vals[k] * v[self.col_idx[k]];
            }
            out[r] = acc;
        }
    }

    fn matvec_t(&self, w: &[f64], out: &mut [f64]) {
        out.iter_mut().for_each(|x| *x = 0.0);
        for r in 0..self.rows {
            let wr = w[r];
            if wr == 0.0 {
                continue;
            }
            for k in self.row_ptr[r]..self.row_ptr[r + 1] {
                out[self.col_idx[k]] += self.vals[k] * wr;
            }
        }
        let _ = self.cols;
    }
}

enum AffineSolver {
    /// Dense Cholesky factor of `G + ridge·I`, lower triangular, row-major.
    Cholesky { l: Vec<f64>, m: usize },
    /// Jacobi-preconditioned CG on `G`, warm-started between calls.
    Cg { diag_inv: Vec<f64> },
    /// No constraints at all.
    Empty,
}

enum ConeProj {
    Free,
    Nonneg,
    Psd { n: usize },
    PsdPerm { n: usize, perm: SignedPerm },
}

struct Compiled {
    n: usize,
    a: SparseMat,
    b: Vec<f64>,
    c: Vec<f64>,
    cones: Vec<(usize, usize, ConeProj)>, // (offset, len, projection)
    solver: AffineSolver,
    blocks: Vec<Block>,
    offsets: Vec<usize>,
}

const DENSE_CHOLESKY_LIMIT: usize = 1500;

impl Compiled {
    fn build(p: &ConicProgram) -> Result<Self, SolverError> {
        let n = p.packed_len();
        if n == 0 {
            return Err(SolverError::BadProgram("program has no variables".into()));
        }
        let offsets = p.block_offsets();

        let mut c = vec![0.0f64; n];
        scatter_terms(&p.objective, &offsets, p, &mut c)?;

        // sparse A
        let m = p.constraints.len();
        let mut row_ptr = Vec::with_capacity(m + 1);
        let mut col_idx = Vec::new();
        let mut vals = Vec::new();
        let mut b = Vec::with_capacity(m);
        let mut scratch: Vec<(usize, f64)> = Vec::new();
        row_ptr.push(0);
        for con in &p.constraints {
            scratch.clear();
            for term in &con.terms {
                let off = *offsets.get(term.block).ok_or_else(|| {
                    SolverError::BadProgram(format!("constraint references block {}", term.block))
                })?;
                let blen = p.blocks[term.block].shape.packed_len();
                for &(idx, coeff) in &term.entries {
                    if idx >= blen {
                        return Err(SolverError::BadProgram(format!(
                            "coordinate {idx} out of range for block {}",
                            term.block
                        )));
                    }
                    scratch.push((off + idx, coeff));
                }
            }
            scratch.sort_by_key(|e| e.0);
            let mut merged: Vec<(usize, f64)> = Vec::with_capacity(scratch.len());
            for &(idx, v) in scratch.iter() {
                match merged.last_mut() {
                    Some(last) if last.0 == idx => last.1 += v,
                    _ => merged.push((idx, v)),
                }
            }
            for (idx, v) in merged {
                if v != 0.0 {
                    col_idx.push(idx);
                    vals.push(v);
                }
            }
            row_ptr.push(col_idx.len());
            b.push(con.rhs);
        }
        let a = SparseMat {
            rows: m,
            cols: n,
            row_ptr,
            col_idx,
            vals,
        };

        // cone projections
        let mut cones = Vec::with_capacity(p.blocks.len());
        for (bi, blk) in p.blocks.iter().enumerate() {
            let off = offsets[bi];
            let len = blk.shape.packed_len();
            let proj = match (&blk.cone, blk.shape) {
                (Cone::Free, _) => ConeProj::Free,
                (Cone::Nonneg, _) => ConeProj::Nonneg,
                (Cone::Psd, BlockShape::Herm(n)) => ConeProj::Psd { n },
                (Cone::Psd, BlockShape::Vec(_)) => {
                    return Err(SolverError::BadProgram(
                        "PSD cone requires a Hermitian block".into(),
                    ))
                }
                (Cone::PsdPartialTranspose { dims, sys }, BlockShape::Herm(n)) => {
                    if dims.total() != n {
                        return Err(SolverError::BadProgram(format!(
                            "partial-transpose dims {}x{} do not match block size {n}",
                            dims.dim_a, dims.dim_b
                        )));
                    }
                    let which = match sys {
                        Sys::A => 0,
                        Sys::B => 1,
                    };
                    let perm = svec::perm_partial_transpose(&[dims.dim_a, dims.dim_b], which);
                    ConeProj::PsdPerm { n, perm }
                }
                (Cone::PsdPartialTranspose { .. }, BlockShape::Vec(_)) => {
                    return Err(SolverError::BadProgram(
                        "partial-transpose cone requires a Hermitian block".into(),
                    ))
                }
            };
            cones.push((off, len, proj));
        }

        // normal-equation solver
        let solver = if m == 0 {
            AffineSolver::Empty
        } else if m <= DENSE_CHOLESKY_LIMIT {
            let mut g = vec![0.0f64; m * m];
            // G = A Aᵀ assembled row against row through a column index
            let mut col_map: Vec<Vec<(usize, f64)>> = vec![Vec::new(); n];
            for r in 0..m {
                for k in a.row_ptr[r]..a.row_ptr[r + 1] {
                    col_map[a.col_idx[k]].push((r, a.vals[k]));
                }
            }
            for rows in &col_map {
                for &(r1, v1) in rows {
                    for &(r2, v2) in rows {
                        g[r1 * m + r2] += v1 * v2;
                    }
                }
            }
            let ridge = 1e-12 * (1.0 + (0..m).map(|i| g[i * m + i]).fold(0.0, f64::max));
            for i in 0..m {
                g[i * m + i] += ridge;
            }
            cholesky_factor(&mut g, m)
                .map_err(|_| SolverError::BadProgram("constraint Gram matrix not PSD".into()))?;
            AffineSolver::Cholesky { l: g, m }
        } else {
            let mut diag = vec![0.0f64; m];
            for r in 0..m {
                let mut acc = 0.0;
                for k in a.row_ptr[r]..a.row_ptr[r + 1] {
                    acc += a.vals[k] * a.vals[k];
                }
                diag[r] = acc;
            }
            let diag_inv = diag
                .iter()
                .map(|&d| if d > 0.0 { 1.0 / d } else { 1.0 })
                .collect();
            AffineSolver::Cg { diag_inv }
        };

        Ok(Compiled {
            n,
            a,
            b,
            c,
            cones,
            solver,
            blocks: p.blocks.clone(),
            offsets,
        })
    }

    /// `w ← G⁻¹ rhs`; `w` also serves as the CG warm start.
    fn solve_normal(&self, rhs: &[f64], w: &mut [f64], cg_buf: &mut CgBuffers) {
        match &self.solver {
            AffineSolver::Empty => {}
            AffineSolver::Cholesky { l, m } => {
                cholesky_solve(l, *m, rhs, w);
            }
            AffineSolver::Cg { diag_inv } => {
                cg_solve(&self.a, diag_inv, rhs, w, cg_buf);
            }
        }
    }

    fn project_cones(&self, v: &mut [f64]) {
        for (off, len, proj) in &self.cones {
            let seg = &mut v[*off..*off + *len];
            match proj {
                ConeProj::Free => {}
                ConeProj::Nonneg => {
                    for x in seg.iter_mut() {
                        if *x < 0.0 {
                            *x = 0.0;
                        }
                    }
                }
                ConeProj::Psd { n } => project_psd_packed(seg, *n),
                ConeProj::PsdPerm { n, perm } => {
                    let mut tmp = vec![0.0f64; seg.len()];
                    perm.apply(seg, &mut tmp);
                    project_psd_packed(&mut tmp, *n);
                    perm.apply(&tmp, seg);
                }
            }
        }
    }

    #[allow(clippy::too_many_lines)]
    fn run(&self, opts: &SdpOptions) -> (SolveReport, WarmStart) {
        let n = self.n;
        let m = self.a.rows;
        let alpha = opts.over_relax;
        let mut rho = opts.rho;

        let (mut z, mut u) = match &opts.warm {
            Some(w) if w.z.len() == n && w.u.len() == n => {
                rho = w.rho;
                (w.z.clone(), w.u.clone())
            }
            _ => (vec![0.0f64; n], vec![0.0f64; n]),
        };
        let mut x = vec![0.0f64; n];
        let mut v = vec![0.0f64; n];
        let mut av = vec![0.0f64; m];
        let mut w = vec![0.0f64; m];
        let mut atw = vec![0.0f64; n];
        let mut z_prev = vec![0.0f64; n];
        let mut cg_buf = CgBuffers::new(m);

        let b_norm = norm2(&self.b);
        let mut iterations = 0usize;
        let mut status = SolveStatus::MaxIters;
        let mut resid = Residuals {
            primal: f64::NAN,
            dual: f64::NAN,
            gap: f64::NAN,
        };
        let mut pval = 0.0;
        let mut dval = 0.0;

        for it in 0..opts.max_iters {
            iterations = it + 1;

            // x ← Π_aff(z − u + c/ρ)
            for i in 0..n {
                v[i] = z[i] - u[i] + self.c[i] / rho;
            }
            if m > 0 {
                self.a.matvec(&v, &mut av);
                for r in 0..m {
                    av[r] -= self.b[r];
                }
                self.solve_normal(&av, &mut w, &mut cg_buf);
                self.a.matvec_t(&w, &mut atw);
                for i in 0..n {
                    x[i] = v[i] - atw[i];
                }
            } else {
                x.copy_from_slice(&v);
            }

            // relaxation, cone projection, multiplier update
            z_prev.copy_from_slice(&z);
            for i in 0..n {
                let xh = alpha * x[i] + (1.0 - alpha) * z_prev[i];
                z[i] = xh + u[i];
                u[i] = z[i]; // stash x̂ + u before the projection
            }
            self.project_cones(&mut z);
            for i in 0..n {
                // u ← u_prev + x̂ − z
                u[i] -= z[i];
            }

            // residuals
            let mut r_norm = 0.0f64;
            let mut s_norm = 0.0f64;
            let mut x_norm = 0.0f64;
            let mut z_norm = 0.0f64;
            for i in 0..n {
                r_norm += (x[i] - z[i]) * (x[i] - z[i]);
                s_norm += (z[i] - z_prev[i]) * (z[i] - z_prev[i]);
                x_norm += x[i] * x[i];
                z_norm += z[i] * z[i];
            }
            let r_norm = r_norm.sqrt();
            let s_norm = rho * s_norm.sqrt();
            let x_norm = x_norm.sqrt();
            let z_norm = z_norm.sqrt();

            pval = dot(&self.c, &z);
            dval = rho * dot(&self.b, &w);
            let gap = (pval - dval).abs() / (1.0 + pval.abs() + dval.abs());

            // feasibility of the cone iterate
            let mut feas = 0.0f64;
            if m > 0 {
                self.a.matvec(&z, &mut av);
                for r in 0..m {
                    feas += (av[r] - self.b[r]) * (av[r] - self.b[r]);
                }
            }
            let feas = feas.sqrt() / (1.0 + b_norm);

            let eps_pri = opts.tol * (1.0 + x_norm.max(z_norm));
            let eps_dual = opts.tol * (1.0 + rho * norm2(&u));
            resid = Residuals {
                primal: r_norm.max(feas * (1.0 + b_norm)),
                dual: s_norm,
                gap,
            };
            if r_norm <= eps_pri && s_norm <= eps_dual && gap <= opts.tol && feas <= opts.tol {
                status = SolveStatus::Optimal;
                break;
            }
            if z_norm > 1e9 * (1.0 + b_norm) || pval.abs() > 1e12 {
                status = SolveStatus::Unbounded;
                break;
            }

            // residual balancing keeps ρ in a useful range
            if (it + 1) % 100 == 0 {
                if r_norm > 10.0 * s_norm && rho < 1e6 {
                    rho *= 2.0;
                    for ui in u.iter_mut() {
                        *ui *= 0.5;
                    }
                } else if s_norm > 10.0 * r_norm && rho > 1e-6 {
                    rho *= 0.5;
                    for ui in u.iter_mut() {
                        *ui *= 2.0;
                    }
                }
            }
        }

        if status == SolveStatus::MaxIters && resid.primal.is_finite() {
            // heuristic: persistent infeasibility shows up as a primal
            // residual that will not come down while the dual settles
            if resid.primal > 1e3 * opts.tol.max(1e-12) && resid.dual < opts.tol {
                status = SolveStatus::Infeasible;
            }
        }

        let primal_solution = self.unpack(&z);
        // dual slack Aᵀ(ρw) − c per block
        self.a.matvec_t(&w, &mut atw);
        let mut slack = vec![0.0f64; n];
        for i in 0..n {
            slack[i] = rho * atw[i] - self.c[i];
        }
        let mut dual_solution = vec![SolutionBlock::Vector(w.iter().map(|x| rho * x).collect())];
        dual_solution.extend(self.unpack(&slack));

        let report = SolveReport {
            status,
            primal_value: pval,
            dual_value: dval,
            primal_solution,
            dual_solution,
            iterations,
            residuals: resid,
        };
        let warm = WarmStart { z, u, rho };
        (report, warm)
    }

    fn unpack(&self, packed: &[f64]) -> Vec<SolutionBlock> {
        self.blocks
            .iter()
            .zip(&self.offsets)
            .map(|(blk, &off)| match blk.shape {
                BlockShape::Herm(n) => {
                    SolutionBlock::Matrix(svec::unsvec(&packed[off..off + svec::svec_len(n)], n))
                }
                BlockShape::Vec(len) => {
                    SolutionBlock::Vector(packed[off..off + len].to_vec())
                }
            })
            .collect()
    }
}

fn scatter_terms(
    terms: &[super::program::LinTerm],
    offsets: &[usize],
    p: &ConicProgram,
    out: &mut [f64],
) -> Result<(), SolverError> {
    for term in terms {
        let off = *offsets.get(term.block).ok_or_else(|| {
            SolverError::BadProgram(format!("objective references block {}", term.block))
        })?;
        let blen = p.blocks[term.block].shape.packed_len();
        for &(idx, coeff) in &term.entries {
            if idx >= blen {
                return Err(SolverError::BadProgram(format!(
                    "objective coordinate {idx} out of range for block {}",
                    term.block
                )));
            }
            out[off + idx] += coeff;
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------
// PSD projection on packed coordinates
// ---------------------------------------------------------------------

/// Project a packed Hermitian block onto the PSD cone in place.  Blocks
/// whose imaginary coordinates are exactly zero (common: all the real
/// symmetric programs) take an n×n real path instead of the 2n×2n
/// Hermitian embedding.
pub(crate) fn project_psd_packed(seg: &mut [f64], n: usize) {
    if n == 0 {
        return;
    }
    let all_real = (0..n)
        .all(|i| ((i + 1)..n).all(|j| seg[svec::im_index(n, i, j)] == 0.0));
    if all_real {
        let mut a = vec![0.0f64; n * n];
        for i in 0..n {
            a[i * n + i] = seg[svec::diag_index(n, i)];
            for j in (i + 1)..n {
                let v = seg[svec::re_index(n, i, j)] / svec::SQRT2;
                a[i * n + j] = v;
                a[j * n + i] = v;
            }
        }
        let clipped = clip_spectrum(&a, n);
        for i in 0..n {
            seg[svec::diag_index(n, i)] = clipped[i * n + i];
            for j in (i + 1)..n {
                seg[svec::re_index(n, i, j)] =
                    svec::SQRT2 * 0.5 * (clipped[i * n + j] + clipped[j * n + i]);
            }
        }
    } else {
        let m = svec::unsvec(seg, n);
        let embedded = crate::matops::embed_hermitian(&m);
        let nn = 2 * n;
        let clipped = clip_spectrum(&embedded, nn);
        // read the Hermitian result back out of the embedding
        for i in 0..n {
            seg[svec::diag_index(n, i)] = 0.5 * (clipped[i * nn + i] + clipped[(i + n) * nn + i + n]);
            for j in (i + 1)..n {
                let re = 0.25
                    * (clipped[i * nn + j]
                        + clipped[j * nn + i]
                        + clipped[(i + n) * nn + j + n]
                        + clipped[(j + n) * nn + i + n]);
                let im = 0.25
                    * (clipped[(i + n) * nn + j] - clipped[(j + n) * nn + i]
                        + clipped[j * nn + i + n]
                        - clipped[i * nn + j + n]);
                seg[svec::re_index(n, i, j)] = svec::SQRT2 * re;
                seg[svec::im_index(n, i, j)] = svec::SQRT2 * im;
            }
        }
    }
}

/// Eigenvalue clipping of a real symmetric matrix, reconstructing from
/// whichever side of the spectrum has fewer terms.
fn clip_spectrum(a: &[f64], n: usize) -> Vec<f64> {
    let (evals, vecs) = sym_eig(a, n);
    let n_pos = evals.iter().filter(|&&l| l > 0.0).count();
    let n_neg = n - n_pos;
    let mut out;
    if n_neg <= n_pos {
        // start from A, subtract the negative part
        out = a.to_vec();
        for (k, &l) in evals.iter().enumerate() {
            if l < 0.0 {
                rank_one_update(&mut out, &vecs, n, k, -l);
            }
        }
    } else {
        out = vec![0.0f64; n * n];
        for (k, &l) in evals.iter().enumerate() {
            if l > 0.0 {
                rank_one_update(&mut out, &vecs, n, k, l);
            }
        }
    }
    out
}

#[inline]
fn rank_one_update(out: &mut [f64], vecs: &[f64], n: usize, col: usize, weight: f64) {
    for i in 0..n {
        let vi = vecs[i * n + col] * weight;
        if vi == 0.0 {
            continue;
        }
        let row = i * n;
        for j in 0..n {
            out[row + j] += vi * vecs[j * n + col];
        }
    }
}

/// Nearest PSD matrix in Frobenius norm: eigenvalues clipped at zero.
/// Idempotent; PSD inputs come back unchanged up to rounding.
pub fn project_psd(m: &ComplexMatrix) -> Result<ComplexMatrix, MatError> {
    if !m.is_square() {
        return Err(MatError::DimMismatch("project_psd needs a square matrix".into()));
    }
    let defect = m.hermitian_defect();
    if defect > HERMITIAN_TOL * (1.0 + m.max_abs()) {
        return Err(MatError::NotHermitian(defect));
    }
    let n = m.rows();
    let mut packed = svec::svec(&m.hermitian_part());
    project_psd_packed(&mut packed, n);
    Ok(svec::unsvec(&packed, n))
}

// ---------------------------------------------------------------------
// linear algebra helpers
// ---------------------------------------------------------------------

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm2(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// In-place dense Cholesky `G = L Lᵀ`, lower triangle stored.
fn cholesky_factor(g: &mut [f64], m: usize) -> Result<(), ()> {
    for i in 0..m {
        for j in 0..=i {
            let mut acc = g[i * m + j];
            for k in 0..j {
                acc -= g[i * m + k] * g[j * m + k];
            }
            if i == j {
                if acc <= 0.0 {
                    return Err(());
                }
                g[i * m + i] = acc.sqrt();
            } else {
                g[i * m + j] = acc / g[j * m + j];
            }
        }
    }
    Ok(())
}

fn cholesky_solve(l: &[f64], m: usize, rhs: &[f64], out: &mut [f64]) {
    // L y = rhs
    for i in 0..m {
        let mut acc = rhs[i];
        for k in 0..i {
            acc -= l[i * m + k] * out[k];
        }
        out[i] = acc / l[i * m + i];
    }
    // Lᵀ x = y
    for i in (0..m).rev() {
        let mut acc = out[i];
        for k in (i + 1)..m {
            acc -= l[k * m + i] * out[k];
        }
        out[i] = acc / l[i * m + i];
    }
}

struct CgBuffers {
    r: Vec<f64>,
    p: Vec<f64>,
    gp: Vec<f64>,
    zv: Vec<f64>,
    tmp_n: Vec<f64>,
}

impl CgBuffers {
    fn new(m: usize) -> Self {
        CgBuffers {
            r: vec![0.0; m],
            p: vec![0.0; m],
            gp: vec![0.0; m],
            zv: vec![0.0; m],
            tmp_n: Vec::new(),
        }
    }
}

/// Jacobi-preconditioned conjugate gradients on `G w = rhs` with
/// `G = A Aᵀ` applied matrix-free; `w` carries the warm start in.
fn cg_solve(a: &SparseMat, diag_inv: &[f64], rhs: &[f64], w: &mut [f64], buf: &mut CgBuffers) {
    let m = a.rows;
    if buf.tmp_n.len() != a.cols {
        buf.tmp_n = vec![0.0; a.cols];
    }
    let apply_g = |v: &[f64], out: &mut [f64], tmp: &mut [f64]| {
        a.matvec_t(v, tmp);
        a.matvec(tmp, out);
    };

    let mut tmp = std::mem::take(&mut buf.tmp_n);
    apply_g(w, &mut buf.gp, &mut tmp);
    for i in 0..m {
        buf.r[i] = rhs[i] - buf.gp[i];
    }
    let rhs_norm = norm2(rhs).max(1e-300);
    let tol = 1e-12 * rhs_norm;

    for i in 0..m {
        buf.zv[i] = diag_inv[i] * buf.r[i];
    }
    buf.p.copy_from_slice(&buf.zv);
    let mut rz = dot(&buf.r, &buf.zv);

    let max_cg = 4 * m + 50;
    for _ in 0..max_cg {
        if norm2(&buf.r) <= tol {
            break;
        }
        apply_g(&buf.p, &mut buf.gp, &mut tmp);
        let pgp = dot(&buf.p, &buf.gp);
        if pgp <= 0.0 {
            break;
        }
        let alpha = rz / pgp;
        for i in 0..m {
            w[i] += alpha * buf.p[i];
            buf.r[i] -= alpha * buf.gp[i];
        }
        for i in 0..m {
            buf.zv[i] = diag_inv[i] * buf.r[i];
        }
        let rz_new = dot(&buf.r, &buf.zv);
        let beta = rz_new / rz;
        rz = rz_new;
        for i in 0..m {
            buf.p[i] = buf.zv[i] + beta * buf.p[i];
        }
    }
    buf.tmp_n = tmp;
}
