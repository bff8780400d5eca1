//! Symmetric / Hermitian eigendecomposition.
//!
//! One real-symmetric routine (Householder tridiagonalization followed by
//! implicit-shift QL) serves every eigenproblem in the crate.  Complex
//! Hermitian matrices go through the real embedding
//! `M = A + iB  ↦  [[A, −B], [B, A]]`, whose spectrum is that of `M` with
//! every eigenvalue doubled; complex eigenvectors are recovered by pairing.

use super::{ComplexMatrix, MatError, C64, HERMITIAN_TOL};

/// Eigendecomposition of a real symmetric matrix given as a row-major slice.
/// Returns eigenvalues in descending order and the matching eigenvectors as
/// columns of a row-major `n×n` array.
pub fn sym_eig(a: &[f64], n: usize) -> (Vec<f64>, Vec<f64>) {
    assert_eq!(a.len(), n * n);
    let mut v = a.to_vec();
    let mut d = vec![0.0f64; n];
    let mut e = vec![0.0f64; n];
    tred2(&mut v, &mut d, &mut e, n);
    tql2(&mut v, &mut d, &mut e, n);
    // tql2 leaves eigenvalues ascending; flip to descending.
    let mut order: Vec<usize> = (0..n).collect();
    order.reverse();
    let evals: Vec<f64> = order.iter().map(|&j| d[j]).collect();
    let mut vecs = vec![0.0f64; n * n];
    for (newc, &oldc) in order.iter().enumerate() {
        for r in 0..n {
            vecs[r * n + newc] = v[r * n + oldc];
        }
    }
    (evals, vecs)
}

/// Eigendecomposition of a Hermitian matrix.  Eigenvalues descend; the
/// second return value holds the orthonormal eigenvectors as columns.
/// Fails if the input deviates from Hermiticity by more than `1e-10`.
pub fn hermitian_eig(m: &ComplexMatrix) -> Result<(Vec<f64>, ComplexMatrix), MatError> {
    if !m.is_square() {
        return Err(MatError::DimMismatch(format!(
            "eigendecomposition needs a square matrix, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    let defect = m.hermitian_defect();
    if defect > HERMITIAN_TOL * (1.0 + m.max_abs()) {
        return Err(MatError::NotHermitian(defect));
    }
    let n = m.rows();
    if n == 0 {
        return Ok((vec![], ComplexMatrix::zeros(0, 0)));
    }

    let embedded = embed_hermitian(m);
    let (evals2, vecs2) = sym_eig(&embedded, 2 * n);

    // Every eigenvalue of M appears twice in the embedding.  Walk the real
    // eigenpairs in descending order, convert each to a complex candidate
    // v = x + iy, and keep the ones that are not (numerically) in the span
    // of the vectors already kept.
    let mut evals = Vec::with_capacity(n);
    let mut kept: Vec<Vec<C64>> = Vec::with_capacity(n);
    for idx in 0..2 * n {
        if kept.len() == n {
            break;
        }
        let mut cand: Vec<C64> = (0..n)
            .map(|r| C64::new(vecs2[r * 2 * n + idx], vecs2[(r + n) * 2 * n + idx]))
            .collect();
        // Gram-Schmidt against everything kept so far.  Exact arithmetic
        // leaves either a unit vector or zero; 0.3 splits the two cleanly.
        for prev in &kept {
            let overlap: C64 = prev
                .iter()
                .zip(&cand)
                .map(|(p, c)| p.conj() * c)
                .sum();
            for (c, p) in cand.iter_mut().zip(prev) {
                *c -= overlap * p;
            }
        }
        let norm: f64 = cand.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        if norm > 0.3 {
            for c in cand.iter_mut() {
                *c /= C64::new(norm, 0.0);
            }
            evals.push(evals2[idx]);
            kept.push(cand);
        }
    }
    debug_assert_eq!(kept.len(), n, "embedding must yield n complex eigenpairs");

    let mut vecs = ComplexMatrix::zeros(n, n);
    for (col, vct) in kept.iter().enumerate() {
        for (row, &val) in vct.iter().enumerate() {
            vecs.set(row, col, val);
        }
    }
    Ok((evals, vecs))
}

/// Real embedding `[[Re M, −Im M], [Im M, Re M]]` as a row-major slice.
pub(crate) fn embed_hermitian(m: &ComplexMatrix) -> Vec<f64> {
    let n = m.rows();
    let nn = 2 * n;
    let mut out = vec![0.0f64; nn * nn];
    for i in 0..n {
        for j in 0..n {
            let z = m.get(i, j);
            out[i * nn + j] = z.re;
            out[i * nn + (j + n)] = -z.im;
            out[(i + n) * nn + j] = z.im;
            out[(i + n) * nn + (j + n)] = z.re;
        }
    }
    out
}

// Householder reduction of a real symmetric matrix to tridiagonal form,
// accumulating the orthogonal transformation in `v`; the classic tred2
// scheme (Numerical Recipes / EISPACK lineage).
fn tred2(v: &mut [f64], d: &mut [f64], e: &mut [f64], n: usize) {
    for (j, dj) in d.iter_mut().enumerate() {
        *dj = v[(n - 1) * n + j];
    }

    for i in (1..n).rev() {
        let mut scale = 0.0f64;
        let mut h = 0.0f64;
        for item in d.iter().take(i) {
            scale += item.abs();
        }
        if scale == 0.0 {
            e[i] = d[i - 1];
            for j in 0..i {
                d[j] = v[(i - 1) * n + j];
                v[i * n + j] = 0.0;
                v[j * n + i] = 0.0;
            }
        } else {
            for k in 0..i {
                d[k] /= scale;
                h += d[k] * d[k];
            }
            let f = d[i - 1];
            let mut g = h.sqrt();
            if f > 0.0 {
                g = -g;
            }
            e[i] = scale * g;
            h -= f * g;
            d[i - 1] = f - g;
            for item in e.iter_mut().take(i) {
                *item = 0.0;
            }

            for j in 0..i {
                let f = d[j];
                v[j * n + i] = f;
                let mut g = e[j] + v[j * n + j] * f;
                for k in (j + 1)..i {
                    g += v[k * n + j] * d[k];
                    e[k] += v[k * n + j] * f;
                }
                e[j] = g;
            }
            let mut f = 0.0f64;
            for j in 0..i {
                e[j] /= h;
                f += e[j] * d[j];
            }
            let hh = f / (h + h);
            for j in 0..i {
                e[j] -= hh * d[j];
            }
            for j in 0..i {
                let f = d[j];
                let g = e[j];
                for k in j..i {
                    v[k * n + j] -= f * e[k] + g * d[k];
                }
                d[j] = v[(i - 1) * n + j];
                v[i * n + j] = 0.0;
            }
        }
        d[i] = h;
    }

    // Accumulate transformations.
    for i in 0..n.saturating_sub(1) {
        v[(n - 1) * n + i] = v[i * n + i];
        v[i * n + i] = 1.0;
        let h = d[i + 1];
        if h != 0.0 {
            for (k, dk) in d.iter_mut().enumerate().take(i + 1) {
                *dk = v[k * n + i + 1] / h;
            }
            for j in 0..=i {
                let mut g = 0.0f64;
                for k in 0..=i {
                    g += v[k * n + i + 1] * v[k * n + j];
                }
                for (k, dk) in d.iter().enumerate().take(i + 1) {
                    v[k * n + j] -= g * dk;
                }
            }
        }
        for k in 0..=i {
            v[k * n + i + 1] = 0.0;
        }
    }
    for j in 0..n {
        d[j] = v[(n - 1) * n + j];
        v[(n - 1) * n + j] = 0.0;
    }
    v[(n - 1) * n + (n - 1)] = 1.0;
    e[0] = 0.0;
}

// Implicit-shift QL iteration on the tridiagonal form; eigenvalues come out
// ascending with eigenvectors accumulated into the columns of `v`.
fn tql2(v: &mut [f64], d: &mut [f64], e: &mut [f64], n: usize) {
    for i in 1..n {
        e[i - 1] = e[i];
    }
    if n > 0 {
        e[n - 1] = 0.0;
    }

    let mut f = 0.0f64;
    let mut tst1 = 0.0f64;
    let eps = 2.0f64.powi(-52);
    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut m = l;
        while m < n {
            if e[m].abs() <= eps * tst1 {
                break;
            }
            m += 1;
        }

        if m > l {
            loop {
                let g = d[l];
                let mut p = (d[l + 1] - g) / (2.0 * e[l]);
                let mut r = p.hypot(1.0);
                if p < 0.0 {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let mut h = g - d[l];
                for item in d.iter_mut().take(n).skip(l + 2) {
                    *item -= h;
                }
                f += h;

                p = d[m];
                let mut c = 1.0f64;
                let mut c2 = c;
                let mut c3 = c;
                let el1 = e[l + 1];
                let mut s = 0.0f64;
                let mut s2 = 0.0f64;
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    let g = c * e[i];
                    h = c * p;
                    r = p.hypot(e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);

                    for k in 0..n {
                        let h = v[k * n + i + 1];
                        v[k * n + i + 1] = s * v[k * n + i] + c * h;
                        v[k * n + i] = c * v[k * n + i] - s * h;
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;

                if e[l].abs() <= eps * tst1 {
                    break;
                }
            }
        }
        d[l] += f;
        e[l] = 0.0;
    }

    // Selection-sort eigenvalues ascending, carrying columns along.
    for i in 0..n.saturating_sub(1) {
        let mut k = i;
        let mut p = d[i];
        for j in (i + 1)..n {
            if d[j] < p {
                k = j;
                p = d[j];
            }
        }
        if k != i {
            d[k] = d[i];
            d[i] = p;
            for row in 0..n {
                v.swap(row * n + i, row * n + k);
            }
        }
    }
}
