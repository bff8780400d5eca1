//! Symmetric vectorization of Hermitian matrices and the signed coordinate
//! permutations induced by partial transposes and basis relabelings.
//!
//! A Hermitian `n×n` matrix packs into `n²` real coordinates: the diagonal,
//! then `√2·Re` and `√2·Im` of each strict upper-triangle entry, row by
//! row.  The map is an isometry: `⟨svec a, svec b⟩ = Re Tr[a† b]`.

use crate::matops::{ComplexMatrix, C64};

pub fn svec_len(n: usize) -> usize {
    n * n
}

/// Offset of row `i`'s coordinates: `i` diagonal slots plus two per strict
/// upper entry of the previous rows.
#[inline]
fn row_offset(n: usize, i: usize) -> usize {
    i * (2 * n - i)
}

#[inline]
pub fn diag_index(n: usize, i: usize) -> usize {
    row_offset(n, i)
}

#[inline]
pub fn re_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j);
    row_offset(n, i) + 1 + 2 * (j - i - 1)
}

#[inline]
pub fn im_index(n: usize, i: usize, j: usize) -> usize {
    re_index(n, i, j) + 1
}

pub const SQRT2: f64 = std::f64::consts::SQRT_2;

/// Pack a Hermitian matrix (only the upper triangle is read).
pub fn svec(m: &ComplexMatrix) -> Vec<f64> {
    let n = m.rows();
    let mut out = vec![0.0f64; svec_len(n)];
    for i in 0..n {
        out[diag_index(n, i)] = m.get(i, i).re;
        for j in (i + 1)..n {
            let z = m.get(i, j);
            out[re_index(n, i, j)] = SQRT2 * z.re;
            out[im_index(n, i, j)] = SQRT2 * z.im;
        }
    }
    out
}

/// Unpack coordinates into a Hermitian matrix.
pub fn unsvec(v: &[f64], n: usize) -> ComplexMatrix {
    debug_assert_eq!(v.len(), svec_len(n));
    let mut m = ComplexMatrix::zeros(n, n);
    for i in 0..n {
        m.set(i, i, C64::new(v[diag_index(n, i)], 0.0));
        for j in (i + 1)..n {
            let re = v[re_index(n, i, j)] / SQRT2;
            let im = v[im_index(n, i, j)] / SQRT2;
            m.set(i, j, C64::new(re, im));
            m.set(j, i, C64::new(re, -im));
        }
    }
    m
}

/// A signed permutation of svec coordinates: `out[k] = (src, sign)` means
/// the image vector satisfies `image[k] = sign · input[src]`.  Partial
/// transposes and basis relabelings are exactly of this form, and both are
/// involutions here, so applying the same map twice restores the input.
#[derive(Debug, Clone)]
pub struct SignedPerm {
    map: Vec<(usize, f64)>,
}

impl SignedPerm {
    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn entry(&self, k: usize) -> (usize, f64) {
        self.map[k]
    }

    pub fn apply(&self, v: &[f64], out: &mut [f64]) {
        debug_assert_eq!(v.len(), self.map.len());
        for (k, &(src, sign)) in self.map.iter().enumerate() {
            out[k] = sign * v[src];
        }
    }
}

// Where an entry basis element lands after an entry map (i, j) → (i', j'),
// expressed in canonical (upper-triangle) coordinates.
#[inline]
fn canonical(n: usize, i: usize, j: usize, which: Part) -> (usize, f64, Part) {
    match which {
        Part::Diag => (diag_index(n, i), 1.0, Part::Diag),
        Part::Re => {
            if i < j {
                (re_index(n, i, j), 1.0, Part::Re)
            } else {
                (re_index(n, j, i), 1.0, Part::Re)
            }
        }
        Part::Im => {
            if i < j {
                (im_index(n, i, j), 1.0, Part::Im)
            } else {
                (im_index(n, j, i), -1.0, Part::Im)
            }
        }
    }
}

#[derive(Clone, Copy)]
enum Part {
    Diag,
    Re,
    Im,
}

fn composite_split(idx: usize, dims: &[usize]) -> Vec<usize> {
    let mut rem = idx;
    let mut digits = vec![0usize; dims.len()];
    for t in (0..dims.len()).rev() {
        digits[t] = rem % dims[t];
        rem /= dims[t];
    }
    digits
}

fn composite_join(digits: &[usize], dims: &[usize]) -> usize {
    let mut idx = 0usize;
    for (d, &dim) in digits.iter().zip(dims) {
        idx = idx * dim + d;
    }
    idx
}

/// Signed permutation realizing the partial transpose on factor `which` of
/// a Hermitian operator over `factor_dims`.
pub fn perm_partial_transpose(factor_dims: &[usize], which: usize) -> SignedPerm {
    let n: usize = factor_dims.iter().product();
    let mut map = vec![(0usize, 0.0f64); svec_len(n)];
    // The transpose maps entry (i, j) to (i', j') where the `which` digits
    // of i and j are exchanged.
    let image = |i: usize, j: usize| -> (usize, usize) {
        let mut di = composite_split(i, factor_dims);
        let mut dj = composite_split(j, factor_dims);
        std::mem::swap(&mut di[which], &mut dj[which]);
        (composite_join(&di, factor_dims), composite_join(&dj, factor_dims))
    };
    for i in 0..n {
        let (ip, jp) = image(i, i);
        debug_assert_eq!(ip, jp);
        let (dst, sign, _) = canonical(n, ip, jp, Part::Diag);
        map[dst] = (diag_index(n, i), sign);
        for j in (i + 1)..n {
            let (ip, jp) = image(i, j);
            debug_assert_ne!(ip, jp);
            let (dst_re, sign_re, _) = canonical(n, ip, jp, Part::Re);
            map[dst_re] = (re_index(n, i, j), sign_re);
            let (dst_im, sign_im, _) = canonical(n, ip, jp, Part::Im);
            map[dst_im] = (im_index(n, i, j), sign_im);
        }
    }
    SignedPerm { map }
}

/// Signed permutation realizing conjugation `M ↦ P M Pᵀ` by the basis
/// relabeling `P|i⟩ = |relabel(i)⟩`.
pub fn perm_relabel(n: usize, relabel: &[usize]) -> SignedPerm {
    debug_assert_eq!(relabel.len(), n);
    let mut map = vec![(0usize, 0.0f64); svec_len(n)];
    for i in 0..n {
        let (dst, sign, _) = canonical(n, relabel[i], relabel[i], Part::Diag);
        map[dst] = (diag_index(n, i), sign);
        for j in (i + 1)..n {
            let (ip, jp) = (relabel[i], relabel[j]);
            let (dst_re, sign_re, _) = canonical(n, ip, jp, Part::Re);
            map[dst_re] = (re_index(n, i, j), sign_re);
            let (dst_im, sign_im, _) = canonical(n, ip, jp, Part::Im);
            map[dst_im] = (im_index(n, i, j), sign_im);
        }
    }
    SignedPerm { map }
}

/// Basis relabeling that swaps tensor factors `t` and `t+1` (which must
/// have equal dimension) of a composite index.
pub fn swap_factors_relabel(factor_dims: &[usize], t: usize) -> Vec<usize> {
    assert_eq!(factor_dims[t], factor_dims[t + 1], "swapped factors must match");
    let n: usize = factor_dims.iter().product();
    (0..n)
        .map(|idx| {
            let mut digits = composite_split(idx, factor_dims);
            digits.swap(t, t + 1);
            composite_join(&digits, factor_dims)
        })
        .collect()
}
