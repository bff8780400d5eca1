//! Seeded random generators for states, unitaries, and channels.
//!
//! Everything takes an explicit `Rng` so that property tests and see-saw
//! restarts are reproducible from a single `u64` seed.  The channel
//! generator draws a Ginibre `2d_B × d_A` block, orthonormalizes it into an
//! isometry by QR, and traces out a 2-dimensional environment; this samples
//! CPTP maps with full-rank Choi matrices almost surely.

use crate::channels::QuantumChannel;
use crate::matops::{hermitian_power, ComplexMatrix, C64};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// The crate-standard seeded RNG.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    use rand::SeedableRng;
    ChaCha8Rng::seed_from_u64(seed)
}

fn standard_normal(rng: &mut impl Rng) -> f64 {
    // Box-Muller; avoids an extra distribution dependency.
    loop {
        let u: f64 = rng.gen::<f64>();
        if u > 1e-300 {
            let v: f64 = rng.gen::<f64>();
            return (-2.0 * u.ln()).sqrt() * (2.0 * std::f64::consts::PI * v).cos();
        }
    }
}

fn complex_normal(rng: &mut impl Rng) -> C64 {
    C64::new(standard_normal(rng), standard_normal(rng))
}

/// Matrix of iid standard complex Gaussians.
pub fn ginibre(rng: &mut impl Rng, rows: usize, cols: usize) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            m.set(i, j, complex_normal(rng));
        }
    }
    m
}

/// Haar-random pure state on `C^d` as a column vector.
pub fn haar_state(rng: &mut impl Rng, d: usize) -> Vec<C64> {
    loop {
        let mut v: Vec<C64> = (0..d).map(|_| complex_normal(rng)).collect();
        let norm: f64 = v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-6 {
            for c in v.iter_mut() {
                *c /= C64::new(norm, 0.0);
            }
            return v;
        }
    }
}

/// Haar-random unitary via QR of a Ginibre matrix with the phase fix that
/// makes the distribution exactly Haar.
pub fn haar_unitary(rng: &mut impl Rng, d: usize) -> ComplexMatrix {
    let g = ginibre(rng, d, d);
    let (q, r) = qr(&g);
    // rescale columns by the phases of R's diagonal
    let mut u = q;
    for j in 0..d {
        let rjj = r.get(j, j);
        let phase = if rjj.norm() > 0.0 {
            rjj / C64::new(rjj.norm(), 0.0)
        } else {
            C64::new(1.0, 0.0)
        };
        for i in 0..d {
            let v = u.get(i, j) * phase;
            u.set(i, j, v);
        }
    }
    u
}

/// Thin QR by modified Gram-Schmidt; assumes full column rank, which holds
/// almost surely for Ginibre input.
pub fn qr(m: &ComplexMatrix) -> (ComplexMatrix, ComplexMatrix) {
    let rows = m.rows();
    let cols = m.cols();
    let mut q = m.clone();
    let mut r = ComplexMatrix::zeros(cols, cols);
    for j in 0..cols {
        for k in 0..j {
            let mut dot = C64::new(0.0, 0.0);
            for i in 0..rows {
                dot += q.get(i, k).conj() * q.get(i, j);
            }
            r.set(k, j, dot);
            for i in 0..rows {
                let v = q.get(i, j) - dot * q.get(i, k);
                q.set(i, j, v);
            }
        }
        let norm: f64 = (0..rows).map(|i| q.get(i, j).norm_sqr()).sum::<f64>().sqrt();
        r.set(j, j, C64::new(norm, 0.0));
        if norm > 0.0 {
            for i in 0..rows {
                let v = q.get(i, j) / C64::new(norm, 0.0);
                q.set(i, j, v);
            }
        }
    }
    (q, r)
}

/// Random density operator (normalized Wishart), full rank almost surely.
pub fn random_density(rng: &mut impl Rng, d: usize) -> ComplexMatrix {
    let g = ginibre(rng, d, d);
    let w = g.matmul(&g.dagger());
    let t = w.trace().re;
    w.scale_re(1.0 / t)
}

/// Random Hermitian matrix with Gaussian entries.
pub fn random_hermitian(rng: &mut impl Rng, d: usize) -> ComplexMatrix {
    let g = ginibre(rng, d, d);
    g.add(&g.dagger()).scale_re(0.5)
}

/// Random CPTP map `C^{d_in} → C^{d_out}` from a Haar isometry into
/// `d_out ⊗ C²` followed by tracing out the environment.
pub fn random_channel(rng: &mut impl Rng, d_in: usize, d_out: usize, label: &str) -> QuantumChannel {
    let env = 2usize;
    let g = ginibre(rng, d_out * env, d_in);
    let (q, _) = qr(&g);
    // Kraus blocks K_e[b][i] = Q[(b, e), i] with the environment least
    // significant in the row index.
    let kraus: Vec<ComplexMatrix> = (0..env)
        .map(|e| ComplexMatrix::from_fn(d_out, d_in, |b, i| q.get(b * env + e, i)))
        .collect();
    QuantumChannel::new(d_in, d_out, kraus, label).expect("isometry gives a valid channel")
}

/// Random qubit channel; the generator behind the qubit property suites.
pub fn random_qubit_channel(rng: &mut impl Rng) -> QuantumChannel {
    random_channel(rng, 2, 2, "random-qubit")
}

/// Random measure-and-prepare (entanglement-breaking) channel with
/// `n_outcomes` POVM elements measured on `C^{d_in}` and pure states
/// prepared on `C^{d_out}`.
pub fn random_measure_prepare(
    rng: &mut impl Rng,
    d_in: usize,
    d_out: usize,
    n_outcomes: usize,
    label: &str,
) -> QuantumChannel {
    // POVM from normalized random PSD pieces: M_x = S^{-1/2} P_x S^{-1/2}.
    let pieces: Vec<ComplexMatrix> = (0..n_outcomes)
        .map(|_| {
            let g = ginibre(rng, d_in, d_in);
            g.matmul(&g.dagger())
        })
        .collect();
    let mut s = ComplexMatrix::zeros(d_in, d_in);
    for p in &pieces {
        s = s.add(p);
    }
    let s_inv_half = hermitian_power(&s, -0.5);
    let mut kraus = Vec::new();
    for p in &pieces {
        let m = s_inv_half.matmul(p).matmul(&s_inv_half).hermitian_part();
        let m_half = hermitian_power(&m, 0.5);
        let out = haar_state(rng, d_out);
        // K_{x,j} = |out_x⟩⟨j| M_x^{1/2}
        for j in 0..d_in {
            let k = ComplexMatrix::from_fn(d_out, d_in, |b, i| out[b] * m_half.get(j, i));
            kraus.push(k);
        }
    }
    QuantumChannel::new(d_in, d_out, kraus, label).expect("measure-and-prepare construction is CPTP")
}
