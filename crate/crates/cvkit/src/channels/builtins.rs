//! The builtin channel zoo.
//!
//! Every constructor validates against the completeness relation through
//! [`QuantumChannel::new`]; the unit tests additionally pin each builtin's
//! Choi matrix to its known closed form.

use super::{ChannelError, ClassicalChannel, QuantumChannel};
use crate::matops::{
    hermitian_eig, paulis, phi_plus, swap_operator, ComplexMatrix, C64,
};

/// Identity channel on `C^d`.
pub fn identity_channel(d: usize) -> QuantumChannel {
    QuantumChannel::new(d, d, vec![ComplexMatrix::identity(d)], format!("identity(d={d})"))
        .expect("identity is CPTP")
}

/// Replacer channel `ρ ↦ Tr(ρ)·σ` for a fixed state `σ`.
pub fn replacer_channel(sigma: &ComplexMatrix) -> Result<QuantumChannel, ChannelError> {
    if !sigma.is_square() {
        return Err(ChannelError::DimMismatch("state must be square".into()));
    }
    if (sigma.trace().re - 1.0).abs() > 1e-9 || sigma.trace().im.abs() > 1e-9 {
        return Err(ChannelError::BadParam("replacer state must have unit trace".into()));
    }
    let d = sigma.rows();
    let (evals, vecs) = hermitian_eig(sigma).map_err(|e| ChannelError::Parse(e.to_string()))?;
    let mut kraus = Vec::new();
    for (k, &l) in evals.iter().enumerate() {
        if l <= 1e-14 {
            continue;
        }
        let s = l.sqrt();
        for j in 0..d {
            let m = ComplexMatrix::from_fn(d, d, |r, c| {
                if c == j {
                    vecs.get(r, k) * s
                } else {
                    C64::new(0.0, 0.0)
                }
            });
            kraus.push(m);
        }
    }
    QuantumChannel::new(d, d, kraus, format!("replacer(d={d})"))
}

/// Classical channel embedded quantumly via `K_{y,x} = √P(y|x) |y⟩⟨x|`, so
/// every cv routine accepts it uniformly.
pub fn classical_channel(p: &ClassicalChannel) -> QuantumChannel {
    let mut kraus = Vec::new();
    for y in 0..p.n_out() {
        for x in 0..p.n_in() {
            let v = p.prob(y, x);
            if v == 0.0 {
                continue;
            }
            let mut k = ComplexMatrix::zeros(p.n_out(), p.n_in());
            k.set(y, x, C64::new(v.sqrt(), 0.0));
            kraus.push(k);
        }
    }
    QuantumChannel::new(p.n_in(), p.n_out(), kraus, "classical").expect("stochastic matrix is CPTP")
}

/// Pauli channel `ρ ↦ p0 ρ + p1 XρX + p2 YρY + p3 ZρZ`.
pub fn pauli_channel(p: [f64; 4]) -> Result<QuantumChannel, ChannelError> {
    let total: f64 = p.iter().sum();
    if p.iter().any(|&x| x < -1e-12) || (total - 1.0).abs() > 1e-9 {
        return Err(ChannelError::BadParam(format!(
            "Pauli probabilities must be nonnegative and sum to 1, got {p:?}"
        )));
    }
    let [x, y, z] = paulis();
    let ops = [ComplexMatrix::identity(2), x, y, z];
    let kraus: Vec<ComplexMatrix> = ops
        .iter()
        .zip(p.iter())
        .filter(|(_, &w)| w > 0.0)
        .map(|(op, &w)| op.scale_re(w.sqrt()))
        .collect();
    QuantumChannel::new(2, 2, kraus, format!("pauli({},{},{},{})", p[0], p[1], p[2], p[3]))
}

/// Discrete Weyl (shift/clock) operator `X^m Z^n` on `C^d`.
pub(crate) fn weyl(d: usize, m: usize, n: usize) -> ComplexMatrix {
    let mut w = ComplexMatrix::zeros(d, d);
    for k in 0..d {
        let phase = 2.0 * std::f64::consts::PI * (n * k) as f64 / d as f64;
        w.set((k + m) % d, k, C64::new(phase.cos(), phase.sin()));
    }
    w
}

/// Partially depolarizing channel `ρ ↦ λρ + (1−λ) Tr(ρ) I/d`.
pub fn depolarizing_channel(d: usize, lambda: f64) -> Result<QuantumChannel, ChannelError> {
    if d < 2 {
        return Err(ChannelError::BadParam("depolarizing needs d >= 2".into()));
    }
    if !(0.0..=1.0).contains(&lambda) {
        return Err(ChannelError::BadParam(format!("lambda={lambda} outside [0,1]")));
    }
    // Uniform Weyl mixture implements the trace projector: the identity term
    // absorbs weight λ + (1−λ)/d², the rest carry (1−λ)/d² each.
    let dd = (d * d) as f64;
    let mut kraus = Vec::new();
    for m in 0..d {
        for n in 0..d {
            let w = if (m, n) == (0, 0) {
                lambda + (1.0 - lambda) / dd
            } else {
                (1.0 - lambda) / dd
            };
            if w > 0.0 {
                kraus.push(weyl(d, m, n).scale_re(w.sqrt()));
            }
        }
    }
    QuantumChannel::new(d, d, kraus, format!("depolarizing(d={d},λ={lambda})"))
}

/// Choi matrix of the Werner-Holevo channel:
/// `J = λ (2/(d+1)) Π₊ + (1−λ) (2/(d−1)) Π₋` with `Π± = (I ± F)/2`.
pub fn werner_holevo_choi(d: usize, lambda: f64) -> ComplexMatrix {
    let id = ComplexMatrix::identity(d * d);
    let f = swap_operator(d);
    let pi_plus = id.add(&f).scale_re(0.5);
    let pi_minus = id.sub(&f).scale_re(0.5);
    pi_plus
        .scale_re(lambda * 2.0 / (d as f64 + 1.0))
        .add(&pi_minus.scale_re((1.0 - lambda) * 2.0 / (d as f64 - 1.0)))
}

/// Werner-Holevo channel `W_{d,λ}`, the convex mixture of the symmetric and
/// antisymmetric transpose-projector channels.  Kraus operators come from
/// eigendecomposing the Choi matrix, since the family is defined by action
/// rather than by a Kraus form.
pub fn werner_holevo_channel(d: usize, lambda: f64) -> Result<QuantumChannel, ChannelError> {
    if d < 2 {
        return Err(ChannelError::BadParam("werner-holevo needs d >= 2".into()));
    }
    if !(0.0..=1.0).contains(&lambda) {
        return Err(ChannelError::BadParam(format!("lambda={lambda} outside [0,1]")));
    }
    let j = werner_holevo_choi(d, lambda);
    let kraus = kraus_from_choi(&j, d, d)?;
    QuantumChannel::new(d, d, kraus, format!("werner-holevo(d={d},λ={lambda})"))
}

/// Kraus operators of a channel from its Choi matrix: unvec the
/// eigenvectors scaled by the square roots of the eigenvalues.
pub fn kraus_from_choi(
    j: &ComplexMatrix,
    d_in: usize,
    d_out: usize,
) -> Result<Vec<ComplexMatrix>, ChannelError> {
    let (evals, vecs) = hermitian_eig(j).map_err(|e| ChannelError::Parse(e.to_string()))?;
    let mut kraus = Vec::new();
    for (k, &l) in evals.iter().enumerate() {
        if l <= 1e-12 {
            continue;
        }
        let s = l.sqrt();
        let m = ComplexMatrix::from_fn(d_out, d_in, |b, i| vecs.get(i * d_out + b, k) * s);
        kraus.push(m);
    }
    if kraus.is_empty() {
        return Err(ChannelError::EmptyKraus);
    }
    Ok(kraus)
}

/// Dephrasure channel: dephase with probability `p`, then erase to the flag
/// state `|e⟩ = |2⟩` with probability `q`.  Maps a qubit into a qutrit.
pub fn dephrasure_channel(p: f64, q: f64) -> Result<QuantumChannel, ChannelError> {
    for (name, v) in [("p", p), ("q", q)] {
        if !(0.0..=1.0).contains(&v) {
            return Err(ChannelError::BadParam(format!("{name}={v} outside [0,1]")));
        }
    }
    let embed = |z: bool| {
        ComplexMatrix::from_fn(3, 2, |r, c| {
            if r == c {
                let sign = if z && r == 1 { -1.0 } else { 1.0 };
                C64::new(sign, 0.0)
            } else {
                C64::new(0.0, 0.0)
            }
        })
    };
    let mut kraus = Vec::new();
    let w_id = (1.0 - q) * (1.0 - p);
    let w_z = (1.0 - q) * p;
    if w_id > 0.0 {
        kraus.push(embed(false).scale_re(w_id.sqrt()));
    }
    if w_z > 0.0 {
        kraus.push(embed(true).scale_re(w_z.sqrt()));
    }
    if q > 0.0 {
        for c in 0..2 {
            let mut k = ComplexMatrix::zeros(3, 2);
            k.set(2, c, C64::new(q.sqrt(), 0.0));
            kraus.push(k);
        }
    }
    QuantumChannel::new(2, 3, kraus, format!("dephrasure(p={p},q={q})"))
}

/// The qutrit family `K₀ = √s|0⟩⟨0| + |2⟩⟨1|`, `K₁ = √(1−s)|1⟩⟨0| + |2⟩⟨2|`
/// for `s ∈ [0, 1/2]`.
pub fn siddhu_channel(s: f64) -> Result<QuantumChannel, ChannelError> {
    if !(0.0..=0.5).contains(&s) {
        return Err(ChannelError::BadParam(format!("s={s} outside [0, 0.5]")));
    }
    let mut k0 = ComplexMatrix::zeros(3, 3);
    k0.set(0, 0, C64::new(s.sqrt(), 0.0));
    k0.set(2, 1, C64::new(1.0, 0.0));
    let mut k1 = ComplexMatrix::zeros(3, 3);
    k1.set(1, 0, C64::new((1.0 - s).sqrt(), 0.0));
    k1.set(2, 2, C64::new(1.0, 0.0));
    QuantumChannel::new(3, 3, vec![k0, k1], format!("siddhu(s={s})"))
}

/// Amplitude damping channel with decay probability `γ`.
pub fn amplitude_damping_channel(gamma: f64) -> Result<QuantumChannel, ChannelError> {
    if !(0.0..=1.0).contains(&gamma) {
        return Err(ChannelError::BadParam(format!("gamma={gamma} outside [0,1]")));
    }
    let mut k0 = ComplexMatrix::identity(2);
    k0.set(1, 1, C64::new((1.0 - gamma).sqrt(), 0.0));
    let mut k1 = ComplexMatrix::zeros(2, 2);
    k1.set(0, 1, C64::new(gamma.sqrt(), 0.0));
    QuantumChannel::new(2, 2, vec![k0, k1], format!("amplitude-damping(γ={gamma})"))
}

/// Choi matrix of the depolarizing channel, `λ φ⁺_d + (1−λ) I⊗I/d`.
pub fn depolarizing_choi(d: usize, lambda: f64) -> ComplexMatrix {
    phi_plus(d)
        .scale_re(lambda)
        .add(&ComplexMatrix::identity(d * d).scale_re((1.0 - lambda) / d as f64))
}
