//! Exact communication-value formulas.
//!
//! These serve both as fast paths and as oracles for the solver stack: a
//! qubit channel's cv is `1 + σ_max(A)` for the 3×3 correlation matrix `A`
//! of its Choi operator, the entanglement-assisted value is `1 + ‖A‖₁`, and
//! the Werner-Holevo / depolarizing / dephrasure / Siddhu families have
//! known closed forms.

use crate::channels::{ChannelError, ChoiMatrix, ClassicalChannel, QuantumChannel};
use crate::matops::{paulis, singular_values, tensor, trace_norm_real};

/// 3×3 correlation matrix `A_ij = ½ Tr[(σ_i ⊗ σ_j) J]` of a qubit Choi
/// matrix.  CPTP maps keep every singular value within 1.
#[derive(Debug, Clone)]
pub struct QubitCorrelation {
    matrix: [[f64; 3]; 3],
}

impl QubitCorrelation {
    pub fn from_choi(j: &ChoiMatrix) -> Result<Self, ChannelError> {
        if j.dim_in() != 2 || j.dim_out() != 2 {
            return Err(ChannelError::DimMismatch(format!(
                "correlation matrix needs a qubit channel, got {}→{}",
                j.dim_in(),
                j.dim_out()
            )));
        }
        let sigmas = paulis();
        let mut matrix = [[0.0f64; 3]; 3];
        for (i, si) in sigmas.iter().enumerate() {
            for (k, sk) in sigmas.iter().enumerate() {
                matrix[i][k] = 0.5 * tensor(si, sk).inner_re(j.matrix());
            }
        }
        let corr = QubitCorrelation { matrix };
        let smax = corr.singular_values()[0];
        if smax > 1.0 + 1e-9 {
            return Err(ChannelError::BadParam(format!(
                "correlation matrix has singular value {smax} > 1; not a CPTP Choi"
            )));
        }
        Ok(corr)
    }

    pub fn matrix(&self) -> &[[f64; 3]; 3] {
        &self.matrix
    }

    pub fn singular_values(&self) -> Vec<f64> {
        singular_values(&self.rows())
    }

    pub fn trace_norm(&self) -> f64 {
        trace_norm_real(&self.rows())
    }

    fn rows(&self) -> Vec<Vec<f64>> {
        self.matrix.iter().map(|r| r.to_vec()).collect()
    }
}

/// `cv(P) = Σ_y max_x P(y|x)`; always in `[1, min(n, n')]`.
pub fn classical_cv(p: &ClassicalChannel) -> f64 {
    (0..p.n_out())
        .map(|y| {
            (0..p.n_in())
                .map(|x| p.prob(y, x))
                .fold(f64::NEG_INFINITY, f64::max)
        })
        .sum()
}

fn require_qubit(c: &QuantumChannel) -> Result<(), ChannelError> {
    if c.dim_in() != 2 || c.dim_out() != 2 {
        return Err(ChannelError::DimMismatch(format!(
            "qubit formula needs d_in = d_out = 2, channel is {}→{}",
            c.dim_in(),
            c.dim_out()
        )));
    }
    Ok(())
}

/// Exact qubit cv: `1 + σ_max(A)`.
pub fn qubit_cv(c: &QuantumChannel) -> Result<f64, ChannelError> {
    require_qubit(c)?;
    let corr = QubitCorrelation::from_choi(&c.choi())?;
    Ok(1.0 + corr.singular_values()[0])
}

/// Exact entanglement-assisted qubit cv: `1 + ‖A‖₁`.
pub fn qubit_ea_cv(c: &QuantumChannel) -> Result<f64, ChannelError> {
    require_qubit(c)?;
    let corr = QubitCorrelation::from_choi(&c.choi())?;
    Ok(1.0 + corr.trace_norm())
}

/// Breakpoint of the Werner-Holevo cv formula, `λ* = (1+d)/(2d)`.
pub fn werner_holevo_breakpoint(d: usize) -> f64 {
    (1.0 + d as f64) / (2.0 * d as f64)
}

/// Exact Werner-Holevo cv: `d(d+1−2λ)/(d²−1)` up to the breakpoint, then
/// `2dλ/(1+d)`.  The two branches agree at `λ = (1+d)/(2d)`.
pub fn werner_holevo_cv(d: usize, lambda: f64) -> Result<f64, ChannelError> {
    if d < 2 {
        return Err(ChannelError::BadParam("werner-holevo needs d >= 2".into()));
    }
    if !(0.0..=1.0).contains(&lambda) {
        return Err(ChannelError::BadParam(format!("lambda={lambda} outside [0,1]")));
    }
    let dd = d as f64;
    if lambda <= werner_holevo_breakpoint(d) {
        Ok(dd * (dd + 1.0 - 2.0 * lambda) / (dd * dd - 1.0))
    } else {
        Ok(2.0 * dd * lambda / (1.0 + dd))
    }
}

/// Exact depolarizing cv: `λd + (1−λ)`.
pub fn depolarizing_cv(d: usize, lambda: f64) -> f64 {
    lambda * d as f64 + (1.0 - lambda)
}

/// Exact dephrasure cv: `2 − q`, independent of the dephasing probability.
pub fn dephrasure_cv(_p: f64, q: f64) -> f64 {
    2.0 - q
}

/// Exact Siddhu-channel cv: constantly 2 on `s ∈ [0, 1/2]`.
pub fn siddhu_cv(s: f64) -> Result<f64, ChannelError> {
    if !(0.0..=0.5).contains(&s) {
        return Err(ChannelError::BadParam(format!("s={s} outside [0, 0.5]")));
    }
    Ok(2.0)
}

/// Universal bracket `1 ≤ cv(N) ≤ min(d_A, d_B)`.
pub fn cv_bounds(c: &QuantumChannel) -> (f64, f64) {
    (1.0, c.dim_in().min(c.dim_out()) as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channels::*;
    use crate::matops::ComplexMatrix;
    use crate::random::{random_density, random_qubit_channel, seeded_rng};
    use rand::Rng;

    fn assert_close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "expected {b}, got {a} (tol {tol})");
    }

    #[test]
    fn classical_cv_examples() {
        let id = ClassicalChannel::new(vec![vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap();
        assert_close(classical_cv(&id), 2.0, 0.0);

        let bsc = ClassicalChannel::new(vec![vec![0.9, 0.1], vec![0.1, 0.9]]).unwrap();
        assert_close(classical_cv(&bsc), 1.8, 1e-15);

        let constant = ClassicalChannel::new(vec![vec![0.3, 0.3], vec![0.7, 0.7]]).unwrap();
        assert_close(classical_cv(&constant), 1.0, 1e-15);
    }

    #[test]
    fn classical_cv_multiplicative_under_tensor() {
        let mut rng = seeded_rng(19);
        for _ in 0..20 {
            let random_stochastic = |rng: &mut rand_chacha::ChaCha8Rng| {
                let mut cols = [[0.0f64; 3]; 3];
                for col in cols.iter_mut() {
                    let mut total = 0.0;
                    for v in col.iter_mut() {
                        *v = rng.gen::<f64>();
                        total += *v;
                    }
                    for v in col.iter_mut() {
                        *v /= total;
                    }
                }
                ClassicalChannel::new(
                    (0..3).map(|y| (0..3).map(|x| cols[x][y]).collect()).collect(),
                )
                .unwrap()
            };
            let p = random_stochastic(&mut rng);
            let q = random_stochastic(&mut rng);
            let joint = p.tensor(&q);
            assert_close(
                classical_cv(&joint),
                classical_cv(&p) * classical_cv(&q),
                1e-12,
            );
        }
    }

    #[test]
    fn qubit_cv_examples() {
        assert_close(qubit_cv(&identity_channel(2)).unwrap(), 2.0, 1e-12);

        // Pauli channels: cv = 2 (sum of the two largest probabilities).
        let mut rng = seeded_rng(29);
        for _ in 0..30 {
            let mut p = [0.0f64; 4];
            let mut total = 0.0;
            for v in p.iter_mut() {
                *v = rng.gen::<f64>();
                total += *v;
            }
            for v in p.iter_mut() {
                *v /= total;
            }
            let cv = qubit_cv(&pauli_channel(p).unwrap()).unwrap();
            let mut sorted = p;
            sorted.sort_by(|a, b| b.partial_cmp(a).unwrap());
            assert_close(cv, 2.0 * (sorted[0] + sorted[1]), 1e-10);
        }

        // amplitude damping: cv = 1 + √(1−γ)
        for gamma in [0.0, 0.25, 0.5, 0.9] {
            let cv = qubit_cv(&amplitude_damping_channel(gamma).unwrap()).unwrap();
            assert_close(cv, 1.0 + (1.0 - gamma).sqrt(), 1e-10);
        }
        assert!(qubit_cv(&siddhu_channel(0.1).unwrap()).is_err());
    }

    #[test]
    fn qubit_ea_cv_examples() {
        assert_close(qubit_ea_cv(&identity_channel(2)).unwrap(), 4.0, 1e-12);
        let mixed = ComplexMatrix::identity(2).scale_re(0.5);
        assert_close(
            qubit_ea_cv(&replacer_channel(&mixed).unwrap()).unwrap(),
            1.0,
            1e-10,
        );
        for lambda in [0.0, 0.3, 1.0] {
            let c = depolarizing_channel(2, lambda).unwrap();
            assert_close(qubit_ea_cv(&c).unwrap(), 1.0 + 3.0 * lambda, 1e-10);
        }
    }

    #[test]
    fn ea_dominates_and_is_bounded() {
        // cv* ≥ cv and cv* ≤ 2·cv for qubit channels.
        let mut rng = seeded_rng(37);
        for _ in 0..50 {
            let c = random_qubit_channel(&mut rng);
            let cv = qubit_cv(&c).unwrap();
            let ea = qubit_ea_cv(&c).unwrap();
            assert!(ea >= cv - 1e-10);
            assert!(ea <= 2.0 * cv + 1e-10);
        }
    }

    #[test]
    fn werner_holevo_formula() {
        assert_close(werner_holevo_cv(3, 0.0).unwrap(), 1.5, 1e-15);
        // breakpoint: both branches give 1
        let bp = werner_holevo_breakpoint(3);
        assert_close(bp, 2.0 / 3.0, 1e-15);
        let left = 3.0 * (4.0 - 2.0 * bp) / 8.0;
        let right = 6.0 * bp / 4.0;
        assert_close(left, 1.0, 1e-12);
        assert_close(right, 1.0, 1e-12);
        assert_close(werner_holevo_cv(3, bp).unwrap(), 1.0, 1e-12);
        assert_close(werner_holevo_cv(3, 1.0).unwrap(), 1.5, 1e-15);
        assert!(werner_holevo_cv(3, 1.5).is_err());
    }

    #[test]
    fn werner_holevo_continuous_with_min_at_breakpoint() {
        for d in [2usize, 3, 4] {
            let bp = werner_holevo_breakpoint(d);
            let mut prev = werner_holevo_cv(d, 0.0).unwrap();
            let mut min = prev;
            for i in 1..=1000 {
                let l = i as f64 / 1000.0;
                let v = werner_holevo_cv(d, l).unwrap();
                assert!((v - prev).abs() < 0.01, "jump at λ={l}");
                min = min.min(v);
                prev = v;
            }
            // grid min sits near the breakpoint but need not hit it exactly
            assert_close(min, 1.0, 2e-3);
            assert_close(werner_holevo_cv(d, bp).unwrap(), 1.0, 1e-12);
        }
    }

    #[test]
    fn formula_one_liners() {
        assert_close(depolarizing_cv(4, 1.0), 4.0, 0.0);
        assert_close(depolarizing_cv(4, 0.0), 1.0, 0.0);
        assert_close(depolarizing_cv(2, 0.5), 1.5, 0.0);
        assert_close(dephrasure_cv(0.5, 0.0), 2.0, 0.0);
        assert_close(dephrasure_cv(0.5, 1.0), 1.0, 0.0);
        assert_close(dephrasure_cv(0.37, 0.25), 1.75, 0.0);
        assert_close(siddhu_cv(0.0).unwrap(), 2.0, 0.0);
        assert_close(siddhu_cv(0.5).unwrap(), 2.0, 0.0);
        assert_close(siddhu_cv(0.25).unwrap(), 2.0, 0.0);
        assert!(siddhu_cv(0.6).is_err());
    }

    #[test]
    fn bounds_examples() {
        assert_eq!(cv_bounds(&identity_channel(2)), (1.0, 2.0));
        assert_eq!(
            cv_bounds(&werner_holevo_channel(3, 0.5).unwrap()),
            (1.0, 3.0)
        );
        let p = ClassicalChannel::new(vec![
            vec![0.5, 0.5, 0.0, 0.2],
            vec![0.5, 0.5, 1.0, 0.8],
        ])
        .unwrap();
        assert_eq!(cv_bounds(&classical_channel(&p)), (1.0, 2.0));
    }

    #[test]
    fn qubit_cv_within_bounds_on_random_channels() {
        let mut rng = seeded_rng(53);
        for _ in 0..200 {
            let c = random_qubit_channel(&mut rng);
            let cv = qubit_cv(&c).unwrap();
            assert!((1.0 - 1e-9..=2.0 + 1e-9).contains(&cv), "cv={cv}");
        }
    }

    #[test]
    fn replacer_has_unit_cv_and_constant_output() {
        let mut rng = seeded_rng(59);
        for _ in 0..10 {
            let sigma = random_density(&mut rng, 2);
            let c = replacer_channel(&sigma).unwrap();
            let cv = qubit_cv(&c).unwrap();
            assert_close(cv, 1.0, 1e-9);
            // cv = 1 must coincide with input-independent output on probes
            if cv <= 1.0 + 1e-9 {
                let probes = [
                    random_density(&mut rng, 2),
                    random_density(&mut rng, 2),
                    random_density(&mut rng, 2),
                ];
                for probe in &probes {
                    let out = c.apply(probe).unwrap();
                    assert!(out.sub(&sigma).max_abs() < 1e-9);
                }
            }
            // generic channels stay strictly above 1
            let generic = random_qubit_channel(&mut rng);
            let out0 = generic
                .apply(&random_density(&mut rng, 2))
                .unwrap()
                .sub(&generic.apply(&random_density(&mut rng, 2)).unwrap())
                .max_abs();
            if out0 > 1e-6 {
                assert!(qubit_cv(&generic).unwrap() > 1.0);
            }
        }
    }
}
