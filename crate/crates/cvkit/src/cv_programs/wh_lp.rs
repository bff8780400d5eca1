//! Symmetry-reduced linear programs for the PPT value of Werner-Holevo
//! channels.
//!
//! Twirling the `n`-fold program onto the `U⊗U`-invariant algebra leaves a
//! variable per subset `s ⊆ [n]` (the coefficient of `⊗_i F^{s(i)}`), with
//! positivity over the symmetric/antisymmetric subspace characters,
//! PPT weights over the maximally-entangled decomposition, one trace
//! equality, and a character-transformed objective.  The PPT weight per
//! column is `d^{w(s)−n}`; any common positive rescaling of a column
//! leaves the feasible set unchanged, and the builder is cross-validated
//! against the generic PPT SDP in the test suite.

use super::{CvError, CvKind, CvMeta, CvResult, SolverMeta};
use crate::conic::{lp_solve, LinearProgram, SolveStatus};

/// Guard: the LP has `2ⁿ` variables.
const MAX_COPIES: usize = 10;

fn check_lambda(lambda: f64) -> Result<(), CvError> {
    if !(0.0..=1.0).contains(&lambda) {
        return Err(CvError::Guard(format!("lambda={lambda} outside [0,1]")));
    }
    Ok(())
}

/// PPT communication value of `⊗_i W_{d,λ_i}` as a linear program.
/// Returns the program alongside the solved bound.
pub fn wh_nfold_lp(d: usize, lambdas: &[f64]) -> Result<(LinearProgram, CvResult), CvError> {
    if d < 2 {
        return Err(CvError::Guard("werner-holevo needs d >= 2".into()));
    }
    let n = lambdas.len();
    if n == 0 {
        return Err(CvError::Guard("need at least one channel copy".into()));
    }
    if n > MAX_COPIES {
        return Err(CvError::Guard(format!(
            "{n} copies gives 2^{n} LP variables; the limit is {MAX_COPIES} copies"
        )));
    }
    for &l in lambdas {
        check_lambda(l)?;
    }

    let dd = d as f64;
    let size = 1usize << n;
    let mask = size - 1;
    let parity = |x: usize| -> f64 {
        if (x.count_ones() & 1) == 1 {
            -1.0
        } else {
            1.0
        }
    };

    // positivity characters: A[j][s] = (−1)^{|s ∧ j|}
    let mut ineq: Vec<Vec<f64>> = Vec::with_capacity(2 * size);
    for j in 0..size {
        ineq.push((0..size).map(|s| parity(s & j)).collect());
    }
    // PPT weights: zero when some factor pairs the swap with the
    // complement subspace, else d^{w(s)−n}
    for j in 0..size {
        ineq.push(
            (0..size)
                .map(|s| {
                    if s & !j & mask != 0 {
                        0.0
                    } else {
                        dd.powi(s.count_ones() as i32 - n as i32)
                    }
                })
                .collect(),
        );
    }
    // trace: Σ_s d^{n−w(s)} c_s = 1
    let g: Vec<f64> = (0..size)
        .map(|s| dd.powi(n as i32 - s.count_ones() as i32))
        .collect();
    // objective: a[s] = Σ_j (−1)^{|s∧j|} Π_i ψ_i(j_i), with per-factor
    // weights ψ_i(0) = λ_i d (symmetric) and ψ_i(1) = (1−λ_i) d
    let a: Vec<f64> = (0..size)
        .map(|s| {
            (0..size)
                .map(|j| {
                    let mut w = parity(s & j);
                    for (i, &l) in lambdas.iter().enumerate() {
                        w *= if (j >> (n - 1 - i)) & 1 == 0 {
                            l * dd
                        } else {
                            (1.0 - l) * dd
                        };
                    }
                    w
                })
                .sum()
        })
        .collect();

    let lp = LinearProgram {
        objective: a,
        eq_lhs: vec![g],
        eq_rhs: vec![1.0],
        ineq_lhs: ineq,
    };
    let report = lp_solve(&lp, 1e-11)?;
    if report.status != SolveStatus::Optimal {
        return Err(CvError::Guard(format!(
            "Werner-Holevo LP did not reach optimality: {:?}",
            report.status
        )));
    }
    let result = CvResult::new(
        CvKind::WhLp,
        report.primal_value,
        CvMeta::Solver(SolverMeta::from_report(&report)),
    );
    Ok((lp, result))
}

/// PPT communication value of `W_{d,λ} ⊗ id_{d'}` as the four-variable
/// linear program in the invariant coefficients `(w, x, y, z)` of
/// `wI⊗I + xF⊗I + yI⊗φ⁺ + zF⊗φ⁺`.
pub fn wh_id_lp(d: usize, d_prime: usize, lambda: f64) -> Result<(LinearProgram, CvResult), CvError> {
    if d < 2 || d_prime < 2 {
        return Err(CvError::Guard("both dimensions must be at least 2".into()));
    }
    check_lambda(lambda)?;
    let dd = d as f64;
    let dp = d_prime as f64;
    let t = 2.0 * lambda - 1.0;

    let lp = LinearProgram {
        objective: vec![dd * dp, dd * dp * t, dd * dp * dp, dd * dp * dp * t],
        eq_lhs: vec![vec![dd * dp, dp, dd, 1.0]],
        eq_rhs: vec![1.0],
        ineq_lhs: vec![
            // positivity on the four invariant subspaces
            vec![1.0, -1.0, dp, -dp],
            vec![1.0, -1.0, 0.0, 0.0],
            vec![1.0, 1.0, dp, dp],
            vec![1.0, 1.0, 0.0, 0.0],
            // positivity of the partial transpose
            vec![1.0, dd, -1.0, -dd],
            vec![1.0, 0.0, -1.0, 0.0],
            vec![1.0, dd, 1.0, dd],
            vec![1.0, 0.0, 1.0, 0.0],
        ],
    };
    let report = lp_solve(&lp, 1e-11)?;
    if report.status != SolveStatus::Optimal {
        return Err(CvError::Guard(format!(
            "Werner-Holevo ⊗ id LP did not reach optimality: {:?}",
            report.status
        )));
    }
    let result = CvResult::new(
        CvKind::WhIdLp,
        report.primal_value,
        CvMeta::Solver(SolverMeta::from_report(&report)),
    );
    Ok((lp, result))
}
