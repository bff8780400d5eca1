//! Dense two-phase simplex over free variables.
//!
//! The program shape matches what the Werner-Holevo builders produce:
//! maximize `⟨c, x⟩` over free `x` subject to `Gx = h` and homogeneous
//! inequalities `Ax ≥ 0`.  Free variables split into positive parts,
//! inequalities get slacks, and equalities get phase-1 artificials.
//! Pricing is most-negative-reduced-cost with lowest-index tie breaking;
//! after a long degenerate stall the pivot rule degrades to Bland's rule,
//! which cannot cycle.

use super::program::{Residuals, SolutionBlock, SolveReport, SolveStatus};
use super::SolverError;
use serde::Serialize;

/// Maximize `⟨objective, x⟩` s.t. `eq_lhs · x = eq_rhs`, `ineq_lhs · x ≥ 0`.
#[derive(Debug, Clone, Serialize)]
pub struct LinearProgram {
    pub objective: Vec<f64>,
    pub eq_lhs: Vec<Vec<f64>>,
    pub eq_rhs: Vec<f64>,
    pub ineq_lhs: Vec<Vec<f64>>,
}

impl LinearProgram {
    fn validate(&self) -> Result<(), SolverError> {
        let n = self.objective.len();
        if n == 0 {
            return Err(SolverError::BadProgram("no variables".into()));
        }
        if self.eq_lhs.len() != self.eq_rhs.len() {
            return Err(SolverError::BadProgram(
                "equality sides have different row counts".into(),
            ));
        }
        for row in self.eq_lhs.iter().chain(self.ineq_lhs.iter()) {
            if row.len() != n {
                return Err(SolverError::BadProgram(format!(
                    "row has {} columns, expected {n}",
                    row.len()
                )));
            }
        }
        Ok(())
    }
}

struct Tableau {
    rows: usize,
    cols: usize, // total variables (no rhs)
    a: Vec<f64>, // rows × cols
    b: Vec<f64>,
    basis: Vec<usize>,
}

impl Tableau {
    #[inline]
    fn at(&self, r: usize, c: usize) -> f64 {
        self.a[r * self.cols + c]
    }

    fn pivot(&mut self, pr: usize, pc: usize) {
        let piv = self.at(pr, pc);
        let inv = 1.0 / piv;
        for c in 0..self.cols {
            self.a[pr * self.cols + c] *= inv;
        }
        self.b[pr] *= inv;
        for r in 0..self.rows {
            if r == pr {
                continue;
            }
            let factor = self.at(r, pc);
            if factor == 0.0 {
                continue;
            }
            for c in 0..self.cols {
                let v = self.at(pr, c);
                if v != 0.0 {
                    self.a[r * self.cols + c] -= factor * v;
                }
            }
            self.b[r] -= factor * self.b[pr];
            // scrub the pivot column exactly
            self.a[r * self.cols + pc] = 0.0;
        }
        self.basis[pr] = pc;
    }
}

enum PhaseOutcome {
    Converged { objective: f64 },
    Unbounded,
    IterationLimit,
}

/// Runs simplex minimizing `cost` over the current tableau.  `banned`
/// columns never enter the basis.
fn run_simplex(
    t: &mut Tableau,
    cost: &[f64],
    banned: &[bool],
    pivot_tol: f64,
    max_iters: usize,
    iterations: &mut usize,
) -> PhaseOutcome {
    let mut stall = 0usize;
    let mut bland = false;
    let mut last_obj = f64::INFINITY;
    for _ in 0..max_iters {
        *iterations += 1;
        // reduced costs r_j = c_j − c_B · col_j
        let mut enter: Option<(usize, f64)> = None;
        for j in 0..t.cols {
            if banned[j] || t.basis.contains(&j) {
                continue;
            }
            let mut r = cost[j];
            for (row, &bv) in t.basis.iter().enumerate() {
                let cb = cost[bv];
                if cb != 0.0 {
                    r -= cb * t.at(row, j);
                }
            }
            if r < -pivot_tol {
                if bland {
                    enter = Some((j, r));
                    break;
                }
                match enter {
                    Some((_, best)) if r >= best => {}
                    _ => enter = Some((j, r)),
                }
            }
        }
        let Some((pc, _)) = enter else {
            let obj: f64 = t.basis.iter().enumerate().map(|(r, &bv)| cost[bv] * t.b[r]).sum();
            return PhaseOutcome::Converged { objective: obj };
        };

        // ratio test; ties break toward the lowest basis variable index
        let mut leave: Option<(usize, f64)> = None;
        for r in 0..t.rows {
            let coef = t.at(r, pc);
            if coef > pivot_tol {
                let ratio = t.b[r] / coef;
                match leave {
                    Some((lr, best)) => {
                        if ratio < best - 1e-12
                            || (ratio < best + 1e-12 && t.basis[r] < t.basis[lr])
                        {
                            leave = Some((r, ratio));
                        }
                    }
                    None => leave = Some((r, ratio)),
                }
            }
        }
        let Some((pr, _)) = leave else {
            return PhaseOutcome::Unbounded;
        };

        t.pivot(pr, pc);

        let obj: f64 = t.basis.iter().enumerate().map(|(r, &bv)| cost[bv] * t.b[r]).sum();
        if obj >= last_obj - 1e-13 * (1.0 + last_obj.abs()) {
            stall += 1;
            if stall > 200 {
                bland = true;
            }
        } else {
            stall = 0;
        }
        last_obj = obj;
    }
    PhaseOutcome::IterationLimit
}

/// Solve the LP to within `tol` of the true optimum.
pub fn lp_solve(p: &LinearProgram, tol: f64) -> Result<SolveReport, SolverError> {
    p.validate()?;
    let n = p.objective.len();
    let n_eq = p.eq_lhs.len();
    let n_ineq = p.ineq_lhs.len();
    let rows = n_eq + n_ineq;
    let pivot_tol = tol.clamp(1e-12, 1e-7);

    // columns: x⁺ (n) | x⁻ (n) | slack (n_ineq) | artificial (n_eq)
    let n_slack = n_ineq;
    let n_art = n_eq;
    let cols = 2 * n + n_slack + n_art;
    let slack0 = 2 * n;
    let art0 = 2 * n + n_slack;

    let mut a = vec![0.0f64; rows * cols];
    let mut b = vec![0.0f64; rows];
    let mut flipped = vec![false; rows];
    let mut basis = vec![0usize; rows];

    // equality rows come first, with rhs made nonnegative
    for (r, (lhs, &rhs)) in p.eq_lhs.iter().zip(&p.eq_rhs).enumerate() {
        let sign = if rhs < 0.0 { -1.0 } else { 1.0 };
        flipped[r] = rhs < 0.0;
        for (j, &v) in lhs.iter().enumerate() {
            a[r * cols + j] = sign * v;
            a[r * cols + n + j] = -sign * v;
        }
        b[r] = sign * rhs;
        a[r * cols + art0 + r] = 1.0;
        basis[r] = art0 + r;
    }
    // inequality rows `Ax − s = 0` enter negated so the slack starts basic
    for (i, lhs) in p.ineq_lhs.iter().enumerate() {
        let r = n_eq + i;
        for (j, &v) in lhs.iter().enumerate() {
            a[r * cols + j] = -v;
            a[r * cols + n + j] = v;
        }
        a[r * cols + slack0 + i] = 1.0;
        basis[r] = slack0 + i;
    }

    let mut t = Tableau {
        rows,
        cols,
        a,
        b,
        basis,
    };
    let mut iterations = 0usize;
    let max_iters = 20_000 + 200 * rows.max(1);
    let banned_none = vec![false; cols];

    // Phase 1: minimize the artificial total.
    if n_art > 0 {
        let mut cost1 = vec![0.0f64; cols];
        for j in art0..cols {
            cost1[j] = 1.0;
        }
        match run_simplex(&mut t, &cost1, &banned_none, pivot_tol, max_iters, &mut iterations) {
            PhaseOutcome::Converged { objective } => {
                let scale = 1.0 + p.eq_rhs.iter().map(|v| v.abs()).fold(0.0, f64::max);
                if objective > 1e-7 * scale {
                    return Ok(infeasible_report(objective, iterations));
                }
            }
            PhaseOutcome::Unbounded => {
                return Err(SolverError::BadProgram(
                    "phase-1 objective unbounded; numerically degenerate input".into(),
                ));
            }
            PhaseOutcome::IterationLimit => {
                return Ok(max_iter_report(iterations));
            }
        }
        // Pivot leftover artificials out of the basis where possible.
        for r in 0..t.rows {
            if t.basis[r] >= art0 {
                if let Some(pc) = (0..art0).find(|&j| t.at(r, j).abs() > 1e-9) {
                    t.pivot(r, pc);
                }
            }
        }
    }

    // Phase 2: minimize the negated objective, artificials banned.
    let mut cost2 = vec![0.0f64; cols];
    for j in 0..n {
        cost2[j] = -p.objective[j];
        cost2[n + j] = p.objective[j];
    }
    let mut banned = vec![false; cols];
    for flag in banned.iter_mut().skip(art0) {
        *flag = true;
    }
    let outcome = run_simplex(&mut t, &cost2, &banned, pivot_tol, max_iters, &mut iterations);

    match outcome {
        PhaseOutcome::Unbounded => Ok(SolveReport {
            status: SolveStatus::Unbounded,
            primal_value: f64::INFINITY,
            dual_value: f64::INFINITY,
            primal_solution: vec![],
            dual_solution: vec![],
            iterations,
            residuals: Residuals {
                primal: f64::NAN,
                dual: f64::NAN,
                gap: f64::NAN,
            },
        }),
        PhaseOutcome::IterationLimit => Ok(max_iter_report(iterations)),
        PhaseOutcome::Converged { objective } => {
            let mut x = vec![0.0f64; n];
            for (r, &bv) in t.basis.iter().enumerate() {
                if bv < n {
                    x[bv] += t.b[r];
                } else if bv < 2 * n {
                    x[bv - n] -= t.b[r];
                }
            }
            let primal_value = -objective;

            // Duals read off the reference columns: the reduced cost of an
            // artificial (equality rows) or slack (inequality rows) is −y_r
            // in standard form; undo the row sign flips for equality rows.
            let reduced = |j: usize| -> f64 {
                let mut r = cost2[j];
                for (row, &bv) in t.basis.iter().enumerate() {
                    let cb = cost2[bv];
                    if cb != 0.0 {
                        r -= cb * t.at(row, j);
                    }
                }
                r
            };
            // The tableau minimizes the negated objective, so its duals are
            // negated relative to the maximize convention reported here.
            let mut dual_value = 0.0;
            let mut y_eq = vec![0.0f64; n_eq];
            for r in 0..n_eq {
                let y_std = -reduced(art0 + r);
                let y_min = if flipped[r] { -y_std } else { y_std };
                y_eq[r] = -y_min;
                dual_value += y_eq[r] * p.eq_rhs[r];
            }
            let mut y_ineq = vec![0.0f64; n_ineq];
            for (i, slot) in y_ineq.iter_mut().enumerate() {
                // inequality rows are stored negated, cancelling the sign flip
                *slot = reduced(slack0 + i);
            }

            // residuals against the original data
            let mut primal_res = 0.0f64;
            for (lhs, &rhs) in p.eq_lhs.iter().zip(&p.eq_rhs) {
                let v: f64 = lhs.iter().zip(&x).map(|(a, b)| a * b).sum();
                primal_res = primal_res.max((v - rhs).abs());
            }
            for lhs in &p.ineq_lhs {
                let v: f64 = lhs.iter().zip(&x).map(|(a, b)| a * b).sum();
                primal_res = primal_res.max((-v).max(0.0));
            }
            let gap = (primal_value - dual_value).abs();

            Ok(SolveReport {
                status: SolveStatus::Optimal,
                primal_value,
                dual_value,
                primal_solution: vec![SolutionBlock::Vector(x)],
                dual_solution: vec![
                    SolutionBlock::Vector(y_eq),
                    SolutionBlock::Vector(y_ineq),
                ],
                iterations,
                residuals: Residuals {
                    primal: primal_res,
                    dual: 0.0,
                    gap,
                },
            })
        }
    }
}

fn infeasible_report(resid: f64, iterations: usize) -> SolveReport {
    SolveReport {
        status: SolveStatus::Infeasible,
        primal_value: f64::NAN,
        dual_value: f64::NAN,
        primal_solution: vec![],
        dual_solution: vec![],
        iterations,
        residuals: Residuals {
            primal: resid,
            dual: f64::NAN,
            gap: f64::NAN,
        },
    }
}

fn max_iter_report(iterations: usize) -> SolveReport {
    SolveReport {
        status: SolveStatus::MaxIters,
        primal_value: f64::NAN,
        dual_value: f64::NAN,
        primal_solution: vec![],
        dual_solution: vec![],
        iterations,
        residuals: Residuals {
            primal: f64::NAN,
            dual: f64::NAN,
            gap: f64::NAN,
        },
    }
}
