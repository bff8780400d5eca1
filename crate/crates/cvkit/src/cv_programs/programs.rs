//! Conic program builders for the PPT, entanglement-assisted, and
//! k-symmetric-extension relaxations, plus the solve drivers that wrap them
//! into [`CvResult`]s.

use super::{CvError, CvKind, CvMeta, CvResult, SolverMeta};
use crate::channels::ChoiMatrix;
use crate::conic::svec::{self, perm_partial_transpose, perm_relabel, swap_factors_relabel, SignedPerm};
use crate::conic::{
    sdp_solve_with, Block, BlockShape, Cone, ConicProgram, Constraint, LinTerm, SdpOptions,
    SolveReport, WarmStart,
};
use crate::matops::{
    hermitian_eig, partial_transpose, tensor, BipartiteDims, ComplexMatrix, Sys,
};

/// Default cap on the total dimension of any operator a builder may create.
/// Override with the `CVKIT_MAX_DIM` environment variable.
pub const MAX_TOTAL_DIM_DEFAULT: usize = 4096;

/// Enforce the dimension guard on a proposed total operator dimension.
pub fn dimension_guard(total: usize) -> Result<(), CvError> {
    let limit = std::env::var("CVKIT_MAX_DIM")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .unwrap_or(MAX_TOTAL_DIM_DEFAULT);
    if total > limit {
        return Err(CvError::Guard(format!(
            "operator dimension {total} exceeds the limit {limit} (set CVKIT_MAX_DIM to raise)"
        )));
    }
    Ok(())
}

/// Rows pinning `Tr_{all factors besides `keep`}(X) = I` on a Hermitian
/// block over the given factors.
fn marginal_identity_rows(
    block: usize,
    factor_dims: &[usize],
    keep: usize,
) -> Vec<Constraint> {
    let n: usize = factor_dims.iter().product();
    let d_keep = factor_dims[keep];
    let stride: usize = factor_dims[keep + 1..].iter().product();
    let ctx_dims: Vec<usize> = factor_dims[..keep]
        .iter()
        .chain(factor_dims[keep + 1..].iter())
        .copied()
        .collect();
    let ctx_total: usize = ctx_dims.iter().product();
    // composite index with the kept digit spliced back in
    let compose = |ctx: usize, digit: usize| -> usize {
        let right = ctx % stride;
        let left = ctx / stride;
        (left * d_keep + digit) * stride + right
    };
    let inv_sqrt2 = 1.0 / svec::SQRT2;

    let mut rows = Vec::with_capacity(d_keep * d_keep);
    for p in 0..d_keep {
        for q in p..d_keep {
            if p == q {
                let entries: Vec<(usize, f64)> = (0..ctx_total)
                    .map(|ctx| (svec::diag_index(n, compose(ctx, p)), 1.0))
                    .collect();
                rows.push(Constraint {
                    terms: vec![LinTerm { block, entries }],
                    rhs: 1.0,
                });
            } else {
                let re: Vec<(usize, f64)> = (0..ctx_total)
                    .map(|ctx| {
                        (
                            svec::re_index(n, compose(ctx, p), compose(ctx, q)),
                            inv_sqrt2,
                        )
                    })
                    .collect();
                let im: Vec<(usize, f64)> = (0..ctx_total)
                    .map(|ctx| {
                        (
                            svec::im_index(n, compose(ctx, p), compose(ctx, q)),
                            inv_sqrt2,
                        )
                    })
                    .collect();
                rows.push(Constraint {
                    terms: vec![LinTerm { block, entries: re }],
                    rhs: 0.0,
                });
                rows.push(Constraint {
                    terms: vec![LinTerm { block, entries: im }],
                    rhs: 0.0,
                });
            }
        }
    }
    rows
}

/// Rows coupling `dst = perm(src)` coordinate by coordinate.
fn coupling_rows(dst: usize, src: usize, perm: &SignedPerm) -> Vec<Constraint> {
    (0..perm.len())
        .map(|k| {
            let (s, sign) = perm.entry(k);
            Constraint {
                terms: vec![LinTerm::single(dst, k, 1.0), LinTerm::single(src, s, -sign)],
                rhs: 0.0,
            }
        })
        .collect()
}

/// Rows pinning a block to a signed-permutation symmetry `X = perm(X)`.
fn invariance_rows(block: usize, perm: &SignedPerm) -> Vec<Constraint> {
    let mut rows = Vec::new();
    for k in 0..perm.len() {
        let (src, sign) = perm.entry(k);
        if src == k {
            if sign < 0.0 {
                rows.push(Constraint {
                    terms: vec![LinTerm::single(block, k, 1.0)],
                    rhs: 0.0,
                });
            }
        } else if src > k {
            rows.push(Constraint {
                terms: vec![LinTerm::single(block, k, 1.0), LinTerm::single(block, src, -sign)],
                rhs: 0.0,
            });
        }
    }
    rows
}

/// PPT relaxation, primal side:
/// maximize `Tr[J Ω]` s.t. `Tr_A Ω = I_B`, `Ω ⪰ 0`, `Γ_B(Ω) ⪰ 0`.
/// The transpose condition is carried by a mirrored PSD block `Y` coupled
/// through `Y = Γ_B(Ω)`, so the solver only ever projects onto plain PSD
/// cones.
pub fn build_ppt_primal(j: &ChoiMatrix) -> ConicProgram {
    build_symk_program(j, 1)
}

/// k-symmetric-extension relaxation, primal side: the optimizer `Ω` must be
/// the marginal of an extension `Ω̃` on `A ⊗ B^⊗k` that is invariant under
/// permutations of the B factors and PPT across the first B cut.  `k = 1`
/// reduces exactly to the PPT primal program.
pub fn build_symk_primal(j: &ChoiMatrix, k: usize) -> Result<ConicProgram, CvError> {
    assert!(k >= 1, "extension level must be at least 1");
    let total = j.dim_in() * j.dim_out().pow(k as u32);
    dimension_guard(total)?;
    Ok(build_symk_program(j, k))
}

fn build_symk_program(j: &ChoiMatrix, k: usize) -> ConicProgram {
    let da = j.dim_in();
    let db = j.dim_out();
    let mut factor_dims = vec![da];
    factor_dims.extend(std::iter::repeat_n(db, k));
    let n_ext: usize = factor_dims.iter().product();

    let mut prog = ConicProgram::new(vec![
        Block {
            shape: BlockShape::Herm(n_ext),
            cone: Cone::Psd,
        },
        Block {
            shape: BlockShape::Herm(n_ext),
            cone: Cone::Psd,
        },
    ]);

    // objective ⟨J ⊗ I_rest, Ω̃⟩ = ⟨J, Tr_{B₂..k} Ω̃⟩
    let rest: usize = factor_dims[2..].iter().product();
    let obj = if rest == 1 {
        j.matrix().clone()
    } else {
        tensor(j.matrix(), &ComplexMatrix::identity(rest))
    };
    prog.objective.push(LinTerm::from_hermitian(0, &obj));

    // mirror block Y = Γ_{B₁}(Ω̃)
    let gamma = perm_partial_transpose(&factor_dims, 1);
    prog.constraints.extend(coupling_rows(1, 0, &gamma));

    // permutation invariance across B factors (adjacent transpositions
    // generate the symmetric group)
    for t in 1..k {
        let relabel = swap_factors_relabel(&factor_dims, t);
        let perm = perm_relabel(n_ext, &relabel);
        prog.constraints.extend(invariance_rows(0, &perm));
    }

    // Tr_{A, B₂..k} Ω̃ = I_{B₁}
    prog.constraints
        .extend(marginal_identity_rows(0, &factor_dims, 1));
    prog
}

/// PPT relaxation, dual side:
/// minimize `Tr Y₁` s.t. `I_A ⊗ Y₁ − Γ_B(Y₂) − J ⪰ 0`, `Y₂ ⪰ 0`.
/// Cast in max form with blocks `(Y₁ free, W, S)`, where `W = Γ_B(Y₂)` is
/// carried directly on the partial-transpose cone and `S` is the PSD slack:
/// `I ⊗ Y₁ − W − S = J`.
pub fn build_ppt_dual(j: &ChoiMatrix) -> ConicProgram {
    let da = j.dim_in();
    let db = j.dim_out();
    let n = da * db;
    let dims = BipartiteDims::new(da, db);

    let mut prog = ConicProgram::new(vec![
        Block {
            shape: BlockShape::Herm(db),
            cone: Cone::Free,
        },
        Block {
            shape: BlockShape::Herm(n),
            cone: Cone::PsdPartialTranspose { dims, sys: Sys::B },
        },
        Block {
            shape: BlockShape::Herm(n),
            cone: Cone::Psd,
        },
    ]);
    prog.objective.push(LinTerm::from_hermitian(
        0,
        &ComplexMatrix::identity(db).scale_re(-1.0),
    ));

    let jv = svec::svec(j.matrix());
    // I ⊗ Y₁ couples each AB coordinate with equal A indices to the
    // matching Y₁ coordinate
    for p in 0..db {
        for q in p..db {
            for ia in 0..da {
                let (i, jdx) = (ia * db + p, ia * db + q);
                if p == q {
                    let coord = svec::diag_index(n, i);
                    prog.constraints.push(Constraint {
                        terms: vec![
                            LinTerm::single(0, svec::diag_index(db, p), 1.0),
                            LinTerm::single(1, coord, -1.0),
                            LinTerm::single(2, coord, -1.0),
                        ],
                        rhs: jv[coord],
                    });
                } else {
                    for coord_of in [svec::re_index, svec::im_index] {
                        let coord = coord_of(n, i, jdx);
                        prog.constraints.push(Constraint {
                            terms: vec![
                                LinTerm::single(0, coord_of(db, p, q), 1.0),
                                LinTerm::single(1, coord, -1.0),
                                LinTerm::single(2, coord, -1.0),
                            ],
                            rhs: jv[coord],
                        });
                    }
                }
            }
        }
    }
    // AB coordinates with distinct A indices see no Y₁ contribution
    for ia in 0..da {
        for ja in (ia + 1)..da {
            for p in 0..db {
                for q in 0..db {
                    let (i, jdx) = (ia * db + p, ja * db + q);
                    debug_assert!(i < jdx);
                    for coord_of in [svec::re_index, svec::im_index] {
                        let coord = coord_of(n, i, jdx);
                        prog.constraints.push(Constraint {
                            terms: vec![
                                LinTerm::single(1, coord, -1.0),
                                LinTerm::single(2, coord, -1.0),
                            ],
                            rhs: jv[coord],
                        });
                    }
                }
            }
        }
    }
    prog
}

/// Entanglement-assisted program: maximize `Tr[J σ]` over the full positive
/// cone with `Tr_A σ = I_B`.
pub fn build_ea_primal(j: &ChoiMatrix) -> ConicProgram {
    let n = j.dims().total();
    let mut prog = ConicProgram::new(vec![Block {
        shape: BlockShape::Herm(n),
        cone: Cone::Psd,
    }]);
    prog.objective.push(LinTerm::from_hermitian(0, j.matrix()));
    prog.constraints
        .extend(marginal_identity_rows(0, &[j.dim_in(), j.dim_out()], 1));
    prog
}

fn solve_to_result(
    prog: &ConicProgram,
    kind: CvKind,
    value_sign: f64,
    tol: f64,
    max_iters: usize,
) -> Result<(CvResult, SolveReport, WarmStart), CvError> {
    let opts = SdpOptions {
        tol,
        max_iters,
        ..SdpOptions::default()
    };
    let (report, warm) = sdp_solve_with(prog, &opts)?;
    let value = value_sign * report.primal_value;
    let result = CvResult::new(kind, value, CvMeta::Solver(SolverMeta::from_report(&report)));
    Ok((result, report, warm))
}

/// Solve the PPT primal program.
pub fn ppt_primal_cv(j: &ChoiMatrix, tol: f64, max_iters: usize) -> Result<CvResult, CvError> {
    let prog = build_ppt_primal(j);
    let (result, _, _) = solve_to_result(&prog, CvKind::PptPrimal, 1.0, tol, max_iters)?;
    Ok(result)
}

/// Solve the PPT dual program and return a *certified* upper bound: the
/// dual feasible pair is repaired after the solve (`Y₂` clipped to PSD, `Y₁`
/// shifted by the residual slack), so the reported value genuinely
/// dominates the PPT value regardless of solver tolerance.  The raw solver
/// value stays available in the metadata.
pub fn ppt_dual_cv(j: &ChoiMatrix, tol: f64, max_iters: usize) -> Result<CvResult, CvError> {
    let prog = build_ppt_dual(j);
    let opts = SdpOptions {
        tol,
        max_iters,
        ..SdpOptions::default()
    };
    let (report, _) = sdp_solve_with(&prog, &opts)?;

    let y1 = report.primal_solution[0].as_matrix().hermitian_part();
    let w = report.primal_solution[1].as_matrix().hermitian_part();
    let dims = j.dims();
    let y2 = partial_transpose(&w, dims, Sys::B)?;
    let y2_psd = crate::conic::project_psd(&y2)?;
    let gamma_y2 = partial_transpose(&y2_psd, dims, Sys::B)?;
    let slack = tensor(&ComplexMatrix::identity(dims.dim_a), &y1)
        .sub(&gamma_y2)
        .sub(j.matrix());
    let (evals, _) = hermitian_eig(&slack.hermitian_part())?;
    let deficit = (-evals.last().copied().unwrap_or(0.0)).max(0.0);
    let value = y1.trace().re + deficit * dims.dim_b as f64;

    let mut meta = SolverMeta::from_report(&report);
    meta.primal_value = -report.primal_value; // solver ran the negated objective
    meta.dual_value = -report.dual_value;
    Ok(CvResult::new(CvKind::PptDual, value, CvMeta::Solver(meta)))
}

/// Solve the entanglement-assisted program.
pub fn ea_cv(j: &ChoiMatrix, tol: f64, max_iters: usize) -> Result<CvResult, CvError> {
    let prog = build_ea_primal(j);
    let (result, _, _) = solve_to_result(&prog, CvKind::Ea, 1.0, tol, max_iters)?;
    Ok(result)
}

/// Solve the k-symmetric-extension primal program.
pub fn symk_cv(j: &ChoiMatrix, k: usize, tol: f64, max_iters: usize) -> Result<CvResult, CvError> {
    let prog = build_symk_primal(j, k)?;
    let (result, _, _) = solve_to_result(&prog, CvKind::Symk { k }, 1.0, tol, max_iters)?;
    Ok(result)
}
