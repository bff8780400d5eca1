//! Direct use of the conic back ends, independent of channels: a λ_max
//! semidefinite program, a nearest-PSD projection, and a small linear
//! program, plus the self-describing JSON dump of a conic program.
//!
//! ```bash
//! cargo run --release --example solver_demo
//! ```

use cvkit::conic::svec::svec;
use cvkit::conic::{
    lp_solve, project_psd, sdp_solve, Block, BlockShape, Cone, ConicProgram, Constraint,
    LinearProgram, LinTerm,
};
use cvkit::matops::ComplexMatrix;

fn main() {
    // λ_max(diag(3, 1)) as: max −t s.t. S = tI − A, S ⪰ 0
    let a = ComplexMatrix::from_real_rows(&[vec![3.0, 0.0], vec![0.0, 1.0]]);
    let mut prog = ConicProgram::new(vec![
        Block { shape: BlockShape::Vec(1), cone: Cone::Free },
        Block { shape: BlockShape::Herm(2), cone: Cone::Psd },
    ]);
    prog.objective.push(LinTerm::single(0, 0, -1.0));
    let id = svec(&ComplexMatrix::identity(2));
    let av = svec(&a);
    for (k, (&ik, &ak)) in id.iter().zip(&av).enumerate() {
        let mut terms = vec![LinTerm::single(1, k, 1.0)];
        if ik != 0.0 {
            terms.push(LinTerm::single(0, 0, -ik));
        }
        prog.constraints.push(Constraint { terms, rhs: -ak });
    }
    let report = sdp_solve(&prog, 1e-9, 100_000).unwrap();
    println!(
        "λ_max SDP: value {:.9} (expect 3), status {:?}, {} iterations, gap {:.1e}",
        -report.primal_value, report.status, report.iterations, report.residuals.gap
    );
    println!("program dump starts: {}...", &prog.to_debug_json()[..60]);

    // nearest PSD matrix
    let m = ComplexMatrix::from_real_rows(&[vec![1.0, 2.0], vec![2.0, -1.0]]);
    let p = project_psd(&m).unwrap();
    println!(
        "\nnearest-PSD of [[1,2],[2,-1]]: min eigenvalue {:.2e}",
        p.min_eigenvalue()
    );

    // LP: max x + y s.t. x + 2y = 1, x ≥ 0, y ≥ 0
    let lp = LinearProgram {
        objective: vec![1.0, 1.0],
        eq_lhs: vec![vec![1.0, 2.0]],
        eq_rhs: vec![1.0],
        ineq_lhs: vec![vec![1.0, 0.0], vec![0.0, 1.0]],
    };
    let r = lp_solve(&lp, 1e-9).unwrap();
    println!(
        "\nLP: value {:.9} (expect 1 at the vertex x=1), dual {:.9}, {} pivots",
        r.primal_value, r.dual_value, r.iterations
    );
}
