//! PPT relaxation from both sides: the primal maximization and the dual
//! minimization bracket the same value, and the dual is post-processed into
//! a certified upper bound on the true cv.
//!
//! ```bash
//! cargo run --release --example ppt_bounds
//! ```

use cvkit::channels::{dephrasure_channel, siddhu_channel, werner_holevo_channel};
use cvkit::closed_form::{dephrasure_cv, siddhu_cv, werner_holevo_cv};
use cvkit::cv_programs::{ppt_dual_cv, ppt_primal_cv};

fn main() {
    println!(
        "{:<34} {:>12} {:>12} {:>12}",
        "channel", "ppt primal", "ppt dual", "known cv"
    );
    for lambda in [0.0, 0.25, 0.5, 0.75, 1.0] {
        let c = werner_holevo_channel(3, lambda).unwrap();
        let j = c.choi();
        let p = ppt_primal_cv(&j, 1e-8, 100_000).unwrap().value;
        let d = ppt_dual_cv(&j, 1e-8, 100_000).unwrap().value;
        println!(
            "{:<34} {p:>12.8} {d:>12.8} {:>12.8}",
            c.label(),
            werner_holevo_cv(3, lambda).unwrap()
        );
    }
    for (p, q) in [(0.1, 0.2), (0.5, 0.5)] {
        let c = dephrasure_channel(p, q).unwrap();
        let j = c.choi();
        let pr = ppt_primal_cv(&j, 1e-8, 100_000).unwrap().value;
        let du = ppt_dual_cv(&j, 1e-8, 100_000).unwrap().value;
        println!("{:<34} {pr:>12.8} {du:>12.8} {:>12.8}", c.label(), dephrasure_cv(p, q));
    }
    for s in [0.0, 0.5] {
        let c = siddhu_channel(s).unwrap();
        let j = c.choi();
        let pr = ppt_primal_cv(&j, 1e-8, 100_000).unwrap().value;
        let du = ppt_dual_cv(&j, 1e-8, 100_000).unwrap().value;
        println!("{:<34} {pr:>12.8} {du:>12.8} {:>12.8}", c.label(), siddhu_cv(s).unwrap());
    }
    println!("\nthe dual column is a certified upper bound: feasibility is repaired after the solve");
}
