//! See-saw lower bounds and the output-purity ascent.
//!
//! The see-saw alternates the optimal decoding POVM (one SDP) with the
//! optimal signal states (top eigenvectors of the back-propagated POVM) and
//! converges onto achievable strategies from below; the `Λ²` ascent does
//! the same for the best product-state overlap with the Choi matrix.
//!
//! ```bash
//! cargo run --release --example seesaw_lower_bound
//! ```

use cvkit::channels::{amplitude_damping_channel, depolarizing_channel, dephrasure_channel};
use cvkit::closed_form::{dephrasure_cv, depolarizing_cv, qubit_cv};
use cvkit::cv_programs::{max_output_purity, ppt_dual_cv, seesaw_cv, SeesawConfig};

fn main() {
    let cfg = SeesawConfig {
        restarts: 8,
        iters_per_restart: 30,
        num_signals: None,
        seed: 0,
    };

    let dep = depolarizing_channel(2, 0.5).unwrap();
    let lower = seesaw_cv(&dep, &cfg);
    println!(
        "depolarizing(2, 0.5): seesaw {:.8}  exact {:.8}",
        lower.value,
        depolarizing_cv(2, 0.5)
    );

    let deph = dephrasure_channel(0.2, 0.3).unwrap();
    let lower = seesaw_cv(&deph, &cfg);
    let upper = ppt_dual_cv(&deph.choi(), 1e-8, 100_000).unwrap();
    println!(
        "dephrasure(0.2, 0.3): seesaw {:.8} ≤ cv = {:.8} ≤ dual {:.8}",
        lower.value,
        dephrasure_cv(0.2, 0.3),
        upper.value
    );

    let ad = amplitude_damping_channel(0.4).unwrap();
    let lam = max_output_purity(&ad, 10, 200, 0);
    let exact = qubit_cv(&ad).unwrap();
    println!(
        "amplitude-damping(0.4): Λ² {:.8}  bracket check Λ² ≤ cv {:.8} ≤ 2Λ² = {:.8}",
        lam.value,
        exact,
        2.0 * lam.value
    );
}
