//! Exact qubit communication value versus the PPT semidefinite program.
//!
//! For qubit channels the cv has the closed form `1 + σ_max(A)` from the
//! correlation matrix of the Choi operator, and at 2⊗2 the PPT relaxation
//! is tight — so the SDP must land on the same number.
//!
//! ```bash
//! cargo run --release --example qubit_exact
//! ```

use cvkit::closed_form::{qubit_cv, qubit_ea_cv};
use cvkit::cv_programs::ppt_primal_cv;
use cvkit::random::{random_qubit_channel, seeded_rng};

fn main() {
    let mut rng = seeded_rng(2024);
    println!("{:<10} {:>12} {:>12} {:>10} {:>12}", "channel", "exact", "ppt sdp", "|diff|", "ea exact");
    let mut worst: f64 = 0.0;
    for i in 0..12 {
        let c = random_qubit_channel(&mut rng);
        let exact = qubit_cv(&c).unwrap();
        let sdp = ppt_primal_cv(&c.choi(), 1e-8, 100_000).unwrap().value;
        let ea = qubit_ea_cv(&c).unwrap();
        let diff = (exact - sdp).abs();
        worst = worst.max(diff);
        println!("random #{i:<2} {exact:>12.8} {sdp:>12.8} {diff:>10.2e} {ea:>12.8}");
    }
    println!("\nworst |exact − sdp| over 12 channels: {worst:.2e}");
}
