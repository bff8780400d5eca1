//! Entanglement-assisted communication value: the positive-cone program
//! equals `1 + ‖A‖₁` on qubit channels and is multiplicative under tensor
//! products.
//!
//! ```bash
//! cargo run --release --example entanglement_assisted
//! ```

use cvkit::channels::tensor_channels;
use cvkit::closed_form::qubit_ea_cv;
use cvkit::cv_programs::ea_cv;
use cvkit::random::{random_qubit_channel, seeded_rng};

fn main() {
    let mut rng = seeded_rng(7);

    println!("qubit ea-cv: SDP vs 1 + trace norm of the correlation matrix");
    for i in 0..6 {
        let c = random_qubit_channel(&mut rng);
        let sdp = ea_cv(&c.choi(), 1e-8, 100_000).unwrap().value;
        let formula = qubit_ea_cv(&c).unwrap();
        println!("  #{i}: sdp {sdp:.8}  formula {formula:.8}  diff {:.2e}", (sdp - formula).abs());
    }

    println!("\nadditivity: ea(N⊗M) = ea(N)·ea(M)");
    for i in 0..3 {
        let n = random_qubit_channel(&mut rng);
        let m = random_qubit_channel(&mut rng);
        let ea_n = ea_cv(&n.choi(), 1e-8, 100_000).unwrap().value;
        let ea_m = ea_cv(&m.choi(), 1e-8, 100_000).unwrap().value;
        let joint = ea_cv(&tensor_channels(&n, &m).choi(), 1e-8, 200_000)
            .unwrap()
            .value;
        println!(
            "  pair #{i}: joint {joint:.8}  product {:.8}  rel diff {:.2e}",
            ea_n * ea_m,
            (joint - ea_n * ea_m).abs() / (ea_n * ea_m)
        );
    }
}
