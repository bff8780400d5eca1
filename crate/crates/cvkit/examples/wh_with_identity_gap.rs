//! PPT relaxation of `W_{d,λ} ⊗ id_{d'}`: the true cv is exactly
//! `d' · cv(W_{d,λ})`, but the PPT value can sit strictly above it — a
//! clean separation between the relaxation and the real quantity.
//!
//! ```bash
//! cargo run --release --example wh_with_identity_gap
//! ```

use cvkit::closed_form::werner_holevo_cv;
use cvkit::cv_programs::wh_id_lp;

fn main() {
    let (d, dp) = (3, 2);
    println!("W_{{d,λ}} ⊗ id_{{d'}} with d = {d}, d' = {dp}");
    println!(
        "{:>6} {:>14} {:>14} {:>12}",
        "λ", "d'·cv (exact)", "ppt value", "gap"
    );
    for i in 0..=10 {
        let lambda = i as f64 / 10.0;
        let exact = dp as f64 * werner_holevo_cv(d, lambda).unwrap();
        let (_, lp) = wh_id_lp(d, dp, lambda).unwrap();
        println!(
            "{lambda:>6.2} {exact:>14.8} {:>14.8} {:>12.3e}",
            lp.value,
            lp.value - exact
        );
    }
}
