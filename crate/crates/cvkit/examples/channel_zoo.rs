//! Tour of the builtin channels: construct each one, check its Choi
//! matrix, and print the known communication value next to the universal
//! bracket.
//!
//! ```bash
//! cargo run --release --example channel_zoo
//! ```

use cvkit::channels::*;
use cvkit::closed_form::*;
use cvkit::matops::{partial_trace, Sys};

fn line(c: &QuantumChannel, formula: Option<f64>) {
    let j = c.choi();
    let (lo, hi) = cv_bounds(c);
    let marginal_ok = {
        let tb = partial_trace(j.matrix(), j.dims(), Sys::B).unwrap();
        let mut defect: f64 = 0.0;
        for i in 0..c.dim_in() {
            for k in 0..c.dim_in() {
                let expect = if i == k { 1.0 } else { 0.0 };
                defect = defect.max((tb.get(i, k).re - expect).abs() + tb.get(i, k).im.abs());
            }
        }
        defect < 1e-9
    };
    println!(
        "{:<32} dims {}→{}  bracket [{lo}, {hi}]  cv {}  choi marginal ok: {marginal_ok}",
        c.label(),
        c.dim_in(),
        c.dim_out(),
        formula.map_or("—".to_string(), |v| format!("{v:.6}")),
    );
}

fn main() {
    println!("builtin channel zoo\n");

    line(&identity_channel(3), Some(3.0));

    let mixed = cvkit::matops::ComplexMatrix::identity(2).scale_re(0.5);
    line(&replacer_channel(&mixed).unwrap(), Some(1.0));

    let pauli = pauli_channel([0.5, 0.5, 0.0, 0.0]).unwrap();
    line(&pauli, Some(qubit_cv(&pauli).unwrap()));

    line(
        &depolarizing_channel(3, 0.4).unwrap(),
        Some(depolarizing_cv(3, 0.4)),
    );
    line(
        &werner_holevo_channel(3, 0.0).unwrap(),
        Some(werner_holevo_cv(3, 0.0).unwrap()),
    );
    line(
        &dephrasure_channel(0.1, 0.2).unwrap(),
        Some(dephrasure_cv(0.1, 0.2)),
    );
    line(&siddhu_channel(0.3).unwrap(), Some(siddhu_cv(0.3).unwrap()));

    let ad = amplitude_damping_channel(0.5).unwrap();
    line(&ad, Some(qubit_cv(&ad).unwrap()));

    let bsc = ClassicalChannel::new(vec![vec![0.9, 0.1], vec![0.1, 0.9]]).unwrap();
    println!(
        "\nclassical binary symmetric channel, flip 0.1: cv = {}",
        classical_cv(&bsc)
    );
    line(&classical_channel(&bsc), Some(classical_cv(&bsc)));
}
