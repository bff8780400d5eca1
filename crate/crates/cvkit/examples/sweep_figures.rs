//! The sweeps behind the headline figures, emitted as CSV through the same
//! code path the `cvkit sweep` command uses: dephrasure PPT value against
//! the erasure probability (a straight line `2 − q`), qubit-exact
//! amplitude damping against γ (`1 + √(1−γ)`), and the two-copy
//! Werner-Holevo LP across λ.
//!
//! ```bash
//! cargo run --release --example sweep_figures
//! ```

use cvkit::cli::{cmd_sweep, Method, SweepRequest};

fn sweep(template: &str, method: Method, copies: usize, start: f64, stop: f64, step: f64) {
    let req = SweepRequest {
        template: template.to_string(),
        start,
        stop,
        step,
        method,
        tol: 1e-7,
        seed: 0,
        restarts: 20,
        k: 1,
        copies,
    };
    match cmd_sweep(&req) {
        Ok(csv) => println!("{csv}"),
        Err(e) => eprintln!("sweep failed: {e}"),
    }
}

fn main() {
    sweep("dephrasure:p=0.1,q=?", Method::Ppt, 1, 0.0, 1.0, 0.25);
    sweep("amplitude-damping:gamma=?", Method::QubitExact, 1, 0.0, 1.0, 0.25);
    sweep("werner-holevo:d=3,lambda=?", Method::WhLp, 2, 0.0, 1.0, 0.1);
}
