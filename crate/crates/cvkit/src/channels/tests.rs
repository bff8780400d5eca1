use super::*;
use crate::matops::{
    partial_transpose, permute_factors, phi_plus, swap_operator, ComplexMatrix, Sys,
};
use crate::random::{random_channel, random_density, random_hermitian, seeded_rng};

fn assert_close(a: f64, b: f64, tol: f64) {
    assert!((a - b).abs() <= tol, "expected {b}, got {a} (tol {tol})");
}

fn assert_mat_close(a: &ComplexMatrix, b: &ComplexMatrix, tol: f64) {
    let diff = a.sub(b).max_abs();
    assert!(diff <= tol, "matrices differ by {diff} (tol {tol})");
}

#[test]
fn choi_of_identity_is_phi_plus() {
    let j = identity_channel(2).choi();
    assert_mat_close(j.matrix(), &phi_plus(2), 1e-14);
    assert!(j.validate().is_ok());
}

#[test]
fn choi_of_depolarizing_matches_closed_form() {
    for &(d, l) in &[(2usize, 0.3f64), (3, 0.0), (3, 1.0), (4, 0.7)] {
        let j = depolarizing_channel(d, l).unwrap().choi();
        assert_mat_close(j.matrix(), &depolarizing_choi(d, l), 1e-12);
    }
}

#[test]
fn choi_of_werner_holevo_matches_projector_form() {
    for &(d, l) in &[(2usize, 0.5f64), (3, 0.0), (3, 0.25), (4, 1.0)] {
        let j = werner_holevo_channel(d, l).unwrap().choi();
        assert_mat_close(j.matrix(), &werner_holevo_choi(d, l), 1e-10);
    }
}

#[test]
fn werner_holevo_antisymmetric_point() {
    // At λ=0 the Choi matrix is (I − F)/(d−1).
    for d in [2usize, 3, 5] {
        let j = werner_holevo_channel(d, 0.0).unwrap().choi();
        let expect = ComplexMatrix::identity(d * d)
            .sub(&swap_operator(d))
            .scale_re(1.0 / (d as f64 - 1.0));
        assert_mat_close(j.matrix(), &expect, 1e-10);
    }
}

#[test]
fn apply_examples() {
    let mut rng = seeded_rng(3);
    let rho = random_density(&mut rng, 2);

    let dep0 = depolarizing_channel(2, 0.0).unwrap();
    let out = dep0.apply(&rho).unwrap();
    assert_mat_close(&out, &ComplexMatrix::identity(2).scale_re(0.5), 1e-12);

    let id = identity_channel(2);
    assert_mat_close(&id.apply(&rho).unwrap(), &rho, 1e-15);
    assert_close(out.trace().re, 1.0, 1e-12);

    // Siddhu channel sends |1⟩⟨1| (and |2⟩⟨2|) to |2⟩⟨2|.
    let sid = siddhu_channel(0.3).unwrap();
    for k in [1usize, 2] {
        let basis = ComplexMatrix::from_fn(3, 3, |i, j| {
            if i == k && j == k {
                crate::matops::C64::new(1.0, 0.0)
            } else {
                crate::matops::C64::new(0.0, 0.0)
            }
        });
        let out = sid.apply(&basis).unwrap();
        assert_close(out.get(2, 2).re, 1.0, 1e-12);
        assert_close(out.sub(&ComplexMatrix::zeros(3, 3)).max_abs(), 1.0, 1e-12);
    }
}

#[test]
fn adjoint_examples() {
    let mut rng = seeded_rng(5);
    let id = identity_channel(3);
    let x = random_hermitian(&mut rng, 3);
    assert_mat_close(&id.adjoint_apply(&x).unwrap(), &x, 1e-15);

    // trace-preservation dual: N†(I) = I
    for c in [
        depolarizing_channel(3, 0.4).unwrap(),
        werner_holevo_channel(3, 0.2).unwrap(),
        dephrasure_channel(0.3, 0.6).unwrap(),
        random_channel(&mut rng, 2, 3, "r"),
    ] {
        let img = c.adjoint_apply(&ComplexMatrix::identity(c.dim_out())).unwrap();
        assert_mat_close(&img, &ComplexMatrix::identity(c.dim_in()), 1e-9);
    }

    // depolarizing adjoint closed form, and ⟨N†(Π),ρ⟩ = ⟨Π,N(ρ)⟩
    let dep = depolarizing_channel(2, 0.7).unwrap();
    let pi = random_hermitian(&mut rng, 2);
    let adj = dep.adjoint_apply(&pi).unwrap();
    let expect = pi
        .scale_re(0.7)
        .add(&ComplexMatrix::identity(2).scale_re(0.3 * pi.trace().re / 2.0));
    assert_mat_close(&adj, &expect, 1e-12);
    for _ in 0..20 {
        let rho = random_density(&mut rng, 2);
        let pi = random_hermitian(&mut rng, 2);
        let lhs = dep.adjoint_apply(&pi).unwrap().inner_re(&rho);
        let rhs = pi.inner_re(&dep.apply(&rho).unwrap());
        assert_close(lhs, rhs, 1e-11);
    }
}

#[test]
fn tensor_channels_examples() {
    let t = tensor_channels(&identity_channel(2), &identity_channel(2));
    assert_mat_close(t.choi().matrix(), identity_channel(4).choi().matrix(), 1e-12);

    let w = werner_holevo_channel(3, 0.0).unwrap();
    let ww = tensor_channels(&w, &w);
    assert_eq!(ww.dim_in(), 9);
    assert_eq!(ww.dim_out(), 9);
}

#[test]
fn tensor_choi_is_permuted_tensor_of_chois() {
    // Oracle: reorder the factors of choi(c1) ⊗ choi(c2) from (A B A' B')
    // to (A A' B B').
    let mut rng = seeded_rng(9);
    let c1 = random_channel(&mut rng, 2, 2, "c1");
    let c2 = random_channel(&mut rng, 2, 2, "c2");
    let j1 = c1.choi();
    let j2 = c2.choi();
    let kron = crate::matops::tensor(j1.matrix(), j2.matrix());
    let expect = permute_factors(&kron, &[2, 2, 2, 2], &[0, 2, 1, 3]).unwrap();
    let got = tensor_channels(&c1, &c2).choi();
    assert_mat_close(got.matrix(), &expect, 1e-12);
}

#[test]
fn builtins_are_cptp_with_valid_chois() {
    let mut zoo: Vec<QuantumChannel> = vec![
        identity_channel(3),
        replacer_channel(&ComplexMatrix::identity(2).scale_re(0.5)).unwrap(),
        pauli_channel([0.25, 0.25, 0.25, 0.25]).unwrap(),
        pauli_channel([0.5, 0.5, 0.0, 0.0]).unwrap(),
        amplitude_damping_channel(0.35).unwrap(),
    ];
    for l in [0.0, 0.33, 1.0] {
        zoo.push(depolarizing_channel(3, l).unwrap());
        zoo.push(werner_holevo_channel(3, l).unwrap());
    }
    for (p, q) in [(0.0, 0.0), (0.1, 0.2), (1.0, 0.5)] {
        zoo.push(dephrasure_channel(p, q).unwrap());
    }
    for s in [0.0, 0.25, 0.5] {
        zoo.push(siddhu_channel(s).unwrap());
    }
    let bsc = ClassicalChannel::new(vec![vec![0.9, 0.1], vec![0.1, 0.9]]).unwrap();
    zoo.push(classical_channel(&bsc));

    for c in &zoo {
        // QuantumChannel::new already enforced completeness; re-check Choi.
        c.choi().validate().unwrap_or_else(|e| panic!("{}: {e}", c.label()));
    }
}

#[test]
fn choi_apply_consistency() {
    // Tr[(ρᵀ ⊗ Π) J] = Tr[Π N(ρ)] on random pairs.
    let mut rng = seeded_rng(13);
    for c in [
        random_channel(&mut rng, 2, 3, "a"),
        random_channel(&mut rng, 3, 2, "b"),
        dephrasure_channel(0.2, 0.4).unwrap(),
    ] {
        let j = c.choi();
        for _ in 0..10 {
            let rho = random_density(&mut rng, c.dim_in());
            let pi = random_hermitian(&mut rng, c.dim_out());
            let lhs = crate::matops::tensor(&rho.transpose(), &pi).inner_re(j.matrix());
            let rhs = pi.inner_re(&c.apply(&rho).unwrap());
            assert_close(lhs, rhs, 1e-10);
        }
    }
}

#[test]
fn pauli_choi_is_bell_diagonal() {
    let p = [0.4, 0.3, 0.2, 0.1];
    let j = pauli_channel(p).unwrap().choi();
    let (evals, _) = crate::matops::hermitian_eig(j.matrix()).unwrap();
    let mut expect: Vec<f64> = p.iter().map(|&x| 2.0 * x).collect();
    expect.sort_by(|a, b| b.partial_cmp(a).unwrap());
    for (a, b) in evals.iter().zip(expect.iter()) {
        assert_close(*a, *b, 1e-12);
    }
}

#[test]
fn choi_ppt_check_detects_entanglement() {
    // Identity channel Choi is NPT; the replacer Choi is PPT.
    let j = identity_channel(2).choi();
    let g = partial_transpose(j.matrix(), j.dims(), Sys::B).unwrap();
    assert!(g.min_eigenvalue() < -0.5);
    let r = replacer_channel(&ComplexMatrix::identity(2).scale_re(0.5)).unwrap();
    let jr = r.choi();
    let gr = partial_transpose(jr.matrix(), jr.dims(), Sys::B).unwrap();
    assert!(gr.min_eigenvalue() > -1e-10);
}

#[test]
fn classical_channel_validation() {
    assert!(ClassicalChannel::new(vec![vec![0.5, 0.2], vec![0.5, 0.9]]).is_err());
    assert!(ClassicalChannel::new(vec![vec![-0.1, 0.0], vec![1.1, 1.0]]).is_err());
    let p = ClassicalChannel::new(vec![vec![1.0, 0.3], vec![0.0, 0.7]]).unwrap();
    assert_eq!(p.n_in(), 2);
    assert_eq!(p.n_out(), 2);
}

#[test]
fn uri_round_trips() {
    for uri in [
        "identity:d=3",
        "replacer:d=2",
        "pauli:0.5,0.5,0,0",
        "depolarizing:d=2,lambda=0.5",
        "werner-holevo:d=3,lambda=0.0",
        "dephrasure:p=0.1,q=0.2",
        "siddhu:s=0.3",
        "amplitude-damping:gamma=0.4",
    ] {
        let c = channel_from_uri(uri).unwrap_or_else(|e| panic!("{uri}: {e}"));
        c.choi().validate().unwrap();
    }
    assert!(channel_from_uri("nonsense:d=2").is_err());
    assert!(channel_from_uri("werner-holevo:d=3,lambda=2.0").is_err());
    assert!(channel_from_uri("werner-holevo:d=3,bogus=1").is_err());
    assert!(channel_from_uri("siddhu:s=0.7").is_err());
}

#[test]
fn json_round_trip() {
    let mut rng = seeded_rng(17);
    let c = random_channel(&mut rng, 2, 3, "roundtrip");
    let text = serde_json::to_string(&channel_to_json(&c)).unwrap();
    let back = channel_from_json(&text).unwrap();
    assert_eq!(back.dim_in(), 2);
    assert_eq!(back.dim_out(), 3);
    assert_mat_close(back.choi().matrix(), c.choi().matrix(), 1e-12);
    assert!(channel_from_json("{not json").is_err());
}
