//! End-to-end checks of the command-line surface: the documented exit-code
//! contract, JSON round-tripping and determinism, and the sweep CSV format.

use cvkit::cli::{cmd_cv, cmd_sweep, parse_args, Command, Method, OutputFormat, RunRequest, SweepRequest};
use std::process::Command as Proc;

fn bin() -> Proc {
    Proc::new(env!("CARGO_BIN_EXE_cvkit"))
}

fn run_bin(args: &[&str]) -> (i32, String, String) {
    let out = bin().args(args).output().expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

#[test]
fn cv_werner_holevo_ppt_prints_value() {
    let (code, stdout, _) = run_bin(&[
        "cv",
        "--channel",
        "werner-holevo:d=3,lambda=0",
        "--method",
        "ppt",
        "--output",
        "json",
    ]);
    assert_eq!(code, 0);
    let record: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    let value = record["results"][0]["value"].as_f64().unwrap();
    assert!((value - 1.5).abs() < 1e-5, "ppt value {value}");
    let log = record["results"][0]["log_value"].as_f64().unwrap();
    assert!((log - 1.5f64.log2()).abs() < 1e-5);
}

#[test]
fn cv_auto_uses_qubit_exact_for_qubit_channels() {
    let (code, stdout, _) = run_bin(&[
        "cv",
        "--channel",
        "depolarizing:d=2,lambda=0.5",
        "--output",
        "json",
    ]);
    assert_eq!(code, 0);
    let record: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(record["results"][0]["kind"], "qubit_exact");
    let value = record["results"][0]["value"].as_f64().unwrap();
    assert!((value - 1.5).abs() < 1e-10);
}

#[test]
fn cv_auto_uses_formula_for_non_qubit_builtins() {
    let (code, stdout, _) = run_bin(&[
        "cv",
        "--channel",
        "werner-holevo:d=3,lambda=0.2",
        "--output",
        "json",
    ]);
    assert_eq!(code, 0);
    let record: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(record["results"][0]["kind"], "formula");
}

#[test]
fn exit_code_contract() {
    // missing file → 2 with a diagnostic
    let (code, _, stderr) = run_bin(&["cv", "--channel", "bad.json"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("bad.json"));

    // unknown builtin → 2
    let (code, _, _) = run_bin(&["cv", "--channel", "nonsense:d=2"]);
    assert_eq!(code, 2);

    // malformed flag value → 2
    let (code, _, _) = run_bin(&["cv", "--channel", "identity:d=2", "--tol", "abc"]);
    assert_eq!(code, 2);

    // dimension guard → 2
    let (code, _, stderr) = run_bin(&[
        "cv",
        "--channel",
        "identity:d=9",
        "--method",
        "symk",
        "--k",
        "4",
    ]);
    assert_eq!(code, 2, "stderr: {stderr}");

    // certify on a multiplicative pair → 1
    let (code, stdout, _) = run_bin(&[
        "certify",
        "--channel",
        "identity:d=2",
        "--restarts",
        "2",
    ]);
    assert_eq!(code, 1, "stdout: {stdout}");
    assert!(stdout.contains("certified     = false"));

    // CVKIT_MAX_DIM tightens the guard
    let out = bin()
        .args(["cv", "--channel", "identity:d=2", "--method", "ppt"])
        .env("CVKIT_MAX_DIM", "2")
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("dimension"));

    // sweep template with no hole → 2
    let (code, _, _) = run_bin(&[
        "sweep",
        "--channel",
        "dephrasure:p=0.1,q=0.5",
        "--range",
        "0:1:0.5",
        "--method",
        "ppt",
    ]);
    assert_eq!(code, 2);

    // help → 0
    let (code, stdout, _) = run_bin(&["--help"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("USAGE"));
}

#[test]
fn certify_exit_zero_on_nonmultiplicative_pair() {
    // one restart suffices: restart 0 carries the entangled warm start
    let (code, stdout, stderr) = run_bin(&[
        "certify",
        "--channel",
        "werner-holevo:d=3,lambda=0",
        "--restarts",
        "1",
        "--output",
        "json",
    ]);
    assert_eq!(code, 0, "stderr: {stderr}");
    let record: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(record["certificate"]["certified"], true);
    let lower = record["certificate"]["lower_joint"].as_f64().unwrap();
    let upper = record["certificate"]["upper_product"].as_f64().unwrap();
    assert!(lower >= 2.9 && upper <= 2.2501, "lower {lower}, upper {upper}");
}

#[test]
fn json_record_round_trips() {
    let req = RunRequest {
        channel_spec: "pauli:0.6,0.4,0,0".into(),
        output: OutputFormat::Json,
        ..RunRequest::default()
    };
    let record = cmd_cv(&req).unwrap();
    let text = record.to_json();
    let back: cvkit::cli::RunRecord = serde_json::from_str(&text).unwrap();
    assert_eq!(serde_json::to_string(&back).unwrap(), serde_json::to_string(&record).unwrap());
}

#[test]
fn same_seed_gives_identical_records_modulo_wall_time() {
    let req = RunRequest {
        channel_spec: "depolarizing:d=2,lambda=0.3".into(),
        method: Method::Seesaw,
        restarts: 3,
        seed: 17,
        output: OutputFormat::Json,
        ..RunRequest::default()
    };
    let zeroed = |record: cvkit::cli::RunRecord| -> String {
        let mut v: serde_json::Value = serde_json::from_str(&record.to_json()).unwrap();
        v["wall_time"] = serde_json::json!(0.0);
        serde_json::to_string(&v).unwrap()
    };
    let a = zeroed(cmd_cv(&req).unwrap());
    let b = zeroed(cmd_cv(&req).unwrap());
    assert_eq!(a, b, "records with the same seed must match byte for byte");
}

#[test]
fn sweep_dephrasure_is_a_straight_line() {
    let req = SweepRequest {
        template: "dephrasure:p=0.1,q=?".into(),
        start: 0.0,
        stop: 1.0,
        step: 0.25,
        method: Method::Ppt,
        tol: 1e-7,
        seed: 0,
        restarts: 5,
        k: 1,
        copies: 1,
    };
    let csv = cmd_sweep(&req).unwrap();
    let mut rows = 0;
    for line in csv.lines() {
        if line.starts_with('#') || line.starts_with("param,") {
            continue;
        }
        let cells: Vec<&str> = line.split(',').collect();
        let q: f64 = cells[0].parse().unwrap();
        let v: f64 = cells[1].parse().unwrap();
        assert!((v - (2.0 - q)).abs() < 1e-5, "q={q} gave {v}");
        rows += 1;
    }
    assert_eq!(rows, 5);
    assert!(csv.starts_with("# cvkit sweep"));
}

#[test]
fn sweep_amplitude_damping_qubit_exact() {
    let req = SweepRequest {
        template: "amplitude-damping:gamma=?".into(),
        start: 0.0,
        stop: 1.0,
        step: 0.2,
        method: Method::QubitExact,
        tol: 1e-7,
        seed: 0,
        restarts: 5,
        k: 1,
        copies: 1,
    };
    let csv = cmd_sweep(&req).unwrap();
    for line in csv.lines() {
        if line.starts_with('#') || line.starts_with("param,") {
            continue;
        }
        let cells: Vec<&str> = line.split(',').collect();
        let gamma: f64 = cells[0].parse().unwrap();
        let v: f64 = cells[1].parse().unwrap();
        assert!(
            (v - (1.0 + (1.0 - gamma).sqrt())).abs() < 1e-9,
            "gamma={gamma} gave {v}"
        );
    }
}

#[test]
fn sweep_two_copy_werner_holevo_lp() {
    let req = SweepRequest {
        template: "werner-holevo:d=3,lambda=?".into(),
        start: 0.0,
        stop: 0.4,
        step: 0.1,
        method: Method::WhLp,
        tol: 1e-7,
        seed: 0,
        restarts: 5,
        k: 1,
        copies: 2,
    };
    let csv = cmd_sweep(&req).unwrap();
    let mut values = Vec::new();
    for line in csv.lines() {
        if line.starts_with('#') || line.starts_with("param,") {
            continue;
        }
        let cells: Vec<&str> = line.split(',').collect();
        values.push((cells[0].parse::<f64>().unwrap(), cells[1].parse::<f64>().unwrap()));
    }
    // two copies of the antisymmetric point give 3, decaying into the
    // multiplicative regime as λ grows
    assert!((values[0].1 - 3.0).abs() < 1e-6);
    for w in values.windows(2) {
        assert!(w[1].1 < w[0].1, "the two-copy LP value must decrease on this range");
    }
    let single = cvkit::closed_form::werner_holevo_cv(3, 0.4).unwrap();
    assert!((values.last().unwrap().1 - single * single).abs() < 1e-6);
}

#[test]
fn channel_json_file_is_accepted() {
    let mut rng = cvkit::random::seeded_rng(3);
    let c = cvkit::random::random_channel(&mut rng, 2, 2, "from-file");
    let spec = cvkit::channels::channel_to_json(&c);
    let dir = std::env::temp_dir().join("cvkit-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("chan.json");
    std::fs::write(&path, serde_json::to_string(&spec).unwrap()).unwrap();

    let (code, stdout, stderr) = run_bin(&[
        "cv",
        "--channel",
        path.to_str().unwrap(),
        "--method",
        "qubit-exact",
        "--output",
        "json",
    ]);
    assert_eq!(code, 0, "stderr: {stderr}");
    let record: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    let value = record["results"][0]["value"].as_f64().unwrap();
    let expect = cvkit::closed_form::qubit_cv(&c).unwrap();
    assert!((value - expect).abs() < 1e-9);
}

#[test]
fn parse_args_shapes() {
    let args: Vec<String> = ["cv", "--channel", "identity:d=2", "--copies", "2"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    match parse_args(&args).unwrap() {
        Command::Cv(req) => {
            assert_eq!(req.copies, 2);
            assert_eq!(req.method, Method::Auto);
            assert_eq!(req.tol, 1e-7);
            assert_eq!(req.restarts, 20);
            assert_eq!(req.epsilon, 1e-4);
        }
        other => panic!("expected cv command, got {other:?}"),
    }
    let args: Vec<String> = ["sweep", "--channel", "x:?"].iter().map(|s| s.to_string()).collect();
    assert!(parse_args(&args).is_err(), "sweep without range must fail");
}
