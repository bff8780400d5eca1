//! Command-line front end: parse channel specs, dispatch bound methods,
//! sweep parameters, and emit machine-readable records.
//!
//! Three commands sit on top of the library: `cv` computes one or more
//! bounds for a channel, `sweep` traces a bound across a one-parameter
//! family and emits CSV rows, and `certify` runs the non-multiplicativity
//! witness on a channel pair.  JSON is the canonical output encoding; for a
//! fixed seed the emitted record is byte-identical apart from `wall_time`.
//!
//! Exit codes: `0` success (certify: certified), `1` certify ran but did
//! not certify, `2` unusable input (unknown builtin, malformed JSON or
//! flags, dimension guard), `3` solver failure.

use crate::channels::{
    channel_from_json, channel_from_uri, tensor_power, ChannelError, QuantumChannel,
};
use crate::closed_form::{
    cv_bounds, depolarizing_cv, dephrasure_cv, qubit_cv, qubit_ea_cv, siddhu_cv, werner_holevo_cv,
};
use crate::cv_programs::{
    certify_nonmultiplicativity, dimension_guard, ea_cv, max_output_purity, ppt_dual_cv,
    ppt_primal_cv, seesaw_cv, symk_cv, wh_id_lp, wh_nfold_lp, CvError, CvKind, CvMeta, CvResult,
    NonMultCertificate, SeesawConfig,
};
use serde::{Deserialize, Serialize};
use std::time::Instant;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("channel spec: {0}")]
    Channel(#[from] ChannelError),
    #[error("{0}")]
    Cv(#[from] CvError),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// Exit-code contract: usage and validation problems are `2`, solver
    /// breakdowns are `3`.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Channel(_) | CliError::Io(_) => 2,
            CliError::Cv(CvError::Solver(_)) => 3,
            CliError::Cv(_) => 2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Auto,
    QubitExact,
    Formula,
    Ppt,
    Ea,
    Seesaw,
    Symk,
    WhLp,
    WhIdLp,
    Certify,
    Lambda2,
    Bounds,
}

impl Method {
    fn parse(text: &str) -> Result<Self, CliError> {
        Ok(match text {
            "auto" => Method::Auto,
            "qubit-exact" => Method::QubitExact,
            "formula" => Method::Formula,
            "ppt" => Method::Ppt,
            "ea" => Method::Ea,
            "seesaw" => Method::Seesaw,
            "symk" => Method::Symk,
            "wh-lp" => Method::WhLp,
            "wh-id-lp" => Method::WhIdLp,
            "certify" => Method::Certify,
            "lambda2" => Method::Lambda2,
            "bounds" => Method::Bounds,
            other => return Err(CliError::Usage(format!("unknown method '{other}'"))),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Csv,
    Text,
}

/// One `cv` or `certify` invocation, echoed verbatim into the record.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunRequest {
    pub channel_spec: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub channel2_spec: Option<String>,
    pub method: Method,
    pub tol: f64,
    pub seed: u64,
    pub restarts: usize,
    pub k: usize,
    pub copies: usize,
    pub output: OutputFormat,
    pub epsilon: f64,
}

impl Default for RunRequest {
    fn default() -> Self {
        RunRequest {
            channel_spec: String::new(),
            channel2_spec: None,
            method: Method::Auto,
            tol: 1e-7,
            seed: 0,
            restarts: 20,
            k: 1,
            copies: 1,
            output: OutputFormat::Text,
            epsilon: 1e-4,
        }
    }
}

/// Everything one invocation produced.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunRecord {
    pub request: RunRequest,
    pub results: Vec<CvResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<NonMultCertificate>,
    /// Informational observations (e.g. the conjectured `ea ≤ d_B·cv`
    /// relation); never load-bearing.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    pub wall_time: f64,
    pub tool_version: String,
}

impl RunRecord {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("record serializes")
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SweepRequest {
    pub template: String,
    pub start: f64,
    pub stop: f64,
    pub step: f64,
    pub method: Method,
    pub tol: f64,
    pub seed: u64,
    pub restarts: usize,
    pub k: usize,
    pub copies: usize,
}

/// Resolve a channel spec: a path to a JSON file when it names one,
/// otherwise a builtin URI.
pub fn resolve_channel(spec: &str) -> Result<QuantumChannel, CliError> {
    let looks_like_file = spec.ends_with(".json") || std::path::Path::new(spec).exists();
    if looks_like_file {
        let text = std::fs::read_to_string(spec)
            .map_err(|e| CliError::Usage(format!("cannot read '{spec}': {e}")))?;
        Ok(channel_from_json(&text)?)
    } else {
        Ok(channel_from_uri(spec)?)
    }
}

fn builtin_name_args(spec: &str) -> (&str, &str) {
    match spec.split_once(':') {
        Some((n, a)) => (n.trim(), a.trim()),
        None => (spec.trim(), ""),
    }
}

fn uri_value(args: &str, key: &str) -> Option<f64> {
    args.split(',').find_map(|piece| {
        let (k, v) = piece.split_once('=')?;
        (k.trim() == key).then(|| v.trim().parse().ok())?
    })
}

/// Closed-form value for recognized builtin URIs, if one exists.
fn formula_result(spec: &str, copies: usize) -> Result<Option<CvResult>, CliError> {
    let (name, args) = builtin_name_args(spec);
    let single = |value: f64, fname: &str| -> Option<CvResult> {
        Some(CvResult::new(
            CvKind::Formula,
            value.powi(copies as i32),
            CvMeta::Formula {
                name: fname.to_string(),
            },
        ))
    };
    // Raising a single-copy formula to `copies` assumes multiplicativity.
    // Identity, replacer, depolarizing, and Pauli channels have it at every
    // copy count; dephrasure and Siddhu are covered for two copies; the
    // Werner-Holevo family is served at one copy only.
    let out = match name {
        "identity" => uri_value(args, "d").and_then(|d| single(d, "identity")),
        "replacer" => single(1.0, "replacer"),
        "depolarizing" => {
            match (uri_value(args, "d"), uri_value(args, "lambda")) {
                (Some(d), Some(l)) => single(depolarizing_cv(d as usize, l), "depolarizing"),
                _ => None,
            }
        }
        "werner-holevo" if copies == 1 => {
            match (uri_value(args, "d"), uri_value(args, "lambda")) {
                (Some(d), Some(l)) => {
                    let v = werner_holevo_cv(d as usize, l).map_err(CvError::from)?;
                    single(v, "werner-holevo")
                }
                _ => None,
            }
        }
        "dephrasure" if copies <= 2 => match (uri_value(args, "p"), uri_value(args, "q")) {
            (Some(p), Some(q)) => single(dephrasure_cv(p, q), "dephrasure"),
            _ => None,
        },
        "siddhu" if copies <= 2 => match uri_value(args, "s") {
            Some(s) => {
                let v = siddhu_cv(s).map_err(CvError::from)?;
                single(v, "siddhu")
            }
            None => None,
        },
        "pauli" => {
            let c = channel_from_uri(spec)?;
            let v = qubit_cv(&c)?;
            single(v, "pauli")
        }
        _ => None,
    };
    Ok(out)
}

fn seesaw_config(req: &RunRequest) -> SeesawConfig {
    SeesawConfig {
        restarts: req.restarts.max(1),
        iters_per_restart: 40,
        num_signals: None,
        seed: req.seed,
    }
}

/// Compute the requested bound(s) for one channel spec.
pub fn cmd_cv(req: &RunRequest) -> Result<RunRecord, CliError> {
    let start = Instant::now();
    if req.method == Method::Certify {
        return cmd_certify(req);
    }

    let base = resolve_channel(&req.channel_spec)?;
    if req.copies == 0 {
        return Err(CliError::Usage("copies must be at least 1".into()));
    }
    let choi_side = base
        .dim_in()
        .checked_mul(base.dim_out())
        .and_then(|v| v.checked_pow(req.copies as u32))
        .ok_or_else(|| CliError::Usage("copies overflow the dimension".into()))?;
    dimension_guard(choi_side).map_err(CliError::Cv)?;
    let channel = if req.copies > 1 {
        tensor_power(&base, req.copies)
    } else {
        base.clone()
    };
    let is_qubit = channel.dim_in() == 2 && channel.dim_out() == 2;

    let mut results: Vec<CvResult> = Vec::new();
    match req.method {
        Method::Auto => {
            if is_qubit {
                results.push(CvResult::new(
                    CvKind::QubitExact,
                    qubit_cv(&channel)?,
                    CvMeta::None,
                ));
            } else if let Some(r) = formula_result(&req.channel_spec, req.copies)? {
                results.push(r);
            } else {
                let j = channel.choi();
                results.push(ppt_primal_cv(&j, req.tol, 200_000)?);
                results.push(ppt_dual_cv(&j, req.tol, 200_000)?);
            }
        }
        Method::QubitExact => {
            if !is_qubit {
                return Err(CliError::Usage(format!(
                    "qubit-exact needs a 2→2 channel, got {}→{}",
                    channel.dim_in(),
                    channel.dim_out()
                )));
            }
            results.push(CvResult::new(
                CvKind::QubitExact,
                qubit_cv(&channel)?,
                CvMeta::None,
            ));
            results.push(CvResult::new(
                CvKind::Ea,
                qubit_ea_cv(&channel)?,
                CvMeta::Formula {
                    name: "qubit-ea".into(),
                },
            ));
        }
        Method::Formula => {
            let r = formula_result(&req.channel_spec, req.copies)?.ok_or_else(|| {
                CliError::Usage(format!(
                    "no closed form is known for '{}'",
                    req.channel_spec
                ))
            })?;
            results.push(r);
        }
        Method::Ppt => {
            let j = channel.choi();
            results.push(ppt_primal_cv(&j, req.tol, 200_000)?);
            results.push(ppt_dual_cv(&j, req.tol, 200_000)?);
        }
        Method::Ea => {
            results.push(ea_cv(&channel.choi(), req.tol, 200_000)?);
        }
        Method::Seesaw => {
            results.push(seesaw_cv(&channel, &seesaw_config(req)));
        }
        Method::Symk => {
            results.push(symk_cv(&channel.choi(), req.k.max(1), req.tol, 200_000)?);
        }
        Method::WhLp => {
            let (name, args) = builtin_name_args(&req.channel_spec);
            if name != "werner-holevo" {
                return Err(CliError::Usage(
                    "wh-lp needs a werner-holevo channel spec".into(),
                ));
            }
            let d = uri_value(args, "d")
                .ok_or_else(|| CliError::Usage("wh-lp needs d in the channel spec".into()))?;
            let lambda = uri_value(args, "lambda")
                .ok_or_else(|| CliError::Usage("wh-lp needs lambda in the channel spec".into()))?;
            let (_, r) = wh_nfold_lp(d as usize, &vec![lambda; req.copies])?;
            results.push(r);
        }
        Method::WhIdLp => {
            let (name, args) = builtin_name_args(&req.channel_spec);
            if name != "werner-holevo" {
                return Err(CliError::Usage(
                    "wh-id-lp needs a werner-holevo channel spec".into(),
                ));
            }
            let d = uri_value(args, "d")
                .ok_or_else(|| CliError::Usage("wh-id-lp needs d in the channel spec".into()))?;
            let lambda = uri_value(args, "lambda").ok_or_else(|| {
                CliError::Usage("wh-id-lp needs lambda in the channel spec".into())
            })?;
            let second = req.channel2_spec.as_deref().ok_or_else(|| {
                CliError::Usage("wh-id-lp needs --channel2 identity:d=<d'>".into())
            })?;
            let (name2, args2) = builtin_name_args(second);
            if name2 != "identity" {
                return Err(CliError::Usage(
                    "wh-id-lp pairs the channel with identity:d=<d'>".into(),
                ));
            }
            let dp = uri_value(args2, "d")
                .ok_or_else(|| CliError::Usage("identity spec needs d".into()))?;
            let (_, r) = wh_id_lp(d as usize, dp as usize, lambda)?;
            results.push(r);
        }
        Method::Lambda2 => {
            results.push(max_output_purity(&channel, req.restarts.max(1), 300, req.seed));
        }
        Method::Bounds => {
            let (lo, hi) = cv_bounds(&channel);
            results.push(CvResult::new(
                CvKind::Formula,
                lo,
                CvMeta::Formula {
                    name: "universal-lower-bound".into(),
                },
            ));
            results.push(CvResult::new(
                CvKind::Formula,
                hi,
                CvMeta::Formula {
                    name: "universal-upper-bound".into(),
                },
            ));
        }
        Method::Certify => unreachable!("handled above"),
    }

    // surface (never assert) the conjectured relation ea ≤ d_B · cv when
    // both quantities came out of this run
    let mut notes = Vec::new();
    let ea_val = results
        .iter()
        .find(|r| matches!(r.kind, CvKind::Ea))
        .map(|r| r.value);
    let cv_val = results
        .iter()
        .find(|r| matches!(r.kind, CvKind::QubitExact | CvKind::PptDual))
        .map(|r| r.value);
    if let (Some(ea), Some(cv)) = (ea_val, cv_val) {
        let cap = channel.dim_out() as f64 * cv;
        notes.push(format!(
            "conjectured relation ea ≤ d_B·cv: ea = {ea:.9}, d_B·cv = {cap:.9} ({})",
            if ea <= cap + 1e-9 { "holds here" } else { "violated here" }
        ));
    }

    Ok(RunRecord {
        request: req.clone(),
        results,
        certificate: None,
        notes,
        wall_time: start.elapsed().as_secs_f64(),
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
    })
}

/// Run the non-multiplicativity witness on a channel pair (the second spec
/// defaults to the first).
pub fn cmd_certify(req: &RunRequest) -> Result<RunRecord, CliError> {
    let start = Instant::now();
    let c1 = resolve_channel(&req.channel_spec)?;
    let c2 = match &req.channel2_spec {
        Some(spec) => resolve_channel(spec)?,
        None => c1.clone(),
    };
    dimension_guard(c1.dim_in() * c2.dim_in() * c1.dim_out() * c2.dim_out())
        .map_err(CliError::Cv)?;
    let cfg = seesaw_config(req);
    let cert = certify_nonmultiplicativity(&c1, &c2, &cfg, req.epsilon)?;
    Ok(RunRecord {
        request: req.clone(),
        results: vec![],
        certificate: Some(cert),
        notes: vec![],
        wall_time: start.elapsed().as_secs_f64(),
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
    })
}

/// Twelve-significant-digit float formatting for CSV rows ('.' decimal,
/// locale-independent).
pub fn fmt_sig12(v: f64) -> String {
    format!("{v:.11e}")
}

/// Sweep one free parameter (marked `?` in the template) across a grid and
/// emit CSV with the method metadata in `#` header lines.  Grid points are
/// evaluated concurrently; rows are emitted in parameter order.
pub fn cmd_sweep(req: &SweepRequest) -> Result<String, CliError> {
    let holes = req.template.matches('?').count();
    if holes != 1 {
        return Err(CliError::Usage(format!(
            "sweep template must contain exactly one '?', found {holes}"
        )));
    }
    if req.step <= 0.0 || req.stop < req.start {
        return Err(CliError::Usage(
            "sweep range must satisfy start ≤ stop with positive step".into(),
        ));
    }
    let mut params = Vec::new();
    let mut p = req.start;
    while p <= req.stop + 1e-12 {
        params.push(p);
        p += req.step;
    }

    let evaluate = |param: f64| -> Result<CvResult, CliError> {
        let spec = req.template.replace('?', &format!("{param:.12e}"));
        let sub = RunRequest {
            channel_spec: spec,
            channel2_spec: None,
            method: req.method,
            tol: req.tol,
            seed: req.seed,
            restarts: req.restarts,
            k: req.k,
            copies: req.copies,
            output: OutputFormat::Csv,
            epsilon: 1e-4,
        };
        let record = cmd_cv(&sub)?;
        record
            .results
            .into_iter()
            .next()
            .ok_or_else(|| CliError::Usage("method produced no value".into()))
    };

    type Slot = Option<Result<CvResult, CliError>>;
    let threads = std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1)
        .min(params.len().max(1));
    let mut outcomes: Vec<Slot> = (0..params.len()).map(|_| None).collect();
    if threads <= 1 {
        for (slot, &param) in outcomes.iter_mut().zip(&params) {
            *slot = Some(evaluate(param));
        }
    } else {
        let mut chunks: Vec<(usize, &mut [Slot])> = Vec::new();
        let mut rest = outcomes.as_mut_slice();
        let base = params.len() / threads;
        let extra = params.len() % threads;
        let mut offset = 0;
        for t in 0..threads {
            let len = base + usize::from(t < extra);
            let (head, tail) = rest.split_at_mut(len);
            chunks.push((offset, head));
            rest = tail;
            offset += len;
        }
        let params_ref = &params;
        let evaluate_ref = &evaluate;
        std::thread::scope(|scope| {
            for (offset, chunk) in chunks {
                scope.spawn(move || {
                    for (i, slot) in chunk.iter_mut().enumerate() {
                        *slot = Some(evaluate_ref(params_ref[offset + i]));
                    }
                });
            }
        });
    }

    let mut csv = String::new();
    csv.push_str(&format!(
        "# cvkit sweep template={} method={} tol={} seed={} restarts={} k={} copies={} version={}\n",
        req.template,
        serde_json::to_string(&req.method).unwrap().trim_matches('"'),
        req.tol,
        req.seed,
        req.restarts,
        req.k,
        req.copies,
        env!("CARGO_PKG_VERSION"),
    ));
    csv.push_str("param,value,log2_value\n");
    for (param, outcome) in params.iter().zip(outcomes) {
        let result = outcome.expect("evaluated")?;
        csv.push_str(&format!(
            "{},{},{}\n",
            fmt_sig12(*param),
            fmt_sig12(result.value),
            fmt_sig12(result.log_value)
        ));
    }
    Ok(csv)
}

// ---------------------------------------------------------------------
// argument parsing for the binary
// ---------------------------------------------------------------------

#[derive(Debug)]
pub enum Command {
    Cv(RunRequest),
    Sweep(SweepRequest),
    Certify(RunRequest),
    Help,
}

pub const USAGE: &str = "\
cvkit — communication-value bounds for quantum channels

USAGE:
  cvkit cv      --channel <spec> [--method <m>] [flags]
  cvkit sweep   --channel <template-with-?> --range <start:stop:step> --method <m> [flags]
  cvkit certify --channel <spec> [--channel2 <spec>] [flags]

CHANNEL SPECS:
  builtin URIs: identity:d=2 | replacer:d=2 | pauli:0.5,0.5,0,0
                depolarizing:d=2,lambda=0.5 | werner-holevo:d=3,lambda=0.0
                dephrasure:p=0.1,q=0.2 | siddhu:s=0.3 | amplitude-damping:gamma=0.4
  or a path to a channel-spec JSON file (see README).

METHODS:
  auto (default) | qubit-exact | formula | ppt | ea | seesaw | symk
  | wh-lp | wh-id-lp | certify | lambda2 | bounds

FLAGS:
  --channel2 <spec>    second channel (certify, wh-id-lp)
  --tol <t>            solver tolerance            [default 1e-7]
  --seed <n>           random seed                 [default 0]
  --restarts <n>       see-saw restarts            [default 20]
  --k <n>              symmetric-extension level   [default 1]
  --copies <n>         n-fold tensor power         [default 1]
  --output <fmt>       json | csv | text           [default text]
  --epsilon <e>        certification margin        [default 1e-4]
  --range <a:b:s>      sweep grid (sweep only)

Environment: CVKIT_MAX_DIM overrides the operator-dimension guard (4096).
";

fn parse_f64(flag: &str, v: &str) -> Result<f64, CliError> {
    v.parse()
        .map_err(|_| CliError::Usage(format!("{flag} expects a number, got '{v}'")))
}

fn parse_usize(flag: &str, v: &str) -> Result<usize, CliError> {
    v.parse()
        .map_err(|_| CliError::Usage(format!("{flag} expects an integer, got '{v}'")))
}

/// Parse command-line arguments (without the program name).
pub fn parse_args(args: &[String]) -> Result<Command, CliError> {
    let Some(sub) = args.first() else {
        return Ok(Command::Help);
    };
    if sub == "--help" || sub == "-h" || sub == "help" {
        return Ok(Command::Help);
    }

    let mut req = RunRequest::default();
    let mut range: Option<(f64, f64, f64)> = None;
    let mut i = 1;
    while i < args.len() {
        let flag = args[i].as_str();
        let value = args
            .get(i + 1)
            .ok_or_else(|| CliError::Usage(format!("{flag} needs a value")))?;
        match flag {
            "--channel" => req.channel_spec = value.clone(),
            "--channel2" => req.channel2_spec = Some(value.clone()),
            "--method" => req.method = Method::parse(value)?,
            "--tol" => req.tol = parse_f64(flag, value)?,
            "--seed" => {
                req.seed = value
                    .parse()
                    .map_err(|_| CliError::Usage(format!("--seed expects an integer, got '{value}'")))?
            }
            "--restarts" => req.restarts = parse_usize(flag, value)?,
            "--k" => req.k = parse_usize(flag, value)?,
            "--copies" => req.copies = parse_usize(flag, value)?,
            "--epsilon" => req.epsilon = parse_f64(flag, value)?,
            "--output" => {
                req.output = match value.as_str() {
                    "json" => OutputFormat::Json,
                    "csv" => OutputFormat::Csv,
                    "text" => OutputFormat::Text,
                    other => {
                        return Err(CliError::Usage(format!("unknown output format '{other}'")))
                    }
                }
            }
            "--range" => {
                let parts: Vec<&str> = value.split(':').collect();
                if parts.len() != 3 {
                    return Err(CliError::Usage("--range expects start:stop:step".into()));
                }
                range = Some((
                    parse_f64(flag, parts[0])?,
                    parse_f64(flag, parts[1])?,
                    parse_f64(flag, parts[2])?,
                ));
            }
            other => return Err(CliError::Usage(format!("unknown flag '{other}'"))),
        }
        i += 2;
    }
    if req.channel_spec.is_empty() {
        return Err(CliError::Usage("--channel is required".into()));
    }

    match sub.as_str() {
        "cv" => Ok(Command::Cv(req)),
        "certify" => Ok(Command::Certify(req)),
        "sweep" => {
            let (start, stop, step) =
                range.ok_or_else(|| CliError::Usage("sweep requires --range".into()))?;
            Ok(Command::Sweep(SweepRequest {
                template: req.channel_spec,
                start,
                stop,
                step,
                method: req.method,
                tol: req.tol,
                seed: req.seed,
                restarts: req.restarts,
                k: req.k,
                copies: req.copies,
            }))
        }
        other => Err(CliError::Usage(format!("unknown command '{other}'"))),
    }
}

fn render_record(record: &RunRecord) -> String {
    match record.request.output {
        OutputFormat::Json => record.to_json(),
        OutputFormat::Csv => {
            let mut out = String::from("kind,value,log2_value\n");
            for r in &record.results {
                out.push_str(&format!(
                    "{},{},{}\n",
                    serde_json::to_string(&r.kind).unwrap().trim_matches('"'),
                    fmt_sig12(r.value),
                    fmt_sig12(r.log_value)
                ));
            }
            out
        }
        OutputFormat::Text => {
            let mut out = String::new();
            if let Some(cert) = &record.certificate {
                out.push_str(&format!(
                    "lower_joint   = {}\nupper_product = {}\ngap           = {}\ncertified     = {}\n",
                    fmt_sig12(cert.lower_joint),
                    fmt_sig12(cert.upper_product),
                    fmt_sig12(cert.lower_joint - cert.upper_product),
                    cert.certified
                ));
            }
            for r in &record.results {
                out.push_str(&format!(
                    "{:<14} cv = {}   log2 = {}\n",
                    serde_json::to_string(&r.kind).unwrap().trim_matches('"'),
                    fmt_sig12(r.value),
                    fmt_sig12(r.log_value)
                ));
            }
            for note in &record.notes {
                out.push_str(&format!("note: {note}\n"));
            }
            out
        }
    }
}

/// Run a parsed command, printing to stdout; returns the process exit code.
pub fn run(command: Command) -> i32 {
    match command {
        Command::Help => {
            println!("{USAGE}");
            0
        }
        Command::Cv(req) => match cmd_cv(&req) {
            Ok(record) => {
                print!("{}", render_record(&record));
                0
            }
            Err(e) => {
                eprintln!("error: {e}");
                e.exit_code()
            }
        },
        Command::Certify(req) => match cmd_certify(&req) {
            Ok(record) => {
                print!("{}", render_record(&record));
                let certified = record.certificate.as_ref().map(|c| c.certified);
                if certified == Some(true) {
                    0
                } else {
                    1
                }
            }
            Err(e) => {
                eprintln!("error: {e}");
                e.exit_code()
            }
        },
        Command::Sweep(req) => match cmd_sweep(&req) {
            Ok(csv) => {
                print!("{csv}");
                0
            }
            Err(e) => {
                eprintln!("error: {e}");
                e.exit_code()
            }
        },
    }
}

/// Entry point shared with the binary: parse, run, map errors to codes.
pub fn main_with_args(args: &[String]) -> i32 {
    match parse_args(args) {
        Ok(cmd) => run(cmd),
        Err(e) => {
            eprintln!("error: {e}");
            eprintln!("run `cvkit --help` for usage");
            e.exit_code()
        }
    }
}
