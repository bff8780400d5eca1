//! External channel representations: builtin URIs and the channel-spec JSON.
//!
//! URI grammar: `name` or `name:args`, where `args` is a comma-separated
//! list of `key=value` pairs.  The Pauli channel instead takes four
//! positional probabilities (`pauli:0.5,0.5,0,0`).  Keys are validated per
//! builtin; unknown keys are rejected.
//!
//! JSON schema (kraus entries are `[re, im]` pairs, row-major):
//! ```json
//! {
//!   "label": "my channel",
//!   "dim_in": 2,
//!   "dim_out": 2,
//!   "kraus": [ [ [ [1.0, 0.0], [0.0, 0.0] ], [ [0.0, 0.0], [1.0, 0.0] ] ] ]
//! }
//! ```

use super::builtins::*;
use super::{ChannelError, QuantumChannel};
use crate::matops::{ComplexMatrix, C64};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ChannelSpecJson {
    pub label: String,
    pub dim_in: usize,
    pub dim_out: usize,
    /// One entry per Kraus operator: rows of `[re, im]` pairs.
    pub kraus: Vec<Vec<Vec<[f64; 2]>>>,
}

/// Parse the JSON channel spec.
pub fn channel_from_json(text: &str) -> Result<QuantumChannel, ChannelError> {
    let spec: ChannelSpecJson =
        serde_json::from_str(text).map_err(|e| ChannelError::Parse(e.to_string()))?;
    let mut kraus = Vec::with_capacity(spec.kraus.len());
    for (idx, rows) in spec.kraus.iter().enumerate() {
        if rows.len() != spec.dim_out || rows.iter().any(|r| r.len() != spec.dim_in) {
            return Err(ChannelError::Parse(format!(
                "kraus[{idx}] is not {}x{}",
                spec.dim_out, spec.dim_in
            )));
        }
        let m = ComplexMatrix::from_fn(spec.dim_out, spec.dim_in, |r, c| {
            C64::new(rows[r][c][0], rows[r][c][1])
        });
        kraus.push(m);
    }
    QuantumChannel::new(spec.dim_in, spec.dim_out, kraus, spec.label)
}

/// Serialize a channel into the JSON spec form.
pub fn channel_to_json(c: &QuantumChannel) -> ChannelSpecJson {
    ChannelSpecJson {
        label: c.label().to_string(),
        dim_in: c.dim_in(),
        dim_out: c.dim_out(),
        kraus: c
            .kraus()
            .iter()
            .map(|k| {
                (0..c.dim_out())
                    .map(|r| {
                        (0..c.dim_in())
                            .map(|col| {
                                let z = k.get(r, col);
                                [z.re, z.im]
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect(),
    }
}

fn parse_kv(args: &str, allowed: &[&str]) -> Result<BTreeMap<String, f64>, ChannelError> {
    let mut map = BTreeMap::new();
    if args.is_empty() {
        return Ok(map);
    }
    for piece in args.split(',') {
        let (key, value) = piece
            .split_once('=')
            .ok_or_else(|| ChannelError::Parse(format!("expected key=value, got '{piece}'")))?;
        let key = key.trim();
        if !allowed.contains(&key) {
            return Err(ChannelError::Parse(format!(
                "unknown key '{key}' (allowed: {allowed:?})"
            )));
        }
        let value: f64 = value
            .trim()
            .parse()
            .map_err(|_| ChannelError::Parse(format!("cannot parse number '{value}'")))?;
        if map.insert(key.to_string(), value).is_some() {
            return Err(ChannelError::Parse(format!("duplicate key '{key}'")));
        }
    }
    Ok(map)
}

fn require(map: &BTreeMap<String, f64>, key: &str) -> Result<f64, ChannelError> {
    map.get(key)
        .copied()
        .ok_or_else(|| ChannelError::Parse(format!("missing key '{key}'")))
}

fn as_dim(v: f64) -> Result<usize, ChannelError> {
    if v.fract() != 0.0 || !(1.0..=1e6).contains(&v) {
        return Err(ChannelError::Parse(format!("'{v}' is not a valid dimension")));
    }
    Ok(v as usize)
}

/// Resolve a builtin URI like `werner-holevo:d=3,lambda=0.0` into a channel.
pub fn channel_from_uri(uri: &str) -> Result<QuantumChannel, ChannelError> {
    let (name, args) = match uri.split_once(':') {
        Some((n, a)) => (n.trim(), a.trim()),
        None => (uri.trim(), ""),
    };
    match name {
        "identity" => {
            let kv = parse_kv(args, &["d"])?;
            Ok(identity_channel(as_dim(require(&kv, "d")?)?))
        }
        "replacer" => {
            // maximally mixed target by default
            let kv = parse_kv(args, &["d"])?;
            let d = as_dim(require(&kv, "d")?)?;
            replacer_channel(&ComplexMatrix::identity(d).scale_re(1.0 / d as f64))
        }
        "pauli" => {
            let parts: Vec<&str> = args.split(',').collect();
            if parts.len() != 4 {
                return Err(ChannelError::Parse(
                    "pauli takes four probabilities, e.g. pauli:0.5,0.5,0,0".into(),
                ));
            }
            let mut p = [0.0f64; 4];
            for (slot, part) in p.iter_mut().zip(&parts) {
                *slot = part
                    .trim()
                    .parse()
                    .map_err(|_| ChannelError::Parse(format!("cannot parse number '{part}'")))?;
            }
            pauli_channel(p)
        }
        "depolarizing" => {
            let kv = parse_kv(args, &["d", "lambda"])?;
            depolarizing_channel(as_dim(require(&kv, "d")?)?, require(&kv, "lambda")?)
        }
        "werner-holevo" => {
            let kv = parse_kv(args, &["d", "lambda"])?;
            werner_holevo_channel(as_dim(require(&kv, "d")?)?, require(&kv, "lambda")?)
        }
        "dephrasure" => {
            let kv = parse_kv(args, &["p", "q"])?;
            dephrasure_channel(require(&kv, "p")?, require(&kv, "q")?)
        }
        "siddhu" => {
            let kv = parse_kv(args, &["s"])?;
            siddhu_channel(require(&kv, "s")?)
        }
        "amplitude-damping" => {
            let kv = parse_kv(args, &["gamma"])?;
            amplitude_damping_channel(require(&kv, "gamma")?)
        }
        other => Err(ChannelError::Parse(format!("unknown builtin '{other}'"))),
    }
}
