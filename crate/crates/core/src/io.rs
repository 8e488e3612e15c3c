//! Model files and the small textual formats accepted on the command line.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::invariants::InvariantTuple;
use crate::lietorus::{ConstructionParams, Family, LieTorusModel, QuantumFactor};
use crate::torus::TorusSpec;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IoError {
    #[error("malformed JSON: {0}")]
    Json(String),
    #[error("unsupported schema_version {0}, expected 1")]
    Schema(u32),
    #[error("missing field {field:?} for family {family:?}")]
    MissingField { family: Family, field: &'static str },
    #[error("field {field:?} does not apply to family {family:?}")]
    UnexpectedField { family: Family, field: &'static str },
    #[error("bad delta list: {0}")]
    Delta(String),
    #[error("bad quantum factor: {0}")]
    Quantum(String),
    #[error("inconsistent model file: {0}")]
    Inconsistent(String),
    #[error("{field} = {value} exceeds the supported maximum {max}")]
    Limit { field: &'static str, value: usize, max: usize },
}

/// Size limits on untrusted parameters. Construction cost grows polynomially in
/// r and m and exponentially in the torus rank.
pub const MAX_R: usize = 64;
pub const MAX_TORUS_RANK: usize = 16;
pub const MAX_DIAGONAL: usize = 64;
pub const MAX_QUANTUM_FACTORS: usize = 8;

fn involution_rank(k: usize, p: u8, q: usize) -> usize {
    k.saturating_mul(2).saturating_add(p as usize).saturating_add(q)
}

/// Rejects parameters too large to construct in reasonable time and memory.
pub fn check_limits(params: &ConstructionParams) -> Result<(), IoError> {
    let over = |field, value: usize, max| if value > max { Err(IoError::Limit { field, value, max }) } else { Ok(()) };
    over("r", params.r(), MAX_R)?;
    match params {
        ConstructionParams::Sl { quantum, q, .. } => {
            over("quantum factors", quantum.len(), MAX_QUANTUM_FACTORS)?;
            over("torus rank", 2 * quantum.len() + q, MAX_TORUS_RANK)
        }
        ConstructionParams::Su { k, p, q, delta, .. } => {
            over("m", delta.len(), MAX_DIAGONAL)?;
            over("torus rank", involution_rank(*k, *p, *q), MAX_TORUS_RANK)
        }
        ConstructionParams::Sp { k, p, q, .. } => over("torus rank", involution_rank(*k, *p, *q), MAX_TORUS_RANK),
        ConstructionParams::O { q, .. } => over("torus rank", *q, MAX_TORUS_RANK),
    }
}

/// Wire form of [`ConstructionParams`]; `torus` is derived and only checked on input.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamsRepr {
    pub family: Family,
    pub r: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quantum: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u8>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub torus: Option<TorusSpec>,
}

impl ParamsRepr {
    pub fn from_params(params: &ConstructionParams) -> Self {
        let torus = params.torus().ok();
        let mut repr = Self {
            family: params.family(),
            r: params.r(),
            quantum: None,
            q: None,
            k: None,
            p: None,
            m: None,
            delta: None,
            torus,
        };
        match params {
            ConstructionParams::Sl { quantum, q, .. } => {
                repr.quantum = Some(quantum.iter().map(format_quantum).collect());
                repr.q = Some(*q);
            }
            ConstructionParams::Su { k, p, q, delta, .. } => {
                (repr.k, repr.p, repr.q) = (Some(*k), Some(*p), Some(*q));
                repr.m = Some(delta.len());
                repr.delta = Some(delta.clone());
            }
            ConstructionParams::Sp { k, p, q, .. } => (repr.k, repr.p, repr.q) = (Some(*k), Some(*p), Some(*q)),
            ConstructionParams::O { q, .. } => repr.q = Some(*q),
        }
        repr
    }

    /// Structural conversion; admissibility is left to `validate`/`construct`.
    pub fn to_params(&self) -> Result<ConstructionParams, IoError> {
        let family = self.family;
        let need = |v: Option<usize>, field: &'static str| v.ok_or(IoError::MissingField { family, field });
        let forbid = |present: bool, field: &'static str| {
            if present {
                Err(IoError::UnexpectedField { family, field })
            } else {
                Ok(())
            }
        };
        let q = need(self.q, "q")?;
        let params = match family {
            Family::Sl => {
                forbid(self.k.is_some(), "k")?;
                forbid(self.p.is_some(), "p")?;
                forbid(self.m.is_some(), "m")?;
                forbid(self.delta.is_some(), "delta")?;
                let quantum = self
                    .quantum
                    .as_deref()
                    .unwrap_or_default()
                    .iter()
                    .map(|s| parse_quantum(s))
                    .collect::<Result<_, _>>()?;
                ConstructionParams::Sl { r: self.r, quantum, q }
            }
            Family::Su => {
                forbid(self.quantum.is_some(), "quantum")?;
                let k = need(self.k, "k")?;
                let p = self.p.ok_or(IoError::MissingField { family, field: "p" })?;
                let delta = self.delta.clone().ok_or(IoError::MissingField { family, field: "delta" })?;
                if let Some(m) = self.m {
                    if m != delta.len() {
                        return Err(IoError::Inconsistent(format!("m = {m} but delta has {} entries", delta.len())));
                    }
                }
                ConstructionParams::Su { r: self.r, k, p, q, delta }
            }
            Family::Sp => {
                forbid(self.quantum.is_some(), "quantum")?;
                forbid(self.m.is_some(), "m")?;
                forbid(self.delta.is_some(), "delta")?;
                let k = need(self.k, "k")?;
                let p = self.p.ok_or(IoError::MissingField { family, field: "p" })?;
                ConstructionParams::Sp { r: self.r, k, p, q }
            }
            Family::O => {
                forbid(self.quantum.is_some(), "quantum")?;
                forbid(self.k.is_some(), "k")?;
                forbid(self.p.is_some(), "p")?;
                forbid(self.m.is_some(), "m")?;
                forbid(self.delta.is_some(), "delta")?;
                ConstructionParams::O { r: self.r, q }
            }
        };
        check_limits(&params)?;
        if let Some(t) = &self.torus {
            match params.torus() {
                Ok(expected) if &expected == t => {}
                _ => return Err(IoError::Inconsistent("torus does not match the parameters".into())),
            }
        }
        Ok(params)
    }
}

/// Derived facts recorded alongside the parameters.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelMetadata {
    pub matrix_size: usize,
    pub degree_rank: usize,
    pub doubled_degrees: bool,
}

impl ModelMetadata {
    pub fn of(model: &LieTorusModel) -> Self {
        Self { matrix_size: model.size(), degree_rank: model.degree_rank(), doubled_degrees: model.is_doubled() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelFile {
    pub schema_version: u32,
    pub params: ParamsRepr,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metadata: Option<ModelMetadata>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub invariants: Option<InvariantTuple>,
}

impl ModelFile {
    pub fn new(model: &LieTorusModel) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            params: ParamsRepr::from_params(model.params()),
            metadata: Some(ModelMetadata::of(model)),
            invariants: None,
        }
    }

    /// Parses and checks the schema version and field structure.
    pub fn from_json(text: &str) -> Result<Self, IoError> {
        let file: Self = serde_json::from_str(text).map_err(|e| IoError::Json(e.to_string()))?;
        if file.schema_version != SCHEMA_VERSION {
            return Err(IoError::Schema(file.schema_version));
        }
        file.params.to_params()?;
        Ok(file)
    }

    pub fn to_json(&self) -> String {
        to_sorted_json(self)
    }

    pub fn params(&self) -> Result<ConstructionParams, IoError> {
        self.params.to_params()
    }
}

/// Pretty JSON with object keys in sorted order.
pub fn to_sorted_json<T: Serialize>(value: &T) -> String {
    // serde_json::Value uses a BTreeMap unless preserve_order is enabled
    let v = serde_json::to_value(value).expect("serializable");
    serde_json::to_string_pretty(&v).expect("serializable")
}

pub fn format_quantum(f: &QuantumFactor) -> String {
    format!("{}:{}", f.order, f.exponent)
}

/// Parses `M:e`, the factor Q(ζ_M^e).
pub fn parse_quantum(s: &str) -> Result<QuantumFactor, IoError> {
    let bad = || IoError::Quantum(format!("expected M:e, got {s:?}"));
    let (m, e) = s.trim().split_once(':').ok_or_else(bad)?;
    let order: u64 = m.trim().parse().map_err(|_| bad())?;
    let exponent: i64 = e.trim().parse().map_err(|_| bad())?;
    if order == 0 {
        return Err(IoError::Quantum("order must be positive".into()));
    }
    Ok(QuantumFactor { order, exponent })
}

/// Parses `v1;v2;…` with each vector written as comma-separated integers.
pub fn parse_delta(s: &str) -> Result<Vec<Vec<i64>>, IoError> {
    let out: Vec<Vec<i64>> = s
        .split(';')
        .map(|part| {
            let part = part.trim();
            if part.is_empty() {
                return Ok(Vec::new());
            }
            part.split(',')
                .map(|x| x.trim().parse::<i64>().map_err(|_| IoError::Delta(format!("not an integer: {x:?}"))))
                .collect()
        })
        .collect::<Result<_, _>>()?;
    if let Some(first) = out.first() {
        if let Some(bad) = out.iter().position(|v| v.len() != first.len()) {
            return Err(IoError::Delta(format!("entry {bad} has length {}, expected {}", out[bad].len(), first.len())));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quantum_strings() {
        assert_eq!(parse_quantum("5:2").unwrap(), QuantumFactor { order: 5, exponent: 2 });
        assert_eq!(parse_quantum(" 4 : -1 ").unwrap(), QuantumFactor { order: 4, exponent: -1 });
        assert!(parse_quantum("0:1").is_err());
        assert!(parse_quantum("5").is_err());
        assert!(parse_quantum("a:1").is_err());
    }

    #[test]
    fn delta_strings() {
        assert_eq!(parse_delta("0,0;1,0").unwrap(), vec![vec![0, 0], vec![1, 0]]);
        assert_eq!(parse_delta("").unwrap(), vec![Vec::<i64>::new()]);
        assert!(parse_delta("0,0;1").is_err());
        assert!(parse_delta("0,x").is_err());
    }

    #[test]
    fn model_file_round_trip() {
        for params in [
            ConstructionParams::Sp { r: 3, k: 1, p: 0, q: 0 },
            ConstructionParams::Sl { r: 2, quantum: vec![QuantumFactor { order: 3, exponent: 1 }], q: 1 },
            ConstructionParams::Su { r: 2, k: 0, p: 1, q: 0, delta: vec![vec![0]] },
            ConstructionParams::O { r: 4, q: 2 },
        ] {
            let model = LieTorusModel::construct(params.clone()).unwrap();
            let text = ModelFile::new(&model).to_json();
            let back = ModelFile::from_json(&text).unwrap();
            assert_eq!(back.params().unwrap(), params);
            assert_eq!(back.to_json(), text);
        }
    }

    #[test]
    fn model_file_rejections() {
        let ok = r#"{"schema_version":1,"params":{"family":"sp","r":3,"k":1,"p":0,"q":0}}"#;
        assert!(ModelFile::from_json(ok).is_ok());
        let v2 = ok.replace("\"schema_version\":1", "\"schema_version\":2");
        assert_eq!(ModelFile::from_json(&v2), Err(IoError::Schema(2)));
        let extra = ok.replace("\"q\":0", "\"q\":0,\"m\":1");
        assert!(matches!(ModelFile::from_json(&extra), Err(IoError::UnexpectedField { .. })));
        let missing = ok.replace(",\"k\":1", "");
        assert!(matches!(ModelFile::from_json(&missing), Err(IoError::MissingField { .. })));
        assert!(matches!(ModelFile::from_json("{"), Err(IoError::Json(_))));
    }

    #[test]
    fn oversized_parameters_are_rejected() {
        let big_r = r#"{"schema_version":1,"params":{"family":"o","r":100000,"q":0}}"#;
        assert!(matches!(ModelFile::from_json(big_r), Err(IoError::Limit { field: "r", .. })));
        let big_q = r#"{"schema_version":1,"params":{"family":"sp","r":3,"k":1,"p":0,"q":1000000000}}"#;
        assert!(matches!(ModelFile::from_json(big_q), Err(IoError::Limit { field: "torus rank", .. })));
        let huge_k = format!(r#"{{"schema_version":1,"params":{{"family":"sp","r":3,"k":{},"p":0,"q":0}}}}"#, usize::MAX);
        assert!(matches!(ModelFile::from_json(&huge_k), Err(IoError::Limit { .. })));
        assert!(check_limits(&ConstructionParams::Sl { r: 3, quantum: vec![], q: 16 }).is_ok());
        let big_order = ConstructionParams::Sl { r: 1, quantum: vec![QuantumFactor { order: 1 << 40, exponent: 1 }], q: 0 };
        assert!(LieTorusModel::construct(big_order).is_err());
        let q = |order| QuantumFactor { order, exponent: 1 };
        let wide = ConstructionParams::Sl { r: 1, quantum: vec![q(1000), q(999)], q: 0 };
        assert!(LieTorusModel::construct(wide).is_err());
    }
}
