use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::matcore::json::{matrix_from_value, matrix_to_json};
use crate::matcore::{CMat, Matrix};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum DecompKind {
    #[serde(rename = "coninvolutory-sum")]
    ConinvolutorySum,
    #[serde(rename = "skew-sum")]
    SkewSum,
    #[serde(rename = "thm1a")]
    Thm1a,
    #[serde(rename = "thm1b")]
    Thm1b,
}

impl DecompKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            DecompKind::ConinvolutorySum => "coninvolutory-sum",
            DecompKind::SkewSum => "skew-sum",
            DecompKind::Thm1a => "thm1a",
            DecompKind::Thm1b => "thm1b",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        [
            DecompKind::ConinvolutorySum,
            DecompKind::SkewSum,
            DecompKind::Thm1a,
            DecompKind::Thm1b,
        ]
        .into_iter()
        .find(|k| k.as_str() == s)
    }
}

/// One provenance record: which stage ran and what it chose.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LogEntry {
    pub stage: String,
    pub detail: String,
}

pub const NONOPTIMAL_COUNT: &str = "nonoptimal_count";

#[derive(Clone, Debug, PartialEq)]
pub struct Decomposition {
    pub kind: DecompKind,
    /// For `thm1a` and `thm1b`: the involutory (coninvolutory) part first,
    /// then the diagonalizable part.
    pub summands: Vec<Matrix>,
    pub log: Vec<LogEntry>,
    pub flags: Vec<String>,
}

impl Decomposition {
    pub fn new(kind: DecompKind) -> Self {
        Decomposition {
            kind,
            summands: Vec::new(),
            log: Vec::new(),
            flags: Vec::new(),
        }
    }

    pub fn from_floating(kind: DecompKind, summands: Vec<CMat>) -> Self {
        Decomposition {
            summands: summands.into_iter().map(Matrix::Floating).collect(),
            ..Decomposition::new(kind)
        }
    }

    pub fn count(&self) -> usize {
        self.summands.len()
    }

    pub fn note(&mut self, stage: &str, detail: impl Into<String>) {
        self.log.push(LogEntry {
            stage: stage.to_string(),
            detail: detail.into(),
        });
    }

    pub fn has_flag(&self, flag: &str) -> bool {
        self.flags.iter().any(|f| f == flag)
    }

    pub fn summands_c64(&self) -> Vec<CMat> {
        self.summands.iter().map(|m| m.to_c64()).collect()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "kind": self.kind.as_str(),
            "summands": self.summands.iter().map(matrix_to_json).collect::<Vec<_>>(),
            "log": self.log,
            "flags": self.flags,
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let kind = v["kind"]
            .as_str()
            .and_then(DecompKind::parse)
            .ok_or_else(|| Error::Parse(format!("unknown decomposition kind {}", v["kind"])))?;
        let summands = v["summands"]
            .as_array()
            .ok_or_else(|| Error::Parse("missing summands".into()))?
            .iter()
            .map(matrix_from_value)
            .collect::<Result<Vec<_>>>()?;
        let log = match v.get("log") {
            Some(l) if !l.is_null() => serde_json::from_value(l.clone())
                .map_err(|e| Error::Parse(format!("bad log: {e}")))?,
            _ => Vec::new(),
        };
        let flags = match v.get("flags") {
            Some(f) if !f.is_null() => serde_json::from_value(f.clone())
                .map_err(|e| Error::Parse(format!("bad flags: {e}")))?,
            _ => Vec::new(),
        };
        Ok(Decomposition {
            kind,
            summands,
            log,
            flags,
        })
    }
}
