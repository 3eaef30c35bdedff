use std::fmt;

use serde::{Deserialize, Serialize};

use crate::number::{BigComplex, ExactValue};
use crate::poly::{Mode, ParameterSet};

/// Prefactor convention when a mixed-domain value (`m_1 >= 1`, `m_j >= 0`)
/// is rewritten over the all-positive domain.
///
/// `DerivedPrefactor` multiplies by `prod_{j=2}^{d} mu_j^{-1}`, the factor
/// produced by the substitution `m_j -> m_j - 1`; `AsPrinted` omits it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    AsPrinted,
    DerivedPrefactor,
}

impl Variant {
    pub const ALL: [Variant; 2] = [Variant::AsPrinted, Variant::DerivedPrefactor];

    pub fn name(&self) -> &'static str {
        match self {
            Variant::AsPrinted => "as_printed",
            Variant::DerivedPrefactor => "derived_prefactor",
        }
    }

    pub fn parse(s: &str) -> Option<Variant> {
        match s {
            "as_printed" | "as-printed" => Some(Variant::AsPrinted),
            "derived_prefactor" | "derived-prefactor" | "derived" => Some(Variant::DerivedPrefactor),
            _ => None,
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Exact(ExactValue),
    Numeric(BigComplex),
}

impl Value {
    pub fn to_numeric(&self, prec: u32) -> BigComplex {
        match self {
            Value::Exact(v) => v.embed_numeric(prec),
            Value::Numeric(z) => z.with_prec(prec),
        }
    }

    pub fn as_exact(&self) -> Option<&ExactValue> {
        match self {
            Value::Exact(v) => Some(v),
            Value::Numeric(_) => None,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        match self {
            Value::Exact(v) => v.to_json(),
            Value::Numeric(z) => z.to_string().into(),
        }
    }

    pub fn to_text(&self) -> String {
        match self {
            Value::Exact(v) => v.to_text(),
            Value::Numeric(z) => z.to_string(),
        }
    }
}

/// One scalar special value consumed by an evaluation.
#[derive(Clone, Debug, PartialEq)]
pub enum TraceEntry {
    Lerch { mu: String, k: u32, value: serde_json::Value },
    Hurwitz { l: u32, a: String, value: serde_json::Value },
    PowerHurwitz { l: u32, h: u32, b: String, value: serde_json::Value },
}

impl TraceEntry {
    pub fn to_json(&self) -> serde_json::Value {
        match self {
            TraceEntry::Lerch { mu, k, value } => {
                serde_json::json!({"kind": "lerch", "mu": mu, "k": k, "value": value})
            }
            TraceEntry::Hurwitz { l, a, value } => {
                serde_json::json!({"kind": "hurwitz", "l": l, "a": a, "value": value})
            }
            TraceEntry::PowerHurwitz { l, h, b, value } => {
                serde_json::json!({"kind": "power_hurwitz", "l": l, "h": h, "b": b, "value": value})
            }
        }
    }
}

/// Input to the closed-form evaluators: parameters, the point `-N`, the
/// prefactor variant and (numeric mode) the output precision in bits.
#[derive(Clone, Debug)]
pub struct EvalRequest {
    pub params: ParameterSet,
    pub point: Vec<u32>,
    pub variant: Variant,
    pub prec: u32,
}

impl EvalRequest {
    pub fn new(params: ParameterSet, point: Vec<u32>) -> Self {
        EvalRequest { params, point, variant: Variant::DerivedPrefactor, prec: 166 }
    }

    pub fn variant(mut self, v: Variant) -> Self {
        self.variant = v;
        self
    }

    pub fn prec(mut self, prec: u32) -> Self {
        self.prec = prec;
        self
    }
}

#[derive(Clone, Debug)]
pub struct EvalResult {
    pub family: &'static str,
    pub value: Value,
    pub mode: Mode,
    /// `None` when the prefactor convention cannot affect the value.
    pub variant: Option<Variant>,
    pub trace: Vec<TraceEntry>,
}

impl EvalResult {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "family": self.family,
            "value": self.value.to_json(),
            "mode": self.mode.to_string(),
            "variant": self.variant.map(|v| v.name()),
            "trace": self.trace.iter().map(TraceEntry::to_json).collect::<Vec<_>>(),
        })
    }
}
