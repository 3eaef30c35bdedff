//! Closed forms against the numerical oracle.

use serde_json::json;

use super::family::{Family, Level};
use super::limit::{directional_limit, value_at_neg, Limit};
use super::mb::ContourSpec;
use crate::closed::{fully_twisted_neg, zeta_nn1_neg, zeta_nn1_power_neg, zeta_nn2_theta, EvalRequest, Variant};
use crate::error::{Error, Result};
use crate::number::BigComplex;
use crate::poly::ParameterSet;

/// A closed value matches when it is within `2^{-(prec - GUARD_BITS)}`.
pub const GUARD_BITS: u32 = 36;

/// Which closed form a parameter set is checked against: power exponents
/// select the power family, a direction `theta` the two-untwisted family,
/// `k = n` the fully twisted one, otherwise `k = n - 1`.
pub fn infer_level(p: &ParameterSet) -> Level {
    if p.h.is_some() {
        Level::Power
    } else if p.theta.is_some() {
        Level::Nn2
    } else if p.k == p.n {
        Level::Nn
    } else {
        Level::Nn1
    }
}

#[derive(Clone, Debug)]
pub struct VariantCheck {
    /// `None` for families whose value has no prefactor convention
    pub variant: Option<Variant>,
    pub closed_text: String,
    pub closed: BigComplex,
    pub log2_discrepancy: f64,
    pub matches: bool,
}

#[derive(Clone, Debug)]
pub struct OracleReport {
    pub level: Level,
    pub params: ParameterSet,
    pub point: Vec<u32>,
    pub tolerance_log2: f64,
    pub oracle: Option<Limit>,
    pub checks: Vec<VariantCheck>,
    pub error: Option<Error>,
}

impl OracleReport {
    /// Variants (by name) that match the oracle.
    pub fn matching(&self) -> Vec<Option<Variant>> {
        self.checks.iter().filter(|c| c.matches).map(|c| c.variant).collect()
    }

    /// Both prefactor conventions were tried and they give different values.
    pub fn separates_variants(&self) -> bool {
        let v: Vec<&VariantCheck> = self.checks.iter().filter(|c| c.variant.is_some()).collect();
        v.len() == 2 && (&v[0].closed - &v[1].closed).log2_abs() > self.tolerance_log2
    }

    pub fn all_match(&self) -> bool {
        self.error.is_none() && !self.checks.is_empty() && self.checks.iter().any(|c| c.matches)
            && (self.separates_variants() || self.checks.iter().all(|c| c.matches))
    }

    pub fn to_json(&self) -> serde_json::Value {
        let point: Vec<String> = self.point.iter().map(|&n| neg_label(n)).collect();
        let checks: Vec<serde_json::Value> = self
            .checks
            .iter()
            .map(|c| {
                json!({
                    "variant": c.variant.map(|v| v.name()),
                    "closed_form": c.closed_text,
                    "closed_numeric": c.closed.to_string(),
                    "log2_discrepancy": finite(c.log2_discrepancy),
                    "verdict": if c.matches { "match" } else { "mismatch" },
                })
            })
            .collect();
        json!({
            "level": self.level.name(),
            "params": self.params.to_json(),
            "point": point,
            "tolerance_log2": self.tolerance_log2,
            "oracle": self.oracle.as_ref().map(|o| o.to_json()),
            "checks": checks,
            "error": self.error.as_ref().map(|e| e.to_json()),
        })
    }
}

/// `-n` as written in reports, `0` for zero.
pub fn neg_label(n: u32) -> String {
    if n == 0 {
        "0".into()
    } else {
        format!("-{n}")
    }
}

fn finite(x: f64) -> serde_json::Value {
    if x.is_finite() {
        json!((x * 1000.0).round() / 1000.0)
    } else {
        serde_json::Value::Null
    }
}

fn closed_value(req: &EvalRequest, level: Level) -> Result<crate::closed::EvalResult> {
    match level {
        Level::Nn => fully_twisted_neg(req),
        Level::Nn1 => zeta_nn1_neg(req),
        Level::Nn2 => zeta_nn2_theta(req),
        Level::Power => zeta_nn1_power_neg(req),
    }
}

/// The oracle value at `-N` for a parameter set.
pub fn oracle_value(p: &ParameterSet, level: Level, point: &[u32], spec: &ContourSpec, prec: u32) -> Result<Limit> {
    let f = Family::from_params(p, level)?;
    match level {
        Level::Nn2 => {
            let theta = p.theta.clone().ok_or_else(|| Error::validation("theta", "the direction theta is required"))?;
            directional_limit(&f, point, &theta, spec, prec)
        }
        _ => value_at_neg(&f, point, spec, prec),
    }
}

/// Runs one request: closed form for each listed variant, one oracle value.
pub fn check_one(req: &EvalRequest, variants: &[Variant], spec: &ContourSpec, prec: u32) -> OracleReport {
    let level = infer_level(&req.params);
    let tol = -((prec - GUARD_BITS.min(prec)) as f64);
    let mut report = OracleReport {
        level,
        params: req.params.clone(),
        point: req.point.clone(),
        tolerance_log2: tol,
        oracle: None,
        checks: Vec::new(),
        error: None,
    };
    let mut closed = Vec::new();
    for &v in variants {
        match closed_value(&req.clone().variant(v).prec(prec), level) {
            Ok(r) => {
                let dup = closed.iter().any(|(x, _): &(Option<Variant>, _)| x.is_none());
                if r.variant.is_none() && dup {
                    continue;
                }
                closed.push((r.variant, r.value));
            }
            Err(e) => {
                report.error = Some(e);
                return report;
            }
        }
    }
    let oracle = match oracle_value(&req.params, level, &req.point, spec, prec) {
        Ok(o) => o,
        Err(e) => {
            report.error = Some(e);
            return report;
        }
    };
    for (variant, value) in closed {
        let z = value.to_numeric(prec);
        let d = (&z - &oracle.value).log2_abs();
        report.checks.push(VariantCheck {
            variant,
            closed_text: value.to_text(),
            closed: z,
            log2_discrepancy: d,
            matches: d < tol,
        });
    }
    report.oracle = Some(oracle);
    report
}

pub fn crosscheck(suite: &[EvalRequest], spec: &ContourSpec, prec: u32) -> Vec<OracleReport> {
    suite.iter().map(|r| check_one(r, &Variant::ALL, spec, prec)).collect()
}

/// Outcome of comparing the two prefactor conventions over a suite.
#[derive(Clone, Debug, PartialEq)]
pub struct Adjudication {
    /// reports where the conventions give different values
    pub separating: usize,
    /// the convention matching the oracle in every separating report
    pub variant: Option<Variant>,
    /// every separating report has exactly one matching convention, always
    /// the same one
    pub consistent: bool,
}

impl Adjudication {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "separating_cases": self.separating,
            "adjudicated_variant": self.variant.map(|v| v.name()),
            "consistent": self.consistent,
        })
    }
}

pub fn adjudicate(reports: &[OracleReport]) -> Adjudication {
    let mut winner: Option<Variant> = None;
    let mut consistent = true;
    let mut separating = 0;
    for r in reports {
        if r.error.is_some() {
            consistent = false;
            continue;
        }
        if !r.separates_variants() {
            continue;
        }
        separating += 1;
        let m: Vec<Variant> = r.matching().into_iter().flatten().collect();
        if m.len() != 1 {
            consistent = false;
            continue;
        }
        match winner {
            None => winner = Some(m[0]),
            Some(w) if w != m[0] => consistent = false,
            _ => {}
        }
    }
    let consistent = consistent && separating > 0;
    Adjudication { separating, variant: if consistent { winner } else { None }, consistent }
}

/// Summary line for a report list.
pub fn summary(reports: &[OracleReport]) -> serde_json::Value {
    let passed = reports.iter().filter(|r| r.all_match()).count();
    json!({
        "summary": {
            "cases": reports.len(),
            "passed": passed,
            "failed": reports.len() - passed,
            "adjudication": adjudicate(reports).to_json(),
        }
    })
}
