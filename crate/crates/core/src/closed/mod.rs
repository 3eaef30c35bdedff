//! Closed-form special values at non-positive integers.
//!
//! Every evaluator runs in one of two modes: exact, in the cyclotomic field
//! generated by the twists, or numeric, in arbitrary-precision complex
//! arithmetic. Both share the same field-generic formulas.

mod engine;
pub mod result;

use rug::Rational;

use crate::error::{Error, Result};
use crate::number::{BigComplex, ExactValue, FieldContext, Scalar};
use crate::poly::{Mode, ParameterSet};
use engine::Engine;
pub use result::{EvalRequest, EvalResult, TraceEntry, Value, Variant};

/// Guard bits carried by numeric-mode evaluation.
const NUMERIC_GUARD: u32 = 64;

fn check_point(req: &EvalRequest) -> Result<()> {
    if req.point.len() != req.params.n {
        return Err(Error::validation(
            "dimension",
            format!("N must have length n = {}, got {}", req.params.n, req.point.len()),
        ));
    }
    Ok(())
}

fn check_twists(p: &ParameterSet, k: usize, family: &str) -> Result<()> {
    if p.k != k {
        return Err(Error::validation(
            "twist count",
            format!("{family} needs k = {k} twisted variables, got k = {}", p.k),
        ));
    }
    Ok(())
}

/// Runs `f` in the requested mode and packages the value.
fn run(
    req: &EvalRequest,
    family: &'static str,
    variant: Option<crate::closed::Variant>,
    f: impl Fn(&mut dyn AnyEngine) -> Result<()>,
) -> Result<EvalResult> {
    let p = &req.params;
    match p.mode {
        Mode::Exact => {
            let ctx = FieldContext::get(p.field_level()?);
            let roots = p.roots()?;
            let mu = roots.iter().map(|r| r.exact(&ctx)).collect();
            let labels = roots.iter().map(|r| r.label()).collect();
            let mut e = Slot::new(Engine::new(ExactValue::one(&ctx), p.gamma.clone(), p.b.clone(), mu, labels));
            f(&mut e)?;
            Ok(EvalResult {
                family,
                value: Value::Exact(e.value.unwrap()),
                mode: Mode::Exact,
                variant,
                trace: e.engine.trace,
            })
        }
        Mode::Numeric => {
            let wp = req.prec + NUMERIC_GUARD;
            let mu = p.mu.iter().map(|t| t.numeric(wp)).collect();
            let labels = p.mu.iter().map(|t| t.label()).collect();
            let mut e = Slot::new(Engine::new(BigComplex::one(wp), p.gamma.clone(), p.b.clone(), mu, labels));
            f(&mut e)?;
            Ok(EvalResult {
                family,
                value: Value::Numeric(e.value.unwrap().with_prec(req.prec)),
                mode: Mode::Numeric,
                variant,
                trace: e.engine.trace,
            })
        }
    }
}

/// Object-safe view of an engine plus a slot for its result.
trait AnyEngine {
    fn fully_twisted(&mut self, point: &[u32]) -> Result<()>;
    fn nn1(&mut self, point: &[u32], v: Variant) -> Result<()>;
    fn nn2(&mut self, point: &[u32], v: Variant, theta: &Rational) -> Result<()>;
    fn power(&mut self, h: &[u32], point: &[u32]) -> Result<()>;
}

struct Slot<S: Scalar> {
    engine: Engine<S>,
    value: Option<S>,
}

impl<S: Scalar> Slot<S> {
    fn new(engine: Engine<S>) -> Self {
        Slot { engine, value: None }
    }
}

impl<S: Scalar> AnyEngine for Slot<S> {
    fn fully_twisted(&mut self, point: &[u32]) -> Result<()> {
        let b = self.engine.b.clone();
        self.value = Some(self.engine.all_positive(&b, point)?);
        Ok(())
    }
    fn nn1(&mut self, point: &[u32], v: Variant) -> Result<()> {
        self.value = Some(self.engine.nn1(point, v)?);
        Ok(())
    }
    fn nn2(&mut self, point: &[u32], v: Variant, theta: &Rational) -> Result<()> {
        let (t1, t2, t3) = self.engine.nn2_terms(point, v)?;
        self.value = Some(t1.plus(&t2).plus(&t3.scaled(theta)));
        Ok(())
    }
    fn power(&mut self, h: &[u32], point: &[u32]) -> Result<()> {
        self.value = Some(self.engine.power(h, point)?);
        Ok(())
    }
}

/// Fully twisted value (`k = n`) over the domain `m_j >= 1` for all `j`,
/// as a finite combination of Lerch values.
pub fn fully_twisted_neg(req: &EvalRequest) -> Result<EvalResult> {
    check_point(req)?;
    check_twists(&req.params, req.params.n, "fully twisted evaluation")?;
    run(req, "fully_twisted", None, |e| e.fully_twisted(&req.point))
}

/// Value at `-N` of the family with the first `n - 1` variables twisted and
/// summation over `m_1 >= 1`, `m_2, ..., m_n >= 0`.
pub fn zeta_nn1_neg(req: &EvalRequest) -> Result<EvalResult> {
    let p = &req.params;
    check_point(req)?;
    if p.n < 2 {
        return Err(Error::validation("dimension", "needs n >= 2"));
    }
    check_twists(p, p.n - 1, "zeta_nn1_neg")?;
    p.validate_last_gap()?;
    let variant = (p.n >= 3).then_some(req.variant);
    run(req, "nn1", variant, |e| e.nn1(&req.point, req.variant))
}

/// Directional limit at `-N` with `n - 2` twisted variables, approached with
/// `delta_n / (delta_{n-1} + delta_n) -> theta`.
pub fn zeta_nn2_theta(req: &EvalRequest) -> Result<EvalResult> {
    let p = &req.params;
    check_point(req)?;
    if p.n < 2 {
        return Err(Error::validation("dimension", "needs n >= 2"));
    }
    check_twists(p, p.n - 2, "zeta_nn2_theta")?;
    let theta = p
        .theta
        .clone()
        .ok_or_else(|| Error::validation("theta", "the direction theta is required"))?;
    p.validate_last_gap()
        .map_err(|e| level_tag(e, p.n))?;
    if p.n >= 3 {
        let mut lower = p.clone();
        lower.n -= 1;
        lower.gamma.pop();
        lower.b.pop();
        lower.validate_last_gap().map_err(|e| level_tag(e, p.n - 1))?;
    }
    let variant = (p.n >= 4).then_some(req.variant);
    run(req, "nn2_theta", variant, |e| e.nn2(&req.point, req.variant, &theta))
}

/// The three terms `(T1, T2, T3)` of [`zeta_nn2_theta`], so that the value is
/// `T1 + T2 + theta * T3`. Exact mode only.
pub fn zeta_nn2_terms(req: &EvalRequest) -> Result<(ExactValue, ExactValue, ExactValue)> {
    let p = &req.params;
    check_point(req)?;
    check_twists(p, p.n.saturating_sub(2), "zeta_nn2_terms")?;
    if p.n < 2 {
        return Err(Error::validation("dimension", "needs n >= 2"));
    }
    p.validate_last_gap()?;
    let ctx = FieldContext::get(p.field_level()?);
    let roots = p.roots()?;
    let mu = roots.iter().map(|r| r.exact(&ctx)).collect();
    let labels = roots.iter().map(|r| r.label()).collect();
    let mut e = Engine::new(ExactValue::one(&ctx), p.gamma.clone(), p.b.clone(), mu, labels);
    e.nn2_terms(&req.point, req.variant)
}

fn level_tag(e: Error, level: usize) -> Error {
    match e {
        Error::Validation { condition, detail } => {
            Error::Validation { condition: format!("level {level}: {condition}"), detail }
        }
        other => other,
    }
}

/// Power-sum family: first `n - 1` variables twisted and summed over
/// `m_j >= 1`, the last untwisted and summed over `m_n >= 0`, denominators
/// `gamma_1 m_1^{h_1} + ... + gamma_j m_j^{h_j} + b_j`.
pub fn zeta_nn1_power_neg(req: &EvalRequest) -> Result<EvalResult> {
    let p = &req.params;
    check_point(req)?;
    if p.n < 2 {
        return Err(Error::validation("dimension", "needs n >= 2"));
    }
    check_twists(p, p.n - 1, "zeta_nn1_power_neg")?;
    let h = p
        .h
        .clone()
        .ok_or_else(|| Error::validation("power exponents", "h is required"))?;
    p.validate_last_gap()?;
    run(req, "power", None, |e| e.power(&h, &req.point))
}

#[cfg(test)]
mod tests;
