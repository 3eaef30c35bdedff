//! Values at `-N` as limits along short rays.
//!
//! The family is sampled at `s = -N + t v` for `t = k 2^-48`, `k = 1..4`, and
//! the interpolating polynomial is evaluated at `t = 0` (Neville). The error
//! estimate is the change between the 3- and 4-point extrapolants plus the
//! propagated sample errors.

use rug::{Float, Rational};

use super::family::Family;
use super::mb::{log2_add, mb_eval, ContourSpec, MbValue};
use crate::error::{Error, Result};
use crate::number::BigComplex;

/// `log2` of the first step of the ladder.
pub const LADDER_LOG2: i32 = -48;
pub const LADDER_LEN: usize = 4;
/// Sum of `|Lagrange weights at 0|` for nodes `1, 2, 3, 4`.
const LEBESGUE: f64 = 15.0;

#[derive(Clone, Debug)]
pub struct Limit {
    pub value: BigComplex,
    pub log2_err: f64,
    pub samples: Vec<MbValue>,
}

impl Limit {
    pub fn to_json(&self) -> serde_json::Value {
        let digits = self.value.default_digits();
        let first = self.samples.first();
        serde_json::json!({
            "re": self.value.re.to_string_radix(10, Some(digits)),
            "im": self.value.im.to_string_radix(10, Some(digits)),
            "log2_error": if self.log2_err.is_finite() { serde_json::json!((self.log2_err * 1000.0).round() / 1000.0) } else { serde_json::Value::Null },
            "ladder": { "first_step_log2": LADDER_LOG2, "points": self.samples.len() },
            "contour": first.map(|m| m.to_json()["contour"].clone()),
        })
    }
}

/// Neville's scheme at `t = 0`.
pub fn neville_at_zero(ts: &[Float], vs: &[BigComplex]) -> BigComplex {
    let n = ts.len();
    let mut p: Vec<BigComplex> = vs.to_vec();
    for k in 1..n {
        for i in 0..n - k {
            // p_i = (t_{i+k} p_i - t_i p_{i+1}) / (t_{i+k} - t_i)
            let a = p[i].scale(&ts[i + k]);
            let b = p[i + 1].scale(&ts[i]);
            let den = Float::with_val(ts[0].prec(), &ts[i + k] - &ts[i]);
            p[i] = (&a - &b).scale(&den.recip());
        }
    }
    p.swap_remove(0)
}

/// Samples `value(t)` on the ladder and extrapolates to `t = 0`.
pub fn extrapolate(mut value: impl FnMut(&Float) -> Result<MbValue>, prec: u32) -> Result<Limit> {
    let sp = prec + 160;
    let mut ts = Vec::with_capacity(LADDER_LEN);
    let mut samples = Vec::with_capacity(LADDER_LEN);
    for k in 1..=LADDER_LEN as u32 {
        let t = Float::with_val(sp, k) << LADDER_LOG2;
        samples.push(value(&t)?);
        ts.push(t);
    }
    let vs: Vec<BigComplex> = samples.iter().map(|m| m.value.clone()).collect();
    let full = neville_at_zero(&ts, &vs);
    let short = neville_at_zero(&ts[..LADDER_LEN - 1], &vs[..LADDER_LEN - 1]);
    let sample_err = samples.iter().map(|m| m.log2_err).fold(f64::NEG_INFINITY, f64::max) + LEBESGUE.log2();
    let err = log2_add((&full - &short).log2_abs(), sample_err);
    Ok(Limit { value: full.with_prec(prec), log2_err: err, samples })
}

fn ray(f: &Family, n: &[u32], dir: &[Rational], spec: &ContourSpec, prec: u32) -> Result<Limit> {
    let d = f.dim();
    if n.len() != d || dir.len() != d {
        return Err(Error::validation("dimension", "point and direction must have one entry per variable"));
    }
    extrapolate(
        |t| {
            let s: Vec<BigComplex> = (0..d)
                .map(|j| {
                    let off = Float::with_val(t.prec(), t * &dir[j]);
                    BigComplex::from_real(Float::with_val(t.prec(), off - n[j]))
                })
                .collect();
            mb_eval(f, &s, spec, prec + 8)
        },
        prec,
    )
}

/// Value at `s = -N`, approached along the last coordinate.
pub fn value_at_neg(f: &Family, n: &[u32], spec: &ContourSpec, prec: u32) -> Result<Limit> {
    let d = f.dim();
    let mut dir = vec![Rational::new(); d];
    dir[d - 1] = Rational::from(1);
    ray(f, n, &dir, spec, prec)
}

/// Limit at `s = -N` along `delta = t ((1 - theta) e_{d-1} + theta e_d)`,
/// so that `delta_d / (delta_{d-1} + delta_d) = theta`.
pub fn directional_limit(f: &Family, n: &[u32], theta: &Rational, spec: &ContourSpec, prec: u32) -> Result<Limit> {
    let d = f.dim();
    if d < 2 {
        return Err(Error::validation("dimension", "a directional limit needs two variables"));
    }
    let mut dir = vec![Rational::new(); d];
    dir[d - 2] = Rational::from(1) - theta.clone();
    dir[d - 1] = theta.clone();
    ray(f, n, &dir, spec, prec)
}
