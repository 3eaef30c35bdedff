//! Complex Gamma function at arbitrary precision.
//!
//! `ln Gamma` uses the Stirling series after shifting the argument to the
//! right with the functional equation; the left half-plane uses reflection.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use rug::float::Constant;
use rug::{Float, Rational};

use crate::error::{Error, Result};
use crate::number::BigComplex;
use crate::special::bernoulli;

/// `B_{2k} / (2k (2k-1))` for `k = 1, 2, ...` at the given precision.
fn stirling_coeffs(prec: u32, count: usize) -> Arc<Vec<Float>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<Float>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = cache.lock().unwrap().get(&prec) {
        if v.len() >= count {
            return v.clone();
        }
    }
    let v: Vec<Float> = (1..=count as u32)
        .map(|k| Float::with_val(prec, bernoulli(2 * k) / Rational::from(2 * k * (2 * k - 1))))
        .collect();
    let v = Arc::new(v);
    cache.lock().unwrap().insert(prec, v.clone());
    v
}

/// Some branch of `ln Gamma(z)`; only `exp` of the result is meaningful.
pub fn ln_gamma(z: &BigComplex) -> Result<BigComplex> {
    let prec = z.prec();
    let wp = prec + 16;
    let z = z.with_prec(wp);
    if z.re < 0.5 {
        let s = z.sin_pi();
        if s.is_zero() {
            return Err(Error::Domain("Gamma pole at a non-positive integer".into()));
        }
        let one = BigComplex::one(wp);
        let pi = BigComplex::from_real(BigComplex::pi(wp));
        let r = &(&pi.ln() - &s.ln()) - &ln_gamma(&(&one - &z))?;
        return Ok(r.with_prec(prec));
    }
    let target = 0.25 * wp as f64 + 8.0;
    let mut w = z.clone();
    let mut prod: Option<BigComplex> = None;
    let re = z.re.to_f64();
    if z.abs().to_f64() < target {
        let shift = (target - re).ceil().max(0.0) as i64;
        let mut p = z.clone();
        for k in 1..shift {
            p = &p * &(&z + &BigComplex::from_int(wp, k));
        }
        w = &z + &BigComplex::from_int(wp, shift);
        if shift > 0 {
            prod = Some(p);
        }
    }
    let mut r = stirling(&w)?;
    if let Some(p) = prod {
        r = &r - &p.ln();
    }
    Ok(r.with_prec(prec))
}

fn stirling(w: &BigComplex) -> Result<BigComplex> {
    let wp = w.prec();
    let half = BigComplex::from_f64(wp, 0.5, 0.0);
    let ln_w = w.ln();
    let two_pi = Float::with_val(wp, Constant::Pi) * 2u32;
    let mut acc = &(&(w - &half) * &ln_w) - w;
    acc.re += Float::with_val(wp, two_pi.ln_ref()) / 2u32;
    let inv = w.recip();
    let inv2 = inv.sqr();
    let mut pw = inv;
    let tol = -(wp as f64) - 4.0 + acc.log2_abs().max(0.0);
    let mut count = 64usize;
    let mut coeffs = stirling_coeffs(wp, count);
    let mut k = 0usize;
    let mut prev = f64::INFINITY;
    loop {
        if k >= count {
            count *= 2;
            coeffs = stirling_coeffs(wp, count);
        }
        let term = pw.scale(&coeffs[k]);
        let m = term.log2_abs();
        acc += &term;
        if m < tol {
            return Ok(acc);
        }
        if m > prev + 1.0 && k > 4 {
            return Err(Error::NonConvergence("Stirling series diverged".into()));
        }
        prev = m;
        pw = &pw * &inv2;
        k += 1;
    }
}

pub fn gamma(z: &BigComplex) -> Result<BigComplex> {
    Ok(ln_gamma(z)?.exp())
}

/// `1/Gamma(z)`, entire; exactly zero at non-positive integers.
pub fn rgamma(z: &BigComplex) -> Result<BigComplex> {
    if let Some(n) = z.as_exact_integer() {
        if n <= 0 {
            return Ok(BigComplex::zero(z.prec()));
        }
    }
    if z.re < 0.5 {
        // 1/Gamma(z) = sin(pi z) Gamma(1 - z) / pi
        let prec = z.prec();
        let one = BigComplex::one(prec + 8);
        let g = gamma(&(&one - &z.with_prec(prec + 8)))?;
        let pi = BigComplex::pi(prec + 8);
        let v = (&z.with_prec(prec + 8).sin_pi() * &g).scale(&Float::with_val(prec + 8, pi.recip_ref()));
        return Ok(v.with_prec(prec));
    }
    Ok((-ln_gamma(z)?).exp())
}

/// Mellin-Barnes weight `Gamma(s + z) Gamma(-z) / Gamma(s)`, with `1/Gamma(s)` supplied.
pub fn mb_weight(s: &BigComplex, z: &BigComplex, rgamma_s: &BigComplex) -> Result<BigComplex> {
    if rgamma_s.is_zero() {
        return Ok(BigComplex::zero(z.prec()));
    }
    let l = &ln_gamma(&(s + z))? + &ln_gamma(&(-z))?;
    Ok(&l.exp() * rgamma_s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: &BigComplex, b: &BigComplex, bits: f64) -> bool {
        (a - b).log2_abs() < -bits + b.log2_abs().max(0.0)
    }

    #[test]
    fn known_values() {
        let p = 200;
        let half = BigComplex::from_f64(p, 0.5, 0.0);
        let sqrt_pi = BigComplex::from_real(Float::with_val(p, BigComplex::pi(p).sqrt_ref()));
        assert!(close(&gamma(&half).unwrap(), &sqrt_pi, 190.0));
        let six = BigComplex::from_int(p, 6);
        assert!(close(&gamma(&six).unwrap(), &BigComplex::from_int(p, 120), 190.0));
        let neg = BigComplex::from_f64(p, -2.5, 0.0);
        // Gamma(-5/2) = -8 sqrt(pi) / 15
        let expect = sqrt_pi.mul_i64(-8).div_i64(15);
        assert!(close(&gamma(&neg).unwrap(), &expect, 185.0));
        assert!(rgamma(&BigComplex::from_int(p, -3)).unwrap().is_zero());
    }

    #[test]
    fn recurrence_and_reflection_off_axis() {
        let p = 256;
        let z = BigComplex::from_f64(p, 0.3, 7.25);
        let one = BigComplex::one(p);
        let lhs = gamma(&(&z + &one)).unwrap();
        let rhs = &z * &gamma(&z).unwrap();
        assert!(close(&lhs, &rhs, 240.0));
        // Gamma(z) Gamma(1 - z) sin(pi z) = pi
        let w = BigComplex::from_f64(p, -3.7, -2.5);
        let prod = &(&gamma(&w).unwrap() * &gamma(&(&one - &w)).unwrap()) * &w.sin_pi();
        assert!(close(&prod, &BigComplex::from_real(BigComplex::pi(p)), 240.0));
        let r = &rgamma(&w).unwrap() * &gamma(&w).unwrap();
        assert!(close(&r, &one, 240.0));
    }
}
