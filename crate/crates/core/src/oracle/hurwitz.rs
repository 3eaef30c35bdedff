//! Hurwitz and Hurwitz-Lerch zeta functions for complex `s` and parameter.
//!
//! Euler-Maclaurin summation with the cut point chosen from the precision and
//! `|s|`; plain summation when `Re s` is large enough to make it cheaper.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use rug::float::Constant;
use rug::ops::PowAssign;
use rug::{Float, Rational};

use crate::error::{Error, Result};
use crate::number::BigComplex;
use crate::poly::RootOfUnity;
use crate::special::bernoulli;

/// `B_{2j} / (2j)!` for `j = 1, 2, ...`.
fn em_coeffs(prec: u32, count: usize) -> Arc<Vec<Float>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<Float>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = cache.lock().unwrap().get(&prec) {
        if v.len() >= count {
            return v.clone();
        }
    }
    let mut out = Vec::with_capacity(count);
    let mut fact = rug::Integer::from(1);
    let two_pi = Float::with_val(prec + 32, Constant::Pi) * 2u32;
    for j in 1..=count as u32 {
        fact *= (2 * j - 1) * (2 * j);
        if j <= 60 {
            out.push(Float::with_val(prec, bernoulli(2 * j) / Rational::from(&fact)));
        } else {
            // B_{2j}/(2j)! = (-1)^{j+1} 2 zeta(2j) / (2 pi)^{2j}, zeta(2j) by direct summation
            let mut z = Float::with_val(prec + 32, 1);
            let mut m = 2u32;
            loop {
                let mut t = Float::with_val(prec + 32, m);
                t.pow_assign(-(2 * j as i32));
                if t.get_exp().unwrap_or(i32::MIN) < -(prec as i32) - 40 {
                    break;
                }
                z += t;
                m += 1;
            }
            let mut tp = two_pi.clone();
            tp.pow_assign(2 * j as i32);
            let v = z * 2u32 / tp;
            out.push(Float::with_val(prec, if j % 2 == 1 { v } else { -v }));
        }
    }
    let v = Arc::new(out);
    cache.lock().unwrap().insert(prec, v.clone());
    v
}

fn check_param(a: &BigComplex) -> Result<()> {
    if a.im.is_zero() && (a.re.is_zero() || (a.re.is_sign_negative() && a.re.is_integer())) {
        return Err(Error::Domain("Hurwitz parameter at a non-positive integer".into()));
    }
    Ok(())
}

/// `(m + a)^{-s}`.
fn term(m: i64, a: &BigComplex, s: &BigComplex) -> BigComplex {
    let base = a + &BigComplex::from_int(a.prec(), m);
    base.pow(&-s)
}

/// `zeta(s + k, a)` for `k = 0..=extra`, principal branches.
///
/// Accuracy is relative to the size of the largest partial sum, about `2^-prec`.
/// Smallest `x` with `rate x - s ln(e rate x / s) >= nats`: where the
/// asymptotic tail of an Euler-Maclaurin or Boole series with exponent of
/// size `s` has shrunk below `e^-nats`.
pub(crate) fn cut_point(rate: f64, nats: f64, s_abs: f64) -> f64 {
    let mut x = (nats / rate).max(1.0);
    loop {
        let y = rate * x;
        let growth = if s_abs > 1.0 { s_abs * (y * std::f64::consts::E / s_abs).max(1.0).ln() } else { 0.0 };
        if y - growth >= nats {
            return x;
        }
        x = x * 1.05 + 0.5;
    }
}

/// `zeta(s + k, a)` for `k = 0..=extra`, principal branches.
///
/// The error is about `2^-prec` times the largest term summed.
pub fn hurwitz_shifted(s: &BigComplex, a: &BigComplex, extra: usize, prec: u32) -> Result<Vec<BigComplex>> {
    check_param(a)?;
    let sabs = s.abs().to_f64() + extra as f64;
    let are = a.re.to_f64();
    let sig = s.re.to_f64();
    let base_nats = (prec + 24) as f64 * std::f64::consts::LN_2;
    let x_cut = cut_point(2.0 * std::f64::consts::PI, base_nats + 4.0, sabs);
    // large terms at negative Re s cost absolute accuracy
    let grow = (-sig).max(0.0) * (x_cut + a.abs().to_f64() + 1.0).log2();
    let wp = prec + 24 + grow.ceil() as u32;
    let s = s.with_prec(wp);
    let a = a.with_prec(wp);
    let target = (wp as f64) * std::f64::consts::LN_2;

    if extra == 0 && sig > 1.5 {
        // Plain summation if the tail bound falls below tolerance quickly.
        let a0 = a.abs().to_f64().max(1e-300);
        let need = ((wp as f64 + 8.0) / (sig - 1.0)).exp2() * a0.max(1.0);
        let em_cost = x_cut.max(4.0) * 2.0;
        if need < em_cost && need < 1e5 {
            return Ok(vec![direct_sum(&s, &a, sig, wp)?.with_prec(prec)]);
        }
    }

    let n_cut = (cut_point(2.0 * std::f64::consts::PI, target + 4.0, sabs) + 1.0 - are).ceil().max(0.0) as i64;
    let mut out = vec![BigComplex::zero(wp); extra + 1];
    // Direct part: (m+a)^{-s-k} = (m+a)^{-s} (m+a)^{-k}
    for m in 0..n_cut {
        let base = &a + &BigComplex::from_int(wp, m);
        let mut t = term(m, &a, &s);
        let inv = base.recip();
        for (k, o) in out.iter_mut().enumerate() {
            if k > 0 {
                t = &t * &inv;
            }
            *o += &t;
        }
    }
    let x = &a + &BigComplex::from_int(wp, n_cut);
    let x_inv = x.recip();
    let x_inv2 = x_inv.sqr();
    let mut x_pow = term(n_cut, &a, &s); // x^{-s-k}
    let mut coeffs = em_coeffs(wp, 64);
    for (k, o) in out.iter_mut().enumerate() {
        if k > 0 {
            x_pow = &x_pow * &x_inv;
        }
        let sk = &s + &BigComplex::from_int(wp, k as i64);
        let one = BigComplex::one(wp);
        let sk1 = &sk - &one;
        if sk1.is_zero() {
            return Err(Error::Domain("Hurwitz zeta pole at s = 1".into()));
        }
        // integral tail x^{1-s}/(s-1) and half endpoint term
        let integral = &(&x_pow * &x) / &sk1;
        let half = x_pow.div_i64(2);
        let mut acc = &integral + &half;
        let scale = o.log2_abs().max(acc.log2_abs());
        let tol = scale - wp as f64;
        // sum_j B_2j/(2j)! (s)_{2j-1} x^{-s-2j+1}
        let mut poch = sk.clone(); // (s)_{2j-1}
        let mut xp = &x_pow * &x_inv;
        let mut j = 0usize;
        let mut prev = f64::INFINITY;
        loop {
            if j >= coeffs.len() {
                coeffs = em_coeffs(wp, coeffs.len() * 2);
            }
            let t = (&poch * &xp).scale(&coeffs[j]);
            let mag = t.log2_abs();
            acc += &t;
            if mag < tol || t.is_zero() {
                break;
            }
            if mag > prev && j > 2 {
                return Err(Error::NonConvergence("Euler-Maclaurin tail diverged".into()));
            }
            prev = mag;
            let f1 = &sk + &BigComplex::from_int(wp, 2 * j as i64 + 1);
            let f2 = &sk + &BigComplex::from_int(wp, 2 * j as i64 + 2);
            poch = &(&poch * &f1) * &f2;
            if poch.is_zero() {
                break;
            }
            xp = &xp * &x_inv2;
            j += 1;
        }
        *o += &acc;
    }
    Ok(out.into_iter().map(|v| v.with_prec(prec)).collect())
}

fn direct_sum(s: &BigComplex, a: &BigComplex, sig: f64, wp: u32) -> Result<BigComplex> {
    let mut acc = BigComplex::zero(wp);
    let mut m = 0i64;
    let first = term(0, a, s).log2_abs();
    loop {
        let t = term(m, a, s);
        let mag = t.log2_abs();
        acc += &t;
        let base = (a.re.to_f64() + m as f64).max(1.0);
        // tail <= |t| * base / (sigma - 1)
        let tail = mag + (base / (sig - 1.0)).log2();
        if tail < first.max(acc.log2_abs()) - wp as f64 - 4.0 {
            return Ok(acc);
        }
        m += 1;
        if m > 2_000_000 {
            return Err(Error::NonConvergence("direct Hurwitz summation".into()));
        }
    }
}

pub fn hurwitz(s: &BigComplex, a: &BigComplex, prec: u32) -> Result<BigComplex> {
    Ok(hurwitz_shifted(s, a, 0, prec)?.pop().unwrap())
}

/// Extra bits lost when the twisted sum is assembled from `q` Hurwitz values.
fn twist_guard(s: &BigComplex, mu: &RootOfUnity) -> u32 {
    let q = mu.order() as f64;
    let p = mu.numer() as f64;
    let d = (p / q).min(1.0 - p / q);
    let loss = (-s.re.to_f64()).max(0.0) * (q * d).log2() + 8.0;
    loss.ceil() as u32
}

/// `sum_{m>=0} mu^m (m + x)^{-(s+k)}` for `k = 0..=extra`; `mu = None` is untwisted.
pub fn hurwitz_lerch_shifted(
    s: &BigComplex,
    x: &BigComplex,
    mu: Option<&RootOfUnity>,
    extra: usize,
    prec: u32,
) -> Result<Vec<BigComplex>> {
    let Some(mu) = mu else {
        return hurwitz_shifted(s, x, extra, prec);
    };
    // The reduction below has a removable singularity at s + k = 1; that
    // entry is summed directly instead.
    if let Some(n) = s.as_exact_integer() {
        let kp = 1 - n;
        if kp >= 0 && (kp as usize) <= extra {
            let kp = kp as usize;
            let mut out = Vec::with_capacity(extra + 1);
            if kp > 0 {
                out.extend(hurwitz_lerch_shifted(s, x, Some(mu), kp - 1, prec)?);
            }
            let one = BigComplex::one(s.prec());
            out.push(super::kernel::Kernel::new(1, Some(*mu), 0).boole_sum(&one, x, prec)?);
            if extra > kp {
                let s2 = BigComplex::from_int(s.prec(), 2);
                out.extend(hurwitz_lerch_shifted(&s2, x, Some(mu), extra - kp - 1, prec)?);
            }
            return Ok(out);
        }
    }
    let q = mu.order() as i64;
    let wp = prec + twist_guard(s, mu) + 8;
    let s = s.with_prec(wp);
    let x = x.with_prec(wp);
    let qc = BigComplex::from_int(wp, q);
    let mut out = vec![BigComplex::zero(wp); extra + 1];
    for a in 0..q {
        let w = BigComplex::root_of_unity(wp, mu.numer() as i64 * a, mu.order());
        let y = (&x + &BigComplex::from_int(wp, a)).div_i64(q);
        let vals = hurwitz_shifted(&s, &y, extra, wp)?;
        for (o, v) in out.iter_mut().zip(vals) {
            *o += &(&v * &w);
        }
    }
    // q^{-s-k}
    let mut qp = qc.pow(&(-&s));
    let qinv = qc.recip();
    for (k, o) in out.iter_mut().enumerate() {
        if k > 0 {
            qp = &qp * &qinv;
        }
        *o = &*o * &qp;
    }
    Ok(out.into_iter().map(|v| v.with_prec(prec)).collect())
}

pub fn hurwitz_lerch(s: &BigComplex, x: &BigComplex, mu: Option<&RootOfUnity>, prec: u32) -> Result<BigComplex> {
    Ok(hurwitz_lerch_shifted(s, x, mu, 0, prec)?.pop().unwrap())
}

/// Lerch `phi_mu(s) = sum_{m>=1} mu^m m^{-s}`.
pub fn lerch(s: &BigComplex, mu: &RootOfUnity, prec: u32) -> Result<BigComplex> {
    let wp = prec + 8;
    let one = BigComplex::one(wp);
    let v = hurwitz_lerch(s, &one, Some(mu), wp)?;
    let m = mu.numeric(wp);
    Ok((&v * &m).with_prec(prec))
}

/// Riemann zeta.
pub fn riemann(s: &BigComplex, prec: u32) -> Result<BigComplex> {
    hurwitz(s, &BigComplex::one(s.prec().max(prec)), prec)
}
