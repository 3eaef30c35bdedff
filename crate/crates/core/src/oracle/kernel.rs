//! One-variable kernels `K(w) = sum_{m >= lo} mu^m (m^h + x)^{-w}` and their
//! shifts `K(w + k)`.
//!
//! `h = 1` reduces to Hurwitz(-Lerch) zeta. For `h >= 2` the untwisted sum uses
//! Euler-Maclaurin with the integral tail expanded binomially (valid for all
//! `w`), the twisted sum uses Boole summation.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use rug::ops::Pow;
use rug::{Float, Rational};

use super::hurwitz::{cut_point, hurwitz_lerch_shifted, hurwitz_shifted};
use crate::error::{Error, Result};
use crate::number::BigComplex;
use crate::poly::RootOfUnity;
use crate::special::bernoulli;

/// Taylor coefficients `c_i` of `1 / (1 - mu e^t)`.
pub fn boole_coeffs(mu: &RootOfUnity, prec: u32, count: usize) -> Arc<Vec<BigComplex>> {
    type Key = (u64, u64, u32);
    static CACHE: OnceLock<Mutex<HashMap<Key, Arc<Vec<BigComplex>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let key = (mu.numer(), mu.order(), prec);
    if let Some(v) = cache.lock().unwrap().get(&key) {
        if v.len() >= count {
            return v.clone();
        }
    }
    let count = count.max(64);
    let wp = prec + 32;
    let m = mu.numeric(wp);
    let one = BigComplex::one(wp);
    let inv = (&one - &m).recip();
    let ratio = &m * &inv;
    let mut inv_fact = vec![Float::with_val(wp, 1)];
    for j in 1..=count {
        let f = Float::with_val(wp, &inv_fact[j - 1] / j as u32);
        inv_fact.push(f);
    }
    let mut c: Vec<BigComplex> = vec![inv];
    for i in 1..count {
        let mut acc = BigComplex::zero(wp);
        for j in 1..=i {
            acc += &c[i - j].scale(&inv_fact[j]);
        }
        c.push(&acc * &ratio);
    }
    let v = Arc::new(c.into_iter().map(|x| x.with_prec(prec)).collect::<Vec<_>>());
    cache.lock().unwrap().insert(key, v.clone());
    v
}

/// `2 pi` times the distance from `p/q` to the nearest integer: the radius of
/// convergence of [`boole_coeffs`].
pub fn boole_radius(mu: &RootOfUnity) -> f64 {
    let f = mu.numer() as f64 / mu.order() as f64;
    2.0 * std::f64::consts::PI * f.min(1.0 - f)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Kernel {
    pub h: u32,
    pub mu: Option<RootOfUnity>,
    pub lo: u64,
}

impl Kernel {
    pub fn new(h: u32, mu: Option<RootOfUnity>, lo: u64) -> Self {
        Kernel { h, mu, lo }
    }

    /// Poles of `K` in `w` (untwisted only): `(w_l, residue)` for `l = 0..count`.
    pub fn poles(&self, x: &BigComplex, count: usize) -> Vec<(Rational, BigComplex)> {
        if self.mu.is_some() {
            return Vec::new();
        }
        let prec = x.prec();
        if self.h == 1 {
            return vec![(Rational::from(1), BigComplex::one(prec))];
        }
        let h = self.h as i64;
        let mut out = Vec::with_capacity(count);
        // binom(l - 1/h, l) x^l / h
        let mut binom = Rational::from(1);
        let mut xp = BigComplex::one(prec);
        for l in 0..count as i64 {
            if l > 0 {
                binom *= Rational::from((l * h - 1, h)) / Rational::from(l);
                xp = &xp * x;
            }
            let r = xp.mul_rational(&(&binom / Rational::from(h)));
            out.push((Rational::from((1 - l * h, h)), r));
        }
        out
    }

    fn check(&self, x: &BigComplex) -> Result<()> {
        if x.im.is_zero() {
            let lo = Float::with_val(x.prec(), self.lo.pow(self.h));
            if Float::with_val(x.prec(), &x.re + &lo) <= 0 {
                return Err(Error::Domain(format!(
                    "kernel parameter {} puts a term on the branch cut",
                    x.re.to_f64()
                )));
            }
        }
        Ok(())
    }

    /// `K(w + k)` for `k = 0..=extra`.
    pub fn shifted(&self, w: &BigComplex, x: &BigComplex, extra: usize, prec: u32) -> Result<Vec<BigComplex>> {
        self.check(x)?;
        if self.h == 1 {
            let xs = x + &BigComplex::from_int(x.prec(), self.lo as i64);
            return match &self.mu {
                None => hurwitz_shifted(w, &xs, extra, prec),
                Some(mu) => {
                    let mut v = hurwitz_lerch_shifted(w, &xs, Some(mu), extra, prec)?;
                    if self.lo > 0 {
                        let f = BigComplex::root_of_unity(prec, (mu.numer() * self.lo) as i64, mu.order());
                        for e in v.iter_mut() {
                            *e = &*e * &f;
                        }
                    }
                    Ok(v)
                }
            };
        }
        (0..=extra)
            .map(|k| {
                let wk = w + &BigComplex::from_int(w.prec(), k as i64);
                self.boole_sum(&wk, x, prec)
            })
            .collect()
    }

    pub fn eval(&self, w: &BigComplex, x: &BigComplex, prec: u32) -> Result<BigComplex> {
        Ok(self.shifted(w, x, 0, prec)?.pop().unwrap())
    }

    /// Direct terms up to a cut, then Euler-Maclaurin (untwisted) or Boole
    /// (twisted) with Taylor jets of `((N + u)^h + x)^{-w}`. Works for any `h`.
    pub(crate) fn boole_sum(&self, w: &BigComplex, x: &BigComplex, prec: u32) -> Result<BigComplex> {
        let h = self.h;
        let xabs = x.abs().to_f64();
        let rate = match &self.mu {
            None => 2.0 * std::f64::consts::PI,
            Some(mu) => boole_radius(mu),
        };
        let hw = h as f64 * w.abs().to_f64();
        let nats0 = (prec + 24) as f64 * std::f64::consts::LN_2 + 6.0;
        let x0 = cut_point(rate, nats0, hw);
        let grow = h as f64 * (-w.re.to_f64()).max(0.0) * (x0 + xabs + 1.0).log2();
        let wp = prec + 24 + grow.ceil() as u32;
        let w = w.with_prec(wp);
        let x = x.with_prec(wp);
        let nats = wp as f64 * std::f64::consts::LN_2 + 6.0;
        let n_cut = cut_point(rate, nats, hw)
            .ceil()
            .max((2.0 * xabs + 1.0).powf(1.0 / h as f64).ceil() + 1.0)
            .max(self.lo as f64) as u64;

        let mu_num = self.mu.as_ref().map(|m| m.numeric(wp));
        let neg_w = -&w;
        let mut direct = BigComplex::zero(wp);
        let mut twist = BigComplex::root_of_unity(
            wp,
            self.mu.as_ref().map_or(0, |m| (m.numer() * self.lo) as i64),
            self.mu.as_ref().map_or(1, |m| m.order()),
        );
        for m in self.lo..n_cut {
            let base = &x + &BigComplex::from_integer(wp, &rug::Integer::from(m).pow(h));
            let t = base.pow(&neg_w);
            direct += &(&t * &twist);
            if let Some(mu) = &mu_num {
                twist = &twist * mu;
            }
        }

        // Taylor coefficients of P(u) = (N + u)^h + x.
        let n_f = Float::with_val(wp, n_cut);
        let mut p: Vec<BigComplex> = (0..=h)
            .map(|j| {
                let c = crate::number::rational::binomial(h, j) * rug::Integer::from(n_cut).pow(h - j);
                BigComplex::from_integer(wp, &c)
            })
            .collect();
        p[0] = &p[0] + &x;
        let q0 = p[0].pow(&neg_w);
        let p0_inv = p[0].recip();
        let mut q = vec![q0.clone()];
        // p_0 (i+1) Q_{i+1} = -sum_{j>=1} p_j (i-j+1) Q_{i-j+1} - w sum_{j>=0} (j+1) p_{j+1} Q_{i-j}
        let next = |q: &Vec<BigComplex>| -> BigComplex {
            let i = q.len() - 1;
            let mut acc = BigComplex::zero(wp);
            for j in 1..=(h as usize).min(i) {
                acc += &(&p[j] * &q[i - j + 1]).mul_i64((i - j + 1) as i64);
            }
            let mut acc2 = BigComplex::zero(wp);
            for j in 0..(h as usize).min(i + 1) {
                acc2 += &(&p[j + 1] * &q[i - j]).mul_i64((j + 1) as i64);
            }
            let tot = &acc + &(&w * &acc2);
            (&(-&tot) * &p0_inv).div_i64((i + 1) as i64)
        };

        let tol_base = direct.log2_abs().max(q0.log2_abs());
        let tail = match &self.mu {
            None => {
                // integral: sum_j binom(-w, j) x^j N^{1 - h(w + j)} / (h(w + j) - 1)
                let ln_n = BigComplex::from_real(Float::with_val(wp, n_f.ln_ref()));
                let one = BigComplex::one(wp);
                let hw = w.mul_i64(h as i64);
                let mut integral = BigComplex::zero(wp);
                let mut coef = (&(&one - &hw) * &ln_n).exp(); // N^{1 - h w}
                let nh_inv = BigComplex::from_real(Float::with_val(wp, (&n_f).pow(-(h as i32))));
                let xr = &x * &nh_inv;
                let mut j = 0i64;
                loop {
                    let den = &(&hw + &BigComplex::from_int(wp, h as i64 * j)) - &one;
                    if den.is_zero() {
                        return Err(Error::Domain("power kernel evaluated at a pole".into()));
                    }
                    let t = &coef / &den;
                    integral += &t;
                    if t.log2_abs() < tol_base.max(integral.log2_abs()) - wp as f64 - 4.0 || coef.is_zero() {
                        break;
                    }
                    // binom(-w, j+1)/binom(-w, j) = (-w - j)/(j + 1)
                    let f = (&neg_w - &BigComplex::from_int(wp, j)).div_i64(j + 1);
                    coef = &(&coef * &f) * &xr;
                    j += 1;
                    if j > 100_000 {
                        return Err(Error::NonConvergence("power kernel integral tail".into()));
                    }
                }
                let mut acc = &integral + &q0.div_i64(2);
                let tol = tol_base.max(acc.log2_abs()) - wp as f64 - 4.0;
                let mut jj = 1u32;
                let mut best = f64::INFINITY;
                let mut last = f64::INFINITY;
                let mut small = 0;
                loop {
                    while q.len() < 2 * jj as usize {
                        let v = next(&q);
                        q.push(v);
                    }
                    let b = Float::with_val(wp, bernoulli(2 * jj) / Rational::from(2 * jj));
                    let t = -q[2 * jj as usize - 1].scale(&b);
                    let mag = t.log2_abs();
                    acc += &t;
                    small = if mag < tol || t.is_zero() { small + 1 } else { 0 };
                    if small == 2 {
                        break;
                    }
                    if mag > best + 30.0 {
                        return Err(Error::NonConvergence("power kernel Euler-Maclaurin tail".into()));
                    }
                    // pairs of terms, since single terms may vanish by symmetry
                    best = best.min(mag.max(last));
                    last = mag;
                    jj += 1;
                }
                acc
            }
            Some(mu) => {
                // mu^N sum_i c_i i! Q_i
                let mut count = 256usize;
                let mut c = boole_coeffs(mu, wp, count);
                let mut acc = BigComplex::zero(wp);
                let mut fact = Float::with_val(wp, 1);
                let mut best = f64::INFINITY;
                let mut last = f64::INFINITY;
                let mut small = 0;
                let mut i = 0usize;
                loop {
                    if i >= count {
                        count *= 2;
                        c = boole_coeffs(mu, wp, count);
                    }
                    while q.len() <= i {
                        let v = next(&q);
                        q.push(v);
                    }
                    if i > 0 {
                        fact *= i as u32;
                    }
                    let t = (&c[i] * &q[i]).scale(&fact);
                    let mag = t.log2_abs();
                    acc += &t;
                    let tol = tol_base.max(acc.log2_abs()) - wp as f64 - 4.0;
                    small = if mag < tol || t.is_zero() { small + 1 } else { 0 };
                    if small == 2 {
                        break;
                    }
                    if mag > best + 30.0 {
                        return Err(Error::NonConvergence("Boole tail of power kernel".into()));
                    }
                    // pairs of terms, since single terms may vanish by symmetry
                    best = best.min(mag.max(last));
                    last = mag;
                    i += 1;
                }
                let f = BigComplex::root_of_unity(wp, (mu.numer() * n_cut) as i64, mu.order());
                &acc * &f
            }
        };
        Ok((&direct + &tail).with_prec(prec))
    }
}
