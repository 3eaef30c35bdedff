//! Nested summation for families whose outer variables are twisted.
//!
//! The last variable is summed in closed form through its kernel. Each outer
//! twisted variable is summed directly up to a cut `K` and the remainder
//! `sum_{m >= K} mu^m f(m)` is replaced by Boole's series
//! `mu^K sum_i c_i f^{(i)}(K)`, where `c_i` are the Taylor coefficients of
//! `1/(1 - mu e^t)`. Derivatives of the inner sums come from shifts of the
//! last exponent: `d/dy K(s, (y + b)/gamma) = -(s/gamma) K(s + 1, ...)`.
//!
//! Boole's series is an asymptotic expansion valid for every `s`, so the same
//! code also gives the analytic continuation.

use std::collections::HashMap;

use rug::{Float, Rational};

use super::family::{to_complex, Family};
use super::hurwitz::cut_point;
use super::kernel::{boole_coeffs, boole_radius, Kernel};
use crate::error::{Error, Result};
use crate::number::BigComplex;

/// Margin kept from the boundary of the convergence domain.
pub const DOMAIN_MARGIN: f64 = 1.0 / 64.0;

/// Value of the family at `s`, inside the domain of absolute convergence.
pub fn mzeta_series(f: &Family, s: &[BigComplex], prec: u32) -> Result<BigComplex> {
    if s.len() != f.dim() {
        return Err(Error::validation("dimension", "s must have one entry per variable"));
    }
    if !f.in_domain(s, DOMAIN_MARGIN) {
        return Err(Error::Domain("s is not inside the domain of absolute convergence".into()));
    }
    Ok(continued_shifted(f, s, 0, prec)?.swap_remove(0))
}

/// Values at `s + k e_d` for `k = 0..=extra`, anywhere off the singular locus.
pub fn continued_shifted(f: &Family, s: &[BigComplex], extra: usize, prec: u32) -> Result<Vec<BigComplex>> {
    if !f.series_friendly() {
        return Err(Error::Unsupported("nested summation needs twisted linear outer variables".into()));
    }
    let mut e = Engine::new(f, s, extra, prec)?;
    let out = e.level(0, &Rational::new(), 1)?;
    Ok(out.into_iter().map(|v| v[0].with_prec(prec)).collect())
}

struct Engine<'a> {
    f: &'a Family,
    d: usize,
    wp: u32,
    nats: f64,
    s: Vec<BigComplex>,
    extra: usize,
    gamma: Vec<BigComplex>,
    kernel: Kernel,
    kcache: HashMap<Rational, Vec<BigComplex>>,
    /// `gamma_d^{-(s_d + k)}`
    gpow: Vec<BigComplex>,
    /// size of the exponents seen from level `j` inwards
    sabs: Vec<f64>,
}

impl<'a> Engine<'a> {
    fn new(f: &'a Family, s: &[BigComplex], extra: usize, prec: u32) -> Result<Self> {
        let d = f.dim();
        if s.len() != d {
            return Err(Error::validation("dimension", "s must have one entry per variable"));
        }
        let mut sabs = vec![0.0; d];
        let mut acc = extra as f64;
        for j in (0..d).rev() {
            acc += s[j].abs().to_f64();
            sabs[j] = acc;
        }
        // bits lost to large terms when some Re s_j < 0
        let nats0 = (prec + 24) as f64 * std::f64::consts::LN_2;
        let mut reach = 0.0f64;
        let mut grow = 0.0f64;
        for j in 0..d {
            let g = f.gamma[j].to_f64();
            let rate = f.twists[j].as_ref().map_or(2.0 * std::f64::consts::PI, boole_radius);
            reach += g * (cut_point(rate, nats0, sabs[j]) + 2.0);
            let l = reach + f.b[j].to_f64().abs() + 1.0;
            grow += (-s[j].re.to_f64()).max(0.0) * l.log2();
        }
        let wp = prec + 24 + grow.ceil() as u32;
        let gamma: Vec<BigComplex> = f.gamma.iter().map(|g| to_complex(g, wp)).collect();
        let sd = s[d - 1].with_prec(wp);
        let gd = &gamma[d - 1];
        let mut gpow = vec![gd.pow(&-&sd)];
        let ginv = gd.recip();
        for k in 1..=extra {
            let v = &gpow[k - 1] * &ginv;
            gpow.push(v);
        }
        Ok(Engine {
            f,
            d,
            wp,
            nats: wp as f64 * std::f64::consts::LN_2 + 8.0,
            s: s.iter().map(|v| v.with_prec(wp)).collect(),
            extra,
            gamma,
            kernel: f.last_kernel(),
            kcache: HashMap::new(),
            gpow,
            sabs,
        })
    }

    /// Taylor jets in `delta` of the sum over variables `j..d` at offset `y`,
    /// `out[k][t]` for the shift `k` of the last exponent.
    fn level(&mut self, j: usize, y: &Rational, jl: usize) -> Result<Vec<Vec<BigComplex>>> {
        if j == self.d - 1 {
            return self.last(y, jl);
        }
        let wp = self.wp;
        let f = self.f;
        let mu = f.twists[j].expect("outer variables are twisted");
        let r = boole_radius(&mu);
        let gq = &f.gamma[j];
        let g = self.gamma[j].clone();
        let sj = self.s[j].clone();
        let lo = f.lower[j];
        let yb = Rational::from(y + &f.b[j]);
        let neff0 = Rational::from(&yb / gq).to_f64();
        let cut = cut_point(r, self.nats + 12.0, self.sabs[j]);
        let k_cut = ((cut - neff0).ceil().max(0.0) as u64).max(lo);

        let ne = self.extra + 1;
        let mut out = vec![vec![BigComplex::zero(wp); jl]; ne];
        for m in lo..k_cut {
            let y2 = y + Rational::from(gq * rug::Integer::from(m));
            let l = to_complex(&Rational::from(&y2 + &f.b[j]), wp);
            let a = power_jet(&l, &sj, jl);
            let inner = self.level(j + 1, &y2, jl)?;
            let tw = BigComplex::root_of_unity(wp, (mu.numer() * (m % mu.order())) as i64, mu.order());
            for k in 0..ne {
                let prod = jet_mul(&a, &inner[k], jl);
                for (o, p) in out[k].iter_mut().zip(prod) {
                    *o += &(&p * &tw);
                }
            }
        }

        // Boole tail at K
        let y2 = y + Rational::from(gq * rug::Integer::from(k_cut));
        let lk = Rational::from(&y2 + &f.b[j]);
        let neff = Rational::from(&lk / gq).to_f64();
        let terms = boole_terms(r * neff, self.sabs[j], self.nats)?;
        let flen = terms + jl;
        let a = power_jet(&to_complex(&lk, wp), &sj, flen);
        let inner = self.level(j + 1, &y2, flen)?;
        let c = boole_coeffs(&mu, wp, terms);
        // C[i][t] = c_i gamma^i (i + t)! / t!
        let mut gi = BigComplex::one(wp);
        let mut cw: Vec<Vec<BigComplex>> = Vec::with_capacity(terms);
        for i in 0..terms {
            let mut row = Vec::with_capacity(jl);
            let mut ratio = Float::with_val(wp, 1);
            for q in 1..=i {
                ratio *= q as u32;
            }
            let base = &c[i] * &gi;
            for t in 0..jl {
                if t > 0 {
                    ratio *= (i + t) as u32;
                    ratio /= t as u32;
                }
                row.push(base.scale(&ratio));
            }
            cw.push(row);
            gi = &gi * &g;
        }
        let tw = BigComplex::root_of_unity(wp, (mu.numer() * (k_cut % mu.order())) as i64, mu.order());

        let cost_f = ne * (flen * flen / 2 + terms * jl);
        let cost_w = jl * flen * terms + ne * jl * flen;
        if cost_f <= cost_w {
            for k in 0..ne {
                let fj = jet_mul(&a, &inner[k], flen);
                for t in 0..jl {
                    let mut acc = BigComplex::zero(wp);
                    for i in 0..terms {
                        acc += &(&cw[i][t] * &fj[i + t]);
                    }
                    out[k][t] += &(&acc * &tw);
                }
            }
        } else {
            // W[t][b] = sum_a C[a + b - t][t] a_a, then tail[k][t] = sum_b W[t][b] G_k[b]
            for t in 0..jl {
                let mut wrow = vec![BigComplex::zero(wp); flen];
                for (bi, wb) in wrow.iter_mut().enumerate() {
                    for (ai, av) in a.iter().enumerate() {
                        let idx = ai + bi;
                        if idx < t || idx - t >= terms || idx >= flen {
                            continue;
                        }
                        *wb += &(&cw[idx - t][t] * av);
                    }
                }
                for k in 0..ne {
                    let mut acc = BigComplex::zero(wp);
                    for (wb, gb) in wrow.iter().zip(&inner[k]) {
                        acc += &(wb * gb);
                    }
                    out[k][t] += &(&acc * &tw);
                }
            }
        }
        Ok(out)
    }

    fn last(&mut self, y: &Rational, jl: usize) -> Result<Vec<Vec<BigComplex>>> {
        let wp = self.wp;
        let d = self.d - 1;
        let x = Rational::from(y + &self.f.b[d]) / &self.f.gamma[d];
        let len = self.extra + jl;
        // At an integer s_d <= 0 the untwisted Hurwitz kernel meets its pole at
        // shift 1 - s_d; there (s)_t zeta(s + t) is replaced by its limit.
        let pole = match (self.kernel.h, &self.kernel.mu, self.s[d].as_exact_integer()) {
            (1, None, Some(n)) if n <= 0 && ((1 - n) as usize) < len => Some((1 - n) as usize),
            _ => None,
        };
        let vals = match self.kcache.get(&x) {
            Some(v) if v.len() >= len => v.clone(),
            _ => {
                let xc = to_complex(&x, wp);
                let v = match pole {
                    None => self.kernel.shifted(&self.s[d], &xc, len - 1, wp)?,
                    Some(p) => {
                        let mut v = if p > 0 { self.kernel.shifted(&self.s[d], &xc, p - 1, wp)? } else { Vec::new() };
                        v.push(BigComplex::one(wp));
                        if len > p + 1 {
                            let s2 = &self.s[d] + &BigComplex::from_int(wp, p as i64 + 1);
                            v.extend(self.kernel.shifted(&s2, &xc, len - p - 2, wp)?);
                        }
                        v
                    }
                };
                self.kcache.insert(x.clone(), v.clone());
                v
            }
        };
        let ginv = self.gamma[d].recip();
        let mut out = Vec::with_capacity(self.extra + 1);
        for k in 0..=self.extra {
            if pole == Some(k) {
                return Err(Error::Domain("Hurwitz zeta pole at s = 1".into()));
            }
            let sk = &self.s[d] + &BigComplex::from_int(wp, k as i64);
            let mut e = self.gpow[k].clone();
            let mut row = Vec::with_capacity(jl);
            for t in 0..jl {
                row.push(&e * &vals[k + t]);
                let mut f = -(&sk + &BigComplex::from_int(wp, t as i64));
                match pole {
                    Some(p) if p == k + t + 1 => f = BigComplex::from_int(wp, -1),
                    Some(p) if k < p && p < k + t + 1 => f = BigComplex::zero(wp),
                    _ => {}
                }
                e = (&(&e * &f) * &ginv).div_i64(t as i64 + 1);
            }
            out.push(row);
        }
        Ok(out)
    }
}

/// Jet of `(l + delta)^{-s}`.
fn power_jet(l: &BigComplex, s: &BigComplex, len: usize) -> Vec<BigComplex> {
    let wp = l.prec();
    let mut out = Vec::with_capacity(len);
    let mut a = l.pow(&-s);
    let linv = l.recip();
    for t in 0..len {
        out.push(a.clone());
        let f = -(s + &BigComplex::from_int(wp, t as i64));
        a = (&(&a * &f) * &linv).div_i64(t as i64 + 1);
    }
    out
}

fn jet_mul(a: &[BigComplex], b: &[BigComplex], len: usize) -> Vec<BigComplex> {
    let wp = a[0].prec();
    let mut out = vec![BigComplex::zero(wp); len];
    for (i, ai) in a.iter().enumerate().take(len) {
        for (j, bj) in b.iter().enumerate().take(len - i) {
            out[i + j] += &(ai * bj);
        }
    }
    out
}

/// Number of Boole terms so that `i! binom(S + i, i) / (r N)^i` drops below
/// `e^-nats`; the series is asymptotic, so this must happen before `i ~ r N`.
fn boole_terms(rn: f64, s_abs: f64, nats: f64) -> Result<usize> {
    let mut lg = 0.0f64; // ln(i! binom(S + i, i))
    for i in 1..100_000usize {
        lg += (s_abs + i as f64).ln();
        if i as f64 * rn.ln() - lg >= nats {
            return Ok(i + 4);
        }
        if i as f64 > rn + 2.0 {
            break;
        }
    }
    Err(Error::NonConvergence("Boole series cannot reach the requested precision".into()))
}
