//! Field-generic evaluation of the closed formulas.
//!
//! Variables are indexed globally from 0; a level-`d` sub-family uses the
//! first `d` entries of `gamma`, `b` and `mu`.

use std::collections::HashMap;

use rug::Rational;

use super::result::{TraceEntry, Variant};
use crate::error::{Error, Result};
use crate::number::rational::{binomial, factorial};
use crate::number::Scalar;
use crate::poly::{decrisenoy_eval, expand_linear_tilde, expand_power_tilde, shift_to_all_positive, tilde_from_c, MultiIndex};
use crate::special::{hurwitz_neg, lerch_neg, power_hurwitz_neg};

pub(crate) struct Engine<S: Scalar> {
    pub gamma: Vec<S>,
    pub b: Vec<S>,
    /// Rational copies of `gamma` and `b`, used for labels in the trace.
    pub gamma_q: Vec<Rational>,
    pub b_q: Vec<Rational>,
    pub mu: Vec<S>,
    pub mu_labels: Vec<String>,
    pub zero: S,
    pub one: S,
    lerch_cache: HashMap<(usize, u32), S>,
    hurwitz_cache: HashMap<(u32, u32, String), S>,
    pub trace: Vec<TraceEntry>,
}

impl<S: Scalar> Engine<S> {
    pub fn new(
        one: S,
        gamma_q: Vec<Rational>,
        b_q: Vec<Rational>,
        mu: Vec<S>,
        mu_labels: Vec<String>,
    ) -> Self {
        let conv = |v: &[Rational]| v.iter().map(|q| one.rational_like(q)).collect::<Vec<_>>();
        Engine {
            gamma: conv(&gamma_q),
            b: conv(&b_q),
            gamma_q,
            b_q,
            mu,
            mu_labels,
            zero: one.zero_like(),
            one,
            lerch_cache: HashMap::new(),
            hurwitz_cache: HashMap::new(),
            trace: Vec::new(),
        }
    }

    pub fn lerch(&mut self, j: usize, k: u32) -> Result<S> {
        if let Some(v) = self.lerch_cache.get(&(j, k)) {
            return Ok(v.clone());
        }
        let mu = self
            .mu
            .get(j)
            .ok_or_else(|| Error::validation("twist", format!("variable {} has no twist", j + 1)))?;
        let v = lerch_neg(mu, k)?;
        self.trace.push(TraceEntry::Lerch { mu: self.mu_labels[j].clone(), k, value: v.to_json() });
        self.lerch_cache.insert((j, k), v.clone());
        Ok(v)
    }

    /// `zeta(-l, h, x)` for `x = (b_d - b_{d-1})/gamma_d` (0-based `d`), `h = 1` meaning Hurwitz.
    fn gap_zeta(&mut self, l: u32, h: u32, d: usize) -> Result<S> {
        let xq = Rational::from(&self.b_q[d] - &self.b_q[d - 1]) / &self.gamma_q[d];
        let label = xq.to_string();
        if let Some(v) = self.hurwitz_cache.get(&(l, h, label.clone())) {
            return Ok(v.clone());
        }
        let x = self.b[d].minus(&self.b[d - 1]).divided(&self.gamma[d])?;
        let v = power_hurwitz_neg(l, h, &x)?;
        self.trace.push(if h == 1 {
            TraceEntry::Hurwitz { l, a: label.clone(), value: v.to_json() }
        } else {
            TraceEntry::PowerHurwitz { l, h, b: label.clone(), value: v.to_json() }
        });
        self.hurwitz_cache.insert((l, h, label), v.clone());
        Ok(v)
    }

    fn twisted_sum(&mut self, poly: &crate::poly::SparsePoly<S>) -> Result<S> {
        let zero = self.zero.clone();
        decrisenoy_eval(poly, &zero, |j, k| self.lerch(j, k))
    }

    /// Fully twisted value over `m_j >= 1`, first `alpha.len()` variables, with shifts `b`.
    pub fn all_positive(&mut self, b: &[S], alpha: &[u32]) -> Result<S> {
        let d = alpha.len();
        let gamma = self.gamma[..d].to_vec();
        let poly = expand_linear_tilde(&gamma, b, &MultiIndex(alpha.to_vec()))?;
        self.twisted_sum(&poly)
    }

    /// `prod_{j=2}^{d} mu_j^{-1}` under `DerivedPrefactor`, else 1.
    pub fn prefactor(&self, d: usize, variant: Variant) -> Result<S> {
        let mut p = self.one.clone();
        if variant == Variant::DerivedPrefactor {
            for j in 1..d {
                p = p.times(&self.mu[j].inverse()?);
            }
        }
        Ok(p)
    }

    /// Level-`d` fully twisted value over the mixed domain `m_1 >= 1`, `m_j >= 0`.
    pub fn mixed_twisted(&mut self, alpha: &[u32], variant: Variant) -> Result<S> {
        let d = alpha.len();
        if d == 0 {
            return Ok(self.one.clone());
        }
        let shifted = shift_to_all_positive(&self.gamma[..d], &self.b[..d])?;
        let pre = self.prefactor(d, variant)?;
        Ok(pre.times(&self.all_positive(&shifted, alpha)?))
    }

    /// `sum_k c(b'; alpha, k) gamma^k prod_j phi_{mu_j}(-k_j)` at level `alpha.len()`.
    fn shifted_lerch_combination(&mut self, b_shift: &[S], alpha: &[u32]) -> Result<S> {
        let d = alpha.len();
        let ones = vec![self.one.clone(); d];
        let c = expand_linear_tilde(&ones, b_shift, &MultiIndex(alpha.to_vec()))?;
        let tilde = tilde_from_c(&c, &self.gamma[..d])?;
        self.twisted_sum(&tilde)
    }

    /// Level-`d` value with the last variable untwisted, at `-point`.
    pub fn nn1(&mut self, point: &[u32], variant: Variant) -> Result<S> {
        let d = point.len();
        if d == 1 {
            // sum_{m >= 1} (gamma m + b)^N = gamma^N zeta(-N, 1 + b/gamma)
            let m = point[0];
            let a = self.b[0].divided(&self.gamma[0])?.plus(&self.one);
            let v = hurwitz_neg(m, &a)?;
            let aq = Rational::from(&self.b_q[0] / &self.gamma_q[0]) + 1u32;
            self.trace.push(TraceEntry::Hurwitz { l: m, a: aq.to_string(), value: v.to_json() });
            return Ok(self.gamma[0].pow_i(m as i64)?.times(&v));
        }
        let last = d - 1;
        let nd = point[last];
        let b_shift = shift_to_all_positive(&self.gamma[..last], &self.b[..last])?;
        let star = |extra: i64| -> Vec<u32> {
            let mut v = point[..last].to_vec();
            v[last - 1] = (point[last - 1] as i64 + nd as i64 + extra) as u32;
            v
        };
        let gd_inv = self.gamma[last].inverse()?;
        let a_term = self
            .shifted_lerch_combination(&b_shift, &star(1))?
            .times(&gd_inv)
            .scaled(&Rational::from((-1, nd as i64 + 1)));
        let mut b_term = self.zero.clone();
        for l in 0..=nd {
            let c = Rational::from(binomial(nd, l));
            let inner = self.shifted_lerch_combination(&b_shift, &star(-(l as i64)))?;
            let z = self.gap_zeta(l, 1, last)?;
            let g = self.gamma[last].pow_i(l as i64)?;
            b_term = b_term.plus(&inner.times(&z).times(&g).scaled(&c));
        }
        let pre = self.prefactor(last, variant)?;
        Ok(pre.times(&a_term.plus(&b_term)))
    }

    /// The three terms `(T1, T2, T3)` of the directional limit with `d - 2` twists.
    pub fn nn2_terms(&mut self, point: &[u32], variant: Variant) -> Result<(S, S, S)> {
        let d = point.len();
        let last = d - 1;
        let (nd, nd1) = (point[last], point[last - 1]);
        let star = |extra: i64| -> Vec<u32> {
            let mut v = point[..last].to_vec();
            v[last - 1] = (nd1 as i64 + nd as i64 + extra) as u32;
            v
        };
        let gd_inv = self.gamma[last].inverse()?;
        let t1 = self.nn1(&star(1), variant)?.times(&gd_inv).scaled(&Rational::from((-1, nd as i64 + 1)));
        let mut t2 = self.zero.clone();
        for l in 0..=nd {
            let c = Rational::from(binomial(nd, l));
            let inner = self.nn1(&star(-(l as i64)), variant)?;
            let z = self.gap_zeta(l, 1, last)?;
            t2 = t2.plus(&inner.times(&z).times(&self.gamma[last].pow_i(l as i64)?).scaled(&c));
        }
        let sign: i64 = if (nd1 + 1) % 2 == 0 { 1 } else { -1 };
        let coef = Rational::from((factorial(nd) * factorial(nd1) * sign, factorial(nd1 + nd + 1)));
        let w = self.mixed_twisted(&point[..last - 1], variant)?;
        let z = self.gap_zeta(nd1 + nd + 1, 1, last)?;
        let g = self.gamma[last - 1]
            .inverse()?
            .times(&self.gamma[last].pow_i((nd1 + nd + 1) as i64)?);
        let t3 = w.times(&z).times(&g).scaled(&coef);
        Ok((t1, t2, t3))
    }

    /// Power-sum family with the last variable untwisted, at `-point`.
    pub fn power(&mut self, h: &[u32], point: &[u32]) -> Result<S> {
        let d = point.len();
        let last = d - 1;
        let nd = point[last];
        let gamma = self.gamma[..last].to_vec();
        let b = self.b[..last].to_vec();
        let star = |extra: i64| -> MultiIndex {
            let mut v = point[..last].to_vec();
            v[last - 1] = (point[last - 1] as i64 + nd as i64 + extra) as u32;
            MultiIndex(v)
        };
        let mut acc = self.zero.clone();
        if h[last] == 1 {
            let poly = expand_power_tilde(&gamma, &b, &h[..last], &star(1))?;
            let v = self.twisted_sum(&poly)?;
            acc = v.times(&self.gamma[last].inverse()?).scaled(&Rational::from((-1, nd as i64 + 1)));
        }
        for l in 0..=nd {
            let c = Rational::from(binomial(nd, l));
            let poly = expand_power_tilde(&gamma, &b, &h[..last], &star(-(l as i64)))?;
            let v = self.twisted_sum(&poly)?;
            let z = self.gap_zeta(l, h[last], last)?;
            acc = acc.plus(&v.times(&z).times(&self.gamma[last].pow_i(l as i64)?).scaled(&c));
        }
        Ok(acc)
    }
}
