//! Exact arithmetic in cyclotomic fields `Q(zeta_L)`.
//!
//! Elements are stored in the power basis `1, zeta_L, ..., zeta_L^(phi(L)-1)`
//! with rational coefficients, reduced modulo the cyclotomic polynomial.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use rug::{Integer, Rational};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::complex::BigComplex;
use super::rational::{format_rational, parse_rational};
use crate::error::{Error, Result};

/// Defining data for `Q(zeta_L)`: the level `L` and the monic polynomial `Phi_L`.
#[derive(Debug, PartialEq, Eq)]
pub struct FieldContext {
    level: u64,
    /// Coefficients of `Phi_L`, lowest degree first.
    phi: Vec<Integer>,
}

impl FieldContext {
    /// Shared context for level `L`; contexts are cached and reused.
    pub fn get(level: u64) -> Arc<FieldContext> {
        assert!(level >= 1, "cyclotomic level must be positive");
        static CACHE: OnceLock<Mutex<HashMap<u64, Arc<FieldContext>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(ctx) = cache.lock().unwrap().get(&level) {
            return ctx.clone();
        }
        let ctx = Arc::new(FieldContext { level, phi: cyclotomic_polynomial(level) });
        cache.lock().unwrap().entry(level).or_insert(ctx).clone()
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn degree(&self) -> usize {
        self.phi.len() - 1
    }

    pub fn polynomial(&self) -> &[Integer] {
        &self.phi
    }
}

/// `Phi_n` by repeated exact division of `x^n - 1` by `Phi_d` for proper divisors `d`.
pub fn cyclotomic_polynomial(n: u64) -> Vec<Integer> {
    let mut p = vec![Integer::new(); n as usize + 1];
    p[0] = Integer::from(-1);
    p[n as usize] = Integer::from(1);
    for d in 1..n {
        if n.is_multiple_of(d) {
            let q = cyclotomic_polynomial(d);
            p = exact_div(&p, &q);
        }
    }
    p
}

fn exact_div(num: &[Integer], den: &[Integer]) -> Vec<Integer> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut quot = vec![Integer::new(); num.len() - dd];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dd].clone();
        if c != 0 {
            for (j, dj) in den.iter().enumerate() {
                rem[i + j] -= Integer::from(&c * dj);
            }
        }
        quot[i] = c;
    }
    quot
}

pub fn euler_phi(mut n: u64) -> u64 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// An element of `Q(zeta_L)`.
#[derive(Clone, PartialEq)]
pub struct ExactValue {
    ctx: Arc<FieldContext>,
    coeffs: Vec<Rational>,
}

impl ExactValue {
    pub fn zero(ctx: &Arc<FieldContext>) -> Self {
        ExactValue { ctx: ctx.clone(), coeffs: vec![Rational::new(); ctx.degree()] }
    }

    pub fn from_rational(ctx: &Arc<FieldContext>, q: &Rational) -> Self {
        let mut v = Self::zero(ctx);
        v.coeffs[0] = q.clone();
        v
    }

    pub fn one(ctx: &Arc<FieldContext>) -> Self {
        Self::from_rational(ctx, &Rational::from(1))
    }

    /// `zeta_L^k` for any integer `k`.
    pub fn zeta_power(ctx: &Arc<FieldContext>, k: i64) -> Self {
        let k = k.rem_euclid(ctx.level as i64) as usize;
        let mut poly = vec![Rational::new(); k + 1];
        poly[k] = Rational::from(1);
        Self::from_poly(ctx, poly)
    }

    /// Reduces an arbitrary-length coefficient vector modulo `Phi_L`.
    pub fn from_poly(ctx: &Arc<FieldContext>, mut poly: Vec<Rational>) -> Self {
        let d = ctx.degree();
        for i in (d..poly.len()).rev() {
            let c = std::mem::take(&mut poly[i]);
            if c != 0 {
                for j in 0..d {
                    poly[i - d + j] -= Rational::from(&c * &ctx.phi[j]);
                }
            }
        }
        poly.resize(d, Rational::new());
        ExactValue { ctx: ctx.clone(), coeffs: poly }
    }

    pub fn from_coeffs(ctx: &Arc<FieldContext>, coeffs: Vec<Rational>) -> Result<Self> {
        if coeffs.len() != ctx.degree() {
            return Err(Error::Parse(format!(
                "expected {} coefficients for L = {}, got {}",
                ctx.degree(),
                ctx.level,
                coeffs.len()
            )));
        }
        Ok(ExactValue { ctx: ctx.clone(), coeffs })
    }

    pub fn context(&self) -> &Arc<FieldContext> {
        &self.ctx
    }

    pub fn level(&self) -> u64 {
        self.ctx.level
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| *c == 0)
    }

    /// The rational value if the element lies in `Q`.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.coeffs[1..].iter().all(|c| *c == 0) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.ctx.level != other.ctx.level {
            Err(Error::FieldMismatch(self.ctx.level, other.ctx.level))
        } else {
            Ok(())
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| Rational::from(a + b)).collect();
        Ok(ExactValue { ctx: self.ctx.clone(), coeffs })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| Rational::from(a - b)).collect();
        Ok(ExactValue { ctx: self.ctx.clone(), coeffs })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let d = self.ctx.degree();
        let mut prod = vec![Rational::new(); 2 * d - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if *a == 0 {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if *b != 0 {
                    prod[i + j] += Rational::from(a * b);
                }
            }
        }
        Ok(Self::from_poly(&self.ctx, prod))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        self.try_mul(&other.inverse()?)
    }

    pub fn neg(&self) -> Self {
        ExactValue { ctx: self.ctx.clone(), coeffs: self.coeffs.iter().map(|c| Rational::from(-c)).collect() }
    }

    pub fn scale(&self, q: &Rational) -> Self {
        ExactValue { ctx: self.ctx.clone(), coeffs: self.coeffs.iter().map(|c| Rational::from(c * q)).collect() }
    }

    /// Multiplicative inverse by the extended Euclidean algorithm in `Q[x]`.
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let modulus: Vec<Rational> = self.ctx.phi.iter().map(Rational::from).collect();
        let (g, s) = ext_gcd(trim(self.coeffs.clone()), trim(modulus));
        // g is a nonzero constant because Phi_L is irreducible.
        debug_assert_eq!(g.len(), 1);
        let inv_g = Rational::from(1) / &g[0];
        let s: Vec<Rational> = s.into_iter().map(|c| c * &inv_g).collect();
        Ok(Self::from_poly(&self.ctx, s))
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let mut base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut k = e.unsigned_abs();
        let mut acc = Self::one(&self.ctx);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.try_mul(&base)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.try_mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Re-expresses the element in `Q(zeta_M)` for a multiple `M` of `L`.
    pub fn lift(&self, target: &Arc<FieldContext>) -> Result<Self> {
        if !target.level.is_multiple_of(self.ctx.level) {
            return Err(Error::Domain(format!("cannot lift L = {} into L = {}", self.ctx.level, target.level)));
        }
        let step = (target.level / self.ctx.level) as usize;
        let mut poly = vec![Rational::new(); (self.coeffs.len().max(1) - 1) * step + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            poly[i * step] = c.clone();
        }
        Ok(Self::from_poly(target, poly))
    }

    /// Complex embedding `zeta_L -> exp(2 pi i / L)`, computed with guard bits.
    pub fn embed_numeric(&self, prec: u32) -> BigComplex {
        let wp = prec + 16 + 2 * (self.coeffs.len() as u32).max(1).ilog2();
        let mut acc = BigComplex::zero(wp);
        for (i, c) in self.coeffs.iter().enumerate() {
            if *c != 0 {
                let z = BigComplex::root_of_unity(wp, i as i64, self.ctx.level);
                acc += z.mul_rational(c);
            }
        }
        acc.with_prec(prec)
    }

    /// Human-readable form `a0 + a1*zeta_L + ...`.
    pub fn to_text(&self) -> String {
        let mut parts: Vec<String> = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if *c == 0 {
                continue;
            }
            let basis = match i {
                0 => String::new(),
                1 => format!("ζ_{}", self.ctx.level),
                _ => format!("ζ_{}^{}", self.ctx.level, i),
            };
            let mag = Rational::from(c.abs_ref());
            let body = if i == 0 {
                format_rational(&mag)
            } else if mag == 1 {
                basis
            } else {
                format!("{}·{}", format_rational(&mag), basis)
            };
            let neg = *c < 0;
            if parts.is_empty() {
                parts.push(if neg { format!("-{body}") } else { body });
            } else {
                parts.push(format!("{} {}", if neg { '-' } else { '+' }, body));
            }
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" ")
        }
    }

    /// [`to_text`](Self::to_text) followed by the field, `"... in Q(ζ_L)"`.
    pub fn to_text_with_field(&self) -> String {
        format!("{} in Q(ζ_{})", self.to_text(), self.ctx.level)
    }

    /// Parses the output of [`to_text`](Self::to_text) or
    /// [`to_text_with_field`](Self::to_text_with_field). Without the field
    /// suffix the level is read off the `ζ_L` tokens (1 if there are none).
    pub fn from_text(text: &str) -> Result<Self> {
        let bad = |why: &str| Error::Parse(format!("{why} in exact value {text:?}"));
        let (body, field) = match text.split_once(" in ") {
            Some((b, f)) => {
                let l = f
                    .trim()
                    .strip_prefix("Q(ζ_")
                    .and_then(|r| r.strip_suffix(')'))
                    .and_then(|r| r.parse::<u64>().ok())
                    .filter(|l| *l >= 1)
                    .ok_or_else(|| bad("malformed field"))?;
                (b, Some(l))
            }
            None => (text, None),
        };
        // (sign, coefficient, optional (level, exponent))
        let mut terms: Vec<(Rational, Option<(u64, usize)>)> = Vec::new();
        let mut sign = 1i32;
        let mut expect_term = true;
        for tok in body.split_whitespace() {
            if !expect_term {
                sign = match tok {
                    "+" => 1,
                    "-" => -1,
                    _ => return Err(bad("expected + or -")),
                };
                expect_term = true;
                continue;
            }
            let (neg, tok) = match tok.strip_prefix('-') {
                Some(t) => (true, t),
                None => (false, tok),
            };
            let (coef, basis) = match tok.split_once('·') {
                Some((c, z)) => (parse_rational(c)?, Some(z)),
                None if tok.starts_with('ζ') => (Rational::from(1), Some(tok)),
                None => (parse_rational(tok)?, None),
            };
            let basis = match basis {
                None => None,
                Some(z) => {
                    let r = z.strip_prefix("ζ_").ok_or_else(|| bad("expected ζ_L"))?;
                    let (l, e) = match r.split_once('^') {
                        Some((l, e)) => (l, e.parse::<usize>().map_err(|_| bad("bad exponent"))?),
                        None => (r, 1),
                    };
                    Some((l.parse::<u64>().map_err(|_| bad("bad level"))?, e))
                }
            };
            let mut c = coef;
            if neg != (sign < 0) {
                c = -c;
            }
            terms.push((c, basis));
            expect_term = false;
        }
        if expect_term {
            return Err(bad("empty or dangling expression"));
        }
        let mut level = field;
        for (_, b) in &terms {
            if let Some((l, _)) = b {
                match level {
                    None => level = Some(*l),
                    Some(x) if x != *l => return Err(bad("mixed fields")),
                    _ => {}
                }
            }
        }
        let ctx = FieldContext::get(level.unwrap_or(1));
        let mut poly = vec![Rational::new(); ctx.degree()];
        for (c, b) in terms {
            let e = b.map_or(0, |(_, e)| e);
            if e >= poly.len() {
                poly.resize(e + 1, Rational::new());
            }
            poly[e] += c;
        }
        Ok(Self::from_poly(&ctx, poly))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "L": self.ctx.level,
            "coeffs": self.coeffs.iter().map(format_rational).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let level = v
            .get("L")
            .and_then(|l| l.as_u64())
            .filter(|l| *l >= 1)
            .ok_or_else(|| Error::Parse("missing positive integer field \"L\"".into()))?;
        let arr = v
            .get("coeffs")
            .and_then(|c| c.as_array())
            .ok_or_else(|| Error::Parse("missing array field \"coeffs\"".into()))?;
        let coeffs = arr
            .iter()
            .map(|c| match c {
                serde_json::Value::String(s) => parse_rational(s),
                serde_json::Value::Number(n) => parse_rational(&n.to_string()),
                _ => Err(Error::Parse("coefficient must be a string".into())),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_coeffs(&FieldContext::get(level), coeffs)
    }
}

fn trim(mut p: Vec<Rational>) -> Vec<Rational> {
    while p.len() > 1 && *p.last().unwrap() == 0 {
        p.pop();
    }
    p
}

fn poly_sub_mul(a: &[Rational], q: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = a.to_vec();
    let need = q.len() + b.len() - 1;
    if out.len() < need {
        out.resize(need, Rational::new());
    }
    for (i, qi) in q.iter().enumerate() {
        if *qi == 0 {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            out[i + j] -= Rational::from(qi * bj);
        }
    }
    trim(out)
}

fn poly_divrem(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    if rem.len() <= db {
        return (vec![Rational::new()], rem);
    }
    let lead = b[db].clone();
    let mut quot = vec![Rational::new(); rem.len() - db];
    for i in (0..quot.len()).rev() {
        let c = Rational::from(&rem[i + db] / &lead);
        if c != 0 {
            for (j, bj) in b.iter().enumerate() {
                rem[i + j] -= Rational::from(&c * bj);
            }
        }
        quot[i] = c;
    }
    rem.truncate(db.max(1));
    (trim(quot), trim(rem))
}

/// Returns `(g, s)` with `s*a = g (mod m)`.
fn ext_gcd(a: Vec<Rational>, m: Vec<Rational>) -> (Vec<Rational>, Vec<Rational>) {
    let (mut r0, mut r1) = (m, a);
    let (mut s0, mut s1) = (vec![Rational::new()], vec![Rational::from(1)]);
    while !(r1.len() == 1 && r1[0] == 0) {
        let (q, r) = poly_divrem(&r0, &r1);
        let s2 = poly_sub_mul(&s0, &q, &s1);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
    }
    (r0, s0)
}

impl fmt::Debug for ExactValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [L={}]", self.to_text(), self.ctx.level)
    }
}

impl fmt::Display for ExactValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl Serialize for ExactValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for ExactValue {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        ExactValue::from_json(&v).map_err(D::Error::custom)
    }
}
