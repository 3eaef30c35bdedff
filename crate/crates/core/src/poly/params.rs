//! Parameter sets `(n, k, gamma, b, mu, h, theta)` with validation and JSON I/O.

use std::fmt;

use rug::{Float, Integer, Rational};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::number::cyclotomic::lcm;
use crate::number::{format_rational, parse_rational, BigComplex, ExactValue, FieldContext};

/// `exp(2 pi i p / q)` with `0 < p < q`, `gcd(p, q) = 1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct RootOfUnity {
    p: u64,
    q: u64,
}

impl RootOfUnity {
    /// Reduces `p/q` modulo 1; fails for the trivial twist `mu = 1`.
    pub fn new(p: i64, q: u64) -> Result<Self> {
        if q == 0 {
            return Err(Error::Parse("twist denominator is zero".into()));
        }
        let p = p.rem_euclid(q as i64) as u64;
        if p == 0 {
            return Err(Error::validation("twist", "mu = 1 is not allowed for a twisted variable"));
        }
        let g = crate::number::cyclotomic::gcd(p, q);
        Ok(RootOfUnity { p: p / g, q: q / g })
    }

    pub fn from_rational(r: &Rational) -> Result<Self> {
        let q = r.denom().to_u64().ok_or_else(|| Error::Parse("twist denominator too large".into()))?;
        let p = (r.numer() % Integer::from(q)).to_i64().unwrap_or(0);
        Self::new(p, q)
    }

    pub fn numer(&self) -> u64 {
        self.p
    }

    /// Order of the root of unity.
    pub fn order(&self) -> u64 {
        self.q
    }

    pub fn label(&self) -> String {
        format!("{}/{}", self.p, self.q)
    }

    pub fn exact(&self, ctx: &std::sync::Arc<FieldContext>) -> ExactValue {
        assert_eq!(ctx.level() % self.q, 0, "field level must be a multiple of the twist order");
        ExactValue::zeta_power(ctx, (self.p * (ctx.level() / self.q)) as i64)
    }

    pub fn numeric(&self, prec: u32) -> BigComplex {
        BigComplex::root_of_unity(prec, self.p as i64, self.q)
    }
}

/// A twist: a root of unity, or (numeric mode only) an arbitrary angle
/// `mu = exp(2 pi i t)` given in decimal.
#[derive(Clone, Debug, PartialEq)]
pub enum Twist {
    Root(RootOfUnity),
    Angle(Float),
}

impl Twist {
    pub fn label(&self) -> String {
        match self {
            Twist::Root(r) => r.label(),
            Twist::Angle(t) => t.to_string_radix(10, Some(20)),
        }
    }

    pub fn root(&self) -> Option<RootOfUnity> {
        match self {
            Twist::Root(r) => Some(*r),
            Twist::Angle(_) => None,
        }
    }

    pub fn numeric(&self, prec: u32) -> BigComplex {
        match self {
            Twist::Root(r) => r.numeric(prec),
            Twist::Angle(t) => {
                let a = Float::with_val(prec + 10, rug::float::Constant::Pi) * 2u32 * t;
                let (s, c) = a.sin_cos(Float::new(prec + 10));
                BigComplex::from_parts(Float::with_val(prec, c), Float::with_val(prec, s))
            }
        }
    }

    fn parse(text: &str) -> Result<Twist> {
        if text.contains('.') {
            let t = Float::parse(text.trim()).map_err(|_| Error::Parse(format!("bad angle {text:?}")))?;
            let t = Float::with_val(1024, t);
            let frac = Float::with_val(1024, t.fract_ref());
            if frac.is_zero() {
                return Err(Error::validation("twist", "mu = 1 is not allowed for a twisted variable"));
            }
            return Ok(Twist::Angle(t));
        }
        Ok(Twist::Root(RootOfUnity::from_rational(&parse_rational(text)?)?))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Numeric,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Exact => "exact",
            Mode::Numeric => "numeric",
        })
    }
}

/// A validated parameter set. `mu` holds the twists of the first `k` variables.
#[derive(Clone, Debug, PartialEq)]
pub struct ParameterSet {
    pub n: usize,
    pub k: usize,
    pub gamma: Vec<Rational>,
    pub b: Vec<Rational>,
    pub mu: Vec<Twist>,
    pub h: Option<Vec<u32>>,
    pub theta: Option<Rational>,
    pub mode: Mode,
}

#[derive(Serialize, Deserialize)]
struct RawParams {
    n: usize,
    k: usize,
    gamma: Vec<String>,
    b: Vec<String>,
    mu: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    h: Option<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    theta: Option<String>,
    #[serde(default = "default_mode")]
    mode: Mode,
}

fn default_mode() -> Mode {
    Mode::Exact
}

impl ParameterSet {
    pub fn new(gamma: Vec<Rational>, b: Vec<Rational>, mu: Vec<Twist>) -> Result<Self> {
        let p = ParameterSet {
            n: gamma.len(),
            k: mu.len(),
            gamma,
            b,
            mu,
            h: None,
            theta: None,
            mode: Mode::Exact,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn with_h(mut self, h: Vec<u32>) -> Result<Self> {
        self.h = Some(h);
        self.validate()?;
        Ok(self)
    }

    pub fn with_theta(mut self, theta: Rational) -> Self {
        self.theta = Some(theta);
        self
    }

    pub fn with_mode(mut self, mode: Mode) -> Result<Self> {
        self.mode = mode;
        self.validate()?;
        Ok(self)
    }

    /// Roots of unity of the twisted variables, failing on free angles.
    pub fn roots(&self) -> Result<Vec<RootOfUnity>> {
        self.mu
            .iter()
            .map(|t| t.root().ok_or_else(|| Error::validation("twist", "free-angle twists require numeric mode")))
            .collect()
    }

    /// Least common multiple of the twist orders (1 when there are none).
    pub fn field_level(&self) -> Result<u64> {
        Ok(self.roots()?.iter().fold(1, |acc, r| lcm(acc, r.order())))
    }

    /// Structural checks plus the principal-branch conditions shared by every family:
    /// `gamma_j > 0`, `b_j > -gamma_1`, twists different from 1.
    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::validation("dimension", "n must be at least 1"));
        }
        if self.gamma.len() != self.n || self.b.len() != self.n {
            return Err(Error::validation("dimension", format!("gamma and b must have length n = {}", self.n)));
        }
        if self.k > self.n || self.mu.len() != self.k {
            return Err(Error::validation("dimension", format!("mu must list k = {} twists with k <= n", self.k)));
        }
        if let Some(h) = &self.h {
            if h.len() != self.n || h.contains(&0) {
                return Err(Error::validation("power exponents", "h must have length n with entries >= 1"));
            }
        }
        for (j, g) in self.gamma.iter().enumerate() {
            if *g <= 0 {
                return Err(Error::validation("gamma_j > 0", format!("gamma_{} = {}", j + 1, g)));
            }
        }
        for (j, b) in self.b.iter().enumerate() {
            if Rational::from(b + &self.gamma[0]) <= 0 {
                return Err(Error::validation("b_j > -gamma_1", format!("b_{} = {}", j + 1, b)));
            }
        }
        if self.mode == Mode::Exact && self.mu.iter().any(|t| matches!(t, Twist::Angle(_))) {
            return Err(Error::validation("twist", "free-angle twists require numeric mode"));
        }
        Ok(())
    }

    /// The principal-branch condition on the last two shifts:
    /// `b_n - b_{n-1}` and `(b_n - b_{n-1})/gamma_n` must avoid `(-inf, 0]`.
    pub fn validate_last_gap(&self) -> Result<()> {
        if self.n < 2 {
            return Ok(());
        }
        let d = Rational::from(&self.b[self.n - 1] - &self.b[self.n - 2]);
        if d <= 0 {
            return Err(Error::validation(
                "b_n - b_{n-1} not in (-inf, 0]",
                format!("b_{} - b_{} = {}", self.n, self.n - 1, d),
            ));
        }
        Ok(())
    }

    pub fn to_json(&self) -> serde_json::Value {
        let raw = RawParams {
            n: self.n,
            k: self.k,
            gamma: self.gamma.iter().map(format_rational).collect(),
            b: self.b.iter().map(format_rational).collect(),
            mu: self.mu.iter().map(Twist::label).collect(),
            h: self.h.clone(),
            theta: self.theta.as_ref().map(format_rational),
            mode: self.mode,
        };
        serde_json::to_value(raw).expect("serializable")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let raw: RawParams = serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        let p = ParameterSet {
            n: raw.n,
            k: raw.k,
            gamma: raw.gamma.iter().map(|s| parse_rational(s)).collect::<Result<_>>()?,
            b: raw.b.iter().map(|s| parse_rational(s)).collect::<Result<_>>()?,
            mu: raw.mu.iter().map(|s| Twist::parse(s)).collect::<Result<_>>()?,
            h: raw.h,
            theta: raw.theta.as_deref().map(parse_rational).transpose()?,
            mode: raw.mode,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let v: serde_json::Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_json(&v)
    }
}
