//! Lattice families `sum mu^m prod_j (gamma_1 m_1^{h_1} + ... + gamma_j m_j^{h_j} + b_j)^{-s_j}`.

use rug::ops::Pow;
use rug::Rational;
use serde::{Deserialize, Serialize};

use super::kernel::Kernel;
use crate::error::{Error, Result};
use crate::number::BigComplex;
use crate::poly::{ParameterSet, RootOfUnity, Twist};

/// Which shape a [`ParameterSet`] is read as.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Level {
    /// All `n` variables twisted, `m_j >= 1`.
    Nn,
    /// First `n - 1` twisted, `m_1 >= 1`, `m_j >= 0` otherwise.
    Nn1,
    /// First `n - 2` twisted, same ranges as `Nn1`.
    Nn2,
    /// First `n - 1` twisted over `m_j >= 1`, last untwisted over `m_n >= 0`,
    /// with power exponents `h`.
    Power,
}

impl Level {
    pub fn name(self) -> &'static str {
        match self {
            Level::Nn => "nn",
            Level::Nn1 => "nn1",
            Level::Nn2 => "nn2",
            Level::Power => "power",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "nn" => Ok(Level::Nn),
            "nn1" => Ok(Level::Nn1),
            "nn2" => Ok(Level::Nn2),
            "power" => Ok(Level::Power),
            _ => Err(Error::Parse(format!("unknown level {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Family {
    pub gamma: Vec<Rational>,
    pub b: Vec<Rational>,
    pub twists: Vec<Option<RootOfUnity>>,
    pub h: Vec<u32>,
    pub lower: Vec<u64>,
}

impl Family {
    pub fn new(
        gamma: Vec<Rational>,
        b: Vec<Rational>,
        twists: Vec<Option<RootOfUnity>>,
        h: Vec<u32>,
        lower: Vec<u64>,
    ) -> Result<Self> {
        let d = gamma.len();
        if d == 0 || b.len() != d || twists.len() != d || h.len() != d || lower.len() != d {
            return Err(Error::validation("dimension", "family vectors must share one positive length"));
        }
        let f = Family { gamma, b, twists, h, lower };
        f.validate()?;
        Ok(f)
    }

    /// Linear family (`h = 1`) with `m_1 >= first` and `m_j >= rest` for `j >= 2`.
    pub fn linear(
        gamma: Vec<Rational>,
        b: Vec<Rational>,
        twists: Vec<Option<RootOfUnity>>,
        first: u64,
        rest: u64,
    ) -> Result<Self> {
        let d = gamma.len();
        let mut lower = vec![rest; d];
        if d > 0 {
            lower[0] = first;
        }
        Family::new(gamma, b, twists, vec![1; d], lower)
    }

    pub fn from_params(p: &ParameterSet, level: Level) -> Result<Self> {
        let n = p.n;
        let mut twists: Vec<Option<RootOfUnity>> = Vec::with_capacity(n);
        for t in &p.mu {
            match t {
                Twist::Root(r) => twists.push(Some(*r)),
                Twist::Angle(_) => {
                    return Err(Error::Unsupported("the oracle needs root-of-unity twists".into()));
                }
            }
        }
        let k = twists.len();
        let need = match level {
            Level::Nn => n,
            Level::Nn1 | Level::Power => n.saturating_sub(1),
            Level::Nn2 => n.saturating_sub(2),
        };
        if k != need {
            return Err(Error::validation(
                "twist count",
                format!("level {} needs {need} twisted variables, got {k}", level.name()),
            ));
        }
        twists.resize(n, None);
        let (h, lower) = match level {
            Level::Nn => (vec![1; n], vec![1; n]),
            Level::Nn1 | Level::Nn2 => {
                let mut lo = vec![0; n];
                lo[0] = 1;
                (vec![1; n], lo)
            }
            Level::Power => {
                let h = p.h.clone().ok_or_else(|| Error::validation("power exponents", "h is required"))?;
                let mut lo = vec![1; n];
                lo[n - 1] = 0;
                (h, lo)
            }
        };
        Family::new(p.gamma.clone(), p.b.clone(), twists, h, lower)
    }

    pub fn dim(&self) -> usize {
        self.gamma.len()
    }

    /// Smallest value of the `j`-th denominator over the summation range.
    pub fn min_denominator(&self, j: usize) -> Rational {
        let mut v = self.b[j].clone();
        for i in 0..=j {
            v += Rational::from(&self.gamma[i] * rug::Integer::from(self.lower[i]).pow(self.h[i]));
        }
        v
    }

    fn validate(&self) -> Result<()> {
        for (j, g) in self.gamma.iter().enumerate() {
            if *g <= 0 {
                return Err(Error::validation("gamma > 0", format!("gamma_{} = {g}", j + 1)));
            }
            if self.h[j] == 0 {
                return Err(Error::validation("h >= 1", format!("h_{} = 0", j + 1)));
            }
            if self.min_denominator(j) <= 0 {
                return Err(Error::validation(
                    "denominators positive",
                    format!("denominator {} vanishes or is negative on the summation range", j + 1),
                ));
            }
        }
        let d = self.dim();
        if d >= 2 {
            let x = self.last_x();
            let lo = Rational::from(rug::Integer::from(self.lower[d - 1]).pow(self.h[d - 1]));
            if Rational::from(&x + &lo) <= 0 {
                return Err(Error::validation(
                    "b_n - b_{n-1} not in (-inf, 0]",
                    format!("(b_n - b_(n-1))/gamma_n = {x} puts the last kernel on its branch cut"),
                ));
            }
        }
        Ok(())
    }

    /// The family in the first `d - 1` variables.
    pub fn inner(&self) -> Family {
        let d = self.dim() - 1;
        Family {
            gamma: self.gamma[..d].to_vec(),
            b: self.b[..d].to_vec(),
            twists: self.twists[..d].to_vec(),
            h: self.h[..d].to_vec(),
            lower: self.lower[..d].to_vec(),
        }
    }

    /// `(b_d - b_{d-1}) / gamma_d`, or `b_1 / gamma_1` in one variable.
    pub fn last_x(&self) -> Rational {
        let d = self.dim();
        if d == 1 {
            return Rational::from(&self.b[0] / &self.gamma[0]);
        }
        Rational::from(&self.b[d - 1] - &self.b[d - 2]) / &self.gamma[d - 1]
    }

    pub fn last_kernel(&self) -> Kernel {
        let d = self.dim() - 1;
        Kernel::new(self.h[d], self.twists[d], self.lower[d])
    }

    /// All variables but the last are twisted and linear: the nested
    /// Boole-summation engine applies.
    pub fn series_friendly(&self) -> bool {
        let d = self.dim();
        (0..d - 1).all(|j| self.twists[j].is_some() && self.h[j] == 1)
    }

    /// `Re(s_j + ... + s_d) > d + 1 - j` for all `j`, with a margin.
    pub fn in_domain(&self, s: &[BigComplex], margin: f64) -> bool {
        let d = self.dim();
        let mut acc = 0.0;
        for j in (0..d).rev() {
            acc += s[j].re.to_f64();
            if acc <= (d - j) as f64 + margin {
                return false;
            }
        }
        true
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "gamma": self.gamma.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
            "b": self.b.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
            "mu": self.twists.iter().map(|t| t.as_ref().map(|r| r.label())).collect::<Vec<_>>(),
            "h": self.h,
            "lower": self.lower,
        })
    }
}

pub(crate) fn to_complex(q: &Rational, prec: u32) -> BigComplex {
    BigComplex::from_rational(prec, q)
}
