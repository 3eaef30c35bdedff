//! A family with its last exponent free, truncated to a Dirichlet polynomial
//! `sum_v C_v v^{-w}` over the values `v` of the last denominator.
//!
//! Far to the right in `w` this converges fast, which is where the contour
//! integral samples it.

use std::collections::{BTreeMap, HashMap};

use rug::ops::Pow;
use rug::{Float, Integer, Rational};

use super::family::Family;
use crate::error::{Error, Result};
use crate::number::BigComplex;

/// Refuse to enumerate more lattice points than this.
const MAX_POINTS: usize = 2_000_000;

pub struct DirichletPoly {
    /// `(v, ln v, C_v)` sorted by `v`
    terms: Vec<(Rational, Float, BigComplex)>,
    prec: u32,
}

/// Coefficients prepared for one abscissa: `E_v = C_v v^{-w}` with a working
/// precision per term.
pub struct OnLine {
    terms: Vec<(Float, BigComplex, u32)>,
    prec: u32,
}

impl DirichletPoly {
    /// All lattice points with last denominator `<= vmax`; `head` holds the
    /// exponents of the first `d - 1` denominators.
    pub fn build(f: &Family, head: &[BigComplex], vmax: &Rational, prec: u32) -> Result<Self> {
        let d = f.dim();
        if head.len() + 1 != d {
            return Err(Error::validation("dimension", "head exponents must cover all but the last variable"));
        }
        let mut rest_min = vec![Rational::new(); d + 1];
        for j in (0..d).rev() {
            let lo = Rational::from(&f.gamma[j] * Integer::from(f.lower[j]).pow(f.h[j]));
            rest_min[j] = Rational::from(&rest_min[j + 1] + &lo);
        }
        let mut st = Enum {
            f,
            head,
            prec,
            vmax,
            rest_min,
            groups: BTreeMap::new(),
            lncache: HashMap::new(),
            phases: HashMap::new(),
            points: 0,
        };
        st.walk(0, Rational::new(), Rational::new(), BigComplex::one(prec))?;
        let terms = st
            .groups
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(v, c)| {
                let l = Float::with_val(prec, &v).ln();
                (v, l, c)
            })
            .collect();
        Ok(DirichletPoly { terms, prec })
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// `sum_v C_v v^{-w}` for one `w`.
    pub fn eval(&self, w: &BigComplex) -> BigComplex {
        let mut acc = BigComplex::zero(self.prec);
        for (_, l, c) in &self.terms {
            let e = (&BigComplex::from_real(l.clone()) * w).mul_i64(-1).exp();
            acc += &(c * &e);
        }
        acc
    }

    /// Prepares evaluation on the line `w + i y`. Terms below `2^{-bits}`
    /// of the largest are dropped, smaller ones get less precision.
    pub fn on_line(&self, w: &BigComplex, bits: u32) -> OnLine {
        let mut raw = Vec::with_capacity(self.terms.len());
        let mut top = f64::NEG_INFINITY;
        for (_, l, c) in &self.terms {
            let e = &(&BigComplex::from_real(l.clone()) * w).mul_i64(-1).exp() * c;
            let m = e.log2_abs();
            top = top.max(m);
            raw.push((l.clone(), e, m));
        }
        let terms = raw
            .into_iter()
            .filter(|(_, _, m)| *m > top - bits as f64 - 8.0)
            .map(|(l, e, m)| {
                let p = ((bits as f64 - (top - m)) as u32 + 24).clamp(64, self.prec);
                (l, e.with_prec(p), p)
            })
            .collect();
        OnLine { terms, prec: self.prec }
    }
}

impl OnLine {
    /// `sum_v E_v v^{-i y}`.
    pub fn eval(&self, y: &Float) -> BigComplex {
        let mut re = Float::new(self.prec);
        let mut im = Float::new(self.prec);
        for (l, e, p) in &self.terms {
            let t = Float::with_val(p + 16, l * y);
            let (sn, cs) = t.sin_cos(Float::new(*p));
            // (a + ib)(cos - i sin)
            re += Float::with_val(*p, &e.re * &cs) + Float::with_val(*p, &e.im * &sn);
            im += Float::with_val(*p, &e.im * &cs) - Float::with_val(*p, &e.re * &sn);
        }
        BigComplex::from_parts(re, im)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

struct Enum<'a> {
    f: &'a Family,
    head: &'a [BigComplex],
    prec: u32,
    vmax: &'a Rational,
    rest_min: Vec<Rational>,
    groups: BTreeMap<Rational, BigComplex>,
    lncache: HashMap<Rational, Float>,
    phases: HashMap<Rational, BigComplex>,
    points: usize,
}

impl Enum<'_> {
    /// `prefix = sum_{i<j} gamma_i m_i^{h_i}`, `phase` the twist exponent
    /// `sum p_i m_i / q_i` mod 1, `coef` the product of head powers so far.
    fn walk(&mut self, j: usize, prefix: Rational, phase: Rational, coef: BigComplex) -> Result<()> {
        let d = self.f.dim();
        let b_last = &self.f.b[d - 1];
        let mut m = self.f.lower[j];
        loop {
            let step = Rational::from(&self.f.gamma[j] * Integer::from(m).pow(self.f.h[j]));
            let p = Rational::from(&prefix + &step);
            let reach = Rational::from(&p + &self.rest_min[j + 1]) + b_last;
            if &reach > self.vmax {
                return Ok(());
            }
            let mut ph = phase.clone();
            if let Some(mu) = &self.f.twists[j] {
                ph += Rational::from((mu.numer() as i64 * m as i64, mu.order() as i64));
                ph = ph.fract_floor(Integer::new()).0;
            }
            let l = Rational::from(&p + &self.f.b[j]);
            if j + 1 == d {
                self.points += 1;
                if self.points > MAX_POINTS {
                    return Err(Error::NonConvergence("Dirichlet truncation needs too many lattice points".into()));
                }
                let z = self.phase(&ph);
                let c = &coef * &z;
                match self.groups.get_mut(&l) {
                    Some(acc) => *acc += &c,
                    None => {
                        self.groups.insert(l, c);
                    }
                }
            } else {
                let ln = self.ln(&l);
                let e = (&BigComplex::from_real(ln) * &self.head[j]).mul_i64(-1).exp();
                self.walk(j + 1, p, ph, &coef * &e)?;
            }
            m += 1;
        }
    }

    fn ln(&mut self, v: &Rational) -> Float {
        if let Some(l) = self.lncache.get(v) {
            return l.clone();
        }
        let l = Float::with_val(self.prec, v).ln();
        self.lncache.insert(v.clone(), l.clone());
        l
    }

    fn phase(&mut self, ph: &Rational) -> BigComplex {
        if let Some(z) = self.phases.get(ph) {
            return z.clone();
        }
        let (n, q) = (ph.numer().to_i64().unwrap(), ph.denom().to_u64().unwrap());
        let z = BigComplex::root_of_unity(self.prec, n, q);
        self.phases.insert(ph.clone(), z.clone());
        z
    }
}
