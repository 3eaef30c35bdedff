//! Mellin-Barnes evaluation, peeling off the last variable.
//!
//! Write `L_d = L_{d-1} + gamma_d (m_d^h + x)`. The binomial Mellin-Barnes
//! formula turns the family into
//! `(1/2 pi i) int W(z) I(w0 + z) gamma_d^z K(-z) dz` with
//! `W(z) = Gamma(s_d + z) Gamma(-z) / Gamma(s_d)`, `w0 = s_{d-1} + s_d`,
//! `I` the family in the first `d - 1` variables (last exponent `w`) and `K`
//! the kernel of the last variable. The line is pushed to `Re z = M + 1/2`
//! (`M + 1/3` for `h >= 2`), collecting residues of `Gamma(-z)` at
//! `z = 0..M` and of `K(-z)` at `z = -1` (`h = 1`) or `z = l - 1/h`.
//! What is left is integrated with [`sinh_trapezoid`].

use rug::{Float, Rational};
use serde::{Deserialize, Serialize};

use super::dirichlet::{DirichletPoly, OnLine};
use super::family::{to_complex, Family};
use super::gamma::{ln_gamma, rgamma};
use super::kernel::Kernel;
use super::quad::{sinh_trapezoid, strip_halfwidth, QuadPlan};
use super::series::continued_shifted;
use crate::error::{Error, Result};
use crate::number::BigComplex;

/// Points closer than `2^-60` to a singular hyperplane are refused.
pub const SINGULAR_GAP_LOG2: f64 = -60.0;

/// Contour parameters; `None` means automatic.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ContourSpec {
    /// residues collected at `z = 0..M`
    pub shift_depth: Option<u32>,
    /// truncation `|Im z| <= T`
    pub height: Option<f64>,
    /// fixed node count
    pub nodes: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct MbValue {
    pub value: BigComplex,
    /// `log2` of the estimated absolute error
    pub log2_err: f64,
    /// `c` of the line `Re z = c`
    pub abscissa: Rational,
    pub shift_depth: u32,
    pub height: f64,
    pub nodes: usize,
    pub work_prec: u32,
}

impl MbValue {
    pub fn to_json(&self) -> serde_json::Value {
        let digits = self.value.default_digits();
        serde_json::json!({
            "re": self.value.re.to_string_radix(10, Some(digits)),
            "im": self.value.im.to_string_radix(10, Some(digits)),
            "log2_error": round3(self.log2_err),
            "contour": {
                "abscissa": self.abscissa.to_string(),
                "shift_depth": self.shift_depth,
                "height": round3(self.height),
                "nodes": self.nodes,
            },
            "work_prec": self.work_prec,
        })
    }
}

fn round3(x: f64) -> serde_json::Value {
    if x.is_finite() {
        serde_json::json!((x * 1000.0).round() / 1000.0)
    } else {
        serde_json::Value::Null
    }
}

/// `log2(2^a + 2^b)`.
pub fn log2_add(a: f64, b: f64) -> f64 {
    let m = a.max(b);
    if m == f64::NEG_INFINITY {
        return m;
    }
    m + ((a - m).exp2() + (b - m).exp2()).log2()
}

/// Target `sigma - dim - growth` for the Dirichlet truncation of the inner
/// family, per bit of precision.
const KAPPA_PER_BIT: f64 = 1.0 / 5.0;
/// Below this the inner family is summed by the series engine at each node.
const KAPPA_MIN: f64 = 6.0;

/// Singularities of the inner family in its last exponent.
#[derive(Clone, Debug)]
enum Poles {
    None,
    /// a simple pole at `w = 1`
    One,
    /// `w = 1/h - l`, `l >= 0`
    Ladder(u32),
}

impl Poles {
    fn top(&self) -> Option<f64> {
        match self {
            Poles::None => None,
            Poles::One => Some(1.0),
            Poles::Ladder(h) => Some(1.0 / *h as f64),
        }
    }

    /// `log2` distance from `w` to the nearest pole.
    fn gap(&self, w: &BigComplex) -> f64 {
        let p = w.prec();
        let at = |q: Rational| (w - &BigComplex::from_rational(p, &q)).log2_abs();
        match self {
            Poles::None => f64::INFINITY,
            Poles::One => at(Rational::from(1)),
            Poles::Ladder(h) => {
                let h = *h as i64;
                let l = (1.0 / h as f64 - w.re.to_f64()).round().max(0.0) as i64;
                at(Rational::from((1 - l * h, h)))
            }
        }
    }

    /// Poles `w` within `width` of `Re w = centre`.
    fn near(&self, centre: f64, width: f64) -> Vec<f64> {
        match self {
            Poles::None => vec![],
            Poles::One => vec![1.0].into_iter().filter(|w| (w - centre).abs() <= width).collect(),
            Poles::Ladder(h) => {
                let top = 1.0 / *h as f64;
                (0..)
                    .map(|l| top - l as f64)
                    .take_while(|w| *w >= centre - width)
                    .filter(|w| *w <= centre + width)
                    .collect()
            }
        }
    }
}

enum InnerKind {
    /// `I(w) = gamma_1^{-w} K_1(w)`
    One { kernel: Kernel, x: BigComplex, ln_gamma1: Float },
    Series,
    Recursive,
}

struct Inner {
    fam: Family,
    kind: InnerKind,
    head: Vec<BigComplex>,
    poles: Poles,
}

impl Inner {
    fn new(f: &Family, s: &[BigComplex], wp: u32) -> Result<Self> {
        let fam = f.inner();
        let di = fam.dim();
        let head = s[..di - 1].to_vec();
        let last = fam.last_kernel();
        let kind;
        let poles;
        if di == 1 {
            kind = InnerKind::One {
                kernel: last.clone(),
                x: to_complex(&fam.last_x(), wp),
                ln_gamma1: Float::with_val(wp, &fam.gamma[0]).ln(),
            };
            poles = match (&last.mu, last.h) {
                (Some(_), _) => Poles::None,
                (None, 1) => Poles::One,
                (None, h) => Poles::Ladder(h),
            };
        } else {
            let outer_twisted = (0..di - 1).all(|j| fam.twists[j].is_some());
            poles = match (&last.mu, last.h) {
                (Some(_), _) if outer_twisted => Poles::None,
                (None, 1) if outer_twisted => Poles::One,
                _ => {
                    return Err(Error::Unsupported(
                        "the inner family has more than one untwisted variable".into(),
                    ))
                }
            };
            kind = if fam.series_friendly() { InnerKind::Series } else { InnerKind::Recursive };
        }
        Ok(Inner { fam, kind, head, poles })
    }

    fn dim(&self) -> usize {
        self.fam.dim()
    }

    /// `I(w + k)` for `k = 0..=extra`.
    fn batch(&self, w: &BigComplex, extra: usize, wp: u32) -> Result<Vec<BigComplex>> {
        for k in 0..=extra {
            let wk = w + &BigComplex::from_int(w.prec(), k as i64);
            let g = self.poles.gap(&wk);
            if g < SINGULAR_GAP_LOG2 {
                return Err(singular(g, "inner exponent at a pole"));
            }
        }
        match &self.kind {
            InnerKind::One { kernel, x, ln_gamma1 } => {
                let v = kernel.shifted(w, x, extra, wp)?;
                Ok(v
                    .into_iter()
                    .enumerate()
                    .map(|(k, kv)| {
                        let wk = w + &BigComplex::from_int(w.prec(), k as i64);
                        let g = (&BigComplex::from_real(ln_gamma1.clone()) * &wk).mul_i64(-1).exp();
                        &kv * &g
                    })
                    .collect())
            }
            InnerKind::Series => {
                let mut s = self.head.clone();
                s.push(w.clone());
                continued_shifted(&self.fam, &s, extra, wp)
            }
            InnerKind::Recursive => (0..=extra)
                .map(|k| {
                    let mut s = self.head.clone();
                    s.push(w + &BigComplex::from_int(w.prec(), k as i64));
                    Ok(mb_eval(&self.fam, &s, &ContourSpec::default(), wp)?.value)
                })
                .collect(),
        }
    }
}

fn singular(gap: f64, what: &str) -> Error {
    Error::Domain(format!("singular locus: {what}, distance 2^{gap:.1}"))
}

/// How the inner family is evaluated on the line.
enum LineInner<'a> {
    One,
    Poly(OnLine),
    Series(&'a Inner),
}

/// Family value at `s` by Mellin-Barnes continuation in the last variable.
pub fn mb_eval(f: &Family, s: &[BigComplex], spec: &ContourSpec, prec: u32) -> Result<MbValue> {
    let d = f.dim();
    if s.len() != d {
        return Err(Error::validation("dimension", "s must have one entry per variable"));
    }
    if d == 1 {
        return single(f, &s[0], prec);
    }
    let setup = Setup::new(f, s, spec, prec)?;
    let mut wp = prec + 24 + setup.sing_bits;
    let mut res = setup.residues(wp)?;
    let mut probe = setup.integrand_scale(wp)?;
    let need = prec + 20 + setup.sing_bits + res.1.max(probe).max(0.0).ceil() as u32;
    if need > wp {
        wp = need + 4;
        res = setup.residues(wp)?;
        probe = setup.integrand_scale(wp)?;
    }
    let (rsum, rmag) = res;
    let quad = setup.integral(wp, probe)?;
    let value = &rsum + &quad.0;
    let err = log2_add(quad.1, rmag - wp as f64 + 10.0);
    Ok(MbValue {
        value: value.with_prec(prec),
        log2_err: log2_add(err, value.log2_abs() - prec as f64),
        abscissa: setup.c.clone(),
        shift_depth: setup.m,
        height: quad.2,
        nodes: quad.3,
        work_prec: wp,
    })
}

/// One variable: `gamma^{-s} K(s)`.
fn single(f: &Family, s: &BigComplex, prec: u32) -> Result<MbValue> {
    let wp = prec + 16;
    let k = f.last_kernel();
    let x = to_complex(&f.last_x(), wp);
    if k.mu.is_none() {
        let g = Poles::One.gap(s);
        if k.h == 1 && g < SINGULAR_GAP_LOG2 {
            return Err(singular(g, "s = 1"));
        }
    }
    let lg = Float::with_val(wp, &f.gamma[0]).ln();
    let v = &k.eval(s, &x, wp)? * &(&BigComplex::from_real(lg) * s).mul_i64(-1).exp();
    Ok(MbValue {
        log2_err: v.log2_abs() - prec as f64,
        value: v.with_prec(prec),
        abscissa: Rational::new(),
        shift_depth: 0,
        height: 0.0,
        nodes: 0,
        work_prec: wp,
    })
}

struct Setup<'a> {
    f: &'a Family,
    /// `s_d`, kept at extra precision so exact offsets survive
    sn: BigComplex,
    w0: BigComplex,
    kernel: Kernel,
    x: Rational,
    inner: Inner,
    m: u32,
    c: Rational,
    /// `1/Gamma(s_d) == 0`: the integral and the `h >= 2` kernel residues vanish
    entire_zero: bool,
    sing_bits: u32,
    spec: ContourSpec,
    prec: u32,
    /// `sigma - dim - growth` of the inner Dirichlet polynomial
    kappa: f64,
}

impl<'a> Setup<'a> {
    fn new(f: &'a Family, s: &[BigComplex], spec: &ContourSpec, prec: u32) -> Result<Self> {
        let d = f.dim();
        let sp = s.iter().map(|v| v.prec()).max().unwrap().max(prec + 128);
        let s: Vec<BigComplex> = s.iter().map(|v| v.with_prec(sp)).collect();
        let sn = s[d - 1].clone();
        let w0 = &s[d - 2] + &sn;
        let kernel = f.last_kernel();
        let x = f.last_x();
        let inner = Inner::new(f, &s, prec + 64)?;
        let entire_zero = matches!(sn.as_exact_integer(), Some(n) if n <= 0);

        let frac = if kernel.h == 1 { Rational::from((1, 2)) } else { Rational::from((1, 3)) };
        let fr = frac.to_f64();
        let mut lb = f64::NEG_INFINITY;
        if !entire_zero {
            lb = lb.max(-sn.re.to_f64());
        }
        if let Some(t) = inner.poles.top() {
            lb = lb.max(t - w0.re.to_f64());
        }
        let m_min = (lb + 0.25 - fr).ceil().max(0.0) as u32;
        let di = inner.dim();
        let growth: f64 = s[..di - 1].iter().map(|v| (-v.re.to_f64()).max(0.0)).sum();
        let base = w0.re.to_f64() + fr - di as f64 - growth;
        let m = match spec.shift_depth {
            Some(m) if m < m_min => {
                return Err(Error::validation(
                    "shift depth",
                    format!("M = {m} leaves singularities right of the contour; need M >= {m_min}"),
                ))
            }
            Some(m) => m,
            None if di >= 2 => {
                let target = (prec + 24) as f64 * KAPPA_PER_BIT;
                m_min.max((target - base).ceil().max(0.0) as u32)
            }
            None => m_min,
        };
        let c = Rational::from(m) + &frac;
        let kappa = base + m as f64;
        if di >= 2 && kappa < KAPPA_MIN && matches!(inner.kind, InnerKind::Recursive) {
            return Err(Error::Unsupported("shift depth too small for a nested inner family".into()));
        }

        // Near-singular points cost bits: 1/(s_d - 1) and inner poles.
        let mut gap = f64::INFINITY;
        if kernel.mu.is_none() && kernel.h == 1 {
            gap = gap.min(Poles::One.gap(&sn));
        }
        let mut args = Vec::new();
        for l in 0..=m as i64 {
            args.push(&w0 + &BigComplex::from_int(sp, l));
        }
        if kernel.mu.is_none() {
            if kernel.h == 1 {
                args.push(&w0 - &BigComplex::one(sp));
            } else {
                let off = to_complex(&Rational::from((-1, kernel.h as i64)), sp);
                for l in 0..=m as i64 {
                    args.push(&(&w0 + &off) + &BigComplex::from_int(sp, l));
                }
            }
        }
        for a in &args {
            gap = gap.min(inner.poles.gap(a));
        }
        // closer points are refused where they are used
        let sing_bits = (-gap).clamp(0.0, -SINGULAR_GAP_LOG2).ceil() as u32;

        Ok(Setup {
            f,
            sn,
            w0,
            kernel,
            x,
            inner,
            m,
            c,
            entire_zero,
            sing_bits,
            spec: spec.clone(),
            prec,
            kappa,
        })
    }

    fn gamma_n(&self) -> &Rational {
        &self.f.gamma[self.f.dim() - 1]
    }

    /// Sum of residue terms and `log2` of the largest one.
    fn residues(&self, wp: u32) -> Result<(BigComplex, f64)> {
        let sp = self.sn.prec();
        let m = self.m as usize;
        let x = to_complex(&self.x, wp);
        let lng = Float::with_val(wp, self.gamma_n()).ln();
        let gpow = |z: &BigComplex| (&BigComplex::from_real(lng.clone()) * z).exp();
        let mut total = BigComplex::zero(wp);
        let mut top = f64::NEG_INFINITY;
        let mut add = |t: BigComplex, total: &mut BigComplex| {
            top = top.max(t.log2_abs());
            *total += &t;
        };

        // binom(-s_d, l), exact zeros kept exact
        let mut binom = vec![BigComplex::one(sp)];
        for l in 1..=m {
            let f = (&(-&self.sn) - &BigComplex::from_int(sp, l as i64 - 1)).div_i64(l as i64);
            binom.push(&binom[l - 1] * &f);
        }
        let last = (0..=m).rev().find(|&l| !binom[l].is_zero());
        if let Some(top_l) = last {
            let kv = self.kernel.shifted(&BigComplex::from_int(wp, -(top_l as i64)), &x, top_l, wp)?;
            let iv = self.inner.batch(&self.w0, top_l, wp)?;
            for l in 0..=top_l {
                if binom[l].is_zero() {
                    continue;
                }
                let g = gpow(&BigComplex::from_int(wp, l as i64));
                let t = &(&binom[l].with_prec(wp) * &g) * &(&kv[top_l - l] * &iv[l]);
                add(t, &mut total);
            }
        }

        if self.kernel.mu.is_none() {
            if self.kernel.h == 1 {
                // z = -1: I(w0 - 1) / (gamma_d (s_d - 1))
                let g = Poles::One.gap(&self.sn);
                if g < SINGULAR_GAP_LOG2 {
                    return Err(singular(g, "s_d = 1"));
                }
                let w = &self.w0 - &BigComplex::one(sp);
                let iv = self.inner.batch(&w, 0, wp)?;
                let den = &(&self.sn - &BigComplex::one(sp)).with_prec(wp) * &to_complex(self.gamma_n(), wp);
                add(&iv[0] / &den, &mut total);
            } else if !self.entire_zero {
                let rg = rgamma(&self.sn.with_prec(wp))?;
                let off = Rational::from((-1, self.kernel.h as i64));
                let w = &self.w0 + &to_complex(&off, sp);
                let iv = self.inner.batch(&w, m, wp)?;
                for (l, (_, rho)) in self.kernel.poles(&x, m + 1).into_iter().enumerate() {
                    let z0 = to_complex(&(Rational::from(l as i64) + &off), wp);
                    let lw = &ln_gamma(&(&self.sn.with_prec(wp) + &z0))? + &ln_gamma(&(-&z0))?;
                    let t = &(&(&lw.exp() * &rg) * &gpow(&z0)) * &(&rho * &iv[l]);
                    add(t, &mut total);
                }
            }
        }
        Ok((total, top))
    }

    /// `log2` of the integrand near `y = 0`, a proxy for the integral's size.
    fn integrand_scale(&self, wp: u32) -> Result<f64> {
        if self.entire_zero {
            return Ok(f64::NEG_INFINITY);
        }
        let p = wp.min(self.prec + 64);
        let rg = rgamma(&self.sn.with_prec(p))?;
        let line = self.line_inner(p)?;
        let g = self.integrand(&line, &rg, &Float::new(p), p)?;
        Ok(g.log2_abs())
    }

    fn line_inner(&self, wp: u32) -> Result<LineInner<'_>> {
        if self.inner.dim() == 1 {
            return Ok(LineInner::One);
        }
        if self.kappa < KAPPA_MIN {
            return Ok(LineInner::Series(&self.inner));
        }
        let fam = &self.inner.fam;
        let di = fam.dim();
        let vmin = fam.min_denominator(di - 1).to_f64();
        let gmin = fam.gamma.iter().map(|g| g.to_f64()).fold(f64::INFINITY, f64::min);
        let growth: f64 = self.inner.head.iter().map(|v| (-v.re.to_f64()).max(0.0)).sum();
        // (V/vmin)^kappa beats 2^bits times the lattice count below V
        let bits = wp as f64 * std::f64::consts::LN_2 + 12.0;
        let mut ratio = 2.0f64;
        for _ in 0..8 {
            let count = di as f64 * (vmin * ratio / gmin + 2.0).ln();
            let lift = (di as f64 + growth) * (-vmin.ln()).max(0.0);
            ratio = ((bits + count + lift) / self.kappa).exp();
        }
        let vmax = Rational::from_f64(vmin * ratio * 1.0001 + 1e-9).unwrap();
        let dp = DirichletPoly::build(fam, &self.inner.head, &vmax, wp)?;
        let base = &self.w0.with_prec(wp) + &to_complex(&self.c, wp);
        Ok(LineInner::Poly(dp.on_line(&base, wp)))
    }

    /// `W(z) I(w0 + z) gamma_d^z K(-z) / (2 pi)` at `z = c + i y`, with
    /// `rg = 1/Gamma(s_d)`.
    fn integrand(&self, line: &LineInner<'_>, rg: &BigComplex, y: &Float, wp: u32) -> Result<BigComplex> {
        let z = BigComplex::from_parts(Float::with_val(wp, &self.c), Float::with_val(wp, y));
        let sn = self.sn.with_prec(wp);
        let lw = &ln_gamma(&(&sn + &z))? + &ln_gamma(&(-&z))?;
        let lng = Float::with_val(wp, self.gamma_n()).ln();
        let w = &(&lw + &(&BigComplex::from_real(lng) * &z)).exp() * rg;
        let x = to_complex(&self.x, wp);
        let k = self.kernel.eval(&(-&z), &x, wp)?;
        let arg = &self.w0.with_prec(wp) + &z;
        let i = match line {
            LineInner::One => self.inner.batch(&arg, 0, wp)?.swap_remove(0),
            LineInner::Poly(p) => p.eval(y),
            LineInner::Series(inner) => inner.batch(&arg, 0, wp)?.swap_remove(0),
        };
        let two_pi = Float::with_val(wp, BigComplex::pi(wp) * 2u32);
        Ok((&(&w * &k) * &i).scale(&two_pi.recip()))
    }

    /// `(value, log2 err, height, nodes)` of the line integral.
    fn integral(&self, wp: u32, scale: f64) -> Result<(BigComplex, f64, f64, usize)> {
        if self.entire_zero {
            return Ok((BigComplex::zero(wp), f64::NEG_INFINITY, 0.0, 0));
        }
        let rg = rgamma(&self.sn.with_prec(wp))?;
        let line = self.line_inner(wp)?;
        let c = self.c.to_f64();
        // singularities of the integrand nearest the line, as z values
        let mut poles: Vec<(f64, f64)> = vec![(self.m as f64, 0.0), (self.m as f64 + 1.0, 0.0)];
        if self.kernel.mu.is_none() && self.kernel.h >= 2 {
            let o = 1.0 / self.kernel.h as f64;
            poles.push((self.m as f64 - o, 0.0));
            poles.push((self.m as f64 + 1.0 - o, 0.0));
        }
        let (sr, si) = self.sn.to_c64();
        for k in 0..8 {
            poles.push((-sr - k as f64, -si));
        }
        let (wr, wi) = self.w0.to_c64();
        for p in self.inner.poles.near(wr + c, 6.0) {
            poles.push((p - wr, -wi));
        }
        let d = poles
            .iter()
            .map(|&(pr, pi)| strip_halfwidth(pi, c - pr, 1.0))
            .fold(f64::INFINITY, f64::min)
            .max(1e-3);
        let bits = (self.prec as f64 + 12.0 + scale.max(0.0)) * std::f64::consts::LN_2;
        let plan = QuadPlan {
            step: 2.0 * std::f64::consts::PI * d / bits,
            alpha: 1.0,
            tol_log2: -(self.prec as f64) - 8.0,
            height: self.spec.height,
            nodes: self.spec.nodes,
            prec: wp,
        };
        let q = sinh_trapezoid(|y| self.integrand(&line, &rg, y, wp), &plan)?;
        Ok((q.value, q.log2_err, q.height, q.nodes))
    }
}
