//! Trapezoid rule on the real line after `y = alpha sinh(u)`.
//!
//! The error of the trapezoid rule decays like `exp(-2 pi d / h)` where `d`
//! is the half-width of the strip of analyticity in `u`, so halving `h`
//! roughly squares the error. The estimate for the finest rule is
//! `|T_h - T_{2h}|^2 / S` with `S` the rule applied to `|g|`.

use rug::Float;

use crate::error::{Error, Result};
use crate::number::BigComplex;

/// Largest `|u|` visited; `sinh(12)` is about `8e4`.
const U_MAX: f64 = 12.0;
const MAX_HALVINGS: usize = 5;

#[derive(Clone, Debug)]
pub struct QuadPlan {
    /// initial step in `u`
    pub step: f64,
    pub alpha: f64,
    /// target absolute error, as `log2`
    pub tol_log2: f64,
    /// truncate at `|y| <= height` instead of by decay
    pub height: Option<f64>,
    /// fixed node count, no refinement
    pub nodes: Option<usize>,
    pub prec: u32,
}

#[derive(Clone, Debug)]
pub struct Quad {
    pub value: BigComplex,
    pub log2_err: f64,
    /// largest `|y|` used
    pub height: f64,
    pub nodes: usize,
}

/// Distance in the `u` plane from the real axis to the image of a
/// singularity at `y = y_re + i y_im`.
pub fn strip_halfwidth(y_re: f64, y_im: f64, alpha: f64) -> f64 {
    asinh_c(y_re / alpha, y_im / alpha).1.abs()
}

/// Complex `asinh(w) = ln(w + sqrt(w^2 + 1))` in `f64`.
fn asinh_c(x: f64, y: f64) -> (f64, f64) {
    // w^2 + 1
    let (a, b) = (x * x - y * y + 1.0, 2.0 * x * y);
    let r = a.hypot(b);
    let mut sr = ((r + a) / 2.0).max(0.0).sqrt();
    let mut si = ((r - a) / 2.0).max(0.0).sqrt();
    if b < 0.0 {
        si = -si;
    }
    // choose the root that keeps the branch principal for x >= 0
    if x < 0.0 || (x == 0.0 && y.abs() > 1.0 && sr > 0.0) {
        sr = -sr;
        si = -si;
        let (lr, li) = ln_c(-x + sr, -y + si);
        return (-lr, -li);
    }
    ln_c(x + sr, y + si)
}

fn ln_c(x: f64, y: f64) -> (f64, f64) {
    (x.hypot(y).ln(), y.atan2(x))
}

struct Node {
    k: i64,
    term: BigComplex,
    mag: f64,
}

struct Rule<'a, F> {
    f: &'a mut F,
    alpha: Float,
    prec: u32,
    evals: usize,
}

impl<F: FnMut(&Float) -> Result<BigComplex>> Rule<'_, F> {
    /// `alpha cosh(u) g(alpha sinh(u))` at `u = k h`.
    fn weighted(&mut self, k: i64, h: f64) -> Result<BigComplex> {
        let u = Float::with_val(self.prec, k) * h;
        let (sh, ch) = u.sinh_cosh(Float::new(self.prec));
        let y = Float::with_val(self.prec, &sh * &self.alpha);
        let w = Float::with_val(self.prec, &ch * &self.alpha);
        self.evals += 1;
        Ok((self.f)(&y)?.scale(&w))
    }
}

/// `int_{-inf}^{inf} g(y) dy`.
pub fn sinh_trapezoid<F: FnMut(&Float) -> Result<BigComplex>>(mut g: F, plan: &QuadPlan) -> Result<Quad> {
    let prec = plan.prec;
    let mut rule = Rule { f: &mut g, alpha: Float::with_val(prec, plan.alpha), prec, evals: 0 };
    let u_cap = match plan.height {
        Some(t) => (t / plan.alpha).asinh(),
        None => U_MAX,
    };
    let mut h = plan.step.min(0.5);
    let small = plan.tol_log2 - 10.0;

    // Truncation by decay: march out from u = 0 on each side.
    let mut nodes: Vec<Node> = Vec::new();
    let mut edge = f64::NEG_INFINITY;
    let mut kmax = [0i64; 2];
    for (side, dir) in [(0usize, 1i64), (1, -1)] {
        let mut quiet = 0;
        let mut k = if side == 0 { 0 } else { -1 };
        loop {
            if (k as f64 * h).abs() > u_cap {
                if plan.height.is_none() {
                    return Err(Error::NonConvergence("contour integrand does not decay".into()));
                }
                break;
            }
            let t = rule.weighted(k, h)?;
            let mag = t.log2_abs() + h.log2();
            nodes.push(Node { k, term: t, mag });
            kmax[side] = k.abs();
            if plan.height.is_none() {
                if mag < small {
                    quiet += 1;
                    if quiet >= 2 {
                        edge = edge.max(mag);
                        break;
                    }
                } else {
                    quiet = 0;
                }
            }
            k += dir;
        }
        if plan.height.is_some() {
            if let Some(n) = nodes.iter().rev().find(|n| n.k.abs() == kmax[side]) {
                edge = edge.max(n.mag);
            }
        }
    }

    if let Some(count) = plan.nodes {
        // Fixed budget: spread `count` nodes over the range just found.
        let half = (count.max(3) as i64 - 1) / 2;
        let u_hi = kmax[0].max(kmax[1]) as f64 * h;
        let h2 = u_hi / half as f64;
        let mut fine = Vec::new();
        for k in -half..=half {
            let t = rule.weighted(k, h2)?;
            let mag = t.log2_abs() + h2.log2();
            fine.push(Node { k, term: t, mag });
        }
        let (tf, tc, s) = sums(&fine, h2, prec);
        let err = estimate(&tf, &tc, s, edge, prec);
        return Ok(Quad { value: tf, log2_err: err, height: plan.alpha * u_hi.sinh(), nodes: rule.evals });
    }

    let (mut t_prev, coarse, s) = sums(&nodes, h, prec);
    let err = estimate(&t_prev, &coarse, s, edge, prec);
    if err <= plan.tol_log2 {
        let u_hi = kmax[0].max(kmax[1]) as f64 * h;
        return Ok(Quad { value: t_prev, log2_err: err, height: plan.alpha * u_hi.sinh(), nodes: rule.evals });
    }
    for _ in 0..=MAX_HALVINGS {
        h /= 2.0;
        for n in nodes.iter_mut() {
            n.k *= 2;
        }
        let lo = -2 * kmax[1];
        let hi = 2 * kmax[0];
        let mut k = lo + 1;
        while k < hi {
            let t = rule.weighted(k, h)?;
            let mag = t.log2_abs() + h.log2();
            nodes.push(Node { k, term: t, mag });
            k += 2;
        }
        let (t, _, s) = sums(&nodes, h, prec);
        let err = estimate(&t, &t_prev, s, edge, prec);
        if err <= plan.tol_log2 {
            let u_hi = kmax[0].max(kmax[1]) as f64 * 2.0 * h;
            return Ok(Quad { value: t, log2_err: err, height: plan.alpha * u_hi.sinh(), nodes: rule.evals });
        }
        t_prev = t;
        kmax = [kmax[0] * 2, kmax[1] * 2];
    }
    Err(Error::NonConvergence("trapezoid rule did not converge after repeated halving".into()))
}

/// `(T_h, T_{2h}, log2 S)`.
fn sums(nodes: &[Node], h: f64, prec: u32) -> (BigComplex, BigComplex, f64) {
    let mut fine = BigComplex::zero(prec);
    let mut coarse = BigComplex::zero(prec);
    let mut abs = 0.0f64;
    let top = nodes.iter().map(|n| n.mag).fold(f64::NEG_INFINITY, f64::max);
    for n in nodes {
        fine += &n.term;
        if n.k % 2 == 0 {
            coarse += &n.term;
        }
        abs += (n.mag - top).exp2();
    }
    let hf = Float::with_val(prec, h);
    let hc = Float::with_val(prec, 2.0 * h);
    (fine.scale(&hf), coarse.scale(&hc), top + abs.log2())
}

fn estimate(fine: &BigComplex, coarse: &BigComplex, s: f64, edge: f64, prec: u32) -> f64 {
    let d = (fine - coarse).log2_abs();
    let conv = if d == f64::NEG_INFINITY { d } else { 2.0 * d - s };
    let round = s - prec as f64 + 4.0;
    let trunc = edge + 2.0;
    let m = conv.max(round).max(trunc);
    m + ((conv - m).exp2() + (round - m).exp2() + (trunc - m).exp2()).log2()
}
