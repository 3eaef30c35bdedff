//! `zeta(s, h, b) = sum_{m >= 0} (m^h + b)^{-s}` through Riemann zeta:
//!
//! `zeta(s, h, b) = b^{-s} + sum_{l <= M} binom(-s, l) zeta(h(s + l)) b^l
//!   + (1/2 pi i) int_{(M + 1/2)} W(z) zeta(h(s + z)) b^z dz`.
//!
//! This route shares nothing with the kernel sums beyond the Gamma function
//! and Riemann zeta, so it checks them.

use rug::{Float, Rational};

use super::family::to_complex;
use super::gamma::{ln_gamma, rgamma};
use super::hurwitz::riemann;
use super::limit::{extrapolate, Limit};
use super::mb::{log2_add, ContourSpec, MbValue, SINGULAR_GAP_LOG2};
use super::quad::{sinh_trapezoid, strip_halfwidth, QuadPlan};
use crate::error::{Error, Result};
use crate::number::BigComplex;

pub fn power_hurwitz_mb(s: &BigComplex, h: u32, b: &Rational, spec: &ContourSpec, prec: u32) -> Result<MbValue> {
    if h == 0 {
        return Err(Error::validation("h >= 1", "power exponent must be positive"));
    }
    if *b <= 0 {
        return Err(Error::validation("b not in (-inf, 0]", format!("b = {b}")));
    }
    let top = (to_complex(&Rational::from((1, h as i64)), s.prec()) - s).log2_abs();
    if top < SINGULAR_GAP_LOG2 {
        return Err(Error::Domain(format!("singular locus: s = 1/h, distance 2^{top:.1}")));
    }
    let wp = prec + 32;
    let hh = BigComplex::from_int(wp, h as i64);
    let sw = s.with_prec(wp);
    let lb = (1.0 / h as f64 - s.re.to_f64()).max(-s.re.to_f64());
    let m_min = (lb + 0.25 - 0.5).ceil().max(0.0) as u32;
    let m = match spec.shift_depth {
        Some(m) if m < m_min => {
            return Err(Error::validation("shift depth", format!("need M >= {m_min}")));
        }
        Some(m) => m,
        None => m_min,
    };
    let c = Rational::from(m) + Rational::from((1, 2));
    let lnb = Float::with_val(wp, b).ln();
    let bpow = |z: &BigComplex| (&BigComplex::from_real(lnb.clone()) * z).exp();

    let mut total = bpow(&-&sw);
    let mut top_mag = total.log2_abs();
    let mut binom = BigComplex::one(s.prec());
    for l in 0..=m as i64 {
        if l > 0 {
            let f = (&(-s) - &BigComplex::from_int(s.prec(), l - 1)).div_i64(l);
            binom = &binom * &f;
        }
        if binom.is_zero() {
            break;
        }
        let arg = &(&sw + &BigComplex::from_int(wp, l)) * &hh;
        let t = &(&binom.with_prec(wp) * &riemann(&arg, wp)?) * &bpow(&BigComplex::from_int(wp, l));
        top_mag = top_mag.max(t.log2_abs());
        total += &t;
    }

    let rg = rgamma(&sw)?;
    let (integral, qerr, height, nodes) = if rg.is_zero() {
        (BigComplex::zero(wp), f64::NEG_INFINITY, 0.0, 0)
    } else {
        let cf = c.to_f64();
        let (sr, si) = s.to_c64();
        let mut poles = vec![(m as f64, 0.0), (m as f64 + 1.0, 0.0), (1.0 / h as f64 - sr, -si)];
        for k in 0..4 {
            poles.push((-sr - k as f64, -si));
        }
        let d = poles.iter().map(|&(pr, pi)| strip_halfwidth(pi, cf - pr, 1.0)).fold(f64::INFINITY, f64::min);
        let plan = QuadPlan {
            step: 2.0 * std::f64::consts::PI * d.max(1e-3) / ((prec + 12) as f64 * std::f64::consts::LN_2),
            alpha: 1.0,
            tol_log2: -(prec as f64) - 8.0,
            height: spec.height,
            nodes: spec.nodes,
            prec: wp,
        };
        let inv_two_pi = Float::with_val(wp, BigComplex::pi(wp) * 2u32).recip();
        let q = sinh_trapezoid(
            |y| {
                let z = BigComplex::from_parts(Float::with_val(wp, &c), y.clone());
                let lw = &ln_gamma(&(&sw + &z))? + &ln_gamma(&(-&z))?;
                let zeta = riemann(&(&(&sw + &z) * &hh), wp)?;
                let v = &(&(&lw.exp() * &rg) * &zeta) * &bpow(&z);
                Ok(v.scale(&inv_two_pi))
            },
            &plan,
        )?;
        (q.value, q.log2_err, q.height, q.nodes)
    };
    let value = &total + &integral;
    let err = log2_add(qerr, top_mag - wp as f64 + 8.0);
    Ok(MbValue {
        log2_err: log2_add(err, value.log2_abs() - prec as f64),
        value: value.with_prec(prec),
        abscissa: c,
        shift_depth: m,
        height,
        nodes,
        work_prec: wp,
    })
}

/// `zeta(-l, h, b)` by extrapolation from `s = -l + t`.
pub fn power_hurwitz_at_neg(l: u32, h: u32, b: &Rational, spec: &ContourSpec, prec: u32) -> Result<Limit> {
    extrapolate(
        |t| {
            let s = BigComplex::from_real(Float::with_val(t.prec(), t - l));
            power_hurwitz_mb(&s, h, b, spec, prec + 8)
        },
        prec,
    )
}
