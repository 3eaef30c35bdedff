//! Closed forms at non-positive integers.

use rug::Rational;

use super::tables::{bernoulli, stirling2};
use crate::error::{Error, Result};
use crate::number::rational::{binomial, factorial};
use crate::number::Scalar;

/// Bernoulli polynomial `B_k(a)`, by Horner's rule.
pub fn bernoulli_poly<S: Scalar>(k: u32, a: &S) -> S {
    let mut acc = a.zero_like();
    for i in (0..=k).rev() {
        // coefficient of a^i is C(k, i) B_{k-i}
        let c = bernoulli(k - i) * binomial(k, i);
        acc = acc.times(a).plus(&a.rational_like(&c));
    }
    acc
}

/// `zeta(-n)`.
pub fn riemann_neg(n: u32) -> Rational {
    let b = bernoulli(n + 1) / (n + 1);
    if n % 2 == 1 {
        -b
    } else {
        b
    }
}

/// Hurwitz `zeta(-n, a) = -B_{n+1}(a)/(n+1)`.
pub fn hurwitz_neg<S: Scalar>(n: u32, a: &S) -> Result<S> {
    if a.is_nonpositive_real() {
        return Err(Error::Domain(format!("Hurwitz parameter must avoid (-inf, 0], got {a:?}")));
    }
    Ok(bernoulli_poly(n + 1, a).scaled(&Rational::from((-1, n as i64 + 1))))
}

/// Lerch `phi_mu(-n) = sum_{m>=1} mu^m m^n`, continued, for a root of unity `mu != 1`.
///
/// Uses `(-1)^n mu/(1-mu) sum_l l! S(n,l) (mu-1)^{-l}`.
pub fn lerch_neg<S: Scalar>(mu: &S, n: u32) -> Result<S> {
    let one = mu.one_like();
    let d = mu.minus(&one);
    if d.is_zero() {
        return Err(Error::Domain("twist must differ from 1".into()));
    }
    let inv_d = d.inverse()?;
    let mut sum = mu.zero_like();
    let mut pw = one.clone();
    for l in 0..=n {
        let c = Rational::from(factorial(l) * stirling2(n, l));
        if c != 0 {
            sum = sum.plus(&pw.scaled(&c));
        }
        pw = pw.times(&inv_d);
    }
    // mu/(1-mu) = -mu/(mu-1)
    let pre = mu.times(&inv_d).negated();
    let v = pre.times(&sum);
    Ok(if n % 2 == 1 { v.negated() } else { v })
}

/// Power Hurwitz `zeta(-l, h, b) = sum_{m>=0} (m^h + b)^l`, continued.
///
/// For `h >= 2`: `b^l + sum_j C(l,j) zeta(h(j-l)) b^j`; `h = 1` is the Hurwitz value.
pub fn power_hurwitz_neg<S: Scalar>(l: u32, h: u32, b: &S) -> Result<S> {
    if h == 0 {
        return Err(Error::Domain("power exponent must be positive".into()));
    }
    if b.is_nonpositive_real() {
        return Err(Error::Domain(format!("power Hurwitz parameter must avoid (-inf, 0], got {b:?}")));
    }
    if h == 1 {
        return hurwitz_neg(l, b);
    }
    let mut acc = b.pow_i(l as i64)?;
    let mut bj = b.one_like();
    for j in 0..=l {
        let c = riemann_neg(h * (l - j)) * binomial(l, j);
        if c != 0 {
            acc = acc.plus(&bj.scaled(&c));
        }
        bj = bj.times(b);
    }
    Ok(acc)
}
