//! A small field interface shared by exact and floating coefficients.
//!
//! Constants are created "like" an existing element so that they inherit its
//! cyclotomic level or its precision.

use std::fmt::Debug;

use rug::{Float, Rational};

use super::complex::BigComplex;
use super::cyclotomic::ExactValue;
use crate::error::{Error, Result};

pub trait Scalar: Clone + Debug + Send + Sync {
    fn zero_like(&self) -> Self;
    fn rational_like(&self, q: &Rational) -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, o: &Self) -> Self;
    fn minus(&self, o: &Self) -> Self;
    fn times(&self, o: &Self) -> Self;
    fn negated(&self) -> Self;
    fn inverse(&self) -> Result<Self>;
    fn to_json(&self) -> serde_json::Value;
    /// True when the value is exactly a rational number `<= 0`.
    fn is_nonpositive_real(&self) -> bool;

    fn one_like(&self) -> Self {
        self.rational_like(&Rational::from(1))
    }

    fn int_like(&self, n: i64) -> Self {
        self.rational_like(&Rational::from(n))
    }

    fn scaled(&self, q: &Rational) -> Self {
        self.times(&self.rational_like(q))
    }

    fn divided(&self, o: &Self) -> Result<Self> {
        Ok(self.times(&o.inverse()?))
    }

    fn pow_i(&self, e: i64) -> Result<Self> {
        let mut base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut k = e.unsigned_abs();
        let mut acc = self.one_like();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.times(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.times(&base);
            }
        }
        Ok(acc)
    }
}

impl Scalar for Rational {
    fn zero_like(&self) -> Self {
        Rational::new()
    }
    fn rational_like(&self, q: &Rational) -> Self {
        q.clone()
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn plus(&self, o: &Self) -> Self {
        Rational::from(self + o)
    }
    fn minus(&self, o: &Self) -> Self {
        Rational::from(self - o)
    }
    fn times(&self, o: &Self) -> Self {
        Rational::from(self * o)
    }
    fn negated(&self) -> Self {
        Rational::from(-self)
    }
    fn inverse(&self) -> Result<Self> {
        if *self == 0 {
            Err(Error::DivisionByZero)
        } else {
            Ok(Rational::from(self.recip_ref()))
        }
    }
    fn to_json(&self) -> serde_json::Value {
        self.to_string().into()
    }
    fn is_nonpositive_real(&self) -> bool {
        *self <= 0
    }
}

impl Scalar for ExactValue {
    fn zero_like(&self) -> Self {
        ExactValue::zero(self.context())
    }
    fn rational_like(&self, q: &Rational) -> Self {
        ExactValue::from_rational(self.context(), q)
    }
    fn is_zero(&self) -> bool {
        ExactValue::is_zero(self)
    }
    fn plus(&self, o: &Self) -> Self {
        self.try_add(o).expect("cyclotomic level mismatch")
    }
    fn minus(&self, o: &Self) -> Self {
        self.try_sub(o).expect("cyclotomic level mismatch")
    }
    fn times(&self, o: &Self) -> Self {
        self.try_mul(o).expect("cyclotomic level mismatch")
    }
    fn negated(&self) -> Self {
        self.neg()
    }
    fn inverse(&self) -> Result<Self> {
        ExactValue::inverse(self)
    }
    fn scaled(&self, q: &Rational) -> Self {
        self.scale(q)
    }
    fn to_json(&self) -> serde_json::Value {
        ExactValue::to_json(self)
    }
    fn is_nonpositive_real(&self) -> bool {
        self.as_rational().is_some_and(|q| q <= 0)
    }
}

impl Scalar for BigComplex {
    fn zero_like(&self) -> Self {
        BigComplex::zero(self.prec())
    }
    fn rational_like(&self, q: &Rational) -> Self {
        BigComplex::from_rational(self.prec(), q)
    }
    fn is_zero(&self) -> bool {
        BigComplex::is_zero(self)
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn negated(&self) -> Self {
        -self
    }
    fn inverse(&self) -> Result<Self> {
        if BigComplex::is_zero(self) {
            Err(Error::DivisionByZero)
        } else {
            Ok(self.recip())
        }
    }
    fn scaled(&self, q: &Rational) -> Self {
        self.mul_rational(q)
    }
    fn to_json(&self) -> serde_json::Value {
        self.to_string().into()
    }
    fn is_nonpositive_real(&self) -> bool {
        self.im.is_zero() && self.re <= Float::new(2)
    }
}
