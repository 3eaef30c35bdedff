//! Arbitrary-precision complex numbers built on MPFR floats.
//!
//! Binary operations produce a result whose precision is the minimum of the
//! operand precisions.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use rug::float::Constant;
use rug::ops::Pow;
use rug::{Float, Integer, Rational};

#[derive(Clone, PartialEq)]
pub struct BigComplex {
    pub re: Float,
    pub im: Float,
}

fn fl(prec: u32) -> Float {
    Float::new(prec)
}

impl BigComplex {
    pub fn zero(prec: u32) -> Self {
        BigComplex { re: fl(prec), im: fl(prec) }
    }

    pub fn one(prec: u32) -> Self {
        Self::from_f64(prec, 1.0, 0.0)
    }

    pub fn from_f64(prec: u32, re: f64, im: f64) -> Self {
        BigComplex { re: Float::with_val(prec, re), im: Float::with_val(prec, im) }
    }

    pub fn from_int(prec: u32, n: i64) -> Self {
        BigComplex { re: Float::with_val(prec, n), im: fl(prec) }
    }

    pub fn from_rational(prec: u32, q: &Rational) -> Self {
        BigComplex { re: Float::with_val(prec, q), im: fl(prec) }
    }

    pub fn from_integer(prec: u32, q: &Integer) -> Self {
        BigComplex { re: Float::with_val(prec, q), im: fl(prec) }
    }

    pub fn from_real(re: Float) -> Self {
        let p = re.prec();
        BigComplex { re, im: fl(p) }
    }

    pub fn from_parts(re: Float, im: Float) -> Self {
        BigComplex { re, im }
    }

    pub fn i(prec: u32) -> Self {
        Self::from_f64(prec, 0.0, 1.0)
    }

    pub fn pi(prec: u32) -> Float {
        Float::with_val(prec, Constant::Pi)
    }

    /// `exp(2 pi i p / q)`.
    pub fn root_of_unity(prec: u32, p: i64, q: u64) -> Self {
        let q = q as i64;
        let p = p.rem_euclid(q);
        // Exact values on the axes avoid spurious tiny imaginary parts.
        if 4 * p % q == 0 {
            return match 4 * p / q {
                0 => Self::one(prec),
                1 => Self::from_f64(prec, 0.0, 1.0),
                2 => Self::from_f64(prec, -1.0, 0.0),
                _ => Self::from_f64(prec, 0.0, -1.0),
            };
        }
        let wp = prec + 10;
        let t: Float = Float::with_val(wp, Constant::Pi) * 2u32 * p / q;
        let (s, c) = t.sin_cos(Float::new(wp));
        BigComplex { re: Float::with_val(prec, c), im: Float::with_val(prec, s) }
    }

    pub fn prec(&self) -> u32 {
        self.re.prec().min(self.im.prec())
    }

    pub fn with_prec(&self, prec: u32) -> Self {
        BigComplex { re: Float::with_val(prec, &self.re), im: Float::with_val(prec, &self.im) }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    pub fn conj(&self) -> Self {
        BigComplex { re: self.re.clone(), im: -self.im.clone() }
    }

    pub fn norm_sqr(&self) -> Float {
        let p = self.prec();
        Float::with_val(p, self.re.square_ref()) + Float::with_val(p, self.im.square_ref())
    }

    pub fn abs(&self) -> Float {
        Float::with_val(self.prec(), self.re.hypot_ref(&self.im))
    }

    pub fn arg(&self) -> Float {
        Float::with_val(self.prec(), self.im.atan2_ref(&self.re))
    }

    /// Approximate `log2 |z|`; `-inf` for zero. Never underflows like `to_f64` would.
    pub fn log2_abs(&self) -> f64 {
        fn l2(x: &Float) -> f64 {
            if x.is_zero() {
                return f64::NEG_INFINITY;
            }
            let (m, e) = x.to_f64_exp();
            m.abs().log2() + e as f64
        }
        let a = l2(&self.re);
        let b = l2(&self.im);
        let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
        if hi == f64::NEG_INFINITY {
            return hi;
        }
        hi + 0.5 * (1.0 + (2f64).powf(2.0 * (lo - hi))).log2()
    }

    pub fn to_c64(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }

    pub fn scale(&self, k: &Float) -> Self {
        BigComplex { re: Float::with_val(self.prec(), &self.re * k), im: Float::with_val(self.prec(), &self.im * k) }
    }

    pub fn mul_i64(&self, k: i64) -> Self {
        BigComplex { re: self.re.clone() * k, im: self.im.clone() * k }
    }

    pub fn div_i64(&self, k: i64) -> Self {
        BigComplex { re: self.re.clone() / k, im: self.im.clone() / k }
    }

    pub fn mul_rational(&self, q: &Rational) -> Self {
        BigComplex { re: self.re.clone() * q, im: self.im.clone() * q }
    }

    pub fn recip(&self) -> Self {
        let n = self.norm_sqr();
        BigComplex { re: Float::with_val(self.prec(), &self.re / &n), im: -Float::with_val(self.prec(), &self.im / &n) }
    }

    pub fn exp(&self) -> Self {
        let p = self.prec();
        let m = Float::with_val(p, self.re.exp_ref());
        let (s, c) = self.im.clone().sin_cos(Float::new(p));
        BigComplex { re: Float::with_val(p, &m * &c), im: m * s }
    }

    /// Principal logarithm, imaginary part in `(-pi, pi]`.
    pub fn ln(&self) -> Self {
        let p = self.prec();
        if self.im.is_zero() && self.re.is_sign_positive() {
            return BigComplex { re: Float::with_val(p, self.re.ln_ref()), im: fl(p) };
        }
        let r = self.abs();
        BigComplex { re: r.ln(), im: self.arg() }
    }

    /// Principal power `self^w = exp(w log self)`.
    pub fn pow(&self, w: &BigComplex) -> Self {
        if w.is_zero() {
            return Self::one(self.prec().min(w.prec()));
        }
        if w.im.is_zero() && self.im.is_zero() && self.re.is_sign_positive() {
            let p = self.prec().min(w.prec());
            return Self::from_real(Float::with_val(p, (&self.re).pow(&w.re)));
        }
        (&self.ln() * w).exp()
    }

    pub fn powi(&self, e: i64) -> Self {
        let mut base = if e < 0 { self.recip() } else { self.clone() };
        let mut k = e.unsigned_abs();
        let mut acc = Self::one(self.prec());
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn sqr(&self) -> Self {
        self * self
    }

    /// `sin(pi z)` with exact argument reduction, so integers give exact zeros.
    pub fn sin_pi(&self) -> Self {
        let p = self.prec();
        let (n, f) = reduce_half_period(&self.re);
        let pi = Self::pi(p + 8);
        let x = Float::with_val(p + 8, &f * &pi);
        let y = Float::with_val(p + 8, &self.im * &pi);
        let (s, c) = x.sin_cos(Float::new(p + 8));
        let ch = Float::with_val(p + 8, y.cosh_ref());
        let sh = Float::with_val(p + 8, y.sinh_ref());
        let sign = if n.is_odd() { -1 } else { 1 };
        BigComplex {
            re: Float::with_val(p, s * ch) * sign,
            im: Float::with_val(p, c * sh) * sign,
        }
    }

    /// Nearest integer to the real part if the value is exactly that integer.
    pub fn as_exact_integer(&self) -> Option<i64> {
        if !self.im.is_zero() || !self.re.is_integer() {
            return None;
        }
        self.re.to_integer().and_then(|z| z.to_i64())
    }

    /// Decimal rendering with enough digits for the precision.
    pub fn to_string_digits(&self, digits: usize) -> String {
        let re = self.re.to_string_radix(10, Some(digits));
        let im_abs = Float::with_val(self.im.prec(), self.im.abs_ref());
        let im = im_abs.to_string_radix(10, Some(digits));
        let sign = if self.im.is_sign_negative() { '-' } else { '+' };
        format!("{re}{sign}{im}i")
    }

    pub fn default_digits(&self) -> usize {
        ((self.prec() as f64) * std::f64::consts::LOG10_2).ceil() as usize + 1
    }
}

/// Splits `x = n + f` with integer `n` and `|f| <= 1/2`, exactly.
fn reduce_half_period(x: &Float) -> (Integer, Float) {
    if !x.is_finite() {
        return (Integer::new(), x.clone());
    }
    let n = Float::with_val(x.prec().max(64), x.round_ref());
    let f = Float::with_val(x.prec().max(64) + 64, x - &n);
    (n.to_integer().unwrap_or_default(), f)
}

impl fmt::Debug for BigComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_digits(20))
    }
}

impl fmt::Display for BigComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_digits(self.default_digits()))
    }
}

impl<'a> Add<&'a BigComplex> for &'a BigComplex {
    type Output = BigComplex;
    fn add(self, o: &BigComplex) -> BigComplex {
        let p = self.prec().min(o.prec());
        BigComplex { re: Float::with_val(p, &self.re + &o.re), im: Float::with_val(p, &self.im + &o.im) }
    }
}

impl<'a> Sub<&'a BigComplex> for &'a BigComplex {
    type Output = BigComplex;
    fn sub(self, o: &BigComplex) -> BigComplex {
        let p = self.prec().min(o.prec());
        BigComplex { re: Float::with_val(p, &self.re - &o.re), im: Float::with_val(p, &self.im - &o.im) }
    }
}

impl<'a> Mul<&'a BigComplex> for &'a BigComplex {
    type Output = BigComplex;
    fn mul(self, o: &BigComplex) -> BigComplex {
        let p = self.prec().min(o.prec());
        if self.im.is_zero() && o.im.is_zero() {
            return BigComplex { re: Float::with_val(p, &self.re * &o.re), im: fl(p) };
        }
        let ac = Float::with_val(p + 2, &self.re * &o.re);
        let bd = Float::with_val(p + 2, &self.im * &o.im);
        let ad = Float::with_val(p + 2, &self.re * &o.im);
        let bc = Float::with_val(p + 2, &self.im * &o.re);
        BigComplex { re: Float::with_val(p, ac - bd), im: Float::with_val(p, ad + bc) }
    }
}

impl<'a> Div<&'a BigComplex> for &'a BigComplex {
    type Output = BigComplex;
    fn div(self, o: &BigComplex) -> BigComplex {
        if o.im.is_zero() {
            let p = self.prec().min(o.prec());
            return BigComplex { re: Float::with_val(p, &self.re / &o.re), im: Float::with_val(p, &self.im / &o.re) };
        }
        self * &o.recip()
    }
}

impl Neg for &BigComplex {
    type Output = BigComplex;
    fn neg(self) -> BigComplex {
        BigComplex { re: -self.re.clone(), im: -self.im.clone() }
    }
}

impl Neg for BigComplex {
    type Output = BigComplex;
    fn neg(self) -> BigComplex {
        BigComplex { re: -self.re, im: -self.im }
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr<BigComplex> for BigComplex {
            type Output = BigComplex;
            fn $m(self, o: BigComplex) -> BigComplex {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a BigComplex> for BigComplex {
            type Output = BigComplex;
            fn $m(self, o: &BigComplex) -> BigComplex {
                (&self).$m(o)
            }
        }
        impl<'a> $tr<BigComplex> for &'a BigComplex {
            type Output = BigComplex;
            fn $m(self, o: BigComplex) -> BigComplex {
                self.$m(&o)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);
owned_ops!(Div, div);

impl AddAssign<&BigComplex> for BigComplex {
    fn add_assign(&mut self, o: &BigComplex) {
        self.re += &o.re;
        self.im += &o.im;
    }
}

impl AddAssign<BigComplex> for BigComplex {
    fn add_assign(&mut self, o: BigComplex) {
        self.re += o.re;
        self.im += o.im;
    }
}

impl SubAssign<&BigComplex> for BigComplex {
    fn sub_assign(&mut self, o: &BigComplex) {
        self.re -= &o.re;
        self.im -= &o.im;
    }
}

impl MulAssign<&BigComplex> for BigComplex {
    fn mul_assign(&mut self, o: &BigComplex) {
        *self = &*self * o;
    }
}
