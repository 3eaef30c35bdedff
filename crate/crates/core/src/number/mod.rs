//! Exact rationals, cyclotomic fields and arbitrary-precision complex numbers.

pub mod complex;
pub mod cyclotomic;
pub mod rational;
pub mod scalar;

pub use complex::BigComplex;
pub use cyclotomic::{cyclotomic_polynomial, euler_phi, ExactValue, FieldContext};
pub use rational::{format_rational, parse_rational};
pub use rug::{Float, Integer, Rational};
pub use scalar::Scalar;
