//! Bernoulli and Stirling tables, and Riemann, Hurwitz, Lerch and power
//! Hurwitz values at non-positive integers.

pub mod tables;
pub mod values;

pub use tables::{bernoulli, stirling2};
pub use values::{bernoulli_poly, hurwitz_neg, lerch_neg, power_hurwitz_neg, riemann_neg};
