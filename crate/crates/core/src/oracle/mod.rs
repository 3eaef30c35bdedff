//! Independent numerical evaluation by analytic continuation.

pub mod gamma;
pub mod hurwitz;
pub mod kernel;
pub mod limit;
pub mod mb;
pub mod family;
pub mod check;
pub mod dirichlet;
pub mod powerzeta;
pub mod quad;
pub mod series;
