//! Multi-indices, sparse polynomials, coefficient expansions and parameter sets.

pub mod expand;
pub mod params;
pub mod sparse;

pub use expand::{
    c_from_tilde, decrisenoy_eval, expand_linear_tilde, expand_power_tilde, shift_to_all_positive, tilde_from_c,
};
pub use params::{Mode, ParameterSet, RootOfUnity, Twist};
pub use sparse::{MultiIndex, SparsePoly};
