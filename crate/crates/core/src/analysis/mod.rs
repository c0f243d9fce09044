//! Property detectors and classical r-matrices.

mod properties;
mod rmatrix;

pub use properties::{
    burnside_dimension, generated_ideal_dim, h_invariance, identity_flags, is_bisymmetric, is_interior_derivation,
    is_novikov, is_simple, is_transitive, property_report, right_mult_self_adjoint, HInvariance, PropertyReport,
    Transitivity, TransitivityMode, EXACT_TRANSITIVITY_MAX_DIM,
};
pub use rmatrix::{is_r_matrix, lsa_from_r_matrix, scaled_projection};
