//! Exact computations with left-symmetric algebras built from linear
//! functions: construction, classification, invariants, property tests and
//! a generalized Burgers integrator.

pub mod algebra;
pub mod analysis;
pub mod burgers;
pub mod catalog;
pub mod construct;
pub mod error;
pub mod form;
pub mod io;
pub mod linalg;
pub mod poly;
pub mod sampling;
pub mod scalar;

pub use algebra::{Algebra, LieAlgebra};
pub use analysis::{is_r_matrix, lsa_from_r_matrix, property_report, PropertyReport};
pub use catalog::{are_isomorphic, generate, identify, match_catalog, CatalogId, IsoVerdict, Witness};
pub use construct::{
    algebra_from_extended, algebra_from_pair, classify_extended, CaseVerdict, ExtendedSpec, PairSpec,
};
pub use error::{Error, Result};
pub use form::{congruence_diagonalize, form_rank, LinearFunctional, SymBilinearForm};
pub use linalg::{CMatrix, Matrix, Vector};
pub use scalar::Scalar;
