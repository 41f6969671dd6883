//! Orthoscalar systems of subspaces.
//!
//! Finite systems `L = (V; V1, ..., Vn)` of subspaces of a complex space,
//! inner products under which `Σ a_i P_i = a_0 I` holds for the orthogonal
//! projections, and the Coxeter-functor and explicit constructions that
//! produce them for brick quadruples.

pub mod coxeter;
pub mod error;
pub mod knr;
pub mod numerics;
pub mod roots;
pub mod systems;
pub mod unitarize;
pub mod weights;

pub use coxeter::{
    apply_functor_word, apply_word, c_bullet, c_circle, closed_form_iterate, functor_bullet, functor_circle,
    functor_minus, functor_plus, ClosedForm, CoxeterWord, Letter, UnitarizedSystem,
};
pub use error::{Error, Result};
pub use knr::{degenerate_gram, knr_ellipse, knr_mu, knr_projections, knr_solve, KnrEllipse, KnrParameters};
pub use numerics::{c64, ComplexMatrix, ComplexVector, GramMatrix, ToleranceConfig, C64};
pub use roots::{
    classify_root, continuous_parameter, continuous_system, def_form, degenerate_system, discrete_dimension,
    recognize_discrete, tits_form, ContinuousParameter, DiscreteFamily, FamilyKind, RootClass, RootTag,
};
pub use systems::{
    dimension_vector, direct_sum, extend_system, find_isomorphism, hom_space, is_brick, is_indecomposable,
    operator_quintuple, Extension, Indecomposability, SubspaceSystem,
};
pub use unitarize::{
    admissible_continuous, admissible_discrete, admissible_small, canonical_character, unitarize_lines,
    unitarize_quadruple, verify_orthoscalar, AdmissibilityVerdict, OrthoscalarCertificate, SmallShape,
};
pub use weights::{Weight, WeightVector, FLOAT_EQ_TOL};
