//! Numerical laboratory for multiplication operators by finite Blaschke
//! products on the weighted Dirichlet-type spaces `D_α`.
//!
//! Every analytic function is modelled by its truncated Taylor coefficient
//! vector ([`ComplexSeries`]). On top of that the crate provides:
//!
//! - finite Blaschke products and the multiplication operators they induce
//!   ([`blaschke`]);
//! - the model space `K_B = H² ⊖ B·H²` with an orthonormal rational basis
//!   ([`model_space`]);
//! - the B-adic expansion `f = Σ h_k B^k`, `h_k ∈ K_B`, and the equivalent
//!   norm built from it ([`badic`]);
//! - the Shimorin-type weight and operator inequalities ([`shimorin`]);
//! - truncated invariant subspaces and their wandering defects ([`subspace`]).
//!
//! The crate is `no_std` and only needs `alloc`. File formats, the command
//! line front end and parallel grid scans live in the `wsp-lab` crate.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod badic;
pub mod blaschke;
pub mod linalg;
pub mod model_space;
pub mod random;
pub mod series;
pub mod shimorin;
pub mod subspace;
pub mod tolerances;
pub mod weights;

pub use num_complex::Complex64;

pub use badic::{
    b_adic_decompose, b_adic_decompose_with, b_adic_gram, b_adic_inner_product, b_adic_reconstruct, b_norm,
    b_norm_of, default_depth, layer_inner_product, norm_equivalence_estimate, BAdicCoefficients, BAdicError,
    BAdicGram, BNorm, NormEquivalence,
};
pub use blaschke::{BlaschkeError, BlaschkeProduct};
pub use linalg::CMatrix;
pub use model_space::{project_kb, tm_basis, ModelSpaceBasis};
pub use series::{
    series_add, series_div, series_div_with, series_mul, series_sub, weighted_inner_product, ComplexSeries,
    SeriesError,
};
pub use shimorin::{
    alpha_threshold_monomial, concavity_criterion, improved_z2_weights, omega0_window, secozk_weights,
    shimorin_operator_check, shimorin_operator_check_dense, shimorin_weight_criterion, z2_improved_threshold,
    Condition, CriterionReport, OperatorCheck, ShimorinError, TailCertificate, Violation,
};
pub use subspace::{
    corollary_check, even_odd_split, interleave, span_invariant, span_invariant_with, subspace_gap,
    wandering_part, wsp_defect, InnerProduct, InnerProductSpec, SubspaceBasis, SubspaceError, WspDefect,
};
pub use tolerances::Tolerances;
pub use weights::{WeightError, WeightSequence};
