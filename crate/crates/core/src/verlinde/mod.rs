//! Modular S-matrix and generalized Verlinde numbers of a torus knot.
//!
//! `d(g, n)` is computed two ways: from its sine-sum definition in the cyclotomic
//! field ([`TrigRoute`]) and by a rational dynamic program driven by the fusion
//! rules ([`RationalRoute`]). The checks in this module compare the two.

mod checks;
mod fusion;
mod index;
mod smatrix;
mod trig;

pub use checks::{
    check_dual_routes, check_fusion_rule_one, check_fusion_rule_two, check_genus_one,
    check_hessian, check_initial_values, check_s_matrix, classical_verlinde_check,
    integrality_report, integrality_report_with, observed_denominators, zagier_lemma_check,
    zagier_specialization_check, CheckOutcome, ClassicalVerlinde, DenominatorObservation,
    IntegralityReport, IntegralityRow,
};
pub use fusion::{
    d0_one, d0_two, d1_single, d_rational, fusion_matrix, fusion_tensor, FusionMatrix,
    FusionTensor, RationalRoute,
};
pub use index::MultiIndex;
pub use smatrix::{s_matrix, SMatrix};
pub use trig::{verlinde_knot_trig, verlinde_surface, TrigRoute};
