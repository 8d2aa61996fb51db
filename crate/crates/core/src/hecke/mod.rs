//! Finite-dimensional modules of the degenerate affine Hecke algebra as
//! explicit rational matrices.

pub mod decompose;
pub mod module;
pub mod segment;
pub mod standard;

pub use decompose::{
    central_character, composition_factors, hom_space, is_irreducible, iso_test, simple_quotient, trace_form_head,
    weight_multiset,
};
pub use module::{FinModule, RelationFailure};
pub use segment::{Segment, SegmentSequence};
pub use standard::{induce_standard, minimal_coset_reps, one_dim_rep};
