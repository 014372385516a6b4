//! Pink's Lie algebras of pro-p subgroups of `SL_2`, congruence subgroups,
//! subrings generated by traces and ideals, and the structure checks built
//! on them.

mod bellaiche;
mod congruence;
mod filtration;
mod jsmall;
mod lie;
mod subring;

pub use bellaiche::{bellaiche_structure_check, graded_check, image_radical, Adaptation, BellaicheReport, ClauseResult};
pub use congruence::{
    congruence_elements, congruence_elements_capped, congruence_subgroup, diagonal_conjugators, level_detector,
    LevelReport,
};
pub use filtration::{
    in_sr1, lower_central_term, max_ideal_span, pink_filtration, pink_filtration_in, pink_group_h, sr1_part, Radical,
};
pub use jsmall::{j_smallness, JSmallness};
pub use lie::{bracket, decompose_lie, multiplier_ring, theta, Decomposability, LieDecomposition, LieSubmodule};
pub use subring::{
    extend_scalars, generated_subring, module_span, span_product, span_to_json, witt_subfield_basis, Base, Subring,
    IDEAL_CAP,
};
