//! Conjugate self-twists of pseudorepresentations over finite local rings.

mod plus_minus;
mod reduce;
mod twist;

pub use plus_minus::{dihedral_adapted_element, plus_minus_verify, PlusMinusVerdict};
pub use reduce::{fixed_subring, reduce_twists, ReducedTwists};
pub use twist::{compose_twists, twist_group, twist_group_with, TwistGroup, TwistPair, TwistSearch};
