//! Finite matrix groups, characters, pseudorepresentations and the
//! constructions built from them (twisting, induction, adjoint).

mod adjoint;
mod character;
mod group;
mod induce;
mod mat;
mod matrep;
mod pseudo;
mod twist_recovery;

pub use adjoint::{ad0, ad0_matrix};
pub use character::{characters, two_power_determinant_twist, Abelianization, Character};
pub use group::{GroupTable, GROUP_CAP};
pub use induce::{induce_index2, Index2Subgroup};
pub use mat::{Mat2, Mat3};
pub use matrep::MatrixRep;
pub use pseudo::{classify_pseudorep, PseudoClass, PseudoRep, Verdict};
pub use twist_recovery::{common_eigenline_count, is_semisimple, recover_twist, TwistRecovery};

use thiserror::Error;

use crate::ring::RingError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RepError {
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error("matrix {0} is not invertible")]
    NotInvertible(String),
    #[error("{what} exceeds cap {cap}")]
    CapExceeded { what: &'static str, cap: u64 },
    #[error("not a group: {0}")]
    NotAGroup(String),
    #[error("generator images do not define a homomorphism: {0}")]
    NotHomomorphism(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
}
