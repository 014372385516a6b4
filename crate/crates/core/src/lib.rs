//! Exact computations with 2-dimensional pseudorepresentations of finite
//! groups over finite local rings: residual classification, Pink-Lie
//! filtrations, level detection and conjugate self-twists.

pub mod rep;
pub mod ring;
pub mod cst;
pub mod error;
pub mod residual;
pub mod pink;
pub mod io;
pub mod corpus;
pub mod oracle;
pub mod suite;
