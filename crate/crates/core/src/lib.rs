//! Exact-arithmetic machinery for the symplectic group Sp4 over rings of
//! algebraic integers: root-element calculus, Bruhat-cell rewriting of the
//! level-2 congruence subgroup into conjugates of `eps_phi(2x)` with
//! verifiable certificates, pseudo-goodness certificates for integer rings,
//! word-norm search in the finite groups Sp4(F_q), and the classifier for
//! normally generating subsets.

pub mod error;
pub mod normalgen;
pub mod report;
pub mod serial;
pub mod finite;
pub mod rings;
pub mod sp4;
pub mod weyl;
pub mod bruhat;
pub mod congruence;
pub mod sample;

pub use error::{Error, Result};
