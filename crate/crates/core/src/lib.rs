//! Cohomology of Specht modules in low degree.
//!
//! For a partition `λ` of `d` and a prime `p` this crate computes
//! `H⁰(Σ_d, Sp(λ))` and `dim Ext¹_{B}(SᵈE, K_λ)`, the latter being
//! `dim H¹(Σ_d, Sp(λ))` for odd `p` and a lower bound for `p = 2`.
//!
//! Two independent routes are provided:
//!
//! * [`classifier`] evaluates closed-form digit conditions on the parts.
//! * [`coherence`] builds the linear relations cutting out the space of
//!   coherent extension multi-sequences and row-reduces them over F_p.
//!
//! The second is slow but transparent and serves as the oracle for the first.
//!
//! Everything works on exact `u64` integers and F_p residues, so the crate is
//! not generic over a scalar type.

pub mod classifier;
pub mod coherence;
pub mod error;
pub mod padic;
pub mod partitions;

pub use classifier::{ext1_dim, h0_dim, Classification};
pub use coherence::{dim_e, ext1_dim_oracle, MultiSequence};
pub use error::{Error, Result};
pub use padic::Prime;
pub use partitions::{Partition, TwoPartClass};
