//! Canonical form under consimilarity `A -> conj(S)^-1 A S`.

pub mod block;
pub mod form;
pub mod real;
pub mod solve;

pub use block::{build_block, build_blocks, jordan, real_jordan_pair, skew_base, ConCanonicalBlock};
pub use form::{concanonical_form, concanonical_form_seeded, same_blocks, ConCanonicalForm};
pub use real::{coninvolutory_factor, consimilar_to_real, real_block, RealForm};
pub use solve::{solve_consimilarity, solve_consimilarity_seeded, DEFAULT_SEED};
