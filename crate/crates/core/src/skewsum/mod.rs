//! Sums of skew-coninvolutory matrices (`conj(K) K = -I`) for even sizes.

pub mod hblock;
pub mod jordan;
pub mod pairs;
pub mod params;
pub mod sum;

pub use hblock::skew_sum_hblock;
pub use jordan::{diag_skew_summands, skew_sum_jordan};
pub use pairs::{m_block, real_skew_pair, scalar_skew_pair, skew_diag_four};
pub use params::{choose_pair_params, pair_specs, PairSpec, SkewParams};
pub use sum::{order_jordan_blocks, skew_sum, skew_sum_diag_pair, skew_sum_seeded};
