//! Coninvolutory decompositions: the two-part splits and sums of at most
//! five coninvolutory matrices.

pub mod decomposition;
pub mod pairs;
pub mod real2;
pub mod split;
pub mod sum;

pub use decomposition::{DecompKind, Decomposition, LogEntry, NONOPTIMAL_COUNT};
pub use real2::{classify_real_2x2, coninv_sum_2x2, Real2x2Class, Real2x2Kind};
pub use split::{real_split, RealSplit, SplitRoute};
pub use sum::{
    coninv_sum, coninv_sum_with, diagonal_four, pad_summands, thm1b_decompose, thm1d_form,
    SumOptions, Thm1b, Thm1d,
};
