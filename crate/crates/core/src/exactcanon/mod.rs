//! Exact canonical forms over the rationals and the involutory splits built
//! on them.

pub mod companion;
pub mod factor;
pub mod frobenius;
pub mod merge;
pub mod split;
pub mod thm1a;

pub use companion::{companion, poly_from_json, poly_to_json, poly_to_string};
pub use frobenius::{frobenius_form, FrobeniusForm};
pub use merge::merge_companions;
pub use split::{corollary_split, involutory_split_companion, InvolutorySplit};
pub use thm1a::{thm1a_decompose, Thm1a};
