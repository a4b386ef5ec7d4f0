pub mod certify;
pub mod cli;
pub mod concanon;
pub mod conisum;
pub mod error;
pub mod exactcanon;
pub mod gen;
pub mod matcore;
pub mod skewsum;

pub use error::{Error, Result};
