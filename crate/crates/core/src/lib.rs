//! Normal graph realizations of linear and group codes.
//!
//! The crate covers exact subgroup algebra over finite abelian alphabets,
//! realization data structures, duality, trim/proper analysis and local
//! reduction, observability and controllability of fragments, 2-cores,
//! cycle-free minimization and sum-product decoding.

pub mod algebra;
pub mod analysis;
pub mod corpus;
pub mod decode;
pub mod duality;
pub mod error;
pub mod format;
pub mod graphcore;
pub mod minimize;
pub mod realization;

pub use error::{Error, Result};
