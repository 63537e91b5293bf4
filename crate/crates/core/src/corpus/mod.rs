//! Example realizations, seeded random realizations and an exhaustive
//! configuration enumerator used as an independent reference.

pub mod builders;
pub mod oracle;
pub mod random;

pub use oracle::ExhaustiveModel;
pub use random::{random_realization, RandomSpec, Topology};
