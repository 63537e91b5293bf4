//! Exact subgroup calculus over finite abelian alphabets.

pub mod alphabet;
pub mod ftsp;
pub mod hom;
pub mod quotient;
pub mod subgroup;
pub mod zmod;

pub use alphabet::{Alphabet, Element, ProductSpace};
pub use ftsp::{ftsp_decompose, ftsp_orders, FtspDecomposition};
pub use hom::Homomorphism;
pub use quotient::QuotientMap;
pub use subgroup::{CodeSubgroup, Elements, DEFAULT_ENUMERATION_CAP};
