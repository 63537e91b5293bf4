//! Normal realizations, fragments, cutting and connecting, behaviors.

pub mod behavior;
pub mod cut;
pub mod model;
pub mod normalize;
pub mod validate;

pub use behavior::{behavior_bundle, external_behavior, BehaviorBundle, Layout};
pub use cut::{connect, cut, cut_with_record, induced, Cut, CutEdge};
pub use model::{fresh_label, Constraint, End, Realization, StateVar};
pub use normalize::normalize;
pub use validate::{validate, ValidationReport, Violation};
