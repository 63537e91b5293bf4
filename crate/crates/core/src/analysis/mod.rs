//! Trimness and properness, local reduction, canonical decomposition,
//! observability and controllability of realizations and fragments.

pub mod behavioral;
pub mod decomposition;
pub mod obsctrl;
pub mod reduce;
pub mod statetrim;
pub mod trim;

pub use behavioral::{behavioral_ctrl_obs, BehavioralReport};
pub use decomposition::{canonical_decomposition, CanonicalDecomposition, InterfaceNode};
pub use obsctrl::{controllability_test, obs_ctrl, ControllabilityReport, ObsCtrlReport};
pub use reduce::{far_fragment, local_reduce, reduce_sweep, ReductionStep};
pub use statetrim::{state_trim_status, StateTrimReport};
pub use trim::{
    constraint_reports, is_internally_proper, is_internally_trim, is_proper, is_trim, states_trim_proper,
    trim_proper, trim_proper_code, TrimProperReport,
};
