//! Internal, external and total observability and controllability.

use crate::algebra::{CodeSubgroup, ProductSpace};
use crate::error::Result;
use crate::realization::{behavior_bundle, BehaviorBundle, Realization};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObsCtrlReport {
    /// `S^ext,u = C^F : S^ext`.
    pub external_unobservable: CodeSubgroup,
    /// `S^int,u = B^F : S^int`.
    pub internal_unobservable: CodeSubgroup,
    /// `S^tot,u = B^F : (S^ext × S^int)`.
    pub total_unobservable: CodeSubgroup,
    /// `S^int,c`, the image of the universe under `(s, s') ↦ s − φ⁻¹(s')`,
    /// in tail coordinates.
    pub internal_controllable: CodeSubgroup,
    pub externally_observable: bool,
    pub internally_observable: bool,
    pub totally_observable: bool,
    pub internally_controllable: bool,
    /// `C^F | S^ext = S^ext`.
    pub externally_controllable: bool,
    /// `U⊥ ∩ V⊥ = {0}`.
    pub checks_independent: bool,
    pub universe_order: u128,
    pub extended_order: u128,
    pub state_order: u128,
}

/// The controllable subspace `{s − φ⁻¹(s') : (…, s, s') ∈ U}`.
pub(crate) fn controllable_states(r: &Realization, b: &BehaviorBundle) -> Result<CodeSubgroup> {
    let target = r.ambient_of(&b.layout.internal)?;
    let amb = b.universe.ambient();
    let mut maps = Vec::new();
    for (s, h) in b.layout.internal.iter().zip(&b.layout.heads) {
        maps.push((amb.range(s)?, amb.range(h)?, r.iso(s)?.inverse()?, r.states[s].alphabet.clone()));
    }
    b.universe.map_rows(&target, |x| {
        maps.iter()
            .flat_map(|(tr, hr, inv, a)| a.add(&x[tr.clone()], &a.neg(&inv.apply(&x[hr.clone()]))))
            .collect()
    })
}

fn internal_space(r: &Realization, b: &BehaviorBundle) -> Result<ProductSpace> {
    r.ambient_of(&b.layout.internal)
}

/// Observability and controllability spaces of a fragment or realization.
pub fn obs_ctrl(f: &Realization) -> Result<ObsCtrlReport> {
    let b = behavior_bundle(f)?;
    let boundary = f.boundary_vars();
    let internal = b.layout.internal.clone();
    let mut states = boundary.clone();
    states.extend(internal.iter().cloned());
    let external_unobservable = b.code.cross_section(&boundary)?;
    let internal_unobservable = b.behavior.cross_section(&internal)?;
    let total_unobservable = b.behavior.cross_section(&states)?;
    let internal_controllable = controllable_states(f, &b)?;
    let checks_independent = b.universe.orthogonal().intersect(&b.validity.orthogonal())?.is_trivial();
    let state_order = internal_space(f, &b)?.order();
    Ok(ObsCtrlReport {
        externally_observable: external_unobservable.is_trivial(),
        internally_observable: internal_unobservable.is_trivial(),
        totally_observable: total_unobservable.is_trivial(),
        internally_controllable: internal_controllable.is_full(),
        externally_controllable: b.code.project(&boundary)?.is_full(),
        checks_independent,
        universe_order: b.universe.order(),
        extended_order: b.extended.order(),
        state_order,
        external_unobservable,
        internal_unobservable,
        total_unobservable,
        internal_controllable,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ControllabilityReport {
    /// `|U|`.
    pub universe: u128,
    /// `|B̄|`.
    pub extended: u128,
    /// `|S|` over internal states.
    pub states: u128,
    /// `|S^c|`.
    pub controllable_states: u128,
    pub controllable: bool,
    /// The four magnitudes as dimensions when every alphabet is over one field.
    pub dims: Option<[u32; 4]>,
    /// `|U| / |B̄| = |S^c|` held.
    pub identity_holds: bool,
}

/// Counting test `|U| / |B̄| = |S^c| ≤ |S|`, with equality iff controllable.
pub fn controllability_test(r: &Realization) -> Result<ControllabilityReport> {
    let b = behavior_bundle(r)?;
    let sc = controllable_states(r, &b)?;
    let space = internal_space(r, &b)?;
    let (u, e, s, c) = (b.universe.order(), b.extended.order(), space.order(), sc.order());
    let dims = b.universe.ambient().common_field().and_then(|p| {
        let d = |o: u128| {
            let mut o = o;
            let mut k = 0u32;
            while o > 1 {
                if !o.is_multiple_of(p as u128) {
                    return None;
                }
                o /= p as u128;
                k += 1;
            }
            Some(k)
        };
        Some([d(u)?, d(e)?, d(s)?, d(c)?])
    });
    Ok(ControllabilityReport {
        universe: u,
        extended: e,
        states: s,
        controllable_states: c,
        controllable: c == s,
        dims,
        identity_holds: u % e == 0 && u / e == c && c <= s,
    })
}
