//! Dual realizations and computational checks of `C° = C⊥`.
//!
//! Every alphabet is identified with its character group, so the dual of a
//! realization lives on the same labels. An edge with `head = φ(tail)`
//! becomes an edge with `head = −(φ̂)⁻¹(tail)`; for an unlabelled edge this is
//! a plain sign inverter, which vanishes in exponent 2.

use crate::algebra::{CodeSubgroup, Homomorphism};
use crate::error::{Error, Result};
use crate::realization::behavior::{extended_ambient, universe, validity};
use crate::realization::{behavior_bundle, validate, Realization};

/// Dual edge map `−(φ̂)⁻¹`.
pub fn dual_edge_map(phi: &Homomorphism) -> Result<Homomorphism> {
    let a = phi.source();
    Homomorphism::negation(a).compose(&phi.adjoint().inverse()?)
}

/// The dual realization (or fragment): orthogonal constraint codes and dual
/// edge maps, same topology and labels.
pub fn dualize(r: &Realization) -> Result<Realization> {
    let report = validate(r);
    if !report.is_valid() {
        return Err(Error::ValidationFailed(report.to_string().trim().to_string()));
    }
    let mut d = r.clone();
    for c in d.constraints.values_mut() {
        c.code = c.code.orthogonal();
    }
    for s in r.internal_states() {
        let psi = dual_edge_map(&r.iso(&s)?)?;
        d.states.get_mut(&s).unwrap().iso = if psi.is_identity() { None } else { Some(psi) };
    }
    Ok(d)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualityReport {
    /// `|C|`.
    pub code_order: u128,
    /// `|C⊥|`.
    pub dual_order: u128,
    /// `C°` computed from the dual realization equals `C⊥`.
    pub direct: bool,
    /// `(U⊥ + V⊥):Â` equals `C⊥`.
    pub check_space: bool,
}

impl DualityReport {
    pub fn passed(&self) -> bool {
        self.direct && self.check_space
    }
}

/// The code `(U⊥ + V⊥):Â` realized through the check space of `r`.
pub fn check_space_code(r: &Realization) -> Result<CodeSubgroup> {
    let (amb, layout) = extended_ambient(r)?;
    let u = universe(r, &amb, &layout)?;
    let v = validity(r, &amb, &layout)?;
    u.orthogonal().sum(&v.orthogonal())?.cross_section(&layout.external)
}

/// Compares `C°` against `C⊥` by both routes.
pub fn verify_duality(r: &Realization) -> Result<DualityReport> {
    let code = behavior_bundle(r)?.code;
    let perp = code.orthogonal();
    let dual = behavior_bundle(&dualize(r)?)?.code;
    let checks = check_space_code(r)?;
    Ok(DualityReport {
        code_order: code.order(),
        dual_order: perp.order(),
        direct: dual == perp,
        check_space: checks == perp,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FragmentDualityReport {
    pub order: u128,
    pub dual_order: u128,
    pub passed: bool,
}

/// Checks that the dual fragment realizes `(C^F)⊥`.
pub fn dual_fragment_check(f: &Realization) -> Result<FragmentDualityReport> {
    let c = behavior_bundle(f)?.code;
    let d = behavior_bundle(&dualize(f)?)?.code;
    let perp = c.orthogonal();
    Ok(FragmentDualityReport { order: c.order(), dual_order: d.order(), passed: d == perp })
}
