//! Trim and proper tests on external behaviors and constraint codes.

use crate::algebra::CodeSubgroup;
use crate::error::{Error, Result};
use crate::realization::{external_behavior, Realization};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrimProperReport {
    pub variable: String,
    pub trim: bool,
    pub proper: bool,
    /// `Ā_V = C|V`.
    pub trimmed: CodeSubgroup,
    /// `A̲_V = C:V`.
    pub nondynamical: CodeSubgroup,
    /// `|Ā_V / A̲_V|`.
    pub effective_order: u128,
}

/// Trim/proper status of `code` at its factor `var`.
pub fn trim_proper_code(code: &CodeSubgroup, var: &str) -> Result<TrimProperReport> {
    if !code.ambient().has(var) {
        return Err(Error::UnknownVariable(var.to_string()));
    }
    let part = vec![var.to_string()];
    let trimmed = code.project(&part)?;
    let nondynamical = code.cross_section(&part)?;
    Ok(TrimProperReport {
        variable: var.to_string(),
        trim: trimmed.is_full(),
        proper: nondynamical.is_trivial(),
        effective_order: trimmed.order() / nondynamical.order(),
        trimmed,
        nondynamical,
    })
}

/// Trim/proper status of the external behavior of `f` at an external variable.
pub fn trim_proper(f: &Realization, var: &str) -> Result<TrimProperReport> {
    trim_proper_code(&external_behavior(f)?, var)
}

fn all_external(f: &Realization) -> Result<Vec<TrimProperReport>> {
    let c = external_behavior(f)?;
    c.ambient().labels().iter().map(|l| trim_proper_code(&c, l)).collect()
}

/// Trim at every external variable.
pub fn is_trim(f: &Realization) -> Result<bool> {
    Ok(all_external(f)?.iter().all(|r| r.trim))
}

/// Proper at every external variable.
pub fn is_proper(f: &Realization) -> Result<bool> {
    Ok(all_external(f)?.iter().all(|r| r.proper))
}

/// Reports for a constraint code at each of its variables.
pub fn constraint_reports(r: &Realization, cid: &str) -> Result<Vec<TrimProperReport>> {
    let c = r.constraints.get(cid).ok_or_else(|| Error::UnknownLabel(cid.to_string()))?;
    c.vars.iter().map(|v| trim_proper_code(&c.code, v)).collect()
}

/// Every constraint code is trim at all of its variables.
pub fn is_internally_trim(r: &Realization) -> bool {
    r.constraints.values().all(|c| c.vars.iter().all(|v| trim_proper_code(&c.code, v).unwrap().trim))
}

/// Every constraint code is proper at all of its variables.
pub fn is_internally_proper(r: &Realization) -> bool {
    r.constraints.values().all(|c| c.vars.iter().all(|v| trim_proper_code(&c.code, v).unwrap().proper))
}

/// Every constraint code is trim and proper at each of its state variables.
pub fn states_trim_proper(r: &Realization) -> bool {
    r.constraints.values().all(|c| {
        c.vars.iter().filter(|v| r.is_state(v)).all(|v| {
            let t = trim_proper_code(&c.code, v).unwrap();
            t.trim && t.proper
        })
    })
}
