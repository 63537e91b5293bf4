//! Minimization of cycle-free realizations, the state space theorem at each
//! edge, and recovery of internal states by peeling leaf constraints.

use std::collections::{BTreeSet, HashMap};

use crate::algebra::{ftsp_decompose, Element};
use crate::analysis::{is_internally_proper, reduce_sweep, states_trim_proper, ReductionStep};
use crate::error::{Error, Result};
use crate::graphcore::cyclomatic_number;
use crate::realization::{behavior_bundle, validate, Realization};

#[derive(Clone, Debug)]
pub struct Minimized {
    pub realization: Realization,
    pub steps: Vec<ReductionStep>,
}

fn check_cycle_free(r: &Realization) -> Result<()> {
    let report = validate(r);
    if !report.is_valid() {
        return Err(Error::ValidationFailed(report.to_string().trim().to_string()));
    }
    if cyclomatic_number(r) > 0 {
        return Err(Error::NotCycleFree);
    }
    Ok(())
}

/// Local reductions until every constraint is trim and proper at each state
/// variable. Requires a connected cycle-free realization.
pub fn minimize_cycle_free(r: &Realization) -> Result<Minimized> {
    check_cycle_free(r)?;
    if !r.is_connected() {
        return Err(Error::Disconnected);
    }
    let (realization, steps) = reduce_sweep(r)?;
    Ok(Minimized { realization, steps })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateSpaceReport {
    pub edge: String,
    /// `|S_j|`.
    pub state_order: u128,
    /// External variables on the tail side of the edge.
    pub tail_symbols: Vec<String>,
    /// `|C|A^F / C:A^F|` on the tail side.
    pub tail_effective: u128,
    /// The same quotient on the head side.
    pub head_effective: u128,
    /// `C` is recovered from its two interface nodes and the quotient isomorphism.
    pub reconstructs: bool,
}

impl StateSpaceReport {
    pub fn holds(&self) -> bool {
        self.state_order == self.tail_effective && self.state_order == self.head_effective && self.reconstructs
    }
}

/// Compares `|S_j|` with the effective symbol spaces of both sides of the
/// cut at `edge`, computed from the full code.
pub fn verify_state_space_theorem(r: &Realization, edge: &str) -> Result<StateSpaceReport> {
    check_cycle_free(r)?;
    if !r.internal_states().iter().any(|s| s == edge) {
        return Err(Error::UnknownEdge(edge.to_string()));
    }
    if !states_trim_proper(r) {
        return Err(Error::NotTrimProper("state variables of the realization".into()));
    }
    let (tail, _) = r.edge_ends(edge)?;
    let comps = r.components_without(&BTreeSet::from([edge.to_string()]));
    let side = comps.iter().find(|g| g.contains(&tail)).expect("tail component");
    let code = behavior_bundle(r)?.code;
    let tail_symbols: Vec<String> =
        code.ambient().labels().into_iter().filter(|v| r.constraint_of(v).is_some_and(|c| side.contains(&c))).collect();
    let head_symbols: Vec<String> = code.ambient().complement(&tail_symbols);
    let quotient = |part: &[String]| -> Result<u128> {
        Ok(code.project(part)?.order() / code.cross_section(part)?.order())
    };
    let tail_effective = quotient(&tail_symbols)?;
    let head_effective = quotient(&head_symbols)?;
    let reconstructs = if tail_symbols.is_empty() || head_symbols.is_empty() {
        true
    } else {
        ftsp_decompose(&code, &tail_symbols)?.reassemble()? == code
    };
    Ok(StateSpaceReport {
        edge: edge.to_string(),
        state_order: r.states[edge].alphabet.order(),
        tail_symbols,
        tail_effective,
        head_effective,
        reconstructs,
    })
}

/// The internal state values (at their tail ends) of the unique valid
/// configuration with the given symbol and boundary values, found by
/// repeatedly solving a constraint with a single unknown state.
pub fn recover_internal_states(
    f: &Realization,
    symbols: &HashMap<String, Element>,
    boundary: &HashMap<String, Element>,
) -> Result<HashMap<String, Element>> {
    check_cycle_free(f)?;
    if !is_internally_proper(f) {
        return Err(Error::NotInternallyProper("every constraint must be proper at each variable".into()));
    }
    // values as seen at each constraint end, keyed by (constraint, variable)
    let mut local: HashMap<(String, String), Element> = HashMap::new();
    let mut tail_values: HashMap<String, Element> = HashMap::new();
    for (cid, c) in &f.constraints {
        for v in &c.vars {
            let given = if f.is_symbol(v) { symbols.get(v) } else if f.is_boundary(v) { boundary.get(v) } else { None };
            if let Some(x) = given {
                if !f.alphabet_of(v).unwrap().contains(x) {
                    return Err(Error::ElementOutOfRange(format!("value of `{v}`")));
                }
                local.insert((cid.clone(), v.clone()), x.clone());
            } else if f.is_symbol(v) || f.is_boundary(v) {
                return Err(Error::UnknownVariable(format!("no value given for `{v}`")));
            }
        }
    }
    let mut pending: Vec<String> = f.constraints.keys().cloned().collect();
    while !pending.is_empty() {
        let mut progressed = false;
        for cid in pending.clone() {
            let c = &f.constraints[&cid];
            let unknown: Vec<&String> = c.vars.iter().filter(|v| !local.contains_key(&(cid.clone(), (*v).clone()))).collect();
            if unknown.len() > 1 {
                continue;
            }
            let given: Vec<String> = c.vars.iter().filter(|v| !unknown.contains(v)).cloned().collect();
            let y: Element = given.iter().flat_map(|v| local[&(cid.clone(), v.clone())].clone()).collect();
            let rest = c.code.complete(&given, &y)?.ok_or(Error::NotInExternalBehavior)?;
            if let Some(s) = unknown.first() {
                let s = (*s).clone();
                let (t, h) = f.edge_ends(&s)?;
                let phi = f.iso(&s)?;
                let tail_value = if t == cid { rest.clone() } else { phi.inverse()?.apply(&rest) };
                local.insert((t.clone(), s.clone()), tail_value.clone());
                local.insert((h, s.clone()), phi.apply(&tail_value));
                tail_values.insert(s, tail_value);
            }
            pending.retain(|x| x != &cid);
            progressed = true;
        }
        if !progressed {
            return Err(Error::NotCycleFree);
        }
    }
    Ok(tail_values)
}
