//! Extended behavior `B̄ = U ∩ V`, behavior `B` and code `C` by exact algebra.

use std::collections::{HashMap, HashSet};

use super::model::{fresh_label, Realization};
use super::validate::validate;
use crate::algebra::{CodeSubgroup, Element, ProductSpace};
use crate::error::{Error, Result};

/// Coordinate layout of the extended configuration space `A × S × S'`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Layout {
    /// Symbols, then boundary states.
    pub external: Vec<String>,
    /// Internal states (tail copies), in declaration order.
    pub internal: Vec<String>,
    /// Labels of the head copies, parallel to `internal`.
    pub heads: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct BehaviorBundle {
    pub layout: Layout,
    /// Product of all constraint codes, each state end a separate coordinate.
    pub universe: CodeSubgroup,
    /// Validity space: externals free, `s' = φ(s)` on every edge.
    pub validity: CodeSubgroup,
    /// `B̄ = U ∩ V`.
    pub extended: CodeSubgroup,
    /// `B` over externals and internal states.
    pub behavior: CodeSubgroup,
    /// `C` over externals.
    pub code: CodeSubgroup,
}

pub(crate) fn extended_ambient(r: &Realization) -> Result<(ProductSpace, Layout)> {
    let external = r.external_labels();
    let internal = r.internal_states();
    let mut taken: HashSet<String> = r.all_labels();
    let mut heads = Vec::new();
    for s in &internal {
        let h = fresh_label(&format!("{s}'"), &taken);
        taken.insert(h.clone());
        heads.push(h);
    }
    let mut f = Vec::new();
    for l in &external {
        f.push((l.clone(), r.alphabet_of(l).ok_or_else(|| Error::UnknownVariable(l.clone()))?.clone()));
    }
    for s in &internal {
        f.push((s.clone(), r.states[s].alphabet.clone()));
    }
    for (s, h) in internal.iter().zip(&heads) {
        f.push((h.clone(), r.states[s].alphabet.clone()));
    }
    Ok((ProductSpace::new(f)?, Layout { external, internal, heads }))
}

/// Generators of the configuration universe `U` placed in the extended ambient.
pub(crate) fn universe(r: &Realization, amb: &ProductSpace, layout: &Layout) -> Result<CodeSubgroup> {
    let w = amb.width();
    let head_of: HashMap<&String, &String> = layout.internal.iter().zip(&layout.heads).collect();
    let mut rows: Vec<Element> = Vec::new();
    for (cid, c) in &r.constraints {
        let mut targets = Vec::new();
        for v in &c.vars {
            let label = match head_of.get(v) {
                Some(h) => {
                    let (tail, _) = r.edge_ends(v)?;
                    if &tail == cid {
                        v.clone()
                    } else {
                        (*h).clone()
                    }
                }
                None => v.clone(),
            };
            targets.push(amb.range(&label)?);
        }
        for g in c.code.generators() {
            let mut x = vec![0u64; w];
            let mut off = 0;
            for t in &targets {
                let len = t.len();
                x[t.clone()].copy_from_slice(&g[off..off + len]);
                off += len;
            }
            rows.push(x);
        }
    }
    CodeSubgroup::canonicalize(&rows, amb)
}

pub(crate) fn validity(r: &Realization, amb: &ProductSpace, layout: &Layout) -> Result<CodeSubgroup> {
    let w = amb.width();
    let mut rows: Vec<Element> = Vec::new();
    for l in &layout.external {
        for i in amb.range(l)? {
            let mut x = vec![0; w];
            x[i] = 1;
            rows.push(x);
        }
    }
    for (s, h) in layout.internal.iter().zip(&layout.heads) {
        let phi = r.iso(s)?;
        let tr = amb.range(s)?;
        let hr = amb.range(h)?;
        let d = tr.len();
        for k in 0..d {
            let e: Element = (0..d).map(|i| u64::from(i == k)).collect();
            let mut x = vec![0; w];
            x[tr.clone()].copy_from_slice(&e);
            x[hr.clone()].copy_from_slice(&phi.apply(&e));
            rows.push(x);
        }
    }
    CodeSubgroup::canonicalize(&rows, amb)
}

/// Computes `U`, `V`, `B̄`, `B` and `C` for a valid realization or fragment.
pub fn behavior_bundle(r: &Realization) -> Result<BehaviorBundle> {
    let report = validate(r);
    if !report.is_valid() {
        return Err(Error::ValidationFailed(report.to_string().trim().to_string()));
    }
    let (amb, layout) = extended_ambient(r)?;
    let universe = universe(r, &amb, &layout)?;
    let validity = validity(r, &amb, &layout)?;
    let extended = universe.intersect(&validity)?;
    let mut b_labels = layout.external.clone();
    b_labels.extend(layout.internal.iter().cloned());
    let behavior = extended.project(&b_labels)?;
    let code = extended.project(&layout.external)?;
    Ok(BehaviorBundle { layout, universe, validity, extended, behavior, code })
}

/// External behavior `C^F` over symbols × boundary states.
pub fn external_behavior(f: &Realization) -> Result<CodeSubgroup> {
    Ok(behavior_bundle(f)?.code)
}
