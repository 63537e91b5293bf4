//! Cutting realizations into fragments and connecting fragments again.

use std::collections::{BTreeSet, HashSet};

use super::model::{fresh_label, Realization, StateVar};
use crate::algebra::Homomorphism;
use crate::error::{Error, Result};

/// The fragment induced by a set of constraints: symbols of those
/// constraints, states with both ends inside as internal edges, and states
/// with one end inside on the boundary (sorted by label).
pub fn induced(r: &Realization, constraints: &[String]) -> Result<Realization> {
    let mut f = Realization::new();
    for (a, alpha) in &r.symbols {
        if r.constraint_of(a).is_some_and(|c| constraints.contains(&c)) {
            f.symbols.insert(a.clone(), alpha.clone());
        }
    }
    let mut boundary = Vec::new();
    for (s, sv) in &r.states {
        let ends = r.ends(s);
        let inside = ends.iter().filter(|e| constraints.contains(&e.constraint)).count();
        if inside == 0 {
            continue;
        }
        if inside == ends.len() && !r.is_boundary(s) {
            f.states.insert(s.clone(), sv.clone());
        } else {
            f.states.insert(s.clone(), StateVar { alphabet: sv.alphabet.clone(), iso: None });
            boundary.push(s.clone());
        }
    }
    for (cid, c) in &r.constraints {
        if constraints.contains(cid) {
            f.constraints.insert(cid.clone(), c.clone());
        }
    }
    if constraints.iter().any(|c| !r.constraints.contains_key(c)) {
        return Err(Error::UnknownLabel("constraint".into()));
    }
    boundary.sort();
    f.boundary = Some(boundary);
    Ok(f)
}

/// Where the two halves of a cut edge ended up.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutEdge {
    pub edge: String,
    /// `(fragment index, boundary label)` of the tail half.
    pub tail: (usize, String),
    /// `(fragment index, boundary label)` of the head half.
    pub head: (usize, String),
    /// Edge map `head = φ(tail)` of the original edge.
    pub iso: Option<Homomorphism>,
}

#[derive(Clone, Debug)]
pub struct Cut {
    pub fragments: Vec<Realization>,
    pub edges: Vec<CutEdge>,
}

/// Cuts the given state edges. The tail half keeps the edge label and the
/// head half gets a fresh primed label, so fragment labels stay disjoint.
pub fn cut_with_record(r: &Realization, edges: &[String]) -> Result<Cut> {
    for e in edges {
        r.edge_ends(e)?;
    }
    let removed: BTreeSet<String> = edges.iter().cloned().collect();
    let comps = r.components_without(&removed);
    let comp_of = |c: &str| comps.iter().position(|g| g.iter().any(|x| x == c)).unwrap();
    let mut fragments = Vec::new();
    for g in &comps {
        fragments.push(induced(r, g)?);
    }
    let mut record = Vec::new();
    let mut sorted: Vec<String> = edges.to_vec();
    sorted.sort();
    sorted.dedup();
    for e in &sorted {
        let (tc, hc) = r.edge_ends(e)?;
        let (ti, hi) = (comp_of(&tc), comp_of(&hc));
        let taken: HashSet<String> =
            fragments.iter().flat_map(|f| f.all_labels()).chain(r.all_labels()).collect();
        let head_label = fresh_label(&format!("{e}'"), &taken);
        let alpha = r.states[e].alphabet.clone();
        if ti != hi {
            // the head fragment holds its half under the edge label; move it
            fragments[hi].states.shift_remove(e);
            if let Some(b) = fragments[hi].boundary.as_mut() {
                b.retain(|x| x != e);
            }
            if let Some(s) = fragments[ti].states.get_mut(e) {
                s.iso = None;
            }
        } else {
            let f = &mut fragments[ti];
            f.states.get_mut(e).unwrap().iso = None;
            let b = f.boundary.get_or_insert_with(Vec::new);
            if !b.contains(e) {
                b.push(e.clone());
            }
        }
        let f = &mut fragments[hi];
        f.states.insert(head_label.clone(), StateVar { alphabet: alpha, iso: None });
        let c = f.constraints.get_mut(&hc).unwrap();
        for v in c.vars.iter_mut() {
            if v == e {
                *v = head_label.clone();
            }
        }
        let amb = c.code.ambient().relabel(&c.vars)?;
        c.code = c.code.with_ambient(&amb)?;
        if let Some(b) = f.boundary.as_mut() {
            b.push(head_label.clone());
            b.sort();
        }
        record.push(CutEdge {
            edge: e.clone(),
            tail: (ti, e.clone()),
            head: (hi, head_label),
            iso: r.states[e].iso.clone(),
        });
    }
    Ok(Cut { fragments, edges: record })
}

pub fn cut(r: &Realization, edges: &[String]) -> Result<Vec<Realization>> {
    Ok(cut_with_record(r, edges)?.fragments)
}

/// Disjoint union of two fragments.
fn union(a: &Realization, b: &Realization) -> Result<Realization> {
    let mut out = a.clone();
    for l in b.all_labels() {
        if a.all_labels().contains(&l) {
            return Err(Error::DuplicateLabel(l));
        }
    }
    out.symbols.extend(b.symbols.iter().map(|(k, v)| (k.clone(), v.clone())));
    out.states.extend(b.states.iter().map(|(k, v)| (k.clone(), v.clone())));
    out.constraints.extend(b.constraints.iter().map(|(k, v)| (k.clone(), v.clone())));
    let mut bd = a.boundary_vars();
    bd.extend(b.boundary_vars());
    out.boundary = Some(bd);
    Ok(out)
}

/// Joins boundary variables pairwise: each `(s, t, φ)` identifies the
/// boundary state `t` with `s` through `t = φ(s)` (identity when `φ` is absent).
/// `second` is merged into `first` first when given.
pub fn connect(
    first: &Realization,
    second: Option<&Realization>,
    pairs: &[(String, String, Option<Homomorphism>)],
) -> Result<Realization> {
    let mut r = match second {
        Some(b) => union(first, b)?,
        None => first.clone(),
    };
    let mut boundary = r.boundary_vars();
    for (s, t, phi) in pairs {
        for v in [s, t] {
            if !boundary.contains(v) {
                return Err(Error::UnknownEdge(v.clone()));
            }
        }
        let (sa, ta) = (r.states[s].alphabet.clone(), r.states[t].alphabet.clone());
        let phi = match phi {
            Some(p) => {
                if p.source() != &sa || p.target() != &ta || !p.is_isomorphism() {
                    return Err(Error::AlphabetMismatch(format!("edge map for `{s}`–`{t}`")));
                }
                p.clone()
            }
            None => {
                if sa != ta {
                    return Err(Error::AlphabetMismatch(format!("`{s}` and `{t}` have different alphabets")));
                }
                Homomorphism::identity(&sa)
            }
        };
        // orientation: tail is the first-listed constraint
        let cs = r.constraint_of(s).unwrap();
        let ct = r.constraint_of(t).unwrap();
        if cs == ct {
            return Err(Error::ValidationFailed(format!("joining `{s}` and `{t}` would create a self-loop")));
        }
        let is_first = r.constraints.get_index_of(&cs).unwrap() < r.constraints.get_index_of(&ct).unwrap();
        let map = if is_first { phi } else { phi.inverse()? };
        for c in r.constraints.values_mut() {
            if c.vars.contains(t) {
                for v in c.vars.iter_mut() {
                    if v == t {
                        *v = s.clone();
                    }
                }
                let amb = c.code.ambient().relabel(&c.vars)?;
                c.code = c.code.with_ambient(&amb)?;
            }
        }
        r.states.shift_remove(t);
        let iso = if map.is_identity() { None } else { Some(map) };
        r.states.get_mut(s).unwrap().iso = iso;
        boundary.retain(|v| v != s && v != t);
    }
    boundary.sort();
    r.boundary = if boundary.is_empty() { None } else { Some(boundary) };
    Ok(r)
}
