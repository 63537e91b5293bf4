//! Local reduction of state alphabets and the reduction sweep.

use std::collections::{BTreeSet, VecDeque};

use crate::algebra::{Alphabet, CodeSubgroup, Element, ProductSpace, QuotientMap};
use crate::error::{Error, Result};
use crate::realization::{external_behavior, induced, Realization};

/// Constraints reachable from `start` without passing through `removed`.
fn reachable_without(r: &Realization, start: &str, removed: &str) -> Vec<String> {
    let mut seen: BTreeSet<String> = BTreeSet::from([start.to_string()]);
    let mut queue = VecDeque::from([start.to_string()]);
    while let Some(c) = queue.pop_front() {
        for v in &r.constraints[&c].vars {
            if !r.is_state(v) || r.is_boundary(v) {
                continue;
            }
            for e in r.ends(v) {
                if e.constraint != removed && seen.insert(e.constraint.clone()) {
                    queue.push_back(e.constraint);
                }
            }
        }
    }
    r.constraints.keys().filter(|c| seen.contains(*c)).cloned().collect()
}

/// The fragment on the far side of `near`: the component containing `far`
/// once the vertex `near` is removed.
pub fn far_fragment(r: &Realization, near: &str, far: &str) -> Result<Realization> {
    induced(r, &reachable_without(r, far, near))
}

/// Restricts factor `label` of `code` to `keep` and maps it through `f`
/// into `alphabet`; `f` must be a homomorphism on `keep`.
pub(crate) fn replace_coordinate(
    code: &CodeSubgroup,
    label: &str,
    keep: &CodeSubgroup,
    alphabet: &Alphabet,
    f: impl Fn(&[u64]) -> Result<Element>,
) -> Result<CodeSubgroup> {
    let amb = code.ambient();
    let range = amb.range(label)?;
    let w = amb.width();
    let mut rows: Vec<Element> = Vec::new();
    for col in (0..w).filter(|c| !range.contains(c)) {
        let mut x = vec![0u64; w];
        x[col] = 1;
        rows.push(x);
    }
    for g in keep.generators() {
        let mut x = vec![0u64; w];
        x[range.clone()].copy_from_slice(g);
        rows.push(x);
    }
    let restricted = code.intersect(&CodeSubgroup::canonicalize(&rows, amb)?)?;
    let factors: Vec<(String, Alphabet)> = amb
        .factors()
        .iter()
        .map(|(l, a)| (l.clone(), if l == label { alphabet.clone() } else { a.clone() }))
        .collect();
    let target = ProductSpace::new(factors)?;
    let mut out = Vec::new();
    for g in restricted.generators() {
        let mut x = g[..range.start].to_vec();
        x.extend(f(&g[range.clone()])?);
        x.extend(&g[range.end..]);
        out.push(x);
    }
    CodeSubgroup::canonicalize(&out, &target)
}

/// One applied reduction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionStep {
    pub edge: String,
    /// The constraint kept on the near side; the fragment beyond it was examined.
    pub near: String,
    pub before: u128,
    pub after: u128,
}

fn try_reduce(r: &Realization, near: &str, edge: &str) -> Result<Option<Realization>> {
    let (tail, head) = r.edge_ends(edge).map_err(|_| Error::NotAStateEdge(edge.to_string()))?;
    if near != tail && near != head {
        return Err(Error::NotAStateEdge(format!("`{edge}` is not incident on `{near}`")));
    }
    let far = if near == tail { head.clone() } else { tail.clone() };
    let frag = far_fragment(r, near, &far)?;
    let c = external_behavior(&frag)?;
    let part = vec![edge.to_string()];
    let t = c.project(&part)?;
    let k = c.cross_section(&part)?;
    if t.is_full() && k.is_trivial() {
        return Ok(None);
    }
    let q = QuotientMap::new(&t, &k)?;
    let alphabet = q.target().clone();
    let phi = r.iso(edge)?;
    // translation of near-side values to far-side values
    let (to_far, from_far) = if near == tail { (phi.clone(), phi.inverse()?) } else { (phi.inverse()?, phi) };
    let keep_near = t.map_rows(t.ambient(), |x| from_far.apply(x))?;
    let mut out = r.clone();
    {
        let cf = out.constraints.get_mut(&far).unwrap();
        cf.code = replace_coordinate(&cf.code, edge, &t, &alphabet, |x| q.project(x))?;
    }
    {
        let cn = out.constraints.get_mut(near).unwrap();
        cn.code = replace_coordinate(&cn.code, edge, &keep_near, &alphabet, |x| q.project(&to_far.apply(x)))?;
    }
    let s = out.states.get_mut(edge).unwrap();
    s.alphabet = alphabet;
    s.iso = None;
    Ok(Some(out))
}

/// Replaces the state alphabet of `edge` by `T/K`, where `T` and `K` are the
/// projection and cross-section at `edge` of the external behavior of the
/// fragment beyond `near`. Returns `r` unchanged when that behavior is
/// already trim and proper there.
pub fn local_reduce(r: &Realization, near: &str, edge: &str) -> Result<Realization> {
    Ok(try_reduce(r, near, edge)?.unwrap_or_else(|| r.clone()))
}

/// Applies local reductions in both directions on every internal edge, in
/// label order, until a full pass changes nothing.
pub fn reduce_sweep(r: &Realization) -> Result<(Realization, Vec<ReductionStep>)> {
    let mut cur = r.clone();
    let mut steps = Vec::new();
    loop {
        let mut changed = false;
        let mut edges = cur.internal_states();
        edges.sort();
        for e in edges {
            let (t, h) = cur.edge_ends(&e)?;
            for near in [t, h] {
                let before = cur.states[&e].alphabet.order();
                if let Some(next) = try_reduce(&cur, &near, &e)? {
                    let after = next.states[&e].alphabet.order();
                    steps.push(ReductionStep { edge: e.clone(), near: near.clone(), before, after });
                    cur = next;
                    changed = true;
                }
            }
        }
        if !changed {
            return Ok((cur, steps));
        }
    }
}
