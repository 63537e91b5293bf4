//! Behavioral controllability and observability with respect to two
//! disjoint fragments, by definition and through the remainder fragment.

use std::collections::BTreeSet;

use crate::algebra::{CodeSubgroup, Homomorphism};
use crate::duality::dualize;
use crate::error::{Error, Result};
use crate::realization::{behavior_bundle, external_behavior, induced, Realization};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BehavioralReport {
    /// `C|A^F×A^F' = C|A^F × C|A^F'`.
    pub controllable: bool,
    /// `C:A^F×A^F' = C:A^F × C:A^F'`.
    pub observable: bool,
    /// `(C^F'')|S̄F×S̄F' = S̄F × S̄F'`.
    pub remainder_controllable: bool,
    /// The same condition evaluated on the dual realization.
    pub remainder_observable: bool,
    /// `B|S^F = S̄F`, `B|S^F' = S̄F'` and `S̲F = S̲F' = {0}`.
    pub controllability_hypotheses: bool,
    /// The controllability hypotheses on the dual realization.
    pub observability_hypotheses: bool,
}

impl BehavioralReport {
    /// Both routes agree wherever their hypotheses hold.
    pub fn consistent(&self) -> bool {
        (!self.controllability_hypotheses || self.controllable == self.remainder_controllable)
            && (!self.observability_hypotheses || self.observable == self.remainder_observable)
    }
}

/// Re-expresses a code over boundary labels held by the constraint set
/// `side` in tail coordinates of the original edges.
fn to_tail(r: &Realization, side: &[String], code: &CodeSubgroup) -> Result<CodeSubgroup> {
    let amb = code.ambient().clone();
    let mut maps: Vec<(std::ops::Range<usize>, Homomorphism)> = Vec::new();
    for l in amb.labels() {
        let (tail, _) = r.edge_ends(&l)?;
        let m = if side.contains(&tail) { Homomorphism::identity(&r.states[&l].alphabet) } else { r.iso(&l)?.inverse()? };
        maps.push((amb.range(&l)?, m));
    }
    code.map_rows(&amb, |x| maps.iter().flat_map(|(rg, m)| m.apply(&x[rg.clone()])).collect())
}

struct Split {
    f: Vec<String>,
    g: Vec<String>,
    rest: Vec<String>,
}

fn split(r: &Realization, f: &[String], g: &[String]) -> Result<Split> {
    if r.is_fragment() {
        return Err(Error::BadPartition("expected a realization without boundary".into()));
    }
    for c in f.iter().chain(g) {
        if !r.constraints.contains_key(c) {
            return Err(Error::UnknownLabel(c.clone()));
        }
    }
    let fs: BTreeSet<&String> = f.iter().collect();
    let gs: BTreeSet<&String> = g.iter().collect();
    if let Some(c) = fs.intersection(&gs).next() {
        return Err(Error::FragmentsOverlap(format!("constraint `{c}` is in both fragments")));
    }
    if f.is_empty() || g.is_empty() {
        return Err(Error::BadPartition("fragments must be nonempty".into()));
    }
    for s in r.internal_states() {
        let (t, h) = r.edge_ends(&s)?;
        if (fs.contains(&t) && gs.contains(&h)) || (gs.contains(&t) && fs.contains(&h)) {
            return Err(Error::BadPartition(format!("edge `{s}` joins the two fragments directly")));
        }
    }
    let rest: Vec<String> = r.constraints.keys().filter(|c| !fs.contains(c) && !gs.contains(c)).cloned().collect();
    if rest.is_empty() {
        return Err(Error::BadPartition("the remainder fragment is empty".into()));
    }
    let order = |v: &[String]| r.constraints.keys().filter(|c| v.contains(c)).cloned().collect::<Vec<_>>();
    Ok(Split { f: order(f), g: order(g), rest })
}

/// Returns (remainder condition, hypotheses) for controllability.
fn remainder_route(r: &Realization, sp: &Split) -> Result<(bool, bool)> {
    let ff = induced(r, &sp.f)?;
    let fg = induced(r, &sp.g)?;
    let rest = induced(r, &sp.rest)?;
    let (bf, bg) = (ff.boundary_vars(), fg.boundary_vars());
    let (cf, cg) = (external_behavior(&ff)?, external_behavior(&fg)?);
    let bar_f = to_tail(r, &sp.f, &cf.project(&bf)?)?;
    let bar_g = to_tail(r, &sp.g, &cg.project(&bg)?)?;
    let under_f = cf.cross_section(&bf)?;
    let under_g = cg.cross_section(&bg)?;
    let mut both = bf.clone();
    both.extend(bg.iter().cloned());
    let pair = to_tail(r, &sp.rest, &external_behavior(&rest)?.project(&both)?)?;
    let product = bar_f.product(&bar_g)?;
    let condition = product.is_subgroup_of(&pair.intersect(&product)?);
    let b = behavior_bundle(r)?.behavior;
    let hypotheses = b.project(&bf)? == bar_f
        && b.project(&bg)? == bar_g
        && under_f.is_trivial()
        && under_g.is_trivial();
    Ok((condition, hypotheses))
}

/// Behavioral controllability and observability of `r` with respect to the
/// fragments induced by the constraint sets `f` and `g`.
pub fn behavioral_ctrl_obs(r: &Realization, f: &[String], g: &[String]) -> Result<BehavioralReport> {
    let sp = split(r, f, g)?;
    let c = behavior_bundle(r)?.code;
    let (af, ag) = (r.symbols_of(&sp.f), r.symbols_of(&sp.g));
    let mut both = af.clone();
    both.extend(ag.iter().cloned());
    let controllable = c.project(&both)? == c.project(&af)?.product(&c.project(&ag)?)?;
    let observable = c.cross_section(&both)? == c.cross_section(&af)?.product(&c.cross_section(&ag)?)?;
    let (remainder_controllable, controllability_hypotheses) = remainder_route(r, &sp)?;
    let (remainder_observable, observability_hypotheses) = remainder_route(&dualize(r)?, &sp)?;
    Ok(BehavioralReport {
        controllable,
        observable,
        remainder_controllable,
        remainder_observable,
        controllability_hypotheses,
        observability_hypotheses,
    })
}
