//! State-trimness at a non-cut edge and the unobservable transition space.

use crate::algebra::{CodeSubgroup, Element, ProductSpace};
use crate::error::{Error, Result};
use crate::graphcore::is_cut_edge;
use crate::realization::{behavior_bundle, cut_with_record, Realization};

#[derive(Clone, Debug)]
pub struct StateTrimReport {
    pub edge: String,
    /// Label of the head half in the cut fragment.
    pub head_label: String,
    /// `B|Sj = Sj`.
    pub state_trim: bool,
    /// `U^(\j)` lies on the graph of the edge map.
    pub dual_state_trim: bool,
    /// No nonzero element of `U^(\j)` lies on the graph of the edge map.
    pub observable: bool,
    /// `{s − φ⁻¹(s') : (a, s, s') ∈ C^(\j)} = Sj`.
    pub controllable: bool,
    /// `U^(\j) = (C^(\j)):(Sj × Sj')`, over `(edge, head_label)`.
    pub unobservable_transitions: CodeSubgroup,
    /// `U^(\j)` is trivial.
    pub externally_observable: bool,
    /// `C^(\j)|(Sj × Sj')` is full.
    pub externally_controllable: bool,
}

impl StateTrimReport {
    /// Both equivalences of the state-trimness theorem hold on this instance.
    pub fn theorem_holds(&self) -> bool {
        self.externally_observable == (self.dual_state_trim && self.observable)
            && self.externally_controllable == (self.state_trim && self.controllable)
    }
}

/// Cuts `edge`, which must not disconnect `r`, and classifies the result.
pub fn state_trim_status(r: &Realization, edge: &str) -> Result<StateTrimReport> {
    if !r.internal_states().iter().any(|s| s == edge) {
        return Err(Error::UnknownEdge(edge.to_string()));
    }
    if is_cut_edge(r, edge)? {
        return Err(Error::EdgeIsCutSet(edge.to_string()));
    }
    let cut = cut_with_record(r, &[edge.to_string()])?;
    let frag = &cut.fragments[0];
    let head = cut.edges[0].head.1.clone();
    let code = behavior_bundle(frag)?.code;
    let pair = vec![edge.to_string(), head.clone()];
    let phi = r.iso(edge)?;
    let alpha = r.states[edge].alphabet.clone();
    let amb = ProductSpace::new(vec![(edge.to_string(), alpha.clone()), (head.clone(), alpha.clone())])?;
    let unit = |k: usize| -> Element { (0..alpha.dim()).map(|i| u64::from(i == k)).collect() };
    let graph_rows: Vec<Element> = (0..alpha.dim())
        .map(|k| {
            let mut x = unit(k);
            x.extend(phi.apply(&unit(k)));
            x
        })
        .collect();
    let graph = CodeSubgroup::canonicalize(&graph_rows, &amb)?;
    let u = code.cross_section(&pair)?.with_ambient(&amb)?;
    let projected = code.project(&pair)?.with_ambient(&amb)?;
    let inv = phi.inverse()?;
    let d = alpha.dim();
    let single = ProductSpace::single(edge, alpha.clone());
    let differences = projected.map_rows(&single, |x| alpha.add(&x[..d], &alpha.neg(&inv.apply(&x[d..]))))?;
    let state_trim = behavior_bundle(r)?.behavior.project(&[edge.to_string()])?.is_full();
    Ok(StateTrimReport {
        edge: edge.to_string(),
        head_label: head,
        state_trim,
        dual_state_trim: u.is_subgroup_of(&graph),
        observable: u.intersect(&graph)?.is_trivial(),
        controllable: differences.is_full(),
        externally_observable: u.is_trivial(),
        externally_controllable: projected.is_full(),
        unobservable_transitions: u,
    })
}
