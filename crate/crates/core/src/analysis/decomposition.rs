//! Canonical decomposition: a trim and proper core over effective symbol
//! alphabets plus interface nodes.

use std::collections::HashSet;

use indexmap::IndexMap;

use super::reduce::{reduce_sweep, replace_coordinate, ReductionStep};
use crate::algebra::{Alphabet, CodeSubgroup, Element, QuotientMap};
use crate::error::Result;
use crate::realization::{behavior_bundle, fresh_label, Realization, StateVar};

/// Interface node `Āk → Ãk = Āk/A̲k` for one symbol.
#[derive(Clone, Debug)]
pub struct InterfaceNode {
    pub symbol: String,
    /// The original symbol alphabet `Ak`.
    pub alphabet: Alphabet,
    /// `Āk = C|Ak`.
    pub trimmed: CodeSubgroup,
    /// `A̲k = C:Ak`.
    pub nondynamical: CodeSubgroup,
    pub map: QuotientMap,
}

impl InterfaceNode {
    /// `Ãk`.
    pub fn effective(&self) -> &Alphabet {
        self.map.target()
    }

    /// The interface code `{(a, π(a)) : a ∈ Āk}` over `(Ak, Ãk)`.
    pub fn code(&self, symbol_label: &str, state_label: &str) -> Result<CodeSubgroup> {
        let amb = crate::algebra::ProductSpace::new(vec![
            (symbol_label.to_string(), self.alphabet.clone()),
            (state_label.to_string(), self.effective().clone()),
        ])?;
        let rows: Result<Vec<Element>> = self
            .trimmed
            .generators()
            .iter()
            .map(|g| {
                let mut x = g.clone();
                x.extend(self.map.project(g)?);
                Ok(x)
            })
            .collect();
        CodeSubgroup::canonicalize(&rows?, &amb)
    }
}

#[derive(Clone, Debug)]
pub struct CanonicalDecomposition {
    /// Realization over the effective alphabets; every constraint is trim
    /// and proper at every variable.
    pub core: Realization,
    /// One node per symbol whose alphabet changed, in symbol order.
    pub interfaces: Vec<InterfaceNode>,
    pub steps: Vec<ReductionStep>,
}

impl CanonicalDecomposition {
    /// Effective alphabet of every symbol.
    pub fn effective_alphabets(&self) -> IndexMap<String, Alphabet> {
        self.core.symbols.clone()
    }

    /// Joins the interface nodes back onto the core; realizes the original code.
    pub fn compose(&self) -> Result<Realization> {
        let mut out = self.core.clone();
        let mut taken: HashSet<String> = out.all_labels();
        let mut symbols = IndexMap::new();
        let mut links = Vec::new();
        for (k, a) in &self.core.symbols {
            match self.interfaces.iter().find(|n| &n.symbol == k) {
                Some(node) => {
                    let state = fresh_label(&format!("{k}~"), &taken);
                    taken.insert(state.clone());
                    let cid = fresh_label(&format!("if_{k}"), &taken);
                    taken.insert(cid.clone());
                    symbols.insert(k.clone(), node.alphabet.clone());
                    out.states.insert(state.clone(), StateVar { alphabet: a.clone(), iso: None });
                    for c in out.constraints.values_mut() {
                        if c.vars.contains(k) {
                            for v in c.vars.iter_mut() {
                                if v == k {
                                    *v = state.clone();
                                }
                            }
                            let amb = c.code.ambient().relabel(&c.vars)?;
                            c.code = c.code.with_ambient(&amb)?;
                        }
                    }
                    links.push((cid, k.clone(), state, node));
                }
                None => {
                    symbols.insert(k.clone(), a.clone());
                }
            }
        }
        out.symbols = symbols;
        for (cid, k, state, node) in links {
            let code = node.code(&k, &state)?;
            out.add_constraint_code(&cid, &[k, state], &code)?;
        }
        Ok(out)
    }
}

/// Reduces `r` to a core whose constraint codes are trim and proper at every
/// variable, with interface nodes carrying each symbol's effective alphabet.
pub fn canonical_decomposition(r: &Realization) -> Result<CanonicalDecomposition> {
    let (mut core, mut steps) = reduce_sweep(r)?;
    let mut interfaces = Vec::new();
    let symbols: Vec<String> = core.symbols.keys().cloned().collect();
    for k in symbols {
        let code = behavior_bundle(&core)?.code;
        let part = vec![k.clone()];
        let trimmed = code.project(&part)?;
        let nondynamical = code.cross_section(&part)?;
        if trimmed.is_full() && nondynamical.is_trivial() {
            continue;
        }
        let map = QuotientMap::new(&trimmed, &nondynamical)?;
        let target = map.target().clone();
        let cid = core.constraint_of(&k).expect("valid realization");
        let c = core.constraints.get_mut(&cid).unwrap();
        c.code = replace_coordinate(&c.code, &k, &trimmed, &target, |x| map.project(x))?;
        let alphabet = core.symbols.insert(k.clone(), target).unwrap();
        interfaces.push(InterfaceNode { symbol: k, alphabet, trimmed, nondynamical, map });
    }
    let (core, more) = reduce_sweep(&core)?;
    steps.extend(more);
    Ok(CanonicalDecomposition { core, interfaces, steps })
}
