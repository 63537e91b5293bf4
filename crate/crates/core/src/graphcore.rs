//! Graph structure of a normal realization: cyclomatic number, cut edges,
//! leaf stripping, the 2-core, the second canonical decomposition and DOT
//! export. Degrees count internal state edges only.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt::Write as _;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{CodeSubgroup, QuotientMap};
use crate::analysis::{is_internally_proper, is_internally_trim};
use crate::error::{Error, Result};
use crate::realization::{behavior_bundle, connect, cut_with_record, external_behavior, fresh_label, Cut, Realization};

/// `|E| − |V| + components`, over internal edges.
pub fn cyclomatic_number(r: &Realization) -> usize {
    let e = r.internal_states().len();
    let v = r.constraints.len();
    let c = r.components().len();
    e + c - v
}

/// Removing `edge` disconnects its component.
pub fn is_cut_edge(r: &Realization, edge: &str) -> Result<bool> {
    if !r.internal_states().iter().any(|s| s == edge) {
        return Err(Error::UnknownEdge(edge.to_string()));
    }
    let removed = BTreeSet::from([edge.to_string()]);
    Ok(r.components_without(&removed).len() > r.components().len())
}

fn degrees(r: &Realization, alive: &HashSet<String>) -> HashMap<String, usize> {
    let mut d: HashMap<String, usize> = alive.iter().map(|c| (c.clone(), 0)).collect();
    for s in r.internal_states() {
        if let Ok((t, h)) = r.edge_ends(&s) {
            if alive.contains(&t) && alive.contains(&h) {
                *d.get_mut(&t).unwrap() += 1;
                *d.get_mut(&h).unwrap() += 1;
            }
        }
    }
    d
}

/// Constraints surviving repeated deletion of leaves, visiting candidates in
/// the order given by `seed` (declaration order when `None`).
pub fn core_constraints(r: &Realization, seed: Option<u64>) -> Vec<String> {
    let mut alive: HashSet<String> = r.constraints.keys().cloned().collect();
    let mut order: Vec<String> = r.constraints.keys().cloned().collect();
    let mut rng = seed.map(ChaCha8Rng::seed_from_u64);
    loop {
        if let Some(rng) = rng.as_mut() {
            order.shuffle(rng);
        }
        let d = degrees(r, &alive);
        let leaf = order.iter().find(|c| alive.contains(*c) && d[*c] <= 1).cloned();
        match leaf {
            Some(c) => {
                alive.remove(&c);
            }
            None => break,
        }
    }
    r.constraints.keys().filter(|c| alive.contains(*c)).cloned().collect()
}

#[derive(Clone, Debug)]
pub struct LeafFragment {
    pub fragment: Realization,
    /// The cut edge joining the leaf to the core; `None` for a cycle-free
    /// realization reported whole.
    pub attachment: Option<String>,
    /// Boundary label of the attachment inside the leaf.
    pub leaf_label: Option<String>,
}

#[derive(Clone, Debug)]
pub struct TwoCore {
    /// The 2-core as a fragment; `None` when the realization is cycle-free.
    pub core: Option<Realization>,
    /// Leaf fragments in attachment-label order.
    pub leaves: Vec<LeafFragment>,
    /// The cut that separated core and leaves.
    pub cut: Option<Cut>,
}

fn check_connected(r: &Realization) -> Result<()> {
    if r.is_connected() {
        Ok(())
    } else {
        Err(Error::Disconnected)
    }
}

/// 2-core with leaves stripped in a seeded random order.
pub fn two_core_with_order(r: &Realization, seed: Option<u64>) -> Result<TwoCore> {
    check_connected(r)?;
    let core = core_constraints(r, seed);
    if core.is_empty() {
        return Ok(TwoCore {
            core: None,
            leaves: vec![LeafFragment { fragment: r.clone(), attachment: None, leaf_label: None }],
            cut: None,
        });
    }
    let inside: HashSet<&String> = core.iter().collect();
    let mut attachments = Vec::new();
    for s in r.internal_states() {
        let (t, h) = r.edge_ends(&s)?;
        if inside.contains(&t) != inside.contains(&h) {
            attachments.push(s);
        }
    }
    attachments.sort();
    if attachments.is_empty() {
        return Ok(TwoCore { core: Some(r.clone()), leaves: Vec::new(), cut: None });
    }
    let cut = cut_with_record(r, &attachments)?;
    let core_idx = cut
        .fragments
        .iter()
        .position(|f| f.constraints.keys().any(|c| inside.contains(c)))
        .expect("core fragment");
    let mut leaves = Vec::new();
    for e in &cut.edges {
        let (idx, label) = if e.tail.0 == core_idx { e.head.clone() } else { e.tail.clone() };
        leaves.push(LeafFragment {
            fragment: cut.fragments[idx].clone(),
            attachment: Some(e.edge.clone()),
            leaf_label: Some(label),
        });
    }
    Ok(TwoCore { core: Some(cut.fragments[core_idx].clone()), leaves, cut: Some(cut) })
}

/// The 2-core: the maximal leafless subgraph, with the stripped leaf fragments.
pub fn two_core(r: &Realization) -> Result<TwoCore> {
    two_core_with_order(r, None)
}

/// Interface summary of one leaf fragment: its effective symbol space
/// `Ã = C^F|A / C^F:A` and the attachment alphabet it is isomorphic to.
#[derive(Clone, Debug)]
pub struct LeafSummary {
    pub attachment: String,
    pub leaf_label: String,
    pub fragment: Realization,
    pub symbols: Vec<String>,
    pub trimmed: CodeSubgroup,
    pub nondynamical: CodeSubgroup,
    pub map: QuotientMap,
    /// `|S_i|`.
    pub state_order: u128,
}

impl LeafSummary {
    /// `|S_i| = |Ã_i|`.
    pub fn isomorphic(&self) -> bool {
        self.state_order == self.map.order()
    }
}

#[derive(Clone, Debug)]
pub struct SecondDecomposition {
    /// The 2-core fragment, or `None` when the realization is cycle-free.
    pub core: Option<Realization>,
    pub leaves: Vec<LeafSummary>,
    cut: Cut,
    symbol_order: Vec<String>,
}

impl SecondDecomposition {
    /// Rejoins the core with one single-constraint fragment per leaf, whose
    /// code is the leaf's external behavior.
    pub fn compose(&self) -> Result<Realization> {
        let mut parts: Vec<Realization> = Vec::new();
        if let Some(c) = &self.core {
            parts.push(c.clone());
        }
        let mut taken: HashSet<String> = self.cut.fragments.iter().flat_map(|f| f.all_labels()).collect();
        for leaf in &self.leaves {
            let code = external_behavior(&leaf.fragment)?;
            let mut f = Realization::new();
            for a in &leaf.symbols {
                f.add_symbol(a, leaf.fragment.symbols[a].clone())?;
            }
            f.add_state(&leaf.leaf_label, leaf.fragment.states[&leaf.leaf_label].alphabet.clone())?;
            let id = fresh_label(&format!("leaf_{}", leaf.attachment), &taken);
            taken.insert(id.clone());
            f.add_constraint_code(&id, &code.ambient().labels(), &code)?;
            f.boundary = Some(vec![leaf.leaf_label.clone()]);
            parts.push(f);
        }
        let mut whole = parts.remove(0);
        for p in &parts {
            whole = connect(&whole, Some(p), &[])?;
        }
        let pairs: Vec<_> = self.cut.edges.iter().map(|e| (e.tail.1.clone(), e.head.1.clone(), e.iso.clone())).collect();
        let mut out = connect(&whole, None, &pairs)?;
        out.boundary = None;
        let symbols = self.symbol_order.iter().map(|k| (k.clone(), out.symbols[k].clone())).collect();
        out.symbols = symbols;
        Ok(out)
    }
}

/// Replaces each leaf fragment of an internally trim and proper realization
/// by its effective symbol space. A cycle-free realization is split at its
/// first internal edge into two leaves; a leafless one has no leaves.
pub fn second_canonical_decomposition(r: &Realization) -> Result<SecondDecomposition> {
    check_connected(r)?;
    behavior_bundle(r)?;
    if !is_internally_trim(r) || !is_internally_proper(r) {
        return Err(Error::NotTrimProper(
            "realization must be internally trim and proper; apply the canonical decomposition first".into(),
        ));
    }
    let tc = two_core(r)?;
    let (core, cut, leaves): (Option<Realization>, Cut, Vec<(String, String, Realization)>) = match tc.core {
        None => {
            let mut edges = r.internal_states();
            edges.sort();
            let Some(first) = edges.first().cloned() else {
                return Err(Error::NotCycleFree);
            };
            let cut = cut_with_record(r, std::slice::from_ref(&first))?;
            let e = &cut.edges[0];
            let leaves = vec![
                (first.clone(), e.tail.1.clone(), cut.fragments[e.tail.0].clone()),
                (first.clone(), e.head.1.clone(), cut.fragments[e.head.0].clone()),
            ];
            (None, cut, leaves)
        }
        Some(core) => {
            let cut = tc.cut.unwrap_or(Cut { fragments: vec![core.clone()], edges: Vec::new() });
            let leaves = tc
                .leaves
                .into_iter()
                .map(|l| (l.attachment.unwrap(), l.leaf_label.unwrap(), l.fragment))
                .collect();
            (Some(core), cut, leaves)
        }
    };
    let mut summaries = Vec::new();
    for (attachment, label, fragment) in leaves {
        let code = external_behavior(&fragment)?;
        let symbols: Vec<String> = fragment.symbols.keys().cloned().collect();
        let trimmed = code.project(&symbols)?;
        let nondynamical = code.cross_section(&symbols)?;
        let map = QuotientMap::new(&trimmed, &nondynamical)?;
        summaries.push(LeafSummary {
            state_order: fragment.states[&label].alphabet.order(),
            attachment,
            leaf_label: label,
            fragment,
            symbols,
            trimmed,
            nondynamical,
            map,
        });
    }
    Ok(SecondDecomposition { core, leaves: summaries, cut, symbol_order: r.symbols.keys().cloned().collect() })
}

/// Graphviz rendering: constraints as boxes, state edges labelled with
/// their alphabets, symbols and boundary states as dangling half-edges.
pub fn to_dot(r: &Realization) -> String {
    let mut out = String::from("graph realization {\n  node [shape=box];\n");
    let q = |s: &str| format!("\"{}\"", s.replace('"', "\\\""));
    for id in r.constraints.keys() {
        let _ = writeln!(out, "  {};", q(id));
    }
    for (a, alpha) in &r.symbols {
        let node = format!("sym:{a}");
        let _ = writeln!(out, "  {} [shape=plaintext,label={}];", q(&node), q(a));
        if let Some(c) = r.constraint_of(a) {
            let _ = writeln!(out, "  {} -- {} [label={}];", q(&c), q(&node), q(&alpha.to_string()));
        }
    }
    for (s, sv) in &r.states {
        let label = match &sv.iso {
            Some(_) => format!("{s}: {} (φ)", sv.alphabet),
            None => format!("{s}: {}", sv.alphabet),
        };
        if r.is_boundary(s) {
            let node = format!("bd:{s}");
            let _ = writeln!(out, "  {} [shape=point];", q(&node));
            if let Some(c) = r.constraint_of(s) {
                let _ = writeln!(out, "  {} -- {} [label={},style=dashed];", q(&c), q(&node), q(&label));
            }
        } else if let Ok((t, h)) = r.edge_ends(s) {
            let _ = writeln!(out, "  {} -- {} [label={}];", q(&t), q(&h), q(&label));
        }
    }
    out.push_str("}\n");
    out
}
