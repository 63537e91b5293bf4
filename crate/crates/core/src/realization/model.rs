//! Normal realizations: symbol variables, state variables with optional edge
//! isomorphisms, and constraint codes over ordered incident variables.

use std::collections::{BTreeSet, HashSet};

use indexmap::IndexMap;

use crate::algebra::{Alphabet, CodeSubgroup, Element, Homomorphism, ProductSpace};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateVar {
    pub alphabet: Alphabet,
    /// Edge map with `head = φ(tail)`; `None` means equality.
    pub iso: Option<Homomorphism>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub vars: Vec<String>,
    pub code: CodeSubgroup,
}

/// A normal realization, or a fragment when `boundary` is set.
///
/// The tail end of a state edge is its first-listed incident constraint.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Realization {
    pub symbols: IndexMap<String, Alphabet>,
    pub states: IndexMap<String, StateVar>,
    pub constraints: IndexMap<String, Constraint>,
    pub boundary: Option<Vec<String>>,
}

/// One end of a state edge: constraint id and slot position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct End {
    pub constraint: String,
    pub slot: usize,
}

/// Returns `base` or a primed variant of it not present in `taken`.
pub fn fresh_label(base: &str, taken: &HashSet<String>) -> String {
    let mut l = base.to_string();
    while taken.contains(&l) {
        l.push('\'');
    }
    l
}

impl Realization {
    pub fn new() -> Realization {
        Realization::default()
    }

    fn check_new_var(&self, id: &str) -> Result<()> {
        if self.symbols.contains_key(id) || self.states.contains_key(id) {
            return Err(Error::DuplicateLabel(id.to_string()));
        }
        Ok(())
    }

    pub fn add_symbol(&mut self, id: &str, alphabet: Alphabet) -> Result<()> {
        self.check_new_var(id)?;
        alphabet.validate()?;
        self.symbols.insert(id.to_string(), alphabet);
        Ok(())
    }

    pub fn add_state(&mut self, id: &str, alphabet: Alphabet) -> Result<()> {
        self.check_new_var(id)?;
        alphabet.validate()?;
        self.states.insert(id.to_string(), StateVar { alphabet, iso: None });
        Ok(())
    }

    /// Adds a state edge carrying `head = iso(tail)`.
    pub fn add_state_with_iso(&mut self, id: &str, alphabet: Alphabet, iso: Homomorphism) -> Result<()> {
        self.check_new_var(id)?;
        alphabet.validate()?;
        let iso = if iso.is_identity() { None } else { Some(iso) };
        self.states.insert(id.to_string(), StateVar { alphabet, iso });
        Ok(())
    }

    /// Ambient of a constraint over the given variables.
    pub fn ambient_of(&self, vars: &[String]) -> Result<ProductSpace> {
        let mut f = Vec::new();
        for v in vars {
            let a = self.alphabet_of(v).ok_or_else(|| Error::UnknownVariable(v.clone()))?;
            f.push((v.clone(), a.clone()));
        }
        ProductSpace::new(f)
    }

    /// Adds a constraint generated by `rows` (residues must be canonical).
    pub fn add_constraint(&mut self, id: &str, vars: &[&str], rows: &[Element]) -> Result<()> {
        let vars: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        let amb = self.ambient_of(&vars)?;
        let code = CodeSubgroup::canonicalize(rows, &amb)?;
        self.insert_constraint(id, vars, code)
    }

    /// Adds a constraint with a given code; the code's ambient must match the
    /// variable alphabets in order and is relabelled to the variable names.
    pub fn add_constraint_code(&mut self, id: &str, vars: &[String], code: &CodeSubgroup) -> Result<()> {
        let amb = self.ambient_of(vars)?;
        let code = code.with_ambient(&amb).map_err(|_| {
            Error::AlphabetMismatch(format!("code of constraint `{id}` does not match its variables"))
        })?;
        self.insert_constraint(id, vars.to_vec(), code)
    }

    fn insert_constraint(&mut self, id: &str, vars: Vec<String>, code: CodeSubgroup) -> Result<()> {
        if self.constraints.contains_key(id) {
            return Err(Error::DuplicateLabel(id.to_string()));
        }
        self.constraints.insert(id.to_string(), Constraint { vars, code });
        Ok(())
    }

    pub fn alphabet_of(&self, var: &str) -> Option<&Alphabet> {
        self.symbols.get(var).or_else(|| self.states.get(var).map(|s| &s.alphabet))
    }

    pub fn is_symbol(&self, var: &str) -> bool {
        self.symbols.contains_key(var)
    }

    pub fn is_state(&self, var: &str) -> bool {
        self.states.contains_key(var)
    }

    pub fn is_fragment(&self) -> bool {
        self.boundary.is_some()
    }

    pub fn boundary_vars(&self) -> Vec<String> {
        self.boundary.clone().unwrap_or_default()
    }

    pub fn is_boundary(&self, var: &str) -> bool {
        self.boundary.as_ref().is_some_and(|b| b.iter().any(|x| x == var))
    }

    /// Symbols in declaration order followed by boundary states.
    pub fn external_labels(&self) -> Vec<String> {
        let mut v: Vec<String> = self.symbols.keys().cloned().collect();
        v.extend(self.boundary_vars());
        v
    }

    /// State variables that are not on the boundary, in declaration order.
    pub fn internal_states(&self) -> Vec<String> {
        self.states.keys().filter(|s| !self.is_boundary(s)).cloned().collect()
    }

    /// All slots where `var` occurs, in constraint order.
    pub fn ends(&self, var: &str) -> Vec<End> {
        let mut out = Vec::new();
        for (cid, c) in &self.constraints {
            for (slot, v) in c.vars.iter().enumerate() {
                if v == var {
                    out.push(End { constraint: cid.clone(), slot });
                }
            }
        }
        out
    }

    /// `(tail constraint, head constraint)` of an internal state edge.
    pub fn edge_ends(&self, state: &str) -> Result<(String, String)> {
        let ends = self.ends(state);
        if !self.is_state(state) || ends.len() != 2 || self.is_boundary(state) {
            return Err(Error::UnknownEdge(state.to_string()));
        }
        Ok((ends[0].constraint.clone(), ends[1].constraint.clone()))
    }

    /// The edge map of a state variable (identity when unlabelled).
    pub fn iso(&self, state: &str) -> Result<Homomorphism> {
        let s = self.states.get(state).ok_or_else(|| Error::UnknownVariable(state.to_string()))?;
        Ok(s.iso.clone().unwrap_or_else(|| Homomorphism::identity(&s.alphabet)))
    }

    /// Constraint containing a degree-1 variable.
    pub fn constraint_of(&self, var: &str) -> Option<String> {
        self.ends(var).first().map(|e| e.constraint.clone())
    }

    pub fn all_labels(&self) -> HashSet<String> {
        self.symbols
            .keys()
            .chain(self.states.keys())
            .chain(self.constraints.keys())
            .cloned()
            .collect()
    }

    /// Connected components of the constraint graph (state edges only),
    /// as lists of constraint ids in declaration order.
    pub fn components(&self) -> Vec<Vec<String>> {
        self.components_without(&BTreeSet::new())
    }

    /// Components after removing the given edges.
    pub fn components_without(&self, removed: &BTreeSet<String>) -> Vec<Vec<String>> {
        let ids: Vec<&String> = self.constraints.keys().collect();
        let n = ids.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut Vec<usize>, x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let nx = p[y];
                p[y] = r;
                y = nx;
            }
            r
        }
        for s in self.states.keys() {
            if removed.contains(s) {
                continue;
            }
            let ends = self.ends(s);
            for w in ends.windows(2) {
                let a = self.constraints.get_index_of(&w[0].constraint).unwrap();
                let b = self.constraints.get_index_of(&w[1].constraint).unwrap();
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                if ra != rb {
                    parent[ra.max(rb)] = ra.min(rb);
                }
            }
        }
        let mut groups: IndexMap<usize, Vec<String>> = IndexMap::new();
        for i in 0..n {
            let r = find(&mut parent, i);
            groups.entry(r).or_default().push(ids[i].clone());
        }
        groups.into_values().collect()
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Symbols of the given constraints, in symbol declaration order.
    pub fn symbols_of(&self, constraints: &[String]) -> Vec<String> {
        self.symbols
            .keys()
            .filter(|a| {
                self.constraint_of(a).is_some_and(|c| constraints.contains(&c))
            })
            .cloned()
            .collect()
    }

    /// Orders of the internal state alphabets, in declaration order.
    pub fn state_orders(&self) -> Vec<u128> {
        self.internal_states().iter().map(|s| self.states[s].alphabet.order()).collect()
    }

    /// Sum of internal state alphabet orders.
    pub fn state_complexity(&self) -> u128 {
        self.state_orders().iter().sum()
    }
}
