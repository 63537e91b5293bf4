//! Structural checks on realizations and fragments.

use std::fmt;

use super::model::Realization;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    SymbolDegree { symbol: String, degree: usize },
    StateDegree { state: String, degree: usize, expected: usize },
    SelfLoop { state: String, constraint: String },
    UnknownVariable { constraint: String, var: String },
    AlphabetMismatch { constraint: String, var: String },
    BadIsomorphism { state: String, reason: String },
    BoundaryNotState { var: String },
    BoundaryIsomorphism { state: String },
    Disconnected { components: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::SymbolDegree { symbol, degree } => {
                write!(f, "symbol `{symbol}` has degree {degree}, expected 1")
            }
            Violation::StateDegree { state, degree, expected } => {
                write!(f, "state `{state}` has degree {degree}, expected {expected}")
            }
            Violation::SelfLoop { state, constraint } => {
                write!(f, "state `{state}` occurs twice in constraint `{constraint}`")
            }
            Violation::UnknownVariable { constraint, var } => {
                write!(f, "constraint `{constraint}` uses undeclared variable `{var}`")
            }
            Violation::AlphabetMismatch { constraint, var } => {
                write!(f, "constraint `{constraint}` disagrees with the alphabet of `{var}`")
            }
            Violation::BadIsomorphism { state, reason } => write!(f, "edge map of `{state}`: {reason}"),
            Violation::BoundaryNotState { var } => write!(f, "boundary variable `{var}` is not a state"),
            Violation::BoundaryIsomorphism { state } => {
                write!(f, "boundary state `{state}` carries an edge map")
            }
            Violation::Disconnected { components } => {
                write!(f, "fragment is disconnected ({components} components)")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    /// Number of connected components of the constraint graph.
    pub components: usize,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            writeln!(f, "valid ({} component{})", self.components, if self.components == 1 { "" } else { "s" })
        } else {
            for v in &self.violations {
                writeln!(f, "violation: {v}")?;
            }
            Ok(())
        }
    }
}

/// Checks normal degree constraints, alphabets, edge maps and (for fragments)
/// connectivity. A realization with several components is valid; its code is
/// the product of the component codes.
pub fn validate(r: &Realization) -> ValidationReport {
    let mut v = Vec::new();
    for (cid, c) in &r.constraints {
        for (i, var) in c.vars.iter().enumerate() {
            match r.alphabet_of(var) {
                None => v.push(Violation::UnknownVariable { constraint: cid.clone(), var: var.clone() }),
                Some(a) => {
                    let ok = c.code.ambient().factors().get(i).is_some_and(|(l, b)| l == var && b == a)
                        && c.code.ambient().len() == c.vars.len();
                    if !ok {
                        v.push(Violation::AlphabetMismatch { constraint: cid.clone(), var: var.clone() });
                    }
                }
            }
            if r.is_state(var) && c.vars[..i].contains(var) {
                v.push(Violation::SelfLoop { state: var.clone(), constraint: cid.clone() });
            }
        }
    }
    for s in r.symbols.keys() {
        let d = r.ends(s).len();
        if d != 1 {
            v.push(Violation::SymbolDegree { symbol: s.clone(), degree: d });
        }
    }
    for b in r.boundary_vars() {
        if !r.is_state(&b) {
            v.push(Violation::BoundaryNotState { var: b.clone() });
        }
    }
    for (s, sv) in &r.states {
        let d = r.ends(s).len();
        let expected = if r.is_boundary(s) { 1 } else { 2 };
        if d != expected {
            v.push(Violation::StateDegree { state: s.clone(), degree: d, expected });
        }
        if let Some(iso) = &sv.iso {
            if r.is_boundary(s) {
                v.push(Violation::BoundaryIsomorphism { state: s.clone() });
            } else if iso.source() != &sv.alphabet || iso.target() != &sv.alphabet {
                v.push(Violation::BadIsomorphism { state: s.clone(), reason: "wrong alphabets".into() });
            } else if !iso.is_isomorphism() {
                v.push(Violation::BadIsomorphism { state: s.clone(), reason: "not invertible".into() });
            }
        }
    }
    let components = r.components().len();
    if r.is_fragment() && components > 1 {
        v.push(Violation::Disconnected { components });
    }
    ValidationReport { violations: v, components }
}
