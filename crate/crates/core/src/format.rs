//! JSON file formats for realizations, priors and marginals.

use std::collections::{BTreeMap, HashMap};

use indexmap::IndexMap;
use num::{BigRational, Zero};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::algebra::{Alphabet, Element, Homomorphism};
use crate::decode::{format_rational, parse_decimal, Marginals, Priors, Weight};
use crate::error::{Error, Result};
use crate::realization::Realization;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AlphabetSpec {
    Field { field: u64, dim: usize },
    Cyclic { cyclic: Vec<u64> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SymbolSpec {
    pub id: String,
    pub alphabet: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateSpec {
    pub id: String,
    pub alphabet: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub iso: Option<Vec<Vec<u64>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstraintSpec {
    pub id: String,
    pub vars: Vec<String>,
    pub generators: Vec<Vec<u64>>,
}

/// On-disk form of a realization or fragment.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RealizationFile {
    pub alphabets: IndexMap<String, AlphabetSpec>,
    pub symbols: Vec<SymbolSpec>,
    #[serde(default)]
    pub states: Vec<StateSpec>,
    pub constraints: Vec<ConstraintSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub boundary: Option<Vec<String>>,
}

impl AlphabetSpec {
    fn build(&self) -> Result<Alphabet> {
        match self {
            AlphabetSpec::Field { field, dim } => Alphabet::field(*field, *dim),
            AlphabetSpec::Cyclic { cyclic } => Alphabet::cyclic(cyclic.clone()),
        }
    }

    fn of(a: &Alphabet) -> AlphabetSpec {
        match a {
            Alphabet::VectorSpace { p, dim } => AlphabetSpec::Field { field: *p, dim: *dim },
            Alphabet::Group { moduli } => AlphabetSpec::Cyclic { cyclic: moduli.clone() },
        }
    }
}

fn alphabet_name(a: &Alphabet) -> String {
    match a {
        Alphabet::VectorSpace { p, dim: 1 } => format!("GF{p}"),
        Alphabet::VectorSpace { p, dim } => format!("GF{p}^{dim}"),
        Alphabet::Group { moduli } if moduli.is_empty() => "Z1".into(),
        Alphabet::Group { moduli } => moduli.iter().map(|m| format!("Z{m}")).collect::<Vec<_>>().join("x"),
    }
}

fn check_residues(what: &str, row: &[u64], moduli: &[u64]) -> Result<()> {
    if row.len() != moduli.len() {
        return Err(Error::Parse(format!("{what} has {} entries, expected {}", row.len(), moduli.len())));
    }
    for (i, (&x, &m)) in row.iter().zip(moduli).enumerate() {
        if x >= m {
            return Err(Error::ElementOutOfRange(format!("{what}, entry {i}: {x} is not a residue mod {m}")));
        }
    }
    Ok(())
}

impl RealizationFile {
    pub fn from_realization(r: &Realization) -> RealizationFile {
        let mut alphabets = IndexMap::new();
        let mut name = |a: &Alphabet| {
            let n = alphabet_name(a);
            alphabets.entry(n.clone()).or_insert_with(|| AlphabetSpec::of(a));
            n
        };
        let symbols = r.symbols.iter().map(|(id, a)| SymbolSpec { id: id.clone(), alphabet: name(a) }).collect();
        let states = r
            .states
            .iter()
            .map(|(id, s)| StateSpec {
                id: id.clone(),
                alphabet: name(&s.alphabet),
                iso: s.iso.as_ref().map(|h| h.matrix().to_vec()),
            })
            .collect();
        let constraints = r
            .constraints
            .iter()
            .map(|(id, c)| ConstraintSpec { id: id.clone(), vars: c.vars.clone(), generators: c.code.generators().to_vec() })
            .collect();
        RealizationFile { alphabets, symbols, states, constraints, boundary: r.boundary.clone() }
    }

    /// Builds the realization. Residues must be canonical; degree and
    /// connectivity are left to validation.
    pub fn to_realization(&self) -> Result<Realization> {
        let mut alphabets: HashMap<&str, Alphabet> = HashMap::new();
        for (n, spec) in &self.alphabets {
            alphabets.insert(n, spec.build().map_err(|e| Error::Parse(format!("alphabet `{n}`: {e}")))?);
        }
        let lookup = |id: &str, n: &str| -> Result<Alphabet> {
            alphabets.get(n).cloned().ok_or_else(|| Error::Parse(format!("`{id}` uses undeclared alphabet `{n}`")))
        };
        let mut r = Realization::new();
        for s in &self.symbols {
            r.add_symbol(&s.id, lookup(&s.id, &s.alphabet)?)?;
        }
        for s in &self.states {
            let a = lookup(&s.id, &s.alphabet)?;
            match &s.iso {
                None => r.add_state(&s.id, a)?,
                Some(m) => {
                    let moduli = a.moduli();
                    if m.len() != moduli.len() {
                        return Err(Error::Parse(format!("iso of `{}` must have {} rows", s.id, moduli.len())));
                    }
                    for (j, row) in m.iter().enumerate() {
                        let what = format!("iso of `{}`, row {j}", s.id);
                        if row.len() != moduli.len() {
                            return Err(Error::Parse(format!("{what} must have {} entries", moduli.len())));
                        }
                        if let Some(&x) = row.iter().find(|&&x| x >= moduli[j]) {
                            return Err(Error::ElementOutOfRange(format!("{what}: {x} is not a residue mod {}", moduli[j])));
                        }
                    }
                    let h = Homomorphism::new(a.clone(), a.clone(), m.clone())?;
                    if !h.is_isomorphism() {
                        return Err(Error::NotAnIsomorphism);
                    }
                    r.add_state_with_iso(&s.id, a, h)?;
                }
            }
        }
        for c in &self.constraints {
            let vars: Vec<&str> = c.vars.iter().map(|v| v.as_str()).collect();
            let amb = r.ambient_of(&c.vars)?;
            let moduli = amb.moduli();
            for (i, g) in c.generators.iter().enumerate() {
                check_residues(&format!("constraint `{}`, generator {i}", c.id), g, &moduli)?;
            }
            let rows: Vec<Element> = c.generators.clone();
            r.add_constraint(&c.id, &vars, &rows)?;
        }
        if let Some(b) = &self.boundary {
            for v in b {
                if !r.states.contains_key(v) {
                    return Err(Error::Parse(format!("boundary entry `{v}` is not a state")));
                }
            }
            r.boundary = Some(b.clone());
        }
        Ok(r)
    }
}

pub fn parse_realization(text: &str) -> Result<Realization> {
    let file: RealizationFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    file.to_realization()
}

pub fn write_realization(r: &Realization) -> String {
    let value = serde_json::to_value(RealizationFile::from_realization(r)).expect("serializable");
    let mut out = String::new();
    layout(&value, 0, &mut out);
    out.push('\n');
    out
}

fn inline(v: &Value) -> String {
    match v {
        Value::Array(xs) => format!("[{}]", xs.iter().map(inline).collect::<Vec<_>>().join(", ")),
        Value::Object(m) => {
            let parts: Vec<String> = m.iter().map(|(k, x)| format!("{}: {}", Value::String(k.clone()), inline(x))).collect();
            format!("{{{}}}", parts.join(", "))
        }
        _ => v.to_string(),
    }
}

/// Pretty layout that keeps short values on one line.
fn layout(v: &Value, depth: usize, out: &mut String) {
    let flat = inline(v);
    if flat.len() + 2 * depth <= 100 {
        out.push_str(&flat);
        return;
    }
    let pad = "  ".repeat(depth + 1);
    match v {
        Value::Array(xs) => {
            out.push_str("[\n");
            for (i, x) in xs.iter().enumerate() {
                out.push_str(&pad);
                layout(x, depth + 1, out);
                out.push_str(if i + 1 < xs.len() { ",\n" } else { "\n" });
            }
            out.push_str(&"  ".repeat(depth));
            out.push(']');
        }
        Value::Object(m) => {
            out.push_str("{\n");
            for (i, (k, x)) in m.iter().enumerate() {
                out.push_str(&pad);
                out.push_str(&Value::String(k.clone()).to_string());
                out.push_str(": ");
                layout(x, depth + 1, out);
                out.push_str(if i + 1 < m.len() { ",\n" } else { "\n" });
            }
            out.push_str(&"  ".repeat(depth));
            out.push('}');
        }
        _ => out.push_str(&flat),
    }
}

fn weight_from_value<W: Weight>(v: &Value, exact: impl Fn(&str) -> Option<W>) -> Option<W> {
    match v {
        Value::Number(n) => exact(&n.to_string()),
        Value::String(s) => exact(s),
        _ => None,
    }
}

fn parse_weights<W: Weight>(text: &str, r: &Realization, exact: impl Fn(&str) -> Option<W>) -> Result<Priors<W>> {
    let raw: BTreeMap<String, Vec<Value>> = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let mut out = Priors::new();
    for (k, ws) in raw {
        let a = r
            .alphabet_of(&k)
            .filter(|_| r.is_symbol(&k) || r.is_boundary(&k))
            .ok_or_else(|| Error::Parse(format!("prior on `{k}`, which is not a symbol or boundary state")))?;
        if ws.len() as u128 != a.order() {
            return Err(Error::Parse(format!("prior on `{k}` has {} weights, expected {}", ws.len(), a.order())));
        }
        let mut v = Vec::new();
        for w in &ws {
            v.push(weight_from_value(w, &exact).ok_or_else(|| Error::Parse(format!("bad weight {w} for `{k}`")))?);
        }
        out.insert(k, v);
    }
    Ok(out)
}

/// Priors file as exact rationals; decimals are read from their text, and
/// strings may hold `p/q`.
pub fn parse_priors_exact(text: &str, r: &Realization) -> Result<Priors<BigRational>> {
    parse_weights(text, r, |s| parse_decimal(s).filter(|x| *x >= BigRational::zero()))
}

pub fn parse_priors_float(text: &str, r: &Realization) -> Result<Priors<f64>> {
    parse_weights(text, r, |s| {
        parse_decimal(s).map(|x| Weight::to_f64(&x)).and_then(<f64 as Weight>::from_f64)
    })
}

pub fn write_marginals_exact(m: &Marginals<BigRational>) -> String {
    let obj: BTreeMap<&String, Vec<String>> = m.iter().map(|(k, v)| (k, v.iter().map(format_rational).collect())).collect();
    compact(&obj)
}

pub fn write_marginals_float(m: &Marginals<f64>) -> String {
    compact(m)
}

fn compact<T: Serialize>(v: &T) -> String {
    let mut out = String::new();
    layout(&serde_json::to_value(v).expect("serializable"), 0, &mut out);
    out.push('\n');
    out
}
