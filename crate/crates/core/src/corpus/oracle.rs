//! Exhaustive reference model of a realization, computed by backtracking over
//! explicit constraint codewords. Nothing here uses canonical forms.

use std::collections::{HashMap, HashSet};
use std::ops::{Add, Mul};

use num::{One, Zero};

use crate::algebra::{Alphabet, CodeSubgroup, Element, Homomorphism};
use crate::error::{Error, Result};
use crate::realization::Realization;

/// Default cap on enumerated sets.
pub const ORACLE_CAP: u128 = 1 << 20;

/// All elements of the subgroup generated by `code`'s rows, by closure.
pub fn closure(code: &CodeSubgroup, cap: u128) -> Result<Vec<Element>> {
    let amb = code.ambient();
    let mut seen: HashSet<Element> = HashSet::new();
    let zero = amb.zero();
    seen.insert(zero.clone());
    let mut out = vec![zero];
    let mut i = 0;
    while i < out.len() {
        let x = out[i].clone();
        for g in code.generators() {
            let y = amb.add(&x, g);
            if seen.insert(y.clone()) {
                if seen.len() as u128 > cap {
                    return Err(Error::TooLargeToEnumerate { size: seen.len() as u128, cap });
                }
                out.push(y);
            }
        }
        i += 1;
    }
    Ok(out)
}

/// The orthogonal complement of an explicit subgroup, by testing every element.
pub fn brute_orthogonal(alphabets: &[Alphabet], set: &HashSet<Element>) -> HashSet<Element> {
    let moduli: Vec<u64> = alphabets.iter().flat_map(|a| a.moduli()).collect();
    let total: u128 = moduli.iter().map(|&m| m as u128).product();
    let mut out = HashSet::new();
    let mut y = vec![0u64; moduli.len()];
    for _ in 0..total {
        let orth = set.iter().all(|x| {
            let mut acc = 0.0f64;
            for i in 0..moduli.len() {
                acc += (x[i] * y[i] % moduli[i]) as f64 / moduli[i] as f64;
            }
            (acc - acc.round()).abs() < 1e-9
        });
        if orth {
            out.insert(y.clone());
        }
        for i in (0..moduli.len()).rev() {
            y[i] += 1;
            if y[i] < moduli[i] {
                break;
            }
            y[i] = 0;
        }
    }
    out
}

fn apply_table(phi: &Homomorphism) -> HashMap<Element, Element> {
    phi.source().elements().into_iter().map(|x| (x.clone(), phi.apply(&x))).collect()
}

/// Explicit behavior of a realization or fragment.
#[derive(Clone, Debug)]
pub struct ExhaustiveModel {
    /// Symbols then boundary states.
    pub external: Vec<String>,
    /// Internal states, valued at their tail end.
    pub internal: Vec<String>,
    pub alphabets: HashMap<String, Alphabet>,
    /// Every valid configuration, as values keyed by variable.
    pub configs: Vec<HashMap<String, Element>>,
    codes: Vec<(String, Vec<String>, Vec<Element>)>,
    tables: HashMap<String, HashMap<Element, Element>>,
    inverse: HashMap<String, HashMap<Element, Element>>,
}

impl ExhaustiveModel {
    pub fn new(r: &Realization) -> Result<ExhaustiveModel> {
        ExhaustiveModel::with_cap(r, ORACLE_CAP)
    }

    pub fn with_cap(r: &Realization, cap: u128) -> Result<ExhaustiveModel> {
        let external = r.external_labels();
        let internal = r.internal_states();
        let mut alphabets = HashMap::new();
        for l in external.iter().chain(&internal) {
            alphabets.insert(l.clone(), r.alphabet_of(l).ok_or_else(|| Error::UnknownVariable(l.clone()))?.clone());
        }
        let mut codes = Vec::new();
        for (cid, c) in &r.constraints {
            codes.push((cid.clone(), c.vars.clone(), closure(&c.code, cap)?));
        }
        let mut tables = HashMap::new();
        let mut inverse = HashMap::new();
        for s in &internal {
            let t = apply_table(&r.iso(s)?);
            inverse.insert(s.clone(), t.iter().map(|(a, b)| (b.clone(), a.clone())).collect());
            tables.insert(s.clone(), t);
        }
        let mut model = ExhaustiveModel { external, internal, alphabets, configs: Vec::new(), codes, tables, inverse };
        // which end of each internal state does each constraint hold
        let mut heads: HashSet<(String, String)> = HashSet::new();
        for s in &model.internal {
            let ends = r.ends(s);
            if ends.len() != 2 {
                return Err(Error::ValidationFailed(format!("state `{s}` does not have degree 2")));
            }
            heads.insert((ends[1].constraint.clone(), s.clone()));
        }
        let order = model.constraint_order();
        let mut assign: HashMap<String, Element> = HashMap::new();
        let mut budget: u128 = cap * 16;
        let mut configs = Vec::new();
        model.search(&order, 0, &heads, &mut assign, &mut configs, &mut budget, cap)?;
        for l in model.external.iter().chain(&model.internal) {
            if configs.iter().any(|c: &HashMap<String, Element>| !c.contains_key(l)) {
                return Err(Error::UnknownVariable(l.clone()));
            }
        }
        model.configs = configs;
        Ok(model)
    }

    fn constraint_order(&self) -> Vec<usize> {
        let n = self.codes.len();
        let mut done = vec![false; n];
        let mut seen: HashSet<&String> = HashSet::new();
        let mut order = Vec::new();
        for _ in 0..n {
            let best = (0..n)
                .filter(|&i| !done[i])
                .max_by_key(|&i| {
                    let shared = self.codes[i].1.iter().filter(|v| seen.contains(v)).count();
                    (shared, std::cmp::Reverse(self.codes[i].2.len()), std::cmp::Reverse(i))
                })
                .unwrap();
            done[best] = true;
            seen.extend(self.codes[best].1.iter());
            order.push(best);
        }
        order
    }

    #[allow(clippy::too_many_arguments)]
    fn search(
        &self,
        order: &[usize],
        depth: usize,
        heads: &HashSet<(String, String)>,
        assign: &mut HashMap<String, Element>,
        out: &mut Vec<HashMap<String, Element>>,
        budget: &mut u128,
        cap: u128,
    ) -> Result<()> {
        if depth == order.len() {
            out.push(assign.clone());
            if out.len() as u128 > cap {
                return Err(Error::TooLargeToEnumerate { size: out.len() as u128, cap });
            }
            return Ok(());
        }
        let (cid, vars, words) = &self.codes[order[depth]];
        let widths: Vec<usize> = vars.iter().map(|v| self.alphabets[v].dim()).collect();
        'word: for w in words {
            if *budget == 0 {
                return Err(Error::TooLargeToEnumerate { size: cap * 16, cap });
            }
            *budget -= 1;
            let mut fresh = Vec::new();
            let mut off = 0;
            for (v, &d) in vars.iter().zip(&widths) {
                let local = w[off..off + d].to_vec();
                off += d;
                let is_head = heads.contains(&(cid.clone(), v.clone()));
                let value = if is_head { self.inverse[v][&local].clone() } else { local };
                match assign.get(v) {
                    Some(x) if *x != value => {
                        for f in &fresh {
                            assign.remove(f);
                        }
                        continue 'word;
                    }
                    Some(_) => {}
                    None => {
                        assign.insert(v.clone(), value);
                        fresh.push(v.clone());
                    }
                }
            }
            self.search(order, depth + 1, heads, assign, out, budget, cap)?;
            for f in &fresh {
                assign.remove(f);
            }
        }
        Ok(())
    }

    fn concat(&self, c: &HashMap<String, Element>, labels: &[String]) -> Element {
        labels.iter().flat_map(|l| c[l].iter().copied()).collect()
    }

    fn is_zero(&self, c: &HashMap<String, Element>, labels: &[String]) -> bool {
        labels.iter().all(|l| c[l].iter().all(|&x| x == 0))
    }

    /// Number of valid configurations `|B|`.
    pub fn behavior_size(&self) -> usize {
        self.configs.len()
    }

    /// Projection of the behavior onto `labels`.
    pub fn project(&self, labels: &[String]) -> HashSet<Element> {
        self.configs.iter().map(|c| self.concat(c, labels)).collect()
    }

    /// Configurations vanishing outside `labels` (among external and
    /// internal variables), restricted to `labels`.
    pub fn cross_section(&self, labels: &[String]) -> HashSet<Element> {
        let others: Vec<String> =
            self.external.iter().chain(&self.internal).filter(|l| !labels.contains(l)).cloned().collect();
        self.configs.iter().filter(|c| self.is_zero(c, &others)).map(|c| self.concat(c, labels)).collect()
    }

    /// The external behavior `C` over symbols and boundary states.
    pub fn code(&self) -> HashSet<Element> {
        self.project(&self.external)
    }

    /// Cross-section of `C` (external coordinates only) at `labels`.
    pub fn code_cross_section(&self, labels: &[String]) -> HashSet<Element> {
        let others: Vec<String> = self.external.iter().filter(|l| !labels.contains(l)).cloned().collect();
        self.configs.iter().filter(|c| self.is_zero(c, &others)).map(|c| self.concat(c, labels)).collect()
    }

    fn symbols(&self, r_boundary: &[String]) -> Vec<String> {
        self.external.iter().filter(|l| !r_boundary.contains(l)).cloned().collect()
    }

    /// Internal state configurations occurring with all external variables zero.
    pub fn internal_unobservable(&self) -> HashSet<Element> {
        self.configs
            .iter()
            .filter(|c| self.is_zero(c, &self.external))
            .map(|c| self.concat(c, &self.internal))
            .collect()
    }

    /// Boundary configurations occurring with all symbols zero.
    pub fn external_unobservable(&self, boundary: &[String]) -> HashSet<Element> {
        let syms = self.symbols(boundary);
        self.configs.iter().filter(|c| self.is_zero(c, &syms)).map(|c| self.concat(c, boundary)).collect()
    }

    /// `(boundary, internal)` configurations occurring with all symbols zero.
    pub fn total_unobservable(&self, boundary: &[String]) -> HashSet<Element> {
        let syms = self.symbols(boundary);
        let mut labels = boundary.to_vec();
        labels.extend(self.internal.iter().cloned());
        self.configs.iter().filter(|c| self.is_zero(c, &syms)).map(|c| self.concat(c, &labels)).collect()
    }

    /// `Π |C_i|`.
    pub fn universe_size(&self) -> u128 {
        self.codes.iter().map(|c| c.2.len() as u128).product()
    }

    /// Internal state syndromes `s − φ⁻¹(s')` over the configuration universe,
    /// as a sumset of per-constraint contributions.
    pub fn internal_controllable(&self) -> Result<HashSet<Element>> {
        let pos: HashMap<&String, usize> = {
            let mut m = HashMap::new();
            let mut off = 0;
            for s in &self.internal {
                m.insert(s, off);
                off += self.alphabets[s].dim();
            }
            m
        };
        let moduli: Vec<u64> = self.internal.iter().flat_map(|s| self.alphabets[s].moduli()).collect();
        let width = moduli.len();
        let mut heads: HashSet<(String, String)> = HashSet::new();
        let mut seen_tail: HashSet<String> = HashSet::new();
        for (cid, vars, _) in &self.codes {
            for v in vars {
                if self.internal.contains(v) && !seen_tail.insert(v.clone()) {
                    heads.insert((cid.clone(), v.clone()));
                }
            }
        }
        let mut acc: HashSet<Element> = HashSet::from([vec![0; width]]);
        for (cid, vars, words) in &self.codes {
            let mut contrib: HashSet<Element> = HashSet::new();
            for w in words {
                let mut x = vec![0u64; width];
                let mut off = 0;
                for v in vars {
                    let d = self.alphabets[v].dim();
                    let local = &w[off..off + d];
                    off += d;
                    if let Some(&p) = pos.get(v) {
                        let a = &self.alphabets[v];
                        let val = if heads.contains(&(cid.clone(), v.clone())) {
                            a.neg(&self.inverse[v][local])
                        } else {
                            local.to_vec()
                        };
                        for (k, y) in val.iter().enumerate() {
                            x[p + k] = (x[p + k] + y) % moduli[p + k];
                        }
                    }
                }
                contrib.insert(x);
            }
            let mut next = HashSet::new();
            for a in &acc {
                for b in &contrib {
                    next.insert(a.iter().zip(b).zip(&moduli).map(|((x, y), m)| (x + y) % m).collect::<Element>());
                }
                if next.len() as u128 > ORACLE_CAP {
                    return Err(Error::TooLargeToEnumerate { size: next.len() as u128, cap: ORACLE_CAP });
                }
            }
            acc = next;
        }
        Ok(acc)
    }

    /// Order of the internal state configuration space.
    pub fn internal_state_order(&self) -> u128 {
        self.internal.iter().map(|s| self.alphabets[s].order()).product()
    }

    /// Value at the head end of an internal state in a configuration.
    pub fn head_value(&self, config: &HashMap<String, Element>, state: &str) -> Element {
        self.tables[state][&config[state]].clone()
    }

    /// A-posteriori marginals: every configuration is weighted by the product
    /// of the priors of its symbols (missing priors count as uniform), and
    /// weights are summed per value of each external and internal variable.
    pub fn marginals<W>(&self, priors: &HashMap<String, Vec<W>>) -> HashMap<String, Vec<W>>
    where
        W: Clone + Zero + One + Add<Output = W> + Mul<Output = W>,
    {
        let mut out: HashMap<String, Vec<W>> = HashMap::new();
        for l in self.external.iter().chain(&self.internal) {
            out.insert(l.clone(), vec![W::zero(); self.alphabets[l].order() as usize]);
        }
        for c in &self.configs {
            let mut w = W::one();
            for (l, p) in priors {
                if let Some(v) = c.get(l) {
                    w = w * p[self.alphabets[l].index_of(v)].clone();
                }
            }
            for (l, v) in c {
                let i = self.alphabets[l].index_of(v);
                let slot = &mut out.get_mut(l).unwrap()[i];
                *slot = slot.clone() + w.clone();
            }
        }
        out
    }
}
