//! Subgroups of labelled product spaces in canonical generator form.
//!
//! Every coordinate `Z_m` is embedded in `Z_N` (with `N` the lcm of all
//! moduli) by multiplication with `N/m`; the Howell form of the lifted rows,
//! mapped back, is the canonical generator matrix.

use std::collections::HashMap;
use std::fmt;

use super::alphabet::{Element, ProductSpace};
use super::zmod::{addmod, gcd, lcm, mulmod, negmod, Howell};
use crate::error::{Error, Result};

/// Default cap on the number of elements produced by enumeration.
pub const DEFAULT_ENUMERATION_CAP: u128 = 1 << 20;

/// Embedding of `Π Z_{m_i}` into `Z_N^n`.
#[derive(Clone, Debug)]
pub(crate) struct Lift {
    pub n: u64,
    pub scale: Vec<u64>,
}

impl Lift {
    pub fn new(moduli: &[u64]) -> Lift {
        let n = moduli.iter().fold(1, |acc, &m| lcm(acc, m));
        Lift { n, scale: moduli.iter().map(|&m| n / m).collect() }
    }

    pub fn up(&self, v: &[u64]) -> Vec<u64> {
        v.iter().zip(&self.scale).map(|(&x, &s)| mulmod(x, s, self.n)).collect()
    }

    pub fn down(&self, v: &[u64]) -> Vec<u64> {
        v.iter().zip(&self.scale).map(|(&x, &s)| x / s).collect()
    }

    pub fn howell(&self, rows: &[Vec<u64>]) -> Howell {
        let lifted: Vec<Vec<u64>> = rows.iter().map(|r| self.up(r)).collect();
        Howell::new(&lifted, self.scale.len(), self.n)
    }
}

/// Canonical rows of the subgroup generated by `rows` in `Π Z_{moduli}`.
pub(crate) fn canonical_rows(moduli: &[u64], rows: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let lift = Lift::new(moduli);
    lift.howell(rows).rows.iter().map(|r| lift.down(r)).collect()
}

/// Generators of `{x : (0, x) ∈ H}` where `H` is generated by `rows` and the
/// zero block is the first `prefix` coordinates. Returned in suffix coordinates.
pub(crate) fn zero_prefix_rows(moduli: &[u64], rows: &[Vec<u64>], prefix: usize) -> Vec<Vec<u64>> {
    let lift = Lift::new(moduli);
    let h = lift.howell(rows);
    h.rows
        .iter()
        .zip(&h.pivots)
        .filter(|(_, &c)| c >= prefix)
        .map(|(r, _)| lift.down(r)[prefix..].to_vec())
        .collect()
}

/// Finds `x` with `(y, x) ∈ H`, where `H` is generated by `rows` and `y`
/// occupies the first `y.len()` coordinates.
pub(crate) fn solve_prefix(moduli: &[u64], rows: &[Vec<u64>], y: &[u64]) -> Option<Vec<u64>> {
    let lift = Lift::new(moduli);
    let h = lift.howell(rows);
    let p = y.len();
    let mut v = y.to_vec();
    v.resize(moduli.len(), 0);
    let mut v = lift.up(&v);
    h.reduce_upto(&mut v, p);
    if v[..p].iter().any(|&x| x != 0) {
        return None;
    }
    let rest = lift.down(&v);
    Some(rest[p..].iter().zip(&moduli[p..]).map(|(&x, &m)| negmod(x, m)).collect())
}

/// A subgroup of a product space held in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CodeSubgroup {
    ambient: ProductSpace,
    rows: Vec<Element>,
}

impl CodeSubgroup {
    /// The subgroup generated by `rows`.
    pub fn canonicalize(rows: &[Element], ambient: &ProductSpace) -> Result<CodeSubgroup> {
        let m = ambient.moduli();
        for (i, r) in rows.iter().enumerate() {
            if r.len() != m.len() {
                return Err(Error::RowOutOfAmbient {
                    row: i,
                    reason: format!("length {} but ambient width is {}", r.len(), m.len()),
                });
            }
            if let Some((x, mi)) = r.iter().zip(&m).find(|(x, mi)| x >= mi) {
                return Err(Error::RowOutOfAmbient { row: i, reason: format!("residue {x} not below {mi}") });
            }
        }
        Ok(CodeSubgroup { ambient: ambient.clone(), rows: canonical_rows(&m, rows) })
    }

    /// Like `canonicalize`, reducing residues instead of rejecting them.
    pub fn generated_by(rows: &[Element], ambient: &ProductSpace) -> Result<CodeSubgroup> {
        let m = ambient.moduli();
        let reduced: Vec<Element> = rows
            .iter()
            .map(|r| r.iter().zip(&m).map(|(&x, &mi)| x % mi).collect())
            .collect();
        CodeSubgroup::canonicalize(&reduced, ambient)
    }

    pub fn zero(ambient: &ProductSpace) -> CodeSubgroup {
        CodeSubgroup { ambient: ambient.clone(), rows: vec![] }
    }

    pub fn full(ambient: &ProductSpace) -> CodeSubgroup {
        let w = ambient.width();
        let rows: Vec<Element> = (0..w).map(|i| (0..w).map(|j| u64::from(i == j)).collect()).collect();
        CodeSubgroup { ambient: ambient.clone(), rows: canonical_rows(&ambient.moduli(), &rows) }
    }

    pub fn ambient(&self) -> &ProductSpace {
        &self.ambient
    }

    /// Canonical generator rows.
    pub fn generators(&self) -> &[Element] {
        &self.rows
    }

    /// Per-row radices: each element is uniquely `Σ c_k row_k` with `0 ≤ c_k < radix_k`.
    pub fn radices(&self) -> Vec<u64> {
        let m = self.ambient.moduli();
        self.rows
            .iter()
            .map(|r| {
                let c = r.iter().position(|&x| x != 0).expect("nonzero canonical row");
                m[c] / r[c]
            })
            .collect()
    }

    pub fn order(&self) -> u128 {
        self.radices().iter().fold(1u128, |acc, &r| acc.saturating_mul(r as u128))
    }

    /// `log_p |C|` when the order is a power of `p`.
    pub fn dim_over(&self, p: u64) -> Option<u32> {
        let mut o = self.order();
        let mut d = 0;
        while o > 1 {
            if !o.is_multiple_of(p as u128) {
                return None;
            }
            o /= p as u128;
            d += 1;
        }
        Some(d)
    }

    pub fn is_trivial(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.order() == self.ambient.order()
    }

    pub fn contains(&self, e: &[u64]) -> bool {
        if !self.ambient.contains(e) {
            return false;
        }
        let lift = Lift::new(&self.ambient.moduli());
        let h = lift.howell(&self.rows);
        let mut v = lift.up(e);
        h.reduce(&mut v);
        v.iter().all(|&x| x == 0)
    }

    pub fn is_subgroup_of(&self, other: &CodeSubgroup) -> bool {
        self.ambient == other.ambient && self.rows.iter().all(|r| other.contains(r))
    }

    /// Same generators in a relabelled ambient of identical shape.
    pub fn with_ambient(&self, ambient: &ProductSpace) -> Result<CodeSubgroup> {
        if !self.ambient.same_shape(ambient) {
            return Err(Error::AmbientMismatch);
        }
        Ok(CodeSubgroup { ambient: ambient.clone(), rows: self.rows.clone() })
    }

    pub fn relabel(&self, labels: &[String]) -> Result<CodeSubgroup> {
        let amb = self.ambient.relabel(labels)?;
        Ok(CodeSubgroup { ambient: amb, rows: self.rows.clone() })
    }

    /// Restricts each generator to the columns of `labels`, in that order.
    fn restrict_rows(&self, labels: &[String]) -> Result<Vec<Element>> {
        let cols = self.ambient.columns(labels)?;
        Ok(self.rows.iter().map(|r| cols.iter().map(|&c| r[c]).collect()).collect())
    }

    /// The same subgroup with factors reordered to `labels` (a permutation).
    pub fn permute(&self, labels: &[String]) -> Result<CodeSubgroup> {
        if labels.len() != self.ambient.len() {
            return Err(Error::BadPartition("permutation must list every factor".into()));
        }
        let amb = self.ambient.sub(labels)?;
        let rows = self.restrict_rows(labels)?;
        Ok(CodeSubgroup { rows: canonical_rows(&amb.moduli(), &rows), ambient: amb })
    }

    /// Projection `C|part`.
    pub fn project(&self, part: &[String]) -> Result<CodeSubgroup> {
        let amb = self.ambient.sub(part)?;
        let rows = self.restrict_rows(part)?;
        Ok(CodeSubgroup { rows: canonical_rows(&amb.moduli(), &rows), ambient: amb })
    }

    /// Cross-section `C:part = {a : (a, 0) ∈ C}`.
    pub fn cross_section(&self, part: &[String]) -> Result<CodeSubgroup> {
        let amb = self.ambient.sub(part)?;
        let rest = self.ambient.complement(part);
        let mut order = rest.clone();
        order.extend(part.iter().cloned());
        let prefix = self.ambient.sub(&rest)?.width();
        let rows = self.restrict_rows(&order)?;
        let moduli = self.ambient.sub(&order)?.moduli();
        let sect = zero_prefix_rows(&moduli, &rows, prefix);
        Ok(CodeSubgroup { rows: canonical_rows(&amb.moduli(), &sect), ambient: amb })
    }

    pub fn sum(&self, other: &CodeSubgroup) -> Result<CodeSubgroup> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch);
        }
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        Ok(CodeSubgroup { rows: canonical_rows(&self.ambient.moduli(), &rows), ambient: self.ambient.clone() })
    }

    pub fn intersect(&self, other: &CodeSubgroup) -> Result<CodeSubgroup> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch);
        }
        let m = self.ambient.moduli();
        let w = m.len();
        let mut moduli = m.clone();
        moduli.extend(&m);
        let mut rows = Vec::new();
        for r in &self.rows {
            let mut x = r.clone();
            x.extend(r);
            rows.push(x);
        }
        for r in &other.rows {
            let mut x = r.clone();
            x.extend(std::iter::repeat_n(0, w));
            rows.push(x);
        }
        let sect = zero_prefix_rows(&moduli, &rows, w);
        Ok(CodeSubgroup { rows: canonical_rows(&m, &sect), ambient: self.ambient.clone() })
    }

    /// The orthogonal subgroup under `⟨x, y⟩ = Σ x_i y_i / m_i`.
    pub fn orthogonal(&self) -> CodeSubgroup {
        let m = self.ambient.moduli();
        let lift = Lift::new(&m);
        let k = self.rows.len();
        let w = m.len();
        // graph of y ↦ (⟨row_r, y⟩ · N)_r over unit vectors y = e_i
        let mut moduli = vec![lift.n; k];
        moduli.extend(&m);
        let rows: Vec<Vec<u64>> = (0..w)
            .map(|i| {
                let mut x: Vec<u64> = self.rows.iter().map(|r| mulmod(r[i], lift.scale[i], lift.n)).collect();
                x.extend((0..w).map(|j| u64::from(i == j)));
                x
            })
            .collect();
        let ker = zero_prefix_rows(&moduli, &rows, k);
        CodeSubgroup { rows: canonical_rows(&m, &ker), ambient: self.ambient.clone() }
    }

    /// Direct product `self × other` over the concatenated ambient.
    pub fn product(&self, other: &CodeSubgroup) -> Result<CodeSubgroup> {
        let amb = self.ambient.concat(&other.ambient)?;
        let (w1, w2) = (self.ambient.width(), other.ambient.width());
        let mut rows = Vec::new();
        for r in &self.rows {
            let mut x = r.clone();
            x.extend(std::iter::repeat_n(0, w2));
            rows.push(x);
        }
        for r in &other.rows {
            let mut x = vec![0; w1];
            x.extend(r);
            rows.push(x);
        }
        Ok(CodeSubgroup { rows: canonical_rows(&amb.moduli(), &rows), ambient: amb })
    }

    /// Membership-preserving coefficient decomposition: returns `Some(x')` with
    /// `(y, x') ∈ C` where `y` fills the factors `given` (in order) and `x'`
    /// the remaining factors (in ambient order), or `None` if no such element exists.
    pub fn complete(&self, given: &[String], y: &[u64]) -> Result<Option<Element>> {
        let rest = self.ambient.complement(given);
        let mut order = given.to_vec();
        order.extend(rest.iter().cloned());
        let moduli = self.ambient.sub(&order)?.moduli();
        let rows = self.restrict_rows(&order)?;
        Ok(solve_prefix(&moduli, &rows, y))
    }

    /// Canonical representative of `e + D`.
    pub fn coset_key(&self, e: &[u64]) -> Element {
        let lift = Lift::new(&self.ambient.moduli());
        let h = lift.howell(&self.rows);
        let mut v = lift.up(e);
        h.reduce(&mut v);
        lift.down(&v)
    }

    pub fn enumerate(&self) -> Result<Elements> {
        self.enumerate_with_cap(DEFAULT_ENUMERATION_CAP)
    }

    pub fn enumerate_with_cap(&self, cap: u128) -> Result<Elements> {
        let size = self.order();
        if size > cap {
            return Err(Error::TooLargeToEnumerate { size, cap });
        }
        Ok(Elements {
            moduli: self.ambient.moduli(),
            radices: self.radices(),
            rows: self.rows.clone(),
            counter: vec![0; self.rows.len()],
            current: self.ambient.zero(),
            done: false,
        })
    }

    /// One representative per coset of `d` in `self`, the lexicographically
    /// smallest of each coset; the first is zero.
    pub fn quotient_transversal(&self, d: &CodeSubgroup) -> Result<Vec<Element>> {
        if !d.is_subgroup_of(self) {
            return Err(Error::NotASubgroup("denominator is not contained in the numerator".into()));
        }
        let lift = Lift::new(&self.ambient.moduli());
        let h = lift.howell(&d.rows);
        let mut best: HashMap<Vec<u64>, Element> = HashMap::new();
        for e in self.enumerate()? {
            let mut v = lift.up(&e);
            h.reduce(&mut v);
            best.entry(v).and_modify(|b| {
                if e < *b {
                    *b = e.clone();
                }
            })
            .or_insert(e);
        }
        let mut reps: Vec<Element> = best.into_values().collect();
        reps.sort();
        Ok(reps)
    }

    /// Applies `f` to the generators; the image of a homomorphism.
    pub fn map_rows<F: Fn(&[u64]) -> Element>(&self, target: &ProductSpace, f: F) -> Result<CodeSubgroup> {
        let rows: Vec<Element> = self.rows.iter().map(|r| f(r)).collect();
        CodeSubgroup::canonicalize(&rows, target)
    }

    /// Order of the element `e` in the ambient.
    pub fn element_order(ambient: &ProductSpace, e: &[u64]) -> u64 {
        ambient.moduli().iter().zip(e).fold(1, |acc, (&m, &x)| lcm(acc, m / gcd(x, m)))
    }
}

impl fmt::Display for CodeSubgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} order {}", self.ambient, self.order())?;
        for r in &self.rows {
            let s: Vec<String> = r.iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", s.join(" "))?;
        }
        Ok(())
    }
}

/// Iterator over the elements of a subgroup.
pub struct Elements {
    moduli: Vec<u64>,
    radices: Vec<u64>,
    rows: Vec<Element>,
    counter: Vec<u64>,
    current: Element,
    done: bool,
}

impl Iterator for Elements {
    type Item = Element;

    fn next(&mut self) -> Option<Element> {
        if self.done {
            return None;
        }
        let out = self.current.clone();
        // advance the mixed-radix counter, last row fastest
        let mut k = self.rows.len();
        loop {
            if k == 0 {
                self.done = true;
                break;
            }
            k -= 1;
            self.counter[k] += 1;
            let wrap = self.counter[k] == self.radices[k];
            for ((c, &x), &m) in self.current.iter_mut().zip(&self.rows[k]).zip(&self.moduli) {
                *c = if wrap {
                    addmod(*c, mulmod(negmod((self.radices[k] - 1) % m, m), x, m), m)
                } else {
                    addmod(*c, x, m)
                };
            }
            if wrap {
                self.counter[k] = 0;
            } else {
                break;
            }
        }
        Some(out)
    }
}
