//! Quotients `T/K` of subgroups, materialized as alphabets of invariant-factor
//! type together with projection and lifting maps.

use super::alphabet::{Alphabet, Element, ProductSpace};
use super::subgroup::{CodeSubgroup, Lift};
use super::zmod::{addmod, mulmod, smith, Howell};
use crate::error::{Error, Result};

/// The natural map `T → T/K` with an explicit section back into `T`.
#[derive(Clone, Debug)]
pub struct QuotientMap {
    numerator: CodeSubgroup,
    denominator: CodeSubgroup,
    target: Alphabet,
    lift: Lift,
    basis: Howell,
    v: Vec<Vec<u64>>,
    vinv: Vec<Vec<u64>>,
    keep: Vec<usize>,
    moduli: Vec<u64>,
}

impl QuotientMap {
    pub fn new(numerator: &CodeSubgroup, denominator: &CodeSubgroup) -> Result<QuotientMap> {
        if !denominator.is_subgroup_of(numerator) {
            return Err(Error::NotASubgroup("denominator is not contained in the numerator".into()));
        }
        let amb = numerator.ambient();
        let lift = Lift::new(&amb.moduli());
        let n = lift.n;
        let basis = lift.howell(numerator.generators());
        let u = basis.rows.len();
        let w = amb.width();
        // relations: {c : Σ c_k t_k ∈ K}, via the zero-prefix section of {(Σ c_k t_k − κ, c)}
        let mut rows: Vec<Vec<u64>> = Vec::new();
        for (k, t) in basis.rows.iter().enumerate() {
            let mut r = t.clone();
            r.extend((0..u).map(|i| u64::from(i == k)));
            rows.push(r);
        }
        for kappa in denominator.generators() {
            let mut r = lift.up(kappa);
            r.extend(std::iter::repeat_n(0, u));
            rows.push(r);
        }
        let h = Howell::new(&rows, w + u, n);
        let rel: Vec<Vec<u64>> = h
            .rows
            .iter()
            .zip(&h.pivots)
            .filter(|(_, &c)| c >= w)
            .map(|(r, _)| r[w..].to_vec())
            .collect();
        let s = smith(&rel, u, n);
        let keep: Vec<usize> = (0..u).filter(|&i| s.diag[i] > 1).collect();
        let moduli: Vec<u64> = keep.iter().map(|&i| s.diag[i]).collect();
        let target = match amb.common_field() {
            Some(p) if moduli.iter().all(|&d| d == p) => Alphabet::VectorSpace { p, dim: moduli.len() },
            _ => Alphabet::Group { moduli: moduli.clone() },
        };
        Ok(QuotientMap {
            numerator: numerator.clone(),
            denominator: denominator.clone(),
            target,
            lift,
            basis,
            v: s.v,
            vinv: s.vinv,
            keep,
            moduli,
        })
    }

    /// `C|V / C:V` for the factor `label` of `code`.
    pub fn effective(code: &CodeSubgroup, label: &str) -> Result<QuotientMap> {
        let part = vec![label.to_string()];
        QuotientMap::new(&code.project(&part)?, &code.cross_section(&part)?)
    }

    pub fn numerator(&self) -> &CodeSubgroup {
        &self.numerator
    }

    pub fn denominator(&self) -> &CodeSubgroup {
        &self.denominator
    }

    pub fn source(&self) -> &ProductSpace {
        self.numerator.ambient()
    }

    /// The quotient alphabet.
    pub fn target(&self) -> &Alphabet {
        &self.target
    }

    pub fn order(&self) -> u128 {
        self.target.order()
    }

    /// Image of `s ∈ T` in the quotient alphabet.
    pub fn project(&self, s: &[u64]) -> Result<Element> {
        let n = self.lift.n;
        let mut x = self.lift.up(s);
        let c = self.basis.reduce(&mut x);
        if x.iter().any(|&v| v != 0) {
            return Err(Error::NotASubgroup(format!("{s:?} is outside the numerator")));
        }
        Ok(self
            .keep
            .iter()
            .zip(&self.moduli)
            .map(|(&i, &d)| {
                let y = c.iter().zip(&self.v).fold(0, |acc, (&ck, row)| addmod(acc, mulmod(ck, row[i], n), n));
                y % d
            })
            .collect())
    }

    /// A representative in `T` of the coset `q`.
    pub fn lift(&self, q: &[u64]) -> Element {
        let n = self.lift.n;
        let u = self.basis.rows.len();
        let mut ext = vec![0u64; u];
        for (&i, &qi) in self.keep.iter().zip(q) {
            ext[i] = qi;
        }
        let c: Vec<u64> = (0..u)
            .map(|k| ext.iter().zip(&self.vinv).fold(0, |acc, (&e, row)| addmod(acc, mulmod(e, row[k], n), n)))
            .collect();
        let mut x = vec![0u64; self.lift.scale.len()];
        for (ck, row) in c.iter().zip(&self.basis.rows) {
            for (xi, &ri) in x.iter_mut().zip(row) {
                *xi = addmod(*xi, mulmod(*ck, ri, n), n);
            }
        }
        self.lift.down(&x)
    }

    pub fn is_identity_like(&self) -> bool {
        self.numerator.is_full() && self.denominator.is_trivial()
    }
}
