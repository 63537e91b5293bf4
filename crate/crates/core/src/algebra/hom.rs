//! Homomorphisms between alphabets, their adjoints and inverses.

use super::alphabet::{Alphabet, Element, ProductSpace};
use super::subgroup::{solve_prefix, zero_prefix_rows};
use super::zmod::{addmod, mulmod, negmod};
use crate::error::{Error, Result};

/// A group homomorphism `source → target` acting on coordinate tuples:
/// `y_j = Σ_i matrix[j][i] · x_i mod n_j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Homomorphism {
    source: Alphabet,
    target: Alphabet,
    matrix: Vec<Vec<u64>>,
}

impl Homomorphism {
    /// Builds a homomorphism, reducing entries modulo the target moduli and
    /// checking that `m_i · e_i` maps to zero for every source coordinate.
    pub fn new(source: Alphabet, target: Alphabet, matrix: Vec<Vec<u64>>) -> Result<Homomorphism> {
        let (sm, tm) = (source.moduli(), target.moduli());
        if matrix.len() != tm.len() || matrix.iter().any(|r| r.len() != sm.len()) {
            return Err(Error::NotWellDefined(format!(
                "matrix must be {}x{}",
                tm.len(),
                sm.len()
            )));
        }
        let matrix: Vec<Vec<u64>> = matrix
            .into_iter()
            .zip(&tm)
            .map(|(r, &n)| r.into_iter().map(|x| x % n).collect())
            .collect();
        for (i, &m) in sm.iter().enumerate() {
            for (j, &n) in tm.iter().enumerate() {
                if mulmod(matrix[j][i], m, n) != 0 {
                    return Err(Error::NotWellDefined(format!(
                        "{m}·e{i} maps to a nonzero value in coordinate {j} (mod {n})"
                    )));
                }
            }
        }
        Ok(Homomorphism { source, target, matrix })
    }

    pub fn identity(a: &Alphabet) -> Homomorphism {
        Homomorphism::scalar(a, 1)
    }

    pub fn negation(a: &Alphabet) -> Homomorphism {
        let m = a.moduli();
        let matrix = (0..m.len())
            .map(|j| (0..m.len()).map(|i| if i == j { negmod(1, m[j]) } else { 0 }).collect())
            .collect();
        Homomorphism { source: a.clone(), target: a.clone(), matrix }
    }

    /// Multiplication by the integer `k`.
    pub fn scalar(a: &Alphabet, k: u64) -> Homomorphism {
        let m = a.moduli();
        let matrix = (0..m.len())
            .map(|j| (0..m.len()).map(|i| if i == j { k % m[j] } else { 0 }).collect())
            .collect();
        Homomorphism { source: a.clone(), target: a.clone(), matrix }
    }

    pub fn source(&self) -> &Alphabet {
        &self.source
    }

    pub fn target(&self) -> &Alphabet {
        &self.target
    }

    pub fn matrix(&self) -> &[Vec<u64>] {
        &self.matrix
    }

    pub fn apply(&self, x: &[u64]) -> Element {
        let tm = self.target.moduli();
        self.matrix
            .iter()
            .zip(&tm)
            .map(|(row, &n)| row.iter().zip(x).fold(0, |acc, (&a, &xi)| addmod(acc, mulmod(a, xi % n, n), n)))
            .collect()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Homomorphism) -> Result<Homomorphism> {
        if other.target != self.source {
            return Err(Error::AlphabetMismatch("composition of incompatible maps".into()));
        }
        let sm = other.source.moduli();
        let cols: Vec<Element> = (0..sm.len())
            .map(|i| {
                let e: Element = (0..sm.len()).map(|k| u64::from(k == i)).collect();
                self.apply(&other.apply(&e))
            })
            .collect();
        let tm = self.target.moduli();
        let matrix = (0..tm.len()).map(|j| cols.iter().map(|c| c[j]).collect()).collect();
        Homomorphism::new(other.source.clone(), self.target.clone(), matrix)
    }

    /// The adjoint `φ̂: target → source` with `⟨φ̂(y), x⟩ = ⟨y, φ(x)⟩`.
    pub fn adjoint(&self) -> Homomorphism {
        let (sm, tm) = (self.source.moduli(), self.target.moduli());
        let matrix = (0..sm.len())
            .map(|i| {
                (0..tm.len())
                    .map(|j| {
                        let a = self.matrix[j][i] as u128 * sm[i] as u128;
                        ((a / tm[j] as u128) % sm[i] as u128) as u64
                    })
                    .collect()
            })
            .collect();
        Homomorphism { source: self.target.clone(), target: self.source.clone(), matrix }
    }

    fn graph_rows(&self) -> (Vec<u64>, Vec<Vec<u64>>) {
        let (sm, tm) = (self.source.moduli(), self.target.moduli());
        let mut moduli = tm.clone();
        moduli.extend(&sm);
        let rows = (0..sm.len())
            .map(|i| {
                let e: Element = (0..sm.len()).map(|k| u64::from(k == i)).collect();
                let mut r = self.apply(&e);
                r.extend(e);
                r
            })
            .collect();
        (moduli, rows)
    }

    /// Generators of the kernel, in source coordinates.
    pub fn kernel_rows(&self) -> Vec<Element> {
        let (moduli, rows) = self.graph_rows();
        zero_prefix_rows(&moduli, &rows, self.target.dim())
    }

    /// Some `x` with `φ(x) = y`.
    pub fn preimage(&self, y: &[u64]) -> Option<Element> {
        let (moduli, rows) = self.graph_rows();
        solve_prefix(&moduli, &rows, y)
    }

    pub fn is_isomorphism(&self) -> bool {
        self.source.order() == self.target.order() && self.kernel_rows().is_empty()
    }

    pub fn inverse(&self) -> Result<Homomorphism> {
        if !self.is_isomorphism() {
            return Err(Error::NotAnIsomorphism);
        }
        let tm = self.target.moduli();
        let cols: Vec<Element> = (0..tm.len())
            .map(|j| {
                let e: Element = (0..tm.len()).map(|k| u64::from(k == j)).collect();
                self.preimage(&e).ok_or(Error::NotAnIsomorphism)
            })
            .collect::<Result<_>>()?;
        let sm = self.source.moduli();
        let matrix = (0..sm.len()).map(|i| cols.iter().map(|c| c[i]).collect()).collect();
        Homomorphism::new(self.target.clone(), self.source.clone(), matrix)
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target && *self == Homomorphism::identity(&self.source)
    }

    /// Checks `⟨φ̂(y), x⟩ = ⟨y, φ(x)⟩` for every pair of elements.
    pub fn adjoint_identity_holds(&self) -> bool {
        let adj = self.adjoint();
        let ps = ProductSpace::single("s", self.source.clone());
        let pt = ProductSpace::single("t", self.target.clone());
        let xs = self.source.elements();
        let ys = self.target.elements();
        xs.iter().all(|x| ys.iter().all(|y| ps.pairing(&adj.apply(y), x) == pt.pairing(y, &self.apply(x))))
    }
}
