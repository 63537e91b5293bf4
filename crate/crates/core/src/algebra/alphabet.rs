//! Finite abelian value domains: vector spaces over prime fields and products
//! of cyclic groups, plus labelled direct products of them.

use std::fmt;
use std::ops::Range;

use super::zmod::{addmod, is_prime, lcm, negmod};
use crate::error::{Error, Result};

/// A value of an alphabet: one residue per coordinate.
pub type Element = Vec<u64>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Alphabet {
    /// `GF(p)^dim`.
    VectorSpace { p: u64, dim: usize },
    /// `Z_{m1} × … × Z_{mr}`.
    Group { moduli: Vec<u64> },
}

impl Alphabet {
    pub fn field(p: u64, dim: usize) -> Result<Alphabet> {
        if !is_prime(p) {
            return Err(Error::InvalidAlphabet(format!("{p} is not prime")));
        }
        Ok(Alphabet::VectorSpace { p, dim })
    }

    pub fn cyclic(moduli: Vec<u64>) -> Result<Alphabet> {
        if let Some(m) = moduli.iter().find(|&&m| m < 2) {
            return Err(Error::InvalidAlphabet(format!("modulus {m} is below 2")));
        }
        Ok(Alphabet::Group { moduli })
    }

    /// `GF(2)^dim`.
    pub fn binary(dim: usize) -> Alphabet {
        Alphabet::VectorSpace { p: 2, dim }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            Alphabet::VectorSpace { p, dim } => Alphabet::field(*p, *dim).map(|_| ()),
            Alphabet::Group { moduli } => Alphabet::cyclic(moduli.clone()).map(|_| ()),
        }
    }

    pub fn moduli(&self) -> Vec<u64> {
        match self {
            Alphabet::VectorSpace { p, dim } => vec![*p; *dim],
            Alphabet::Group { moduli } => moduli.clone(),
        }
    }

    /// Number of coordinates.
    pub fn dim(&self) -> usize {
        match self {
            Alphabet::VectorSpace { dim, .. } => *dim,
            Alphabet::Group { moduli } => moduli.len(),
        }
    }

    pub fn order(&self) -> u128 {
        self.moduli().iter().fold(1u128, |acc, &m| acc.saturating_mul(m as u128))
    }

    /// The prime of a vector-space alphabet.
    pub fn field_prime(&self) -> Option<u64> {
        match self {
            Alphabet::VectorSpace { p, .. } => Some(*p),
            Alphabet::Group { .. } => None,
        }
    }

    pub fn exponent(&self) -> u64 {
        self.moduli().iter().fold(1, |acc, &m| lcm(acc, m))
    }

    /// True when both alphabets have the same coordinate moduli.
    pub fn same_shape(&self, other: &Alphabet) -> bool {
        self.moduli() == other.moduli()
    }

    pub fn contains(&self, e: &[u64]) -> bool {
        let m = self.moduli();
        e.len() == m.len() && e.iter().zip(&m).all(|(x, m)| x < m)
    }

    pub fn check(&self, e: &[u64]) -> Result<()> {
        if self.contains(e) {
            Ok(())
        } else {
            Err(Error::ElementOutOfRange(format!("{e:?} not in {self}")))
        }
    }

    pub fn zero(&self) -> Element {
        vec![0; self.dim()]
    }

    pub fn add(&self, a: &[u64], b: &[u64]) -> Element {
        self.moduli().iter().zip(a.iter().zip(b)).map(|(&m, (&x, &y))| addmod(x, y, m)).collect()
    }

    pub fn neg(&self, a: &[u64]) -> Element {
        self.moduli().iter().zip(a).map(|(&m, &x)| negmod(x, m)).collect()
    }

    /// Position of `e` in the lexicographic enumeration (first coordinate most significant).
    pub fn index_of(&self, e: &[u64]) -> usize {
        self.moduli().iter().zip(e).fold(0usize, |acc, (&m, &x)| acc * m as usize + x as usize)
    }

    pub fn element_at(&self, mut idx: usize) -> Element {
        let m = self.moduli();
        let mut e = vec![0u64; m.len()];
        for i in (0..m.len()).rev() {
            e[i] = (idx % m[i] as usize) as u64;
            idx /= m[i] as usize;
        }
        e
    }

    /// All elements in lexicographic order.
    pub fn elements(&self) -> Vec<Element> {
        (0..self.order() as usize).map(|i| self.element_at(i)).collect()
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Alphabet::VectorSpace { p, dim } => write!(f, "GF({p})^{dim}"),
            Alphabet::Group { moduli } if moduli.is_empty() => write!(f, "{{0}}"),
            Alphabet::Group { moduli } => {
                let parts: Vec<String> = moduli.iter().map(|m| format!("Z{m}")).collect();
                write!(f, "{}", parts.join("x"))
            }
        }
    }
}

/// An ordered, labelled direct product of alphabets.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct ProductSpace {
    factors: Vec<(String, Alphabet)>,
}

impl ProductSpace {
    pub fn new(factors: Vec<(String, Alphabet)>) -> Result<ProductSpace> {
        for (i, (l, a)) in factors.iter().enumerate() {
            a.validate()?;
            if factors[..i].iter().any(|(m, _)| m == l) {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        Ok(ProductSpace { factors })
    }

    /// A single-factor space.
    pub fn single(label: &str, alphabet: Alphabet) -> ProductSpace {
        ProductSpace { factors: vec![(label.to_string(), alphabet)] }
    }

    pub fn factors(&self) -> &[(String, Alphabet)] {
        &self.factors
    }

    pub fn labels(&self) -> Vec<String> {
        self.factors.iter().map(|(l, _)| l.clone()).collect()
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn has(&self, label: &str) -> bool {
        self.factors.iter().any(|(l, _)| l == label)
    }

    pub fn alphabet(&self, label: &str) -> Result<&Alphabet> {
        self.factors
            .iter()
            .find(|(l, _)| l == label)
            .map(|(_, a)| a)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    /// Total number of coordinates.
    pub fn width(&self) -> usize {
        self.factors.iter().map(|(_, a)| a.dim()).sum()
    }

    pub fn moduli(&self) -> Vec<u64> {
        self.factors.iter().flat_map(|(_, a)| a.moduli()).collect()
    }

    pub fn order(&self) -> u128 {
        self.factors.iter().fold(1u128, |acc, (_, a)| acc.saturating_mul(a.order()))
    }

    /// Coordinate range of a factor.
    pub fn range(&self, label: &str) -> Result<Range<usize>> {
        let mut off = 0;
        for (l, a) in &self.factors {
            if l == label {
                return Ok(off..off + a.dim());
            }
            off += a.dim();
        }
        Err(Error::UnknownLabel(label.to_string()))
    }

    /// Column indices of the given factors, in the given order.
    pub fn columns(&self, labels: &[String]) -> Result<Vec<usize>> {
        let mut cols = Vec::new();
        for l in labels {
            cols.extend(self.range(l)?);
        }
        Ok(cols)
    }

    /// The sub-product on `labels`, in the given order.
    pub fn sub(&self, labels: &[String]) -> Result<ProductSpace> {
        let mut f = Vec::new();
        for l in labels {
            if f.iter().any(|(m, _): &(String, Alphabet)| m == l) {
                return Err(Error::DuplicateLabel(l.clone()));
            }
            f.push((l.clone(), self.alphabet(l)?.clone()));
        }
        Ok(ProductSpace { factors: f })
    }

    /// Labels not in `labels`, in ambient order.
    pub fn complement(&self, labels: &[String]) -> Vec<String> {
        self.factors.iter().filter(|(l, _)| !labels.contains(l)).map(|(l, _)| l.clone()).collect()
    }

    pub fn concat(&self, other: &ProductSpace) -> Result<ProductSpace> {
        let mut f = self.factors.clone();
        f.extend(other.factors.iter().cloned());
        ProductSpace::new(f)
    }

    /// Same alphabets, new labels.
    pub fn relabel(&self, labels: &[String]) -> Result<ProductSpace> {
        if labels.len() != self.factors.len() {
            return Err(Error::AmbientMismatch);
        }
        ProductSpace::new(labels.iter().cloned().zip(self.factors.iter().map(|(_, a)| a.clone())).collect())
    }

    /// True when the two spaces have the same alphabets in the same order.
    pub fn same_shape(&self, other: &ProductSpace) -> bool {
        self.factors.len() == other.factors.len()
            && self.factors.iter().zip(&other.factors).all(|((_, a), (_, b))| a == b)
    }

    pub fn contains(&self, e: &[u64]) -> bool {
        let m = self.moduli();
        e.len() == m.len() && e.iter().zip(&m).all(|(x, m)| x < m)
    }

    pub fn zero(&self) -> Element {
        vec![0; self.width()]
    }

    pub fn add(&self, a: &[u64], b: &[u64]) -> Element {
        self.moduli().iter().zip(a.iter().zip(b)).map(|(&m, (&x, &y))| addmod(x, y, m)).collect()
    }

    pub fn neg(&self, a: &[u64]) -> Element {
        self.moduli().iter().zip(a).map(|(&m, &x)| negmod(x, m)).collect()
    }

    /// Slice of `e` belonging to a factor.
    pub fn part<'a>(&self, e: &'a [u64], label: &str) -> Result<&'a [u64]> {
        Ok(&e[self.range(label)?])
    }

    /// True when every factor is `GF(p)^k` for one common prime `p`.
    pub fn common_field(&self) -> Option<u64> {
        let mut p = None;
        for (_, a) in &self.factors {
            match (a.field_prime(), p) {
                (None, _) => return None,
                (Some(q), None) => p = Some(q),
                (Some(q), Some(r)) if q != r => return None,
                _ => {}
            }
        }
        p
    }

    /// The pairing `⟨x, y⟩ = Σ x_i y_i / m_i ∈ R/Z` as a reduced fraction `(num, den)` in `[0, 1)`.
    pub fn pairing(&self, x: &[u64], y: &[u64]) -> (u64, u64) {
        let m = self.moduli();
        let n = m.iter().fold(1, |acc, &mi| lcm(acc, mi));
        let mut s = 0u128;
        for ((&xi, &yi), &mi) in x.iter().zip(y).zip(&m) {
            s = (s + (xi as u128 * yi as u128 % mi as u128) * (n / mi) as u128) % n as u128;
        }
        let s = s as u64;
        let g = super::zmod::gcd(s, n);
        if s == 0 {
            (0, 1)
        } else {
            (s / g, n / g)
        }
    }
}

impl fmt::Display for ProductSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factors.iter().map(|(l, a)| format!("{l}:{a}")).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_requires_prime() {
        assert!(Alphabet::field(4, 1).is_err());
        assert!(Alphabet::field(5, 2).is_ok());
        assert!(Alphabet::cyclic(vec![1]).is_err());
    }

    #[test]
    fn lexicographic_index_roundtrip() {
        let a = Alphabet::cyclic(vec![2, 3, 4]).unwrap();
        assert_eq!(a.order(), 24);
        for (i, e) in a.elements().iter().enumerate() {
            assert_eq!(a.index_of(e), i);
        }
        assert_eq!(a.element_at(1), vec![0, 0, 1]);
        assert_eq!(a.element_at(4), vec![0, 1, 0]);
    }

    #[test]
    fn pairing_is_bihomomorphic_on_z4_times_z2() {
        let s = ProductSpace::new(vec![
            ("a".into(), Alphabet::cyclic(vec![4]).unwrap()),
            ("b".into(), Alphabet::binary(1)),
        ])
        .unwrap();
        let els: Vec<Element> = (0..4).flat_map(|x| (0..2).map(move |y| vec![x, y])).collect();
        let frac = |(n, d): (u64, u64)| n as f64 / d as f64;
        for x in &els {
            assert_eq!(s.pairing(x, &s.zero()), (0, 1));
            for y in &els {
                for z in &els {
                    let lhs = frac(s.pairing(&s.add(x, y), z));
                    let rhs = (frac(s.pairing(x, z)) + frac(s.pairing(y, z))).fract();
                    assert!((lhs - rhs).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn duplicate_labels_rejected() {
        let a = Alphabet::binary(1);
        assert!(ProductSpace::new(vec![("x".into(), a.clone()), ("x".into(), a)]).is_err());
    }
}
