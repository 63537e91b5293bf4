//! Decomposition of a subdirect product `C ⊆ A × B` into two interface nodes
//! joined by an isomorphism between `C|A / C:A` and `C|B / C:B`.

use super::alphabet::{Element, ProductSpace};
use super::quotient::QuotientMap;
use super::subgroup::CodeSubgroup;
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct FtspDecomposition {
    pub labels: Vec<String>,
    pub part_a: Vec<String>,
    pub part_b: Vec<String>,
    pub quotient_a: QuotientMap,
    pub quotient_b: QuotientMap,
    /// Interface node `{(a, a + C:A)}` over `A × (C|A / C:A)`.
    pub interface_a: CodeSubgroup,
    /// Interface node over `B × (C|B / C:B)`.
    pub interface_b: CodeSubgroup,
    /// Graph of the isomorphism between the two quotients.
    pub iso: CodeSubgroup,
    /// The isomorphism as pairs of coset representatives `(a, b)`.
    pub pairs: Vec<(Element, Element)>,
}

/// Label of the internal quotient variable on side A.
pub const QA: &str = "#qa";
/// Label of the internal quotient variable on side B.
pub const QB: &str = "#qb";

fn interface(code: &CodeSubgroup, part: &[String], q: &QuotientMap, qlabel: &str) -> Result<CodeSubgroup> {
    let proj = code.project(part)?;
    let amb = proj.ambient().concat(&ProductSpace::single(qlabel, q.target().clone()))?;
    proj.map_rows(&amb, |r| {
        let mut x = r.to_vec();
        x.extend(q.project(r).expect("row of the projection"));
        x
    })
}

pub fn ftsp_decompose(code: &CodeSubgroup, part_a: &[String]) -> Result<FtspDecomposition> {
    let amb = code.ambient();
    if part_a.iter().any(|l| !amb.has(l)) {
        return Err(Error::BadPartition("unknown label in the first part".into()));
    }
    let part_b = amb.complement(part_a);
    if part_a.is_empty() || part_b.is_empty() {
        return Err(Error::BadPartition("both parts must be nonempty".into()));
    }
    let part_a: Vec<String> = amb.labels().into_iter().filter(|l| part_a.contains(l)).collect();
    let qa = QuotientMap::new(&code.project(&part_a)?, &code.cross_section(&part_a)?)?;
    let qb = QuotientMap::new(&code.project(&part_b)?, &code.cross_section(&part_b)?)?;
    let cols_a = amb.columns(&part_a)?;
    let cols_b = amb.columns(&part_b)?;
    let iso_amb = ProductSpace::new(vec![(QA.into(), qa.target().clone()), (QB.into(), qb.target().clone())])?;
    let iso = code.map_rows(&iso_amb, |r| {
        let a: Element = cols_a.iter().map(|&c| r[c]).collect();
        let b: Element = cols_b.iter().map(|&c| r[c]).collect();
        let mut x = qa.project(&a).expect("in projection");
        x.extend(qb.project(&b).expect("in projection"));
        x
    })?;
    let da = qa.target().dim();
    let mut pairs = Vec::new();
    for e in iso.enumerate()? {
        pairs.push((qa.lift(&e[..da]), qb.lift(&e[da..])));
    }
    pairs.sort();
    Ok(FtspDecomposition {
        labels: amb.labels(),
        interface_a: interface(code, &part_a, &qa, QA)?,
        interface_b: interface(code, &part_b, &qb, QB)?,
        part_a,
        part_b,
        quotient_a: qa,
        quotient_b: qb,
        iso,
        pairs,
    })
}

impl FtspDecomposition {
    /// Joins the three constraints and marginalizes the quotient variables.
    pub fn reassemble(&self) -> Result<CodeSubgroup> {
        let ia = self.interface_a.ambient();
        let ib = self.interface_b.ambient();
        let wa = ia.width() - self.quotient_a.target().dim();
        let wb = ib.width() - self.quotient_b.target().dim();
        let (da, db) = (self.quotient_a.target().dim(), self.quotient_b.target().dim());
        // ambient: A, B, qa (interface), qb (interface), qa (iso), qb (iso)
        let a_amb = ia.sub(&self.part_a)?;
        let b_amb = ib.sub(&self.part_b)?;
        let qa = ProductSpace::single(QA, self.quotient_a.target().clone());
        let qb = ProductSpace::single(QB, self.quotient_b.target().clone());
        let qa2 = ProductSpace::single("#qa'", self.quotient_a.target().clone());
        let qb2 = ProductSpace::single("#qb'", self.quotient_b.target().clone());
        let amb = a_amb.concat(&b_amb)?.concat(&qa)?.concat(&qb)?.concat(&qa2)?.concat(&qb2)?;
        let w = amb.width();
        let mut rows: Vec<Element> = Vec::new();
        for r in self.interface_a.generators() {
            let mut x = vec![0; w];
            x[..wa].copy_from_slice(&r[..wa]);
            x[wa + wb..wa + wb + da].copy_from_slice(&r[wa..]);
            rows.push(x);
        }
        for r in self.interface_b.generators() {
            let mut x = vec![0; w];
            x[wa..wa + wb].copy_from_slice(&r[..wb]);
            x[wa + wb + da..wa + wb + da + db].copy_from_slice(&r[wb..]);
            rows.push(x);
        }
        for r in self.iso.generators() {
            let mut x = vec![0; w];
            x[wa + wb + da + db..].copy_from_slice(r);
            rows.push(x);
        }
        let universe = CodeSubgroup::canonicalize(&rows, &amb)?;
        // validity: equal quotient values on both copies
        let mut vrows: Vec<Element> = Vec::new();
        for i in 0..wa + wb {
            let mut x = vec![0; w];
            x[i] = 1;
            vrows.push(x);
        }
        for i in 0..da + db {
            let mut x = vec![0; w];
            x[wa + wb + i] = 1;
            x[wa + wb + da + db + i] = 1;
            vrows.push(x);
        }
        let validity = CodeSubgroup::canonicalize(&vrows, &amb)?;
        let behavior = universe.intersect(&validity)?;
        behavior.project(&self.labels)
    }

    /// `|C|A / C:A|`.
    pub fn quotient_order(&self) -> u128 {
        self.quotient_a.order()
    }
}

/// The orders `|C|A|/|C:A|`, `|C|B|/|C:B|`, `|C|/(|C:A||C:B|)` and `|C|A||C|B|/|C|`.
pub fn ftsp_orders(code: &CodeSubgroup, part_a: &[String]) -> Result<[u128; 4]> {
    let part_b = code.ambient().complement(part_a);
    let pa = code.project(part_a)?.order();
    let ca = code.cross_section(part_a)?.order();
    let pb = code.project(&part_b)?.order();
    let cb = code.cross_section(&part_b)?.order();
    let c = code.order();
    Ok([pa / ca, pb / cb, c / (ca * cb), pa * pb / c])
}
