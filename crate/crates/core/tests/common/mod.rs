#![allow(dead_code)]

use std::collections::BTreeSet;

use normgraph::algebra::{Alphabet, CodeSubgroup, Element, ProductSpace};
use proptest::prelude::*;

pub type Set = BTreeSet<Element>;

pub fn all_elements(moduli: &[u64]) -> Vec<Element> {
    let mut out = vec![vec![]];
    for &m in moduli {
        out = out
            .into_iter()
            .flat_map(|p: Element| {
                (0..m).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    out
}

pub fn add(moduli: &[u64], a: &[u64], b: &[u64]) -> Element {
    moduli.iter().zip(a.iter().zip(b)).map(|(&m, (&x, &y))| (x + y) % m).collect()
}

/// Subgroup generated by `gens`, by closure under addition.
pub fn closure(moduli: &[u64], gens: &[Element]) -> Set {
    let mut set: Set = BTreeSet::new();
    set.insert(vec![0; moduli.len()]);
    let mut frontier: Vec<Element> = vec![vec![0; moduli.len()]];
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = add(moduli, &x, g);
            if set.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    set
}

/// `Σ x_i y_i / m_i ≡ 0 (mod 1)`, tested with the product of the moduli as common denominator.
pub fn orthogonal_pair(moduli: &[u64], x: &[u64], y: &[u64]) -> bool {
    let prod: u128 = moduli.iter().map(|&m| m as u128).product();
    let s: u128 = moduli
        .iter()
        .zip(x.iter().zip(y))
        .map(|(&m, (&a, &b))| (a as u128 * b as u128) * (prod / m as u128))
        .sum();
    s.is_multiple_of(prod)
}

pub fn brute_orthogonal(moduli: &[u64], set: &Set) -> Set {
    all_elements(moduli)
        .into_iter()
        .filter(|y| set.iter().all(|x| orthogonal_pair(moduli, x, y)))
        .collect()
}

pub fn restrict(e: &[u64], cols: &[usize]) -> Element {
    cols.iter().map(|&c| e[c]).collect()
}

pub fn brute_project(set: &Set, cols: &[usize]) -> Set {
    set.iter().map(|e| restrict(e, cols)).collect()
}

pub fn brute_cross_section(set: &Set, cols: &[usize]) -> Set {
    set.iter()
        .filter(|e| e.iter().enumerate().all(|(i, &x)| cols.contains(&i) || x == 0))
        .map(|e| restrict(e, cols))
        .collect()
}

pub fn elements_of(c: &CodeSubgroup) -> Set {
    c.enumerate().unwrap().collect()
}

pub fn labels(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

/// Alphabets used for random ambients.
pub fn alphabet_pool() -> Vec<Alphabet> {
    vec![
        Alphabet::binary(1),
        Alphabet::binary(2),
        Alphabet::field(3, 1).unwrap(),
        Alphabet::field(5, 1).unwrap(),
        Alphabet::cyclic(vec![4]).unwrap(),
        Alphabet::cyclic(vec![2, 4]).unwrap(),
        Alphabet::cyclic(vec![6]).unwrap(),
        Alphabet::cyclic(vec![8]).unwrap(),
        Alphabet::cyclic(vec![9]).unwrap(),
    ]
}

/// Random ambient (order ≤ 4096) with random generator rows.
pub fn arb_subgroup() -> impl Strategy<Value = CodeSubgroup> {
    let pool = alphabet_pool();
    prop::collection::vec(0..pool.len(), 1..5)
        .prop_filter("order", move |idx| {
            let pool = alphabet_pool();
            idx.iter().map(|&i| pool[i].order()).product::<u128>() <= 4096
        })
        .prop_flat_map(|idx| {
            let pool = alphabet_pool();
            let amb = ProductSpace::new(
                idx.iter().enumerate().map(|(k, &i)| (format!("v{k}"), pool[i].clone())).collect(),
            )
            .unwrap();
            let moduli = amb.moduli();
            let row = moduli.iter().map(|&m| 0..m).collect::<Vec<_>>();
            (Just(amb), prop::collection::vec(row, 0..4))
        })
        .prop_map(|(amb, rows)| CodeSubgroup::canonicalize(&rows, &amb).unwrap())
}

/// Two random subgroups of one ambient.
pub fn arb_pair() -> impl Strategy<Value = (CodeSubgroup, CodeSubgroup)> {
    arb_subgroup().prop_flat_map(|c| {
        let moduli = c.ambient().moduli();
        let row = moduli.iter().map(|&m| 0..m).collect::<Vec<_>>();
        (Just(c), prop::collection::vec(row, 0..4))
    })
    .prop_map(|(c, rows)| {
        let d = CodeSubgroup::canonicalize(&rows, c.ambient()).unwrap();
        (c, d)
    })
}

pub fn to_set(h: std::collections::HashSet<Element>) -> Set {
    h.into_iter().collect()
}

/// Curated fixtures plus a deterministic random sample.
pub fn corpus(random: usize) -> Vec<(String, normgraph::realization::Realization)> {
    let mut v = normgraph::corpus::builders::curated();
    v.extend(normgraph::corpus::random::mixed_corpus(random, 12, 7));
    v
}
