//! Seeded random realizations and fragments over small alphabets.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::zmod::gcd;
use crate::algebra::{Alphabet, CodeSubgroup, Element, Homomorphism};
use crate::realization::Realization;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Topology {
    /// `n` constraints in a line.
    Path(usize),
    /// `n ≥ 2` constraints in a ring.
    Cycle(usize),
    /// A ring of `cycle` constraints with a path of `pendant` more hanging off it.
    CyclePendant { cycle: usize, pendant: usize },
    /// Two hubs joined by three paths with the given numbers of inner constraints.
    Theta(usize, usize, usize),
    /// A uniformly random labelled tree on `n` constraints.
    Tree(usize),
    /// The complete graph on four constraints, each of degree three.
    Cubic,
}

impl Topology {
    /// Number of constraints and the edge list `(tail, head)` with `tail < head`.
    pub fn skeleton(&self, rng: &mut impl Rng) -> (usize, Vec<(usize, usize)>) {
        match *self {
            Topology::Path(n) => (n, (1..n).map(|i| (i - 1, i)).collect()),
            Topology::Cycle(n) => {
                let mut e: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
                if n >= 2 {
                    e.push((0, n - 1));
                }
                (n, e)
            }
            Topology::CyclePendant { cycle, pendant } => {
                let (n, mut e) = Topology::Cycle(cycle).skeleton(rng);
                let mut prev = 0;
                for k in 0..pendant {
                    e.push((prev, n + k));
                    prev = n + k;
                }
                (n + pendant, e)
            }
            Topology::Theta(x, y, z) => {
                let mut n = 2;
                let mut e = Vec::new();
                for len in [x, y, z] {
                    let mut prev = 0;
                    for _ in 0..len {
                        e.push((prev, n));
                        prev = n;
                        n += 1;
                    }
                    e.push((prev.min(1), prev.max(1)));
                }
                (n, e)
            }
            Topology::Tree(n) => (n, (1..n).map(|i| (rng.gen_range(0..i), i)).collect()),
            Topology::Cubic => (4, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]),
        }
    }

    pub fn is_cycle_free(&self) -> bool {
        matches!(self, Topology::Path(_) | Topology::Tree(_))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Binary,
    Ternary,
    Z4,
    /// Each variable draws its own alphabet from GF(2), Z_4, Z_2 × Z_4 and GF(3).
    Mixed,
}

#[derive(Clone, Debug)]
pub struct RandomSpec {
    pub topology: Topology,
    pub family: Family,
    /// Inclusive range of symbols attached to each constraint.
    pub symbols: (usize, usize),
    /// Inclusive range of state alphabet dimensions (number of cyclic factors).
    pub state_dim: (usize, usize),
    /// Number of boundary half-edges; a fragment is produced when nonzero.
    pub boundary: usize,
    /// Probability that an edge carries a nontrivial automorphism.
    pub iso_prob: f64,
    /// Probability of drawing each of the `width + 1` candidate generator rows.
    pub density: f64,
    /// Prefix for every generated label.
    pub prefix: String,
}

impl RandomSpec {
    pub fn new(topology: Topology, family: Family) -> RandomSpec {
        RandomSpec {
            topology,
            family,
            symbols: (0, 2),
            state_dim: (1, 1),
            boundary: 0,
            iso_prob: 0.3,
            density: 0.5,
            prefix: String::new(),
        }
    }
}

fn symbol_alphabet(family: Family, rng: &mut impl Rng) -> Alphabet {
    match family {
        Family::Binary => Alphabet::VectorSpace { p: 2, dim: 1 },
        Family::Ternary => Alphabet::VectorSpace { p: 3, dim: 1 },
        Family::Z4 => Alphabet::Group { moduli: vec![4] },
        Family::Mixed => match rng.gen_range(0..10) {
            0..=3 => Alphabet::Group { moduli: vec![2] },
            4..=7 => Alphabet::Group { moduli: vec![4] },
            _ => Alphabet::VectorSpace { p: 3, dim: 1 },
        },
    }
}

fn state_alphabet(family: Family, dim: usize, rng: &mut impl Rng) -> Alphabet {
    match family {
        Family::Binary => Alphabet::VectorSpace { p: 2, dim },
        Family::Ternary => Alphabet::VectorSpace { p: 3, dim },
        Family::Z4 => Alphabet::Group { moduli: vec![4; dim] },
        Family::Mixed => {
            if rng.gen_range(0..8) == 0 {
                return Alphabet::VectorSpace { p: 3, dim };
            }
            let mut m: Vec<u64> = (0..dim).map(|_| if rng.gen_bool(0.5) { 2 } else { 4 }).collect();
            m.sort();
            Alphabet::Group { moduli: m }
        }
    }
}

fn random_element(a: &Alphabet, rng: &mut impl Rng) -> Element {
    a.moduli().iter().map(|&m| rng.gen_range(0..m)).collect()
}

/// A random automorphism of `a`, or `None` when the draw gives the identity.
pub fn random_automorphism(a: &Alphabet, rng: &mut impl Rng) -> Option<Homomorphism> {
    let d = a.dim();
    let moduli = a.moduli();
    for _ in 0..40 {
        let m: Vec<Vec<u64>> = (0..d).map(|j| (0..d).map(|_| rng.gen_range(0..moduli[j])).collect()).collect();
        if let Ok(h) = Homomorphism::new(a.clone(), a.clone(), m) {
            if h.is_isomorphism() {
                return if h.is_identity() { None } else { Some(h) };
            }
        }
    }
    let e = a.exponent();
    let units: Vec<u64> = (2..e).filter(|&u| gcd(u, e) == 1).collect();
    units.choose(rng).map(|&u| Homomorphism::scalar(a, u))
}

/// Random subgroup of the ambient of `vars` in `r`.
pub fn random_code(r: &Realization, vars: &[String], density: f64, rng: &mut impl Rng) -> CodeSubgroup {
    let amb = r.ambient_of(vars).expect("declared variables");
    let count = (0..=amb.len()).filter(|_| rng.gen_bool(density)).count();
    let rows: Vec<Element> = (0..count)
        .map(|_| amb.factors().iter().flat_map(|(_, a)| random_element(a, rng)).collect())
        .collect();
    CodeSubgroup::canonicalize(&rows, &amb).expect("rows in range")
}

/// Generates a random realization (or fragment when `spec.boundary > 0`)
/// deterministically from `seed`.
pub fn random_realization(spec: &RandomSpec, seed: u64) -> Realization {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (n, edges) = spec.topology.skeleton(&mut rng);
    let p = &spec.prefix;
    let mut r = Realization::new();
    let mut vars: Vec<Vec<String>> = vec![Vec::new(); n];
    let mut sym = 0;
    for v in vars.iter_mut() {
        for _ in 0..rng.gen_range(spec.symbols.0..=spec.symbols.1) {
            let id = format!("{p}a{sym}");
            sym += 1;
            r.add_symbol(&id, symbol_alphabet(spec.family, &mut rng)).unwrap();
            v.push(id);
        }
    }
    for (k, &(t, h)) in edges.iter().enumerate() {
        let id = format!("{p}s{k}");
        let dim = rng.gen_range(spec.state_dim.0..=spec.state_dim.1);
        let a = state_alphabet(spec.family, dim, &mut rng);
        let iso = if rng.gen_bool(spec.iso_prob) { random_automorphism(&a, &mut rng) } else { None };
        match iso {
            Some(phi) => r.add_state_with_iso(&id, a, phi).unwrap(),
            None => r.add_state(&id, a).unwrap(),
        }
        vars[t].push(id.clone());
        vars[h].push(id);
    }
    let mut boundary = Vec::new();
    for k in 0..spec.boundary {
        let id = format!("{p}b{k}");
        let dim = rng.gen_range(spec.state_dim.0..=spec.state_dim.1);
        r.add_state(&id, state_alphabet(spec.family, dim, &mut rng)).unwrap();
        let at = rng.gen_range(0..n);
        vars[at].push(id.clone());
        boundary.push(id);
    }
    for (i, v) in vars.iter_mut().enumerate() {
        v.shuffle(&mut rng);
        let code = random_code(&r, v, spec.density, &mut rng);
        r.add_constraint_code(&format!("{p}c{i}"), v, &code).unwrap();
    }
    if spec.boundary > 0 {
        boundary.sort();
        r.boundary = Some(boundary);
    }
    r
}

/// Mixed-family corpus of `count` realizations with at most `max_coords`
/// symbol and state variables each, cycling through topologies and families.
pub fn mixed_corpus(count: usize, max_coords: usize, seed: u64) -> Vec<(String, Realization)> {
    let families = [Family::Binary, Family::Ternary, Family::Z4, Family::Mixed];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    let mut k = 0u64;
    while out.len() < count {
        k += 1;
        let topology = match k % 5 {
            0 => Topology::Path(rng.gen_range(1..=4)),
            1 => Topology::Cycle(rng.gen_range(2..=4)),
            2 => Topology::CyclePendant { cycle: rng.gen_range(2..=3), pendant: rng.gen_range(1..=2) },
            3 => Topology::Theta(rng.gen_range(0..=1), rng.gen_range(1..=2), rng.gen_range(1..=2)),
            _ => Topology::Tree(rng.gen_range(2..=5)),
        };
        let family = families[(k as usize / 5) % 4];
        let mut spec = RandomSpec::new(topology, family);
        spec.symbols = (0, 2);
        let s: u64 = rng.gen();
        let r = random_realization(&spec, s);
        if r.symbols.len() + r.states.len() > max_coords || r.symbols.is_empty() {
            continue;
        }
        if configuration_space(&r) > 1 << 20 {
            continue;
        }
        out.push((format!("random-{family:?}-{topology:?}-{s}"), r));
    }
    out
}

/// `Π |alphabet|` over all symbol and state variables.
pub fn configuration_space(r: &Realization) -> u128 {
    r.symbols
        .values()
        .chain(r.states.values().map(|s| &s.alphabet))
        .map(|a| a.order())
        .fold(1u128, |x, y| x.saturating_mul(y))
}

/// Cyclic GF(2) fixture on the cubic skeleton with one symbol per constraint.
pub fn cubic_fixture(seed: u64) -> Realization {
    let mut spec = RandomSpec::new(Topology::Cubic, Family::Binary);
    spec.symbols = (1, 1);
    random_realization(&spec, seed)
}
