//! Constructors for simple constraint codes and standard realizations.

use crate::algebra::{Alphabet, CodeSubgroup, Element, Homomorphism, ProductSpace};
use crate::realization::Realization;

/// `alphabet^n` with labels `x0, x1, …`.
pub fn power(alphabet: &Alphabet, n: usize) -> ProductSpace {
    ProductSpace::new((0..n).map(|i| (format!("x{i}"), alphabet.clone())).collect()).expect("distinct labels")
}

fn unit(d: usize, k: usize) -> Element {
    (0..d).map(|i| u64::from(i == k)).collect()
}

/// `{(x, x, …, x)}`.
pub fn equality_code(alphabet: &Alphabet, n: usize) -> CodeSubgroup {
    let d = alphabet.dim();
    let rows: Vec<Element> = (0..d).map(|k| unit(d, k).repeat(n)).collect();
    CodeSubgroup::canonicalize(&rows, &power(alphabet, n)).expect("rows in range")
}

/// `{x : Σ x_i = 0}`.
pub fn zero_sum_code(alphabet: &Alphabet, n: usize) -> CodeSubgroup {
    let amb = power(alphabet, n);
    if n == 0 {
        return CodeSubgroup::zero(&amb);
    }
    let d = alphabet.dim();
    let mut rows = Vec::new();
    for i in 1..n {
        for k in 0..d {
            let e = unit(d, k);
            let mut x = vec![0u64; n * d];
            x[..d].copy_from_slice(&alphabet.neg(&e));
            x[i * d..(i + 1) * d].copy_from_slice(&e);
            rows.push(x);
        }
    }
    CodeSubgroup::canonicalize(&rows, &amb).expect("rows in range")
}

/// `{(x, −x)}`.
pub fn sign_inversion_code(alphabet: &Alphabet) -> CodeSubgroup {
    iso_code(&Homomorphism::negation(alphabet))
}

/// Graph `{(x, φ(x))}` of a homomorphism.
pub fn iso_code(phi: &Homomorphism) -> CodeSubgroup {
    let amb = ProductSpace::new(vec![("x0".into(), phi.source().clone()), ("x1".into(), phi.target().clone())])
        .expect("distinct labels");
    let d = phi.source().dim();
    let rows: Vec<Element> = (0..d)
        .map(|k| {
            let e = unit(d, k);
            let mut x = e.clone();
            x.extend(phi.apply(&e));
            x
        })
        .collect();
    CodeSubgroup::canonicalize(&rows, &amb).expect("rows in range")
}

/// Linear code over `GF(p)` generated by the rows of `g`, labels `a0, a1, …`.
pub fn linear_code(p: u64, g: &[Vec<u64>]) -> CodeSubgroup {
    let n = g.first().map_or(0, |r| r.len());
    let amb = ProductSpace::new((0..n).map(|i| (format!("a{i}"), Alphabet::VectorSpace { p, dim: 1 })).collect())
        .expect("distinct labels");
    CodeSubgroup::canonicalize(g, &amb).expect("rows in range")
}

/// One constraint over symbols named after the ambient labels.
pub fn single_constraint(code: &CodeSubgroup) -> Realization {
    let mut r = Realization::new();
    for (l, a) in code.ambient().factors() {
        r.add_symbol(l, a.clone()).expect("fresh symbol");
    }
    r.add_constraint_code("c0", &code.ambient().labels(), code).expect("matching code");
    r
}

/// Equality node of length `n` over symbols `a0…`.
pub fn equality_node(alphabet: &Alphabet, n: usize) -> Realization {
    let c = equality_code(alphabet, n);
    let labels: Vec<String> = (0..n).map(|i| format!("a{i}")).collect();
    single_constraint(&c.relabel(&labels).expect("same width"))
}

/// Zero-sum node of length `n` over symbols `a0…`.
pub fn zero_sum_node(alphabet: &Alphabet, n: usize) -> Realization {
    let c = zero_sum_code(alphabet, n);
    let labels: Vec<String> = (0..n).map(|i| format!("a{i}")).collect();
    single_constraint(&c.relabel(&labels).expect("same width"))
}

fn section_rows(g: &[Vec<u64>], j: usize, with_in: bool, with_out: bool) -> Vec<Element> {
    let k = g.len();
    (0..k)
        .map(|i| {
            let e = unit(k, i);
            let mut x = Vec::new();
            if with_in {
                x.extend(&e);
            }
            x.push(g[i][j]);
            if with_out {
                x.extend(&e);
            }
            x
        })
        .collect()
}

/// Conventional trellis realization of the code generated by `g` over
/// `GF(p)`, using the raw product construction: every state carries the
/// full information vector. Symbols `a0…`, states `s1…s{n-1}`, sections `c0…`.
pub fn trellis(p: u64, g: &[Vec<u64>]) -> Realization {
    let n = g[0].len();
    let k = g.len();
    let mut r = Realization::new();
    for j in 0..n {
        r.add_symbol(&format!("a{j}"), Alphabet::VectorSpace { p, dim: 1 }).unwrap();
    }
    for j in 1..n {
        r.add_state(&format!("s{j}"), Alphabet::VectorSpace { p, dim: k }).unwrap();
    }
    for j in 0..n {
        let a = format!("a{j}");
        let sin = format!("s{j}");
        let sout = format!("s{}", j + 1);
        let mut vars: Vec<&str> = Vec::new();
        if j > 0 {
            vars.push(&sin);
        }
        vars.push(&a);
        if j + 1 < n {
            vars.push(&sout);
        }
        let rows = section_rows(g, j, j > 0, j + 1 < n);
        r.add_constraint(&format!("c{j}"), &vars, &rows).unwrap();
    }
    r
}

/// Tail-biting variant of [`trellis`]: states `s0…s{n-1}`, section `j` over
/// `(s_j, a_j, s_{j+1 mod n})`.
pub fn tail_biting(p: u64, g: &[Vec<u64>]) -> Realization {
    let n = g[0].len();
    let k = g.len();
    let mut r = Realization::new();
    for j in 0..n {
        r.add_symbol(&format!("a{j}"), Alphabet::VectorSpace { p, dim: 1 }).unwrap();
    }
    for j in 0..n {
        r.add_state(&format!("s{j}"), Alphabet::VectorSpace { p, dim: k }).unwrap();
    }
    for j in 0..n {
        let a = format!("a{j}");
        let sin = format!("s{j}");
        let sout = format!("s{}", (j + 1) % n);
        let rows = section_rows(g, j, true, true);
        r.add_constraint(&format!("c{j}"), &[&sin, &a, &sout], &rows).unwrap();
    }
    r
}

/// Tanner realization of the kernel of `h` over `GF(p)`: one equality node
/// `e{j}` per symbol and one check node `h{i}` per row, with edges `t{i}_{j}`.
pub fn tanner(p: u64, h: &[Vec<u64>]) -> Realization {
    let n = h[0].len();
    let f = Alphabet::VectorSpace { p, dim: 1 };
    let mut r = Realization::new();
    for j in 0..n {
        r.add_symbol(&format!("a{j}"), f.clone()).unwrap();
    }
    for (i, row) in h.iter().enumerate() {
        for (j, &x) in row.iter().enumerate() {
            if x != 0 {
                r.add_state(&format!("t{i}_{j}"), f.clone()).unwrap();
            }
        }
    }
    for j in 0..n {
        let mut vars = vec![format!("a{j}")];
        for (i, row) in h.iter().enumerate() {
            if row[j] != 0 {
                vars.push(format!("t{i}_{j}"));
            }
        }
        let code = equality_code(&f, vars.len());
        r.add_constraint_code(&format!("e{j}"), &vars, &code).unwrap();
    }
    for (i, row) in h.iter().enumerate() {
        let support: Vec<usize> = (0..n).filter(|&j| row[j] != 0).collect();
        let vars: Vec<String> = support.iter().map(|j| format!("t{i}_{j}")).collect();
        // kernel of x ↦ Σ h_ij x_j on the support
        let coeffs: Vec<Vec<u64>> = vec![support.iter().map(|&j| row[j]).collect()];
        let hc = CodeSubgroup::canonicalize(&coeffs, &power(&f, support.len())).unwrap();
        let code = hc.orthogonal();
        r.add_constraint_code(&format!("h{i}"), &vars, &code).unwrap();
    }
    r
}

/// Two-section trellis of `{00, 11}` style repetition: `c0 = {(a0, s)}`,
/// `c1 = {(s, a1)}` with identity graphs, extended to length `n`.
pub fn repetition_trellis(alphabet: &Alphabet, n: usize) -> Realization {
    let mut r = Realization::new();
    for j in 0..n {
        r.add_symbol(&format!("a{j}"), alphabet.clone()).unwrap();
    }
    for j in 1..n {
        r.add_state(&format!("s{j}"), alphabet.clone()).unwrap();
    }
    for j in 0..n {
        let mut vars = Vec::new();
        if j > 0 {
            vars.push(format!("s{j}"));
        }
        vars.push(format!("a{j}"));
        if j + 1 < n {
            vars.push(format!("s{}", j + 1));
        }
        let code = equality_code(alphabet, vars.len());
        r.add_constraint_code(&format!("c{j}"), &vars, &code).unwrap();
    }
    r
}

/// Two identity constraints `{(a1, s)}`, `{(s, a2)}` joined by an edge carrying `φ`.
pub fn iso_edge(phi: &Homomorphism) -> Realization {
    let a = phi.source().clone();
    let mut r = Realization::new();
    r.add_symbol("a1", a.clone()).unwrap();
    r.add_symbol("a2", a.clone()).unwrap();
    r.add_state_with_iso("s", a.clone(), phi.clone()).unwrap();
    let eq = equality_code(&a, 2);
    r.add_constraint_code("c1", &["a1".into(), "s".into()], &eq).unwrap();
    r.add_constraint_code("c2", &["s".into(), "a2".into()], &eq).unwrap();
    r
}

/// Realizations over `Z_4` and `Z_2 × Z_4`.
pub fn z4_examples() -> Vec<(String, Realization)> {
    let z4 = Alphabet::cyclic(vec![4]).unwrap();
    let mut out = Vec::new();
    out.push(("z4_repetition".to_string(), repetition_trellis(&z4, 3)));
    out.push(("z4_zero_sum".to_string(), zero_sum_node(&z4, 3)));
    out.push(("z4_triple_edge".to_string(), iso_edge(&Homomorphism::scalar(&z4, 3))));
    // C = <(1, 2)> ⊆ Z4², which contains the nondynamical element (2, 0)
    let amb = ProductSpace::new(vec![("a0".into(), z4.clone()), ("a1".into(), z4.clone())]).unwrap();
    let chain = CodeSubgroup::canonicalize(&[vec![1, 2]], &amb).unwrap();
    out.push(("z4_chain".to_string(), single_constraint(&chain)));
    // trellis over Z4 with state 2Z4-like information carried in Z4
    let mut r = Realization::new();
    for j in 0..3 {
        r.add_symbol(&format!("a{j}"), z4.clone()).unwrap();
    }
    r.add_state("s1", z4.clone()).unwrap();
    r.add_state("s2", z4.clone()).unwrap();
    r.add_constraint("c0", &["a0", "s1"], &[vec![1, 1]]).unwrap();
    r.add_constraint("c1", &["s1", "a1", "s2"], &[vec![1, 2, 1], vec![0, 2, 2]]).unwrap();
    r.add_constraint("c2", &["s2", "a2"], &[vec![1, 3]]).unwrap();
    out.push(("z4_trellis".to_string(), r));
    // tail-biting ring over Z4 with a sign inverter on one edge
    let mut r = Realization::new();
    for j in 0..3 {
        r.add_symbol(&format!("a{j}"), z4.clone()).unwrap();
    }
    r.add_state_with_iso("s0", z4.clone(), Homomorphism::negation(&z4)).unwrap();
    r.add_state("s1", z4.clone()).unwrap();
    r.add_state("s2", z4.clone()).unwrap();
    r.add_constraint("c0", &["s0", "a0", "s1"], &[vec![1, 1, 1], vec![0, 2, 2]]).unwrap();
    r.add_constraint("c1", &["s1", "a1", "s2"], &[vec![1, 0, 1], vec![0, 1, 2]]).unwrap();
    r.add_constraint("c2", &["s2", "a2", "s0"], &[vec![1, 1, 1]]).unwrap();
    out.push(("z4_ring".to_string(), r));
    // mixed Z2 × Z4 symbol alphabet
    let z24 = Alphabet::cyclic(vec![2, 4]).unwrap();
    let mut r = Realization::new();
    r.add_symbol("a0", z24.clone()).unwrap();
    r.add_symbol("a1", z4.clone()).unwrap();
    r.add_state("s", z4.clone()).unwrap();
    r.add_constraint("c0", &["a0", "s"], &[vec![1, 2, 2], vec![0, 1, 1]]).unwrap();
    r.add_constraint("c1", &["s", "a1"], &[vec![1, 3]]).unwrap();
    out.push(("z2z4_mixed".to_string(), r));
    out
}

/// The two-parity-check fixture `H = [[1,1,1,1],[1,1,1,1]]` over GF(2).
pub fn redundant_checks() -> Realization {
    tanner(2, &[vec![1, 1, 1, 1], vec![1, 1, 1, 1]])
}

/// Tanner realization with two independent checks on four symbols.
pub fn independent_checks() -> Realization {
    tanner(2, &[vec![1, 1, 1, 1], vec![0, 0, 1, 1]])
}

/// The standard (7,4) Hamming code generator.
pub fn hamming74() -> Vec<Vec<u64>> {
    vec![
        vec![1, 0, 0, 0, 1, 1, 0],
        vec![0, 1, 0, 0, 1, 0, 1],
        vec![0, 0, 1, 0, 0, 1, 1],
        vec![0, 0, 0, 1, 1, 1, 1],
    ]
}

/// Replaces the alphabet of state `s` by `GF(p)^(k+extra)`, embedding the old
/// values in the leading coordinates; the realized code is unchanged.
pub fn pad_state(r: &Realization, s: &str, extra: usize) -> Realization {
    let old = r.states[s].alphabet.clone();
    let Alphabet::VectorSpace { p, dim } = old else { panic!("vector-space state expected") };
    let new = Alphabet::VectorSpace { p, dim: dim + extra };
    let mut out = r.clone();
    out.states.get_mut(s).unwrap().alphabet = new.clone();
    out.states.get_mut(s).unwrap().iso = None;
    for c in out.constraints.values_mut() {
        if !c.vars.iter().any(|v| v == s) {
            continue;
        }
        let amb = r.ambient_of(&c.vars).unwrap();
        let range = amb.range(s).unwrap();
        let rows: Vec<Element> = c
            .code
            .generators()
            .iter()
            .map(|g| {
                let mut x = g[..range.end].to_vec();
                x.extend(std::iter::repeat_n(0, extra));
                x.extend(&g[range.end..]);
                x
            })
            .collect();
        let f: Vec<(String, Alphabet)> = c
            .vars
            .iter()
            .map(|v| (v.clone(), if v == s { new.clone() } else { r.alphabet_of(v).unwrap().clone() }))
            .collect();
        c.code = CodeSubgroup::canonicalize(&rows, &ProductSpace::new(f).unwrap()).unwrap();
    }
    out
}

/// The curated fixtures, by name.
pub fn curated() -> Vec<(String, Realization)> {
    let gf2 = Alphabet::VectorSpace { p: 2, dim: 1 };
    let gf3 = Alphabet::VectorSpace { p: 3, dim: 1 };
    let mut out = vec![
        ("eq3_gf2".to_string(), equality_node(&gf2, 3)),
        ("eq4_gf3".to_string(), equality_node(&gf3, 4)),
        ("zs3_gf2".to_string(), zero_sum_node(&gf2, 3)),
        ("zs3_gf3".to_string(), zero_sum_node(&gf3, 3)),
        ("sign_gf3".to_string(), single_constraint(&sign_inversion_code(&gf3))),
        ("rep3_trellis".to_string(), trellis(2, &[vec![1, 1, 1]])),
        ("rep3_padded".to_string(), pad_state(&trellis(2, &[vec![1, 1, 1]]), "s1", 1)),
        ("pairs_trellis".to_string(), trellis(2, &[vec![1, 1, 0, 0], vec![0, 0, 1, 1]])),
        ("hamming74_trellis".to_string(), trellis(2, &hamming74())),
        ("gf3_trellis".to_string(), trellis(3, &[vec![1, 2, 0, 1], vec![0, 1, 1, 2]])),
        ("tb_rep2".to_string(), tail_biting(2, &[vec![1, 1]])),
        ("tb_rep3".to_string(), tail_biting(2, &[vec![1, 1, 1]])),
        ("tb_gf2_2x4".to_string(), tail_biting(2, &[vec![1, 1, 0, 1], vec![0, 1, 1, 1]])),
        ("tanner_redundant".to_string(), redundant_checks()),
        ("tanner_independent".to_string(), independent_checks()),
        ("tanner_pairs".to_string(), tanner(2, &[vec![1, 1, 0, 0], vec![0, 0, 1, 1]])),
        ("tanner_hamming".to_string(), tanner(2, &[vec![1, 1, 0, 1, 1, 0, 0], vec![1, 0, 1, 1, 0, 1, 0], vec![0, 1, 1, 1, 0, 0, 1]])),
        ("iso_edge_gf3".to_string(), iso_edge(&Homomorphism::scalar(&gf3, 2))),
    ];
    out.extend(z4_examples());
    out
}

/// A realization whose state `s` touches three constraints; it fails validation.
pub fn bad_degree() -> Realization {
    let gf2 = Alphabet::VectorSpace { p: 2, dim: 1 };
    let mut r = Realization::new();
    for j in 0..3 {
        r.add_symbol(&format!("a{j}"), gf2.clone()).unwrap();
    }
    r.add_state("s", gf2.clone()).unwrap();
    for j in 0..3 {
        let a = format!("a{j}");
        r.add_constraint(&format!("c{j}"), &[a.as_str(), "s"], &[vec![1, 1]]).unwrap();
    }
    r
}

/// Realizations shipped as files, by file stem.
pub fn shipped() -> Vec<(String, Realization)> {
    let mut out: Vec<(String, Realization)> = curated()
        .into_iter()
        .map(|(n, r)| (if n == "rep3_trellis" { "rep3".to_string() } else { n }, r))
        .collect();
    out.push(("bad_degree".to_string(), bad_degree()));
    for seed in [11, 12, 13] {
        out.push((format!("cubic_gf2_seed{seed}"), super::random::cubic_fixture(seed)));
    }
    out
}
