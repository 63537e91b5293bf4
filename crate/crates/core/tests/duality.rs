mod common;

use common::*;
use normgraph::algebra::{Alphabet, Homomorphism};
use normgraph::corpus::builders::{equality_node, iso_edge, tanner, trellis, zero_sum_node};
use normgraph::corpus::random::{random_realization, Family, RandomSpec, Topology};
use normgraph::corpus::ExhaustiveModel;
use normgraph::duality::{dual_fragment_check, dualize, verify_duality};
use normgraph::realization::{behavior_bundle, cut, external_behavior};

#[test]
fn dual_code_is_orthogonal_on_corpus() {
    for (name, r) in corpus(150) {
        let rep = verify_duality(&r).unwrap();
        assert!(rep.passed(), "{name}: {rep:?}");
        // independent check of C° against brute-force C⊥
        let o = ExhaustiveModel::new(&r).unwrap();
        let alph: Vec<Alphabet> = o.external.iter().map(|l| o.alphabets[l].clone()).collect();
        let perp = to_set(normgraph::corpus::oracle::brute_orthogonal(&alph, &o.code()));
        let dual = ExhaustiveModel::new(&dualize(&r).unwrap()).unwrap();
        assert_eq!(to_set(dual.code()), perp, "{name}");
    }
}

#[test]
fn dual_of_dual_is_identity() {
    for (name, r) in corpus(60) {
        assert_eq!(dualize(&dualize(&r).unwrap()).unwrap(), r, "{name}");
    }
}

#[test]
fn equality_node_dualizes_to_zero_sum() {
    let b = Alphabet::binary(1);
    let d = dualize(&equality_node(&b, 3)).unwrap();
    assert_eq!(d, zero_sum_node(&b, 3));
    let c = behavior_bundle(&d).unwrap().code;
    let even: Set = all_elements(&[2, 2, 2]).into_iter().filter(|x| x.iter().sum::<u64>() % 2 == 0).collect();
    assert_eq!(elements_of(&c), even);
}

#[test]
fn identity_edge_gets_sign_inverter() {
    let g3 = Alphabet::field(3, 1).unwrap();
    let mut r = iso_edge(&Homomorphism::identity(&g3));
    r.states.get_mut("s").unwrap().iso = None;
    let d = dualize(&r).unwrap();
    assert_eq!(d.states["s"].iso, Some(Homomorphism::negation(&g3)));
    // exponent 2: no visible sign inverters
    let rb = trellis(2, &[vec![1, 1, 1]]);
    assert!(dualize(&rb).unwrap().states.values().all(|s| s.iso.is_none()));
}

#[test]
fn self_dual_tanner_example() {
    let r = tanner(2, &[vec![1, 1, 0, 0], vec![0, 0, 1, 1]]);
    let c = behavior_bundle(&r).unwrap().code;
    let d = behavior_bundle(&dualize(&r).unwrap()).unwrap().code;
    assert_eq!(c, d);
    assert_eq!(c, c.orthogonal());
}

#[test]
fn fragments_dualize_to_orthogonal_behavior() {
    // trellis fragment of rep-3 and a cubic fragment of a tail-biting graph
    let r = trellis(2, &[vec![1, 1, 1]]);
    for f in cut(&r, &["s1".to_string(), "s2".to_string()]).unwrap() {
        assert!(dual_fragment_check(&f).unwrap().passed);
    }
    for seed in 0..80 {
        let tops = [Topology::Path(3), Topology::Cycle(3), Topology::Theta(0, 1, 1)];
        let mut spec = RandomSpec::new(tops[seed as usize % 3], [Family::Ternary, Family::Mixed][seed as usize % 2]);
        spec.boundary = 1 + seed as usize % 2;
        let f = random_realization(&spec, seed);
        let rep = dual_fragment_check(&f).unwrap();
        assert!(rep.passed, "seed {seed}");
        let c = external_behavior(&f).unwrap();
        assert_eq!(rep.order * rep.dual_order, c.ambient().order());
    }
}

#[test]
fn sign_inverter_rules_preserve_behavior() {
    for seed in 0..40 {
        let spec = RandomSpec::new(Topology::Cycle(3), Family::Ternary);
        let r = random_realization(&spec, seed);
        let base = behavior_bundle(&r).unwrap().code;
        // two cascaded sign inversions on an edge are an equality
        let mut r2 = r.clone();
        let s = r.internal_states()[0].clone();
        let a = r.states[&s].alphabet.clone();
        let neg = Homomorphism::negation(&a);
        let phi = neg.compose(&neg.compose(&r.iso(&s).unwrap()).unwrap()).unwrap();
        r2.states.get_mut(&s).unwrap().iso = if phi.is_identity() { None } else { Some(phi) };
        assert_eq!(behavior_bundle(&r2).unwrap().code, base);
        // sign inversions on every state end of one constraint: negate the
        // state coordinates of its code instead
        let cid = r.constraints.keys().next().unwrap().clone();
        let mut r3 = r.clone();
        let c = r3.constraints.get_mut(&cid).unwrap();
        let amb = c.code.ambient().clone();
        let syms: Vec<usize> = c.vars.iter().enumerate().filter(|(_, v)| r.is_symbol(v)).map(|(i, _)| i).collect();
        let moduli = amb.moduli();
        let flip = |x: &[u64]| -> Vec<u64> {
            let mut y = x.to_vec();
            let mut col = 0;
            for (i, (_, al)) in amb.factors().iter().enumerate() {
                for _ in 0..al.dim() {
                    if !syms.contains(&i) {
                        y[col] = (moduli[col] - y[col]) % moduli[col];
                    }
                    col += 1;
                }
            }
            y
        };
        c.code = c.code.map_rows(&amb, flip).unwrap();
        for v in c.vars.clone() {
            if r.is_state(&v) {
                let (t, _) = r.edge_ends(&v).unwrap();
                let phi = r.iso(&v).unwrap();
                let n = Homomorphism::negation(&r.states[&v].alphabet);
                let new = if t == cid { phi.compose(&n).unwrap() } else { n.compose(&phi).unwrap() };
                r3.states.get_mut(&v).unwrap().iso = if new.is_identity() { None } else { Some(new) };
            }
        }
        assert_eq!(behavior_bundle(&r3).unwrap().code, base, "seed {seed}");
    }
}
