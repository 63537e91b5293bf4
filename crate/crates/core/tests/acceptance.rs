//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

mod common;

use std::collections::{BTreeSet, HashMap, HashSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use num::BigRational;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;
use normgraph::algebra::{ftsp_decompose, ftsp_orders, Alphabet, CodeSubgroup, ProductSpace};
use normgraph::analysis::{
    canonical_decomposition, controllability_test, is_internally_proper, is_internally_trim, obs_ctrl,
    state_trim_status, states_trim_proper,
};
use normgraph::corpus::builders::{hamming74, independent_checks, pad_state, redundant_checks, trellis};
use normgraph::corpus::oracle::brute_orthogonal as oracle_orthogonal;
use normgraph::corpus::random::{configuration_space, random_realization, Family, RandomSpec, Topology};
use normgraph::corpus::ExhaustiveModel;
use normgraph::decode::{
    brute_force_app, decode_exact, decode_exact_reduced, decode_iterative, normalize, IterOptions, Priors, Weight,
};
use normgraph::duality::{dualize, verify_duality};
use normgraph::graphcore::{
    core_constraints, cyclomatic_number, is_cut_edge, second_canonical_decomposition, two_core, two_core_with_order,
};
use normgraph::minimize::minimize_cycle_free;
use normgraph::realization::{connect, cut, external_behavior, validate, Realization};

/// Every algebraic and rational comparison below is exact.
const EXACT: f64 = 0.0;
/// Float decoding against exact rational marginals.
const FLOAT_TOL: f64 = 1e-9;
/// Pairs required per connected-fragments part.
const PAIRS_PER_PART: usize = 200;

type Outcome = String;

fn coords(r: &Realization) -> usize {
    r.symbols.len() + r.states.len()
}

fn small(r: &Realization) -> bool {
    configuration_space(r) <= 1 << 16
}

// ---------------------------------------------------------------- 1

fn duality_suite() -> Outcome {
    let items: Vec<_> = corpus(300).into_iter().filter(|(_, r)| coords(r) <= 12 && small(r)).collect();
    let mut kinds = BTreeSet::new();
    for (name, r) in &items {
        let rep = verify_duality(r).unwrap();
        assert!(rep.direct && rep.check_space, "{name}: {rep:?}");
        let o = ExhaustiveModel::new(r).unwrap();
        let alph: Vec<Alphabet> = o.external.iter().map(|l| o.alphabets[l].clone()).collect();
        let perp = oracle_orthogonal(&alph, &o.code());
        let dual = ExhaustiveModel::new(&dualize(r).unwrap()).unwrap();
        assert_eq!(dual.code(), perp, "{name}");
        assert_eq!(rep.code_order * rep.dual_order, alph.iter().map(Alphabet::order).product::<u128>(), "{name}");
        let mut fam = BTreeSet::new();
        for a in r.symbols.values().chain(r.states.values().map(|s| &s.alphabet)) {
            fam.insert(match a.field_prime() {
                Some(p) => format!("GF({p})"),
                None => "Z".to_string(),
            });
        }
        kinds.insert(if fam.len() > 1 { "mixed".to_string() } else { fam.into_iter().next().unwrap() });
    }
    assert!(items.len() >= 200, "{}", items.len());
    for k in ["GF(2)", "GF(3)", "Z", "mixed"] {
        assert!(kinds.contains(k), "no {k} instance");
    }
    format!("{} realizations, families {kinds:?}, tolerance {EXACT}", items.len())
}

// ---------------------------------------------------------------- 2

fn random_subgroup(rng: &mut ChaCha8Rng) -> CodeSubgroup {
    let pool = alphabet_pool();
    loop {
        let n = rng.gen_range(1..5);
        let picks: Vec<Alphabet> = (0..n).map(|_| pool.choose(rng).unwrap().clone()).collect();
        if picks.iter().map(Alphabet::order).product::<u128>() > 4096 {
            continue;
        }
        let amb = ProductSpace::new(picks.into_iter().enumerate().map(|(i, a)| (format!("v{i}"), a)).collect()).unwrap();
        return random_in(&amb, rng);
    }
}

fn random_in(amb: &ProductSpace, rng: &mut ChaCha8Rng) -> CodeSubgroup {
    let m = amb.moduli();
    let rows: Vec<Vec<u64>> = (0..rng.gen_range(0..4)).map(|_| m.iter().map(|&x| rng.gen_range(0..x)).collect()).collect();
    CodeSubgroup::canonicalize(&rows, amb).unwrap()
}

fn random_part(c: &CodeSubgroup, rng: &mut ChaCha8Rng) -> Vec<String> {
    c.ambient().labels().into_iter().filter(|_| rng.gen_bool(0.5)).collect()
}

fn algebra_dualities() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let n = 1000;
    for _ in 0..n {
        let h = random_subgroup(&mut rng);
        let m = h.ambient().moduli();
        let set = elements_of(&h);
        assert_eq!(set, closure(&m, h.generators()));
        let perp = h.orthogonal();
        assert_eq!(elements_of(&perp), brute_orthogonal(&m, &set));
        assert_eq!(perp.orthogonal(), h);
        assert_eq!(h.order() * perp.order(), h.ambient().order());

        let part = random_part(&h, &mut rng);
        let cols = h.ambient().columns(&part).unwrap();
        let p = h.project(&part).unwrap();
        let s = h.cross_section(&part).unwrap();
        assert_eq!(elements_of(&p), brute_project(&set, &cols));
        assert_eq!(elements_of(&s), brute_cross_section(&set, &cols));
        assert_eq!(p.orthogonal(), perp.cross_section(&part).unwrap());
        assert_eq!(s.orthogonal(), perp.project(&part).unwrap());

        let k = random_in(h.ambient(), &mut rng);
        let kset = elements_of(&k);
        let mut gens = h.generators().to_vec();
        gens.extend(k.generators().iter().cloned());
        let sum = h.sum(&k).unwrap();
        let meet = h.intersect(&k).unwrap();
        assert_eq!(elements_of(&sum), closure(&m, &gens));
        assert_eq!(elements_of(&meet), set.intersection(&kset).cloned().collect::<Set>());
        assert_eq!(sum.orthogonal(), perp.intersect(&k.orthogonal()).unwrap());
        assert_eq!(meet.orthogonal(), perp.sum(&k.orthogonal()).unwrap());
    }
    format!("{n} random subgroups and pairs, ambient order <= 4096")
}

// ---------------------------------------------------------------- 3

fn ftsp_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut checked = 0;
    let mut nontrivial = 0;
    while checked < 500 {
        let c = random_subgroup(&mut rng);
        if c.ambient().len() < 2 {
            continue;
        }
        let part = random_part(&c, &mut rng);
        if part.is_empty() || part.len() == c.ambient().len() {
            continue;
        }
        let rest: Vec<String> = c.ambient().labels().into_iter().filter(|l| !part.contains(l)).collect();
        let set = elements_of(&c);
        let quotient = |labels: &[String]| {
            let cols = c.ambient().columns(labels).unwrap();
            brute_project(&set, &cols).len() as u128 / brute_cross_section(&set, &cols).len() as u128
        };
        let expected = quotient(&part);
        assert_eq!(expected, quotient(&rest));
        let orders = ftsp_orders(&c, &part).unwrap();
        assert_eq!(orders, [expected; 4], "{c:?} {part:?}");
        let d = ftsp_decompose(&c, &part).unwrap();
        assert_eq!(d.quotient_order(), expected);
        assert_eq!(d.reassemble().unwrap(), c);
        if expected > 1 {
            nontrivial += 1;
        }
        checked += 1;
    }
    format!("{checked} subdirect products ({nontrivial} with nontrivial quotient), four orders agree, reassembly exact")
}

// ---------------------------------------------------------------- 4

fn controllability_suite() -> Outcome {
    let items = corpus(300);
    let mut enumerated = 0;
    for (name, r) in &items {
        let rep = controllability_test(r).unwrap();
        assert!(rep.identity_holds, "{name}: {rep:?}");
        assert_eq!(rep.universe % rep.extended, 0, "{name}");
        assert_eq!(rep.universe / rep.extended, rep.controllable_states, "{name}");
        assert!(rep.controllable_states <= rep.states, "{name}");
        if small(r) {
            let o = ExhaustiveModel::new(r).unwrap();
            assert_eq!(rep.universe, o.universe_size(), "{name}");
            assert_eq!(rep.extended, o.behavior_size() as u128, "{name}");
            assert_eq!(rep.controllable_states, o.internal_controllable().unwrap().len() as u128, "{name}");
            assert_eq!(rep.states, o.internal_state_order(), "{name}");
            enumerated += 1;
        }
    }
    let red = controllability_test(&redundant_checks()).unwrap();
    assert_eq!(red.dims, Some([10, 3, 8, 7]));
    assert!(!red.controllable);
    let ind = controllability_test(&independent_checks()).unwrap();
    assert!(ind.controllable);
    format!("{} realizations ({enumerated} enumerated); redundant dims {:?}, independent controllable", items.len(), red.dims.unwrap())
}

// ---------------------------------------------------------------- 5

fn obs_ctrl_duality() -> Outcome {
    let items = corpus(300);
    for (name, r) in &items {
        let d = dualize(r).unwrap();
        let (p, q) = (obs_ctrl(r).unwrap(), obs_ctrl(&d).unwrap());
        assert_eq!(p.internal_controllable, q.internal_unobservable.orthogonal(), "{name}");
        assert_eq!(q.internal_controllable, p.internal_unobservable.orthogonal(), "{name}");
        assert_eq!(p.internal_unobservable.order() * q.internal_controllable.order(), q.state_order, "{name}");
        if small(r) {
            let o = ExhaustiveModel::new(r).unwrap();
            assert_eq!(elements_of(&p.internal_unobservable), to_set(o.internal_unobservable()), "{name}");
            assert_eq!(elements_of(&p.internal_controllable), to_set(o.internal_controllable().unwrap()), "{name}");
        }
    }
    format!("{} realizations, exact", items.len())
}

// ---------------------------------------------------------------- 6

/// `|C|A / C:A|` for the externals on each side of every internal edge.
fn profile_oracle(r: &Realization) -> Vec<(u128, u128)> {
    let model = ExhaustiveModel::new(r).unwrap();
    let mut out = Vec::new();
    for s in r.internal_states() {
        let (t, _) = r.edge_ends(&s).unwrap();
        let side = r.components_without(&BTreeSet::from([s.clone()])).into_iter().find(|g| g.contains(&t)).unwrap();
        let a: Vec<String> =
            model.external.iter().filter(|v| side.contains(&r.constraint_of(v).unwrap())).cloned().collect();
        let b: Vec<String> = model.external.iter().filter(|v| !a.contains(v)).cloned().collect();
        let q = |part: &[String]| model.project(part).len() as u128 / model.code_cross_section(part).len() as u128;
        out.push((q(&a), q(&b)));
    }
    out
}

fn minimization_suite() -> Outcome {
    let items: Vec<_> = corpus(700)
        .into_iter()
        .filter(|(_, r)| r.is_connected() && cyclomatic_number(r) == 0 && small(r))
        .collect();
    assert!(items.len() >= 100, "{}", items.len());
    for (name, r) in &items {
        let m = minimize_cycle_free(r).unwrap().realization;
        assert!(states_trim_proper(&m), "{name}");
        assert_eq!(external_behavior(&m).unwrap(), external_behavior(r).unwrap(), "{name}");
        for (s, (a, b)) in m.internal_states().iter().zip(profile_oracle(r)) {
            let order = m.states[s].alphabet.order();
            assert_eq!((order, order), (a, b), "{name}: {s}");
        }
        let again = minimize_cycle_free(&m).unwrap();
        assert!(again.steps.is_empty() && again.realization == m, "{name}");
    }
    let rep3 = minimize_cycle_free(&pad_state(&trellis(2, &[vec![1, 1, 1]]), "s1", 2)).unwrap();
    assert_eq!(rep3.realization.state_orders(), vec![2, 2]);
    let pairs = minimize_cycle_free(&trellis(2, &[vec![1, 1, 0, 0], vec![0, 0, 1, 1]])).unwrap();
    assert_eq!(pairs.realization.state_orders(), vec![2, 1, 2]);
    let ham = trellis(2, &hamming74());
    let oracle: Vec<u128> = profile_oracle(&ham).into_iter().map(|(a, _)| a).collect();
    assert_eq!(minimize_cycle_free(&ham).unwrap().realization.state_orders(), oracle);
    format!("{} cycle-free realizations; rep-3 [2, 2], pairs [2, 1, 2], Hamming {oracle:?}", items.len())
}

// ---------------------------------------------------------------- 7

#[derive(Clone, Copy, Debug)]
struct Props {
    trim: bool,
    proper: bool,
    ext_obs: bool,
    int_obs: bool,
    tot_obs: bool,
    ext_ctrl: bool,
    int_ctrl: bool,
}

impl Props {
    fn tot_ctrl(&self) -> bool {
        self.ext_ctrl && self.int_ctrl
    }
}

/// Fragment properties read off the explicit behavior.
fn classify(f: &Realization) -> Props {
    let o = ExhaustiveModel::new(f).unwrap();
    let bd = f.boundary_vars();
    let order = |l: &String| o.alphabets[l].order();
    Props {
        trim: bd.iter().all(|b| o.project(std::slice::from_ref(b)).len() as u128 == order(b)),
        proper: bd.iter().all(|b| o.code_cross_section(std::slice::from_ref(b)).len() == 1),
        ext_obs: o.external_unobservable(&bd).len() == 1,
        int_obs: o.internal_unobservable().len() == 1,
        tot_obs: o.total_unobservable(&bd).len() == 1,
        ext_ctrl: o.project(&bd).len() as u128 == bd.iter().map(order).product::<u128>(),
        int_ctrl: o.internal_controllable().unwrap().len() as u128 == o.internal_state_order(),
    }
}

fn random_fragment(seed: u64, prefix: &str, rng: &mut ChaCha8Rng) -> Realization {
    let top = match rng.gen_range(0..5) {
        0 => Topology::Path(1),
        1 => Topology::Path(2),
        2 => Topology::Tree(3),
        3 => Topology::Cycle(2),
        _ => Topology::Cycle(3),
    };
    let fam = [Family::Binary, Family::Ternary, Family::Z4][(seed % 3) as usize];
    let mut spec = RandomSpec::new(top, fam);
    spec.symbols = (0, 1);
    spec.boundary = rng.gen_range(1..=2);
    spec.density = rng.gen_range(0.3..0.8);
    spec.prefix = prefix.to_string();
    random_realization(&spec, seed)
}

fn connected_fragments_lemma() -> Outcome {
    type Part = (&'static str, fn(&Props) -> bool, fn(&Props) -> bool);
    let parts: [Part; 8] = [
        ("a", |p| p.trim, |p| p.trim),
        ("b", |p| p.proper, |p| p.proper),
        ("c", |p| p.ext_obs, |p| p.ext_obs),
        ("d", |p| p.ext_ctrl, |p| p.ext_ctrl),
        ("e", |p| p.proper && p.int_obs, |p| p.int_obs),
        ("f", |p| p.trim && p.int_ctrl, |p| p.int_ctrl),
        ("g", |p| p.proper && p.tot_obs, |p| p.tot_obs),
        ("h", |p| p.trim && p.tot_ctrl(), |p| p.tot_ctrl()),
    ];
    let mut counts = [0usize; 8];
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut seed = 0u64;
    while counts.iter().any(|&c| c < PAIRS_PER_PART) {
        seed += 1;
        assert!(seed < 200_000, "too few hypothesis-satisfying pairs: {counts:?}");
        let f1 = random_fragment(3 * seed, "x", &mut rng);
        let f2 = random_fragment(3 * seed, "y", &mut rng);
        if !small(&f1) || !small(&f2) || !f1.is_connected() || !f2.is_connected() {
            continue;
        }
        let (p1, p2) = (classify(&f1), classify(&f2));
        let wanted: Vec<usize> =
            (0..8).filter(|&i| counts[i] < PAIRS_PER_PART && (parts[i].1)(&p1) && (parts[i].1)(&p2)).collect();
        if wanted.is_empty() {
            continue;
        }
        let s = f1.boundary_vars().choose(&mut rng).unwrap().clone();
        let t = f2.boundary_vars().choose(&mut rng).unwrap().clone();
        let joined = connect(&f1, Some(&f2), &[(s, t, None)]).unwrap();
        if !small(&joined) {
            continue;
        }
        assert!(validate(&joined).is_valid());
        let p12 = classify(&joined);
        for i in wanted {
            assert!((parts[i].2)(&p12), "part ({}) fails at seed {seed}: {p1:?} {p2:?} -> {p12:?}", parts[i].0);
            counts[i] += 1;
        }
    }
    let localized = two_core_localization();
    format!("pairs per part (a..h) {counts:?}; {localized}")
}

/// Ring of even-weight codes with one boundary state: all-ones on the ring
/// with zero symbols is a nonzero unobservable configuration.
fn planted_ring(k: usize) -> Realization {
    let b = Alphabet::binary(1);
    let mut r = Realization::new();
    for i in 0..k {
        r.add_symbol(&format!("ka{i}"), b.clone()).unwrap();
        r.add_state(&format!("ks{i}"), b.clone()).unwrap();
    }
    r.add_state("kb0", b.clone()).unwrap();
    for i in 0..k {
        let (s, a, n) = (format!("ks{i}"), format!("ka{i}"), format!("ks{}", (i + 1) % k));
        if i == 0 {
            let rows = [vec![1, 1, 0, 0], vec![0, 1, 1, 0], vec![0, 0, 1, 1]];
            r.add_constraint(&format!("kc{i}"), &[&s, &a, &n, "kb0"], &rows).unwrap();
        } else {
            r.add_constraint(&format!("kc{i}"), &[&s, &a, &n], &[vec![1, 1, 0], vec![0, 1, 1]]).unwrap();
        }
    }
    r.boundary = Some(vec!["kb0".to_string()]);
    r
}

/// Hangs an internally proper (or trim) random tree on every boundary state of `core`.
fn attach_trees(core: &Realization, want_proper: bool, rng: &mut ChaCha8Rng, family: Family) -> Option<Realization> {
    let mut r = core.clone();
    for (i, b) in core.boundary_vars().iter().enumerate() {
        let alpha = core.states[b].alphabet.clone();
        let tree = (0..200).find_map(|_| {
            let top = if rng.gen_bool(0.5) { Topology::Tree(rng.gen_range(1..4)) } else { Topology::Path(2) };
            let mut spec = RandomSpec::new(top, family);
            spec.symbols = (1, 2);
            spec.boundary = 1;
            spec.prefix = format!("t{i}");
            let t = random_realization(&spec, rng.gen());
            let ok = if want_proper { is_internally_proper(&t) } else { is_internally_trim(&t) };
            (ok && t.states[&t.boundary_vars()[0]].alphabet == alpha).then_some(t)
        })?;
        let tb = tree.boundary_vars()[0].clone();
        r = connect(&r, Some(&tree), &[(b.clone(), tb, None)]).unwrap();
    }
    r.boundary = None;
    Some(r)
}

fn two_core_localization() -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut tally: HashMap<(&str, bool), usize> = HashMap::new();
    let mut cores: Vec<(Realization, Family, bool)> = Vec::new();
    for k in 2..6 {
        let ring = planted_ring(k);
        cores.push((ring.clone(), Family::Binary, true));
        cores.push((dualize(&ring).unwrap(), Family::Binary, false));
    }
    for seed in 0..3000u64 {
        let fam = [Family::Binary, Family::Ternary, Family::Z4][(seed % 3) as usize];
        let top = [Topology::Cycle(2), Topology::Cycle(3), Topology::Theta(0, 1, 1)][(seed / 3 % 3) as usize];
        let mut spec = RandomSpec::new(top, fam);
        spec.symbols = (0, 1);
        spec.boundary = 1 + (seed as usize % 2);
        spec.prefix = "k".into();
        let core = random_realization(&spec, 50_000 + seed);
        if is_internally_proper(&core) {
            cores.push((core.clone(), fam, true));
        }
        if is_internally_trim(&core) {
            cores.push((core, fam, false));
        }
    }
    for (core, fam, proper_side) in cores {
        let Some(r) = attach_trees(&core, proper_side, &mut rng, fam) else { continue };
        if !small(&r) || !r.is_connected() {
            continue;
        }
        let skeleton = two_core(&r).unwrap().core.expect("cyclic");
        let expected: BTreeSet<&String> = core.constraints.keys().collect();
        assert_eq!(skeleton.constraints.keys().collect::<BTreeSet<_>>(), expected);
        let (whole, inner) = (classify(&r), classify(&skeleton));
        if proper_side {
            assert!(is_internally_proper(&r));
            assert_eq!(whole.int_obs, inner.int_obs, "observability not localized");
            *tally.entry(("obs", inner.int_obs)).or_default() += 1;
        } else {
            assert!(is_internally_trim(&r));
            assert_eq!(whole.int_ctrl, inner.int_ctrl, "controllability not localized");
            *tally.entry(("ctrl", inner.int_ctrl)).or_default() += 1;
        }
    }
    for key in [("obs", true), ("obs", false), ("ctrl", true), ("ctrl", false)] {
        assert!(tally.get(&key).copied().unwrap_or(0) >= 5, "too few 2-core instances for {key:?}: {tally:?}");
    }
    let g = |k| tally.get(&k).copied().unwrap_or(0);
    format!(
        "2-core localization: observable {}/{} unobservable, controllable {}/{} uncontrollable",
        g(("obs", true)),
        g(("obs", false)),
        g(("ctrl", true)),
        g(("ctrl", false))
    )
}

// ---------------------------------------------------------------- 8

fn zero_symbol_values(o: &ExhaustiveModel, r: &Realization, e: &str) -> HashSet<Vec<u64>> {
    o.configs
        .iter()
        .filter(|c| r.symbols.keys().all(|l| c[l].iter().all(|&x| x == 0)))
        .map(|c| c[e].clone())
        .collect()
}

fn state_trimness_theorem() -> Outcome {
    let mut instances = 0;
    let mut edges = 0;
    let mut outcomes = BTreeSet::new();
    for (name, r) in corpus(400) {
        if cyclomatic_number(&r) == 0 || !small(&r) || r.is_fragment() {
            continue;
        }
        let d = dualize(&r).unwrap();
        let (o, od) = (ExhaustiveModel::new(&r).unwrap(), ExhaustiveModel::new(&d).unwrap());
        let mut counted = false;
        for e in r.internal_states() {
            if is_cut_edge(&r, &e).unwrap() {
                continue;
            }
            let frag = &cut(&r, std::slice::from_ref(&e)).unwrap()[0];
            let fo = ExhaustiveModel::new(frag).unwrap();
            let bd = frag.boundary_vars();
            let unobservable_transitions = fo.code_cross_section(&bd);
            let ext_obs = unobservable_transitions.len() == 1;
            let ext_ctrl = fo.project(&bd).len() as u128 == bd.iter().map(|b| fo.alphabets[b].order()).product::<u128>();
            let order = r.states[&e].alphabet.order();
            let state_trim = o.project(std::slice::from_ref(&e)).len() as u128 == order;
            let dual_state_trim = od.project(std::slice::from_ref(&e)).len() as u128 == order;
            let observable = zero_symbol_values(&o, &r, &e).len() == 1;
            let dual_observable = zero_symbol_values(&od, &d, &e).len() == 1;
            assert_eq!(ext_obs, dual_state_trim && observable, "{name} {e}");
            assert_eq!(ext_ctrl, state_trim && dual_observable, "{name} {e}");
            let rep = state_trim_status(&r, &e).unwrap();
            assert!(rep.theorem_holds(), "{name} {e}");
            assert_eq!(
                (rep.externally_observable, rep.externally_controllable, rep.state_trim, rep.dual_state_trim),
                (ext_obs, ext_ctrl, state_trim, dual_state_trim),
                "{name} {e}"
            );
            assert_eq!(rep.unobservable_transitions.order(), unobservable_transitions.len() as u128, "{name} {e}");
            outcomes.insert((ext_obs, ext_ctrl));
            counted = true;
            edges += 1;
        }
        instances += usize::from(counted);
    }
    assert!(instances >= 100, "{instances}");
    format!("{instances} cyclic realizations, {edges} non-cut edges, outcome classes {}", outcomes.len())
}

// ---------------------------------------------------------------- 9

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn decoding_suite() -> Outcome {
    let items: Vec<_> = corpus(700).into_iter().filter(|(_, r)| cyclomatic_number(r) == 0 && small(r)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut worst = 0.0f64;
    for (name, r) in &items {
        let priors: Priors<BigRational> = r
            .symbols
            .iter()
            .map(|(k, a)| (k.clone(), (0..a.order()).map(|_| q(rng.gen_range(0..6), rng.gen_range(1..5))).collect()))
            .collect();
        let exact = decode_exact(r, &priors).unwrap();
        assert_eq!(exact, brute_force_app(r, &priors).unwrap(), "{name}");
        let reduced = decode_exact_reduced(r, &priors).unwrap();
        for k in r.external_labels() {
            assert_eq!(normalize(&exact[&k]), normalize(&reduced[&k]), "{name}: {k}");
        }
        let floats: Priors<f64> = priors.iter().map(|(k, v)| (k.clone(), v.iter().map(Weight::to_f64).collect())).collect();
        let it = decode_iterative(r, &floats, &IterOptions::default()).unwrap();
        assert!(it.exact && it.iterations == 1, "{name}");
        for (k, w) in &exact {
            if let Some(n) = normalize(w) {
                for (a, b) in n.iter().zip(&it.marginals[k]) {
                    worst = worst.max((a.to_f64() - b).abs());
                }
            }
        }
    }
    assert!(worst <= FLOAT_TOL, "{worst}");
    let rep3 = trellis(2, &[vec![1, 1, 1]]);
    let priors: Priors<BigRational> = rep3.symbols.keys().map(|k| (k.clone(), vec![q(9, 10), q(1, 10)])).collect();
    let m = decode_exact(&rep3, &priors).unwrap();
    for k in rep3.symbols.keys() {
        assert_eq!(normalize(&m[k]).unwrap(), vec![q(729, 730), q(1, 730)]);
    }
    format!("{} cycle-free realizations; rep-3 729/730; one-sweep float error {worst:.1e} <= {FLOAT_TOL:e}", items.len())
}

// ---------------------------------------------------------------- 10

struct Dsu(Vec<usize>);

impl Dsu {
    fn find(&mut self, x: usize) -> usize {
        if self.0[x] != x {
            let r = self.find(self.0[x]);
            self.0[x] = r;
        }
        self.0[x]
    }
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        self.0[ra] = rb;
        ra != rb
    }
}

fn edge_list(r: &Realization) -> (usize, Vec<(usize, usize)>) {
    let idx: HashMap<&String, usize> = r.constraints.keys().enumerate().map(|(i, c)| (c, i)).collect();
    let edges = r
        .internal_states()
        .iter()
        .map(|s| {
            let (t, h) = r.edge_ends(s).unwrap();
            (idx[&t], idx[&h])
        })
        .collect();
    (r.constraints.len(), edges)
}

fn min_cut_to_acyclic(n: usize, edges: &[(usize, usize)]) -> usize {
    (0u32..1 << edges.len())
        .filter(|mask| {
            let mut d = Dsu((0..n).collect());
            (0..edges.len()).filter(|i| mask & (1 << i) == 0).all(|i| d.union(edges[i].0, edges[i].1))
        })
        .map(|mask| mask.count_ones() as usize)
        .min()
        .unwrap()
}

fn peel(n: usize, edges: &[(usize, usize)]) -> BTreeSet<usize> {
    let mut alive: BTreeSet<usize> = (0..n).collect();
    loop {
        let mut deg = vec![0; n];
        for &(a, b) in edges {
            if alive.contains(&a) && alive.contains(&b) {
                deg[a] += 1;
                deg[b] += 1;
            }
        }
        let leaves: Vec<usize> = alive.iter().copied().filter(|&v| deg[v] <= 1).collect();
        if leaves.is_empty() {
            return alive;
        }
        for v in leaves {
            alive.remove(&v);
        }
    }
}

fn graph_suite() -> Outcome {
    let mut items = corpus(300);
    items.extend(normgraph::corpus::builders::shipped().into_iter().filter(|(_, r)| validate(r).is_valid()));
    let (mut cyclo, mut cores, mut round_trips) = (0, 0, 0);
    for (name, r) in &items {
        let (n, edges) = edge_list(r);
        if edges.len() <= 12 {
            assert_eq!(cyclomatic_number(r), min_cut_to_acyclic(n, &edges), "{name}");
            cyclo += 1;
        }
        let names: Vec<&String> = r.constraints.keys().collect();
        let expected: BTreeSet<String> = peel(n, &edges).into_iter().map(|i| names[i].clone()).collect();
        for seed in 0..8 {
            assert_eq!(core_constraints(r, Some(seed)).into_iter().collect::<BTreeSet<_>>(), expected, "{name}");
        }
        if r.is_connected() {
            if let Some(core) = two_core_with_order(r, Some(5)).unwrap().core {
                assert_eq!(cyclomatic_number(&core), cyclomatic_number(r), "{name}");
            }
            cores += 1;
        }
        if r.is_connected() && !r.internal_states().is_empty() && small(r) {
            let core = canonical_decomposition(r).unwrap().core;
            let d = second_canonical_decomposition(&core).unwrap();
            let back = d.compose().unwrap();
            assert_eq!(external_behavior(&back).unwrap(), external_behavior(&core).unwrap(), "{name}");
            round_trips += 1;
        }
    }
    assert!(cyclo >= 300 && round_trips >= 100, "{cyclo} {round_trips}");
    format!("cyclomatic checked on {cyclo} graphs, 2-core on {cores}, second decomposition round-trips {round_trips}")
}

// ----------------------------------------------------------------

fn main() {
    let criteria: [(usize, &str, fn() -> Outcome); 10] = [
        (1, "duality C° = C⊥ by both routes", duality_suite),
        (2, "algebra dualities", algebra_dualities),
        (3, "subdirect product factor orders", ftsp_suite),
        (4, "controllability test", controllability_suite),
        (5, "observability/controllability duality", obs_ctrl_duality),
        (6, "cycle-free minimization", minimization_suite),
        (7, "connected fragments and 2-core localization", connected_fragments_lemma),
        (8, "state-trimness theorem", state_trimness_theorem),
        (9, "decoding", decoding_suite),
        (10, "graph suite", graph_suite),
    ];
    let results: Vec<(Result<Outcome, String>, f64)> = std::thread::scope(|scope| {
        let handles: Vec<_> = criteria
            .iter()
            .map(|&(_, _, f)| {
                scope.spawn(move || {
                    let start = Instant::now();
                    let r = catch_unwind(AssertUnwindSafe(f)).map_err(|e| {
                        e.downcast_ref::<String>()
                            .cloned()
                            .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                            .unwrap_or_default()
                    });
                    (r, start.elapsed().as_secs_f64())
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });
    let mut failed = 0;
    for ((n, title, _), (res, secs)) in criteria.iter().zip(results) {
        match res {
            Ok(detail) => println!("PASS  criterion {n:>2}  {title}: {detail} [{secs:.1}s]"),
            Err(msg) => {
                failed += 1;
                println!("FAIL  criterion {n:>2}  {title}: {msg} [{secs:.1}s]");
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
