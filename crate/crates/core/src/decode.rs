//! Sum-product decoding on normal realizations.
//!
//! Messages on an internal state are stored in tail coordinates. Exact
//! decoding runs two passes over each tree of a cycle-free realization; the
//! iterative decoder solves the leaf fragments once and iterates only on the
//! 2-core.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Sub};

use num::{BigInt, BigRational, One, ToPrimitive, Zero};

use crate::algebra::{CodeSubgroup, QuotientMap};
use crate::corpus::ExhaustiveModel;
use crate::error::{Error, Result};
use crate::graphcore::{core_constraints, cyclomatic_number};
use crate::realization::{validate, Realization};

/// Cap on codewords enumerated by a single constraint update.
pub const UPDATE_CAP: u128 = 1 << 20;

/// Message weights: exact rationals or floats.
pub trait Weight:
    Clone + Debug + PartialEq + Zero + One + Add<Output = Self> + Mul<Output = Self> + Sub<Output = Self> + Div<Output = Self>
{
    /// `None` for negative or non-finite input.
    fn from_f64(x: f64) -> Option<Self>;
    fn to_f64(&self) -> f64;
}

impl Weight for f64 {
    fn from_f64(x: f64) -> Option<f64> {
        (x.is_finite() && x >= 0.0).then_some(x)
    }

    fn to_f64(&self) -> f64 {
        *self
    }
}

impl Weight for BigRational {
    /// Exact value of the shortest decimal string of `x`, so `0.9` is `9/10`.
    fn from_f64(x: f64) -> Option<BigRational> {
        if !x.is_finite() || x < 0.0 {
            return None;
        }
        parse_decimal(&format!("{x}"))
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
}

/// Parses `[-]digits[.digits][e[-]digits]` or `p/q` exactly.
pub fn parse_decimal(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        return (!d.is_zero()).then(|| BigRational::new(n, d));
    }
    if let Some((m, e)) = s.split_once(['e', 'E']) {
        let e: i32 = e.parse().ok()?;
        let scale = BigRational::from_integer(num::pow(BigInt::from(10), e.unsigned_abs() as usize));
        let m = parse_decimal(m)?;
        return Some(if e >= 0 { m * scale } else { m / scale });
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(b) => (true, b),
        None => (false, s),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if int.is_empty() && frac.is_empty() {
        return None;
    }
    if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits: BigInt = format!("{int}{frac}").parse().ok()?;
    let scale = num::pow(BigInt::from(10), frac.len());
    let v = BigRational::new(digits, scale);
    Some(if neg { -v } else { v })
}

/// Shortest `a/b` (or integer) rendering of an exact weight.
pub fn format_rational(x: &BigRational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Priors per symbol (or boundary state), indexed like `Alphabet::elements`.
pub type Priors<W> = HashMap<String, Vec<W>>;
/// Marginal weights per variable; internal states are valued at their tail.
pub type Marginals<W> = BTreeMap<String, Vec<W>>;

/// Scales to unit sum; `None` when the weights sum to zero.
pub fn normalize<W: Weight>(w: &[W]) -> Option<Vec<W>> {
    let total = w.iter().cloned().fold(W::zero(), |a, b| a + b);
    if total.is_zero() {
        return None;
    }
    Some(w.iter().map(|x| x.clone() / total.clone()).collect())
}

/// A constraint code unpacked into per-variable value indices.
#[derive(Clone, Debug)]
struct LocalCode {
    vars: Vec<String>,
    sizes: Vec<usize>,
    words: Vec<Vec<usize>>,
}

impl LocalCode {
    fn new(code: &CodeSubgroup) -> Result<LocalCode> {
        let amb = code.ambient();
        let vars = amb.labels();
        let sizes = amb.factors().iter().map(|(_, a)| a.order() as usize).collect();
        let ranges: Vec<_> = vars.iter().map(|v| amb.range(v)).collect::<Result<_>>()?;
        let mut words = Vec::new();
        for w in code.enumerate_with_cap(UPDATE_CAP)? {
            let idx = amb
                .factors()
                .iter()
                .zip(&ranges)
                .map(|((_, a), r)| a.index_of(&w[r.clone()]))
                .collect();
            words.push(idx);
        }
        Ok(LocalCode { vars, sizes, words })
    }

    fn position(&self, var: &str) -> Result<usize> {
        self.vars.iter().position(|v| v == var).ok_or_else(|| Error::UnknownVariable(var.to_string()))
    }

    /// `Σ_{c ∈ C, c_target = x} Π_{v ≠ target} μ_v(c_v)`, optionally also
    /// multiplying by the target's own incoming message.
    fn update<W: Weight>(&self, incoming: &[Option<&[W]>], target: usize, include_target: bool) -> Result<Vec<W>> {
        for (i, m) in incoming.iter().enumerate() {
            if m.is_none() && (i != target || include_target) {
                return Err(Error::MissingIncoming(self.vars[i].clone()));
            }
        }
        let mut out = vec![W::zero(); self.sizes[target]];
        for w in &self.words {
            let mut acc = W::one();
            for (i, &x) in w.iter().enumerate() {
                if i == target && !include_target {
                    continue;
                }
                acc = acc * incoming[i].unwrap()[x].clone();
                if acc.is_zero() {
                    break;
                }
            }
            if !acc.is_zero() {
                out[w[target]] = out[w[target]].clone() + acc;
            }
        }
        Ok(out)
    }
}

/// Outgoing message of `code` on `target`, given incoming messages on every
/// other variable of the code.
pub fn sp_update<W: Weight>(code: &CodeSubgroup, incoming: &HashMap<String, Vec<W>>, target: &str) -> Result<Vec<W>> {
    let local = LocalCode::new(code)?;
    let t = local.position(target)?;
    let msgs: Vec<Option<&[W]>> = local.vars.iter().map(|v| incoming.get(v).map(|m| m.as_slice())).collect();
    for (v, m) in local.vars.iter().zip(&msgs) {
        if let Some(m) = m {
            if m.len() != local.sizes[local.position(v)?] {
                return Err(Error::AlphabetMismatch(format!("message on `{v}` has {} weights", m.len())));
            }
        }
    }
    local.update(&msgs, t, false)
}

/// A message on one variable of a code, trimmed to `C|V` and summed over the
/// cosets of `C:V`.
#[derive(Clone, Debug)]
pub struct ReducedMessage<W> {
    pub quotient: QuotientMap,
    /// One weight per element of `C|V / C:V`, in alphabet order.
    pub weights: Vec<W>,
}

impl<W: Weight> ReducedMessage<W> {
    /// A message on `V` carrying each coset weight on the coset's representative.
    pub fn lift(&self) -> Vec<W> {
        let (_, alphabet) = &self.quotient.source().factors()[0];
        let mut out = vec![W::zero(); alphabet.order() as usize];
        for (i, q) in self.quotient.target().elements().iter().enumerate() {
            out[alphabet.index_of(&self.quotient.lift(q))] = self.weights[i].clone();
        }
        out
    }
}

/// Trims `msg` (on `var`) to `C|V` and merges it over the cosets of `C:V`.
/// Updates through `code` depend on an incoming message only through this
/// reduction.
pub fn message_reduce<W: Weight>(code: &CodeSubgroup, var: &str, msg: &[W]) -> Result<ReducedMessage<W>> {
    let alphabet = code.ambient().alphabet(var)?.clone();
    if msg.len() as u128 != alphabet.order() {
        return Err(Error::AlphabetMismatch(format!("message on `{var}` has {} weights", msg.len())));
    }
    let quotient = QuotientMap::effective(code, var)?;
    let target = quotient.target().clone();
    let mut weights = vec![W::zero(); target.order() as usize];
    for x in quotient.numerator().enumerate_with_cap(UPDATE_CAP)? {
        let q = quotient.project(&x)?;
        let i = target.index_of(&q);
        weights[i] = weights[i].clone() + msg[alphabet.index_of(&x)].clone();
    }
    Ok(ReducedMessage { quotient, weights })
}

/// Unnormalized marginals by enumerating the behavior.
pub fn brute_force_app<W: Weight>(r: &Realization, priors: &Priors<W>) -> Result<Marginals<W>> {
    check_priors(r, priors)?;
    let model = ExhaustiveModel::new(r)?;
    Ok(model.marginals(priors).into_iter().collect())
}

fn check_priors<W: Weight>(r: &Realization, priors: &Priors<W>) -> Result<()> {
    for (v, p) in priors {
        if !r.is_symbol(v) && !r.is_boundary(v) {
            return Err(Error::UnknownVariable(format!("prior on `{v}`, which is not external")));
        }
        let n = r.alphabet_of(v).unwrap().order();
        if p.len() as u128 != n {
            return Err(Error::AlphabetMismatch(format!("prior on `{v}` has {} weights, expected {n}", p.len())));
        }
    }
    Ok(())
}

/// Message-passing view of a realization.
struct Graph {
    codes: BTreeMap<String, LocalCode>,
    /// Internal state → (tail constraint, head constraint, head index of each tail index).
    edges: BTreeMap<String, (String, String, Vec<usize>)>,
}

type Key = (String, String);

impl Graph {
    fn new(r: &Realization) -> Result<Graph> {
        let report = validate(r);
        if !report.is_valid() {
            return Err(Error::ValidationFailed(report.to_string().trim().to_string()));
        }
        let mut codes = BTreeMap::new();
        for (id, c) in &r.constraints {
            codes.insert(id.clone(), LocalCode::new(&c.code)?);
        }
        let mut edges = BTreeMap::new();
        for s in r.internal_states() {
            let (t, h) = r.edge_ends(&s)?;
            let phi = r.iso(&s)?;
            let a = &r.states[&s].alphabet;
            let perm = a.elements().iter().map(|x| a.index_of(&phi.apply(x))).collect();
            edges.insert(s, (t, h, perm));
        }
        Ok(Graph { codes, edges })
    }

    fn other_end(&self, c: &str, s: &str) -> &str {
        let (t, h, _) = &self.edges[s];
        if t == c {
            h
        } else {
            t
        }
    }

    fn to_local_w<W: Weight>(&self, c: &str, s: &str, tail_msg: &[W]) -> Vec<W> {
        let (t, _, perm) = &self.edges[s];
        if t == c {
            return tail_msg.to_vec();
        }
        let mut out = vec![W::zero(); perm.len()];
        for (i, &j) in perm.iter().enumerate() {
            out[j] = tail_msg[i].clone();
        }
        out
    }

    fn to_tail<W: Weight>(&self, c: &str, s: &str, local: &[W]) -> Vec<W> {
        let (t, _, perm) = &self.edges[s];
        if t == c {
            return local.to_vec();
        }
        perm.iter().map(|&j| local[j].clone()).collect()
    }

    /// Incoming messages at `c` in local coordinates; internal states use the
    /// message sent by the other end, if known.
    fn incoming<W: Weight>(
        &self,
        c: &str,
        priors: &Priors<W>,
        msgs: &HashMap<Key, Vec<W>>,
        transform: &dyn Fn(&str, &str, Vec<W>) -> Result<Vec<W>>,
    ) -> Result<Vec<Option<Vec<W>>>> {
        let code = &self.codes[c];
        let mut out = Vec::new();
        for (i, v) in code.vars.iter().enumerate() {
            if self.edges.contains_key(v) {
                let from = self.other_end(c, v).to_string();
                match msgs.get(&(from, v.clone())) {
                    Some(m) => out.push(Some(transform(c, v, self.to_local_w(c, v, m))?)),
                    None => out.push(None),
                }
            } else {
                out.push(Some(priors.get(v).cloned().unwrap_or_else(|| vec![W::one(); code.sizes[i]])));
            }
        }
        Ok(out)
    }

    fn send<W: Weight>(
        &self,
        c: &str,
        s: &str,
        priors: &Priors<W>,
        msgs: &HashMap<Key, Vec<W>>,
        transform: &dyn Fn(&str, &str, Vec<W>) -> Result<Vec<W>>,
    ) -> Result<Vec<W>> {
        let code = &self.codes[c];
        let inc = self.incoming(c, priors, msgs, transform)?;
        let refs: Vec<Option<&[W]>> = inc.iter().map(|m| m.as_deref()).collect();
        let local = code.update(&refs, code.position(s)?, false)?;
        Ok(self.to_tail(c, s, &local))
    }

    /// Marginal of every variable from a complete message set. Each
    /// component's marginals are scaled by the total weight of the others.
    fn marginals<W: Weight>(
        &self,
        priors: &Priors<W>,
        msgs: &HashMap<Key, Vec<W>>,
        transform: &dyn Fn(&str, &str, Vec<W>) -> Result<Vec<W>>,
    ) -> Result<Marginals<W>> {
        let mut parts: Vec<(W, Marginals<W>)> = Vec::new();
        for tree in self.bfs_forest() {
            let mut out = Marginals::new();
            let mut total = None;
            for (c, _) in &tree {
                let code = &self.codes[c];
                let inc = self.incoming(c, priors, msgs, transform)?;
                let refs: Vec<Option<&[W]>> = inc.iter().map(|m| m.as_deref()).collect();
                for (i, v) in code.vars.iter().enumerate() {
                    let is_tail = self.edges.get(v).is_none_or(|(t, _, _)| t == c);
                    if is_tail {
                        let m = code.update(&refs, i, true)?;
                        total.get_or_insert_with(|| m.iter().cloned().fold(W::zero(), |a, b| a + b));
                        out.insert(v.clone(), m);
                    }
                }
            }
            parts.push((total.unwrap_or_else(W::one), out));
        }
        let mut out = Marginals::new();
        for (i, (_, m)) in parts.iter().enumerate() {
            let others = parts
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .fold(W::one(), |acc, (_, (z, _))| acc * z.clone());
            for (k, v) in m {
                out.insert(k.clone(), v.iter().map(|w| w.clone() * others.clone()).collect());
            }
        }
        Ok(out)
    }

    /// Constraints of each component, each in breadth-first order from its
    /// first constraint, with the edge to the parent.
    fn bfs_forest(&self) -> Vec<Vec<(String, Option<String>)>> {
        let mut seen: HashSet<String> = HashSet::new();
        let mut forest = Vec::new();
        for root in self.codes.keys() {
            if seen.contains(root) {
                continue;
            }
            seen.insert(root.clone());
            let mut order = vec![(root.clone(), None)];
            let mut queue = VecDeque::from([root.clone()]);
            while let Some(c) = queue.pop_front() {
                for v in &self.codes[&c].vars {
                    if self.edges.contains_key(v) {
                        let n = self.other_end(&c, v).to_string();
                        if seen.insert(n.clone()) {
                            order.push((n.clone(), Some(v.clone())));
                            queue.push_back(n);
                        }
                    }
                }
            }
            forest.push(order);
        }
        forest
    }
}

fn identity<W>(_: &str, _: &str, m: Vec<W>) -> Result<Vec<W>> {
    Ok(m)
}

fn exact_messages<W: Weight>(
    g: &Graph,
    priors: &Priors<W>,
    transform: &dyn Fn(&str, &str, Vec<W>) -> Result<Vec<W>>,
) -> Result<HashMap<Key, Vec<W>>> {
    let mut msgs: HashMap<Key, Vec<W>> = HashMap::new();
    for tree in g.bfs_forest() {
        for (c, parent) in tree.iter().rev() {
            if let Some(s) = parent {
                let m = g.send(c, s, priors, &msgs, transform)?;
                msgs.insert((c.clone(), s.clone()), m);
            }
        }
        for (c, parent) in &tree {
            for v in &g.codes[c].vars {
                if g.edges.contains_key(v) && Some(v) != parent.as_ref() {
                    let m = g.send(c, v, priors, &msgs, transform)?;
                    msgs.insert((c.clone(), v.clone()), m);
                }
            }
        }
    }
    Ok(msgs)
}

/// Exact unnormalized marginals of a cycle-free realization by two passes of
/// sum-product updates. Symbols without a prior get uniform unit weights.
pub fn decode_exact<W: Weight>(r: &Realization, priors: &Priors<W>) -> Result<Marginals<W>> {
    check_priors(r, priors)?;
    let g = Graph::new(r)?;
    if cyclomatic_number(r) > 0 {
        return Err(Error::NotCycleFree);
    }
    let msgs = exact_messages(&g, priors, &identity)?;
    g.marginals(priors, &msgs, &identity)
}

/// Exact decoding in which every internal message is replaced, before use,
/// by the lift of its reduction against the receiving constraint. Symbol
/// marginals equal those of [`decode_exact`].
pub fn decode_exact_reduced<W: Weight>(r: &Realization, priors: &Priors<W>) -> Result<Marginals<W>> {
    check_priors(r, priors)?;
    let g = Graph::new(r)?;
    if cyclomatic_number(r) > 0 {
        return Err(Error::NotCycleFree);
    }
    let reduce = |c: &str, s: &str, m: Vec<W>| -> Result<Vec<W>> {
        Ok(message_reduce(&r.constraints[c].code, s, &m)?.lift())
    };
    let msgs = exact_messages(&g, priors, &reduce)?;
    g.marginals(priors, &msgs, &reduce)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Schedule {
    /// Every core message is recomputed from the previous iteration.
    Flooding,
    /// Core messages are updated in place, in label order.
    Serial,
}

#[derive(Clone, Copy, Debug)]
pub struct IterOptions {
    pub max_iters: usize,
    pub schedule: Schedule,
    /// Weight of the previous message in each update, in `[0, 1)`.
    pub damping: f64,
    pub tol: f64,
}

impl Default for IterOptions {
    fn default() -> IterOptions {
        IterOptions { max_iters: 100, schedule: Schedule::Flooding, damping: 0.0, tol: 1e-8 }
    }
}

#[derive(Clone, Debug)]
pub struct IterativeResult {
    /// Normalized marginals; all zeros where the messages contradict.
    pub marginals: Marginals<f64>,
    pub iterations: usize,
    /// Largest message change in each iteration.
    pub deltas: Vec<f64>,
    pub converged: bool,
    /// Some marginal or message summed to zero.
    pub contradiction: bool,
    /// The realization had no cycles and was decoded exactly.
    pub exact: bool,
}

fn normalized_or_zero(w: Vec<f64>, contradiction: &mut bool) -> Vec<f64> {
    match normalize(&w) {
        Some(n) => n,
        None => {
            *contradiction = true;
            w
        }
    }
}

/// Iterative sum-product decoding with float weights. Messages leaving leaf
/// fragments are computed once; only messages between 2-core constraints are
/// iterated. A cycle-free realization is decoded exactly in one sweep.
pub fn decode_iterative(r: &Realization, priors: &Priors<f64>, opts: &IterOptions) -> Result<IterativeResult> {
    check_priors(r, priors)?;
    if !(0.0..1.0).contains(&opts.damping) {
        return Err(Error::Parse(format!("damping {} is outside [0, 1)", opts.damping)));
    }
    let g = Graph::new(r)?;
    let mut contradiction = false;
    let finish = |m: Marginals<f64>, contradiction: &mut bool| -> Marginals<f64> {
        m.into_iter().map(|(k, v)| (k, normalized_or_zero(v, contradiction))).collect()
    };
    if cyclomatic_number(r) == 0 {
        let msgs = exact_messages(&g, priors, &identity)?;
        let marginals = finish(g.marginals(priors, &msgs, &identity)?, &mut contradiction);
        return Ok(IterativeResult {
            marginals,
            iterations: 1,
            deltas: vec![0.0],
            converged: true,
            contradiction,
            exact: true,
        });
    }
    let core: HashSet<String> = core_constraints(r, None).into_iter().collect();
    // directed messages toward the core, and between core constraints
    let mut inward: Vec<Key> = Vec::new();
    let mut outward: Vec<Key> = Vec::new();
    let mut cyclic: Vec<Key> = Vec::new();
    for (s, (t, h, _)) in &g.edges {
        let (ti, hi) = (core.contains(t), core.contains(h));
        if ti && hi {
            cyclic.push((t.clone(), s.clone()));
            cyclic.push((h.clone(), s.clone()));
        } else {
            let side = r.components_without(&[s.clone()].into_iter().collect());
            let leafward_of = |c: &String| side.iter().find(|comp| comp.contains(c)).is_some_and(|comp| !comp.iter().any(|x| core.contains(x)));
            for from in [t, h] {
                if leafward_of(from) {
                    inward.push((from.clone(), s.clone()));
                } else {
                    outward.push((from.clone(), s.clone()));
                }
            }
        }
    }
    let mut msgs: HashMap<Key, Vec<f64>> = HashMap::new();
    let fill = |keys: &[Key], msgs: &mut HashMap<Key, Vec<f64>>, contradiction: &mut bool| -> Result<()> {
        let mut pending: Vec<Key> = keys.to_vec();
        while !pending.is_empty() {
            let before = pending.len();
            let mut rest = Vec::new();
            for (c, s) in pending {
                match g.send(&c, &s, priors, msgs, &identity) {
                    Ok(m) => {
                        let m = normalized_or_zero(m, contradiction);
                        msgs.insert((c, s), m);
                    }
                    Err(Error::MissingIncoming(_)) => rest.push((c, s)),
                    Err(e) => return Err(e),
                }
            }
            if rest.len() == before {
                return Err(Error::MissingIncoming(rest[0].1.clone()));
            }
            pending = rest;
        }
        Ok(())
    };
    fill(&inward, &mut msgs, &mut contradiction)?;
    for (c, s) in &cyclic {
        let n = r.states[s].alphabet.order() as usize;
        msgs.insert((c.clone(), s.clone()), vec![1.0 / n as f64; n]);
    }
    let mut deltas = Vec::new();
    let mut converged = false;
    let mut iterations = 0;
    while iterations < opts.max_iters {
        iterations += 1;
        let snapshot = msgs.clone();
        let mut delta = 0.0f64;
        for key in &cyclic {
            let source = if opts.schedule == Schedule::Flooding { &snapshot } else { &msgs };
            let fresh = normalized_or_zero(g.send(&key.0, &key.1, priors, source, &identity)?, &mut contradiction);
            let old = &msgs[key];
            let damped: Vec<f64> = fresh.iter().zip(old).map(|(n, o)| (1.0 - opts.damping) * n + opts.damping * o).collect();
            delta = damped.iter().zip(old).map(|(a, b)| (a - b).abs()).fold(delta, f64::max);
            msgs.insert(key.clone(), damped);
        }
        deltas.push(delta);
        if delta < opts.tol {
            converged = true;
            break;
        }
    }
    fill(&outward, &mut msgs, &mut contradiction)?;
    let marginals = finish(g.marginals(priors, &msgs, &identity)?, &mut contradiction);
    Ok(IterativeResult { marginals, iterations, deltas, converged, contradiction, exact: false })
}

/// Float view of exact marginals.
pub fn to_f64_marginals<W: Weight>(m: &Marginals<W>) -> Marginals<f64> {
    m.iter().map(|(k, v)| (k.clone(), v.iter().map(|w| w.to_f64()).collect())).collect()
}

