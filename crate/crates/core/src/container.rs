//! Container engine for `l`-partite `l`-uniform hypergraphs whose co-degree
//! (spreadness) condition may depend on which parts a partial transversal
//! touches.
//!
//! Given a probability measure `ν` on the edges, per-part densities
//! `p_1..p_l` and a constant `K` such that for every partial transversal `T`
//! touching the parts `S` and every `i ∈ S`
//!
//! ```text
//! ν(⟨T⟩) ≤ K / |V_i| · ∏_{j ∈ S \ {i}} p_j
//! ```
//!
//! every independent tuple `(U_1, …, U_l)` gets a fingerprint
//! `(F_2, …, F_l)` with `F_j ⊆ U_j`, and an index `i` with a container
//! `C_i ⊆ V_i` such that `U_i ⊆ F_i ∪ C_i` and `|C_i| ≤ (1 - ζ)|V_i|`.
//! The fingerprint and container are recomputed identically from any
//! `(U'_1, …, U'_l)` with `F_j ⊆ U'_j ⊆ U_j`.
//!
//! The process for `l ≥ 2` grows `F_l` greedily by the measure each vertex
//! carries in the remaining hypergraph `R`, moving its shadow into `H'` and
//! deleting the upsets of any partial transversal `X` whose co-degree in `H'`
//! gets too large. Afterwards either `H'` is light, and the low-degree
//! vertices of `V_l` form the container, or it is heavy, and the process
//! recurses on the projection of `H'` onto the first `l - 1` parts.
//!
//! All measure arithmetic is exact.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use num_traits::{One, Zero};
use rand::Rng;
use serde::Serialize;
use thiserror::Error;

use crate::rational::{self, int, pow2, Rational};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ContainerError {
    #[error("invalid hypergraph: {0}")]
    InvalidHypergraph(String),
    #[error("invalid measure: {0}")]
    InvalidMeasure(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("measure has empty support")]
    EmptySupport,
    #[error("independence violated: edge {edge} lies inside U")]
    NotIndependent { edge: usize },
    #[error("expected {expected} sets in U, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("vertex {vertex} is out of range for part {part} of size {size}")]
    VertexOutOfRange { part: usize, vertex: u32, size: usize },
    #[error("part {part} of U has {size} vertices but the fingerprint needs {required}")]
    FingerprintTooSmall { part: usize, size: usize, required: usize },
    #[error("spreadness fails for K = {k}; the minimal feasible K is {minimal_k}")]
    SpreadnessViolated { k: String, minimal_k: String },
}

const ABSENT: u32 = u32::MAX;

/// A partial transversal packed as one slot per part, `ABSENT` for parts it
/// does not touch.
type Key = Box<[u32]>;

fn sub_key(edge: &[u32], mask: u32, width: usize) -> Key {
    (0..width)
        .map(|i| if mask & (1 << i) != 0 { edge[i] } else { ABSENT })
        .collect()
}

fn key_parts(key: &[u32]) -> impl Iterator<Item = usize> + '_ {
    key.iter().enumerate().filter(|(_, &v)| v != ABSENT).map(|(i, _)| i)
}

fn key_to_transversal(key: &[u32]) -> Vec<Option<u32>> {
    key.iter().map(|&v| (v != ABSENT).then_some(v)).collect()
}

/// An `l`-partite `l`-uniform hypergraph. Vertices are `(part, local index)`;
/// every edge holds exactly one local index per part.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PartiteHypergraph {
    part_sizes: Vec<usize>,
    edges: Vec<Vec<u32>>,
}

impl PartiteHypergraph {
    pub fn new(part_sizes: Vec<usize>, edges: Vec<Vec<u32>>) -> Result<Self, ContainerError> {
        if part_sizes.is_empty() {
            return Err(ContainerError::InvalidHypergraph("no parts".into()));
        }
        if part_sizes.len() > 16 {
            return Err(ContainerError::InvalidHypergraph(format!(
                "{} parts is more than the supported 16",
                part_sizes.len()
            )));
        }
        if let Some(i) = part_sizes.iter().position(|&s| s == 0) {
            return Err(ContainerError::InvalidHypergraph(format!("part {i} is empty")));
        }
        let mut seen = HashSet::with_capacity(edges.len());
        for (ei, e) in edges.iter().enumerate() {
            if e.len() != part_sizes.len() {
                return Err(ContainerError::InvalidHypergraph(format!(
                    "edge {ei} has {} vertices, expected one per part ({})",
                    e.len(),
                    part_sizes.len()
                )));
            }
            for (part, (&v, &size)) in e.iter().zip(&part_sizes).enumerate() {
                if v as usize >= size {
                    return Err(ContainerError::VertexOutOfRange { part, vertex: v, size });
                }
            }
            if !seen.insert(e.as_slice()) {
                return Err(ContainerError::InvalidHypergraph(format!("edge {ei} is duplicated")));
            }
        }
        Ok(Self { part_sizes, edges })
    }

    /// Every transversal, in lexicographic order.
    pub fn complete(part_sizes: Vec<usize>) -> Result<Self, ContainerError> {
        let mut edges = vec![Vec::new()];
        for &size in &part_sizes {
            edges = edges
                .into_iter()
                .flat_map(|prefix: Vec<u32>| {
                    (0..size as u32).map(move |v| {
                        let mut e = prefix.clone();
                        e.push(v);
                        e
                    })
                })
                .collect();
        }
        Self::new(part_sizes, edges)
    }

    pub fn ell(&self) -> usize {
        self.part_sizes.len()
    }

    pub fn part_sizes(&self) -> &[usize] {
        &self.part_sizes
    }

    pub fn part_size(&self, part: usize) -> usize {
        self.part_sizes[part]
    }

    pub fn edges(&self) -> &[Vec<u32>] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    fn edge_inside(&self, e: &[u32], u: &[BTreeSet<u32>]) -> bool {
        e.iter().zip(u).all(|(v, part)| part.contains(v))
    }

    /// Index of some edge with every vertex in `u`, if one exists.
    pub fn find_edge_inside(&self, u: &[BTreeSet<u32>]) -> Option<usize> {
        self.edges.iter().position(|e| self.edge_inside(e, u))
    }
}

/// Non-negative weights on the edges of a hypergraph. Queries normalise by
/// the total, so the weights need not sum to one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EdgeMeasure {
    #[serde(serialize_with = "rational::serialize_vec")]
    weights: Vec<Rational>,
    #[serde(serialize_with = "rational::serialize")]
    total: Rational,
}

impl EdgeMeasure {
    pub fn new(h: &PartiteHypergraph, weights: Vec<Rational>) -> Result<Self, ContainerError> {
        if weights.len() != h.edge_count() {
            return Err(ContainerError::InvalidMeasure(format!(
                "{} weights for {} edges",
                weights.len(),
                h.edge_count()
            )));
        }
        if let Some(i) = weights.iter().position(|w| *w < Rational::zero()) {
            return Err(ContainerError::InvalidMeasure(format!("weight {i} is negative")));
        }
        let total = weights.iter().sum();
        Ok(Self { weights, total })
    }

    /// `ν(e) = 1 / e(H)` for every edge.
    pub fn uniform(h: &PartiteHypergraph) -> Self {
        let weights = vec![Rational::one(); h.edge_count()];
        let total = int(h.edge_count() as i64);
        Self { weights, total }
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn total(&self) -> &Rational {
        &self.total
    }

    pub fn probability(&self, edge: usize) -> Rational {
        &self.weights[edge] / &self.total
    }

    pub fn probabilities(&self) -> Result<Vec<Rational>, ContainerError> {
        if self.total.is_zero() {
            return Err(ContainerError::EmptySupport);
        }
        Ok(self.weights.iter().map(|w| w / &self.total).collect())
    }
}

/// Densities `p_1..p_l` and the spreadness constant `K`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpreadParams {
    #[serde(serialize_with = "rational::serialize_vec")]
    pub p: Vec<Rational>,
    #[serde(serialize_with = "rational::serialize")]
    pub k: Rational,
}

impl SpreadParams {
    pub fn new(p: Vec<Rational>, k: Rational) -> Result<Self, ContainerError> {
        let zero = Rational::zero();
        let one = Rational::one();
        if let Some(i) = p.iter().position(|x| *x <= zero || *x > one) {
            return Err(ContainerError::InvalidParams(format!(
                "p_{} = {} is outside (0, 1]",
                i + 1,
                rational::format(&p[i])
            )));
        }
        if k <= zero {
            return Err(ContainerError::InvalidParams("K must be positive".into()));
        }
        Ok(Self { p, k })
    }

    /// `max(1, ⌈|V_j| · p_j⌉)`.
    pub fn fingerprint_size(&self, part: usize, part_size: usize) -> usize {
        fingerprint_size(part_size, &self.p[part])
    }
}

fn fingerprint_size(part_size: usize, p: &Rational) -> usize {
    rational::ceil_usize(&(int(part_size as i64) * p)).max(1)
}

/// `ζ(K, 1) = 1/K`, `ζ(K, l) = min(1/(4K), ζ(2^(l+3) K, l - 1))`.
pub fn zeta(k: &Rational, ell: usize) -> Rational {
    let own = if ell <= 1 {
        k.recip()
    } else {
        (int(4) * k).recip()
    };
    if ell <= 1 {
        own
    } else {
        own.min(zeta(&(pow2(ell + 3) * k), ell - 1))
    }
}

/// `α = 2^(-l-2)`.
pub fn alpha(ell: usize) -> Rational {
    pow2(ell + 2).recip()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Spreadness {
    #[serde(serialize_with = "rational::serialize")]
    pub minimal_k: Rational,
    /// The partial transversal and part attaining the minimum.
    pub witness: Vec<Option<u32>>,
    pub witness_part: usize,
}

/// The smallest `K` for which the spreadness condition holds. Only partial
/// transversals contained in support edges can have positive measure, so
/// only those are enumerated.
pub fn check_spreadness(
    h: &PartiteHypergraph,
    nu: &EdgeMeasure,
    p: &[Rational],
) -> Result<Spreadness, ContainerError> {
    if p.len() != h.ell() {
        return Err(ContainerError::Arity {
            expected: h.ell(),
            got: p.len(),
        });
    }
    let probs = nu.probabilities()?;
    let ell = h.ell();
    let mut upsets: BTreeMap<Key, Rational> = BTreeMap::new();
    for (e, pr) in h.edges().iter().zip(&probs) {
        if pr.is_zero() {
            continue;
        }
        for mask in 1..(1u32 << ell) {
            *upsets.entry(sub_key(e, mask, ell)).or_insert_with(Rational::zero) += pr;
        }
    }
    let mut best: Option<Spreadness> = None;
    for (key, measure) in &upsets {
        let parts: Vec<usize> = key_parts(key).collect();
        for &i in &parts {
            let others: Rational = parts.iter().filter(|&&j| j != i).map(|&j| &p[j]).product();
            let need = measure * int(h.part_size(i) as i64) / others;
            if best.as_ref().is_none_or(|b| need > b.minimal_k) {
                best = Some(Spreadness {
                    minimal_k: need,
                    witness: key_to_transversal(key),
                    witness_part: i,
                });
            }
        }
    }
    best.ok_or(ContainerError::EmptySupport)
}

/// `ν(⟨T⟩ ∩ family)`: the normalised measure of the edges in `family` that
/// contain the partial transversal `t`.
pub fn upset_measure(
    h: &PartiteHypergraph,
    nu: &EdgeMeasure,
    t: &[Option<u32>],
    family: impl IntoIterator<Item = usize>,
) -> Rational {
    let mut sum = Rational::zero();
    for e in family {
        let edge = &h.edges()[e];
        if t.iter().zip(edge).all(|(want, v)| want.is_none_or(|w| w == *v)) {
            sum += &nu.weights()[e];
        }
    }
    if nu.total().is_zero() {
        sum
    } else {
        sum / nu.total()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CaseKind {
    /// `l = 1`: the container is the zero-measure vertices.
    Base,
    /// `ν(H') < α p_l`: low-degree vertices of `V_l`.
    Sparse,
    /// `ν(H') ≥ α p_l`: recurse on the projection of `H'`.
    Dense,
}

/// `(F_2, …, F_l)`, stored with an unused empty slot for part 1 so that
/// `parts[j]` is the fingerprint of part `j` (0-based).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Fingerprint {
    pub parts: Vec<Vec<u32>>,
}

impl Fingerprint {
    pub fn part(&self, j: usize) -> &[u32] {
        &self.parts[j]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ContainerResult {
    /// 0-based part index `i` of the container.
    pub index: usize,
    /// Sorted local indices of `C_i`.
    pub container: Vec<u32>,
    #[serde(serialize_with = "rational::serialize")]
    pub zeta: Rational,
    /// Which case fired at each recursion depth, outermost first.
    pub case_trace: Vec<CaseKind>,
}

/// Full state of one recursion level, kept so invariants can be checked
/// independently of the process.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LevelTrace {
    pub hypergraph: PartiteHypergraph,
    /// Normalised edge probabilities.
    #[serde(serialize_with = "rational::serialize_vec")]
    pub nu: Vec<Rational>,
    #[serde(serialize_with = "rational::serialize_vec")]
    pub p: Vec<Rational>,
    #[serde(serialize_with = "rational::serialize")]
    pub k: Rational,
    /// `F_l` in selection order (empty at the base level).
    pub selected: Vec<u32>,
    pub in_h_prime: Vec<bool>,
    pub in_deleted: Vec<bool>,
    /// The sets `X` added to `L`, sorted.
    pub listed: Vec<Vec<Option<u32>>>,
    #[serde(serialize_with = "rational::serialize")]
    pub nu_h_prime: Rational,
    #[serde(serialize_with = "rational::serialize")]
    pub nu_deleted: Rational,
    pub case: CaseKind,
}

impl LevelTrace {
    pub fn ell(&self) -> usize {
        self.hypergraph.ell()
    }

    /// Edges still in `R` at the end of the level.
    pub fn remaining(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.nu.len()).filter(|&e| !self.in_h_prime[e] && !self.in_deleted[e])
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ContainerOutcome {
    pub fingerprint: Fingerprint,
    pub result: ContainerResult,
    pub levels: Vec<LevelTrace>,
}

fn check_u(h: &PartiteHypergraph, u: &[BTreeSet<u32>]) -> Result<(), ContainerError> {
    if u.len() != h.ell() {
        return Err(ContainerError::Arity {
            expected: h.ell(),
            got: u.len(),
        });
    }
    for (part, set) in u.iter().enumerate() {
        let size = h.part_size(part);
        if let Some(&vertex) = set.iter().find(|&&v| v as usize >= size) {
            return Err(ContainerError::VertexOutOfRange { part, vertex, size });
        }
    }
    Ok(())
}

/// Runs the container process on an independent tuple `u`.
///
/// Checks independence, fingerprint sizes and the spreadness condition
/// before starting. The output is a deterministic function of the inputs.
pub fn run_container_process(
    h: &PartiteHypergraph,
    nu: &EdgeMeasure,
    params: &SpreadParams,
    u: &[BTreeSet<u32>],
) -> Result<ContainerOutcome, ContainerError> {
    check_u(h, u)?;
    if params.p.len() != h.ell() {
        return Err(ContainerError::Arity {
            expected: h.ell(),
            got: params.p.len(),
        });
    }
    let probs = nu.probabilities()?;
    if let Some(edge) = h.find_edge_inside(u) {
        return Err(ContainerError::NotIndependent { edge });
    }
    for part in 1..h.ell() {
        let required = params.fingerprint_size(part, h.part_size(part));
        if u[part].len() < required {
            return Err(ContainerError::FingerprintTooSmall {
                part,
                size: u[part].len(),
                required,
            });
        }
    }
    let spread = check_spreadness(h, nu, &params.p)?;
    if spread.minimal_k > params.k {
        return Err(ContainerError::SpreadnessViolated {
            k: rational::format(&params.k),
            minimal_k: rational::format(&spread.minimal_k),
        });
    }

    let mut levels = Vec::new();
    let (fingerprint, index, container, case_trace) =
        run_level(h.clone(), probs, &params.p, params.k.clone(), u, &mut levels)?;
    Ok(ContainerOutcome {
        fingerprint: Fingerprint { parts: fingerprint },
        result: ContainerResult {
            index,
            container,
            zeta: zeta(&params.k, h.ell()),
            case_trace,
        },
        levels,
    })
}

type LevelOutput = (Vec<Vec<u32>>, usize, Vec<u32>, Vec<CaseKind>);

fn run_level(
    h: PartiteHypergraph,
    nu: Vec<Rational>,
    p: &[Rational],
    k: Rational,
    u: &[BTreeSet<u32>],
    levels: &mut Vec<LevelTrace>,
) -> Result<LevelOutput, ContainerError> {
    let ell = h.ell();
    let edges_len = h.edge_count();

    if ell == 1 {
        let mut carries = vec![false; h.part_size(0)];
        for (e, pr) in h.edges().iter().zip(&nu) {
            if !pr.is_zero() {
                carries[e[0] as usize] = true;
            }
        }
        let container = (0..h.part_size(0) as u32)
            .filter(|&v| !carries[v as usize])
            .collect();
        levels.push(LevelTrace {
            hypergraph: h,
            nu,
            p: p.to_vec(),
            k,
            selected: Vec::new(),
            in_h_prime: vec![false; edges_len],
            in_deleted: vec![false; edges_len],
            listed: Vec::new(),
            nu_h_prime: Rational::zero(),
            nu_deleted: Rational::zero(),
            case: CaseKind::Base,
        });
        return Ok((vec![Vec::new()], 0, container, vec![CaseKind::Base]));
    }

    let last = ell - 1;
    let last_size = h.part_size(last);
    let rounds = fingerprint_size(last_size, &p[last]);

    let mut by_last: Vec<Vec<usize>> = vec![Vec::new(); last_size];
    let mut containing: HashMap<Key, Vec<usize>> = HashMap::new();
    for (ei, e) in h.edges().iter().enumerate() {
        by_last[e[last] as usize].push(ei);
        for mask in 1..(1u32 << last) {
            containing.entry(sub_key(e, mask, last)).or_default().push(ei);
        }
    }

    let mut degree_in_r: Vec<Rational> = by_last
        .iter()
        .map(|es| es.iter().map(|&e| &nu[e]).sum())
        .collect();
    let mut in_h_prime = vec![false; edges_len];
    let mut in_deleted = vec![false; edges_len];
    let mut h_prime_measure: HashMap<Key, Rational> = HashMap::new();
    let mut listed: HashSet<Key> = HashSet::new();
    let mut selected: Vec<u32> = Vec::with_capacity(rounds);
    let mut in_selected = vec![false; last_size];

    // smallest threshold over s ∈ I(X) of K/|V_s| · p_l · ∏_{I(X)\{s}} p_i
    let deletion_threshold = |key: &[u32]| -> Rational {
        let parts: Vec<usize> = key_parts(key).collect();
        parts
            .iter()
            .map(|&s| {
                let others: Rational =
                    parts.iter().filter(|&&j| j != s).map(|&j| &p[j]).product();
                &k / int(h.part_size(s) as i64) * &p[last] * others
            })
            .min()
            .expect("keys are nonempty")
    };

    for _ in 0..rounds {
        let v = u[last]
            .iter()
            .copied()
            .filter(|&v| !in_selected[v as usize])
            // max by degree, ties to the smallest vertex
            .fold(None::<u32>, |best, v| match best {
                Some(b) if degree_in_r[b as usize] >= degree_in_r[v as usize] => Some(b),
                _ => Some(v),
            })
            .ok_or(ContainerError::FingerprintTooSmall {
                part: last,
                size: u[last].len(),
                required: rounds,
            })?;
        selected.push(v);
        in_selected[v as usize] = true;

        let mut touched: Vec<Key> = Vec::new();
        for &e in &by_last[v as usize] {
            if in_h_prime[e] || in_deleted[e] {
                continue;
            }
            in_h_prime[e] = true;
            degree_in_r[v as usize] -= &nu[e];
            let edge = &h.edges()[e];
            for mask in 1..(1u32 << last) {
                let key = sub_key(edge, mask, last);
                *h_prime_measure.entry(key.clone()).or_insert_with(Rational::zero) += &nu[e];
                touched.push(key);
            }
        }
        touched.sort_unstable();
        touched.dedup();
        for key in touched {
            if listed.contains(&key) {
                continue;
            }
            if h_prime_measure[&key] > deletion_threshold(&key) {
                for &e in &containing[&key] {
                    if !in_h_prime[e] && !in_deleted[e] {
                        in_deleted[e] = true;
                        degree_in_r[h.edges()[e][last] as usize] -= &nu[e];
                    }
                }
                listed.insert(key);
            }
        }
    }

    let nu_h_prime: Rational = (0..edges_len).filter(|&e| in_h_prime[e]).map(|e| &nu[e]).sum();
    let nu_deleted: Rational = (0..edges_len).filter(|&e| in_deleted[e]).map(|e| &nu[e]).sum();
    let a = alpha(ell);
    let mut listed: Vec<Key> = listed.into_iter().collect();
    listed.sort_unstable();
    let listed = listed.iter().map(|k| key_to_transversal(k)).collect();
    let mut trace = LevelTrace {
        hypergraph: h,
        nu,
        p: p.to_vec(),
        k,
        selected: selected.clone(),
        in_h_prime,
        in_deleted,
        listed,
        nu_h_prime,
        nu_deleted,
        case: CaseKind::Sparse,
    };

    if trace.nu_h_prime < &a * &p[last] {
        let cutoff = &a / int(last_size as i64);
        let container = (0..last_size as u32)
            .filter(|&v| !in_selected[v as usize] && degree_in_r[v as usize] <= cutoff)
            .collect();
        let mut fingerprint = vec![Vec::new(); ell];
        for j in 1..last {
            let size = fingerprint_size(trace.hypergraph.part_size(j), &p[j]);
            fingerprint[j] = u[j].iter().copied().take(size).collect();
        }
        fingerprint[last] = selected;
        levels.push(trace);
        return Ok((fingerprint, last, container, vec![CaseKind::Sparse]));
    }

    trace.case = CaseKind::Dense;
    let mut projected: BTreeMap<Vec<u32>, Rational> = BTreeMap::new();
    for (e, edge) in trace.hypergraph.edges().iter().enumerate() {
        if trace.in_h_prime[e] {
            *projected.entry(edge[..last].to_vec()).or_insert_with(Rational::zero) +=
                &trace.nu[e];
        }
    }
    let sub_sizes = trace.hypergraph.part_sizes()[..last].to_vec();
    let (sub_edges, sub_weights): (Vec<_>, Vec<_>) = projected.into_iter().unzip();
    let sub_nu: Vec<Rational> = sub_weights.iter().map(|w| w / &trace.nu_h_prime).collect();
    let sub_h = PartiteHypergraph::new(sub_sizes, sub_edges)?;
    let sub_k = &trace.k / &a * int(2);
    levels.push(trace);

    let (mut fingerprint, index, container, mut cases) =
        run_level(sub_h, sub_nu, &p[..last], sub_k, &u[..last], levels)?;
    fingerprint.push(selected);
    cases.insert(0, CaseKind::Dense);
    Ok((fingerprint, index, container, cases))
}

/// Checks of the three guarantees on one output.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ContainerReport {
    /// `|F_j| = s_j` and `F_j ⊆ U_j` without repeats, for `j ≥ 2`.
    pub fingerprint_ok: bool,
    /// `U_i ⊆ F_i ∪ C_i`.
    pub coverage_ok: bool,
    /// `|C_i| ≤ (1 - ζ)|V_i|` with the reported `ζ`.
    pub size_ok: bool,
    /// The reported `ζ` equals the closed form `ζ(K, l)`.
    pub zeta_ok: bool,
    pub reconstruction_trials: usize,
    pub reconstruction_ok: bool,
    pub messages: Vec<String>,
}

impl ContainerReport {
    pub fn passed(&self) -> bool {
        self.fingerprint_ok && self.coverage_ok && self.size_ok && self.zeta_ok && self.reconstruction_ok
    }
}

/// A random `U'` with `F_j ⊆ U'_j ⊆ U_j` (and an arbitrary `U'_1 ⊆ U_1`).
pub fn sample_sub_tuple<R: Rng + ?Sized>(
    u: &[BTreeSet<u32>],
    fingerprint: &Fingerprint,
    rng: &mut R,
) -> Vec<BTreeSet<u32>> {
    u.iter()
        .enumerate()
        .map(|(j, set)| {
            let forced: BTreeSet<u32> = fingerprint
                .parts
                .get(j)
                .map(|f| f.iter().copied().collect())
                .unwrap_or_default();
            set.iter()
                .copied()
                .filter(|v| forced.contains(v) || rng.gen_bool(0.5))
                .collect()
        })
        .collect()
}

/// Verifies fingerprint sizes, coverage, the container size bound, and
/// reconstruction from `trials` random sub-tuples.
pub fn verify_container_output<R: Rng + ?Sized>(
    h: &PartiteHypergraph,
    nu: &EdgeMeasure,
    params: &SpreadParams,
    u: &[BTreeSet<u32>],
    fingerprint: &Fingerprint,
    result: &ContainerResult,
    trials: usize,
    rng: &mut R,
) -> ContainerReport {
    let mut messages = Vec::new();
    let ell = h.ell();

    let mut fingerprint_ok = fingerprint.parts.len() == ell
        && fingerprint.parts.first().is_some_and(Vec::is_empty);
    if fingerprint_ok {
        for j in 1..ell {
            let f = &fingerprint.parts[j];
            let want = params.fingerprint_size(j, h.part_size(j));
            let distinct: BTreeSet<u32> = f.iter().copied().collect();
            if f.len() != want || distinct.len() != f.len() || !distinct.is_subset(&u[j]) {
                fingerprint_ok = false;
                messages.push(format!("F_{} has {} vertices, expected {want} from U", j + 1, f.len()));
            }
        }
    } else {
        messages.push("fingerprint has the wrong shape".into());
    }

    let i = result.index;
    let coverage_ok = i < ell && {
        let covered: BTreeSet<u32> = result
            .container
            .iter()
            .chain(fingerprint.parts.get(i).into_iter().flatten())
            .copied()
            .collect();
        let missing: Vec<u32> = u[i].difference(&covered).copied().collect();
        if !missing.is_empty() {
            messages.push(format!("U_{} not covered: missing {missing:?}", i + 1));
        }
        missing.is_empty()
    };

    let size_ok = i < ell && {
        let bound = (Rational::one() - &result.zeta) * int(h.part_size(i) as i64);
        let ok = int(result.container.len() as i64) <= bound;
        if !ok {
            messages.push(format!(
                "|C_{}| = {} exceeds (1 - zeta)|V| = {}",
                i + 1,
                result.container.len(),
                rational::format(&bound)
            ));
        }
        ok
    };

    let zeta_ok = result.zeta == zeta(&params.k, ell);
    if !zeta_ok {
        messages.push("zeta differs from the closed form".into());
    }

    let mut reconstruction_ok = true;
    for trial in 0..trials {
        let sub = sample_sub_tuple(u, fingerprint, rng);
        match run_container_process(h, nu, params, &sub) {
            Ok(again) if again.fingerprint == *fingerprint && again.result == *result => {}
            Ok(_) => {
                reconstruction_ok = false;
                messages.push(format!("reconstruction trial {trial} produced a different output"));
            }
            Err(e) => {
                reconstruction_ok = false;
                messages.push(format!("reconstruction trial {trial} failed: {e}"));
            }
        }
    }

    ContainerReport {
        fingerprint_ok,
        coverage_ok,
        size_ok,
        zeta_ok,
        reconstruction_trials: trials,
        reconstruction_ok,
        messages,
    }
}

/// Post-process inequalities, recomputed from the level traces.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InvariantReport {
    /// Co-degree bound in `H'` for every `X ⊆ V \ V_l` and `s ∈ I(X)`:
    /// `ν(⟨X⟩ ∩ H') ≤ 2K/|V_s| · p_l · ∏_{I(X)\{s}} p_i`.
    pub codegree_ok: bool,
    /// `ν(H') > 2^(-l) p_l ν(D)` whenever `ν(D) > 0`.
    pub accounting_ok: bool,
    /// `ν(H') ≥ |V_l| p_l max_{v ∈ U_l \ F_l} ν(⟨v⟩ ∩ R)`.
    pub max_degree_ok: bool,
    /// `R`, `H'` and `D` partition the edges and no edge of `R` meets `F_l`.
    pub partition_ok: bool,
    pub messages: Vec<String>,
}

impl InvariantReport {
    pub fn passed(&self) -> bool {
        self.codegree_ok && self.accounting_ok && self.max_degree_ok && self.partition_ok
    }
}

pub fn check_process_invariants(outcome: &ContainerOutcome, u: &[BTreeSet<u32>]) -> InvariantReport {
    let mut report = InvariantReport {
        codegree_ok: true,
        accounting_ok: true,
        max_degree_ok: true,
        partition_ok: true,
        messages: Vec::new(),
    };
    for (depth, level) in outcome.levels.iter().enumerate() {
        let ell = level.ell();
        if ell < 2 {
            continue;
        }
        let last = ell - 1;
        let h = &level.hypergraph;
        let p = &level.p;
        let edges = h.edges();

        let selected: BTreeSet<u32> = level.selected.iter().copied().collect();
        for (e, edge) in edges.iter().enumerate() {
            let both = level.in_h_prime[e] && level.in_deleted[e];
            let stale = !level.in_h_prime[e] && !level.in_deleted[e] && selected.contains(&edge[last]);
            if both || stale {
                report.partition_ok = false;
                report.messages.push(format!("depth {depth}: edge {e} misfiled"));
            }
        }

        // every sub-transversal of the first l-1 parts, summed over H'
        let mut codegree: BTreeMap<Vec<Option<u32>>, Rational> = BTreeMap::new();
        for (e, edge) in edges.iter().enumerate() {
            if !level.in_h_prime[e] {
                continue;
            }
            let nonempty_subsets = (1u32 << last) - 1;
            for mask in 1..=nonempty_subsets {
                let x: Vec<Option<u32>> = (0..last)
                    .map(|i| (mask >> i & 1 == 1).then_some(edge[i]))
                    .collect();
                *codegree.entry(x).or_insert_with(Rational::zero) += &level.nu[e];
            }
        }
        for (x, measure) in &codegree {
            let parts: Vec<usize> = x.iter().enumerate().filter(|(_, v)| v.is_some()).map(|(i, _)| i).collect();
            for &s in &parts {
                let others: Rational = parts.iter().filter(|&&j| j != s).map(|&j| &p[j]).product();
                let bound = int(2) * &level.k / int(h.part_size(s) as i64) * &p[last] * others;
                if *measure > bound {
                    report.codegree_ok = false;
                    report.messages.push(format!(
                        "depth {depth}: codegree of {x:?} is {} > {}",
                        rational::format(measure),
                        rational::format(&bound)
                    ));
                }
            }
        }

        let h_prime: Rational = (0..edges.len()).filter(|&e| level.in_h_prime[e]).map(|e| &level.nu[e]).sum();
        let deleted: Rational = (0..edges.len()).filter(|&e| level.in_deleted[e]).map(|e| &level.nu[e]).sum();
        if !deleted.is_zero() && h_prime <= pow2(ell).recip() * &p[last] * &deleted {
            report.accounting_ok = false;
            report.messages.push(format!(
                "depth {depth}: nu(H') = {} vs nu(D) = {}",
                rational::format(&h_prime),
                rational::format(&deleted)
            ));
        }

        let mut degree_in_r = vec![Rational::zero(); h.part_size(last)];
        for e in level.remaining() {
            degree_in_r[edges[e][last] as usize] += &level.nu[e];
        }
        let max_degree = u[last]
            .iter()
            .filter(|v| !selected.contains(v))
            .map(|&v| degree_in_r[v as usize].clone())
            .max();
        if let Some(max_degree) = max_degree {
            let rhs = int(h.part_size(last) as i64) * &p[last] * max_degree;
            if h_prime < rhs {
                report.max_degree_ok = false;
                report.messages.push(format!(
                    "depth {depth}: nu(H') = {} below {}",
                    rational::format(&h_prime),
                    rational::format(&rhs)
                ));
            }
        }
    }
    report
}
