//! Small sets that underpin crossing-free tuples of an `(n, D, λ)`-graph.
//!
//! For a tuple `(U_1, …, U_l)` with no crossing `K_l`, the shrinking loop
//! starts from `W_i = V(G)` and repeatedly runs the container process on
//! the crossing-clique hypergraph over `(W_1, …, W_l)` with the uniform
//! measure, `p_i = 1/|W_i|` and `K = c^(-l²)`. Each round contributes one
//! fingerprint vertex per part `j ≥ 2` and replaces one `W_i` by its
//! container. The loop stops once some `|W_z|` drops below
//! `C' λ (n/D)^(l-1)`; the output set is `S = F_z ∪ W_z`, which contains
//! `U_z` and depends only on the fingerprint.
//!
//! The family of all such `S` is never materialised except by
//! [`explicit_family`] on tiny graphs; covering is checked per tuple.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;
use thiserror::Error;

use crate::bitset::BitSet;
use crate::container::{
    self, check_spreadness, run_container_process, CaseKind, ContainerError, EdgeMeasure,
    PartiteHypergraph, SpreadParams,
};
use crate::exec::Exec;
use crate::graph::{for_each_crossing_clique, is_crossing_free, BitGraph, ExpansionParams, GraphError};
use crate::rational::{self, int, to_f64, Rational};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum UnderpinError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Container(#[from] ContainerError),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("expected {expected} parts, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("part {part} has {size} vertices, at most the small-set threshold {tau}")]
    SmallSet { part: usize, size: usize, tau: usize },
    #[error("tuple contains a crossing clique")]
    NotCrossingFree,
    #[error("no crossing cliques across the given parts")]
    EmptyHypergraph,
    #[error("spreadness needs K = {minimal_k} but the configured K is {k}")]
    Spreadness { k: String, minimal_k: String },
    #[error("round cap {cap:.1} exceeded")]
    RoundCap { cap: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SpreadPolicy {
    /// Use `K = c^(-l²)` and fail when spreadness needs more.
    #[default]
    Fixed,
    /// Use `max(c^(-l²), minimal feasible K)` each round.
    Adaptive,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UnderpinConfig {
    pub ell: usize,
    /// Density constant `c ∈ (0, 1/2]` with `D ≥ c n`.
    #[serde(serialize_with = "rational::serialize")]
    pub c: Rational,
    /// Mixing threshold constant `C'`.
    pub c_prime: f64,
    /// Size constant `C`; defaults to `C' c^(-l) l² / ζ`.
    pub c_final: Option<f64>,
    /// Small-set threshold `τ`; defaults to `⌈3 log2 n⌉`.
    pub small_set_threshold: Option<usize>,
    pub spread_policy: SpreadPolicy,
}

pub const DEFAULT_C_PRIME: f64 = 4.0;

impl UnderpinConfig {
    pub fn new(ell: usize, c: Rational) -> Result<Self, UnderpinError> {
        let config = Self {
            ell,
            c,
            c_prime: DEFAULT_C_PRIME,
            c_final: None,
            small_set_threshold: None,
            spread_policy: SpreadPolicy::Fixed,
        };
        config.validate()?;
        Ok(config)
    }

    /// `c = min(1/2, D/n)` from exact integer degree and vertex count.
    pub fn for_degree(ell: usize, degree: u64, n: usize) -> Result<Self, UnderpinError> {
        let density = Rational::new((degree as i64).into(), (n as i64).into());
        Self::new(ell, density.min(rational::rat(1, 2)))
    }

    pub fn validate(&self) -> Result<(), UnderpinError> {
        let bad = |m: &str| Err(UnderpinError::InvalidConfig(m.into()));
        if self.ell == 0 {
            return bad("ell must be at least 1");
        }
        if self.c <= Rational::zero() || self.c > rational::rat(1, 2) {
            return bad("c must lie in (0, 1/2]");
        }
        if !(self.c_prime > 0.0) {
            return bad("C' must be positive");
        }
        if self.c_final.is_some_and(|c| !(c > 0.0)) {
            return bad("C must be positive");
        }
        Ok(())
    }

    /// `K = c^(-l²)`.
    pub fn k(&self) -> Rational {
        num_traits::pow(self.c.recip(), self.ell * self.ell)
    }

    pub fn zeta(&self) -> Rational {
        container::zeta(&self.k(), self.ell)
    }

    pub fn c_final(&self) -> f64 {
        self.c_final.unwrap_or_else(|| {
            let ell = self.ell as f64;
            self.c_prime * to_f64(&self.c).powi(-(self.ell as i32)) * ell * ell / to_f64(&self.zeta())
        })
    }

    pub fn tau(&self, n: usize) -> usize {
        self.small_set_threshold
            .unwrap_or_else(|| (3.0 * (n.max(2) as f64).log2()).ceil() as usize)
    }

    /// `C' λ (n/D)^(l-1)`.
    pub fn size_threshold(&self, params: &ExpansionParams) -> f64 {
        self.c_prime * params.lambda * (1.0 / params.density()).powi(self.ell as i32 - 1)
    }

    /// `l ζ⁻¹ ln n` for the given `ζ`.
    pub fn round_cap(&self, n: usize, zeta: &Rational) -> f64 {
        self.ell as f64 / to_f64(zeta) * (n.max(2) as f64).ln()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Termination {
    /// Some `|W_z|` fell below the size threshold.
    BelowThreshold,
    /// The current `W`'s have no crossing clique at all.
    NoCrossingCliques,
    /// `U'_z` ran out for a part `z ≥ 2`, so `U_z ⊆ F_z`.
    FingerprintExhausted,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RoundRecord {
    pub chosen: usize,
    pub sizes_before: Vec<usize>,
    pub sizes_after: Vec<usize>,
    /// Graph vertex added to `F_j` for each part `j ≥ 2` (`None` for part 1).
    pub fingerprint: Vec<Option<usize>>,
    pub hyperedges: usize,
    #[serde(serialize_with = "rational::serialize")]
    pub k: Rational,
    #[serde(serialize_with = "rational::serialize")]
    pub zeta: Rational,
    pub case_trace: Vec<CaseKind>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ShrinkTrace {
    pub rounds: Vec<RoundRecord>,
    pub terminal: usize,
    pub terminal_set: Vec<usize>,
    pub termination: Termination,
    pub round_cap: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UnderpinResult {
    /// `F_1..F_l` padded to the round count; `F_1` is always empty.
    pub fingerprint: Vec<Vec<usize>>,
    /// The same fingerprints before padding.
    pub core_fingerprint: Vec<Vec<usize>>,
    /// `S = F_z ∪ W_z`, sorted.
    pub set: Vec<usize>,
    pub trace: ShrinkTrace,
    /// `C λ`.
    pub size_bound: f64,
}

impl UnderpinResult {
    pub fn terminal(&self) -> usize {
        self.trace.terminal
    }

    pub fn within_size_bound(&self) -> bool {
        self.set.len() as f64 <= self.size_bound
    }

    pub fn covers(&self, part: &BitSet) -> bool {
        part.iter().all(|v| self.set.binary_search(&v).is_ok())
    }
}

/// Hypergraph with one edge per crossing clique of `parts`; part `i` of the
/// hypergraph is `parts[i]` with local indices in increasing vertex order.
/// The measure is uniform.
pub fn build_crossing_hypergraph(
    g: &BitGraph,
    parts: &[BitSet],
) -> Result<(PartiteHypergraph, EdgeMeasure), UnderpinError> {
    if parts.is_empty() {
        return Err(UnderpinError::Arity { expected: 1, got: 0 });
    }
    let local: Vec<BTreeMap<usize, u32>> = parts
        .iter()
        .map(|p| p.iter().enumerate().map(|(i, v)| (v, i as u32)).collect())
        .collect();
    let mut edges = Vec::new();
    for_each_crossing_clique(g, parts, |clique| {
        edges.push(clique.iter().zip(&local).map(|(v, m)| m[v]).collect());
        true
    })?;
    if edges.is_empty() {
        return Err(UnderpinError::EmptyHypergraph);
    }
    let sizes = parts.iter().map(BitSet::count).collect();
    let h = PartiteHypergraph::new(sizes, edges)?;
    let nu = EdgeMeasure::uniform(&h);
    Ok((h, nu))
}

/// Runs the shrinking loop on a crossing-free tuple whose parts all exceed
/// the small-set threshold.
pub fn run_underpin_process(
    g: &BitGraph,
    params: &ExpansionParams,
    config: &UnderpinConfig,
    u: &[BitSet],
) -> Result<UnderpinResult, UnderpinError> {
    config.validate()?;
    if u.len() != config.ell {
        return Err(UnderpinError::Arity {
            expected: config.ell,
            got: u.len(),
        });
    }
    let tau = config.tau(g.n());
    for (part, set) in u.iter().enumerate() {
        if set.count() <= tau {
            return Err(UnderpinError::SmallSet {
                part,
                size: set.count(),
                tau,
            });
        }
    }
    if !is_crossing_free(g, u)? {
        return Err(UnderpinError::NotCrossingFree);
    }
    shrink(g, params, config, u)
}

/// Replays the loop from `(∅, F_2, …, F_l)`. For a fingerprint produced by
/// [`run_underpin_process`] this reproduces the same rounds and set.
pub fn replay_from_fingerprint(
    g: &BitGraph,
    params: &ExpansionParams,
    config: &UnderpinConfig,
    fingerprint: &[Vec<usize>],
) -> Result<UnderpinResult, UnderpinError> {
    config.validate()?;
    if fingerprint.len() != config.ell {
        return Err(UnderpinError::Arity {
            expected: config.ell,
            got: fingerprint.len(),
        });
    }
    let u: Vec<BitSet> = fingerprint
        .iter()
        .enumerate()
        .map(|(j, f)| {
            if j == 0 {
                BitSet::new(g.n())
            } else {
                g.vertex_set(f.iter().copied())
            }
        })
        .collect();
    shrink(g, params, config, &u)
}

fn shrink(
    g: &BitGraph,
    params: &ExpansionParams,
    config: &UnderpinConfig,
    u: &[BitSet],
) -> Result<UnderpinResult, UnderpinError> {
    let ell = config.ell;
    let n = g.n();
    let threshold = config.size_threshold(params);
    let base_k = config.k();
    let mut min_zeta = config.zeta();

    let mut w: Vec<BitSet> = vec![BitSet::full(n); ell];
    let mut u_cur: Vec<BitSet> = u.to_vec();
    let mut core: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); ell];
    let mut rounds = Vec::new();

    let termination = loop {
        if w.iter().any(|s| (s.count() as f64) < threshold) {
            break Termination::BelowThreshold;
        }
        if (1..ell).any(|j| u_cur[j].is_empty()) {
            break Termination::FingerprintExhausted;
        }
        let (h, nu) = match build_crossing_hypergraph(g, &w) {
            Ok(x) => x,
            Err(UnderpinError::EmptyHypergraph) => break Termination::NoCrossingCliques,
            Err(e) => return Err(e),
        };
        let p: Vec<Rational> = w.iter().map(|s| rational::rat(1, s.count() as i64)).collect();
        let minimal = check_spreadness(&h, &nu, &p)?.minimal_k;
        let k = match config.spread_policy {
            SpreadPolicy::Fixed if minimal > base_k => {
                return Err(UnderpinError::Spreadness {
                    k: rational::format(&base_k),
                    minimal_k: rational::format(&minimal),
                })
            }
            SpreadPolicy::Fixed => base_k.clone(),
            SpreadPolicy::Adaptive => base_k.clone().max(minimal),
        };
        let zeta = container::zeta(&k, ell);
        if zeta < min_zeta {
            min_zeta = zeta.clone();
        }

        let members: Vec<Vec<usize>> = w.iter().map(|s| s.iter().collect()).collect();
        let to_local = |part: usize, set: &BitSet| -> BTreeSet<u32> {
            set.iter()
                .filter_map(|v| members[part].binary_search(&v).ok().map(|i| i as u32))
                .collect()
        };
        let u_local: Vec<BTreeSet<u32>> =
            u_cur.iter().enumerate().map(|(i, s)| to_local(i, s)).collect();
        let spread = SpreadParams::new(p, k.clone())?;
        let outcome = run_container_process(&h, &nu, &spread, &u_local)?;

        let chosen = outcome.result.index;
        let sizes_before: Vec<usize> = w.iter().map(BitSet::count).collect();
        let mut fingerprint = vec![None; ell];
        for j in 1..ell {
            for &local in outcome.fingerprint.part(j) {
                let v = members[j][local as usize];
                core[j].insert(v);
                fingerprint[j] = Some(v);
            }
        }
        let container = g.vertex_set(
            outcome
                .result
                .container
                .iter()
                .map(|&local| members[chosen][local as usize]),
        );
        u_cur[chosen].intersect_with(&container);
        w[chosen] = container;
        rounds.push(RoundRecord {
            chosen,
            sizes_before,
            sizes_after: w.iter().map(BitSet::count).collect(),
            fingerprint,
            hyperedges: h.edge_count(),
            k,
            zeta,
            case_trace: outcome.result.case_trace,
        });
        let cap = config.round_cap(n, &min_zeta);
        if rounds.len() as f64 > cap {
            return Err(UnderpinError::RoundCap { cap });
        }
    };

    let terminal = match termination {
        Termination::BelowThreshold => w
            .iter()
            .position(|s| (s.count() as f64) < threshold)
            .expect("loop exits with a small part"),
        Termination::FingerprintExhausted => (1..ell)
            .find(|&j| u_cur[j].is_empty())
            .expect("loop exits with an empty part"),
        Termination::NoCrossingCliques => {
            (0..ell).min_by_key(|&i| (w[i].count(), i)).expect("ell >= 1")
        }
    };

    // pad F_j (j ≥ 2) to the round count with the smallest unused members of U_j
    let target = rounds.len();
    let fingerprint: Vec<Vec<usize>> = (0..ell)
        .map(|j| {
            if j == 0 {
                return Vec::new();
            }
            let mut f = core[j].clone();
            for v in u[j].iter() {
                if f.len() >= target {
                    break;
                }
                f.insert(v);
            }
            f.into_iter().collect()
        })
        .collect();
    let core_fingerprint: Vec<Vec<usize>> = core.into_iter().map(|s| s.into_iter().collect()).collect();

    let mut set: BTreeSet<usize> = w[terminal].iter().collect();
    set.extend(fingerprint[terminal].iter().copied());

    Ok(UnderpinResult {
        fingerprint,
        core_fingerprint,
        set: set.into_iter().collect(),
        trace: ShrinkTrace {
            rounds,
            terminal,
            terminal_set: w[terminal].iter().collect(),
            termination,
            round_cap: config.round_cap(n, &min_zeta),
        },
        size_bound: config.c_final() * params.lambda,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Layer {
    /// Some part has at most `τ` vertices.
    Small,
    Container,
    /// The tuple has a crossing clique and is not in `I_l(G)`.
    Rejected,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoverRecord {
    pub tuple: usize,
    pub layer: Layer,
    pub set: Vec<usize>,
    pub set_size: usize,
    pub terminal: Option<usize>,
    pub rounds: usize,
    pub covered: bool,
    pub core_covered: bool,
    pub replay_ok: bool,
    pub rounds_ok: bool,
    pub shrink_ok: bool,
    pub within_size_bound: bool,
    pub pass: bool,
    pub error: Option<String>,
}

impl CoverRecord {
    fn new(tuple: usize, layer: Layer) -> Self {
        Self {
            tuple,
            layer,
            set: Vec::new(),
            set_size: 0,
            terminal: None,
            rounds: 0,
            covered: false,
            core_covered: false,
            replay_ok: false,
            rounds_ok: false,
            shrink_ok: false,
            within_size_bound: false,
            pass: false,
            error: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoveringReport {
    pub tau: usize,
    pub size_threshold: f64,
    pub c_final: f64,
    pub lambda: f64,
    pub total: usize,
    pub passed: usize,
    pub small_layer: usize,
    pub container_layer: usize,
    pub rejected: usize,
    pub max_rounds: usize,
    /// Largest `|S| / λ`; the smallest `C` that would have sufficed.
    pub max_ratio: f64,
    pub records: Vec<CoverRecord>,
}

impl CoveringReport {
    pub fn all_passed(&self) -> bool {
        self.passed == self.total
    }
}

fn check_tuple(
    g: &BitGraph,
    params: &ExpansionParams,
    config: &UnderpinConfig,
    id: usize,
    u: &[BitSet],
) -> CoverRecord {
    match is_crossing_free(g, u) {
        Ok(true) => {}
        Ok(false) => return CoverRecord::new(id, Layer::Rejected),
        Err(e) => {
            let mut r = CoverRecord::new(id, Layer::Rejected);
            r.error = Some(e.to_string());
            return r;
        }
    }
    let tau = config.tau(g.n());
    if u.iter().any(|s| s.count() <= tau) {
        let mut r = CoverRecord::new(id, Layer::Small);
        r.covered = true;
        r.core_covered = true;
        r.replay_ok = true;
        r.rounds_ok = true;
        r.shrink_ok = true;
        r.within_size_bound = true;
        r.pass = true;
        return r;
    }
    let mut r = CoverRecord::new(id, Layer::Container);
    let result = match run_underpin_process(g, params, config, u) {
        Ok(res) => res,
        Err(e) => {
            r.error = Some(e.to_string());
            return r;
        }
    };
    let z = result.terminal();
    r.terminal = Some(z);
    r.rounds = result.trace.rounds.len();
    r.set_size = result.set.len();
    r.covered = result.covers(&u[z]);
    let mut core_cover: BTreeSet<usize> = result.trace.terminal_set.iter().copied().collect();
    core_cover.extend(result.core_fingerprint[z].iter().copied());
    r.core_covered = u[z].iter().all(|v| core_cover.contains(&v));
    r.replay_ok = match replay_from_fingerprint(g, params, config, &result.fingerprint) {
        Ok(again) => again == result,
        Err(e) => {
            r.error = Some(format!("replay failed: {e}"));
            false
        }
    };
    r.rounds_ok = (r.rounds as f64) <= result.trace.round_cap;
    r.shrink_ok = result.trace.rounds.iter().all(|round| {
        let i = round.chosen;
        let bound = (Rational::one() - &round.zeta) * int(round.sizes_before[i] as i64) + int(1);
        int(round.sizes_after[i] as i64) <= bound
    });
    r.within_size_bound = result.within_size_bound();
    r.pass = r.covered && r.core_covered && r.replay_ok && r.rounds_ok && r.shrink_ok && r.within_size_bound;
    r.set = result.set;
    r
}

/// Checks the covering property on each tuple.
pub fn verify_covering(
    g: &BitGraph,
    params: &ExpansionParams,
    config: &UnderpinConfig,
    tuples: &[Vec<BitSet>],
    exec: Exec,
) -> CoveringReport {
    let ids: Vec<usize> = (0..tuples.len()).collect();
    let records = exec.map(&ids, |&i| check_tuple(g, params, config, i, &tuples[i]));
    let count = |layer| records.iter().filter(|r| r.layer == layer).count();
    CoveringReport {
        tau: config.tau(g.n()),
        size_threshold: config.size_threshold(params),
        c_final: config.c_final(),
        lambda: params.lambda,
        total: records.len(),
        passed: records.iter().filter(|r| r.pass).count(),
        small_layer: count(Layer::Small),
        container_layer: count(Layer::Container),
        rejected: count(Layer::Rejected),
        max_rounds: records.iter().map(|r| r.rounds).max().unwrap_or(0),
        max_ratio: records
            .iter()
            .filter(|r| r.layer == Layer::Container)
            .map(|r| r.set_size as f64 / params.lambda)
            .fold(0.0, f64::max),
        records,
    }
}

/// A random maximal crossing-free tuple: vertices are offered to parts in a
/// random order and kept whenever no crossing clique appears.
pub fn sample_crossing_free_tuple<R: Rng + ?Sized>(g: &BitGraph, ell: usize, rng: &mut R) -> Vec<BitSet> {
    let n = g.n();
    let mut parts = vec![BitSet::new(n); ell];
    let mut offers: Vec<(usize, usize)> = (0..ell).flat_map(|i| (0..n).map(move |v| (i, v))).collect();
    offers.shuffle(rng);
    for (i, v) in offers {
        parts[i].insert(v);
        if !is_crossing_free(g, &parts).unwrap_or(false) {
            parts[i].remove(v);
        }
    }
    parts
}

/// A greedy independent set `I` paired with `V \ N(I)` (which contains `I`).
pub fn adversarial_pair<R: Rng + ?Sized>(g: &BitGraph, rng: &mut R) -> Vec<BitSet> {
    let n = g.n();
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut independent = BitSet::new(n);
    for v in order {
        if g.neighbors(v).intersection_count(&independent) == 0 {
            independent.insert(v);
        }
    }
    let mut far = BitSet::full(n);
    for v in independent.iter() {
        far.difference_with(g.neighbors(v));
    }
    vec![independent, far]
}

/// `ln C(n, k)`, with `k` clamped to `[0, n]`.
pub fn ln_binomial(n: u64, k: u64) -> f64 {
    let k = k.min(n);
    let k = k.min(n - k);
    (0..k).map(|i| ((n - i) as f64).ln() - ((i + 1) as f64).ln()).sum()
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    (0..k).fold(BigUint::one(), |acc, i| acc * (n - i) / (i + 1))
}

fn ln_add(a: f64, b: f64) -> f64 {
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    hi + (lo - hi).exp().ln_1p()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FamilyBound {
    pub n: usize,
    /// `⌊C ln n⌋`.
    pub small_set_size: u64,
    /// `⌊l ζ⁻¹ ln n⌋`.
    pub fingerprint_size: u64,
    pub ln_small_layer: f64,
    pub ln_container_layer: f64,
    /// `ln(C(n, C ln n) + C(n, l ζ⁻¹ ln n)^l)`.
    pub ln_total: f64,
    /// `ln(n^(C ln n)) = C (ln n)²`.
    pub ln_reference: f64,
}

pub fn family_size_bound(n: usize, config: &UnderpinConfig) -> FamilyBound {
    let ln_n = (n.max(2) as f64).ln();
    let c = config.c_final();
    let small = (c * ln_n).floor().max(0.0) as u64;
    let fp = (config.ell as f64 / to_f64(&config.zeta()) * ln_n).floor().max(0.0) as u64;
    let ln_small = ln_binomial(n as u64, small);
    let ln_container = config.ell as f64 * ln_binomial(n as u64, fp);
    FamilyBound {
        n,
        small_set_size: small,
        fingerprint_size: fp,
        ln_small_layer: ln_small,
        ln_container_layer: ln_container,
        ln_total: ln_add(ln_small, ln_container),
        ln_reference: c * ln_n * ln_n,
    }
}

/// Sets produced by the loop, plus optionally every set of at most `τ`
/// vertices (the small-set layer, kept implicit).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoveringFamily {
    pub n: usize,
    pub sets: Vec<Vec<usize>>,
    pub small_layer: Option<usize>,
}

impl CoveringFamily {
    pub fn from_report(n: usize, report: &CoveringReport, include_small_layer: bool) -> Self {
        let sets: BTreeSet<Vec<usize>> = report
            .records
            .iter()
            .filter(|r| r.layer == Layer::Container && r.pass)
            .map(|r| r.set.clone())
            .collect();
        Self {
            n,
            sets: sets.into_iter().collect(),
            small_layer: include_small_layer.then_some(report.tau),
        }
    }

    /// True iff `members` lies inside some set of the family.
    pub fn covers(&self, members: &[usize]) -> bool {
        let mut distinct: Vec<usize> = members.to_vec();
        distinct.sort_unstable();
        distinct.dedup();
        if self.small_layer.is_some_and(|tau| distinct.len() <= tau) {
            return true;
        }
        self.sets
            .iter()
            .any(|s| distinct.iter().all(|v| s.binary_search(v).is_ok()))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExplicitFamily {
    pub tuples: usize,
    pub small_layer_tuples: usize,
    pub container_tuples: usize,
    pub failures: usize,
    /// Distinct padded fingerprints with their sets, sorted by fingerprint.
    pub family: Vec<ExplicitEntry>,
    pub bound: FamilyBound,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExplicitEntry {
    pub fingerprint: Vec<Vec<usize>>,
    pub set: Vec<usize>,
}

pub const EXPLICIT_MAX_VERTICES: usize = 10;

/// Enumerates every crossing-free pair on a graph with at most 10 vertices
/// (`l = 2` only) and materialises the fingerprint → set map.
pub fn explicit_family(
    g: &BitGraph,
    params: &ExpansionParams,
    config: &UnderpinConfig,
) -> Result<ExplicitFamily, UnderpinError> {
    let n = g.n();
    if config.ell != 2 || n > EXPLICIT_MAX_VERTICES {
        return Err(UnderpinError::InvalidConfig(format!(
            "explicit mode needs ell = 2 and at most {EXPLICIT_MAX_VERTICES} vertices"
        )));
    }
    let tau = config.tau(n);
    let mut out = ExplicitFamily {
        tuples: 0,
        small_layer_tuples: 0,
        container_tuples: 0,
        failures: 0,
        family: Vec::new(),
        bound: family_size_bound(n, config),
    };
    let mut family = BTreeMap::new();
    let full: u32 = (1u32 << n) - 1;
    let neighbor_masks: Vec<u32> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, x| m | 1 << x))
        .collect();
    for first in 0..=full {
        let blocked = (0..n)
            .filter(|&v| first >> v & 1 == 1)
            .fold(0u32, |m, v| m | neighbor_masks[v]);
        let allowed = full & !blocked;
        // all submasks of `allowed`, including 0
        let mut second = allowed;
        loop {
            out.tuples += 1;
            if (first.count_ones() as usize) <= tau || (second.count_ones() as usize) <= tau {
                out.small_layer_tuples += 1;
            } else {
                out.container_tuples += 1;
                let u = [mask_set(n, first), mask_set(n, second)];
                let ok = run_underpin_process(g, params, config, &u)
                    .ok()
                    .filter(|res| res.covers(&u[res.terminal()]));
                match ok {
                    Some(res) => {
                        family.insert(res.fingerprint, res.set);
                    }
                    None => out.failures += 1,
                }
            }
            if second == 0 {
                break;
            }
            second = (second - 1) & allowed;
        }
    }
    out.family = family
        .into_iter()
        .map(|(fingerprint, set)| ExplicitEntry { fingerprint, set })
        .collect();
    Ok(out)
}

fn mask_set(n: usize, mask: u32) -> BitSet {
    BitSet::from_indices(n, (0..n).filter(|&v| mask >> v & 1 == 1))
}
