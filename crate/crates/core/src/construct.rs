//! Randomised multipartite nearly-orthogonal sets and brute-force checks.
//!
//! A candidate set is built from `r` independent uniform `m`-tuples of
//! non-self-orthogonal vectors of GF(p)^t; vector `w_i` is the tensor chain
//! of tuple `i`. Because the inner product is multiplicative under tensor
//! products, `⟨v_z^(i), v_z^(j)⟩ = 0` for any coordinate `z` forces
//! `⟨w_i, w_j⟩ = 0`.
//!
//! `check_beta` asks whether every `l+1` subsets of size `k+1` admit a
//! pairwise-orthogonal transversal; `check_alpha` is the special case where
//! all subsets are equal.

use std::collections::BTreeSet;

use itertools::Itertools;
use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::bitset::BitSet;
use crate::exec::Exec;
use crate::gf::{generate_q, tensor_chain, FVector, FieldSpec, GfError, DEFAULT_ENUMERATION_BUDGET};
use crate::graph::{is_crossing_free, orthogonality_graph, BitGraph, OrthoGraph};
use crate::underpin::{binomial, CoveringFamily};

/// Default cap on the number of subset tuples an exhaustive check may visit.
pub const DEFAULT_EXHAUSTIVE_BUDGET: u64 = 10_000_000;
/// Default cap on `r · d`, the total number of coordinates sampled.
pub const DEFAULT_COORDINATE_BUDGET: u64 = 1 << 24;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConstructError {
    #[error(transparent)]
    Field(#[from] GfError),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("{what} needs {needed} but the budget is {budget}")]
    Budget { what: &'static str, needed: String, budget: u64 },
    #[error("vector {index} is self-orthogonal")]
    SelfOrthogonal { index: usize },
    #[error("vectors have mixed dimensions or fields")]
    Mixed,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConstructionParams {
    pub field: FieldSpec,
    pub t: usize,
    pub m: usize,
    pub ell: usize,
    pub k: usize,
    /// Sample count; `None` means `⌊p^(mt/(4l))⌋`.
    pub r: Option<u64>,
    /// Zero-pad every vector to this dimension.
    pub pad_to: Option<usize>,
    pub seed: u64,
}

impl ConstructionParams {
    pub fn validate(&self) -> Result<(), ConstructError> {
        let bad = |m: String| Err(ConstructError::InvalidParams(m));
        if self.t == 0 || self.m == 0 || self.ell == 0 {
            return bad("t, m and ell must be positive".into());
        }
        if self.k < self.ell + 1 {
            return bad(format!("k = {} must be at least ell + 1 = {}", self.k, self.ell + 1));
        }
        if self.r == Some(0) {
            return bad("r must be positive".into());
        }
        let d = self.d().ok_or_else(|| ConstructError::InvalidParams("t^m overflows".into()))?;
        if self.pad_to.is_some_and(|target| target < d) {
            return bad(format!("cannot pad dimension {d} down to {}", self.pad_to.unwrap()));
        }
        Ok(())
    }

    /// `d = t^m`, the dimension of each tensor chain.
    pub fn d(&self) -> Option<usize> {
        self.t.checked_pow(self.m as u32)
    }

    /// Largest `r` with `r^(4l) ≤ p^(mt)`, i.e. `⌊p^(mt/(4l))⌋` computed exactly.
    pub fn default_r(&self) -> BigUint {
        let power = num_traits::pow(BigUint::from(self.field.p()), self.m * self.t);
        power.nth_root((4 * self.ell) as u32)
    }

    pub fn sample_count(&self) -> Result<u64, ConstructError> {
        match self.r {
            Some(r) => Ok(r),
            None => u64::try_from(self.default_r()).map_err(|_| ConstructError::Budget {
                what: "sample count",
                needed: self.default_r().to_string(),
                budget: u64::MAX,
            }),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CandidateSet {
    pub params: ConstructionParams,
    /// The sampled `m`-tuples of members of `Q`.
    pub tuples: Vec<Vec<FVector>>,
    pub vectors: Vec<FVector>,
    pub padded_dim: Option<usize>,
}

/// Samples `r` uniform `m`-tuples from `Q` and forms their tensor chains.
/// Deterministic in `params.seed`.
pub fn sample_construction(params: &ConstructionParams, coordinate_budget: u64) -> Result<CandidateSet, ConstructError> {
    params.validate()?;
    let r = params.sample_count()?;
    let d = params.d().expect("validated");
    let dim = params.pad_to.unwrap_or(d);
    let needed = (r as u128) * (dim as u128);
    if needed > coordinate_budget as u128 {
        return Err(ConstructError::Budget {
            what: "candidate set",
            needed: format!("{needed} coordinates"),
            budget: coordinate_budget,
        });
    }
    let q = generate_q(params.field, params.t, DEFAULT_ENUMERATION_BUDGET)?;
    if q.is_empty() {
        return Err(ConstructError::InvalidParams("Q is empty".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut tuples = Vec::with_capacity(r as usize);
    let mut vectors = Vec::with_capacity(r as usize);
    for _ in 0..r {
        let tuple: Vec<FVector> = (0..params.m)
            .map(|_| q.members()[rng.gen_range(0..q.len())].clone())
            .collect();
        let mut w = tensor_chain(&tuple)?;
        if let Some(target) = params.pad_to {
            w = w.pad_to_dimension(target)?;
        }
        tuples.push(tuple);
        vectors.push(w);
    }
    Ok(CandidateSet {
        params: params.clone(),
        tuples,
        vectors,
        padded_dim: params.pad_to,
    })
}

/// The `d` standard basis vectors, which are pairwise orthogonal and
/// satisfy every `(k, l)` check with `k ≥ l`.
pub fn basis_set(field: FieldSpec, d: usize) -> Result<Vec<FVector>, ConstructError> {
    Ok((0..d).map(|i| FVector::basis(field, d, i)).collect::<Result<_, _>>()?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Source {
    Sampled,
    Basis,
}

/// The sampled construction when `c · ln²(p^t) < k`, otherwise the basis of
/// GF(p)^d (padded if requested).
pub fn construction_or_basis(
    params: &ConstructionParams,
    c: f64,
    coordinate_budget: u64,
) -> Result<(Source, Vec<FVector>), ConstructError> {
    params.validate()?;
    let log_q = params.t as f64 * (params.field.p() as f64).ln();
    if c * log_q * log_q < params.k as f64 {
        let set = sample_construction(params, coordinate_budget)?;
        return Ok((Source::Sampled, set.vectors));
    }
    let d = params.pad_to.unwrap_or(params.d().expect("validated"));
    Ok((Source::Basis, basis_set(params.field, d)?))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TransferReport {
    pub pairs_checked: usize,
    /// Pairs with some coordinate orthogonal.
    pub implied_orthogonal: usize,
    pub violations: Vec<(usize, usize)>,
    pub self_orthogonal: Vec<usize>,
}

impl TransferReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty() && self.self_orthogonal.is_empty()
    }
}

/// Checks that coordinate orthogonality transfers to the tensor chains and
/// that no chain is self-orthogonal.
pub fn check_transfer(candidate: &CandidateSet) -> TransferReport {
    let r = candidate.vectors.len();
    let mut report = TransferReport {
        pairs_checked: 0,
        implied_orthogonal: 0,
        violations: Vec::new(),
        self_orthogonal: (0..r).filter(|&i| candidate.vectors[i].is_self_orthogonal()).collect(),
    };
    for i in 0..r {
        for j in i + 1..r {
            report.pairs_checked += 1;
            let coordinate = candidate.tuples[i]
                .iter()
                .zip(&candidate.tuples[j])
                .any(|(a, b)| a.dot_unchecked(b) == 0);
            if coordinate {
                report.implied_orthogonal += 1;
                if candidate.vectors[i].dot_unchecked(&candidate.vectors[j]) != 0 {
                    report.violations.push((i, j));
                }
            }
        }
    }
    report
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Property {
    Alpha,
    Beta,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Exhaustive,
    Sampled,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub property: Property,
    pub k: usize,
    pub ell: usize,
    pub mode: Mode,
    pub set_size: usize,
    pub tuples_checked: u64,
    /// Failing subsets as sorted vector indices, one list per part.
    pub witness: Option<Vec<Vec<usize>>>,
    /// The witness re-checked independently of the search.
    pub witness_sound: Option<bool>,
    pub verdict: Verdict,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

fn check_vectors(vectors: &[FVector]) -> Result<BitGraph, ConstructError> {
    if let Some(first) = vectors.first() {
        if vectors.iter().any(|v| v.field() != first.field() || v.dim() != first.dim()) {
            return Err(ConstructError::Mixed);
        }
    }
    if let Some(index) = vectors.iter().position(FVector::is_self_orthogonal) {
        return Err(ConstructError::SelfOrthogonal { index });
    }
    Ok(orthogonality_graph(vectors))
}

fn subsets(n: usize, size: usize) -> Vec<Vec<usize>> {
    (0..n).combinations(size).collect()
}

/// No pairwise-orthogonal transversal, recomputed from inner products.
fn witness_is_sound(vectors: &[FVector], parts: &[Vec<usize>]) -> bool {
    parts.iter().multi_cartesian_product().all(|pick| {
        let distinct: BTreeSet<usize> = pick.iter().map(|&&i| i).collect();
        distinct.len() < pick.len()
            || !pick
                .iter()
                .tuple_combinations()
                .all(|(&&a, &&b)| vectors[a].dot_unchecked(&vectors[b]) == 0)
    })
}

fn refuse(what: &'static str, base: &BigUint, power: usize, budget: u64) -> Result<(), ConstructError> {
    let needed = num_traits::pow(base.clone(), power);
    if needed > BigUint::from(budget) {
        return Err(ConstructError::Budget {
            what,
            needed: format!("{needed} tuples"),
            budget,
        });
    }
    Ok(())
}

/// Samples one `(k+1)`-subset, weighting vertex `v` by `1 / (1 + deg(v))`.
fn sample_low_degree<R: Rng + ?Sized>(g: &BitGraph, size: usize, rng: &mut R) -> Vec<usize> {
    let vertices: Vec<usize> = (0..g.n()).collect();
    let mut pick: Vec<usize> = vertices
        .choose_multiple_weighted(rng, size, |&v| 1.0 / (1.0 + g.degree(v) as f64))
        .expect("positive weights")
        .copied()
        .collect();
    pick.sort_unstable();
    pick
}

/// Checks the multipartite property. Exhaustive mode visits every multiset
/// of `l+1` subsets of size `k+1` in lexicographic order and reports the
/// first failing one; sampled mode draws `samples` tuples biased toward
/// low-degree vertices.
pub fn check_beta<R: Rng + ?Sized>(
    vectors: &[FVector],
    k: usize,
    ell: usize,
    mode: Mode,
    budget: u64,
    samples: u64,
    rng: &mut R,
    exec: Exec,
) -> Result<VerificationReport, ConstructError> {
    let g = check_vectors(vectors)?;
    let n = vectors.len();
    let parts = ell + 1;
    let mut report = VerificationReport {
        property: Property::Beta,
        k,
        ell,
        mode,
        set_size: n,
        tuples_checked: 0,
        witness: None,
        witness_sound: None,
        verdict: Verdict::Pass,
    };
    if n < k + 1 {
        return Ok(report);
    }
    let fails = |tuple: &[Vec<usize>]| {
        let sets: Vec<BitSet> = tuple.iter().map(|s| g.vertex_set(s.iter().copied())).collect();
        is_crossing_free(&g, &sets).expect("parts sized to the graph")
    };
    let witness = match mode {
        Mode::Exhaustive => {
            refuse("exhaustive beta check", &binomial(n as u64, (k + 1) as u64), parts, budget)?;
            let all = subsets(n, k + 1);
            let sets: Vec<BitSet> = all.iter().map(|s| g.vertex_set(s.iter().copied())).collect();
            report.tuples_checked = num_traits::ToPrimitive::to_u64(&binomial((all.len() + ell) as u64, parts as u64))
                .unwrap_or(u64::MAX);
            exec.find_first(all.len(), |first| {
                let mut idx = vec![first; parts];
                loop {
                    let tuple: Vec<BitSet> = idx.iter().map(|&i| sets[i].clone()).collect();
                    if is_crossing_free(&g, &tuple).expect("parts sized to the graph") {
                        return Some(idx.iter().map(|&i| all[i].clone()).collect::<Vec<_>>());
                    }
                    // next nondecreasing sequence with idx[0] fixed
                    let mut pos = parts;
                    loop {
                        if pos == 1 {
                            return None;
                        }
                        pos -= 1;
                        if idx[pos] + 1 < all.len() {
                            let next = idx[pos] + 1;
                            for slot in idx[pos..].iter_mut() {
                                *slot = next;
                            }
                            break;
                        }
                    }
                }
            })
        }
        Mode::Sampled => {
            report.tuples_checked = samples;
            let tuples: Vec<Vec<Vec<usize>>> = (0..samples)
                .map(|_| (0..parts).map(|_| sample_low_degree(&g, k + 1, rng)).collect())
                .collect();
            exec.find_first(tuples.len(), |i| fails(&tuples[i]).then(|| tuples[i].clone()))
        }
    };
    if let Some(w) = witness {
        report.witness_sound = Some(witness_is_sound(vectors, &w));
        report.witness = Some(w);
        report.verdict = Verdict::Fail;
    }
    Ok(report)
}

/// Checks that every `k+1` vectors contain `l+1` pairwise orthogonal ones.
pub fn check_alpha<R: Rng + ?Sized>(
    vectors: &[FVector],
    k: usize,
    ell: usize,
    mode: Mode,
    budget: u64,
    samples: u64,
    rng: &mut R,
    exec: Exec,
) -> Result<VerificationReport, ConstructError> {
    let g = check_vectors(vectors)?;
    let n = vectors.len();
    let mut report = VerificationReport {
        property: Property::Alpha,
        k,
        ell,
        mode,
        set_size: n,
        tuples_checked: 0,
        witness: None,
        witness_sound: None,
        verdict: Verdict::Pass,
    };
    if n < k + 1 {
        return Ok(report);
    }
    let lacks_clique = |s: &[usize]| {
        let set = g.vertex_set(s.iter().copied());
        is_crossing_free(&g, &vec![set; ell + 1]).expect("parts sized to the graph")
    };
    let candidates: Vec<Vec<usize>> = match mode {
        Mode::Exhaustive => {
            refuse("exhaustive alpha check", &binomial(n as u64, (k + 1) as u64), 1, budget)?;
            subsets(n, k + 1)
        }
        Mode::Sampled => (0..samples).map(|_| sample_low_degree(&g, k + 1, rng)).collect(),
    };
    report.tuples_checked = candidates.len() as u64;
    let witness = exec.find_first(candidates.len(), |i| lacks_clique(&candidates[i]).then(|| candidates[i].clone()));
    if let Some(w) = witness {
        let parts = vec![w; ell + 1];
        report.witness_sound = Some(witness_is_sound(vectors, &parts));
        report.witness = Some(parts);
        report.verdict = Verdict::Fail;
    }
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BadEventReport {
    pub k: usize,
    pub m: usize,
    pub ell: usize,
    pub index_sets: usize,
    pub family_sets: usize,
    /// Empirical `Pr[B_z(K)]` for each coordinate `z`.
    pub bz_frequency: Vec<f64>,
    /// Empirical `Pr[B(K)]`: `B_z` for at least `m/l` coordinates.
    pub b_frequency: f64,
    pub b_occurred: bool,
    /// `|family| · (size_cap / p^(t-1))^k`.
    pub analytic_bound: f64,
    /// `Σ_S (|S ∩ Q| / |Q|)^k` over the produced sets.
    pub family_bound: f64,
    /// Every `Pr[B_z]` estimate is within three standard errors of a bound
    /// below 1 (vacuous when both bounds are at least 1).
    pub consistent: bool,
    /// Smallest `t` with `4 C p^(1 - t/4) < 1`.
    pub minimal_t: u64,
}

/// Estimates the bad-event frequencies for a candidate set against a family
/// of underpin sets on the orthogonality graph of GF(p)^t.
pub fn detect_bad_events<R: Rng + ?Sized>(
    candidate: &CandidateSet,
    graph: &OrthoGraph,
    family: &CoveringFamily,
    k: usize,
    size_cap: f64,
    c_final: f64,
    samples: usize,
    rng: &mut R,
) -> Result<BadEventReport, ConstructError> {
    let params = &candidate.params;
    let m = params.m;
    let r = candidate.tuples.len();
    let q = generate_q(params.field, params.t, DEFAULT_ENUMERATION_BUDGET)?;
    let q_vertices: BTreeSet<usize> = q.members().iter().filter_map(|v| graph.index_of(v)).collect();

    let mut hits = vec![0usize; m];
    let mut b_hits = 0usize;
    let index_sets = if r >= k { samples } else { 0 };
    for _ in 0..index_sets {
        let chosen = rand::seq::index::sample(rng, r, k).into_vec();
        let mut count = 0;
        for (z, hit) in hits.iter_mut().enumerate() {
            let coords: Vec<usize> = chosen
                .iter()
                .map(|&i| graph.index_of(&candidate.tuples[i][z]).expect("Q lies in the graph"))
                .collect();
            if family.covers(&coords) {
                *hit += 1;
                count += 1;
            }
        }
        if count * params.ell >= m {
            b_hits += 1;
        }
    }
    let freq = |h: usize| if index_sets == 0 { 0.0 } else { h as f64 / index_sets as f64 };
    let bz_frequency: Vec<f64> = hits.iter().map(|&h| freq(h)).collect();

    let q_len = q.len() as f64;
    let lower = q.lower_bound() as f64;
    let mut family_size = family.sets.len() as f64;
    let mut family_bound: f64 = family
        .sets
        .iter()
        .map(|s| (s.iter().filter(|v| q_vertices.contains(v)).count() as f64 / q_len).powi(k as i32))
        .sum();
    if let Some(tau) = family.small_layer {
        let small = binomial(graph.n() as u64, tau as u64).to_string().parse::<f64>().unwrap_or(f64::INFINITY);
        family_size += small;
        family_bound += small * (tau.min(q.len()) as f64 / q_len).powi(k as i32);
    }
    let analytic_bound = family_size * (size_cap / lower).powi(k as i32);
    let bound = analytic_bound.min(family_bound);
    let slack = |b: f64| 3.0 * (b * (1.0 - b) / index_sets.max(1) as f64).sqrt() + 1.0 / index_sets.max(1) as f64;
    let consistent = bound >= 1.0 || bz_frequency.iter().all(|&f| f <= bound + slack(bound));

    Ok(BadEventReport {
        k,
        m,
        ell: params.ell,
        index_sets,
        family_sets: family.sets.len(),
        bz_frequency,
        b_frequency: freq(b_hits),
        b_occurred: b_hits > 0,
        analytic_bound,
        family_bound,
        consistent,
        minimal_t: minimal_t_for_bound(params.field.p() as u64, c_final),
    })
}

/// Smallest integer `t ≥ 1` with `4 C p^(1 - t/4) < 1`.
pub fn minimal_t_for_bound(p: u64, c: f64) -> u64 {
    let ln_p = (p as f64).ln();
    let mut t = 1u64;
    while (4.0 * c).ln() + (1.0 - t as f64 / 4.0) * ln_p >= 0.0 {
        t += 1;
    }
    t
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchResult {
    pub property: Property,
    pub d: usize,
    pub k: usize,
    pub ell: usize,
    pub best: Vec<FVector>,
    pub size: usize,
    /// True iff the search finished, making `size` the exact maximum over
    /// subsets of the candidate vectors.
    pub complete: bool,
    pub nodes: u64,
}

/// Branch and bound over subsets of the non-self-orthogonal vectors of
/// GF(p)^d, keeping only sets that pass the property. Both properties are
/// closed under taking subsets, so a vector is added only if the enlarged
/// set still passes. Seeded with the standard basis.
pub fn exhaustive_search_max(
    field: FieldSpec,
    d: usize,
    k: usize,
    ell: usize,
    property: Property,
    node_budget: u64,
) -> Result<SearchResult, ConstructError> {
    if k < ell {
        return Err(ConstructError::InvalidParams(format!("k = {k} must be at least ell = {ell}")));
    }
    let q = generate_q(field, d, DEFAULT_ENUMERATION_BUDGET)?;
    let cand = q.members().to_vec();
    let g = orthogonality_graph(&cand);

    let mut best: Vec<usize> = (0..d)
        .map(|i| {
            let e = FVector::basis(field, d, i).expect("valid basis");
            cand.binary_search(&e).expect("basis vectors are in Q")
        })
        .collect();
    best.sort_unstable();

    struct Search<'a> {
        g: &'a BitGraph,
        n: usize,
        k: usize,
        ell: usize,
        property: Property,
        nodes: u64,
        budget: u64,
        best: Vec<usize>,
        exhausted: bool,
    }

    impl Search<'_> {
        fn has_clique(&self, members: &[usize]) -> bool {
            let set = self.g.vertex_set(members.iter().copied());
            !is_crossing_free(self.g, &vec![set; self.ell + 1]).expect("sized")
        }

        /// Whether `current ∪ {v}` passes, given that `current` does.
        fn extends(&self, current: &[usize], v: usize) -> bool {
            match self.property {
                Property::Alpha => current.iter().copied().combinations(self.k).all(|mut s| {
                    s.push(v);
                    self.has_clique(&s)
                }),
                Property::Beta => {
                    let mut members = current.to_vec();
                    members.push(v);
                    if members.len() < self.k + 1 {
                        return true;
                    }
                    let all: Vec<BitSet> = members
                        .iter()
                        .copied()
                        .combinations(self.k + 1)
                        .map(|s| self.g.vertex_set(s))
                        .collect();
                    // tuples that use a subset containing v
                    (0..all.len()).combinations_with_replacement(self.ell + 1).all(|idx| {
                        !idx.iter().any(|&i| all[i].contains(v))
                            || !is_crossing_free(self.g, &idx.iter().map(|&i| all[i].clone()).collect::<Vec<_>>())
                                .expect("sized")
                    })
                }
            }
        }

        fn run(&mut self, current: &mut Vec<usize>, next: usize) {
            if self.exhausted {
                return;
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                self.exhausted = true;
                return;
            }
            if current.len() > self.best.len() {
                self.best = current.clone();
            }
            for v in next..self.n {
                if current.len() + (self.n - v) <= self.best.len() {
                    return;
                }
                if self.extends(current, v) {
                    current.push(v);
                    self.run(current, v + 1);
                    current.pop();
                    if self.exhausted {
                        return;
                    }
                }
            }
        }
    }

    let mut search = Search {
        g: &g,
        n: cand.len(),
        k,
        ell,
        property,
        nodes: 0,
        budget: node_budget,
        best,
        exhausted: false,
    };
    search.run(&mut Vec::new(), 0);
    let best: Vec<FVector> = search.best.iter().map(|&i| cand[i].clone()).collect();
    Ok(SearchResult {
        property,
        d,
        k,
        ell,
        size: best.len(),
        best,
        complete: !search.exhausted,
        nodes: search.nodes,
    })
}

/// `C(d + k, k)`, the Ramsey upper bound for `l = 1` over GF(2).
pub fn ramsey_upper_bound(d: u64, k: u64) -> BigUint {
    binomial(d + k, k)
}
