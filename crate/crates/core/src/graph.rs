//! Orthogonality graphs G(p,t), their spectral certificates, and crossing
//! clique counting.

use std::collections::BTreeMap;

use nalgebra::{DMatrix, SymmetricEigen};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bitset::BitSet;
use crate::gf::{all_vectors, FVector, FieldSpec, GfError};

/// Default cap on vertex count for graph construction.
pub const DEFAULT_VERTEX_BUDGET: usize = 4096;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GraphError {
    #[error(transparent)]
    Field(#[from] GfError),
    #[error("graph on {p}^{t} vectors exceeds the vertex budget of {budget}")]
    BudgetExceeded { p: u32, t: usize, budget: usize },
    #[error("graph has no vertices")]
    Empty,
    #[error("symmetric eigensolver did not converge on a {n}x{n} matrix after {iterations} iterations")]
    NonConvergence { n: usize, iterations: usize },
    #[error("part {part} is a subset of 0..{capacity} but the graph has {n} vertices")]
    PartCapacity { part: usize, capacity: usize, n: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum VertexPolicy {
    /// Every nonzero vector of GF(p)^t.
    AllNonzero,
    /// Only the nonzero vectors `v` with `<v,v> != 0`.
    NonSelfOrthogonal,
}

impl VertexPolicy {
    pub fn as_str(self) -> &'static str {
        match self {
            VertexPolicy::AllNonzero => "all-nonzero",
            VertexPolicy::NonSelfOrthogonal => "non-self-orthogonal",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "all-nonzero" => Some(VertexPolicy::AllNonzero),
            "non-self-orthogonal" => Some(VertexPolicy::NonSelfOrthogonal),
            _ => None,
        }
    }
}

/// Simple undirected graph on `0..n` stored as bitset rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitGraph {
    rows: Vec<BitSet>,
}

impl BitGraph {
    pub fn empty(n: usize) -> Self {
        Self {
            rows: vec![BitSet::new(n); n],
        }
    }

    /// Builds the graph with `i ~ j` whenever `adjacent(i, j)` for `i < j`.
    pub fn from_fn(n: usize, mut adjacent: impl FnMut(usize, usize) -> bool) -> Self {
        let mut g = Self::empty(n);
        for i in 0..n {
            for j in i + 1..n {
                if adjacent(i, j) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    /// Rows must be symmetric with an empty diagonal.
    pub(crate) fn from_rows(rows: Vec<BitSet>) -> Option<Self> {
        let n = rows.len();
        let ok = rows.iter().enumerate().all(|(i, r)| {
            r.capacity() == n && !r.contains(i) && r.iter().all(|j| rows[j].contains(i))
        });
        ok.then_some(Self { rows })
    }

    pub fn add_edge(&mut self, i: usize, j: usize) {
        if i != j {
            self.rows[i].insert(j);
            self.rows[j].insert(i);
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.rows[i].contains(j)
    }

    #[inline]
    pub fn neighbors(&self, i: usize) -> &BitSet {
        &self.rows[i]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.rows[i].count()
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(BitSet::count).sum::<usize>() / 2
    }

    pub fn rows(&self) -> &[BitSet] {
        &self.rows
    }

    pub fn adjacency_matrix(&self) -> DMatrix<f64> {
        let n = self.n();
        DMatrix::from_fn(n, n, |i, j| if self.adjacent(i, j) { 1.0 } else { 0.0 })
    }

    pub fn vertex_set(&self, members: impl IntoIterator<Item = usize>) -> BitSet {
        BitSet::from_indices(self.n(), members)
    }

    fn check_parts(&self, parts: &[BitSet]) -> Result<(), GraphError> {
        match parts.iter().position(|s| s.capacity() != self.n()) {
            Some(part) => Err(GraphError::PartCapacity {
                part,
                capacity: parts[part].capacity(),
                n: self.n(),
            }),
            None => Ok(()),
        }
    }
}

/// The orthogonality graph on nonzero vectors of GF(p)^t. Loops at
/// self-orthogonal vectors are dropped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrthoGraph {
    field: FieldSpec,
    t: usize,
    policy: VertexPolicy,
    vertices: Vec<FVector>,
    graph: BitGraph,
}

impl OrthoGraph {
    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn policy(&self) -> VertexPolicy {
        self.policy
    }

    pub fn vertices(&self) -> &[FVector] {
        &self.vertices
    }

    pub fn graph(&self) -> &BitGraph {
        &self.graph
    }

    pub fn n(&self) -> usize {
        self.vertices.len()
    }

    /// Vertices are sorted, so lookup is a binary search.
    pub fn index_of(&self, v: &FVector) -> Option<usize> {
        self.vertices.binary_search(v).ok()
    }

    /// `D = p^(t-1) - 1`, the degree every non-self-orthogonal vertex has.
    pub fn nominal_degree(&self) -> u64 {
        (self.field.p() as u64).pow(self.t as u32 - 1) - 1
    }

    /// `p^(t/2 - 1) (p - 1)`.
    pub fn lambda_bound(&self) -> f64 {
        let p = self.field.p() as f64;
        p.powf(self.t as f64 / 2.0 - 1.0) * (p - 1.0)
    }

    /// Nominal `(n, D, lambda)` parameters of this graph.
    pub fn expansion_params(&self) -> ExpansionParams {
        ExpansionParams {
            n: self.n(),
            degree: self.nominal_degree() as f64,
            lambda: self.lambda_bound(),
        }
    }

    pub(crate) fn from_parts(
        field: FieldSpec,
        t: usize,
        policy: VertexPolicy,
        graph: BitGraph,
    ) -> Result<Self, GraphError> {
        let vertices = policy_vertices(field, t, policy, usize::MAX)?;
        if vertices.len() != graph.n() {
            return Err(GraphError::Empty);
        }
        Ok(Self {
            field,
            t,
            policy,
            vertices,
            graph,
        })
    }
}

fn policy_vertices(
    field: FieldSpec,
    t: usize,
    policy: VertexPolicy,
    budget: usize,
) -> Result<Vec<FVector>, GraphError> {
    let too_big = GraphError::BudgetExceeded {
        p: field.p(),
        t,
        budget,
    };
    let size = field.space_size(t).ok_or(too_big.clone())?;
    // the zero vector is never a vertex
    if size - 1 > budget as u64 {
        return Err(too_big);
    }
    let vs = all_vectors(field, t, size)?
        .into_iter()
        .filter(|v| !v.is_zero())
        .filter(|v| policy == VertexPolicy::AllNonzero || !v.is_self_orthogonal())
        .collect();
    Ok(vs)
}

pub fn build_ortho_graph(
    field: FieldSpec,
    t: usize,
    policy: VertexPolicy,
    vertex_budget: usize,
) -> Result<OrthoGraph, GraphError> {
    let vertices = policy_vertices(field, t, policy, vertex_budget)?;
    let graph = orthogonality_graph(&vertices);
    Ok(OrthoGraph {
        field,
        t,
        policy,
        vertices,
        graph,
    })
}

/// Orthogonality graph on an arbitrary list of vectors (positions are
/// vertices, so repeated vectors become distinct vertices).
pub fn orthogonality_graph(vectors: &[FVector]) -> BitGraph {
    BitGraph::from_fn(vectors.len(), |i, j| vectors[i].dot_unchecked(&vectors[j]) == 0)
}

/// `(n, D, lambda)` parameters used by the mixing bound and the underpin loop.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExpansionParams {
    pub n: usize,
    pub degree: f64,
    pub lambda: f64,
}

impl ExpansionParams {
    /// `D / n`.
    pub fn density(&self) -> f64 {
        self.degree / self.n as f64
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralCert {
    pub n: usize,
    pub d_min: usize,
    pub d_max: usize,
    /// Degree → number of vertices with that degree.
    pub degree_histogram: BTreeMap<usize, usize>,
    pub self_orthogonal_vertices: usize,
    /// True iff the vertices of degree `D - 1` are exactly the
    /// self-orthogonal ones and every other vertex has degree `D`.
    pub degrees_match_loop_removal: bool,
    pub nominal_degree: u64,
    pub lambda_bound: f64,
    pub principal_eigenvalue: f64,
    /// Largest |eigenvalue| of the loop-free adjacency matrix, principal excluded.
    pub lambda_observed: f64,
    /// The same quantity for the matrix that keeps a loop at each
    /// self-orthogonal vertex.
    pub lambda_observed_with_loops: f64,
    pub tolerance: f64,
    pub passes: bool,
    pub passes_with_loops: bool,
}

const EIGEN_MAX_ITERATIONS: usize = 100_000;

/// Second largest absolute eigenvalue after discarding one copy of the largest.
fn nonprincipal_radius(m: DMatrix<f64>) -> Result<(f64, f64), GraphError> {
    let n = m.nrows();
    let eig = SymmetricEigen::try_new(m, f64::EPSILON, EIGEN_MAX_ITERATIONS).ok_or(
        GraphError::NonConvergence {
            n,
            iterations: EIGEN_MAX_ITERATIONS,
        },
    )?;
    let mut values: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    values.sort_by(f64::total_cmp);
    let principal = values.pop().unwrap_or(0.0);
    let rest = values.iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
    Ok((principal, rest))
}

pub fn spectral_check(g: &OrthoGraph, tolerance: f64) -> Result<SpectralCert, GraphError> {
    let n = g.n();
    if n == 0 {
        return Err(GraphError::Empty);
    }
    let degrees: Vec<usize> = (0..n).map(|i| g.graph.degree(i)).collect();
    let mut degree_histogram = BTreeMap::new();
    for &d in &degrees {
        *degree_histogram.entry(d).or_insert(0) += 1;
    }
    let nominal = g.nominal_degree();
    let self_orth: Vec<bool> = g.vertices.iter().map(FVector::is_self_orthogonal).collect();
    let degrees_match_loop_removal = degrees.iter().zip(&self_orth).all(|(&d, &so)| {
        let expected = if so { nominal.checked_sub(1) } else { Some(nominal) };
        expected == Some(d as u64)
    });

    let adjacency = g.graph.adjacency_matrix();
    let mut looped = adjacency.clone();
    for (i, &so) in self_orth.iter().enumerate() {
        if so {
            looped[(i, i)] = 1.0;
        }
    }
    let (principal, lambda_observed) = nonprincipal_radius(adjacency)?;
    let (_, lambda_looped) = nonprincipal_radius(looped)?;
    let lambda_bound = g.lambda_bound();

    Ok(SpectralCert {
        n,
        d_min: degrees.iter().copied().min().unwrap_or(0),
        d_max: degrees.iter().copied().max().unwrap_or(0),
        degree_histogram,
        self_orthogonal_vertices: self_orth.iter().filter(|&&b| b).count(),
        degrees_match_loop_removal,
        nominal_degree: nominal,
        lambda_bound,
        principal_eigenvalue: principal,
        lambda_observed,
        lambda_observed_with_loops: lambda_looped,
        tolerance,
        passes: lambda_observed <= lambda_bound + tolerance,
        passes_with_loops: lambda_looped <= lambda_bound + tolerance,
    })
}

/// Calls `visit` on every ordered tuple `(v_1, …, v_l)` with `v_i` in
/// `parts[i]` whose vertices are pairwise adjacent. Stops early when `visit`
/// returns false.
pub fn for_each_crossing_clique(
    g: &BitGraph,
    parts: &[BitSet],
    mut visit: impl FnMut(&[usize]) -> bool,
) -> Result<(), GraphError> {
    g.check_parts(parts)?;
    if parts.is_empty() {
        return Ok(());
    }
    let mut chosen = Vec::with_capacity(parts.len());
    let all = BitSet::full(g.n());
    walk_cliques(g, parts, &all, &mut chosen, &mut visit);
    Ok(())
}

fn walk_cliques(
    g: &BitGraph,
    parts: &[BitSet],
    common: &BitSet,
    chosen: &mut Vec<usize>,
    visit: &mut impl FnMut(&[usize]) -> bool,
) -> bool {
    let level = chosen.len();
    let candidates = parts[level].intersection(common);
    for v in candidates.iter() {
        chosen.push(v);
        let keep_going = if level + 1 == parts.len() {
            visit(chosen)
        } else {
            let next = common.intersection(g.neighbors(v));
            walk_cliques(g, parts, &next, chosen, visit)
        };
        chosen.pop();
        if !keep_going {
            return false;
        }
    }
    true
}

/// Number of ordered crossing cliques across `parts`.
pub fn crossing_clique_count(g: &BitGraph, parts: &[BitSet]) -> Result<u64, GraphError> {
    g.check_parts(parts)?;
    if parts.is_empty() {
        return Ok(0);
    }
    fn count(g: &BitGraph, parts: &[BitSet], common: &BitSet) -> u64 {
        let candidates = parts[0].intersection(common);
        if parts.len() == 1 {
            return candidates.count() as u64;
        }
        candidates
            .iter()
            .map(|v| count(g, &parts[1..], &common.intersection(g.neighbors(v))))
            .sum()
    }
    Ok(count(g, parts, &BitSet::full(g.n())))
}

/// True iff no crossing clique exists, i.e. the tuple lies in `I_l(G)`.
pub fn is_crossing_free(g: &BitGraph, parts: &[BitSet]) -> Result<bool, GraphError> {
    let mut found = false;
    for_each_crossing_clique(g, parts, |_| {
        found = true;
        false
    })?;
    Ok(!found)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MixingBound {
    pub count: u64,
    /// `(1/2) · ∏|W_i| · (D/n)^(l choose 2)`.
    pub bound: f64,
    /// `C' · lambda · (n/D)^(l-1)`.
    pub size_threshold: f64,
    pub prerequisites_met: bool,
    pub holds: bool,
}

/// Expander-mixing lower bound on the number of crossing cliques.
pub fn mixing_lower_bound(
    g: &BitGraph,
    params: &ExpansionParams,
    parts: &[BitSet],
    c_prime: f64,
) -> Result<MixingBound, GraphError> {
    let ell = parts.len();
    let count = crossing_clique_count(g, parts)?;
    let pairs = (ell * ell.saturating_sub(1) / 2) as i32;
    let product: f64 = parts.iter().map(|p| p.count() as f64).product();
    let bound = 0.5 * product * params.density().powi(pairs);
    let size_threshold =
        c_prime * params.lambda * (1.0 / params.density()).powi(ell.saturating_sub(1) as i32);
    let prerequisites_met = parts.iter().all(|p| p.count() as f64 >= size_threshold);
    Ok(MixingBound {
        count,
        bound,
        size_threshold,
        prerequisites_met,
        holds: count as f64 >= bound,
    })
}
